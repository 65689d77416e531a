"""
Exact integer linear algebra: sparse integer matrices, Smith normal form,
chain complexes and their homology.

Every other module reduces its claims to the functions in here.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .core import DENSE_THRESHOLD, Coefficients, RangeError, TableError

# Interval parameters and barycentric coordinates
Rat = Fraction


def format_rat(q: Fraction) -> str:
    """Render a rational as ``p/q``, always with an explicit denominator"""
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Fraction:
    """Parse ``p/q`` or an integer into a reduced rational"""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational: {text!r}") from e


class IntMatrix:
    """
    Sparse integer matrix with arbitrary-precision entries.

    Only nonzero entries are stored, as a dict of row dicts.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], int]] = None):
        if rows < 0 or cols < 0:
            raise RangeError(f"negative matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data: Dict[int, Dict[int, int]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise RangeError(f"entry ({r},{c}) outside {rows}x{cols}")
            if v:
                self._data.setdefault(r, {})[c] = int(v)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(len(rows), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def get(self, r: int, c: int) -> int:
        return self._data.get(r, {}).get(c, 0)

    def items(self) -> Iterator[Tuple[Tuple[int, int], int]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def row_dicts(self) -> Dict[int, Dict[int, int]]:
        return {r: dict(row) for r, row in self._data.items()}

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise RangeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out: Dict[Tuple[int, int], int] = {}
        for r, row in self._data.items():
            for k, a in row.items():
                for c, b in other._data.get(k, {}).items():
                    out[(r, c)] = out.get((r, c), 0) + a * b
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def diagonal(self) -> List[int]:
        return [self.get(i, i) for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(r == c for (r, c), _ in self.items())


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == D``"""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix


def _min_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best: Optional[Tuple[int, int, int]] = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """
    Smith normal form with unimodular transforms.

    The pivot is always the nonzero entry of least absolute value in the
    remaining block, ties broken by (row, col), so results are reproducible.

    Args:
        A: Integer matrix

    Returns:
        SmithForm with D diagonal, d1 | d2 | ... and zeros trailing
    """
    m, n = A.rows, A.cols
    a = A.to_dense()
    u = IntMatrix.identity(m).to_dense()
    v = IntMatrix.identity(n).to_dense()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        pivot = _min_pivot(a, t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot is left in row/column t
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(
        D=IntMatrix.from_dense(a, n),
        U=IntMatrix.from_dense(u, m),
        V=IntMatrix.from_dense(v, n),
    )


def _divisibility_chain(values: Iterable[int]) -> List[int]:
    ds = sorted(abs(x) for x in values if x)
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] * ds[j] // g
    return ds


def elementary_divisors(A: IntMatrix, dense_threshold: int = DENSE_THRESHOLD) -> List[int]:
    """
    Nonzero invariant factors of A, in divisibility order.

    Small matrices go through the dense :func:`smith_normal_form`; larger
    ones through a sparse elimination that keeps no transforms.
    """
    if A.is_zero():
        return []
    if max(A.rows, A.cols) <= dense_threshold:
        return [d for d in smith_normal_form(A).D.diagonal() if d]

    rows = A.row_dicts()
    cols: Dict[int, set] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def put(r: int, c: int, val: int) -> None:
        if val:
            rows.setdefault(r, {})[c] = val
            cols.setdefault(c, set()).add(r)
        else:
            rows.get(r, {}).pop(c, None)
            if r in rows and not rows[r]:
                del rows[r]
            if c in cols:
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]

    pivots: List[int] = []
    while rows:
        _, pr, pc = min((abs(v), r, c) for r, row in rows.items() for c, v in row.items())
        while True:
            p = rows[pr][pc]
            # clear column pc with row operations
            for r in sorted(cols.get(pc, set()) - {pr}):
                q = rows[r][pc] // p
                for c, val in list(rows[pr].items()):
                    put(r, c, rows.get(r, {}).get(c, 0) - q * val)
            rest = sorted((abs(rows[r][pc]), r) for r in cols.get(pc, set()) if r != pr)
            if rest:
                pr = rest[0][1]
                continue
            # column pc now holds only the pivot; column operations touch row pr only
            leftover = []
            for c, val in list(rows[pr].items()):
                if c != pc:
                    put(pr, c, val - (val // p) * p)
                    if rows.get(pr, {}).get(c):
                        leftover.append((abs(rows[pr][c]), c))
            if leftover:
                pc = min(leftover)[1]
                continue
            pivots.append(p)
            put(pr, pc, 0)
            break
    return _divisibility_chain(pivots)


def field_rank(A: IntMatrix, prime: Optional[int] = None) -> int:
    """Rank of A over Q (prime None) or over F_p"""
    if A.is_zero():
        return 0
    sparse = {r: {c: ZZ(v) for c, v in row.items()} for r, row in A.row_dicts().items()}
    dm = DomainMatrix(sparse, (A.rows, A.cols), ZZ)
    domain = QQ if prime is None else GF(prime)
    return dm.convert_to(domain).rank()


@dataclass(frozen=True)
class HomologyResult:
    """Homology in one degree: free rank plus torsion invariant factors"""

    degree: int
    betti: int
    torsion: Tuple[int, ...] = ()
    ring: str = field(default="Z", compare=False)

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def reduced(self) -> "HomologyResult":
        """Reduced homology (only degree 0 changes)"""
        if self.degree == 0 and self.betti > 0:
            return HomologyResult(0, self.betti - 1, self.torsion, self.ring)
        return self

    def __add__(self, other: "HomologyResult") -> "HomologyResult":
        return HomologyResult(
            self.degree,
            self.betti + other.betti,
            tuple(d for d in _divisibility_chain(self.torsion + other.torsion) if d > 1),
            self.ring,
        )

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append(self.ring if self.betti == 1 else f"{self.ring}^{self.betti}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ChainComplex:
    """
    Finite free chain complex C_0 <- C_1 <- ... <- C_D.

    ``boundaries[n - 1]`` is the matrix of d_n : C_n -> C_{n-1} acting on
    column vectors. Construction validates d_{n-1} d_n = 0.
    """

    dims: Tuple[int, ...]
    boundaries: Tuple[IntMatrix, ...]
    labels: Optional[Tuple[Tuple[str, ...], ...]] = None
    _cache: Dict[Tuple, object] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.dims:
            raise RangeError("a chain complex needs at least degree 0")
        if len(self.boundaries) != len(self.dims) - 1:
            raise RangeError(f"expected {len(self.dims) - 1} boundary matrices, got {len(self.boundaries)}")
        for n, bd in enumerate(self.boundaries, start=1):
            if (bd.rows, bd.cols) != (self.dims[n - 1], self.dims[n]):
                raise RangeError(
                    f"d_{n} has shape {bd.rows}x{bd.cols}, expected {self.dims[n - 1]}x{self.dims[n]}"
                )
        for n in range(2, len(self.dims)):
            if not (self.boundary(n - 1) @ self.boundary(n)).is_zero():
                raise TableError(f"d_{n - 1} o d_{n} != 0")

    @property
    def maxdim(self) -> int:
        return len(self.dims) - 1

    def boundary(self, n: int) -> IntMatrix:
        """d_n, with the zero maps at both ends of the complex"""
        if 1 <= n <= self.maxdim:
            return self.boundaries[n - 1]
        below = self.dims[n - 1] if 1 <= n <= self.maxdim + 1 else 0
        here = self.dims[n] if 0 <= n <= self.maxdim else 0
        return IntMatrix(below, here)

    def divisors(self, n: int, dense_threshold: int = DENSE_THRESHOLD) -> List[int]:
        key = ("snf", n)
        if key not in self._cache:
            self._cache[key] = elementary_divisors(self.boundary(n), dense_threshold)
        return self._cache[key]  # type: ignore[return-value]

    def rank(
        self, n: int, prime: Optional[int] = None, over_field: bool = False, dense_threshold: int = DENSE_THRESHOLD
    ) -> int:
        key = ("rank", n, prime, over_field)
        if key not in self._cache:
            if over_field:
                self._cache[key] = field_rank(self.boundary(n), prime)
            elif prime is None:
                self._cache[key] = len(self.divisors(n, dense_threshold))
            else:
                self._cache[key] = sum(1 for d in self.divisors(n, dense_threshold) if d % prime)
        return self._cache[key]  # type: ignore[return-value]


def homology(
    C: ChainComplex,
    n: int,
    coeffs: Coefficients = Coefficients.Z,
    prime: Optional[int] = None,
    dense_threshold: int = DENSE_THRESHOLD,
) -> HomologyResult:
    """
    Homology of C in degree n.

    Args:
        C: A validated chain complex
        n: Degree, 0 <= n <= C.maxdim
        coeffs: Z, Q or F_p
        prime: The prime p when coeffs is F_p
        dense_threshold: Largest boundary matrix side reduced by dense elimination

    Returns:
        HomologyResult; torsion is empty over a field
    """
    if not 0 <= n <= C.maxdim:
        raise RangeError(f"degree {n} outside 0..{C.maxdim}")
    if coeffs is Coefficients.Z:
        out = C.divisors(n + 1, dense_threshold)
        betti = C.dims[n] - len(C.divisors(n, dense_threshold)) - len(out)
        return HomologyResult(n, betti, tuple(d for d in out if d > 1))
    p = None
    if coeffs is Coefficients.FP:
        if prime is None:
            raise RangeError("F_p coefficients need a prime")
        p = prime
    betti = C.dims[n] - C.rank(n, p, over_field=True) - C.rank(n + 1, p, over_field=True)
    return HomologyResult(n, betti, ring="Q" if p is None else f"F{p}")


def homology_all(
    C: ChainComplex,
    coeffs: Coefficients = Coefficients.Z,
    prime: Optional[int] = None,
    upto: Optional[int] = None,
    dense_threshold: int = DENSE_THRESHOLD,
) -> List[HomologyResult]:
    top = C.maxdim if upto is None else min(upto, C.maxdim)
    return [homology(C, n, coeffs, prime, dense_threshold) for n in range(top + 1)]


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** n * d for n, d in enumerate(C.dims))


def universal_coefficients(integral: Sequence[HomologyResult], prime: int) -> List[int]:
    """
    F_p Betti numbers predicted from integral homology.

    dim H_n(C; F_p) = b_n + #{p | t in tors H_n} + #{p | t in tors H_{n-1}}
    """
    out = []
    for k, h in enumerate(integral):
        below = integral[k - 1].torsion if k > 0 else ()
        out.append(h.betti + sum(1 for t in h.torsion if t % prime == 0) + sum(1 for t in below if t % prime == 0))
    return out


class UnionFind:
    """
    Disjoint sets over a fixed, ordered carrier. The representative of a
    class is always its earliest element in insertion order.
    """

    def __init__(self, items: Iterable[Hashable]):
        self.order: Dict[Hashable, int] = {}
        for x in items:
            self.order.setdefault(x, len(self.order))
        self.parent = {x: x for x in self.order}

    def __contains__(self, x: Hashable) -> bool:
        return x in self.parent

    def find(self, x: Hashable) -> Hashable:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.order[y] < self.order[x]:
            x, y = y, x
        self.parent[y] = x
        return True

    def reps(self) -> List[Hashable]:
        return [x for x in self.order if self.parent[x] == x]

    def classes(self) -> Dict[Hashable, List[Hashable]]:
        out: Dict[Hashable, List[Hashable]] = {r: [] for r in self.reps()}
        for x in self.order:
            out[self.find(x)].append(x)
        return out

    def __len__(self) -> int:
        return len(self.reps())
