"""
Finite shadows of the loop-space and group-completion theorems: the
truncated James construction, smash powers, Grothendieck groups, H_1 of
classifying spaces and the homotopy colimit comparison for groups.
"""

from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .barcat import hocolim, wedge_span
from .core import CheckResult, Coefficients, PreconditionError, RangeError
from .exactalg import HomologyResult, IntMatrix, UnionFind, elementary_divisors, homology, homology_all
from .simplicial import (
    FinMonoid,
    SimplicialSet,
    chains,
    materialize,
    nerve,
    point,
    smash,
    sphere,
)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d_1 + ... with d_1 | d_2 | ..."""

    rank: int
    torsion: Tuple[int, ...] = ()

    @classmethod
    def from_homology(cls, h: HomologyResult) -> "AbelianGroup":
        return cls(h.betti, h.torsion)

    @classmethod
    def from_relations(cls, relations: IntMatrix) -> "AbelianGroup":
        """Cokernel of the relation rows inside Z^cols"""
        divisors = elementary_divisors(relations)
        return cls(relations.cols - len(divisors), tuple(d for d in divisors if d > 1))

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        return str(HomologyResult(0, self.rank, self.torsion))


# ---------------------------------------------------------------------------
# James construction


class JamesModel:
    """Words of length <= L in the non-basepoint n-simplices of X"""

    def __init__(self, X: SimplicialSet, L: int):
        self.X, self.L = X, L

    def _letters(self, n: int) -> List[Hashable]:
        base = self.X.base_simplex(n)
        return [x for x in self.X.simplices(n) if x != base]

    def simplices(self, n: int) -> Iterable[Hashable]:
        letters = self._letters(n)
        for k in range(self.L + 1):
            yield from product(letters, repeat=k)

    def face(self, n: int, i: int, w: Hashable) -> Hashable:
        base = self.X.base_simplex(n - 1)
        faces = (self.X.face(n, i, x) for x in w)  # type: ignore[attr-defined]
        return tuple(y for y in faces if y != base)

    def degeneracy(self, n: int, j: int, w: Hashable) -> Hashable:
        return tuple(self.X.degeneracy(n, j, x) for x in w)  # type: ignore[attr-defined]


def james(X: SimplicialSet, L: int, maxdim: Optional[int] = None) -> SimplicialSet:
    """
    The James filtration stage J_L X of the free based monoid on X.

    Args:
        X: A based simplicial set
        L: Word-length bound; L = 0 gives the point
        maxdim: Truncation degree, at most X.maxdim

    Returns:
        J_L X, generators labelled by words of simplices of X
    """
    if X.basepoint is None:
        raise PreconditionError(f"James construction of {X.name} needs a basepoint")
    top = X.maxdim if maxdim is None else maxdim
    if top > X.maxdim:
        raise RangeError(f"maxdim {top} exceeds {X.name}.maxdim = {X.maxdim}")
    if L < 0:
        raise RangeError("word-length bound must be >= 0")
    if L == 0:
        return point(top)
    return materialize(JamesModel(X, L), top, name=f"J{L}{X.name}", basepoint=())


def smash_power(X: SimplicialSet, k: int, maxdim: Optional[int] = None) -> SimplicialSet:
    """X ^ ... ^ X (k factors); the 0-th power is S^0"""
    top = X.maxdim if maxdim is None else maxdim
    if k < 0:
        raise RangeError("smash power exponent must be >= 0")
    if k == 0:
        return sphere(0, top)
    out = X
    for _ in range(k - 1):
        out = smash(out, X, top)
    return out


def smash_power_oracle(
    X: SimplicialSet,
    k: int,
    maxdim: Optional[int] = None,
    coeffs: Coefficients = Coefficients.Z,
) -> List[HomologyResult]:
    """Reduced homology of the k-fold smash power in degrees 0..maxdim"""
    if X.basepoint is None:
        raise PreconditionError("smash powers need a basepoint")
    power = smash_power(X, k, maxdim)
    return [h.reduced() for h in homology_all(chains(power), coeffs)]


def james_tensor_prediction(
    X: SimplicialSet, L: int, maxdim: int, coeffs: Coefficients = Coefficients.Q
) -> List[HomologyResult]:
    """sum_{k <= L} reduced homology of X^k, the expected homology of J_L X"""
    total = [HomologyResult(n, 0) for n in range(maxdim + 1)]
    for k in range(L + 1):
        for n, h in enumerate(smash_power_oracle(X, k, maxdim, coeffs)):
            total[n] = total[n] + h
    return total


# ---------------------------------------------------------------------------
# Group completion


@dataclass(frozen=True)
class CommMonoidPresentation:
    """Generators with relation rows x + y - xy"""

    generators: Tuple[str, ...]
    relations: IntMatrix

    @classmethod
    def of(cls, M: FinMonoid) -> "CommMonoidPresentation":
        if not M.is_commutative():
            raise PreconditionError(f"{M.name} is not commutative; abelianize it first")
        n = len(M)
        rows: Dict[Tuple[int, int], int] = {}
        r = 0
        for x in range(n):
            for y in range(x, n):
                for col in (x, y):
                    rows[(r, col)] = rows.get((r, col), 0) + 1
                xy = M.mul(x, y)
                rows[(r, xy)] = rows.get((r, xy), 0) - 1
                r += 1
        return cls(M.elements, IntMatrix(r, n, {k: v for k, v in rows.items() if v}))

    @classmethod
    def truncated_free(cls, bound: int) -> "CommMonoidPresentation":
        """N truncated at ``bound``: generators 0..bound, relations i + j = (i+j) when defined"""
        rows: Dict[Tuple[int, int], int] = {}
        r = 0
        for i in range(bound + 1):
            for j in range(i, bound + 1 - i):
                for col in (i, j):
                    rows[(r, col)] = rows.get((r, col), 0) + 1
                rows[(r, i + j)] = rows.get((r, i + j), 0) - 1
                r += 1
        gens = tuple(str(i) for i in range(bound + 1))
        return cls(gens, IntMatrix(r, bound + 1, {k: v for k, v in rows.items() if v}))

    def group(self) -> AbelianGroup:
        return AbelianGroup.from_relations(self.relations)


def grothendieck_group(M: FinMonoid) -> AbelianGroup:
    """The universal abelian group receiving the commutative monoid M"""
    return CommMonoidPresentation.of(M).group()


def abelianization(M: FinMonoid) -> FinMonoid:
    """M modulo the congruence generated by xy = yx (congruence closure)"""
    n = len(M)
    uf = UnionFind(range(n))
    for x in range(n):
        for y in range(n):
            uf.union(M.mul(x, y), M.mul(y, x))
    changed = True
    while changed:
        changed = False
        classes = uf.classes()
        for members in classes.values():
            for a in members[1:]:
                b = members[0]
                for z in range(n):
                    changed |= uf.union(M.mul(z, a), M.mul(z, b))
                    changed |= uf.union(M.mul(a, z), M.mul(b, z))
    reps = uf.reps()
    index = {r: i for i, r in enumerate(reps)}
    table = tuple(tuple(index[uf.find(M.mul(x, y))] for y in reps) for x in reps)
    return FinMonoid(f"{M.name}ab", tuple(M.elements[r] for r in reps), table, index[uf.find(M.unit)])


def h1_of_bm(M: FinMonoid) -> AbelianGroup:
    """H_1 of the classifying space, read off the nerve"""
    return AbelianGroup.from_homology(homology(chains(nerve(M, 3)), 1))


def is_grouplike(M: FinMonoid) -> bool:
    """A finite discrete monoid is grouplike iff it is a group"""
    return M.is_group()


def _assoc_ok(t: List[List[int]], n: int) -> bool:
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            if xy < 0:
                continue
            for z in range(n):
                yz = t[y][z]
                if yz < 0:
                    continue
                lhs, rhs = t[xy][z], t[x][yz]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
    return True


def _canonical_table(t: Sequence[Sequence[int]], n: int) -> Tuple[Tuple[int, ...], ...]:
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        relabelled = tuple(tuple(p[t[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
        if best is None or relabelled < best:
            best = relabelled
    return best  # type: ignore[return-value]


def enumerate_monoids(n: int) -> List[FinMonoid]:
    """
    Every monoid of order n up to isomorphism, with unit ``e`` at index 0.

    Args:
        n: Order, 1 <= n <= 4 is practical

    Returns:
        One representative per isomorphism class, in canonical table order
    """
    if n < 1:
        raise RangeError("monoids have at least one element")
    t = [[-1] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = t[x][0] = x
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    found = set()

    def fill(k: int) -> None:
        if k == len(cells):
            found.add(_canonical_table(t, n))
            return
        x, y = cells[k]
        for v in range(n):
            t[x][y] = v
            if _assoc_ok(t, n):
                fill(k + 1)
        t[x][y] = -1

    fill(0)
    names = tuple(["e"] + [chr(ord("a") + i) for i in range(n - 1)])
    return [FinMonoid(f"m{n}_{i}", names, table, 0) for i, table in enumerate(sorted(found))]


# ---------------------------------------------------------------------------
# Homotopy colimits


@dataclass(frozen=True)
class PreservationReport:
    """Reduced homology of hocolim(BG_1 <- * -> BG_2) against H(BG_1) + H(BG_2)"""

    left: str
    right: str
    degrees: Tuple[Tuple[int, HomologyResult, HomologyResult], ...]

    @property
    def passed(self) -> bool:
        return all((a.betti, a.torsion) == (b.betti, b.torsion) for _, a, b in self.degrees)

    def checks(self) -> List[CheckResult]:
        return [
            CheckResult(
                check_id=f"hocolim.{self.left}*{self.right}.H{n}",
                passed=(a.betti, a.torsion) == (b.betti, b.torsion),
                details=f"{a} = {b}",
            )
            for n, a, b in self.degrees
        ]


def hocolim_preservation_check(G1: FinMonoid, G2: FinMonoid, maxdeg: int = 3) -> PreservationReport:
    """
    Compare the homotopy colimit of the span of classifying spaces with
    the homology of B(G_1 * G_2), which is H(BG_1) + H(BG_2) in positive degrees.
    """
    if not (G1.is_group() and G2.is_group()):
        raise PreconditionError("the hocolim comparison is stated for groups")
    if len(G1) > 4 or len(G2) > 4 or not 1 <= maxdeg <= 4:
        raise RangeError("groups of order <= 4 and 1 <= maxdeg <= 4")
    top = maxdeg + 1
    B1, B2 = nerve(G1, top), nerve(G2, top)
    lhs = homology_all(chains(hocolim(wedge_span(B1, B2), top)))
    h1, h2 = homology_all(chains(B1)), homology_all(chains(B2))
    rows = tuple((n, lhs[n].reduced(), h1[n].reduced() + h2[n].reduced()) for n in range(1, maxdeg + 1))
    return PreservationReport(G1.name, G2.name, rows)
