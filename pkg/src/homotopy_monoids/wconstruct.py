"""
The W-bar and W constructions on finite semigroups and monoids.

Points are tuples (x_0, t_1, x_1, ..., t_n, x_n) with exact rational
parameters in [0, 1], kept in normal form. The cubical cell model of
W-bar used for homology lives at the bottom of the module.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Mode, PreconditionError, RangeError, TableError
from .exactalg import ChainComplex, IntMatrix, UnionFind
from .simplicial import FinMonoid, FinSemigroup, Homomorphism, adjoin_unit

ZERO = Fraction(0)
ONE = Fraction(1)

# Parameters drawn by the random generators
SAMPLE_PARAMS = (ZERO, Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), ONE)


@dataclass(frozen=True)
class WTuple:
    """A point of W-bar G (semigroup mode) or W M (monoid mode) in normal form"""

    entries: Tuple[int, ...]
    params: Tuple[Fraction, ...]
    mode: Mode
    ground: FinSemigroup = field(repr=False)

    @property
    def letters(self) -> int:
        return len(self.entries)

    def names(self) -> List[str]:
        return [self.ground.elements[x] for x in self.entries]

    def is_unit(self) -> bool:
        return self.mode is Mode.MONOID and not self.entries


def _check_raw(ground: FinSemigroup, entries: Sequence[int], params: Sequence[Fraction], mode: Mode) -> None:
    if len(params) != max(len(entries) - 1, 0):
        raise RangeError(f"{len(entries)} entries need {max(len(entries) - 1, 0)} parameters, got {len(params)}")
    if any(not 0 <= t <= 1 for t in params):
        raise RangeError("parameters must lie in [0, 1]")
    if any(not 0 <= x < len(ground) for x in entries):
        raise RangeError("entry is not an element index")
    if mode is Mode.MONOID and not isinstance(ground, FinMonoid):
        raise PreconditionError(f"{ground.name} has no unit; W needs a monoid")
    if mode is Mode.SEMIGROUP and not entries:
        raise RangeError("W-bar tuples have at least one entry")


def _redexes(ground: FinSemigroup, xs: List[int], ts: List[Fraction], mode: Mode) -> List[Tuple[str, int]]:
    """Applicable rewrites in left-to-right order of x_0 t_1 x_1 ..."""
    unit = ground.unit if mode is Mode.MONOID else None  # type: ignore[attr-defined]
    out: List[Tuple[str, int]] = []
    for i, x in enumerate(xs):
        if i > 0 and ts[i - 1] == 0:
            out.append(("merge", i))
        if x == unit:
            out.append(("unit", i))
    return out


def _rewrite(ground: FinSemigroup, xs: List[int], ts: List[Fraction], rule: str, i: int) -> None:
    n = len(xs) - 1
    if rule == "merge":
        xs[i - 1 : i + 1] = [ground.mul(xs[i - 1], xs[i])]
        del ts[i - 1]
    elif n == 0:
        xs.clear()
    elif i == 0:
        del xs[0], ts[0]
    elif i == n:
        del xs[n], ts[n - 1]
    else:
        ts[i - 1 : i + 1] = [max(ts[i - 1], ts[i])]
        del xs[i]


def normalize(
    ground: FinSemigroup,
    entries: Sequence[int],
    params: Sequence[Fraction],
    mode: Mode = Mode.SEMIGROUP,
    rng: Optional[random.Random] = None,
) -> WTuple:
    """
    Normal form of a raw tuple.

    t_i = 0 merges x_{i-1} x_i. In monoid mode a unit entry is deleted:
    at either end together with its parameter, inside by replacing
    t_i, e, t_{i+1} with max(t_i, t_{i+1}). The lone unit becomes the empty tuple.

    Args:
        ground: Semigroup (or monoid, for monoid mode)
        entries: Element indices x_0, ..., x_n
        params: Parameters t_1, ..., t_n in [0, 1]
        mode: Semigroup (W-bar) or monoid (W)
        rng: Pick a random applicable rewrite instead of the leftmost one

    Returns:
        The WTuple in normal form
    """
    _check_raw(ground, entries, params, mode)
    xs = list(entries)
    ts = [Fraction(t) for t in params]
    while True:
        redexes = _redexes(ground, xs, ts, mode)
        if not redexes:
            break
        rule, i = rng.choice(redexes) if rng is not None else redexes[0]
        _rewrite(ground, xs, ts, rule, i)
    return WTuple(tuple(xs), tuple(ts), mode, ground)


def make_wtuple(ground: FinSemigroup, names: Sequence[str], params: Sequence[Fraction], mode: Mode = Mode.SEMIGROUP) -> WTuple:
    return normalize(ground, [ground.index(x) for x in names], params, mode)


def iota(ground: FinSemigroup, x: int, mode: Mode = Mode.SEMIGROUP) -> WTuple:
    """The section x -> (x)"""
    return normalize(ground, [x], [], mode)


def unit(ground: FinMonoid) -> WTuple:
    return WTuple((), (), Mode.MONOID, ground)


def wmul(a: WTuple, b: WTuple) -> WTuple:
    """(x_0, ..., x_k)(y_0, ..., y_l) = (x_0, ..., x_k, 1, y_0, ..., y_l)"""
    if a.mode is not b.mode:
        raise PreconditionError(f"cannot multiply a {a.mode.value} tuple with a {b.mode.value} tuple")
    if a.ground != b.ground:
        raise PreconditionError("tuples over different ground monoids")
    if not a.entries:
        return b
    if not b.entries:
        return a
    return normalize(a.ground, a.entries + b.entries, a.params + (ONE,) + b.params, a.mode)


def epsilon(a: WTuple) -> int:
    """The product x_0 x_1 ... x_n in the ground semigroup"""
    return a.ground.product(a.entries)


def shrink(a: WTuple, s: Fraction) -> WTuple:
    """The contracting homotopy h_s: scale every parameter by s"""
    if not 0 <= s <= 1:
        raise RangeError(f"shrink parameter {s} outside [0, 1]")
    return normalize(a.ground, a.entries, [s * t for t in a.params], a.mode)


def eps_prime(a: WTuple) -> WTuple:
    """W-bar M -> W M, imposing the unit relations"""
    if a.mode is not Mode.SEMIGROUP:
        raise PreconditionError("eps_prime takes a W-bar tuple")
    if not isinstance(a.ground, FinMonoid):
        raise PreconditionError(f"{a.ground.name} has no unit")
    return normalize(a.ground, a.entries, a.params, Mode.MONOID)


def map_w(f: Homomorphism, a: WTuple) -> WTuple:
    """Apply a homomorphism entrywise"""
    if a.ground != f.source:
        raise PreconditionError(f"{a.ground.name} is not the source of the homomorphism")
    if a.mode is Mode.MONOID and not isinstance(f.target, FinMonoid):
        raise PreconditionError("W is only functorial for monoid homomorphisms")
    return normalize(f.target, [f(x) for x in a.entries], a.params, a.mode)


def factorize(a: WTuple) -> List[WTuple]:
    """Split at the parameters equal to 1 into indecomposable factors"""
    factors: List[WTuple] = []
    start = 0
    for i, t in enumerate(a.params, start=1):
        if t == 1:
            factors.append(WTuple(a.entries[start:i], a.params[start : i - 1], a.mode, a.ground))
            start = i
    if a.entries:
        factors.append(WTuple(a.entries[start:], a.params[start:], a.mode, a.ground))
    return factors


def is_indecomposable(a: WTuple) -> bool:
    return bool(a.entries) and all(t < 1 for t in a.params)


def plus_comparison(G: FinSemigroup, a: Optional[WTuple], target: Optional[FinMonoid] = None) -> WTuple:
    """
    (W-bar G)_+ -> W(G_+). ``None`` stands for the adjoined unit; element
    indices shift by one because G_+ lists its new unit first.
    """
    Gp = target or adjoin_unit(G)
    if a is None:
        return unit(Gp)
    if a.mode is not Mode.SEMIGROUP or a.ground != G:
        raise PreconditionError("plus_comparison takes W-bar tuples over G")
    return WTuple(tuple(x + 1 for x in a.entries), a.params, Mode.MONOID, Gp)


def plus_comparison_inverse(G: FinSemigroup, b: WTuple) -> Optional[WTuple]:
    if not b.entries:
        return None
    return WTuple(tuple(x - 1 for x in b.entries), b.params, Mode.SEMIGROUP, G)


def random_wtuple(
    ground: FinSemigroup,
    rng: random.Random,
    max_letters: int = 4,
    mode: Mode = Mode.SEMIGROUP,
    params: Sequence[Fraction] = SAMPLE_PARAMS,
) -> WTuple:
    n = rng.randint(1, max_letters)
    entries = [rng.randrange(len(ground)) for _ in range(n)]
    return normalize(ground, entries, [rng.choice(params) for _ in range(n - 1)], mode)


def random_raw(
    ground: FinSemigroup,
    rng: random.Random,
    max_letters: int = 4,
    params: Sequence[Fraction] = SAMPLE_PARAMS,
) -> Tuple[List[int], List[Fraction]]:
    n = rng.randint(1, max_letters)
    return [rng.randrange(len(ground)) for _ in range(n)], [rng.choice(params) for _ in range(n - 1)]


# ---------------------------------------------------------------------------
# Whiskering


@dataclass(frozen=True)
class WhiskerElem:
    """An element of VM: a monoid element, or a whisker coordinate s in [0, 1)"""

    element: Optional[int] = None
    s: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if (self.element is None) == (self.s is None):
            raise TableError("a whisker element is either a monoid element or a whisker coordinate")
        if self.s is not None and not 0 <= self.s < 1:
            raise RangeError(f"whisker coordinate {self.s} outside [0, 1)")


def whisker(M: FinMonoid, s: Fraction) -> WhiskerElem:
    """The point s of the whisker; s = 1 is the unit of M"""
    if s == 1:
        return WhiskerElem(element=M.unit)
    return WhiskerElem(s=Fraction(s))


def whisker_unit() -> WhiskerElem:
    return WhiskerElem(s=ZERO)


def whisker_mul(M: FinMonoid, u: WhiskerElem, v: WhiskerElem) -> WhiskerElem:
    """xy on M, the monoid element when one factor is on the whisker, max(s, t) on the whisker"""
    if u.element is not None and v.element is not None:
        return WhiskerElem(element=M.mul(u.element, v.element))
    if u.element is not None:
        return u
    if v.element is not None:
        return v
    return WhiskerElem(s=max(u.s, v.s))  # type: ignore[type-var]


def whisker_q(M: FinMonoid, u: WhiskerElem) -> int:
    """q: VM -> M, collapsing the whisker to e"""
    return M.unit if u.element is None else u.element


def whisker_section(M: FinMonoid, x: int) -> WhiskerElem:
    """M -> VM; multiplicative but not unital"""
    return WhiskerElem(element=x)


def random_whisker(M: FinMonoid, rng: random.Random) -> WhiskerElem:
    if rng.random() < 0.5:
        return WhiskerElem(element=rng.randrange(len(M)))
    return WhiskerElem(s=rng.choice(SAMPLE_PARAMS[:-1]))


# ---------------------------------------------------------------------------
# Cubical cell model of W-bar G

Blocks = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class BlockCell:
    """
    An open cube of W-bar G: letters grouped into blocks. Walls between
    blocks are parameters frozen at 1; each gap inside a block is a free
    parameter in (0, 1).
    """

    blocks: Blocks

    @property
    def dim(self) -> int:
        return sum(len(b) - 1 for b in self.blocks)

    @property
    def letters(self) -> int:
        return sum(len(b) for b in self.blocks)

    def word(self) -> Tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)

    def slots(self) -> List[Tuple[int, int]]:
        """(block, gap) for every free parameter, in global order"""
        return [(k, j) for k, b in enumerate(self.blocks) for j in range(len(b) - 1)]

    def merge_face(self, G: FinSemigroup, k: int, j: int) -> "BlockCell":
        """The face t = 0 at gap j of block k"""
        b = self.blocks[k]
        merged = b[:j] + (G.mul(b[j], b[j + 1]),) + b[j + 2 :]
        return BlockCell(self.blocks[:k] + (merged,) + self.blocks[k + 1 :])

    def split_face(self, k: int, j: int) -> "BlockCell":
        """The face t = 1 at gap j of block k"""
        b = self.blocks[k]
        return BlockCell(self.blocks[:k] + (b[: j + 1], b[j + 1 :]) + self.blocks[k + 1 :])

    def label(self, G: FinSemigroup) -> str:
        return "|".join(" ".join(G.elements[x] for x in b) for b in self.blocks)


def _compositions(k: int) -> List[Tuple[int, ...]]:
    """Ordered block-length sequences summing to k"""
    if k == 0:
        return [()]
    out = []
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            out.append((first,) + rest)
    return out


def block_cells(G: FinSemigroup, L: int) -> List[List[BlockCell]]:
    """All cells with at most L letters, grouped by dimension"""
    if L < 1:
        raise RangeError("letter bound must be >= 1")
    by_dim: List[List[BlockCell]] = [[] for _ in range(L)]
    for k in range(1, L + 1):
        shapes = _compositions(k)
        for word in product(range(len(G)), repeat=k):
            for shape in shapes:
                blocks, pos = [], 0
                for size in shape:
                    blocks.append(word[pos : pos + size])
                    pos += size
                cell = BlockCell(tuple(blocks))
                by_dim[cell.dim].append(cell)
    return by_dim


def wbar_complex(G: FinSemigroup, L: int) -> ChainComplex:
    """
    Cellular chains of the letter-bounded part of W-bar G.

    The boundary of a cell is the sum over its free slots p of
    (-1)^p (split face - merge face).
    """
    cells = block_cells(G, L)
    index: List[Dict[BlockCell, int]] = [{c: i for i, c in enumerate(cs)} for cs in cells]
    dims = tuple(len(cs) for cs in cells)
    boundaries = []
    for n in range(1, L):
        entries: Dict[Tuple[int, int], int] = {}
        for col, cell in enumerate(cells[n]):
            for p, (k, j) in enumerate(cell.slots()):
                sign = -1 if p % 2 else 1
                for face, coeff in ((cell.split_face(k, j), sign), (cell.merge_face(G, k, j), -sign)):
                    key = (index[n - 1][face], col)
                    entries[key] = entries.get(key, 0) + coeff
        boundaries.append(IntMatrix(dims[n - 1], dims[n], {k: v for k, v in entries.items() if v}))
    labels = tuple(tuple(c.label(G) for c in cs) for cs in cells)
    return ChainComplex(dims, tuple(boundaries), labels)


def wbar_components(G: FinSemigroup, L: int) -> List[List[Tuple[int, ...]]]:
    """Connected components of the 1-skeleton, as lists of words"""
    cells = block_cells(G, L)
    uf = UnionFind(c.word() for c in cells[0])
    for cell in cells[1] if L > 1 else []:
        ((k, j),) = cell.slots()
        uf.union(cell.split_face(k, j).word(), cell.merge_face(G, k, j).word())
    return list(uf.classes().values())
