"""
Finite monoids, semigroups and categories, finite-per-degree simplicial
sets, nerves, smash products and the normalized chain functor.

A simplex of a materialized simplicial set is a pair ``(word, generator)``
where ``word`` is a degeneracy word ``s_{i1} ... s_{ik}`` stored as the
strictly descending tuple ``(i1, ..., ik)``.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Protocol,
    Sequence,
    Tuple,
)

from .core import PreconditionError, RangeError, TableError
from .exactalg import ChainComplex, IntMatrix

Word = Tuple[int, ...]
Simplex = Tuple[Word, Hashable]


# ---------------------------------------------------------------------------
# Algebraic ground objects


@dataclass(frozen=True)
class FinSemigroup:
    """A finite semigroup given by its multiplication table (row = left factor)"""

    name: str
    elements: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.elements)
        if n == 0:
            raise TableError(f"{self.name}: empty carrier")
        if len(set(self.elements)) != n:
            raise TableError(f"{self.name}: duplicate element names")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise TableError(f"{self.name}: table is not {n}x{n}")
        if any(not 0 <= v < n for row in self.table for v in row):
            raise TableError(f"{self.name}: table not closed")
        t = self.table
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        a, b, c = self.elements[x], self.elements[y], self.elements[z]
                        raise TableError(f"{self.name}: ({a}{b}){c} != {a}({b}{c})")

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise PreconditionError(f"{self.name}: no element {name!r}") from None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, xs: Iterable[int]) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def is_commutative(self) -> bool:
        n = len(self)
        return all(self.table[x][y] == self.table[y][x] for x in range(n) for y in range(n))


@dataclass(frozen=True)
class FinMonoid(FinSemigroup):
    """A finite semigroup with a two-sided unit"""

    unit: int = 0

    def __post_init__(self) -> None:
        super().__post_init__()
        e = self.unit
        if not 0 <= e < len(self):
            raise TableError(f"{self.name}: unit index out of range")
        for x in range(len(self)):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise TableError(f"{self.name}: {self.elements[e]} is not a unit")

    def product(self, xs: Iterable[int]) -> int:
        acc = self.unit
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def inverse(self, x: int) -> Optional[int]:
        for y in range(len(self)):
            if self.table[x][y] == self.unit and self.table[y][x] == self.unit:
                return y
        return None

    def is_group(self) -> bool:
        return all(self.inverse(x) is not None for x in range(len(self)))

    def as_category(self) -> "FinCategory":
        """The one-object category with this monoid as endomorphisms"""
        els = self.elements
        return FinCategory(
            name=self.name,
            objects=("*",),
            morphisms=els,
            source={f: "*" for f in els},
            target={f: "*" for f in els},
            identities={"*": els[self.unit]},
            composition={(els[g], els[f]): els[self.table[g][f]] for g in range(len(els)) for f in range(len(els))},
        )


def monoid_from_rows(name: str, elements: Sequence[str], rows: Sequence[Sequence[str]], unit: str) -> FinMonoid:
    idx = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(idx[v] for v in row) for row in rows)
    return FinMonoid(name, tuple(elements), table, idx[unit])


def cyclic_group(n: int, name: Optional[str] = None) -> FinMonoid:
    """Z/n with elements e, a, a2, ..."""
    els = tuple(["e"] + ["a" if k == 1 else f"a{k}" for k in range(1, n)])
    table = tuple(tuple((x + y) % n for y in range(n)) for x in range(n))
    return FinMonoid(name or f"z{n}", els, table, 0)


def trivial_monoid() -> FinMonoid:
    return FinMonoid("trivial", ("e",), ((0,),), 0)


def adjoin_unit(G: FinSemigroup) -> FinMonoid:
    """
    G_+ = G with a new two-sided unit ``*`` adjoined (placed first).

    Args:
        G: A finite semigroup (monoids are accepted and get a fresh unit)

    Returns:
        The monoid G_+ with |G| + 1 elements
    """
    star = "*"
    while star in G.elements:
        star += "'"
    n = len(G)
    table = [tuple(range(n + 1))]
    for x in range(n):
        table.append((x + 1,) + tuple(G.table[x][y] + 1 for y in range(n)))
    return FinMonoid(f"{G.name}+", (star,) + G.elements, tuple(table), 0)


def as_semigroup(M: FinSemigroup) -> FinSemigroup:
    """Forget the unit"""
    return FinSemigroup(M.name, M.elements, M.table)


@dataclass(frozen=True)
class Homomorphism:
    """A map of finite semigroups/monoids given elementwise"""

    source: FinSemigroup
    target: FinSemigroup
    mapping: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != len(self.source):
            raise TableError("homomorphism table has the wrong length")
        s, t, f = self.source, self.target, self.mapping
        for x in range(len(s)):
            for y in range(len(s)):
                if f[s.mul(x, y)] != t.mul(f[x], f[y]):
                    raise TableError(f"not a homomorphism at ({s.elements[x]}, {s.elements[y]})")
        if isinstance(s, FinMonoid) and isinstance(t, FinMonoid) and f[s.unit] != t.unit:
            raise TableError("homomorphism does not preserve the unit")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """other o self"""
        return Homomorphism(self.source, other.target, tuple(other.mapping[y] for y in self.mapping))

    @classmethod
    def identity(cls, M: FinSemigroup) -> "Homomorphism":
        return cls(M, M, tuple(range(len(M))))


def counit_plus(M: FinMonoid) -> Homomorphism:
    """kappa: M_+ -> M, sending the adjoined unit to the unit of M"""
    return Homomorphism(adjoin_unit(M), M, (M.unit,) + tuple(range(len(M))))


@dataclass(frozen=True, eq=False)
class FinCategory:
    """
    A finite category. ``composition[(g, f)]`` is g o f, defined when
    target(f) == source(g); identities are listed among the morphisms.
    """

    name: str
    objects: Tuple[str, ...]
    morphisms: Tuple[str, ...]
    source: Mapping[str, str]
    target: Mapping[str, str]
    identities: Mapping[str, str]
    composition: Mapping[Tuple[str, str], str]
    _homs: Dict[Tuple[str, str], Tuple[str, ...]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for f in self.morphisms:
            if self.source.get(f) not in self.objects or self.target.get(f) not in self.objects:
                raise TableError(f"{self.name}: morphism {f} has no valid source/target")
        for a in self.objects:
            ida = self.identities.get(a)
            if ida is None or self.source[ida] != a or self.target[ida] != a:
                raise TableError(f"{self.name}: missing identity for {a}")
        for g in self.morphisms:
            for f in self.morphisms:
                if self.target[f] != self.source[g]:
                    continue
                h = self.composition.get((g, f))
                if h is None:
                    raise TableError(f"{self.name}: composite {g} o {f} undefined")
                if self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                    raise TableError(f"{self.name}: {g} o {f} = {h} has the wrong type")
        for f in self.morphisms:
            if self.composition[(self.identities[self.target[f]], f)] != f:
                raise TableError(f"{self.name}: left identity law fails at {f}")
            if self.composition[(f, self.identities[self.source[f]])] != f:
                raise TableError(f"{self.name}: right identity law fails at {f}")
        for h in self.morphisms:
            for g in self.morphisms:
                if self.target[g] != self.source[h]:
                    continue
                for f in self.morphisms:
                    if self.target[f] != self.source[g]:
                        continue
                    c = self.composition
                    if c[(c[(h, g)], f)] != c[(h, c[(g, f)])]:
                        raise TableError(f"{self.name}: composition not associative at ({h}, {g}, {f})")

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = tuple(f for f in self.morphisms if self.source[f] == a and self.target[f] == b)
        return self._homs[key]

    def compose(self, g: str, f: str) -> str:
        return self.composition[(g, f)]

    def is_identity(self, f: str) -> bool:
        return self.identities[self.source[f]] == f

    def chains(self, n: int) -> Iterator[Tuple[str, ...]]:
        """Composable n-tuples (f_1, ..., f_n) with source(f_i) == target(f_{i+1}), n >= 1"""
        if n == 1:
            for f in self.morphisms:
                yield (f,)
            return
        for rest in self.chains(n - 1):
            for f in self.morphisms:
                if self.target[f] == self.source[rest[-1]]:
                    yield rest + (f,)

    def opposite(self) -> "FinCategory":
        return FinCategory(
            name=f"{self.name}^op",
            objects=self.objects,
            morphisms=self.morphisms,
            source=dict(self.target),
            target=dict(self.source),
            identities=dict(self.identities),
            composition={(f, g): h for (g, f), h in self.composition.items()},
        )

    def product(self, other: "FinCategory") -> "FinCategory":
        """Product category; objects and morphisms are written ``x,y``"""

        def pair(x: str, y: str) -> str:
            return f"{x},{y}"

        morphisms = tuple(pair(f, g) for f in self.morphisms for g in other.morphisms)
        parts = {pair(f, g): (f, g) for f in self.morphisms for g in other.morphisms}
        comp = {}
        for m2, (f2, g2) in parts.items():
            for m1, (f1, g1) in parts.items():
                if self.target[f1] == self.source[f2] and other.target[g1] == other.source[g2]:
                    comp[(m2, m1)] = pair(self.compose(f2, f1), other.compose(g2, g1))
        return FinCategory(
            name=f"{self.name}x{other.name}",
            objects=tuple(pair(a, b) for a in self.objects for b in other.objects),
            morphisms=morphisms,
            source={m: pair(self.source[f], other.source[g]) for m, (f, g) in parts.items()},
            target={m: pair(self.target[f], other.target[g]) for m, (f, g) in parts.items()},
            identities={pair(a, b): pair(self.identities[a], other.identities[b]) for a in self.objects for b in other.objects},
            composition=comp,
        )


def category_from_arrows(
    name: str,
    objects: Sequence[str],
    arrows: Mapping[str, Tuple[str, str]],
    composites: Optional[Mapping[Tuple[str, str], str]] = None,
) -> FinCategory:
    """
    Build a category from its non-identity arrows; identities are named
    ``id_<object>`` and composites with identities are filled in.
    """
    ids = {a: f"id_{a}" for a in objects}
    source = {ids[a]: a for a in objects}
    target = {ids[a]: a for a in objects}
    for f, (s, t) in arrows.items():
        source[f], target[f] = s, t
    comp: Dict[Tuple[str, str], str] = dict(composites or {})
    for f in source:
        comp[(ids[target[f]], f)] = f
        comp[(f, ids[source[f]])] = f
    morphisms = tuple(ids[a] for a in objects) + tuple(arrows)
    return FinCategory(name, tuple(objects), morphisms, source, target, ids, comp)


def span_category() -> FinCategory:
    """a <-f- m -g-> b"""
    return category_from_arrows("span", ("a", "m", "b"), {"f": ("m", "a"), "g": ("m", "b")})


def arrow_category() -> FinCategory:
    """0 -f-> 1"""
    return category_from_arrows("arrow", ("0", "1"), {"f": ("0", "1")})


# ---------------------------------------------------------------------------
# Degeneracy words


def apply_degeneracy(j: int, word: Word) -> Word:
    """Normal form of s_j o s_word, using s_j s_i = s_{i+1} s_j for j <= i"""
    out: List[int] = []
    for k, i in enumerate(word):
        if j > i:
            return tuple(out) + (j,) + word[k:]
        out.append(i + 1)
    return tuple(out) + (j,)


def compose_words(outer: Sequence[int], inner: Word) -> Word:
    """Normal form of s_outer o s_inner for an arbitrary (unsorted) outer word"""
    w = inner
    for j in reversed(outer):
        w = apply_degeneracy(j, w)
    return w


def degeneracy_words(n: int, k: int) -> Iterator[Word]:
    """All normal-form words of length k landing in degree n"""
    for subset in combinations(range(n), k):
        yield tuple(reversed(subset))


def base_word(n: int) -> Word:
    """s_{n-1} ... s_0, taking a vertex to degree n"""
    return tuple(range(n - 1, -1, -1))


class SimplicialModel(Protocol):
    """A simplicial object given by concrete simplices and structure maps"""

    def simplices(self, n: int) -> Iterable[Hashable]: ...

    def face(self, n: int, i: int, x: Hashable) -> Hashable: ...

    def degeneracy(self, n: int, j: int, x: Hashable) -> Hashable: ...


# ---------------------------------------------------------------------------
# Materialized simplicial sets


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    """
    A simplicial (or semisimplicial) set truncated at ``maxdim``.

    ``faces[g]`` lists d_0 g, ..., d_n g as simplices ``(word, generator)``.
    """

    name: str
    maxdim: int
    generators: Tuple[Tuple[Hashable, ...], ...]
    faces: Mapping[Hashable, Tuple[Simplex, ...]]
    basepoint: Optional[Hashable] = None
    semisimplicial: bool = False
    _dims: Dict[Hashable, int] = field(default_factory=dict, repr=False)
    _index: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.maxdim < 0:
            raise RangeError(f"maxdim {self.maxdim} < 0")
        if len(self.generators) != self.maxdim + 1:
            raise RangeError(f"{self.name}: expected generators for degrees 0..{self.maxdim}")
        for n, gens in enumerate(self.generators):
            for k, g in enumerate(gens):
                if g in self._dims:
                    raise TableError(f"{self.name}: generator {g!r} appears twice")
                self._dims[g] = n
                self._index[g] = k
        if self.basepoint is not None and self._dims.get(self.basepoint) != 0:
            raise PreconditionError(f"{self.name}: basepoint must be a vertex")

    def gens(self, n: int) -> Tuple[Hashable, ...]:
        return self.generators[n] if 0 <= n <= self.maxdim else ()

    def dim_of(self, g: Hashable) -> int:
        return self._dims[g]

    def index(self, g: Hashable) -> int:
        return self._index[g]

    def rank(self, n: int) -> int:
        return len(self.gens(n))

    def base_simplex(self, n: int) -> Simplex:
        if self.basepoint is None:
            raise PreconditionError(f"{self.name} has no basepoint")
        return (base_word(n), self.basepoint)

    def face(self, n: int, i: int, x: Hashable) -> Simplex:
        """d_i of the n-simplex x = (word, generator)"""
        word, g = x  # type: ignore[misc]
        prefix: List[int] = []
        idx = i
        for k, j in enumerate(word):
            if idx < j:
                prefix.append(j - 1)
            elif idx in (j, j + 1):
                return compose_words(prefix, word[k + 1 :]), g
            else:
                prefix.append(j)
                idx -= 1
        fw, fg = self.faces[g][idx]
        return compose_words(prefix, fw), fg

    def degeneracy(self, n: int, j: int, x: Hashable) -> Simplex:
        if self.semisimplicial:
            raise PreconditionError(f"{self.name} is semisimplicial")
        word, g = x  # type: ignore[misc]
        return apply_degeneracy(j, word), g

    def simplices(self, n: int) -> Iterator[Simplex]:
        """Every n-simplex, degenerate ones included"""
        if self.semisimplicial:
            for g in self.gens(n):
                yield ((), g)
            return
        for m in range(0, min(n, self.maxdim) + 1):
            for word in degeneracy_words(n, n - m):
                for g in self.gens(m):
                    yield (word, g)

    def validate(self) -> None:
        """Check d_i d_j = d_{j-1} d_i for i < j on every generator"""
        for n in range(1, self.maxdim + 1):
            for g in self.gens(n):
                fs = self.faces[g]
                if len(fs) != n + 1:
                    raise TableError(f"{self.name}: {g!r} has {len(fs)} faces, expected {n + 1}")
                for w, h in fs:
                    if self.semisimplicial and w:
                        raise TableError(f"{self.name}: degenerate face in semisimplicial mode")
                    if h not in self._dims or self._dims[h] + len(w) != n - 1:
                        raise TableError(f"{self.name}: face {w}{h!r} of {g!r} has the wrong degree")
            if n < 2:
                continue
            for g in self.gens(n):
                x: Simplex = ((), g)
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(n - 1, i, self.face(n, j, x))
                        rhs = self.face(n - 1, j - 1, self.face(n, i, x))
                        if lhs != rhs:
                            raise TableError(f"{self.name}: d_{i} d_{j} != d_{j - 1} d_{i} on {g!r}")


def decomposer(
    model: SimplicialModel,
    semisimplicial: bool = False,
    label: Callable[[Hashable], Hashable] = lambda x: x,
) -> Callable[[int, Hashable], Simplex]:
    """Memoized map from concrete n-simplices of a model to (word, generator)"""
    memo: Dict[Tuple[int, Hashable], Simplex] = {}

    def decompose(n: int, x: Hashable) -> Simplex:
        key = (n, x)
        if key in memo:
            return memo[key]
        out: Simplex = ((), label(x))
        if not semisimplicial:
            for j in range(n - 1, -1, -1):
                y = model.face(n, j, x)
                if model.degeneracy(n - 1, j, y) == x:
                    w, g = decompose(n - 1, y)
                    out = (apply_degeneracy(j, w), g)
                    break
        memo[key] = out
        return out

    return decompose


def materialize(
    model: SimplicialModel,
    maxdim: int,
    name: str,
    basepoint: Optional[Hashable] = None,
    semisimplicial: bool = False,
    label: Callable[[Hashable], Hashable] = lambda x: x,
) -> SimplicialSet:
    """
    Turn a concrete simplicial model into a SimplicialSet.

    An n-simplex x is degenerate iff x = s_j d_j x for some j; the largest
    such j is split off first and the rest is decomposed recursively.

    Args:
        model: Concrete simplices and structure maps
        maxdim: Truncation degree
        name: Name of the result
        basepoint: Concrete vertex to use as basepoint
        semisimplicial: Treat every simplex as a generator
        label: Injective relabelling of generators

    Returns:
        The materialized SimplicialSet
    """
    if maxdim < 0:
        raise RangeError(f"maxdim {maxdim} < 0")
    decompose = decomposer(model, semisimplicial, label)

    generators: List[Tuple[Hashable, ...]] = []
    faces: Dict[Hashable, Tuple[Simplex, ...]] = {}
    for n in range(maxdim + 1):
        gens = []
        for x in model.simplices(n):
            w, g = decompose(n, x)
            if w:
                continue
            gens.append(g)
            faces[g] = tuple(decompose(n - 1, model.face(n, i, x)) for i in range(n + 1)) if n else ()
        generators.append(tuple(gens))
    return SimplicialSet(
        name=name,
        maxdim=maxdim,
        generators=tuple(generators),
        faces=faces,
        basepoint=None if basepoint is None else label(basepoint),
        semisimplicial=semisimplicial,
    )


# ---------------------------------------------------------------------------
# Nerves


class NerveModel:
    """
    Nerve of a finite category: n-simplices are composable n-tuples,
    0-simplices are objects.
    """

    def __init__(self, C: FinCategory):
        self.C = C

    def simplices(self, n: int) -> Iterable[Hashable]:
        return self.C.objects if n == 0 else self.C.chains(n)

    def face(self, n: int, i: int, x: Hashable) -> Hashable:
        C = self.C
        fs: Tuple[str, ...] = x  # type: ignore[assignment]
        if n == 1:
            return C.source[fs[0]] if i == 0 else C.target[fs[0]]
        if i == 0:
            return fs[1:]
        if i == n:
            return fs[:-1]
        return fs[: i - 1] + (C.compose(fs[i - 1], fs[i]),) + fs[i + 1 :]

    def degeneracy(self, n: int, j: int, x: Hashable) -> Hashable:
        C = self.C
        if n == 0:
            return (C.identities[x],)  # type: ignore[index]
        fs: Tuple[str, ...] = x  # type: ignore[assignment]
        obj = C.target[fs[0]] if j == 0 else C.source[fs[j - 1]]
        return fs[:j] + (C.identities[obj],) + fs[j:]


def nerve(M: "FinMonoid | FinCategory", maxdim: int) -> SimplicialSet:
    """
    Nerve of a finite monoid (as a one-object category) or category.

    Monoid nerves label n-simplices by n-tuples of element names, the
    vertex by ``()``; category nerves label vertices by object names.
    """
    if maxdim < 0:
        raise RangeError(f"maxdim {maxdim} < 0")
    if isinstance(M, FinMonoid):
        C = M.as_category()
        return materialize(
            NerveModel(C),
            maxdim,
            name=f"B{M.name}",
            basepoint="*",
            label=lambda x: () if x == "*" else x,
        )
    basepoint = M.objects[0] if len(M.objects) == 1 else None
    return materialize(NerveModel(M), maxdim, name=f"B{M.name}", basepoint=basepoint)


class SemigroupNerveModel:
    """Fat nerve of a semigroup: all n-tuples, no degeneracies"""

    def __init__(self, G: FinSemigroup):
        self.G = G

    def simplices(self, n: int) -> Iterable[Hashable]:
        return product(self.G.elements, repeat=n)

    def face(self, n: int, i: int, x: Hashable) -> Hashable:
        xs: Tuple[str, ...] = x  # type: ignore[assignment]
        if i == 0:
            return xs[1:]
        if i == n:
            return xs[:-1]
        G = self.G
        return xs[: i - 1] + (G.elements[G.mul(G.index(xs[i - 1]), G.index(xs[i]))],) + xs[i + 1 :]

    def degeneracy(self, n: int, j: int, x: Hashable) -> Hashable:
        raise PreconditionError("the fat nerve has no degeneracies")


def semigroup_nerve(G: FinSemigroup, maxdim: int) -> SimplicialSet:
    """Semisimplicial nerve of a semigroup (the fat realization model)"""
    return materialize(SemigroupNerveModel(G), maxdim, name=f"B~{G.name}", basepoint=(), semisimplicial=True)


# ---------------------------------------------------------------------------
# Spheres, products, smash, suspension


def sphere(n: int, maxdim: int) -> SimplicialSet:
    """Minimal based model of S^n: a vertex ``*`` and one n-simplex ``s<n>``"""
    if n < 0 or maxdim < 0:
        raise RangeError("sphere dimension and maxdim must be >= 0")
    if n == 0:
        gens: List[Tuple[Hashable, ...]] = [("*", "s0")] + [() for _ in range(maxdim)]
        return SimplicialSet("S0", maxdim, tuple(gens), {"*": (), "s0": ()}, basepoint="*")
    gens = [("*",)] + [() for _ in range(maxdim)]
    faces: Dict[Hashable, Tuple[Simplex, ...]] = {"*": ()}
    if n <= maxdim:
        gens[n] = (f"s{n}",)
        faces[f"s{n}"] = tuple((base_word(n - 1), "*") for _ in range(n + 1))
    return SimplicialSet(f"S{n}", maxdim, tuple(gens), faces, basepoint="*")


def point(maxdim: int) -> SimplicialSet:
    return SimplicialSet("point", maxdim, (("*",),) + tuple(() for _ in range(maxdim)), {"*": ()}, basepoint="*")


class ProductModel:
    def __init__(self, X: SimplicialSet, Y: SimplicialSet):
        self.X, self.Y = X, Y

    def simplices(self, n: int) -> Iterable[Hashable]:
        return product(list(self.X.simplices(n)), list(self.Y.simplices(n)))

    def face(self, n: int, i: int, x: Hashable) -> Hashable:
        a, b = x  # type: ignore[misc]
        return (self.X.face(n, i, a), self.Y.face(n, i, b))

    def degeneracy(self, n: int, j: int, x: Hashable) -> Hashable:
        a, b = x  # type: ignore[misc]
        return (self.X.degeneracy(n, j, a), self.Y.degeneracy(n, j, b))


BASE = "*"


class SmashModel(ProductModel):
    """X x Y with X v Y collapsed to the single simplex BASE in each degree"""

    def _collapse(self, n: int, x: Hashable) -> Hashable:
        a, b = x  # type: ignore[misc]
        if a == self.X.base_simplex(n) or b == self.Y.base_simplex(n):
            return BASE
        return x

    def simplices(self, n: int) -> Iterable[Hashable]:
        yield BASE
        xs = [a for a in self.X.simplices(n) if a != self.X.base_simplex(n)]
        ys = [b for b in self.Y.simplices(n) if b != self.Y.base_simplex(n)]
        yield from product(xs, ys)

    def face(self, n: int, i: int, x: Hashable) -> Hashable:
        if x == BASE:
            return BASE
        return self._collapse(n - 1, super().face(n, i, x))

    def degeneracy(self, n: int, j: int, x: Hashable) -> Hashable:
        if x == BASE:
            return BASE
        return self._collapse(n + 1, super().degeneracy(n, j, x))


def product_set(X: SimplicialSet, Y: SimplicialSet, maxdim: Optional[int] = None) -> SimplicialSet:
    top = min(X.maxdim, Y.maxdim) if maxdim is None else maxdim
    base = None
    if X.basepoint is not None and Y.basepoint is not None:
        base = (((), X.basepoint), ((), Y.basepoint))
    return materialize(ProductModel(X, Y), top, name=f"{X.name}x{Y.name}", basepoint=base)


def smash(X: SimplicialSet, Y: SimplicialSet, maxdim: Optional[int] = None) -> SimplicialSet:
    """Smash product of based simplicial sets"""
    if X.basepoint is None or Y.basepoint is None:
        raise PreconditionError("smash product needs based simplicial sets")
    top = min(X.maxdim, Y.maxdim) if maxdim is None else maxdim
    return materialize(SmashModel(X, Y), top, name=f"{X.name}^{Y.name}", basepoint=BASE)


def wedge(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    """X v Y; generators are tagged ``(0, g)`` and ``(1, g)``, basepoints glued"""
    if X.basepoint is None or Y.basepoint is None:
        raise PreconditionError("wedge needs based simplicial sets")
    top = min(X.maxdim, Y.maxdim)

    def tag(side: int, g: Hashable) -> Hashable:
        return (0, X.basepoint) if side == 1 and g == Y.basepoint else (side, g)

    generators = []
    faces: Dict[Hashable, Tuple[Simplex, ...]] = {}
    for n in range(top + 1):
        gens = [tag(0, g) for g in X.gens(n)] + [tag(1, g) for g in Y.gens(n) if g != Y.basepoint]
        generators.append(tuple(gens))
        for side, S in ((0, X), (1, Y)):
            for g in S.gens(n):
                faces.setdefault(tag(side, g), tuple((w, tag(side, h)) for w, h in S.faces[g]))
    return SimplicialSet(f"{X.name}v{Y.name}", top, tuple(generators), faces, basepoint=(0, X.basepoint))


def suspension(X: SimplicialSet) -> SimplicialSet:
    """Reduced suspension S^1 ^ X, truncated at X.maxdim"""
    if X.basepoint is None:
        raise PreconditionError(f"suspension of {X.name} needs a basepoint")
    out = smash(sphere(1, X.maxdim), X)
    return SimplicialSet(f"S{X.name}", out.maxdim, out.generators, out.faces, out.basepoint)


# ---------------------------------------------------------------------------
# Chains


def chains(X: SimplicialSet) -> ChainComplex:
    """
    Integral chain complex of X: normalized (degenerate faces contribute 0)
    for simplicial sets, unnormalized for semisimplicial ones. Coefficients
    are applied when homology is taken.
    """
    dims = tuple(X.rank(n) for n in range(X.maxdim + 1))
    boundaries = []
    for n in range(1, X.maxdim + 1):
        entries: Dict[Tuple[int, int], int] = {}
        for col, g in enumerate(X.gens(n)):
            for i, (w, h) in enumerate(X.faces[g]):
                if w:
                    continue
                key = (X.index(h), col)
                entries[key] = entries.get(key, 0) + (-1) ** i
        boundaries.append(IntMatrix(dims[n - 1], dims[n], entries))
    labels = tuple(tuple(str(g) for g in X.gens(n)) for n in range(X.maxdim + 1))
    return ChainComplex(dims, tuple(boundaries), labels)
