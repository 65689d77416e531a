"""
Two-sided bar constructions over finite categories, the tensor product of
diagrams over a category, the collapse map delta and homotopy colimits.

Diagrams take values in materialized simplicial sets; sets are discrete
simplicial sets. Bar constructions of simplicial-set valued diagrams are
realized through the diagonal.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

from .core import PreconditionError, RangeError, TableError
from .exactalg import UnionFind
from .simplicial import (
    FinCategory,
    FinMonoid,
    Simplex,
    SimplicialModel,
    SimplicialSet,
    base_word,
    compose_words,
    decomposer,
    materialize,
    point,
    span_category,
)

# A concrete bar simplex: (x in X(B), (f_1, ..., f_n), A, y in Y(A))
BarSimplex = Tuple[Simplex, Tuple[str, ...], str, Simplex]


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A map of simplicial sets, given on generators"""

    source: SimplicialSet
    target: SimplicialSet
    images: Mapping[Hashable, Simplex]

    def __call__(self, n: int, x: Simplex) -> Simplex:
        w, g = x
        iw, ig = self.images[g]
        return compose_words(w, iw), ig

    def validate(self) -> None:
        """Check degrees and compatibility with every face map"""
        S, T = self.source, self.target
        for n in range(S.maxdim + 1):
            for g in S.gens(n):
                if g not in self.images:
                    raise TableError(f"map {S.name} -> {T.name} undefined on {g!r}")
                w, h = self.images[g]
                if T.dim_of(h) + len(w) != n:
                    raise TableError(f"map {S.name} -> {T.name} changes the degree of {g!r}")
                for i in range(n + 1 if n else 0):
                    if self(n - 1, S.faces[g][i]) != T.face(n, i, self.images[g]):
                        raise TableError(f"map {S.name} -> {T.name} does not commute with d_{i} on {g!r}")

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """other o self"""
        return SimplicialMap(
            self.source,
            other.target,
            {g: other(self.source.dim_of(g), self.images[g]) for g in self.images},
        )

    def agrees_with(self, other: "SimplicialMap") -> bool:
        return all(self.images[g] == other.images.get(g) for g in self.images)

    @classmethod
    def identity(cls, X: SimplicialSet) -> "SimplicialMap":
        return cls(X, X, {g: ((), g) for n in range(X.maxdim + 1) for g in X.gens(n)})


def induced_map(
    source: SimplicialSet,
    target: SimplicialSet,
    target_model: SimplicialModel,
    fn: Callable[[int, Hashable], Hashable],
) -> SimplicialMap:
    """
    A SimplicialMap from a map of concrete simplices; both sets must have
    been materialized with identity labels.
    """
    decompose = decomposer(target_model, target.semisimplicial)
    images = {}
    for n in range(source.maxdim + 1):
        for g in source.gens(n):
            images[g] = decompose(n, fn(n, g))
    return SimplicialMap(source, target, images)


def discrete_set(name: str, elements: Iterable[str], maxdim: int) -> SimplicialSet:
    """A set viewed as a constant simplicial set"""
    els = tuple(elements)
    return SimplicialSet(name, maxdim, (els,) + tuple(() for _ in range(maxdim)), {x: () for x in els})


def function_map(source: SimplicialSet, target: SimplicialSet, fn: Callable[[str], str]) -> SimplicialMap:
    """The map of discrete simplicial sets induced by a function of elements"""
    return SimplicialMap(source, target, {x: ((), fn(x)) for x in source.gens(0)})  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class Diagram:
    """
    A functor from ``shape`` to simplicial sets. A contravariant diagram
    sends f: a -> b to arrow(f): at(b) -> at(a).
    """

    shape: FinCategory
    values: Mapping[str, SimplicialSet]
    arrows: Mapping[str, SimplicialMap]
    contravariant: bool = False
    name: str = "D"

    def at(self, obj: str) -> SimplicialSet:
        return self.values[obj]

    def arrow(self, f: str) -> SimplicialMap:
        return self.arrows[f]

    @property
    def maxdim(self) -> int:
        return min(X.maxdim for X in self.values.values())

    def validate(self) -> None:
        """Check that every arrow has the right ends and that D is a functor"""
        C = self.shape
        for a in C.objects:
            if a not in self.values:
                raise TableError(f"{self.name}: no value at {a}")
        for f in C.morphisms:
            m = self.arrows.get(f)
            if m is None:
                raise TableError(f"{self.name}: no map for {f}")
            s, t = C.source[f], C.target[f]
            if self.contravariant:
                s, t = t, s
            if m.source is not self.at(s) or m.target is not self.at(t):
                raise TableError(f"{self.name}: map for {f} has the wrong ends")
            m.validate()
            if C.is_identity(f) and not m.agrees_with(SimplicialMap.identity(m.source)):
                raise TableError(f"{self.name}: {f} is not sent to the identity")
        for g in C.morphisms:
            for f in C.morphisms:
                if C.target[f] != C.source[g]:
                    continue
                gf = self.arrow(C.compose(g, f))
                both = self.arrow(g).then(self.arrow(f)) if self.contravariant else self.arrow(f).then(self.arrow(g))
                if not gf.agrees_with(both):
                    raise TableError(f"{self.name}: not functorial at {g} o {f}")


def make_diagram(
    shape: FinCategory,
    values: Mapping[str, SimplicialSet],
    arrows: Mapping[str, SimplicialMap],
    contravariant: bool = False,
    name: str = "D",
) -> Diagram:
    """Fill in identities and composites of a diagram given on generating arrows"""
    C = shape
    out: Dict[str, SimplicialMap] = dict(arrows)
    for a in C.objects:
        out.setdefault(C.identities[a], SimplicialMap.identity(values[a]))
    changed = True
    while changed:
        changed = False
        for g in list(out):
            for f in list(out):
                if C.target[f] != C.source[g]:
                    continue
                gf = C.compose(g, f)
                if gf not in out:
                    out[gf] = out[g].then(out[f]) if contravariant else out[f].then(out[g])
                    changed = True
    D = Diagram(C, dict(values), out, contravariant, name)
    D.validate()
    return D


def constant_diagram(C: FinCategory, X: SimplicialSet, contravariant: bool = False) -> Diagram:
    ident = SimplicialMap.identity(X)
    return Diagram(C, {a: X for a in C.objects}, {f: ident for f in C.morphisms}, contravariant, name=f"const {X.name}")


def point_diagram(C: FinCategory, maxdim: int, contravariant: bool = False) -> Diagram:
    return constant_diagram(C, point(maxdim), contravariant)


def representable(C: FinCategory, b: str, maxdim: int) -> Diagram:
    """The contravariant diagram C(-, b), acting by g -> g o f"""
    values = {a: discrete_set(f"C(-,{b})({a})", C.hom(a, b), maxdim) for a in C.objects}
    arrows = {
        f: function_map(values[C.target[f]], values[C.source[f]], lambda g, f=f: C.compose(g, f))  # type: ignore[misc]
        for f in C.morphisms
    }
    return Diagram(C, values, arrows, contravariant=True, name=f"C(-,{b})")


def corepresentable(C: FinCategory, a: str, maxdim: int) -> Diagram:
    """The covariant diagram C(a, -), acting by g -> f o g"""
    values = {b: discrete_set(f"C({a},-)({b})", C.hom(a, b), maxdim) for b in C.objects}
    arrows = {
        f: function_map(values[C.source[f]], values[C.target[f]], lambda g, f=f: C.compose(f, g))  # type: ignore[misc]
        for f in C.morphisms
    }
    return Diagram(C, values, arrows, contravariant=False, name=f"C({a},-)")


# ---------------------------------------------------------------------------
# Two-sided bar construction


class BarModel:
    """Concrete simplices of the diagonal of B(X, C, Y)"""

    def __init__(self, X: Diagram, C: FinCategory, Y: Diagram):
        self.X, self.C, self.Y = X, C, Y

    def _top(self, fs: Tuple[str, ...], a: str) -> str:
        return self.C.target[fs[0]] if fs else a

    def simplices(self, n: int) -> Iterable[Hashable]:
        C, X, Y = self.C, self.X, self.Y
        if n == 0:
            for a in C.objects:
                ys = list(Y.at(a).simplices(0))
                for x in X.at(a).simplices(0):
                    for y in ys:
                        yield (x, (), a, y)
            return
        for fs in C.chains(n):
            b, a = C.target[fs[0]], C.source[fs[-1]]
            ys = list(Y.at(a).simplices(n))
            for x in X.at(b).simplices(n):
                for y in ys:
                    yield (x, fs, a, y)

    def face(self, n: int, i: int, s: Hashable) -> Hashable:
        x, fs, a, y = s  # type: ignore[misc]
        C = self.C
        Xb, Ya = self.X.at(self._top(fs, a)), self.Y.at(a)
        if i == 0:
            return (self.X.arrow(fs[0])(n - 1, Xb.face(n, 0, x)), fs[1:], a, Ya.face(n, 0, y))
        if i == n:
            fn = fs[-1]
            return (Xb.face(n, n, x), fs[:-1], C.target[fn], self.Y.arrow(fn)(n - 1, Ya.face(n, n, y)))
        merged = fs[: i - 1] + (C.compose(fs[i - 1], fs[i]),) + fs[i + 1 :]
        return (Xb.face(n, i, x), merged, a, Ya.face(n, i, y))

    def degeneracy(self, n: int, j: int, s: Hashable) -> Hashable:
        x, fs, a, y = s  # type: ignore[misc]
        C = self.C
        obj = a if n == 0 else (C.target[fs[0]] if j == 0 else C.source[fs[j - 1]])
        Xb, Ya = self.X.at(self._top(fs, a)), self.Y.at(a)
        return (Xb.degeneracy(n, j, x), fs[:j] + (C.identities[obj],) + fs[j:], a, Ya.degeneracy(n, j, y))


def _check_bar_input(X: Diagram, C: FinCategory, Y: Diagram) -> None:
    if X.shape is not C or Y.shape is not C:
        raise PreconditionError(f"bar construction over {C.name} got diagrams over another shape")
    if not X.contravariant or Y.contravariant:
        raise PreconditionError("bar construction needs a contravariant X and a covariant Y")


def two_sided_bar(X: Diagram, C: FinCategory, Y: Diagram, maxdim: int, name: Optional[str] = None) -> SimplicialSet:
    """
    B(X, C, Y), the diagonal of the bisimplicial set with n-simplices
    X(B) x C_n(A, B) x Y(A).

    Args:
        X: Contravariant diagram over C
        C: The indexing category
        Y: Covariant diagram over C
        maxdim: Truncation degree

    Returns:
        The materialized simplicial set; generators are BarSimplex tuples
    """
    _check_bar_input(X, C, Y)
    if maxdim < 0:
        raise RangeError(f"maxdim {maxdim} < 0")
    if maxdim > min(X.maxdim, Y.maxdim):
        raise RangeError(f"maxdim {maxdim} exceeds the diagram values")
    return materialize(BarModel(X, C, Y), maxdim, name or f"B({X.name},{C.name},{Y.name})")


def em(M: FinMonoid, maxdim: int) -> SimplicialSet:
    """EM = B(M, M, *), with M acting on itself from the right through d_0"""
    C = M.as_category()
    return two_sided_bar(representable(C, "*", maxdim), C, point_diagram(C, maxdim), maxdim, name=f"E{M.name}")


def bar_ccc(C: FinCategory, maxdim: int) -> Diagram:
    """
    B(C, C, C) as a diagram over C x C^op; its value at ``b,a`` is
    B(C(-,b), C, C(a,-)) and (g, h) acts by (g o f_0, f_1, ..., f_{n+1} o h).
    """
    P = C.product(C.opposite())
    values: Dict[str, SimplicialSet] = {}
    models: Dict[str, BarModel] = {}
    for b in C.objects:
        for a in C.objects:
            key = f"{b},{a}"
            models[key] = BarModel(representable(C, b, maxdim), C, corepresentable(C, a, maxdim))
            values[key] = materialize(models[key], maxdim, f"B(C,C,C)({key})")

    arrows: Dict[str, SimplicialMap] = {}
    for m in P.morphisms:
        g, h = m.split(",")
        src, tgt = P.source[m], P.target[m]

        def act(n: int, s: Hashable, g: str = g, h: str = h) -> Hashable:
            (xw, x), fs, a, (yw, y) = s  # type: ignore[misc]
            return ((xw, C.compose(g, x)), fs, a, (yw, C.compose(y, h)))

        arrows[m] = induced_map(values[src], values[tgt], models[tgt], act)
    return Diagram(P, values, arrows, contravariant=False, name=f"B({C.name},{C.name},{C.name})")


def delta(C: FinCategory, maxdim: int, bars: Optional[Diagram] = None) -> Dict[Tuple[str, str], SimplicialMap]:
    """
    delta: B(C,C,C)(b,a) -> C(a,b), (f_0, ..., f_{n+1}) -> f_0 o ... o f_{n+1}.

    Returns:
        Map per pair (b, a)
    """
    bars = bars or bar_ccc(C, maxdim)
    out = {}
    for b in C.objects:
        for a in C.objects:
            source = bars.at(f"{b},{a}")
            target = discrete_set(f"C({a},{b})", C.hom(a, b), maxdim)
            images: Dict[Hashable, Simplex] = {}
            for n in range(maxdim + 1):
                for s in source.gens(n):
                    (_, x), fs, _, (_, y) = s  # type: ignore[misc]
                    total = x
                    for f in fs + (y,):
                        total = C.compose(total, f)
                    images[s] = (base_word(n), total)
            out[(b, a)] = SimplicialMap(source, target, images)
    return out


def compose_tuple(C: FinCategory, fs: Iterable[str]) -> str:
    """f_0 o f_1 o ... for a composable tuple"""
    it = iter(fs)
    total = next(it)
    for f in it:
        total = C.compose(total, f)
    return total


# ---------------------------------------------------------------------------
# Tensor product over C and homotopy colimits


class TensorModel:
    """Degree-wise coequalizer of X(f) x id and id x D(f), by union-find"""

    def __init__(self, X: Diagram, D: Diagram, maxdim: int):
        C = X.shape
        self.X, self.D, self.C = X, D, C
        self.uf: List[UnionFind] = []
        for n in range(maxdim + 1):
            cells = [(a, x, d) for a in C.objects for x in X.at(a).simplices(n) for d in list(D.at(a).simplices(n))]
            uf = UnionFind(cells)
            for f in C.morphisms:
                if C.is_identity(f):
                    continue
                a, a2 = C.source[f], C.target[f]
                xf, df = X.arrow(f), D.arrow(f)
                ds = list(D.at(a).simplices(n))
                for x in X.at(a2).simplices(n):
                    x_pulled = xf(n, x)
                    for d in ds:
                        uf.union((a, x_pulled, d), (a2, x, df(n, d)))
            self.uf.append(uf)

    def simplices(self, n: int) -> Iterable[Hashable]:
        return self.uf[n].reps()

    def face(self, n: int, i: int, s: Hashable) -> Hashable:
        a, x, d = s  # type: ignore[misc]
        return self.uf[n - 1].find((a, self.X.at(a).face(n, i, x), self.D.at(a).face(n, i, d)))

    def degeneracy(self, n: int, j: int, s: Hashable) -> Hashable:
        a, x, d = s  # type: ignore[misc]
        return self.uf[n + 1].find((a, self.X.at(a).degeneracy(n, j, x), self.D.at(a).degeneracy(n, j, d)))


def tensor_over_C(X: Diagram, D: Diagram, maxdim: Optional[int] = None, name: Optional[str] = None) -> SimplicialSet:
    """
    X (x)_C D for a contravariant X and a covariant D over the same shape.
    Each class is labelled by its earliest member ``(a, x, d)``.
    """
    if X.shape is not D.shape:
        raise PreconditionError("tensor product of diagrams over different shapes")
    if not X.contravariant or D.contravariant:
        raise PreconditionError("tensor product needs a contravariant X and a covariant D")
    top = min(X.maxdim, D.maxdim) if maxdim is None else maxdim
    return materialize(TensorModel(X, D, top), top, name or f"{X.name}(x){D.name}")


def bar_star_cc(C: FinCategory, maxdim: int) -> Diagram:
    """B(*, C, C) as a contravariant diagram: a -> B(*, C, C(a,-))"""
    models = {a: BarModel(point_diagram(C, maxdim, contravariant=True), C, corepresentable(C, a, maxdim)) for a in C.objects}
    values = {a: materialize(models[a], maxdim, f"B(*,C,C)({a})") for a in C.objects}
    arrows = {}
    for h in C.morphisms:
        src, tgt = C.target[h], C.source[h]

        def act(n: int, s: Hashable, h: str = h) -> Hashable:
            x, fs, a, (yw, y) = s  # type: ignore[misc]
            return (x, fs, a, (yw, C.compose(y, h)))

        arrows[h] = induced_map(values[src], values[tgt], models[tgt], act)
    return Diagram(C, values, arrows, contravariant=True, name="B(*,C,C)")


def hocolim(D: Diagram, maxdim: Optional[int] = None) -> SimplicialSet:
    """hocolim D = B(*, C, C) (x)_C D"""
    if D.contravariant:
        raise PreconditionError("hocolim takes a covariant diagram")
    top = D.maxdim if maxdim is None else maxdim
    return tensor_over_C(bar_star_cc(D.shape, top), D, top, name=f"hocolim {D.name}")


def replacement(D: Diagram, maxdim: Optional[int] = None) -> Tuple[Diagram, Dict[str, SimplicialMap]]:
    """
    The bar replacement R(D)(a) = B(C(-,a), C, D) and its objectwise
    collapse (x, f_1, ..., f_n, d) -> D(x o f_1 o ... o f_n)(d).
    """
    C = D.shape
    top = D.maxdim if maxdim is None else maxdim
    models = {a: BarModel(representable(C, a, top), C, D) for a in C.objects}
    values = {a: materialize(models[a], top, f"R{D.name}({a})") for a in C.objects}
    arrows = {}
    for g in C.morphisms:
        src, tgt = C.source[g], C.target[g]

        def act(n: int, s: Hashable, g: str = g) -> Hashable:
            (xw, x), fs, a, y = s  # type: ignore[misc]
            return ((xw, C.compose(g, x)), fs, a, y)

        arrows[g] = induced_map(values[src], values[tgt], models[tgt], act)
    RD = Diagram(C, values, arrows, contravariant=False, name=f"R{D.name}")

    collapse = {}
    for a in C.objects:
        images: Dict[Hashable, Simplex] = {}
        for n in range(top + 1):
            for s in values[a].gens(n):
                (_, x), fs, _, y = s  # type: ignore[misc]
                images[s] = D.arrow(compose_tuple(C, (x,) + fs))(n, y)
        collapse[a] = SimplicialMap(values[a], D.at(a), images)
    return RD, collapse


def span_diagram(left: SimplicialSet, middle: SimplicialSet, right: SimplicialSet, f: SimplicialMap, g: SimplicialMap) -> Diagram:
    """left <-f- middle -g-> right over the span category"""
    C = span_category()
    return make_diagram(C, {"a": left, "m": middle, "b": right}, {"f": f, "g": g}, name=f"{left.name}<-{middle.name}->{right.name}")


def basepoint_inclusion(X: SimplicialSet) -> SimplicialMap:
    """point -> X at the basepoint"""
    if X.basepoint is None:
        raise PreconditionError(f"{X.name} has no basepoint")
    return SimplicialMap(point(X.maxdim), X, {"*": ((), X.basepoint)})


def wedge_span(X: SimplicialSet, Y: SimplicialSet) -> Diagram:
    """X <- * -> Y at the basepoints"""
    if X.basepoint is None or Y.basepoint is None:
        raise PreconditionError("wedge span needs based simplicial sets")
    mid = point(min(X.maxdim, Y.maxdim))
    f = SimplicialMap(mid, X, {"*": ((), X.basepoint)})
    g = SimplicialMap(mid, Y, {"*": ((), Y.basepoint)})
    return span_diagram(X, mid, Y, f, g)
