"""
Moore paths with exact rational lengths, points of |EM| and |BM|, the
monoid of Moore paths in EM ending in M, the evaluation map on families
of Moore loops and the explicit map zeta out of W-bar M.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Generic, Iterable, List, Optional, Protocol, Sequence, Tuple, TypeVar

from .core import Mode, PreconditionError, RangeError
from .simplicial import FinMonoid
from .wconstruct import ONE, ZERO, WTuple


class PathValue(Protocol):
    def canonical(self) -> "PathValue": ...

    def lerp(self, other: "PathValue", s: Fraction) -> "PathValue": ...


V = TypeVar("V", bound=PathValue)


@dataclass(frozen=True)
class QVector:
    """A point of Q^d"""

    coords: Tuple[Fraction, ...]

    def canonical(self) -> "QVector":
        return self

    def lerp(self, other: "QVector", s: Fraction) -> "QVector":  # type: ignore[override]
        return QVector(tuple(a + s * (b - a) for a, b in zip(self.coords, other.coords)))

    @classmethod
    def zero(cls, d: int) -> "QVector":
        return cls(tuple(ZERO for _ in range(d)))


@dataclass(frozen=True)
class Segment(Generic[V]):
    """A linear piece of a path; start and end share an ambient simplex"""

    duration: Fraction
    start: V
    end: V

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise RangeError("segments have positive duration")

    def at(self, s: Fraction) -> V:
        return self.start.lerp(self.end, s / self.duration).canonical()  # type: ignore[return-value]

    def map(self, fn) -> "Segment":  # type: ignore[no-untyped-def]
        return Segment(self.duration, fn(self.start), fn(self.end))


@dataclass(frozen=True)
class MoorePath(Generic[V]):
    """
    A piecewise-linear path w: [0, r] -> V of length r = sum of segment
    durations; w(t) = w(r) for t >= r.
    """

    start: V
    segments: Tuple[Segment[V], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", self.start.canonical())
        here = self.start
        for seg in self.segments:
            if seg.start.canonical() != here:
                raise PreconditionError("path segments do not join up")
            here = seg.end.canonical()  # type: ignore[assignment]

    @property
    def length(self) -> Fraction:
        return sum((seg.duration for seg in self.segments), ZERO)

    @property
    def end(self) -> V:
        return self.segments[-1].end.canonical() if self.segments else self.start  # type: ignore[return-value]

    def __call__(self, t: Fraction) -> V:
        if t < 0:
            raise RangeError(f"time {t} < 0")
        elapsed = ZERO
        for seg in self.segments:
            if t <= elapsed + seg.duration:
                return seg.at(t - elapsed)
            elapsed += seg.duration
        return self.end

    def breakpoints(self) -> List[Tuple[Fraction, V]]:
        out = [(ZERO, self.start)]
        elapsed = ZERO
        for seg in self.segments:
            elapsed += seg.duration
            out.append((elapsed, seg.end.canonical()))  # type: ignore[arg-type]
        return out

    def is_loop(self) -> bool:
        return self.end == self.start

    def map(self, fn) -> "MoorePath":  # type: ignore[no-untyped-def]
        return MoorePath(fn(self.start), tuple(seg.map(fn) for seg in self.segments))


def constant_path(value: V) -> MoorePath[V]:
    """(c, 0)"""
    return MoorePath(value)


def moore_add(p: MoorePath[V], q: MoorePath[V]) -> MoorePath[V]:
    """Path addition; lengths add"""
    if p.end != q.start:
        raise PreconditionError(f"cannot add paths: {p.end} != {q.start}")
    return MoorePath(p.start, p.segments + q.segments)


def moore_sum(paths: Sequence[MoorePath[V]], base: Optional[V] = None) -> MoorePath[V]:
    if not paths:
        if base is None:
            raise PreconditionError("the empty sum needs a base value")
        return constant_path(base)
    out = paths[0]
    for p in paths[1:]:
        out = moore_add(out, p)
    return out


def same_trajectory(p: MoorePath, q: MoorePath, times: Iterable[Fraction] = ()) -> bool:
    """
    Equal lengths, and equal values at both paths' breakpoints, at the
    midpoints between consecutive breakpoints and at the given times.
    """
    if p.length != q.length:
        return False
    corners = sorted({t for t, _ in p.breakpoints()} | {t for t, _ in q.breakpoints()})
    middles = {(s + t) / 2 for s, t in zip(corners, corners[1:])}
    return all(p(t) == q(t) for t in sorted(set(corners) | middles | set(times)))


def sample_times(length: Fraction, count: int = 100) -> List[Fraction]:
    return [length * Fraction(k, count) for k in range(count + 1)]


def random_loop(rng: random.Random, d: int = 2, pieces: int = 3, denominator: int = 6) -> MoorePath[QVector]:
    """A random PL loop in Q^d based at the origin"""

    def rat() -> Fraction:
        return Fraction(rng.randint(-denominator, denominator), denominator)

    origin = QVector.zero(d)
    k = rng.randint(0, pieces)
    if k == 0:
        return constant_path(origin)
    points = [origin] + [QVector(tuple(rat() for _ in range(d))) for _ in range(k - 1)] + [origin]
    segs = tuple(
        Segment(Fraction(rng.randint(1, denominator), denominator), points[i], points[i + 1]) for i in range(k)
    )
    return MoorePath(origin, segs)


# ---------------------------------------------------------------------------
# Evaluation map


def _check_coords(t: Sequence[Fraction], n: int) -> None:
    if len(t) != n + 1:
        raise RangeError(f"{n} loops need {n + 1} barycentric coordinates, got {len(t)}")
    if any(x < 0 for x in t) or sum(t) != 1:
        raise RangeError("barycentric coordinates must be >= 0 and sum to 1")


def ev_time(loops: Sequence[MoorePath], t: Sequence[Fraction]) -> Fraction:
    """sum_{i >= 1} t_i (l(w_1) + ... + l(w_i))"""
    total, partial = ZERO, ZERO
    for i, w in enumerate(loops, start=1):
        partial += w.length
        total += t[i] * partial
    return total


def ev(loops: Sequence[MoorePath[V]], t: Sequence[Fraction], base: Optional[V] = None) -> V:
    """
    The evaluation map (w_1, ..., w_n; t_0, ..., t_n) ->
    (w_1 + ... + w_n)(sum_i t_i sum_{j <= i} l(w_j)).

    Args:
        loops: Based Moore loops w_1, ..., w_n
        t: Barycentric coordinates t_0, ..., t_n
        base: Basepoint, required when there are no loops

    Returns:
        The canonical value
    """
    _check_coords(t, len(loops))
    path = moore_sum(loops, base if base is not None else (loops[0].start if loops else None))
    return path(ev_time(loops, t))


def face_datum(
    loops: Sequence[MoorePath[V]], t: Sequence[Fraction], i: int
) -> Tuple[List[MoorePath[V]], List[Fraction]]:
    """The i-th face of a simplex of loops with t_i = 0"""
    n = len(loops)
    if not 0 <= i <= n:
        raise RangeError(f"face index {i} outside 0..{n}")
    if t[i] != 0:
        raise PreconditionError(f"t_{i} = {t[i]} is not zero")
    coords = list(t[:i]) + list(t[i + 1 :])
    if i == 0:
        return list(loops[1:]), coords
    if i == n:
        return list(loops[:-1]), coords
    merged = moore_add(loops[i - 1], loops[i])
    return list(loops[: i - 1]) + [merged] + list(loops[i + 1 :]), coords


def ev_face_coherence(loops: Sequence[MoorePath[V]], t: Sequence[Fraction], i: int) -> bool:
    """ev agrees with ev on the i-th face datum"""
    _check_coords(t, len(loops))
    base = loops[0].start if loops else None
    if base is None:
        raise PreconditionError("face coherence needs at least one loop")
    face_loops, face_t = face_datum(loops, t, i)
    return ev(loops, t) == ev(face_loops, face_t, base)


def ev_degeneracy_coherence(loops: Sequence[MoorePath[V]], t: Sequence[Fraction], i: int, split: Fraction) -> bool:
    """
    ev agrees after inserting the constant loop at position i and splitting
    t_i into split * t_i and (1 - split) * t_i.
    """
    _check_coords(t, len(loops))
    if not loops:
        raise PreconditionError("degeneracy coherence needs at least one loop")
    if not 0 <= i <= len(loops) or not 0 <= split <= 1:
        raise RangeError("degeneracy index or split out of range")
    base = loops[0].start
    new_loops = list(loops[:i]) + [constant_path(base)] + list(loops[i:])
    new_t = list(t[:i]) + [split * t[i], (1 - split) * t[i]] + list(t[i + 1 :])
    return ev(loops, t) == ev(new_loops, new_t, base)


# ---------------------------------------------------------------------------
# Points of |EM| and |BM|


@dataclass(frozen=True)
class EMPoint:
    """
    A point of |EM| (simplex (x_0; x_1, ..., x_n)) or, in BM mode, of |BM|
    (simplex (x_1, ..., x_n)), with barycentric coordinates u_0, ..., u_n.
    """

    simplex: Tuple[int, ...]
    coords: Tuple[Fraction, ...]
    monoid: FinMonoid = field(compare=False, repr=False)
    bm: bool = False

    def __post_init__(self) -> None:
        n = len(self.simplex) if self.bm else len(self.simplex) - 1
        if n < 0 or len(self.coords) != n + 1:
            raise RangeError("an n-simplex needs n + 1 barycentric coordinates")
        if any(u < 0 for u in self.coords) or sum(self.coords) != 1:
            raise RangeError("barycentric coordinates must be >= 0 and sum to 1")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def _face(self, r: int) -> "EMPoint":
        """Drop u_r = 0 through the face d_r"""
        M, s, n = self.monoid, list(self.simplex), self.dim
        if self.bm:
            if r == 0:
                del s[0]
            elif r == n:
                del s[-1]
            else:
                s[r - 1 : r + 1] = [M.mul(s[r - 1], s[r])]
        elif r == n:
            del s[-1]
        else:
            s[r : r + 2] = [M.mul(s[r], s[r + 1])]
        coords = self.coords[:r] + self.coords[r + 1 :]
        return EMPoint(tuple(s), coords, M, self.bm)

    def _collapse(self, j: int) -> "EMPoint":
        """x_j = e for j >= 1: drop x_j and merge u_{j-1} + u_j"""
        s = list(self.simplex)
        del s[j - 1 if self.bm else j]
        u = self.coords
        coords = u[: j - 1] + (u[j - 1] + u[j],) + u[j + 1 :]
        return EMPoint(tuple(s), coords, self.monoid, self.bm)

    def canonical(self) -> "EMPoint":
        p = self
        while True:
            zero = next((r for r, u in enumerate(p.coords) if u == 0), None)
            if zero is not None:
                p = p._face(zero)
                continue
            offset = 1 if p.bm else 0
            unit = next((j for j in range(1, p.dim + 1) if p.simplex[j - offset] == p.monoid.unit), None)
            if unit is not None:
                p = p._collapse(unit)
                continue
            return p

    def lerp(self, other: "EMPoint", s: Fraction) -> "EMPoint":  # type: ignore[override]
        if other.simplex != self.simplex or other.bm != self.bm:
            raise PreconditionError("interpolation between points of different simplices")
        coords = tuple(a + s * (b - a) for a, b in zip(self.coords, other.coords))
        return EMPoint(self.simplex, coords, self.monoid, self.bm)

    def is_vertex(self) -> bool:
        return self.canonical().dim == 0

    def vertex_label(self) -> int:
        """The element x_0 of a canonical EM vertex"""
        p = self.canonical()
        if p.dim != 0 or p.bm:
            raise PreconditionError("not a vertex of EM")
        return p.simplex[0]


def em_vertex(M: FinMonoid, x: int) -> EMPoint:
    return EMPoint((x,), (ONE,), M)


def bm_base(M: FinMonoid) -> EMPoint:
    return EMPoint((), (ONE,), M, bm=True)


def em_act(z: int, p: EMPoint) -> EMPoint:
    """z (x_0; x_1, ..., x_n) = (z x_0; x_1, ..., x_n)"""
    if p.bm:
        raise PreconditionError("M acts on EM, not on BM")
    return EMPoint((p.monoid.mul(z, p.simplex[0]),) + p.simplex[1:], p.coords, p.monoid)


def em_project_point(p: EMPoint) -> EMPoint:
    if p.bm:
        return p.canonical()
    return EMPoint(p.simplex[1:], p.coords, p.monoid, bm=True).canonical()


@dataclass(frozen=True)
class PEMPath:
    """A Moore path in |EM| from the vertex (e) to a vertex of M"""

    path: MoorePath[EMPoint]

    def __post_init__(self) -> None:
        M = self.path.start.monoid
        if self.path.start != em_vertex(M, M.unit):
            raise PreconditionError("P(EM, M) paths start at the vertex (e)")
        if not self.path.end.is_vertex() or self.path.end.bm:
            raise PreconditionError("P(EM, M) paths end at a vertex of EM")

    @property
    def monoid(self) -> FinMonoid:
        return self.path.start.monoid

    def endpoint(self) -> int:
        """pi(M): the element the path ends at"""
        return self.path.end.vertex_label()

    @property
    def length(self) -> Fraction:
        return self.path.length


def pem_unit(M: FinMonoid) -> PEMPath:
    return PEMPath(constant_path(em_vertex(M, M.unit)))


def act_path(z: int, path: MoorePath[EMPoint]) -> MoorePath[EMPoint]:
    return path.map(lambda p: em_act(z, p))


def pem_oplus(w1: PEMPath, w2: PEMPath) -> PEMPath:
    """w_1 + x w_2 where x is the endpoint of w_1"""
    return PEMPath(moore_add(w1.path, act_path(w1.endpoint(), w2.path)))


def em_project(p: "EMPoint | PEMPath") -> "EMPoint | MoorePath[EMPoint]":
    """Factor out the M-action: EM -> BM on points, P(EM, M) -> loops in |BM| on paths"""
    if isinstance(p, EMPoint):
        return em_project_point(p)
    return p.path.map(lambda q: EMPoint(q.simplex[1:], q.coords, q.monoid, bm=True))


# ---------------------------------------------------------------------------
# zeta


def zeta_coords(params: Sequence[Fraction], k: int, s: Fraction) -> Tuple[Fraction, ...]:
    """
    Barycentric coordinates of v_k(s) in the simplex (e, x_0, ..., x_n):
    u_r = (1 - s) t_r prod_{r < j <= k} (1 - t_j) for r <= k, u_{k+1} = s,
    with t_0 = 1.
    """
    n = len(params)
    t = (ONE,) + tuple(params)
    u = []
    for r in range(k + 1):
        prod = ONE
        for j in range(r + 1, k + 1):
            prod *= 1 - t[j]
        u.append((1 - s) * t[r] * prod)
    u.append(s)
    u.extend(ZERO for _ in range(n - k))
    return tuple(u)


def zeta(a: WTuple) -> PEMPath:
    """
    zeta(x_0, t_1, ..., t_n, x_n) = v_0 + ... + v_n, a path of length
    t_1 + ... + t_n + 1 inside the simplex (e, x_0, ..., x_n) of EM.
    Segment v_k runs for time t_{k+1} (t_{n+1} = 1).
    """
    if a.mode is not Mode.SEMIGROUP:
        raise PreconditionError("zeta takes a W-bar tuple")
    M = a.ground
    if not isinstance(M, FinMonoid):
        raise PreconditionError(f"{M.name} has no unit")
    ambient = (M.unit,) + a.entries
    durations = tuple(a.params) + (ONE,)
    segs = []
    for k, dur in enumerate(durations):
        start = EMPoint(ambient, zeta_coords(a.params, k, ZERO), M)
        end = EMPoint(ambient, zeta_coords(a.params, k, dur), M)
        segs.append(Segment(dur, start, end))
    return PEMPath(MoorePath(em_vertex(M, M.unit), tuple(segs)))


def zeta_loop(a: WTuple) -> MoorePath[EMPoint]:
    """The explicit loop in |BM| attached to a point of W-bar M"""
    return em_project(zeta(a))  # type: ignore[return-value]
