import random
from fractions import Fraction

import pytest

from homotopy_monoids.core import Mode, PreconditionError, RangeError
from homotopy_monoids.moorezeta import (
    EMPoint,
    MoorePath,
    PEMPath,
    QVector,
    Segment,
    bm_base,
    constant_path,
    em_act,
    em_project,
    em_vertex,
    ev,
    ev_degeneracy_coherence,
    ev_face_coherence,
    ev_time,
    face_datum,
    moore_add,
    moore_sum,
    pem_oplus,
    pem_unit,
    random_loop,
    same_trajectory,
    sample_times,
    zeta,
    zeta_coords,
    zeta_loop,
)
from homotopy_monoids.wconstruct import epsilon, iota, make_wtuple, random_wtuple, wmul

HALF = Fraction(1, 2)


def vec(*xs) -> QVector:
    return QVector(tuple(Fraction(x) for x in xs))


def there_and_back() -> MoorePath:
    """0 -> 1 in time 1, back to 0 in time 1/2"""
    return MoorePath(vec(0), (Segment(Fraction(1), vec(0), vec(1)), Segment(HALF, vec(1), vec(0))))


def coords(rng: random.Random, n: int, zero: int = -1):
    weights = [0 if r == zero else rng.randint(1, 4) for r in range(n + 1)]
    return [Fraction(w, sum(weights)) for w in weights]


def test_moore_path_evaluation():
    """Linear on each segment and constant after the end"""
    p = there_and_back()
    assert p.length == Fraction(3, 2)
    assert p(HALF) == vec(HALF)
    assert p(Fraction(5, 4)) == vec(HALF)
    assert p(Fraction(10)) == vec(0)
    assert p.is_loop()
    assert [t for t, _ in p.breakpoints()] == [0, 1, Fraction(3, 2)]
    with pytest.raises(RangeError):
        p(Fraction(-1))


def test_moore_paths_are_checked():
    with pytest.raises(RangeError):
        Segment(Fraction(0), vec(0), vec(1))
    with pytest.raises(PreconditionError):
        MoorePath(vec(0), (Segment(Fraction(1), vec(1), vec(2)),))


def test_moore_addition_is_strictly_associative_and_unital():
    """Lengths add and the constant path of length 0 is a two-sided unit"""
    rng = random.Random(8)
    for _ in range(100):
        p, q, r = random_loop(rng), random_loop(rng), random_loop(rng)
        lhs, rhs = moore_add(moore_add(p, q), r), moore_add(p, moore_add(q, r))
        assert lhs.breakpoints() == rhs.breakpoints()
        assert lhs.length == p.length + q.length + r.length
        c = constant_path(p.start)
        assert moore_add(c, p) == p == moore_add(p, c)
    with pytest.raises(PreconditionError):
        moore_add(constant_path(vec(1)), there_and_back())


def test_moore_sum_and_trajectories():
    p = there_and_back()
    assert moore_sum([], vec(0)) == constant_path(vec(0))
    assert moore_sum([p, p]).length == 3
    assert same_trajectory(moore_sum([p, p]), moore_add(p, p), sample_times(Fraction(3), 12))
    assert not same_trajectory(p, moore_add(p, p))
    with pytest.raises(PreconditionError):
        moore_sum([])


def test_same_trajectory_checks_corners_and_midpoints(monkeypatch):
    asked = []
    evaluate = MoorePath.__call__

    def recording(self, t):
        asked.append(t)
        return evaluate(self, t)

    monkeypatch.setattr(MoorePath, "__call__", recording)
    p = there_and_back()
    assert same_trajectory(p, p)
    assert sorted(set(asked)) == [0, HALF, 1, Fraction(5, 4), Fraction(3, 2)]


def test_ev_reads_the_summed_loop():
    """The vertex t_i = 1 sits at the end of w_i"""
    p = there_and_back()
    q = MoorePath(vec(0), (Segment(HALF, vec(0), vec(2)), Segment(HALF, vec(2), vec(0))))
    loops = [p, q]
    assert ev_time(loops, [0, 1, 0]) == Fraction(3, 2)
    assert ev_time(loops, [0, 0, 1]) == Fraction(5, 2)
    assert ev(loops, [1, 0, 0]) == vec(0)
    assert ev(loops, [0, 0, 1]) == vec(0)
    assert ev(loops, [HALF, HALF, 0]) == vec(Fraction(3, 4))
    assert ev(loops, [HALF, 0, HALF]) == p(Fraction(5, 4)) == vec(HALF)
    assert ev([], [Fraction(1)], vec(0)) == vec(0)
    with pytest.raises(RangeError):
        ev(loops, [HALF, HALF])
    with pytest.raises(RangeError):
        ev(loops, [1, 1, -1])


def test_ev_respects_faces_and_degeneracies():
    """Random simplices of loops: both coherence laws hold exactly"""
    rng = random.Random(21)
    for _ in range(200):
        n = rng.randint(1, 3)
        loops = [random_loop(rng) for _ in range(n)]
        i = rng.randint(0, n)
        assert ev_face_coherence(loops, coords(rng, n, zero=i), i)
        assert ev_degeneracy_coherence(loops, coords(rng, n), i, Fraction(rng.randint(0, 4), 4))


def test_face_datum_merges_inner_loops():
    p = there_and_back()
    loops, t = face_datum([p, p], [HALF, 0, HALF], 1)
    assert len(loops) == 1 and loops[0].length == 3
    assert t == [HALF, HALF]
    with pytest.raises(PreconditionError):
        face_datum([p, p], [HALF, HALF, 0], 1)


def test_em_points_are_canonicalized(z2):
    """Zero coordinates are dropped through faces, unit entries collapse"""
    e, a = z2.index("e"), z2.index("a")
    p = EMPoint((a, a), (HALF, HALF), z2)
    assert p.canonical() == p
    assert EMPoint((a, e), (HALF, HALF), z2).canonical() == em_vertex(z2, a)
    assert EMPoint((a, a), (Fraction(0), Fraction(1)), z2).vertex_label() == e
    assert EMPoint((a, a), (Fraction(1), Fraction(0)), z2).vertex_label() == a
    assert not p.is_vertex()
    with pytest.raises(RangeError):
        EMPoint((a, a), (HALF, HALF, Fraction(0)), z2)
    with pytest.raises(RangeError):
        EMPoint((a, a), (HALF, Fraction(1)), z2)


def test_action_and_projection(z2):
    e, a = z2.index("e"), z2.index("a")
    assert em_act(a, em_vertex(z2, e)) == em_vertex(z2, a)
    assert em_project(em_vertex(z2, a)) == bm_base(z2)
    assert em_project(EMPoint((e, a), (HALF, HALF), z2)) == EMPoint((a,), (HALF, HALF), z2, bm=True)
    with pytest.raises(PreconditionError):
        em_act(a, bm_base(z2))


def test_path_monoid_unit(z2):
    u = pem_unit(z2)
    assert u.endpoint() == z2.unit
    assert u.length == 0
    w = zeta(iota(z2, 1))
    assert pem_oplus(u, w).path == w.path
    assert pem_oplus(w, u).path == w.path
    with pytest.raises(PreconditionError):
        PEMPath(constant_path(em_vertex(z2, 1)))


def test_zeta_coordinates():
    assert zeta_coords([HALF], 0, HALF) == (HALF, HALF, Fraction(0))
    assert zeta_coords([HALF], 1, Fraction(0)) == (HALF, HALF, Fraction(0))
    assert zeta_coords([HALF], 1, Fraction(1)) == (Fraction(0), Fraction(0), Fraction(1))


def test_zeta_on_a_single_letter(z2):
    """(a) goes from the vertex e to the vertex a in time 1"""
    w = zeta(iota(z2, 1))
    assert w.length == 1
    assert w.endpoint() == 1
    assert w.path(HALF) == EMPoint((0, 1), (HALF, HALF), z2)
    loop = zeta_loop(iota(z2, 1))
    assert loop.start == bm_base(z2) and loop.is_loop()


def test_zeta_lengths_and_endpoints(corpus):
    """Length t_1 + ... + t_n + 1, ending at the product of the letters"""
    rng = random.Random(13)
    for name in ("z2", "z3", "idem", "max3"):
        M = corpus.monoid(name)
        for _ in range(50):
            a = random_wtuple(M, rng, 3)
            w = zeta(a)
            assert w.endpoint() == epsilon(a)
            assert w.length == sum(a.params, Fraction(0)) + 1


def test_zeta_is_multiplicative(corpus):
    """zeta(ab) = zeta(a) + eps(a) zeta(b), and the projected loops add"""
    rng = random.Random(17)
    for name in ("z2", "idem"):
        M = corpus.monoid(name)
        for _ in range(30):
            a, b = random_wtuple(M, rng, 3), random_wtuple(M, rng, 3)
            lhs, rhs = zeta(wmul(a, b)), pem_oplus(zeta(a), zeta(b))
            assert same_trajectory(lhs.path, rhs.path, sample_times(lhs.length, 24))
            loop = zeta_loop(wmul(a, b))
            assert same_trajectory(loop, moore_add(zeta_loop(a), zeta_loop(b)), sample_times(loop.length, 24))


def test_zeta_rejects_w_tuples(z2, free2):
    with pytest.raises(PreconditionError):
        zeta(make_wtuple(z2, ["a"], [], Mode.MONOID))
    with pytest.raises(PreconditionError):
        zeta(iota(free2, 0))
