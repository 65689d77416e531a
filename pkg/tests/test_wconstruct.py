import random
from fractions import Fraction

import pytest

from homotopy_monoids.core import Mode, PreconditionError, RangeError, TableError
from homotopy_monoids.exactalg import homology_all
from homotopy_monoids.simplicial import adjoin_unit, counit_plus
from homotopy_monoids.wconstruct import (
    WhiskerElem,
    block_cells,
    eps_prime,
    epsilon,
    factorize,
    iota,
    is_indecomposable,
    make_wtuple,
    map_w,
    normalize,
    plus_comparison,
    plus_comparison_inverse,
    random_raw,
    random_wtuple,
    shrink,
    unit,
    wbar_complex,
    wbar_components,
    whisker,
    whisker_mul,
    whisker_q,
    whisker_section,
    whisker_unit,
    wmul,
)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


def test_zero_parameter_merges_neighbours(free2):
    """(x 0 y) is the one-letter tuple (xy)"""
    a = make_wtuple(free2, ["x", "y"], [0])
    assert a.names() == ["xy"]
    assert a.params == ()
    assert make_wtuple(free2, ["x", "y"], [HALF]).names() == ["x", "y"]


def test_units_are_deleted_in_monoid_mode(z2):
    """Inner units fuse their parameters with max, outer ones drop theirs"""
    a = make_wtuple(z2, ["a", "e", "a"], [HALF, THIRD], Mode.MONOID)
    assert (a.names(), a.params) == (["a", "a"], (HALF,))
    assert make_wtuple(z2, ["e", "a"], [HALF], Mode.MONOID).names() == ["a"]
    assert make_wtuple(z2, ["a", "e"], [HALF], Mode.MONOID).names() == ["a"]
    assert make_wtuple(z2, ["e"], [], Mode.MONOID).is_unit()
    assert make_wtuple(z2, ["e", "a"], [HALF]).names() == ["e", "a"]


def test_normal_form_does_not_depend_on_rewrite_order(z2, free2):
    """Any order of applicable rewrites reaches the same tuple"""
    rng = random.Random(3)
    for ground, mode in ((free2, Mode.SEMIGROUP), (z2, Mode.MONOID), (z2, Mode.SEMIGROUP)):
        for _ in range(200):
            xs, ts = random_raw(ground, rng, max_letters=5)
            expected = normalize(ground, xs, ts, mode)
            assert normalize(ground, xs, ts, mode, rng=random.Random(rng.random())) == expected


def test_raw_tuples_are_checked(z2, free2):
    with pytest.raises(RangeError):
        normalize(free2, [], [])
    with pytest.raises(RangeError):
        normalize(free2, [0, 1], [Fraction(2)])
    with pytest.raises(RangeError):
        normalize(free2, [0, 1], [])
    with pytest.raises(PreconditionError):
        normalize(free2, [0], [], Mode.MONOID)


def test_multiplication_inserts_a_wall(z2, free2):
    """(x)(y) = (x 1 y); W has a two-sided unit"""
    x, y = iota(free2, 0), iota(free2, 1)
    xy = wmul(x, y)
    assert (xy.names(), xy.params) == (["x", "y"], (Fraction(1),))
    a = iota(z2, 1, Mode.MONOID)
    assert wmul(unit(z2), a) == a
    assert wmul(a, unit(z2)) == a
    with pytest.raises(PreconditionError):
        wmul(iota(z2, 1), a)


def test_multiplication_is_associative(z2, free2):
    rng = random.Random(5)
    for ground, mode in ((free2, Mode.SEMIGROUP), (z2, Mode.MONOID)):
        for _ in range(100):
            a, b, c = (random_wtuple(ground, rng, 3, mode) for _ in range(3))
            assert wmul(wmul(a, b), c) == wmul(a, wmul(b, c))


def test_epsilon_is_a_homomorphism_left_inverse_to_iota(z2, free2):
    rng = random.Random(9)
    for ground in (free2, z2):
        for x in range(len(ground)):
            assert epsilon(iota(ground, x)) == x
        for _ in range(100):
            a, b = random_wtuple(ground, rng), random_wtuple(ground, rng)
            assert epsilon(wmul(a, b)) == ground.mul(epsilon(a), epsilon(b))
    assert epsilon(make_wtuple(z2, ["a", "a"], [HALF], Mode.MONOID)) == z2.index("e")


def test_shrink_contracts_onto_the_letters(free2):
    """h_0 is iota o epsilon and h_1 is the identity"""
    rng = random.Random(1)
    for _ in range(100):
        a = random_wtuple(free2, rng)
        assert shrink(a, Fraction(0)) == iota(free2, epsilon(a))
        assert shrink(a, Fraction(1)) == a
        assert epsilon(shrink(a, THIRD)) == epsilon(a)
    a = make_wtuple(free2, ["x", "y"], [HALF])
    assert shrink(a, Fraction(0)).names() == ["xy"]
    assert shrink(a, HALF).params == (Fraction(1, 4),)
    with pytest.raises(RangeError):
        shrink(a, Fraction(3, 2))


def test_eps_prime_imposes_unit_relations(z2, free2):
    a = make_wtuple(z2, ["e", "a"], [HALF])
    b = eps_prime(a)
    assert b.mode is Mode.MONOID
    assert b.names() == ["a"]
    assert eps_prime(iota(z2, z2.unit)).is_unit()
    with pytest.raises(PreconditionError):
        eps_prime(iota(free2, 0))
    with pytest.raises(PreconditionError):
        eps_prime(b)


def test_map_w_applies_homomorphisms_entrywise(z2):
    """The counit M_+ -> M turns the old unit into a real unit"""
    plus = adjoin_unit(z2)
    a = make_wtuple(plus, ["a", "e"], [HALF], Mode.MONOID)
    assert a.names() == ["a", "e"]
    image = map_w(counit_plus(z2), a)
    assert (image.ground, image.names()) == (z2, ["a"])
    with pytest.raises(PreconditionError):
        map_w(counit_plus(z2), iota(z2, 1, Mode.MONOID))


def test_factorization_into_indecomposables(free2):
    """Walls split a tuple and multiplying the pieces gives it back"""
    a = make_wtuple(free2, ["x", "y", "x"], [Fraction(1), HALF])
    parts = factorize(a)
    assert [p.names() for p in parts] == [["x"], ["y", "x"]]
    assert all(is_indecomposable(p) for p in parts)
    assert not is_indecomposable(a)
    assert wmul(parts[0], parts[1]) == a
    rng = random.Random(2)
    for _ in range(100):
        b = random_wtuple(free2, rng)
        pieces = factorize(b)
        product = pieces[0]
        for p in pieces[1:]:
            product = wmul(product, p)
        assert product == b


def test_plus_comparison_is_a_bijection(corpus):
    """(W-bar G)_+ and W(G_+) agree, the adjoined unit going to the empty tuple"""
    G = corpus.semigroup("lz")
    Gp = adjoin_unit(G)
    assert plus_comparison(G, None, Gp).is_unit()
    assert plus_comparison_inverse(G, unit(Gp)) is None
    rng = random.Random(4)
    for _ in range(50):
        a = random_wtuple(G, rng)
        b = plus_comparison(G, a, Gp)
        assert b.names() == a.names()
        assert plus_comparison_inverse(G, b) == a
    x, y = iota(G, 0), iota(G, 1)
    assert plus_comparison(G, wmul(x, y), Gp) == wmul(plus_comparison(G, x, Gp), plus_comparison(G, y, Gp))


def test_whiskered_monoid(z2):
    """The whisker [0, 1) glued to M at its unit, with 0 the new unit"""
    u, v = whisker(z2, THIRD), whisker(z2, HALF)
    assert whisker_mul(z2, u, v).s == HALF
    a = whisker_section(z2, 1)
    assert whisker_mul(z2, u, a) == a
    assert whisker_mul(z2, whisker_unit(), u) == u
    assert whisker_mul(z2, a, whisker_unit()) == a
    assert whisker(z2, Fraction(1)) == whisker_section(z2, z2.unit)
    assert whisker_q(z2, u) == z2.unit
    assert whisker_q(z2, a) == 1
    with pytest.raises(TableError):
        WhiskerElem()
    with pytest.raises(RangeError):
        WhiskerElem(s=Fraction(1))


def test_block_cells_by_dimension(z2):
    """Two letters give six vertices and four edges"""
    cells = block_cells(z2, 2)
    assert [len(cs) for cs in cells] == [6, 4]
    assert cells[1][0].label(z2) == "e e"
    with pytest.raises(RangeError):
        block_cells(z2, 0)


@pytest.mark.parametrize("name", ["z2", "lz", "null2"])
@pytest.mark.parametrize("letters", [1, 2, 3])
def test_wbar_is_homotopy_discrete(corpus, name, letters):
    """Each letter-bounded piece is a disjoint union of contractible pieces, one per element"""
    G = corpus.semigroup(name)
    H = homology_all(wbar_complex(G, letters))
    assert len(H) == letters
    assert str(H[0]) == f"Z^{len(G)}"
    assert all(h.is_zero() for h in H[1:])
    components = wbar_components(G, letters)
    assert len(components) == len(G)
