import pytest

from homotopy_monoids.core import PreconditionError, RangeError, TableError
from homotopy_monoids.exactalg import homology_all
from homotopy_monoids.simplicial import (
    FinSemigroup,
    Homomorphism,
    adjoin_unit,
    apply_degeneracy,
    arrow_category,
    chains,
    compose_words,
    counit_plus,
    cyclic_group,
    degeneracy_words,
    nerve,
    point,
    product_set,
    semigroup_nerve,
    smash,
    span_category,
    sphere,
    suspension,
    wedge,
)


def groups(X, upto=None):
    return [str(h) for h in homology_all(chains(X), upto=upto)]


def test_degeneracy_words_normalize():
    """Words are kept strictly descending"""
    assert apply_degeneracy(0, (0,)) == (1, 0)
    assert apply_degeneracy(2, (1, 0)) == (2, 1, 0)
    assert apply_degeneracy(0, ()) == (0,)
    assert compose_words([0, 0], ()) == (1, 0)
    assert list(degeneracy_words(2, 1)) == [(0,), (1,)]
    assert len(list(degeneracy_words(4, 2))) == 6


def test_semigroup_tables_are_checked():
    """Associativity is verified on construction"""
    with pytest.raises(TableError):
        FinSemigroup("bad", ("a", "b"), ((1, 0), (0, 0)))
    with pytest.raises(TableError):
        FinSemigroup("open", ("a",), ((1,),))
    with pytest.raises(PreconditionError):
        cyclic_group(2).index("q")


def test_monoid_structure(z2):
    assert z2.is_group()
    assert z2.is_commutative()
    assert z2.inverse(z2.index("a")) == z2.index("a")
    assert z2.product([1, 1, 1]) == 1
    assert z2.product([]) == z2.unit


def test_adjoin_unit_and_counit(z2):
    """M_+ puts the new unit first and the counit folds it onto e"""
    plus = adjoin_unit(z2)
    assert plus.name == "z2+"
    assert plus.elements == ("*", "e", "a")
    assert plus.unit == 0
    kappa = counit_plus(z2)
    assert kappa.mapping == (0, 0, 1)
    assert kappa.then(Homomorphism.identity(z2)).mapping == kappa.mapping


def test_homomorphism_laws_are_checked(z2):
    z3 = cyclic_group(3)
    with pytest.raises(TableError):
        Homomorphism(z3, z2, (0, 1, 1))


def test_nerve_of_cyclic_groups():
    """Nondegenerate n-simplices of BG are n-tuples of non-units"""
    X = nerve(cyclic_group(3), 3)
    assert [X.rank(n) for n in range(4)] == [1, 2, 4, 8]
    assert X.basepoint == ()
    assert X.name == "Bz3"
    X.validate()


def test_nerve_of_z2_is_rp_infinity(z2):
    """Z, Z/2, 0, Z/2 below the truncation"""
    assert groups(nerve(z2, 4), upto=3) == ["Z", "Z/2", "0", "Z/2"]


def test_nerve_faces_compose(z2):
    """d_1 (a, a) = (a a) = e, which is the degenerate simplex on the vertex"""
    X = nerve(z2, 2)
    assert X.faces[("a", "a")][1] == ((0,), ())
    assert X.faces[("a", "a")][0] == ((), ("a",))
    assert X.face(1, 0, ((0,), ())) == ((), ())


def test_fat_nerve_matches_nerve(z2):
    """The semisimplicial nerve has every tuple but the same low homology"""
    fat = semigroup_nerve(z2, 4)
    assert fat.name == "B~z2"
    assert fat.semisimplicial
    assert [fat.rank(n) for n in range(5)] == [1, 2, 4, 8, 16]
    plus = nerve(adjoin_unit(z2), 4)
    assert [plus.rank(n) for n in range(5)] == [fat.rank(n) for n in range(5)]
    assert groups(fat, upto=3) == groups(nerve(z2, 4), upto=3)
    with pytest.raises(PreconditionError):
        fat.degeneracy(1, 0, ((), ("a",)))


def test_category_nerves():
    """A span and an arrow are contractible; only one-object nerves are based"""
    X = nerve(span_category(), 2)
    assert X.gens(0) == ("a", "m", "b")
    assert X.rank(1) == 2 and X.rank(2) == 0
    assert X.basepoint is None
    assert groups(X) == ["Z", "0", "0"]
    assert groups(nerve(arrow_category(), 2)) == ["Z", "0", "0"]


def test_opposite_and_product_categories():
    C = span_category()
    op = C.opposite()
    assert op.source["f"] == "a" and op.target["f"] == "m"
    P = arrow_category().product(arrow_category())
    assert "0,1" in P.objects
    assert P.compose("id_1,f", "f,id_0") == "f,f"
    assert len(P.hom("0,0", "1,1")) == 1


def test_spheres():
    """S^n has homology in degrees 0 and n only"""
    assert groups(sphere(2, 3)) == ["Z", "0", "Z", "0"]
    assert groups(sphere(0, 1)) == ["Z^2", "0"]
    assert sphere(4, 2).rank(2) == 0
    assert groups(point(2)) == ["Z", "0", "0"]
    with pytest.raises(RangeError):
        sphere(-1, 2)


def test_products_wedges_and_smash():
    """Torus, figure eight and S1 ^ S1 = S2"""
    s1 = sphere(1, 3)
    assert groups(product_set(sphere(1, 2), sphere(1, 2))) == ["Z", "Z^2", "Z"]
    assert groups(wedge(s1, s1)) == ["Z", "Z^2", "0", "0"]
    assert groups(smash(s1, s1)) == ["Z", "0", "Z", "0"]
    assert groups(suspension(s1)) == ["Z", "0", "Z", "0"]
    smash(s1, s1).validate()


def test_smash_needs_basepoints():
    unbased = nerve(span_category(), 2)
    with pytest.raises(PreconditionError):
        smash(unbased, sphere(1, 2))
    with pytest.raises(PreconditionError):
        suspension(unbased)


def test_suspension_shifts_homology(z2):
    """Reduced homology of SX is that of X shifted up by one"""
    X = nerve(z2, 4)
    assert groups(suspension(X), upto=3) == ["Z", "0", "Z/2", "0"]
