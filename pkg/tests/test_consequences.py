import pytest

from homotopy_monoids.consequences import (
    AbelianGroup,
    CommMonoidPresentation,
    abelianization,
    enumerate_monoids,
    grothendieck_group,
    h1_of_bm,
    hocolim_preservation_check,
    is_grouplike,
    james,
    james_tensor_prediction,
    smash_power,
    smash_power_oracle,
)
from homotopy_monoids.core import Coefficients, PreconditionError, RangeError
from homotopy_monoids.exactalg import IntMatrix, homology_all
from homotopy_monoids.simplicial import chains, cyclic_group, nerve, span_category, sphere


def groups(X):
    return [str(h) for h in homology_all(chains(X))]


def test_james_filtration_of_the_circle():
    """J_2 S^1 has one cell in each of the degrees 0, 1, 2"""
    X = james(sphere(1, 3), 2)
    assert X.name == "J2S1"
    assert groups(X) == ["Z", "Z", "Z", "0"]


def test_james_first_stage_is_the_space():
    S2 = sphere(2, 3)
    assert groups(james(S2, 1)) == groups(S2)
    assert groups(james(S2, 0)) == ["Z", "0", "0", "0"]


def test_james_matches_the_smash_power_sum():
    """J_2 S^2 against S^0 + S^2 + S^4 after reducing"""
    S2 = sphere(2, 4)
    predicted = james_tensor_prediction(S2, 2, 4)
    assert [h.betti for h in predicted] == [1, 0, 1, 0, 1]
    actual = homology_all(chains(james(S2, 2)), Coefficients.Q)
    assert [h.betti for h in actual] == [h.betti for h in predicted]


def test_james_preconditions():
    with pytest.raises(PreconditionError):
        james(nerve(span_category(), 2), 2)
    with pytest.raises(RangeError):
        james(sphere(1, 2), 1, maxdim=3)
    with pytest.raises(RangeError):
        james(sphere(1, 2), -1)


def test_smash_powers():
    S1 = sphere(1, 3)
    assert smash_power(S1, 0).name == "S0"
    assert groups(smash_power(S1, 2)) == ["Z", "0", "Z", "0"]
    assert [str(h) for h in smash_power_oracle(S1, 2)] == ["0", "0", "Z", "0"]
    assert [str(h) for h in smash_power_oracle(S1, 0)] == ["Z", "0", "0", "0"]
    with pytest.raises(RangeError):
        smash_power(S1, -1)


@pytest.mark.parametrize(
    "name, expected",
    [("z2", "Z/2"), ("z3", "Z/3"), ("klein", "Z/2 + Z/2"), ("idem", "0"), ("max3", "0"), ("trivial", "0")],
)
def test_grothendieck_groups(corpus, name, expected):
    assert str(grothendieck_group(corpus.monoid(name))) == expected


def test_grothendieck_group_needs_commutativity(corpus):
    with pytest.raises(PreconditionError):
        grothendieck_group(corpus.monoid("lzu"))


def test_truncated_natural_numbers_complete_to_the_integers():
    assert str(CommMonoidPresentation.truncated_free(3).group()) == "Z"
    assert CommMonoidPresentation.truncated_free(0).group().is_trivial()


def test_abelian_groups_from_relations():
    A = AbelianGroup.from_relations(IntMatrix.from_dense([[2, 0, 0], [0, 3, 0]]))
    assert (A.rank, A.torsion) == (1, (6,))
    assert str(A) == "Z + Z/6"


def test_abelianization(corpus):
    """Commutative quotients; commutative monoids are left alone"""
    lzu = abelianization(corpus.monoid("lzu"))
    assert lzu.name == "lzuab"
    assert len(lzu) == 2
    assert lzu.is_commutative()
    z3 = abelianization(corpus.monoid("z3"))
    assert len(z3) == 3


def test_first_homology_of_classifying_spaces(corpus):
    """H_1(BG) is the abelianization of G; a zero element kills it"""
    assert str(h1_of_bm(corpus.monoid("klein"))) == "Z/2 + Z/2"
    assert str(h1_of_bm(corpus.monoid("z4"))) == "Z/4"
    assert h1_of_bm(corpus.monoid("idem")).is_trivial()
    assert h1_of_bm(corpus.monoid("max3")).is_trivial()


def test_grouplike_means_group(corpus):
    assert is_grouplike(corpus.monoid("klein"))
    assert not is_grouplike(corpus.monoid("idem"))


def test_enumerate_small_monoids():
    """Isomorphism classes of monoids of order 1 to 4"""
    assert [len(enumerate_monoids(n)) for n in range(1, 5)] == [1, 2, 7, 35]
    two = enumerate_monoids(2)
    assert [M.name for M in two] == ["m2_0", "m2_1"]
    assert all(M.elements == ("e", "a") for M in two)
    with pytest.raises(RangeError):
        enumerate_monoids(0)


def test_hocolim_preservation_for_small_groups():
    """hocolim(BG_1 <- * -> BG_2) has the homology of BG_1 v BG_2"""
    report = hocolim_preservation_check(cyclic_group(2), cyclic_group(3), 2)
    assert report.passed
    ids = [c.check_id for c in report.checks()]
    assert ids == ["hocolim.z2*z3.H1", "hocolim.z2*z3.H2"]
    assert report.checks()[0].details == "Z/6 = Z/6"


def test_hocolim_preservation_preconditions(corpus):
    with pytest.raises(PreconditionError):
        hocolim_preservation_check(corpus.monoid("idem"), cyclic_group(2))
    with pytest.raises(RangeError):
        hocolim_preservation_check(cyclic_group(5), cyclic_group(2))
