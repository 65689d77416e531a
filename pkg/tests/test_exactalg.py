import random
from fractions import Fraction

import pytest
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from homotopy_monoids.core import Coefficients, RangeError, TableError
from homotopy_monoids.exactalg import (
    ChainComplex,
    HomologyResult,
    IntMatrix,
    UnionFind,
    elementary_divisors,
    euler_characteristic,
    field_rank,
    format_rat,
    homology,
    homology_all,
    parse_rat,
    smith_normal_form,
    universal_coefficients,
)


def sympy_divisors(A: IntMatrix):
    dm = DomainMatrix([[ZZ(v) for v in row] for row in A.to_dense()], (A.rows, A.cols), ZZ)
    return sorted(abs(int(d)) for d in invariant_factors(dm) if d != 0)


def sympy_det(A: IntMatrix) -> int:
    return int(DomainMatrix([[ZZ(v) for v in row] for row in A.to_dense()], (A.rows, A.cols), ZZ).det())


def rp2() -> ChainComplex:
    return ChainComplex((1, 1, 1), (IntMatrix(1, 1), IntMatrix.from_dense([[2]])))


def test_rationals_print_with_denominator():
    """Rationals are always p/q"""
    assert format_rat(Fraction(2)) == "2/1"
    assert format_rat(Fraction(-3, 6)) == "-1/2"
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat("4") == Fraction(4)
    with pytest.raises(ValueError):
        parse_rat("x/2")


def test_smith_normal_form_textbook_example():
    """diag(2, 6, 12) with U A V = D"""
    A = IntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    snf = smith_normal_form(A)
    assert snf.D.diagonal() == [2, 6, 12]
    assert snf.D.is_diagonal()
    assert snf.U @ A @ snf.V == snf.D
    assert abs(sympy_det(snf.U)) == 1
    assert abs(sympy_det(snf.V)) == 1


def random_matrix(rng: random.Random, rows: int, cols: int) -> IntMatrix:
    dense = [[rng.choice([0, 0, 0, 1, -1, 2, 3, -4]) for _ in range(cols)] for _ in range(rows)]
    return IntMatrix.from_dense(dense, cols)


def test_elementary_divisors_match_sympy_on_square_matrices():
    """Both elimination paths match sympy's invariant factors"""
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 6)
        A = random_matrix(rng, n, n)
        expected = sympy_divisors(A)
        assert elementary_divisors(A) == expected
        assert elementary_divisors(A, dense_threshold=0) == expected


def test_elementary_divisors_dense_and_sparse_agree():
    """Rectangular matrices: the two paths agree and the dense one certifies itself"""
    rng = random.Random(12)
    for _ in range(40):
        A = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        snf = smith_normal_form(A)
        assert snf.U @ A @ snf.V == snf.D
        assert elementary_divisors(A) == elementary_divisors(A, dense_threshold=0)
        full = A.rows == A.cols and sympy_det(A) != 0
        if full:
            product = 1
            for d in elementary_divisors(A):
                product *= d
            assert product == abs(sympy_det(A))


def test_elementary_divisors_form_a_divisibility_chain():
    """Sparse elimination reorders pivots into d_1 | d_2 | ..."""
    A = IntMatrix.from_dense([[2, 0], [0, 3]])
    assert elementary_divisors(A, dense_threshold=0) == [1, 6]
    assert elementary_divisors(IntMatrix(3, 4)) == []


def test_field_rank():
    """Rank over Q and over F_p"""
    A = IntMatrix.from_dense([[2, 0], [0, 3]])
    assert field_rank(A) == 2
    assert field_rank(A, 2) == 1
    assert field_rank(A, 3) == 1
    assert field_rank(A, 5) == 2


def test_matrix_shape_errors():
    """Entries outside the shape and bad products are range errors"""
    with pytest.raises(RangeError):
        IntMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(RangeError):
        IntMatrix(2, 3) @ IntMatrix(2, 3)


def test_homology_of_rp2_over_each_coefficient_ring():
    """RP^2: Z, Z/2, 0 integrally; F_2 sees both the torsion and its extension"""
    C = rp2()
    assert [str(h) for h in homology_all(C)] == ["Z", "Z/2", "0"]
    assert [h.betti for h in homology_all(C, Coefficients.Q)] == [1, 0, 0]
    assert [h.betti for h in homology_all(C, Coefficients.FP, 2)] == [1, 1, 1]
    assert [str(h) for h in homology_all(C, Coefficients.FP, 2)] == ["F2", "F2", "F2"]
    assert [h.betti for h in homology_all(C, Coefficients.FP, 3)] == [1, 0, 0]
    assert universal_coefficients(homology_all(C), 2) == [1, 1, 1]
    assert euler_characteristic(C) == 1


def test_homology_passes_the_dense_threshold_down(monkeypatch):
    import homotopy_monoids.exactalg as exactalg

    seen = []
    reduce = exactalg.elementary_divisors

    def recording(A, dense_threshold=exactalg.DENSE_THRESHOLD):
        seen.append(dense_threshold)
        return reduce(A, dense_threshold)

    monkeypatch.setattr(exactalg, "elementary_divisors", recording)
    assert [str(h) for h in homology_all(rp2(), dense_threshold=0)] == ["Z", "Z/2", "0"]
    assert seen and set(seen) == {0}


def test_homology_range_and_prime_checks():
    C = rp2()
    with pytest.raises(RangeError):
        homology(C, 3)
    with pytest.raises(RangeError):
        homology(C, 1, Coefficients.FP)


def test_chain_complex_rejects_nonzero_square():
    """d_1 d_2 != 0 is refused at construction"""
    d1 = IntMatrix.from_dense([[1]])
    d2 = IntMatrix.from_dense([[1]])
    with pytest.raises(TableError):
        ChainComplex((1, 1, 1), (d1, d2))


def test_chain_complex_rejects_wrong_shapes():
    with pytest.raises(RangeError):
        ChainComplex((1, 2), (IntMatrix(1, 1),))


def test_homology_result_rendering_and_sum():
    """Free part first, then torsion in divisibility order"""
    assert str(HomologyResult(1, 2, (2,))) == "Z^2 + Z/2"
    assert str(HomologyResult(3, 0)) == "0"
    total = HomologyResult(1, 0, (2,)) + HomologyResult(1, 1, (3,))
    assert (total.betti, total.torsion) == (1, (6,))
    assert HomologyResult(0, 1).reduced().is_zero()
    assert HomologyResult(2, 1).reduced() == HomologyResult(2, 1)


def test_union_find_keeps_earliest_representative():
    uf = UnionFind(["a", "b", "c", "d"])
    assert uf.union("d", "b")
    assert not uf.union("b", "d")
    uf.union("c", "d")
    assert uf.find("d") == "b"
    assert uf.reps() == ["a", "b"]
    assert uf.classes() == {"a": ["a"], "b": ["b", "c", "d"]}
    assert len(uf) == 2
    assert "c" in uf and "z" not in uf
