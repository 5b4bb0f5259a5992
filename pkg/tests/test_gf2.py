import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qcldpc.errors import ParameterError
from qcldpc.gf2 import (
    Gf2Matrix,
    Gf2Polynomial,
    circulant_dense,
    circulant_to_polynomial,
    poly_gcd,
    poly_inverse_mod,
    poly_mul_mod,
    rank,
)
from tests.oracles import circulant_by_definition, naive_rank, poly_mul_schoolbook

X = sympy.symbols("x")


def _sympy_poly(p):
    return sympy.Poly(sum(X**j for j in p.support()) or 0, X, modulus=2)


def test_circulant_orientation_is_pinned():
    # first column carries the shifts; each row is the row above shifted right
    c = circulant_dense([0, 1], 4)
    assert c.tolist() == [[1, 0, 0, 1], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
    assert np.array_equal(c[1], np.roll(c[0], 1))


@pytest.mark.parametrize("shifts,z", [((0, 1, 4), 13), ((0, 2, 7), 13), ((3,), 5), ((0, 5, 11, 20), 23)])
def test_circulant_matches_definition(shifts, z):
    assert np.array_equal(circulant_dense(shifts, z), circulant_by_definition(shifts, z))


def test_circulant_to_polynomial():
    p = circulant_to_polynomial((0, 2, 5), 7)
    assert p.bits == 0b100101 and p.weight == 3
    assert str(p) == "1 + x^2 + x^5"
    with pytest.raises(ParameterError):
        circulant_to_polynomial((0, 7), 7)
    with pytest.raises(ParameterError):
        circulant_to_polynomial((3, 1), 7)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 40).flatmap(lambda z: st.tuples(st.just(z), st.integers(0, 2**z - 1), st.integers(0, 2**z - 1))))
def test_product_matches_schoolbook_and_matrices(args):
    z, a, b = args
    pa, pb = Gf2Polynomial(z, a), Gf2Polynomial(z, b)
    prod = poly_mul_mod(pa, pb)
    assert np.array_equal(prod.coefficients, poly_mul_schoolbook(pa.coefficients, pb.coefficients))
    # circulant(a) @ circulant(b) == circulant(a*b)
    lhs = (circulant_dense(pa.support(), z).astype(int) @ circulant_dense(pb.support(), z)) % 2
    assert np.array_equal(lhs, circulant_dense(prod.support(), z))
    # a circulant acting on a vector multiplies polynomials
    assert np.array_equal((circulant_dense(pa.support(), z).astype(int) @ pb.coefficients) % 2, prod.coefficients)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 30).flatmap(lambda z: st.tuples(st.just(z), st.integers(1, 2**z - 1))))
def test_inverse_against_sympy_gcd(args):
    z, a = args
    p = Gf2Polynomial(z, a)
    inv = poly_inverse_mod(p)
    modulus = sympy.Poly(X**z - 1, X, modulus=2)
    coprime = sympy.gcd(_sympy_poly(p), modulus).degree() == 0
    assert (inv is not None) == coprime
    assert (poly_gcd((1 << z) | 1, a) == 1) == coprime
    if inv is not None:
        assert poly_mul_mod(p, inv).bits == 1


def test_inverse_simple_cases():
    assert poly_inverse_mod(Gf2Polynomial(9, 1)).bits == 1
    # x^3 * x^(z-3) = 1
    assert poly_inverse_mod(Gf2Polynomial(9, 1 << 3)).support() == [6]
    # 1 + x divides x^z - 1
    assert poly_inverse_mod(Gf2Polynomial(9, 0b11)) is None
    with pytest.raises(ParameterError):
        poly_inverse_mod(Gf2Polynomial(9, 0))


def test_even_weight_never_invertible():
    for bits in (0b1111, 0b1010011, 0b11):
        assert poly_inverse_mod(Gf2Polynomial(31, bits)) is None


def test_polynomial_arithmetic_helpers():
    a = Gf2Polynomial.from_coefficients([1, 0, 1])
    b = Gf2Polynomial(3, 0b011)
    assert (a + b).bits == 0b110
    assert (a * b).bits == poly_mul_mod(a, b).bits
    assert a.coefficients.tolist() == [1, 0, 1]
    assert str(Gf2Polynomial(3, 0)) == "0"
    with pytest.raises(ParameterError):
        a + Gf2Polynomial(4, 1)
    with pytest.raises(ValueError):
        Gf2Polynomial(3, 0b1000)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(1, 150), st.integers(0, 2**32 - 1))
def test_rank_matches_naive(rows, cols, seed):
    dense = np.random.default_rng(seed).integers(0, 2, (rows, cols), dtype=np.uint8)
    m = Gf2Matrix.from_dense(dense)
    assert m.rank() == naive_rank(dense) == rank(dense)
    reduced, pivots = m.row_reduce()
    assert len(pivots) == m.rank()
    red = reduced.to_dense()
    for i, p in enumerate(pivots):
        assert red[:, p].tolist() == [1 if r == i else 0 for r in range(rows)]
    assert not red[len(pivots):].any()


def test_dense_round_trip_and_indexing(rng):
    dense = rng.integers(0, 2, (7, 130), dtype=np.uint8)
    m = Gf2Matrix.from_dense(dense)
    assert np.array_equal(m.to_dense(), dense)
    assert m.shape == (7, 130)
    assert m[3, 129] == dense[3, 129]
    assert m.transpose().to_dense().tolist() == dense.T.tolist()
    assert m == m.copy()


def test_multiply_vector(rng):
    dense = rng.integers(0, 2, (11, 200), dtype=np.uint8)
    x = rng.integers(0, 2, 200, dtype=np.uint8)
    got = Gf2Matrix.from_dense(dense).multiply_vector(x)
    assert np.array_equal(got, (dense.astype(int) @ x) % 2)


def test_rank_edge_cases():
    assert rank(np.zeros((4, 9), dtype=np.uint8)) == 0
    assert rank(np.eye(70, dtype=np.uint8)) == 70
    assert rank(np.ones((5, 5), dtype=np.uint8)) == 1
