import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grmcurves.fields import (
    FieldElement,
    GaloisField,
    build_tower,
    inverse,
    is_irreducible,
    rank,
    rref,
    smallest_irreducible,
)
from oracles import NaiveField, is_irreducible_trial, smallest_irreducible_trial

SMALL = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2)]

# frozen from smallest_irreducible_trial (low coefficient first)
MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (7, 2): (1, 0, 1),
}


@pytest.mark.parametrize("pn", sorted(MODULI))
def test_smallest_irreducible_frozen(pn):
    assert smallest_irreducible(*pn) == MODULI[pn]


@pytest.mark.parametrize("p,n", [(2, 5), (3, 3), (5, 2), (5, 3)])
def test_smallest_irreducible_matches_trial_division(p, n):
    assert list(smallest_irreducible(p, n)) == smallest_irreducible_trial(p, n)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
def test_rabin_matches_trial_division_exhaustively(p, n):
    for low in itertools.product(range(p), repeat=n):
        poly = list(low) + [1]
        assert is_irreducible(poly, p) == is_irreducible_trial(poly, p), poly


@pytest.mark.parametrize("p,n", SMALL)
def test_multiplication_matches_schoolbook(p, n):
    F, N = GaloisField(p, n), NaiveField(p, n)
    for a in range(F.order):
        for b in range(F.order):
            assert F.mul(a, b) == N.mul(a, b)
            assert F.add(a, b) == N.add(a, b)


def test_negation_of_multidigit_element():
    F = GaloisField(3, 2)
    for a in range(9):
        assert F.add(a, F.neg(a)) == 0
    assert F.neg(4) == 8  # 1 + x -> 2 + 2x


def test_generator_is_primitive():
    for p, n in SMALL:
        F = GaloisField(p, n)
        powers = {F.pow(F.generator, k) for k in range(F.order - 1)}
        assert powers == set(range(1, F.order))


@given(st.sampled_from(SMALL), st.data())
def test_field_axioms(pn, data):
    F = GaloisField(*pn)
    el = st.integers(0, F.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    if b:
        assert F.mul(F.div(a, b), b) == a
        assert F.mul(b, F.inv(b)) == 1


@given(st.sampled_from(SMALL), st.data())
def test_vector_ops_agree_with_scalar(pn, data):
    F = GaloisField(*pn)
    xs = np.array(data.draw(st.lists(st.integers(0, F.order - 1), min_size=1, max_size=20)))
    ys = np.array(data.draw(st.lists(st.integers(0, F.order - 1), min_size=len(xs), max_size=len(xs))))
    k = data.draw(st.integers(0, 30))
    assert F.add_v(xs, ys).tolist() == [F.add(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.mul_v(xs, ys).tolist() == [F.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert F.pow_v(xs, k).tolist() == [F.pow(int(a), k) for a in xs]


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GaloisField(3, 2).inv(0)


def test_invalid_fields():
    with pytest.raises(ValueError):
        GaloisField(4, 1)
    with pytest.raises(ValueError):
        GaloisField(3, 2, modulus=(2, 0, 1))  # x^2 + 2 = (x - 1)(x + 1)
    with pytest.raises(ValueError):
        GaloisField(2, 30)


def test_field_element_wrapper():
    F = GaloisField(3, 3)
    a, b = F(5), F(16)
    assert int(a * b) == F.mul(5, 16)
    assert int(a + 1) == F.add(5, 1)
    assert int(2 - a) == F.sub(2, 5)
    assert (a / b) * b == a
    assert a**26 == F(1)
    assert isinstance(-a, FieldElement)
    assert a.coeffs == (2, 1, 0)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 2), (3, 3), (5, 2)])
def test_relative_trace_matches_naive(p, n):
    F, N = GaloisField(p, n), NaiveField(p, n)
    for k in range(1, n + 1):
        if n % k:
            continue
        for x in range(F.order):
            assert F.relative_trace(x, n, k) == N.trace(x, k)


def test_subfield_membership():
    F = GaloisField(2, 4)
    assert set(np.nonzero(F.subfield_mask(2))[0].tolist()) == {
        x for x in range(16) if F.pow(x, 4) == x
    }
    assert F.in_subfield(1, 1) and not F.in_subfield(F.generator, 2)
    with pytest.raises(ValueError):
        F.in_subfield(1, 3)


# --- towers ---------------------------------------------------------------------------

def test_tower_f27_frozen():
    T = build_tower(3, 1, 3)
    assert T.alpha_enumeration == (2, 1, 0)
    assert T.theta == 0  # F_3 is modelled by x over itself
    kernel = [x for x in range(27) if T.tr(x) == 0]
    assert kernel == [0, 1, 2, 15, 16, 17, 21, 22, 23]  # oracle: NaiveField(3, 3).trace
    assert T.trace_zero_subspace(3, 1) == [1, 15]
    assert T.standard_basis() == [1, 3, 9]
    assert T.dual_basis([1, 3, 9]) == [5, 16, 21]


def test_tower_f81_relative_kernel():
    T = build_tower(3, 1, 4)
    L = T.trace_zero_subspace(4, 2)
    assert L == [4, 28]
    assert all(T.big.relative_trace(x, 4, 2) == 0 for x in L)


@pytest.mark.parametrize("pem", [(2, 2, 2), (3, 2, 2), (2, 1, 3), (2, 2, 3)])
def test_embedding_is_a_field_homomorphism(pem):
    T = build_tower(*pem)
    q = T.q
    for a in range(q):
        assert T.restrict(T.embed(a)) == a
        for b in range(q):
            assert T.embed(T.small.mul(a, b)) == T.big.mul(T.embed(a), T.embed(b))
            assert T.embed(T.small.add(a, b)) == T.big.add(T.embed(a), T.embed(b))


@pytest.mark.parametrize("pem", [(2, 2, 2), (3, 1, 3), (2, 1, 4), (3, 2, 2)])
def test_trace_is_linear_onto_small_field(pem):
    T = build_tower(*pem)
    tt = T.trace_table
    assert set(tt.tolist()) == set(range(T.q))
    counts = np.bincount(tt, minlength=T.q)
    assert (counts == T.size // T.q).all()  # surjective with equal fibres
    for lam in range(T.q):
        x = 7 % T.size
        assert T.tr(T.big.mul(T.embed(lam), x)) == T.small.mul(lam, T.tr(x))


@pytest.mark.parametrize("pem", [(3, 1, 3), (2, 2, 2), (5, 1, 2), (3, 2, 2)])
def test_dual_basis_property(pem):
    T = build_tower(*pem)
    basis = T.standard_basis()
    dual = T.dual_basis(basis)
    for j, a in enumerate(dual):
        for k, b in enumerate(basis):
            assert T.tr(T.big.mul(a, b)) == (1 if j == k else 0)


def test_frobenius_and_independence():
    T = build_tower(3, 1, 3)
    x = T.big.generator
    assert T.frobenius(x, 3, 1) == x
    assert T.frobenius(x, 1, 1) == T.big.pow(x, 3)
    assert T.independent_over([1, 3, 9], 1)
    assert not T.independent_over([1, 2], 1)
    assert not T.independent_over([1, 15, 16], 1)  # 16 = 1 + 15 over F_3
    with pytest.raises(ValueError):
        T.complete_basis([1, 2])


def test_alpha_orders():
    assert build_tower(3, 1, 2, alpha_order="asc").alpha_enumeration == (0, 1, 2)
    assert build_tower(3, 1, 2, alpha_order=(1, 0, 2)).alpha_enumeration == (1, 0, 2)
    with pytest.raises(ValueError):
        build_tower(3, 1, 2, alpha_order=(0, 0, 1))
    with pytest.raises(ValueError):
        build_tower(4, 1, 2)


def test_linear_algebra():
    F = GaloisField(3)
    rows = [[1, 2, 0], [2, 1, 0], [0, 0, 1]]
    M, piv = rref(rows, F)
    assert rank(rows, F) == 2 and len(piv) == 2
    A = [[1, 1], [0, 2]]
    Ainv = inverse(A, F)
    prod = [[sum(F.mul(A[i][k], int(Ainv[k, j])) for k in range(2)) % 3 for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 1]], F)
