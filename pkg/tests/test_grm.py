import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grmcurves.fields import rank
from grmcurves.grm import (
    ReducedMultiPoly,
    SubcodeBasis,
    code_dimension,
    evaluate,
    generator_words,
    monomials,
    point_columns,
    reduce_poly,
    subcode_support_weight,
    subcode_weight_by_sum,
    weight_distribution,
    word_weight,
)

TOWERS = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 1)]


def _poly(tower, data, max_terms=4):
    F, m, q = tower.small, tower.m, tower.q
    exps = st.tuples(*[st.integers(0, q - 1)] * m)
    terms = data.draw(st.dictionaries(exps, st.integers(0, q - 1), max_size=max_terms))
    return ReducedMultiPoly(F, m, terms)


def _pointwise(f, tower):
    cols = point_columns(tower.small, tower.m)
    return np.array([f(cols[:, i]) for i in range(cols.shape[1])])


@pytest.mark.parametrize("pem", TOWERS)
def test_point_enumeration_order(pem, towers):
    T = towers(*pem)
    cols = point_columns(T.small, T.m)
    pts = [tuple(cols[:, i]) for i in range(cols.shape[1])]
    assert pts == list(itertools.product(range(T.q), repeat=T.m))  # X1 most significant


@given(st.sampled_from(TOWERS), st.data())
def test_ring_operations_are_pointwise(pem, data):
    from grmcurves.fields import build_tower

    T = build_tower(*pem)
    f, g = _poly(T, data), _poly(T, data)
    F = T.small
    assert evaluate(f + g, T).tolist() == F.add_v(evaluate(f, T), evaluate(g, T)).tolist()
    assert evaluate(f * g, T).tolist() == F.mul_v(evaluate(f, T), evaluate(g, T)).tolist()
    assert evaluate(f - g, T).tolist() == F.sub_v(evaluate(f, T), evaluate(g, T)).tolist()
    assert evaluate(f, T).tolist() == _pointwise(f, T).tolist()


def test_exponent_reduction():
    from grmcurves.fields import GaloisField

    F = GaloisField(3)
    f = reduce_poly({(3, 0): 1, (1, 0): 1, (4, 5): 2}, F, 2)
    # x^3 = x on F_3; x^4 = x^2, y^5 = y
    assert f.terms == {(1, 0): 2, (2, 1): 2}
    X = ReducedMultiPoly.variable(F, 2, 1)
    assert (X * X * X).terms == {(1, 0): 1}


def test_poly_validation_and_format():
    from grmcurves.fields import GaloisField

    F = GaloisField(3)
    with pytest.raises(ValueError):
        ReducedMultiPoly(F, 2, {(3, 0): 1})
    with pytest.raises(ValueError):
        ReducedMultiPoly(F, 2, {(1,): 1})
    with pytest.raises(ValueError):
        ReducedMultiPoly.variable(F, 2, 3)
    X1 = ReducedMultiPoly.variable(F, 2, 1)
    assert str((X1 - 1) * X1) == "X1^2 + 2*X1"
    assert str(ReducedMultiPoly(F, 2)) == "0"
    assert (X1 * 0).is_zero() and (X1 * X1).degree() == 2


@pytest.mark.parametrize("pem", TOWERS)
def test_code_dimension_is_rank_of_generators(pem, towers):
    T = towers(*pem)
    q, m = T.q, T.m
    for s in range(m * (q - 1) + 1):
        words = generator_words(T, s)
        assert rank(words, T.small) == len(words) == code_dimension(q, m, s)
    assert code_dimension(q, m, m * (q - 1)) == q**m


def test_dimension_frozen():
    # counted by hand: monomials of R_3(2, 3) are 1, X_i, X_i^2, X_iX_j
    assert code_dimension(3, 3, 2) == 10
    assert code_dimension(2, 3, 1) == 4
    assert len(monomials(3, 2, 2)) == 6


def test_subcode_weights():
    from grmcurves.fields import build_tower

    T = build_tower(3, 1, 3)
    F = T.small
    X1, X2, X3 = (ReducedMultiPoly.variable(F, 3, j) for j in (1, 2, 3))
    D = SubcodeBasis([evaluate(f, T) for f in ((X1 - 1) * X1, X1 * X2, X1 * X3)], F)
    assert D.r == 3 and D.length == 27
    assert subcode_support_weight(D) == 17 == subcode_weight_by_sum(D)
    dist = weight_distribution(D)
    assert sum(dist.values()) == 26
    assert word_weight(evaluate((X1 - 1) * X1, T)) == 9
    with pytest.raises(ValueError, match="dependent"):
        SubcodeBasis([evaluate(X1, T), evaluate(X1 * 2, T)], F)
    with pytest.raises(ValueError):
        SubcodeBasis([], F)


@given(st.sampled_from([(2, 1, 3), (3, 1, 2)]), st.data())
def test_support_weight_equals_span_average(pem, data):
    from grmcurves.fields import build_tower

    T = build_tower(*pem)
    words = generator_words(T, T.m * (T.q - 1))
    idx = data.draw(st.lists(st.integers(0, len(words) - 1), min_size=1, max_size=3, unique=True))
    D = SubcodeBasis([words[i] for i in idx], T.small)
    assert subcode_support_weight(D) == subcode_weight_by_sum(D)


def test_span_cap():
    from grmcurves.fields import build_tower

    T = build_tower(2, 1, 3)
    D = SubcodeBasis(generator_words(T, 3), T.small)
    with pytest.raises(ValueError):
        list(D.span(cap=16))


def test_evaluate_rejects_mismatched_tower(towers):
    T, U = towers(3, 1, 2), towers(3, 1, 3)
    f = ReducedMultiPoly.variable(T.small, 2, 1)
    with pytest.raises(ValueError):
        evaluate(f, U)
