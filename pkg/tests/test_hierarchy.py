import pytest
from hypothesis import given
from hypothesis import strategies as st

from grmcurves.errors import ConsistencyError
from grmcurves.grm import ReducedMultiPoly, code_dimension, generator_words, subcode_support_weight
from grmcurves.hierarchy import (
    d_r_formula,
    first_r_sigmas,
    gaussian_binomial,
    ghw_bruteforce,
    hp_min_subcode,
    iter_subspaces,
    sigma_to_poly,
    subcode_from_sigmas,
    weight_hierarchy,
)
from oracles import min_support_weight

METHODS = ("subspaces", "zero-sets", "words")


def test_example_sigmas_and_polynomials(towers):
    T = towers(3, 1, 3)
    sigmas = first_r_sigmas(3, 3, 2, 4)
    assert sigmas == [(0, 2, 2), (1, 1, 2), (1, 2, 1), (1, 2, 2)]
    assert [str(sigma_to_poly(s, T)) for s in sigmas] == ["X1^2 + 2*X1", "X1*X2", "X1*X3", "X1"]
    assert [d_r_formula(3, 3, 2, r) for r in (1, 2, 3, 4)] == [9, 15, 17, 18]


def test_order_three_sigmas(towers):
    assert first_r_sigmas(3, 3, 3, 3) == [(0, 1, 2), (0, 2, 1), (0, 2, 2)]
    T = towers(3, 1, 3)
    X1, X2 = (ReducedMultiPoly.variable(T.small, 3, j) for j in (1, 2))
    assert sigma_to_poly((0, 1, 2), T) == (X1 - 1) * X1 * X2


def test_first_two_sigmas_versus_non_minimal_pair(towers):
    # the first two tuples give the minimum d_2 = 8; pairing (0,1,2) with (0,2,2) gives 9
    T = towers(3, 1, 3)
    assert subcode_support_weight(hp_min_subcode(T, 3, 2)) == 8 == d_r_formula(3, 3, 3, 2)
    assert subcode_support_weight(subcode_from_sigmas([(0, 1, 2), (0, 2, 2)], T)) == 9


@pytest.mark.parametrize("order", ["asc", (1, 0, 2), (2, 0, 1)])
def test_weight_independent_of_alpha_enumeration(order):
    from grmcurves.fields import build_tower

    T = build_tower(3, 1, 3, alpha_order=order)
    for s, r in ((2, 3), (2, 4), (3, 2), (4, 5)):
        assert subcode_support_weight(hp_min_subcode(T, s, r)) == d_r_formula(3, 3, s, r)


def test_trivial_codes():
    assert d_r_formula(2, 1, 1, 1) == 1
    assert weight_hierarchy(2, 2, 2) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        first_r_sigmas(2, 2, 5, 1)
    with pytest.raises(ValueError):
        first_r_sigmas(2, 2, 1, 4)


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_formula_matches_every_oracle(q, m, towers):
    T = towers(q, 1, m)
    for s in range(m * (q - 1) + 1):
        words = generator_words(T, s)
        for r in range(1, len(words) + 1):
            expected = d_r_formula(q, m, s, r)
            assert subcode_support_weight(hp_min_subcode(T, s, r)) == expected
            # every method up to r = 4; the branch and bound grows quickly with r
            for method in METHODS if r <= 4 else ("auto",):
                try:
                    got = ghw_bruteforce(words, r, T.small, method=method, cap=10**6)
                except ValueError:
                    continue  # search space above the cap for this method
                assert got == expected, (q, m, s, r, method)


@pytest.mark.parametrize("q,m,s", [(2, 2, 1), (3, 1, 1), (2, 3, 1), (3, 2, 1)])
def test_bruteforce_matches_tuple_oracle(q, m, s, towers):
    T = towers(q, 1, m)
    words = [w.tolist() for w in generator_words(T, s)]
    for r in range(1, min(len(words), 3) + 1):
        assert ghw_bruteforce(words, r, T.small) == min_support_weight(words, q, r)


def test_words_method_on_larger_code(towers):
    T = towers(3, 1, 3)
    words = generator_words(T, 2)
    assert ghw_bruteforce(words, 2, T.small, method="words") == 15
    assert ghw_bruteforce(words, 1, T.small) == 9


def test_extension_field_alphabet(towers):
    T = towers(2, 2, 2)  # R_4(s, 2)
    for s in range(4):
        words = generator_words(T, s)
        for r in range(1, min(len(words), 2) + 1):
            assert ghw_bruteforce(words, r, T.small) == d_r_formula(4, 2, s, r)


@given(st.sampled_from([(2, 3), (3, 2), (3, 3), (4, 2), (2, 5)]), st.data())
def test_hierarchy_strictly_increasing(qm, data):
    q, m = qm
    s = data.draw(st.integers(0, m * (q - 1)))
    h = weight_hierarchy(q, m, s)
    assert all(a < b for a, b in zip(h, h[1:]))
    assert h[-1] == q**m if s >= m * (q - 1) else h[-1] <= q**m
    assert len(h) == code_dimension(q, m, s)


@given(st.integers(1, 4), st.integers(0, 4), st.sampled_from([2, 3, 4]))
def test_gaussian_binomial_counts_subspaces(n, k, q):
    # echelon forms are counted, so q = 4 works without any field arithmetic
    expected = sum(1 for _ in iter_subspaces(n, k, q)) if k <= n else 0
    assert gaussian_binomial(n, k, q) == expected


def test_bruteforce_errors(towers):
    T = towers(2, 1, 3)
    words = generator_words(T, 1)
    with pytest.raises(ValueError):
        ghw_bruteforce(words, 0, T.small)
    with pytest.raises(ValueError):
        ghw_bruteforce(words, 1)
    with pytest.raises(ValueError):
        ghw_bruteforce(words, 1, T.small, method="nope")
    with pytest.raises(ValueError):
        ghw_bruteforce(generator_words(towers(3, 1, 3), 2), 3, towers(3, 1, 3).small, method="subspaces")


def test_hp_subcode_checks_against_formula(towers, monkeypatch):
    import grmcurves.hierarchy as h

    monkeypatch.setattr(h, "d_r_formula", lambda *a: -1)
    with pytest.raises(ConsistencyError):
        h.hp_min_subcode(towers(2, 1, 2), 1, 1)
