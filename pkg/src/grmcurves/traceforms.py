"""Codewords written as x -> Tr(R(x)) + c on F_{q^m}, and their reduction.

A TraceForm keeps R as a sparse univariate polynomial over the top field with
exponents in [0, q^m - 1] (i.e. taken modulo x^{q^m} - x) and a separate
constant c in F_q.  Every transformation here preserves the represented
function, and with ``check=True`` verifies that on all of F_{q^m}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from grmcurves.errors import ConsistencyError
from grmcurves.fields import FieldTower
from grmcurves.grm import ReducedMultiPoly, evaluate_at

SUBSET_SEARCH_LIMIT = 12


def _reduce_exp(e: int, N: int) -> int:
    # x^e as a function on F_N
    if e < N:
        return e
    return (e - 1) % (N - 1) + 1


@dataclass(eq=False)
class TraceForm:
    tower: FieldTower
    terms: dict = field(default_factory=dict)
    c: int = 0

    def __post_init__(self):
        N = self.tower.size
        clean: dict = {}
        big = self.tower.big
        for e, coef in self.terms.items():
            e = _reduce_exp(int(e), N)
            clean[e] = big.add(clean.get(e, 0), int(coef))
        self.terms = {e: v for e, v in sorted(clean.items()) if v}

    @property
    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient (-1 for R = 0)."""
        return max(self.terms, default=-1)

    def __eq__(self, other):
        if not isinstance(other, TraceForm):
            return NotImplemented
        return self.tower is other.tower and self.terms == other.terms and self.c == other.c

    def R_values(self):
        """R(x) for every x of the top field (indexed by element code)."""
        big = self.tower.big
        xs = big.elements_array
        parts = [big.mul_v(coef, big.pow_v(xs, e)) for e, coef in self.terms.items()]
        if not parts:
            return np.zeros(big.order, dtype=np.int64)
        return big.sum_v(parts)

    def values(self):
        """Tr(R(x)) + c for every x, as small-model elements of F_q."""
        tr = self.tower.trace_table[self.R_values()]
        return self.tower.small.add_v(tr, self.c)

    def __add__(self, other: TraceForm) -> TraceForm:
        big = self.tower.big
        terms = dict(self.terms)
        for e, v in other.terms.items():
            terms[e] = big.add(terms.get(e, 0), v)
        return TraceForm(self.tower, terms, self.tower.small.add(self.c, other.c))

    def scale(self, lam: int) -> TraceForm:
        """lam * (Tr(R) + c) for lam in F_q (small model)."""
        L = self.tower.embed(lam)
        big = self.tower.big
        return TraceForm(self.tower, {e: big.mul(L, v) for e, v in self.terms.items()},
                         self.tower.small.mul(lam, self.c))

    def __mul__(self, other: TraceForm) -> TraceForm:
        # (Tr(A) + c1)(Tr(B) + c2) = Tr(B * sum_j A^{q^j} + c1 B + c2 A) + c1 c2
        tw = self.tower
        big = tw.big
        c1, c2 = tw.embed(self.c), tw.embed(other.c)
        terms = _polymul(tw, other.terms, trace_poly(tw, self.terms))
        for e, v in other.terms.items():
            terms[e] = big.add(terms.get(e, 0), big.mul(c1, v))
        for e, v in self.terms.items():
            terms[e] = big.add(terms.get(e, 0), big.mul(c2, v))
        return TraceForm(tw, terms, tw.small.mul(self.c, other.c))

    def __str__(self):
        return format_form(self)

    __repr__ = __str__


def format_poly(terms: dict, var: str = "x") -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        coef = terms[e]
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            parts.append(f"{coef}")
        elif coef == 1:
            parts.append(mono)
        else:
            parts.append(f"{coef}*{mono}")
    return " + ".join(parts)


def format_form(t: TraceForm) -> str:
    s = f"Tr({format_poly(t.terms)})"
    return s if not t.c else f"{s} + {t.c}"


def _polymul(tower: FieldTower, A: dict, B: dict) -> dict:
    big, N = tower.big, tower.size
    out: dict = {}
    for e1, a in A.items():
        for e2, b in B.items():
            e = _reduce_exp(e1 + e2, N)
            out[e] = big.add(out.get(e, 0), big.mul(a, b))
    return out


def trace_poly(tower: FieldTower, A: dict) -> dict:
    """sum_{j<m} A(x)^{q^j} as a polynomial reduced modulo x^{q^m} - x."""
    big, N, q = tower.big, tower.size, tower.q
    out: dict = {}
    for j in range(tower.m):
        s = q**j
        for e, a in A.items():
            ee = _reduce_exp(e * s, N)
            out[ee] = big.add(out.get(ee, 0), big.pow(a, s))
    return {e: v for e, v in out.items() if v}


def linear_form(tower: FieldTower, a: int, c: int = 0) -> TraceForm:
    """x -> Tr(a x) + c."""
    return TraceForm(tower, {1: a}, c)


def constant_form(tower: FieldTower, c: int) -> TraceForm:
    return TraceForm(tower, {}, c)


def _assert_same(before, after, what: str):
    if not np.array_equal(before, after):
        raise ConsistencyError(f"{what} changed the represented function")


def coordinate_columns(tower: FieldTower, coords) -> np.ndarray:
    """Row j: Tr(a_j x) for every x, i.e. coordinate X_j under x <-> F_q^m."""
    big = tower.big
    xs = big.elements_array
    return np.stack([tower.trace_table[big.mul_v(int(a), xs)] for a in coords])


def word_to_trace_form(f: ReducedMultiPoly, coords, tower: FieldTower, check: bool = True) -> TraceForm:
    """Substitute X_j = Tr(a_j x) into f and expand into one trace form.

    ``coords`` are F_q-independent a_1..a_m in the top field.
    """
    coords = [int(a) for a in coords]
    if len(coords) != tower.m or not tower.independent_over(coords, tower.e):
        raise ValueError("coordinate elements must be F_q-independent, one per variable")
    if f.field != tower.small or f.m != tower.m:
        raise ValueError("polynomial does not match the tower")
    lin = [linear_form(tower, a) for a in coords]
    total = constant_form(tower, 0)
    for exps, coef in f.terms.items():
        prod = constant_form(tower, 1)
        for form, i in zip(lin, exps):
            for _ in range(i):
                prod = prod * form
        total = total + prod.scale(coef)
    if check:
        _assert_same(evaluate_at(f, coordinate_columns(tower, coords)), total.values(), "trace expansion")
    return total


def sigma_trace_form(sigma, coords, tower: FieldTower, check: bool = True) -> TraceForm:
    """prod_j prod_{t > i_j} (Tr(a_j x) - alpha_t), multiplied factor by factor."""
    small = tower.small
    prod = constant_form(tower, 1)
    for a, i in zip(coords, sigma):
        for t in range(i + 1, tower.q):
            prod = prod * linear_form(tower, int(a), small.neg(tower.alpha_enumeration[t]))
    if check:
        from grmcurves.hierarchy import sigma_to_poly

        f = sigma_to_poly(sigma, tower)
        _assert_same(evaluate_at(f, coordinate_columns(tower, coords)), prod.values(), "factor expansion")
    return prod


def cyclotomic_coset(e: int, q: int, N: int) -> list[int]:
    """Exponents x^{e q^t} as functions on F_N, e in [1, N-1]."""
    out, cur = [], e
    while cur not in out:
        out.append(cur)
        cur = (cur * q - 1) % (N - 1) + 1
    return sorted(out)


def cyclotomic_canonicalize(t: TraceForm, check: bool = True) -> TraceForm:
    """Move every monomial to the smallest exponent of its q-cyclotomic coset.

    Uses Tr(c x^e) = Tr(c^{q^s} x^{e q^s}); constant terms go into ``c``.
    """
    tw = t.tower
    big, N, q = tw.big, tw.size, tw.q
    terms: dict = {}
    c = t.c
    for e, coef in t.terms.items():
        if e == 0:
            c = tw.small.add(c, tw.tr(coef))
            continue
        best, shift, cur = e, 0, e
        for s in range(1, tw.m):
            cur = (cur * q - 1) % (N - 1) + 1
            if cur < best:
                best, shift = cur, s
        terms[best] = big.add(terms.get(best, 0), big.pow(coef, q**shift))
    out = TraceForm(tw, terms, c)
    if check:
        _assert_same(t.values(), out.values(), "cyclotomic canonicalization")
    return out


def drop_trace_null_terms(t: TraceForm, check: bool = True, limit: int = SUBSET_SEARCH_LIMIT) -> TraceForm:
    """Remove monomials whose trace contribution vanishes identically.

    Single monomials are tested first; among the survivors the largest subset
    with identically vanishing trace sum is removed (searched exhaustively
    when at most ``limit`` terms remain).
    """
    tw = t.tower
    big = tw.big
    xs = big.elements_array

    def contribution(e, coef):
        return tw.trace_table[big.mul_v(coef, big.pow_v(xs, e))]

    keep = {}
    for e, coef in t.terms.items():
        if np.any(contribution(e, coef)):
            keep[e] = coef
    items = list(keep.items())
    if 2 <= len(items) <= limit:
        contrib = {e: contribution(e, coef) for e, coef in items}
        found = None
        for size in range(len(items), 1, -1):
            for subset in itertools.combinations(items, size):
                if not np.any(tw.small.sum_v(contrib[e] for e, _ in subset)):
                    found = subset
                    break
            if found:
                break
        if found:
            for e, _ in found:
                del keep[e]
    out = TraceForm(tw, keep, t.c)
    if check:
        _assert_same(t.values(), out.values(), "trace-null term removal")
    return out


def artin_schreier_reduce(t: TraceForm, max_steps: int | None = None, check: bool = True) -> TraceForm:
    """Replace a leading c x^{p e} by c^{1/p} x^e until p no longer divides deg R.

    This is the substitution y -> y + c^{1/p} x^e in y^p - y = R(x), so only a
    prime base field (q = p) is supported; otherwise the degree must already be
    prime to p.
    """
    tw = t.tower
    p = tw.p
    if tw.e != 1:
        if t.degree > 0 and t.degree % p == 0:
            raise ValueError(f"degree {t.degree} divisible by p over a non-prime base field F_{tw.q}")
        return t
    big = tw.big
    terms = dict(t.terms)
    steps = 0
    while max_steps is None or steps < max_steps:
        deg = max(terms, default=0)
        if deg <= 0 or deg % p:
            break
        coef = terms.pop(deg)
        root = big.pow(coef, p ** (tw.degree - 1))
        terms[deg // p] = big.add(terms.get(deg // p, 0), root)
        terms = {e: v for e, v in terms.items() if v}
        steps += 1
    out = TraceForm(tw, terms, t.c)
    if check:
        _assert_same(t.values(), out.values(), "Artin-Schreier reduction")
    return out


REDUCTION_MODES = ("full", "canonical", "none")


def reduce_form(t: TraceForm, mode: str = "full", check: bool = True) -> TraceForm:
    """Genus reduction pipeline.

    "full": cyclotomic canonicalization, trace-null removal, Artin-Schreier
    reduction.  "canonical" skips the removal step (for models whose whole
    point is an identically vanishing trace); "none" returns t unchanged.
    """
    if mode == "none":
        return t
    if mode not in REDUCTION_MODES:
        raise ValueError(f"unknown reduction mode {mode!r}")
    t = cyclotomic_canonicalize(t, check)
    if mode == "full":
        t = drop_trace_null_terms(t, check)
    return artin_schreier_reduce(t, check=check)


def fold_constant(t: TraceForm) -> TraceForm:
    """Absorb c into R's constant term via the first z with Tr(z) = c."""
    if t.c == 0:
        return t
    tw = t.tower
    z = int(np.nonzero(tw.trace_table == t.c)[0][0])
    terms = dict(t.terms)
    terms[0] = tw.big.add(terms.get(0, 0), z)
    return TraceForm(tw, terms, 0)


def is_trace_null(tower: FieldTower, coef: int, e: int) -> bool:
    big = tower.big
    return not np.any(tower.trace_table[big.mul_v(coef, big.pow_v(big.elements_array, e))])


def coprime_to_p(t: TraceForm) -> bool:
    return t.degree > 0 and math.gcd(t.degree, t.tower.p) == 1
