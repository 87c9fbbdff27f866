"""Maximal curves over F_{p^m} (p odd, m even) built from R_p(2, m).

The explicit families come from the words X_1 X_i = Tr(x) Tr(a_i x) with a_i in
the kernel L of the relative trace F_{p^m} -> F_{p^{m/2}}.  On L the monomial
a x^{p^{m/2}+1} is trace-null, which lowers the genus without changing the
point count.  The quotient families are handled through their invariants.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import divisors, isprime

from grmcurves.curves import (
    ArtinSchreierCurve,
    CurveReport,
    FibreProduct,
    curve_report,
    fibre_report,
    genus_bound_ok,
    hasse_weil,
    make_report,
    member_genera,
)
from grmcurves.errors import ConsistencyError
from grmcurves.fields import FieldTower, build_tower
from grmcurves.grm import ReducedMultiPoly
from grmcurves.traceforms import TraceForm, reduce_form, word_to_trace_form

FAMILIES = ("5.1", "5.2a", "5.2b", "5.2c", "5.3", "5.4", "5.5")


@dataclass(frozen=True)
class FamilyParams:
    p: int
    m: int
    r: int = 1
    d: int = 1

    @property
    def half(self) -> int:
        return self.m // 2

    @property
    def size(self) -> int:
        return self.p**self.m

    def validate(self, family: str) -> FamilyParams:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if not isprime(self.p) or self.p == 2:
            raise ValueError(f"p={self.p} must be an odd prime")
        if self.m < 2 or self.m % 2:
            raise ValueError(f"m={self.m} must be a positive even integer")
        if family in ("5.1", "5.2c", "5.3", "5.5") and not 1 <= self.r <= self.half:
            raise ValueError(f"r={self.r} outside [1, {self.half}]")
        if family in ("5.3", "5.5") and self.m % self.r:
            raise ValueError(f"r={self.r} does not divide m={self.m}")
        if family in ("5.4", "5.5") and (p_half_plus_one(self) % self.d or self.d < 1):
            raise ValueError(f"d={self.d} does not divide p^(m/2)+1 = {p_half_plus_one(self)}")
        return self


def p_half_plus_one(params: FamilyParams) -> int:
    return params.p**params.half + 1


def valid_params(family: str, p: int, m: int) -> list[FamilyParams]:
    """Every admissible (r, d) for the family at (p, m)."""
    half = m // 2
    rs = [1]
    if family in ("5.1", "5.2c"):
        rs = list(range(1, half + 1))
    elif family in ("5.3", "5.5"):
        rs = [r for r in range(1, half + 1) if m % r == 0]
    ds = divisors(p**half + 1) if family in ("5.4", "5.5") else [1]
    return [FamilyParams(p, m, r, d).validate(family) for r in rs for d in ds]


@dataclass
class FamilyInstance:
    family: str
    params: FamilyParams
    curve: object  # ArtinSchreierCurve | FibreProduct | None for quotients
    report: CurveReport
    expected_genus: int
    expected_points: int

    @property
    def matches(self) -> bool:
        return (self.report.genus, self.report.n_points) == (self.expected_genus, self.expected_points)


# --- closed forms --------------------------------------------------------------

def formula_51(pr: FamilyParams) -> tuple[int, int]:
    p, m, r = pr.p, pr.m, pr.r
    return p ** (pr.half - 1) * (p**r - 1) // 2, p**m + 1 + (p**r - 1) * p ** (m - 1)


def formula_52(variant: str, pr: FamilyParams) -> tuple[int, int]:
    p, m, h = pr.p, pr.m, pr.half
    if variant == "a":
        return p ** (h - 1) * (p - 1) // 2, p**m + 1 + (p - 1) * p ** (m - 1)
    if variant == "b":
        return p**h * (p - 1) // 2, p ** (m + 1) + 1
    if variant == "c":
        return (p**pr.r - 1) * p**h // 2, p ** (pr.r + m) + 1
    raise ValueError(f"unknown variant {variant!r}")


# --- explicit models -------------------------------------------------------------

def _tower(pr: FamilyParams, tower: FieldTower | None) -> FieldTower:
    if tower is None:
        return build_tower(pr.p, 1, pr.m)
    if (tower.p, tower.e, tower.m) != (pr.p, 1, pr.m):
        raise ValueError(f"{tower} does not match F_{pr.p}^{pr.m} over F_{pr.p}")
    return tower


def relative_trace_zero(tower: FieldTower) -> list[int]:
    """F_p-basis of L = ker Tr_{p^m / p^{m/2}}."""
    return tower.trace_zero_subspace(tower.degree, tower.degree // 2)


def kernel_form(tower: FieldTower, a: int) -> TraceForm:
    """sum_{j=1}^{m/2-1} (a^{p^j} + a) x^{p^j + 1} + a x^2 (just a x^2 when m = 2)."""
    big, p, h = tower.big, tower.p, tower.m // 2
    terms = {2: a}
    for j in range(1, h):
        terms[p**j + 1] = big.add(big.pow(a, p**j), a)
    return TraceForm(tower, terms)


def norm_form(tower: FieldTower, a: int) -> TraceForm:
    """a^{p^{m/2}} x^{p^{m/2} + 1}."""
    h = tower.m // 2
    return TraceForm(tower, {tower.p**h + 1: tower.big.pow(a, tower.p**h)})


def _check_in_L(tower: FieldTower, a: int):
    if a == 0 or tower.big.relative_trace(a, tower.degree, tower.degree // 2) != 0:
        raise ValueError(f"a = {a} does not have relative trace zero")


def family_51_forms(tower: FieldTower, r: int) -> list[TraceForm]:
    """Reduced trace forms of X_1 X_i, i = 2..r+1, with a_2.. a basis of L."""
    L = relative_trace_zero(tower)
    coords = tower.complete_basis([1] + L)
    F, m = tower.small, tower.m
    X1 = ReducedMultiPoly.variable(F, m, 1)
    forms = []
    for i in range(2, r + 2):
        word = word_to_trace_form(X1 * ReducedMultiPoly.variable(F, m, i), coords, tower)
        reduced = reduce_form(word)
        if reduced.terms != kernel_form(tower, coords[i - 1]).terms or reduced.c:
            raise ConsistencyError(f"reduced word X1*X{i} is not of the expected shape: {reduced}")
        forms.append(reduced)
    return forms


def build_family_51(params: FamilyParams, tower: FieldTower | None = None) -> FamilyInstance:
    pr = params.validate("5.1")
    tw = _tower(pr, tower)
    fp = FibreProduct(family_51_forms(tw, pr.r))
    lead = tw.p ** (pr.half - 1) + 1
    for lam, g in member_genera(fp):
        if g != (tw.p - 1) * (lead - 1) // 2:
            raise ConsistencyError(f"span member {lam} lost its x^{lead} term")
    g, n = formula_51(pr)
    return FamilyInstance("5.1", pr, fp, fibre_report(fp), g, n)


def build_family_52(variant: str, params: FamilyParams, tower: FieldTower | None = None,
                    a: int | None = None) -> FamilyInstance:
    pr = params.validate("5.2" + variant)
    tw = _tower(pr, tower)
    L = relative_trace_zero(tw)
    if a is None:
        a = L[0]
    _check_in_L(tw, a)
    g, n = formula_52(variant, pr)
    if variant == "a":
        curve = ArtinSchreierCurve(kernel_form(tw, a))
        return FamilyInstance("5.2a", pr, curve, curve_report(curve), g, n)
    if variant == "b":
        curve = ArtinSchreierCurve(norm_form(tw, a))
        return FamilyInstance("5.2b", pr, curve, curve_report(curve), g, n)
    # the members have identically zero trace, so no trace-null removal
    basis = [a] + [x for x in L if x != a]
    if not tw.independent_over(basis[:pr.r], 1):
        raise ValueError("not enough independent trace-zero elements")
    fp = FibreProduct([norm_form(tw, x) for x in basis[:pr.r]], reduction="canonical")
    return FamilyInstance("5.2c", pr, fp, fibre_report(fp), g, n)


# --- quotients (invariants only) ---------------------------------------------------

def _finish(family, pr, g, n_closed) -> FamilyInstance:
    if g < 0:
        raise ConsistencyError(f"negative genus {g} for {family} at {pr}")
    size = pr.size
    if n_closed != hasse_weil(g, size):
        raise ConsistencyError(f"{family} at {pr}: {n_closed} != Hasse-Weil {hasse_weil(g, size)}")
    if not genus_bound_ok(g, size):
        raise ConsistencyError(f"{family} at {pr}: genus {g} violates the maximal-curve genus bound")
    return FamilyInstance(family, pr, None, make_report(g, n_closed, size), g, n_closed)


def _exact(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"{what}: {num}/{den} is not an integer")
    return q


def quotient_invariants_53(params: FamilyParams) -> FamilyInstance:
    """Quotient of the 5.1 curve by the involution (x, y) -> (-x, y)."""
    pr = params.validate("5.3")
    p, m, r, h = pr.p, pr.m, pr.r, pr.half
    g_cover = formula_51(pr)[0]
    # 2 g(C) - 2 = 2 (2 g' - 2) + p^r + 1
    g = _exact(2 * g_cover - 2 - (p**r + 1) + 4, 4, "Hurwitz-Zeuthen")
    closed = _exact((p ** (h - 1) - 1) * (p**r - 1), 4, "5.3 genus")
    if g != closed:
        raise ConsistencyError(f"Hurwitz-Zeuthen genus {g} != closed form {closed}")
    n = p**m + 1 + _exact((p ** (m - 1) - p**h) * (p**r - 1), 2, "5.3 points")
    return _finish("5.3", pr, g, n)


def _tame_quotient_genus(g_cover: int, d: int, fixed: int) -> int:
    # 2 g(C) - 2 = d (2 g' - 2) + (d - 1) * fixed, all ramification tame of order d
    return _exact(2 * g_cover - 2 - (d - 1) * fixed + 2 * d, 2 * d, "tame Riemann-Hurwitz")


def quotient_invariants_54(params: FamilyParams) -> FamilyInstance:
    """Quotient of a 5.2b curve by the d-th roots of unity acting on x."""
    pr = params.validate("5.4")
    p, m, d, h = pr.p, pr.m, pr.d, pr.half
    g = _exact((p**h - d + 1) * (p - 1), 2 * d, "5.4 genus")
    n = p**m + 1 + _exact((p**m - (d - 1) * p**h) * (p - 1), d, "5.4 points")
    # fixed points: the p points over x = 0 and the point at infinity
    if _tame_quotient_genus(formula_52("b", pr)[0], d, p + 1) != g:
        raise ConsistencyError(f"5.4 genus {g} inconsistent with Riemann-Hurwitz at {pr}")
    return _finish("5.4", pr, g, n)


def quotient_invariants_55(params: FamilyParams) -> FamilyInstance:
    """Quotient of a 5.2c fibre product by the d-th roots of unity."""
    pr = params.validate("5.5")
    p, m, d, r, h = pr.p, pr.m, pr.d, pr.r, pr.half
    g = _exact((p**h - d + 1) * (p**r - 1), 2 * d, "5.5 genus")
    n = p**m + 1 + _exact((p**m - (d - 1) * p**h) * (p**r - 1), d, "5.5 points")
    if _tame_quotient_genus(formula_52("c", pr)[0], d, p**r + 1) != g:
        raise ConsistencyError(f"5.5 genus {g} inconsistent with Riemann-Hurwitz at {pr}")
    return _finish("5.5", pr, g, n)


def build_family(family: str, params: FamilyParams, tower: FieldTower | None = None) -> FamilyInstance:
    if family == "5.1":
        return build_family_51(params, tower)
    if family in ("5.2a", "5.2b", "5.2c"):
        return build_family_52(family[-1], params, tower)
    if family == "5.3":
        return quotient_invariants_53(params)
    if family == "5.4":
        return quotient_invariants_54(params)
    if family == "5.5":
        return quotient_invariants_55(params)
    raise ValueError(f"unknown family {family!r}")
