"""Artin-Schreier curves y^q - y = R(x), their fibre products, and point counts.

Counting runs over x only: above x there are q affine points when
Tr_{q^m/q}(R(x)) = 0 and none otherwise, plus one point at infinity because
the degree of R is prime to p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from grmcurves.errors import ConsistencyError
from grmcurves.fields import rank
from grmcurves.traceforms import REDUCTION_MODES, TraceForm, fold_constant, reduce_form

SPAN_CAP = 2**16


class ArtinSchreierCurve:
    """The smooth projective curve y^q - y = R(x) over the tower's top field."""

    def __init__(self, form: TraceForm):
        form = fold_constant(form)
        deg = form.degree
        if deg < 1:
            raise ValueError(f"R = {form} has no positive-degree term")
        if deg % form.tower.p == 0:
            raise ValueError(f"deg R = {deg} is divisible by p = {form.tower.p}")
        self.form = form
        self.tower = form.tower

    @classmethod
    def from_reduced(cls, form: TraceForm, mode: str = "full") -> ArtinSchreierCurve:
        return cls(reduce_form(form, mode))

    @property
    def degree(self) -> int:
        return self.form.degree

    def zero_mask(self):
        return self.tower.trace_table[self.form.R_values()] == 0

    def __repr__(self):
        return f"ArtinSchreierCurve(y^{self.tower.q} - y = {self.form.terms})"


def genus(c: ArtinSchreierCurve) -> int:
    q = c.tower.q
    return (q - 1) * (c.degree - 1) // 2


def count_points(c: ArtinSchreierCurve) -> int:
    return c.tower.q * int(c.zero_mask().sum()) + 1


def weight_point_check(c: ArtinSchreierCurve, w: int) -> bool:
    """Does word weight w match  w = q^m - (N - 1)/q  for this curve?"""
    N = count_points(c)
    q, size = c.tower.q, c.tower.size
    affine, rem = divmod(N - 1, q)
    if rem:
        raise ConsistencyError(f"(N - 1) = {N - 1} not divisible by q = {q}")
    return w == size - affine


def hasse_weil(g: int, size: int) -> int:
    """size + 1 + g * floor(2 sqrt(size)); exact 2g sqrt(size) for square sizes."""
    return size + 1 + g * math.isqrt(4 * size)


def is_square(n: int) -> bool:
    return math.isqrt(n) ** 2 == n


def genus_bound_ok(g: int, size: int) -> bool:
    """Genus condition for maximal curves: g <= (sqrt q - 1)^2 / 4 or g = (q - sqrt q)/2."""
    root = math.isqrt(size)
    if root * root != size:
        raise ValueError(f"{size} is not a square")
    return 4 * g <= (root - 1) ** 2 or 2 * g == size - root


@dataclass(frozen=True)
class CurveReport:
    genus: int
    n_points: int
    tau: int
    hw_bound: int
    maximal: bool

    def as_dict(self) -> dict:
        return asdict(self)


def make_report(g: int, n_points: int, size: int) -> CurveReport:
    bound = hasse_weil(g, size)
    if n_points > bound:
        raise ConsistencyError(f"{n_points} points exceed the Hasse-Weil bound {bound} for g={g}")
    maximal = is_square(size) and n_points == bound
    report = CurveReport(g, n_points, size + 1 - n_points, bound, maximal)
    if maximal:
        maximality_check(report, size)
    return report


def maximality_check(report: CurveReport, size: int) -> bool:
    if not is_square(size):
        raise ValueError(f"maximality is only defined here for square field sizes, got {size}")
    maximal = report.n_points == hasse_weil(report.genus, size)
    if maximal and not genus_bound_ok(report.genus, size):
        raise ConsistencyError(f"maximal curve of genus {report.genus} violates the genus bound over F_{size}")
    return maximal


def curve_report(c: ArtinSchreierCurve) -> CurveReport:
    return make_report(genus(c), count_points(c), c.tower.size)


class FibreProduct:
    """Normalized fibre product over the x-line of curves y_i^q - y_i = R_i(x).

    ``reduction`` is the pipeline mode applied to every span member before its
    genus is read off (see ``reduce_form``).
    """

    def __init__(self, members, reduction: str = "full"):
        members = [m if isinstance(m, ArtinSchreierCurve) else ArtinSchreierCurve(m) for m in members]
        if not members:
            raise ValueError("empty fibre product")
        tower = members[0].tower
        if any(m.tower is not tower for m in members):
            raise ValueError("members over different towers")
        if reduction not in REDUCTION_MODES:
            raise ValueError(f"unknown reduction mode {reduction!r}")
        self.members = members
        self.tower = tower
        self.reduction = reduction
        if reduction == "full":
            if rank([m.form.values() for m in members], tower.small) != len(members):
                raise ValueError("member trace forms are linearly dependent")
        else:
            # trace-null members all have zero values; test the reduced forms instead
            for lam, form in self.span_members():
                if reduce_form(form, reduction).degree < 1:
                    raise ValueError(f"span member {lam} reduces to a constant")

    @property
    def r(self) -> int:
        return len(self.members)

    @property
    def basis_forms(self) -> list[TraceForm]:
        return [m.form for m in self.members]

    def span_members(self, cap: int = SPAN_CAP):
        """Yield (lambda, sum lambda_i R_i) over nonzero lambda in F_q^r."""
        q = self.tower.q
        if q**self.r > cap:
            raise ValueError(f"span of size {q}^{self.r} exceeds cap {cap}")
        for lam in itertools.product(range(q), repeat=self.r):
            if not any(lam):
                continue
            total = TraceForm(self.tower, {}, 0)
            for c, form in zip(lam, self.basis_forms):
                if c:
                    total = total + form.scale(c)
            yield lam, total

    def __repr__(self):
        return f"FibreProduct(r={self.r}, tower={self.tower!r})"


def fibre_count_points(fp: FibreProduct) -> int:
    mask = np.ones(fp.tower.size, dtype=bool)
    for m in fp.members:
        mask &= m.zero_mask()
    return fp.tower.q**fp.r * int(mask.sum()) + 1


def _member_points(form: TraceForm) -> int:
    tw = form.tower
    return tw.q * int((form.values() == 0).sum()) + 1


def fibre_tau_aggregate(fp: FibreProduct, cap: int = SPAN_CAP) -> int:
    """Trace of Frobenius from the span: (q-1) tau_D = sum of member taus."""
    tw = fp.tower
    total = sum(tw.size + 1 - _member_points(form) for _, form in fp.span_members(cap))
    tau, rem = divmod(total, tw.q - 1)
    if rem:
        raise ConsistencyError(f"member trace sum {total} not divisible by q - 1 = {tw.q - 1}")
    direct = tw.size + 1 - fibre_count_points(fp)
    if tau != direct:
        raise ConsistencyError(f"aggregated tau {tau} differs from the direct count {direct}")
    return tau


def member_genera(fp: FibreProduct, cap: int = SPAN_CAP) -> list[tuple[tuple[int, ...], int]]:
    """(lambda, genus of the reduced span member) for every nonzero lambda."""
    out = []
    for lam, form in fp.span_members(cap):
        try:
            curve = ArtinSchreierCurve.from_reduced(form, fp.reduction)
        except ValueError as exc:
            raise ValueError(f"span member {lam} does not reduce to a curve: {exc}") from exc
        out.append((lam, genus(curve)))
    return out


def fibre_genus_aggregate(fp: FibreProduct, cap: int = SPAN_CAP) -> int:
    """(q-1) g(C_D) = sum of the genera of the nonzero span members."""
    total = sum(g for _, g in member_genera(fp, cap))
    g, rem = divmod(total, fp.tower.q - 1)
    if rem:
        raise ConsistencyError(f"member genus sum {total} not divisible by q - 1 = {fp.tower.q - 1}")
    return g


def fibre_report(fp: FibreProduct, cap: int = SPAN_CAP) -> CurveReport:
    n = fibre_count_points(fp)
    fibre_tau_aggregate(fp, cap)
    return make_report(fibre_genus_aggregate(fp, cap), n, fp.tower.size)


def subcode_points(w: int, size: int, q: int, r: int) -> int:
    """Point count of the fibre product attached to an r-dim subcode of weight w."""
    return (size - w) * q**r + 1


def subcode_weight_from_points(n_points: int, size: int, q: int, r: int) -> int:
    affine, rem = divmod(n_points - 1, q**r)
    if rem:
        raise ConsistencyError(f"(N - 1) = {n_points - 1} not divisible by q^r = {q**r}")
    return size - affine
