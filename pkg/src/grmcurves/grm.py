"""Generalized Reed-Muller codes R_q(s, m) via evaluation at all of F_q^m.

Codewords are numpy int arrays of length q^m over the small model of F_q.
Point v = (v_1, ..., v_m) of F_q^m sits at index sum(v_j * q**(m-j)), so v_1 is
the most significant coordinate and coordinates run over element codes 0..q-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from grmcurves.errors import ConsistencyError
from grmcurves.fields import FieldTower, GaloisField, rank

SPAN_CAP = 2**16


def _reduce_exponent(i: int, q: int) -> int:
    # x^i as a function on F_q: exponents >= q fold back into [1, q-1]
    if i < q:
        return i
    return (i - 1) % (q - 1) + 1


@dataclass(eq=False)
class ReducedMultiPoly:
    """Polynomial in m variables over F_q with every exponent below q.

    ``terms`` maps exponent tuples to nonzero coefficient codes of ``field``.
    """

    field: GaloisField
    m: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        q = self.field.order
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(int(i) for i in exps)
            if len(exps) != self.m:
                raise ValueError(f"exponent tuple {exps} has wrong length for m={self.m}")
            if any(i < 0 or i >= q for i in exps):
                raise ValueError(f"exponent tuple {exps} is not reduced (q={q})")
            if c:
                clean[exps] = int(c)
        self.terms = clean

    @property
    def q(self) -> int:
        return self.field.order

    @classmethod
    def constant(cls, field: GaloisField, m: int, c: int = 1) -> ReducedMultiPoly:
        return cls(field, m, {(0,) * m: c})

    @classmethod
    def variable(cls, field: GaloisField, m: int, j: int) -> ReducedMultiPoly:
        """The coordinate X_j, counted from 1."""
        if not 1 <= j <= m:
            raise ValueError(f"variable index {j} out of range")
        exps = [0] * m
        exps[j - 1] = 1
        return cls(field, m, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other):
        if not isinstance(other, ReducedMultiPoly):
            other = ReducedMultiPoly.constant(self.field, self.m, int(other) % self.field.p)
        if other.field != self.field or other.m != self.m:
            raise ValueError("polynomials over different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = F.add(terms.get(e, 0), c)
        return ReducedMultiPoly(F, self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return ReducedMultiPoly(self.field, self.m, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F, q = self.field, self.q
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(_reduce_exponent(a + b, q) for a, b in zip(e1, e2))
                terms[e] = F.add(terms.get(e, 0), F.mul(c1, c2))
        return ReducedMultiPoly(F, self.m, terms)

    __rmul__ = __mul__

    def scale(self, c: int) -> ReducedMultiPoly:
        return ReducedMultiPoly(self.field, self.m, {e: self.field.mul(c, v) for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, ReducedMultiPoly):
            return NotImplemented
        return self.field == other.field and self.m == other.m and self.terms == other.terms

    def __call__(self, point) -> int:
        F = self.field
        acc = 0
        for exps, c in self.terms.items():
            t = c
            for x, i in zip(point, exps):
                t = F.mul(t, F.pow(int(x), i))
            acc = F.add(acc, t)
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                f"X{j + 1}" if i == 1 else f"X{j + 1}^{i}" for j, i in enumerate(exps) if i
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def reduce_poly(raw: dict, field: GaloisField, m: int) -> ReducedMultiPoly:
    """Reduce a polynomial with arbitrary exponents modulo (X_j^q - X_j).

    ``raw`` maps exponent tuples to coefficient codes; coefficients of colliding
    monomials are added.
    """
    q = field.order
    terms: dict = {}
    for exps, c in raw.items():
        e = tuple(_reduce_exponent(int(i), q) for i in exps)
        terms[e] = field.add(terms.get(e, 0), int(c))
    return ReducedMultiPoly(field, m, terms)


def point_columns(field: GaloisField, m: int) -> np.ndarray:
    """Array of shape (m, q^m): row j holds coordinate X_{j+1} of every point."""
    q = field.order
    idx = np.arange(q**m, dtype=np.int64)
    return np.stack([(idx // q ** (m - 1 - j)) % q for j in range(m)])


def evaluate_at(f: ReducedMultiPoly, columns) -> np.ndarray:
    """Evaluate f at the points whose coordinates are given column-wise."""
    F = f.field
    columns = np.asarray(columns)
    if columns.shape[0] != f.m:
        raise ValueError("coordinate columns do not match the number of variables")
    out = np.zeros(columns.shape[1], dtype=np.int64)
    for exps, c in f.terms.items():
        t = np.full(columns.shape[1], c, dtype=np.int64)
        for j, i in enumerate(exps):
            if i:
                t = F.mul_v(t, F.pow_v(columns[j], i))
        out = F.add_v(out, t)
    return out


def evaluate(f: ReducedMultiPoly, tower: FieldTower) -> np.ndarray:
    """The codeword beta(f) = (f(v))_{v in F_q^m}."""
    if f.field != tower.small or f.m != tower.m:
        raise ValueError(f"polynomial over F_{f.q} in {f.m} variables does not match {tower}")
    return evaluate_at(f, point_columns(tower.small, tower.m))


def word_weight(c) -> int:
    return int(np.count_nonzero(c))


def monomials(q: int, m: int, s: int):
    """Reduced exponent tuples of total degree at most s, lexicographic."""
    return [e for e in itertools.product(range(q), repeat=m) if sum(e) <= s]


def code_dimension(q: int, m: int, s: int) -> int:
    return len(monomials(q, m, s))


def generator_words(tower: FieldTower, s: int) -> list[np.ndarray]:
    """Monomial basis of R_q(s, m) evaluated to codewords."""
    F, m = tower.small, tower.m
    cols = point_columns(F, m)
    return [evaluate_at(ReducedMultiPoly(F, m, {e: 1}), cols) for e in monomials(F.order, m, s)]


@dataclass(eq=False)
class SubcodeBasis:
    """r linearly independent codewords over ``field``."""

    words: list
    field: GaloisField

    def __post_init__(self):
        self.words = [np.asarray(w, dtype=np.int64) for w in self.words]
        if not self.words:
            raise ValueError("empty basis")
        n = len(self.words[0])
        if any(len(w) != n for w in self.words):
            raise ValueError("codewords of different lengths")
        if rank(self.words, self.field) != len(self.words):
            raise ValueError("dependent basis")

    @property
    def r(self) -> int:
        return len(self.words)

    @property
    def length(self) -> int:
        return len(self.words[0])

    def span(self, cap: int = SPAN_CAP):
        """Yield (coefficients, word) for every element of the span."""
        F, q = self.field, self.field.order
        if q**self.r > cap:
            raise ValueError(f"span of size {q}^{self.r} exceeds cap {cap}")
        for lam in itertools.product(range(q), repeat=self.r):
            acc = np.zeros(self.length, dtype=np.int64)
            for c, w in zip(lam, self.words):
                if c:
                    acc = F.add_v(acc, F.mul_v(w, c))
            yield lam, acc


def subcode_support_weight(D: SubcodeBasis) -> int:
    """Number of coordinates where some word of the subcode is nonzero."""
    support = np.zeros(D.length, dtype=bool)
    for w in D.words:
        support |= w != 0
    return int(support.sum())


def subcode_weight_by_sum(D: SubcodeBasis, cap: int = SPAN_CAP) -> int:
    """Support weight via the average word weight over the whole span."""
    q, r = D.field.order, D.r
    total = sum(word_weight(w) for _, w in D.span(cap))
    denom = q**r - q ** (r - 1)
    w, rem = divmod(total, denom)
    if rem:
        raise ConsistencyError(f"weight sum {total} not divisible by {denom}")
    return w


def weight_distribution(D: SubcodeBasis, cap: int = SPAN_CAP) -> dict[int, int]:
    """Weight -> number of nonzero span words of that weight."""
    out: dict[int, int] = {}
    for lam, w in D.span(cap):
        if any(lam):
            k = word_weight(w)
            out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))
