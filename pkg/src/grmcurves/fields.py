"""Finite fields with integer-coded elements and the tower F_p < F_q < F_{q^m}.

An element of F_{p^n} is the integer sum(c_i * p**i) where c_0..c_{n-1} are its
coordinates in the power basis of the defining polynomial.  Multiplication goes
through exp/log tables of a primitive element, addition through base-p digits.
Scalar methods (``add``, ``mul``, ...) take and return Python ints; the ``*_v``
variants broadcast over numpy arrays.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import factorint, isprime

ENUMERATION_CAP = 2**20


# --- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _pmod(a, mod, p):
    a = list(a)
    n = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for k in range(len(a) - 1, n - 1, -1):
        c = (a[k] * inv_lead) % p
        if c:
            for i in range(n + 1):
                a[k - n + i] = (a[k - n + i] - c * mod[i]) % p
    return _trim(a[:max(n, 1)])


def _pmulmod(a, b, mod, p):
    return _pmod(_pmul(a, b, p), mod, p)


def _ppowmod(a, k, mod, p):
    result = [1]
    base = _pmod(a, mod, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        k >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b != [0]:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Rabin's test for a monic polynomial given lowest coefficient first."""
    poly = _trim(list(poly))
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    frob = {}
    for k in range(1, n + 1):
        h = _ppowmod(h, p, poly, p)
        frob[k] = h
    if _trim(frob[n]) != x:
        return False
    for ell in factorint(n):
        diff = list(frob[n // ell]) + [0] * 2
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(poly, _trim(diff), p)) > 1:
            return False
    return True


def _has_root(coeffs, r, p):
    acc = 1
    for c in reversed(coeffs):
        acc = (acc * r + c) % p
    return acc == 0


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Candidates are ordered by their coefficient vector (c_0, c_1, ..., c_{n-1})
    with the constant term most significant.
    """
    for coeffs in itertools.product(range(p), repeat=n):
        if n > 1 and (coeffs[0] == 0 or any(_has_root(coeffs, r, p) for r in range(1, p))):
            continue
        poly = list(coeffs) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")


# --- the field itself --------------------------------------------------------

class GaloisField:
    """The finite field F_{p^n} defined by a monic irreducible ``modulus``."""

    def __init__(self, p: int, n: int = 1, modulus=None, cap: int = ENUMERATION_CAP):
        if not isprime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        if p**n > cap:
            raise ValueError(f"field size {p}^{n} exceeds the enumeration cap {cap}")
        self.p = p
        self.n = n
        self.order = p**n
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {n}")
        self.modulus = modulus
        self._pw = p ** np.arange(n, dtype=np.int64)
        self._build_tables()

    def __repr__(self):
        return f"GaloisField({self.p}, {self.n}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __call__(self, code: int) -> FieldElement:
        code = int(code)
        if not 0 <= code < self.order:
            raise ValueError(f"{code} is not an element code of F_{self.p}^{self.n}")
        return FieldElement(self, code)

    # digit conversions ------------------------------------------------------
    def to_digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.n):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def from_digits(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + int(d) % self.p
        return v

    def _build_tables(self):
        p, n, N = self.p, self.n, self.order
        self.digits = (np.arange(N, dtype=np.int64)[:, None] // self._pw) % p
        self.generator = self._find_primitive()
        exp = np.zeros(N - 1, dtype=np.int64)
        gd = self.to_digits(self.generator)
        cur = [1]
        block = min(N - 1, 4096)
        for i in range(block):
            exp[i] = self.from_digits(cur)
            cur = _pmulmod(cur, gd, self.modulus, p)
        step = _trim(cur)
        start = block
        while start < N - 1:
            prev = self.digits[exp[start - block:start]]
            nxt = self._vec_mulmod(prev, step)
            stop = min(start + block, N - 1)
            exp[start:stop] = (nxt @ self._pw)[: stop - start]
            start = stop
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(N - 1, dtype=np.int64)
        self.exp = exp
        self.log = log
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()

    def _vec_mulmod(self, A, b):
        p, n = self.p, self.n
        b = list(b) + [0] * (n - len(b))
        prod = np.zeros((A.shape[0], 2 * n - 1), dtype=np.int64)
        for j, bj in enumerate(b):
            if bj:
                prod[:, j:j + n] += A * bj
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[:, k].copy()
            prod[:, k - n:k + 1] = (prod[:, k - n:k + 1] - c[:, None] * mod) % p
        return prod[:, :n]

    def _find_primitive(self) -> int:
        N1 = self.order - 1
        primes = list(factorint(N1)) if N1 > 1 else []
        for g in range(1, self.order):
            gd = self.to_digits(g)
            if all(_trim(_ppowmod(gd, N1 // ell, self.modulus, self.p)) != [1] for ell in primes):
                return g
        raise RuntimeError("no primitive element")  # pragma: no cover

    # scalar arithmetic --------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.n == 1:
            return (a + b) % p
        out, k = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * k
            a //= p
            b //= p
            k *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, k = 0, 1
        while a:
            out += ((-(a % p)) % p) * k
            a //= p
            k *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_l[(self._log_l[a] + self._log_l[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp_l[(-self._log_l[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return self._exp_l[(self._log_l[a] * k) % (self.order - 1)]

    def scalar(self, k: int) -> int:
        """Image of the integer k in the prime field."""
        return k % self.p

    # vectorized arithmetic ----------------------------------------------------
    # full tables for small orders make the *_v ops a single gather
    @cached_property
    def _add_table(self):
        if self.order > 729:
            return None
        els = np.arange(self.order)
        return (((self.digits[els][:, None] + self.digits[els][None, :]) % self.p) @ self._pw).ravel()

    def add_v(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.n == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return np.take(self._add_table, a * self.order + b)
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._pw

    def neg_v(self, a):
        a = np.asarray(a)
        if self.n == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p) @ self._pw

    def sub_v(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.n == 1:
            return (a - b) % self.p
        return ((self.digits[a] - self.digits[b]) % self.p) @ self._pw

    @cached_property
    def _mul_table(self):
        if self.order > 729:
            return None
        els = np.arange(self.order)
        prod = self.exp[(self.log[els][:, None] + self.log[els][None, :]) % (self.order - 1)]
        prod[0, :] = prod[:, 0] = 0
        return prod.ravel()

    def mul_v(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self._mul_table is not None:
            return np.take(self._mul_table, a * self.order + b)
        s = self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, s)

    def pow_v(self, a, k: int):
        a = np.asarray(a)
        if k == 0:
            return np.ones_like(a)
        s = self.exp[(self.log[a] * k) % (self.order - 1)]
        return np.where(a == 0, 0, s)

    def sum_v(self, arrays):
        """Field sum of a sequence of equally shaped arrays."""
        arrays = list(arrays)
        if not arrays:
            raise ValueError("empty sum")
        if self.n == 1:
            return sum(np.asarray(x, dtype=np.int64) for x in arrays) % self.p
        acc = sum(self.digits[np.asarray(x)] for x in arrays)
        return (acc % self.p) @ self._pw

    # structure ------------------------------------------------------------------
    @cached_property
    def elements_array(self):
        return np.arange(self.order, dtype=np.int64)

    def subfield_mask(self, k: int):
        """Boolean mask of the elements lying in the subfield F_{p^k}."""
        if self.n % k:
            raise ValueError(f"F_{self.p}^{k} is not a subfield of F_{self.p}^{self.n}")
        step = (self.order - 1) // (self.p**k - 1)
        mask = self.log % step == 0
        mask[0] = True
        return mask

    def in_subfield(self, x: int, k: int) -> bool:
        if self.n % k:
            raise ValueError(f"F_{self.p}^{k} is not a subfield of F_{self.p}^{self.n}")
        return x == 0 or self._log_l[x] % ((self.order - 1) // (self.p**k - 1)) == 0

    def subfield_generator(self, k: int) -> int:
        return self._exp_l[((self.order - 1) // (self.p**k - 1)) % (self.order - 1)]

    def relative_trace(self, x: int, from_deg: int, to_deg: int) -> int:
        if from_deg % to_deg or self.n % from_deg:
            raise ValueError(f"invalid field pair ({from_deg}, {to_deg})")
        s = self.p**to_deg
        out, y = 0, x
        for _ in range(from_deg // to_deg):
            out = self.add(out, y)
            y = self.pow(y, s)
        return out

    def relative_trace_v(self, x, from_deg: int, to_deg: int):
        if from_deg % to_deg or self.n % from_deg:
            raise ValueError(f"invalid field pair ({from_deg}, {to_deg})")
        s = self.p**to_deg
        return self.sum_v(self.pow_v(x, s**j) for j in range(from_deg // to_deg))


class FieldElement:
    """Convenience wrapper giving operator syntax to an integer-coded element."""

    __slots__ = ("field", "value")

    def __init__(self, field: GaloisField, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.to_digits(self.value))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        # plain ints act as prime-field scalars
        return self.field.scalar(int(other))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"<{self.value}>"


# --- linear algebra over a GaloisField --------------------------------------

def rref(rows, field: GaloisField):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = np.array(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(len(rows), -1)
    M = M.copy()
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, col])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = field.mul_v(M[r], field.inv(int(M[r, col])))
        for i in range(nrows):
            c = int(M[i, col])
            if i != r and c:
                M[i] = field.sub_v(M[i], field.mul_v(M[r], c))
        pivots.append(col)
        r += 1
    return M, pivots


def rank(rows, field: GaloisField) -> int:
    if len(rows) == 0:
        return 0
    return len(rref(rows, field)[1])


def inverse(matrix, field: GaloisField):
    M = np.array(matrix, dtype=np.int64)
    k = M.shape[0]
    if M.shape != (k, k):
        raise ValueError("matrix is not square")
    aug = np.concatenate([M, np.eye(k, dtype=np.int64)], axis=1)
    R, piv = rref(aug, field)
    if piv[:k] != list(range(k)):
        raise ValueError("matrix is singular")
    return R[:, k:]


# --- the tower ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldTower:
    """F_p < F_q = F_{p^e} < F_{q^m}, with F_q realized inside the top field.

    Subfields are selected by their degree over F_p: 1 for F_p, ``e`` for F_q,
    ``e*m`` for the top field.  ``small`` is F_q in its own model (codeword
    symbols live there), ``big`` is F_{q^m}; ``embed``/``restrict`` move between
    them.  ``alpha_enumeration`` lists F_q in the order used by the minimum
    weight subcode construction.
    """

    p: int
    e: int
    m: int
    small: GaloisField
    big: GaloisField
    theta: int
    alpha_enumeration: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def size(self) -> int:
        return self.big.order

    @property
    def degree(self) -> int:
        return self.e * self.m

    @property
    def modulus_big(self) -> tuple[int, ...]:
        return self.big.modulus

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m}, modulus={self.big.modulus})"

    @cached_property
    def embed_table(self):
        powers = [self.big.pow(self.theta, i) for i in range(self.e)]
        table = []
        for v in range(self.q):
            acc = 0
            for d, t in zip(self.small.to_digits(v), powers):
                acc = self.big.add(acc, self.big.mul(d % self.p, t) if d else 0)
            table.append(acc)
        return np.array(table, dtype=np.int64)

    @cached_property
    def restrict_table(self):
        table = np.full(self.size, -1, dtype=np.int64)
        table[self.embed_table] = np.arange(self.q, dtype=np.int64)
        return table

    def embed(self, v: int) -> int:
        """F_q (small model) into the top field."""
        return int(self.embed_table[v])

    def restrict(self, x: int) -> int:
        """Top-field element known to lie in F_q, back to the small model."""
        v = int(self.restrict_table[x])
        if v < 0:
            raise ValueError(f"{x} does not lie in F_{self.q}")
        return v

    def _check_subfield(self, k: int):
        if k < 1 or self.degree % k:
            raise ValueError(f"F_{self.p}^{k} is not a subfield of F_{self.p}^{self.degree}")

    # traces and Frobenius ---------------------------------------------------------
    def trace_to(self, x: int, target: int) -> int:
        """Trace from the top field to the subfield of degree ``target`` over F_p."""
        self._check_subfield(target)
        return self.big.relative_trace(x, self.degree, target)

    def tr(self, x: int) -> int:
        """Tr_{q^m/q}(x) as an element of the small model of F_q."""
        return self.restrict(self.trace_to(x, self.e))

    @cached_property
    def trace_table(self):
        """Tr_{q^m/q} of every top-field element, as small-model ints."""
        t = self.big.relative_trace_v(self.big.elements_array, self.degree, self.e)
        return self.restrict_table[t]

    def frobenius(self, x: int, j: int, base: int) -> int:
        """x^(s^j) where s = p^base is the size of the base field."""
        self._check_subfield(base)
        return self.big.pow(x, (self.p**base) ** j)

    # linear structure -------------------------------------------------------------
    def independent_over(self, elements, base: int) -> bool:
        """True iff ``elements`` are linearly independent over F_{p^base}."""
        self._check_subfield(base)
        elements = [int(x) for x in elements]
        if len(elements) * base > self.degree:
            return False
        gamma = self.big.subfield_generator(base)
        beta = [self.big.pow(gamma, i) for i in range(base)]
        rows = [self.big.to_digits(self.big.mul(x, b)) for x in elements for b in beta]
        return rank(rows, self._prime_field) == len(rows)

    @cached_property
    def _prime_field(self) -> GaloisField:
        return GaloisField(self.p, 1)

    def subfield_elements(self, k: int) -> list[int]:
        self._check_subfield(k)
        return np.nonzero(self.big.subfield_mask(k))[0].tolist()

    def trace_zero_subspace(self, source: int, target: int) -> list[int]:
        """F_p-basis of the kernel of the relative trace F_{p^source} -> F_{p^target}.

        Greedy scan in element order, so the basis is deterministic.
        """
        self._check_subfield(source)
        if source % target:
            raise ValueError(f"F_{self.p}^{target} is not a subfield of F_{self.p}^{source}")
        basis: list[int] = []
        rows: list[list[int]] = []
        want = source - target
        for x in self.subfield_elements(source):
            if len(basis) == want:
                break
            if x == 0 or self.big.relative_trace(x, source, target) != 0:
                continue
            cand = rows + [self.big.to_digits(x)]
            if rank(cand, self._prime_field) == len(cand):
                rows = cand
                basis.append(x)
        return basis

    def complete_basis(self, partial, base: int | None = None) -> list[int]:
        """Extend an independent list to a basis of the top field over F_{p^base}."""
        base = self.e if base is None else base
        basis = [int(x) for x in partial]
        if not self.independent_over(basis, base):
            raise ValueError("partial basis is dependent")
        for x in range(1, self.size):
            if len(basis) * base == self.degree:
                break
            if self.independent_over(basis + [x], base):
                basis.append(x)
        return basis

    def standard_basis(self) -> list[int]:
        """Greedy F_q-basis of the top field (the power basis when e = 1)."""
        return self.complete_basis([1])

    def dual_basis(self, basis) -> list[int]:
        """Trace-dual basis {a_j} with Tr_{q^m/q}(a_j b_k) = delta_jk."""
        basis = [int(b) for b in basis]
        if len(basis) != self.m or not self.independent_over(basis, self.e):
            raise ValueError("input is not an F_q-basis of the top field")
        gram = [[self.tr(self.big.mul(bj, bk)) for bk in basis] for bj in basis]
        ginv = inverse(gram, self.small)
        dual = []
        for j in range(self.m):
            acc = 0
            for ell in range(self.m):
                acc = self.big.add(acc, self.big.mul(self.embed(int(ginv[j, ell])), basis[ell]))
            dual.append(acc)
        return dual

    def element(self, value: int) -> FieldElement:
        return FieldElement(self.big, value)


def build_tower(p: int, e: int = 1, m: int = 1, alpha_order="desc", cap: int = ENUMERATION_CAP) -> FieldTower:
    """Deterministic tower F_p < F_{p^e} < F_{p^(e*m)}.

    ``alpha_order`` is "desc" (default), "asc", or an explicit permutation of
    range(p**e) giving the enumeration of F_q.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1 or m < 1:
        raise ValueError("extension degrees must be positive")
    if p ** (e * m) > cap:
        raise ValueError(f"field size {p}^{e * m} exceeds the enumeration cap {cap}")
    small = GaloisField(p, e, cap=cap)
    big = GaloisField(p, e * m, cap=cap)
    theta = None
    for x in range(big.order):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, x), c)
        if acc == 0:
            theta = x
            break
    if theta is None:  # pragma: no cover
        raise RuntimeError("no root of the F_q modulus in the top field")
    q = p**e
    if alpha_order == "desc":
        alpha = tuple(range(q - 1, -1, -1))
    elif alpha_order == "asc":
        alpha = tuple(range(q))
    else:
        alpha = tuple(int(a) for a in alpha_order)
        if sorted(alpha) != list(range(q)):
            raise ValueError("alpha enumeration must be a permutation of F_q")
    return FieldTower(p, e, m, small, big, theta, alpha)
