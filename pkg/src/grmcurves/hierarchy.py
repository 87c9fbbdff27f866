"""Generalized Hamming weights of R_q(s, m).

The minimum weight subcode construction takes the first r exponent tuples of
Q^m = {0..q-1}^m (lexicographic, i_1 most significant) whose degree is at least
m(q-1) - s and turns each into a product of affine linear factors.  The closed
formula reads the r-th tuple as a base-q number and adds one.

``ghw_bruteforce`` is the independent check: it never looks at exponent tuples,
only at the code.
"""

from __future__ import annotations

import itertools

import numpy as np

from grmcurves.errors import ConsistencyError
from grmcurves.fields import FieldTower, GaloisField, rank
from grmcurves.grm import ReducedMultiPoly, SubcodeBasis, code_dimension, evaluate, subcode_support_weight

BRUTE_CAP = 10**7


def _check_params(q: int, m: int, s: int):
    if m < 1 or q < 2:
        raise ValueError("need q >= 2 and m >= 1")
    if not 0 <= s <= m * (q - 1):
        raise ValueError(f"order s={s} outside [0, {m * (q - 1)}]")


def first_r_sigmas(q: int, m: int, s: int, r: int) -> list[tuple[int, ...]]:
    _check_params(q, m, s)
    if r < 1:
        raise ValueError("r must be positive")
    threshold = m * (q - 1) - s
    selected = []
    for sigma in itertools.product(range(q), repeat=m):
        if sum(sigma) >= threshold:
            selected.append(sigma)
            if len(selected) == r:
                return selected
    raise ValueError(f"only {len(selected)} tuples of degree >= {threshold}; r={r} too large")


def sigma_to_poly(sigma, tower: FieldTower) -> ReducedMultiPoly:
    """prod_j prod_{t > i_j} (X_j - alpha_t) over the tower's alpha enumeration."""
    F, m, q = tower.small, tower.m, tower.q
    if len(sigma) != m or any(not 0 <= i < q for i in sigma):
        raise ValueError(f"{sigma} is not in Q^{m}")
    f = ReducedMultiPoly.constant(F, m)
    for j, i in enumerate(sigma, start=1):
        X = ReducedMultiPoly.variable(F, m, j)
        for t in range(i + 1, q):
            f = f * (X - ReducedMultiPoly.constant(F, m, tower.alpha_enumeration[t]))
    return f


def d_r_formula(q: int, m: int, s: int, r: int) -> int:
    sigma = first_r_sigmas(q, m, s, r)[-1]
    return 1 + sum(sigma[m - j] * q ** (j - 1) for j in range(1, m + 1))


def subcode_from_sigmas(sigmas, tower: FieldTower) -> SubcodeBasis:
    return SubcodeBasis([evaluate(sigma_to_poly(sg, tower), tower) for sg in sigmas], tower.small)


def hp_min_subcode(tower: FieldTower, s: int, r: int) -> SubcodeBasis:
    """An r-dimensional subcode of R_q(s, m) of minimum support weight."""
    q, m = tower.q, tower.m
    sigmas = first_r_sigmas(q, m, s, r)
    try:
        D = subcode_from_sigmas(sigmas, tower)
    except ValueError as exc:
        raise ConsistencyError(f"basis from {sigmas} is dependent") from exc
    w, expected = subcode_support_weight(D), d_r_formula(q, m, s, r)
    if w != expected:
        raise ConsistencyError(f"support weight {w} differs from d_{r} = {expected}")
    return D


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspaces(k: int, r: int, q: int):
    """Each r-dimensional subspace of F_q^k once, as its reduced echelon rows.

    Rows are tuples of ints in 0..q-1 (field element codes).
    """
    for pivots in itertools.combinations(range(k), r):
        pivot_set = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, k) if j not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * k for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(row) for row in rows)


def _support_masks(words, F: GaloisField) -> list[int]:
    # support bitmask of every combination, indexed by sum(c_i * q**i)
    k, n, q = len(words), len(words[0]), F.order
    combos = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        # block c holds old + c * word_i, i.e. index old + c * q**i
        combos = np.concatenate([F.add_v(combos, F.mul_v(words[i], c)) for c in range(q)], axis=0)
    nz = combos != 0
    packed = np.packbits(nz, axis=1)
    return [int.from_bytes(row.tobytes(), "big") for row in packed]


def _ghw_subspaces(words, F: GaloisField, r: int, cap: int) -> int:
    k, q = len(words), F.order
    count = gaussian_binomial(k, r, q)
    if count > cap:
        raise ValueError(f"{count} subspaces exceed the brute-force cap {cap}")
    if q**k > cap:
        raise ValueError(f"{q}^{k} span vectors exceed the brute-force cap {cap}")
    masks = _support_masks(words, F)
    weights = [q**i for i in range(k)]
    best = None
    for rows in iter_subspaces(k, r, q):
        acc = 0
        for row in rows:
            acc |= masks[sum(c * w for c, w in zip(row, weights))]
        w = acc.bit_count()
        if best is None or w < best:
            best = w
    return best


def _ghw_zero_sets(words, F: GaloisField, r: int, cap: int) -> int:
    # d_r = n - max{|S| : the words vanishing on S form a space of dim >= r}
    k, n = len(words), len(words[0])
    if 2**n > cap:
        raise ValueError(f"2^{n} coordinate subsets exceed the brute-force cap {cap}")
    G = np.array(words, dtype=np.int64)
    for size in range(n - r, -1, -1):
        for S in itertools.combinations(range(n), size):
            if k - rank(G[:, list(S)], F) >= r:
                return n - size
    raise ConsistencyError("no subcode found")  # pragma: no cover


def _ghw_words(words, F: GaloisField, r: int, cap: int) -> int:
    """Branch and bound over subcodes, each reached once through its greedy basis.

    Lines of the span are sorted by zero count; a subcode's greedy basis takes
    the first line not yet spanned at every step, so a partial basis is only
    extended when no newly spanned line sorts before the new basis vector.
    Cheap for r <= 3 on spans of ~10^5 lines; the tree grows fast beyond that.
    """
    k, n, q = len(words), len(words[0]), F.order
    if q**k > cap:
        raise ValueError(f"{q}^{k} span vectors exceed the brute-force cap {cap}")
    G = np.array(words, dtype=np.int64)
    weights = q ** np.arange(k)
    digits = (np.arange(q**k)[:, None] // weights) % q
    leads = digits[np.arange(q**k), np.argmax(digits != 0, axis=1)]
    vecs = digits[leads == 1]  # one representative per line, first nonzero digit 1
    span = np.zeros((len(vecs), n), dtype=np.int64)
    for i in range(k):
        span = F.add_v(span, F.mul_v(vecs[:, i : i + 1], G[i]))
    zeros = span == 0
    nz = zeros.sum(axis=1)
    order = np.argsort(-nz, kind="stable")
    zeros, nz, vecs = zeros[order], nz[order], vecs[order]
    neg_nz = -nz  # ascending, for searchsorted
    position = np.empty(q**k, dtype=np.int64)
    position[vecs @ weights] = np.arange(len(vecs))
    inv = np.array([0] + [F.inv(a) for a in range(1, q)])
    best = -1
    add_t = np.array([[F.add(a, b) for b in range(q)] for a in range(q)])
    mul_t = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)])
    lams = np.arange(q)[:, None, None]

    def line_positions(us):
        lead = inv[us[np.arange(len(us)), np.argmax(us != 0, axis=1)]]
        return position[mul_t[lead[:, None], us] @ weights]

    def shifted(t, old, lo):
        # old + lam * vecs[t] for lam = lo..q-1, stacked
        return add_t[old[None], mul_t[lams[lo:], vecs[t]]].reshape(-1, k)

    dense = zeros.astype(np.float32)  # zero counts of Z & z as one mat-vec

    def extends(t, old):
        # is vecs[t] independent of, and greedy-minimal over, the span rows ``old``?
        fresh = shifted(t, old, 1)
        return fresh.any(axis=1).all() and line_positions(fresh).min() >= t

    def search(start, Z, old):
        nonlocal best
        stop = int(np.searchsorted(neg_nz, -best, side="left"))  # lines with nz > best
        if stop <= start:
            return
        counts = (dense[start:stop] @ Z.astype(np.float32)).astype(np.int64)
        last = len(old) * q == q**r
        cand = np.nonzero(counts > best)[0]
        if last:
            cand = cand[np.argsort(-counts[cand], kind="stable")]
        for i in cand:
            if counts[i] <= best:
                if last:
                    break
                continue
            t = start + int(i)
            if not extends(t, old):
                continue
            if last:
                best = int(counts[i])
                break
            search(t + 1, Z & zeros[t], shifted(t, old, 0))

    search(0, np.ones(n, dtype=bool), np.zeros((1, k), dtype=np.int64))
    return n - best


def ghw_bruteforce(code, r: int, field: GaloisField | None = None, method: str = "auto", cap: int = BRUTE_CAP) -> int:
    """Exact d_r of the code spanned by ``code`` (a SubcodeBasis or list of words).

    ``method`` is "subspaces" (scan every r-dimensional subcode in echelon form),
    "zero-sets" (scan coordinate sets S and test dim{c : c|_S = 0} >= r),
    "words" (branch and bound over intersections of zero sets of span words),
    or "auto", which takes subspaces when that count is small, then words for
    r <= 3, then zero-sets, then words.
    """
    if isinstance(code, SubcodeBasis):
        words, field = code.words, code.field
    else:
        if field is None:
            raise ValueError("field required for a plain list of words")
        words = SubcodeBasis(code, field).words
    k, n, q = len(words), len(words[0]), field.order
    if not 1 <= r <= k:
        raise ValueError(f"r={r} outside [1, {k}]")
    if method == "auto":
        # zero-sets pays a Python rank per subset, words a numpy pass per span line
        if gaussian_binomial(k, r, q) <= min(2**n, cap) and q**k <= cap:
            method = "subspaces"
        elif q**k <= cap and r <= 3:
            method = "words"
        elif 2**n <= cap:
            method = "zero-sets"
        else:
            method = "words"
    if method == "subspaces":
        return _ghw_subspaces(words, field, r, cap)
    if method == "zero-sets":
        return _ghw_zero_sets(words, field, r, cap)
    if method == "words":
        return _ghw_words(words, field, r, cap)
    raise ValueError(f"unknown method {method!r}")


def weight_hierarchy(q: int, m: int, s: int) -> list[int]:
    """d_1, ..., d_k of R_q(s, m) by the closed formula."""
    return [d_r_formula(q, m, s, r) for r in range(1, code_dimension(q, m, s) + 1)]
