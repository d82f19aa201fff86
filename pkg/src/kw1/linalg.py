"""Exact linear algebra over Fraction, F_p, and F_{p^e}.

Three backends share one interface:

* rationals: plain Fraction elimination (small matrices only);
* prime fields: numpy int64 matrices reduced mod p, with vectorized
  row operations (this is the hot path for center computations);
* extensions: elementwise FFElem elimination, plus a rank routine that
  embeds F_{p^e} entries as e x e multiplication matrices over F_p and
  reuses the vectorized path, which is much faster for large matrices.

All results are exact; there is no floating point.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import GF, FFElem, QQ

_BLOCK_RANK_THRESHOLD = 2000  # entry count above which extension ranks go blocked


# ---------------------------------------------------------------------------
# prime field backend (numpy)
# ---------------------------------------------------------------------------

def to_modp_array(rows, p: int) -> np.ndarray:
    """Rows of ints / FFElem (e == 1) / Fraction to an int64 array mod p."""
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, FFElem):
                r.append(x.coeffs[0] % p)
            elif isinstance(x, Fraction):
                r.append((x.numerator * pow(x.denominator, -1, p)) % p)
            else:
                r.append(int(x) % p)
        out.append(r)
    if not out:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def rref_modp(a: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        block = m[r:, c]
        nz = np.nonzero(block)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_modp(a: np.ndarray, p: int) -> int:
    return len(rref_modp(a, p)[1])


def nullspace_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace basis, one vector per row."""
    rows, cols = a.shape
    r, pivots = rref_modp(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, c])) % p
    return basis


def solve_modp(a: np.ndarray, b: np.ndarray, p: int):
    """Particular solution of a x = b with free variables set to zero.

    Returns None when the system is inconsistent.  The solution is the
    canonical echelon-form representative: coordinates at non-pivot
    columns vanish, so the answer is deterministic.
    """
    rows, cols = a.shape
    aug = np.concatenate([a % p, (b % p).reshape(rows, 1)], axis=1)
    r, pivots = rref_modp(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols]
    return x


# ---------------------------------------------------------------------------
# generic field backend (lists of FFElem)
# ---------------------------------------------------------------------------

def rref_ff(rows, field: GF):
    m = [list(row) for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_ff(rows, field: GF) -> int:
    return len(rref_ff(rows, field)[1])


def nullspace_ff(rows, field: GF):
    if not rows:
        return []
    ncols = len(rows[0])
    r, pivots = rref_ff(rows, field)
    pivset = set(pivots)
    basis = []
    for c in range(ncols):
        if c in pivset:
            continue
        v = [field.zero] * ncols
        v[c] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][c]
        basis.append(v)
    return basis


def solve_ff(rows, b, field: GF):
    aug = [list(row) + [bb] for row, bb in zip(rows, b)]
    ncols = len(rows[0]) if rows else 0
    r, pivots = rref_ff(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = r[i][ncols]
    return x


def rank_ext_blocked(rows, field: GF) -> int:
    """Rank over F_{p^e} via the regular representation over F_p.

    Each entry a becomes the e x e matrix of multiplication by a; the
    F_p-rank of the blown-up matrix is e times the F_{p^e}-rank.
    """
    if not rows:
        return 0
    e = field.e
    nrows, ncols = len(rows), len(rows[0])
    big = np.zeros((nrows * e, ncols * e), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, a in enumerate(row):
            if a:
                big[i * e:(i + 1) * e, j * e:(j + 1) * e] = field.mul_matrix(a)
    r = rank_modp(big, field.p)
    assert r % e == 0
    return r // e


# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

def rank_fractions(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


# ---------------------------------------------------------------------------
# dispatching wrappers
# ---------------------------------------------------------------------------

def rank(rows, field) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if field is QQ or getattr(field, "is_rational", False):
        return rank_fractions(rows)
    if field.e == 1:
        return rank_modp(to_modp_array(rows, field.p), field.p)
    if len(rows) * len(rows[0]) >= _BLOCK_RANK_THRESHOLD:
        return rank_ext_blocked(rows, field)
    return rank_ff(rows, field)


def nullspace(rows, field):
    """Right nullspace basis as lists of field elements."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    if field is QQ or getattr(field, "is_rational", False):
        raise NotImplementedError("rational nullspace is not needed")
    if field.e == 1:
        basis = nullspace_modp(to_modp_array(rows, field.p), field.p)
        return [[field.from_int(int(x)) for x in v] for v in basis]
    return nullspace_ff(rows, field)


def solve(rows, b, field):
    """Canonical particular solution of rows . x = b, or None."""
    rows = [list(r) for r in rows]
    if field is QQ or getattr(field, "is_rational", False):
        raise NotImplementedError("rational solve is not needed")
    if field.e == 1:
        x = solve_modp(to_modp_array(rows, field.p), to_modp_array([b], field.p)[0], field.p)
        if x is None:
            return None
        return [field.from_int(int(v)) for v in x]
    return solve_ff(rows, list(b), field)
