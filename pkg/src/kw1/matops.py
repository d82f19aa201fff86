"""Matrix backends for module splitting.

Two interchangeable implementations of the same small interface: a
vectorized numpy backend for prime fields (the hot path) and an
elementwise FFElem backend for extensions.  Vectors are 1-D, matrices
2-D, and modules use the column convention: the action sends v to A.v.

Echelon states are kept in full reduced row echelon form with a pivot
list, so submodule restriction and quotient coordinates can be read off
entries directly.  The prime backend stores the echelon rows as one
growing matrix and reduces new vectors with a single matrix product.
"""

from __future__ import annotations

import random

import numpy as np

from . import fastpoly, linalg
from .fields import GF
from .polys import pfactor


class PrimeEchelon:
    """Full-RREF basis over F_p, rows held in one int64 matrix."""

    __slots__ = ("p", "matrix", "pivots")

    def __init__(self, p, width):
        self.p = p
        self.matrix = np.zeros((0, width), dtype=np.int64)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    @property
    def rows(self):
        return self.matrix

    def reduce(self, v):
        v = v % self.p
        if self.pivots:
            coeffs = v[self.pivots]
            if coeffs.any():
                v = (v - coeffs @ self.matrix) % self.p
        return v

    def insert(self, v):
        """Insert if independent; returns pivot column or None."""
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return None
        piv = int(nz[0])
        v = (v * pow(int(v[piv]), -1, self.p)) % self.p
        if self.pivots:
            col = self.matrix[:, piv].copy()
            if col.any():
                self.matrix = (self.matrix - np.outer(col, v)) % self.p
        self.matrix = np.vstack([self.matrix, v[None, :]])
        self.pivots.append(piv)
        return piv


class ExtEchelon:
    """Full-RREF basis over an extension field, elementwise."""

    __slots__ = ("field", "rows", "pivots")

    def __init__(self, field, width):
        self.field = field
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, v):
        v = list(v)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def insert(self, v):
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return None
        inv = v[piv].inverse()
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[i] = [x - c * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return piv


class PrimeOps:
    """numpy int64 matrices reduced mod p."""

    def __init__(self, field: GF):
        assert field.e == 1
        self.field = field
        self.p = field.p

    def from_rows(self, rows):
        return np.array(
            [[int(x) % self.p for x in row] for row in rows], dtype=np.int64
        )

    def identity(self, d):
        return np.eye(d, dtype=np.int64)

    def matmul(self, a, b):
        return (a @ b) % self.p

    def matvec(self, a, v):
        return (a @ v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def scale(self, a, c):
        return (a * (int(c) % self.p)) % self.p

    def transpose(self, a):
        return a.T.copy()

    def column(self, a, j):
        return a[:, j].copy()

    def random_scalar(self, rng: random.Random):
        return rng.randrange(self.p)

    def random_vector(self, d, rng: random.Random):
        return np.array([rng.randrange(self.p) for _ in range(d)], dtype=np.int64)

    def vec_is_zero(self, v):
        return not v.any()

    def stack(self, vectors):
        return np.array([np.asarray(v) for v in vectors], dtype=np.int64)

    def new_echelon(self, width):
        return PrimeEchelon(self.p, width)

    def nullspace(self, a):
        basis = linalg.nullspace_modp(np.asarray(a, dtype=np.int64), self.p)
        return [basis[i] for i in range(basis.shape[0])]

    def nullity(self, a):
        return a.shape[1] - linalg.rank_modp(np.asarray(a, dtype=np.int64), self.p)

    def poly_eval(self, coeffs, r):
        """Matrix polynomial by Horner; coeffs little endian ints."""
        d = r.shape[0]
        acc = np.zeros((d, d), dtype=np.int64)
        eye = np.eye(d, dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc @ r) % self.p
            ci = int(c) % self.p
            if ci:
                acc = (acc + ci * eye) % self.p
        return acc

    def krylov_minpoly(self, r, v):
        """Minimal polynomial of v under r, little-endian int coefficients.

        Maintains the Krylov echelon in full RREF, applying the same
        row operations to the combination matrix, so each stored row is
        a recorded linear combination of the Krylov vectors and the
        first dependence yields the monic minimal polynomial directly.
        """
        p = self.p
        d = r.shape[0]
        matrix = np.zeros((0, d), dtype=np.int64)
        pivots: list[int] = []
        combos = np.zeros((0, d + 1), dtype=np.int64)
        cur = v % p
        k = 0
        while True:
            combo = np.zeros(d + 1, dtype=np.int64)
            combo[k] = 1
            w = cur % p
            if pivots:
                coeffs = w[pivots]
                if coeffs.any():
                    w = (w - coeffs @ matrix) % p
                    combo = (combo - coeffs @ combos) % p
            nz = np.nonzero(w)[0]
            if nz.size == 0:
                return [int(c) for c in combo[: k + 1]]
            piv = int(nz[0])
            inv = pow(int(w[piv]), -1, p)
            w = (w * inv) % p
            combo = (combo * inv) % p
            if pivots:
                col = matrix[:, piv].copy()
                if col.any():
                    matrix = (matrix - np.outer(col, w)) % p
                    combos = (combos - np.outer(col, combo)) % p
            matrix = np.vstack([matrix, w[None, :]])
            pivots.append(piv)
            combos = np.vstack([combos, combo[None, :]])
            cur = (r @ cur) % p
            k += 1

    def iter_factors(self, coeffs, rng: random.Random):
        """Distinct irreducible factors of a polynomial, smallest degree first."""
        f = fastpoly.from_ints(coeffs, self.p)
        for irr in fastpoly.iter_irreducible_factors(f, self.p, rng):
            yield [int(c) for c in irr]


class ExtOps:
    """Elementwise FFElem matrices for extension fields."""

    def __init__(self, field: GF):
        self.field = field

    def from_rows(self, rows):
        f = self.field
        return [
            [x if getattr(x, "field", None) is f else f.embed(x) for x in row]
            for row in rows
        ]

    def identity(self, d):
        f = self.field
        return [[f.one if i == j else f.zero for j in range(d)] for i in range(d)]

    def matmul(self, a, b):
        f = self.field
        n, inner, m = len(a), len(b), len(b[0])
        out = [[f.zero] * m for _ in range(n)]
        for i in range(n):
            ai = a[i]
            oi = out[i]
            for k in range(inner):
                c = ai[k]
                if c:
                    bk = b[k]
                    for j in range(m):
                        if bk[j]:
                            oi[j] = oi[j] + c * bk[j]
        return out

    def matvec(self, a, v):
        f = self.field
        out = []
        for row in a:
            acc = f.zero
            for c, x in zip(row, v):
                if c and x:
                    acc = acc + c * x
            out.append(acc)
        return out

    def add(self, a, b):
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def scale(self, a, c):
        return [[x * c for x in row] for row in a]

    def transpose(self, a):
        return [list(col) for col in zip(*a)]

    def column(self, a, j):
        return [row[j] for row in a]

    def random_scalar(self, rng):
        return self.field.random(rng)

    def random_vector(self, d, rng):
        return [self.field.random(rng) for _ in range(d)]

    def vec_is_zero(self, v):
        return not any(v)

    def stack(self, vectors):
        return [list(v) for v in vectors]

    def new_echelon(self, width):
        return ExtEchelon(self.field, width)

    def nullspace(self, a):
        return linalg.nullspace_ff(a, self.field)

    def nullity(self, a):
        return len(a[0]) - linalg.rank_ff(a, self.field)

    def poly_eval(self, coeffs, r):
        f = self.field
        d = len(r)
        acc = [[f.zero] * d for _ in range(d)]
        ident = self.identity(d)
        for c in reversed(coeffs):
            acc = self.matmul(acc, r)
            cc = c if getattr(c, "field", None) is f else f.embed(c)
            if cc:
                acc = [
                    [x + cc * e for x, e in zip(row, irow)]
                    for row, irow in zip(acc, ident)
                ]
        return acc

    def krylov_minpoly(self, r, v):
        f = self.field
        d = len(r)
        rows = []
        pivots = []
        combos = []
        cur = list(v)
        k = 0
        while True:
            combo = [f.zero] * (d + 1)
            combo[k] = f.one
            w = list(cur)
            for row, piv, cmb in zip(rows, pivots, combos):
                c = w[piv]
                if c:
                    w = [x - c * y for x, y in zip(w, row)]
                    combo = [x - c * y for x, y in zip(combo, cmb)]
            piv = next((i for i, x in enumerate(w) if x), None)
            if piv is None:
                return combo[: k + 1]
            inv = w[piv].inverse()
            rows.append([x * inv for x in w])
            pivots.append(piv)
            combos.append([x * inv for x in combo])
            cur = self.matvec(r, cur)
            k += 1

    def iter_factors(self, coeffs, rng: random.Random):
        f = self.field
        poly = tuple(
            c if getattr(c, "field", None) is f else f.embed(c) for c in coeffs
        )
        items = pfactor(poly, f, rng)
        for irr, _mult in items:
            yield list(irr)


def ops_for(field: GF):
    return PrimeOps(field) if field.e == 1 else ExtOps(field)
