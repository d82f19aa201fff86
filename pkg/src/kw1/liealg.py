"""Lie algebra presentations, reduction mod p, p-maps, and the index.

A presentation is a basis together with sparse antisymmetric structure
constants over exact rationals; only brackets [x_i, x_j] with i < j are
stored.  Reduction mod p produces a modular algebra over F_p, on which
a restricted p-power map is computed by solving ad(y) = (ad x_i)^p for
each basis element.  The index is estimated by randomized evaluation of
the alternating matrix chi([x_i, x_j]) and is exact with Schwartz-Zippel
confidence (it is always an upper bound witness: dim minus an attained
rank).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DenominatorDivisibleByP, NotRestrictable
from .fields import GF, QQ, prime_field, galois_field
from .util import derive_seed, sz_extension_degree


def _normalize_constants(constants, n):
    out = {}
    for (i, j), comp in constants.items():
        if not (0 <= i < j < n):
            raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < n")
        comp = {k: v for k, v in comp.items() if v}
        for k in comp:
            if not 0 <= k < n:
                raise ValueError(f"component index {k} out of range")
        if comp:
            out[(i, j)] = comp
    return out


class LieAlgebraPresentation:
    """Basis labels plus sparse structure constants over the rationals."""

    def __init__(self, name, labels, constants, pmap_override=None):
        self.name = name
        self.labels = tuple(labels)
        self.constants = _normalize_constants(
            {k: {i: Fraction(v) for i, v in comp.items()} for k, comp in constants.items()},
            len(self.labels),
        )
        # optional user-supplied p-map table, kept as rationals and
        # reduced at base-change time
        self.pmap_override = (
            None
            if pmap_override is None
            else {i: dict(row) for i, row in pmap_override.items()}
        )
        self.field = QQ
        self._pbw_memo = {}

    @property
    def n(self):
        return len(self.labels)

    def bracket(self, i, j):
        """[x_i, x_j] as a sparse map k -> scalar, any order of i, j."""
        if i == j:
            return {}
        if i < j:
            return self.constants.get((i, j), {})
        return {k: -v for k, v in self.constants.get((j, i), {}).items()}

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebraPresentation)
            and self.name == other.name
            and self.labels == other.labels
            and self.constants == other.constants
            and self.pmap_override == other.pmap_override
        )

    def __repr__(self):
        return f"LieAlgebraPresentation({self.name!r}, dim={self.n})"


@dataclass(frozen=True)
class RestrictedStructure:
    """p-map table: row i gives the coordinates of x_i^[p]."""

    rows: tuple

    def vector(self, i):
        return self.rows[i]


class ModularLieAlgebra:
    """A presentation base-changed to F_p, optionally with a p-map.

    Structure constants always live in the prime field; extensions
    F_{p^e} only enter through evaluation points, so ``e`` records the
    declared ambient extension degree without changing the constants.
    """

    def __init__(self, name, labels, p, constants, e=1, restricted=None):
        self.name = name
        self.labels = tuple(labels)
        self.p = p
        self.e = e
        self.field = prime_field(p)
        self.constants = _normalize_constants(constants, len(self.labels))
        self.restricted = restricted
        self._pbw_memo = {}
        self._signature = (
            p,
            self.labels,
            tuple(sorted((k, tuple(sorted((i, c.coeffs) for i, c in v.items())))
                         for k, v in self.constants.items())),
        )

    @property
    def n(self):
        return len(self.labels)

    def bracket(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.constants.get((i, j), {})
        return {k: -v for k, v in self.constants.get((j, i), {}).items()}

    def signature(self) -> int:
        """Stable identifier of (constants, p) for seed derivation."""
        return derive_seed("alg", self._signature)

    def __repr__(self):
        return f"ModularLieAlgebra({self.name!r}, p={self.p}, dim={self.n})"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _bracket_element_bracket(ctx, comp, l):
    """[sum_k comp_k x_k, x_l] as a sparse map."""
    out = {}
    for k, c in comp.items():
        for m, d in ctx.bracket(k, l).items():
            v = out.get(m, None)
            v = c * d if v is None else v + c * d
            if v:
                out[m] = v
            elif m in out:
                del out[m]
    return out


def jacobi_defect(ctx, i, j, l):
    """[[x_i,x_j],x_l] + [[x_j,x_l],x_i] + [[x_l,x_i],x_j], sparse."""
    total = {}
    for (a, b, c) in ((i, j, l), (j, l, i), (l, i, j)):
        inner = ctx.bracket(a, b)
        for m, v in _bracket_element_bracket(ctx, inner, c).items():
            w = total.get(m, None)
            w = v if w is None else w + v
            if w:
                total[m] = w
            elif m in total:
                del total[m]
    return total


def validate_presentation(ctx):
    """All violated Jacobi triples with their defect vectors.

    Empty list means the presentation is a Lie algebra.  Works for both
    rational presentations and modular algebras.
    """
    n = ctx.n
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                defect = jacobi_defect(ctx, i, j, l)
                if defect:
                    violations.append((i, j, l, defect))
    return violations


# ---------------------------------------------------------------------------
# base change and restricted structure
# ---------------------------------------------------------------------------

def base_change_mod_p(pres: LieAlgebraPresentation, p: int, e: int = 1) -> ModularLieAlgebra:
    """Reduce all structure constants into F_p; Jacobi is re-validated.

    Raises DenominatorDivisibleByP when some constant has denominator
    divisible by p, the signal that p is too small for this presentation.
    """
    fp = prime_field(p)
    constants = {}
    for key, comp in pres.constants.items():
        constants[key] = {k: fp.from_rational(v) for k, v in comp.items()}
    alg = ModularLieAlgebra(pres.name, pres.labels, p, constants, e=e)
    bad = validate_presentation(alg)
    if bad:
        raise AssertionError(f"Jacobi broke after reduction mod {p}: {bad[:3]}")
    return alg


def ad_matrix(ctx, i):
    """Rows of the n x n matrix of ad(x_i): entry [l][j] = coeff of x_l in [x_i, x_j]."""
    n = ctx.n
    zero = ctx.field.zero
    rows = [[zero] * n for _ in range(n)]
    for j in range(n):
        for l, c in ctx.bracket(i, j).items():
            rows[l][j] = c
    return rows


def ad_matrix_of_vector(ctx, coeffs):
    n = ctx.n
    zero = coeffs[0] - coeffs[0] if coeffs else ctx.field.zero
    rows = [[zero] * n for _ in range(n)]
    for k, c in enumerate(coeffs):
        if not c:
            continue
        for j in range(n):
            for l, d in ctx.bracket(k, j).items():
                rows[l][j] = rows[l][j] + c * d
    return rows


def _mat_mul(a, b, zero):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(inner):
            c = ai[k]
            if c:
                bk = b[k]
                row = out[i]
                for j in range(m):
                    if bk[j]:
                        row[j] = row[j] + c * bk[j]
    return out


def _mat_pow(a, k, field):
    n = len(a)
    result = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    base = a
    while k:
        if k & 1:
            result = _mat_mul(result, base, field.zero)
        base = _mat_mul(base, base, field.zero)
        k >>= 1
    return result


def _solve_inner_derivation(alg: ModularLieAlgebra, target, work_field=None):
    """Solve sum_k y_k ad(x_k) = target for y, canonical representative.

    The solution is a coset of the center; row reduction with free
    variables pinned to zero picks the minimal-support representative,
    which makes the p-map deterministic.  Returns None if not inner.
    """
    field = work_field or alg.field
    n = alg.n
    ads = [ad_matrix(alg, k) for k in range(n)]
    rows = []
    rhs = []
    for a in range(n):
        for b in range(n):
            rows.append([field.embed(ads[k][a][b]) if field is not alg.field else ads[k][a][b]
                         for k in range(n)])
            rhs.append(target[a][b])
    return linalg.solve(rows, rhs, field)


def compute_p_map(alg: ModularLieAlgebra) -> RestrictedStructure:
    """Solve ad(y) = (ad x_i)^p for every basis element.

    When the center is nontrivial the solution is only a coset; the
    echelon-form representative with zero free coordinates is chosen, so
    repeated runs agree.  Raises NotRestrictable when some (ad x_i)^p is
    not an inner derivation.
    """
    rows = []
    for i in range(alg.n):
        target = _mat_pow(ad_matrix(alg, i), alg.p, alg.field)
        y = _solve_inner_derivation(alg, target)
        if y is None:
            raise NotRestrictable(i, alg.labels[i])
        rows.append(tuple(y))
    return RestrictedStructure(rows=tuple(rows))


def p_map_override_to_structure(alg: ModularLieAlgebra, override) -> RestrictedStructure:
    """Reduce a rational override table {label: {label: rational}} mod p."""
    idx = {lbl: i for i, lbl in enumerate(alg.labels)}
    rows = []
    for i, lbl in enumerate(alg.labels):
        vec = [alg.field.zero] * alg.n
        for tgt, val in override.get(lbl, {}).items():
            vec[idx[tgt]] = alg.field.from_rational(Fraction(val))
        rows.append(tuple(vec))
    return RestrictedStructure(rows=tuple(rows))


def verify_restricted(alg: ModularLieAlgebra, rs: RestrictedStructure) -> bool:
    """Exact check of ad(x_i^[p]) == (ad x_i)^p for every i."""
    for i in range(alg.n):
        lhs = ad_matrix_of_vector(alg, list(rs.vector(i)))
        rhs = _mat_pow(ad_matrix(alg, i), alg.p, alg.field)
        if any(lhs[a][b] != rhs[a][b] for a in range(alg.n) for b in range(alg.n)):
            return False
    return True


def with_p_map(alg: ModularLieAlgebra, override=None) -> ModularLieAlgebra:
    """Return a copy of ``alg`` carrying a verified restricted structure."""
    if override is not None:
        rs = p_map_override_to_structure(alg, override)
        if not verify_restricted(alg, rs):
            raise NotRestrictable(-1, "user override fails ad(x^[p]) = (ad x)^p")
    else:
        rs = compute_p_map(alg)
        assert verify_restricted(alg, rs)
    return ModularLieAlgebra(
        alg.name, alg.labels, alg.p, alg.constants, e=alg.e, restricted=rs
    )


def p_power_of_vector(alg: ModularLieAlgebra, coeffs):
    """Canonical solve of ad(y) = (ad v)^p for v given by ``coeffs``.

    Coefficients may live in an extension of F_p; the same echelon
    solve is used, so the result is semilinear on commuting pairs.
    """
    work_field = coeffs[0].field
    embedded = [work_field.embed(c) if c.field is not work_field else c for c in coeffs]
    target = _mat_pow(
        [[work_field.embed(x) for x in row] for row in ad_matrix_of_vector(alg, embedded)],
        alg.p,
        work_field,
    )
    y = _solve_inner_derivation(alg, target, work_field=work_field)
    if y is None:
        raise NotRestrictable(-1, "vector")
    return y


# ---------------------------------------------------------------------------
# index
# ---------------------------------------------------------------------------

def _chi_matrix(ctx, chi, zero):
    """Alternating matrix (chi([x_i, x_j]))."""
    n = ctx.n
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = zero
            for k, c in ctx.bracket(i, j).items():
                v = v + c * chi[k]
            rows[i][j] = v
            rows[j][i] = -v
    return rows


def index_generic(obj, trials: int = 3, seed: int = 0) -> int:
    """dim g minus the best rank of chi([x_i,x_j]) over sampled chi.

    Besides ``trials`` random functionals, the all-ones and coordinate
    functionals are always evaluated.  Over F_p the random points are
    drawn from an extension large enough for Schwartz-Zippel confidence;
    over the rationals small random integers are used.  The result is an
    upper bound on the index that is exact with overwhelming probability.
    """
    n = obj.n
    rng = random.Random(derive_seed("index", seed, getattr(obj, "p", 0), n))
    best = 0
    if obj.field is QQ:
        evals = [[Fraction(1)] * n]
        evals += [[Fraction(1 if k == i else 0) for k in range(n)] for i in range(n)]
        evals += [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(trials)]
        for chi in evals:
            b = _chi_matrix(obj, chi, Fraction(0))
            best = max(best, linalg.rank_fractions(b))
    else:
        p = obj.p
        e = sz_extension_degree(p, n, n)
        ext = galois_field(p, e, seed=derive_seed("index-field", p, e))
        evals = [[ext.one] * n]
        evals += [[ext.one if k == i else ext.zero for k in range(n)] for i in range(n)]
        evals += [[ext.random(rng) for _ in range(n)] for _ in range(trials)]
        for chi in evals:
            b = _chi_matrix(obj, chi, ext.zero)
            best = max(best, linalg.rank(b, ext))
    return n - best
