"""The p-center, degree-bounded centers, ranks, and the KW1 verdict.

The enveloping algebra of a restricted Lie algebra is a free module of
rank p^n over the central subalgebra generated by xi_i = x_i^p - x_i^[p];
``zp_coordinates`` computes coordinates in that module by repeatedly
left-factoring p-th powers out of PBW monomials.  Ranks of submodules
over the fraction field of the p-center are obtained by specializing
the formal xi variables at random points of a large enough extension
(three tries, maximum rank), so every reported rank is an attained
lower bound that equals the true rank with Schwartz-Zippel confidence.

``center_basis_bounded`` is an exact nullspace computation: the span of
PBW monomials of bounded degree is stable under all [x_i, -], and the
kernel of the stacked commutator maps is the degree slice of the
center.  ``kw1_verdict`` ties everything together.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from math import comb

import numpy as np

from . import linalg
from .errors import (
    CentralityFailure,
    DegreeBoundTooLargeForMemory,
    StabilizationNotReached,
    WeightMismatch,
    ZeroElement,
)
from .fields import galois_field, prime_field, render_poly_modp
from .liealg import ModularLieAlgebra, index_generic
from .pbw import (
    SymPoly,
    UEElement,
    _accumulate,
    _mono_times_letter,
    _mono_times_mono,
    pbw_bracket,
    principal_symbol,
    semi_invariant_weight,
    ue_gen,
    ue_monomial,
    ue_one,
)
from .util import deglex_key, derive_seed, monomial_count, monomials_upto, sz_extension_degree

MONOMIAL_CAP = 20000
RANK_TRIALS = 3
PRODUCT_ROUNDS = 3


# ---------------------------------------------------------------------------
# p-center generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PCenterGenerators:
    """The elements xi_i = x_i^p - x_i^[p], in PBW normal form."""

    xi: tuple


def p_center_generators(alg: ModularLieAlgebra) -> PCenterGenerators:
    """Build all xi_i and verify their centrality exactly.

    A failure means the p-map table is wrong (bad override or internal
    bug), so it is raised rather than returned.
    """
    if alg.restricted is None:
        raise ValueError("algebra carries no restricted structure")
    n = alg.n
    gens = []
    for i in range(n):
        mono = tuple(alg.p if k == i else 0 for k in range(n))
        xi = ue_monomial(alg, mono)
        for l, c in enumerate(alg.restricted.vector(i)):
            if c:
                xi = xi - ue_gen(alg, l).scale(c)
        gens.append(xi)
    for i, xi in enumerate(gens):
        for j in range(n):
            if not pbw_bracket(ue_gen(alg, j), xi).is_zero():
                raise CentralityFailure(i, j)
        sym = principal_symbol(xi)
        assert sym == SymPoly.monomial(
            alg.field, n, tuple(alg.p if k == i else 0 for k in range(n))
        )
    return PCenterGenerators(xi=tuple(gens))


# ---------------------------------------------------------------------------
# coordinates over the p-center
# ---------------------------------------------------------------------------

class ZpCoordinateVector:
    """Coordinates of an element in the free module over the p-center.

    ``coordinates`` maps reduced monomials (all exponents < p) to
    commutative polynomials in the formal variables xi_0..xi_{n-1}.
    Substituting xi_i -> x_i^p - x_i^[p] and expanding reproduces the
    original element exactly (tested as the reassembly invariant).
    """

    __slots__ = ("alg", "coordinates")

    def __init__(self, alg, coordinates):
        self.alg = alg
        self.coordinates = coordinates

    def reassemble(self) -> UEElement:
        alg = self.alg
        gens = p_center_generators(alg).xi
        total = None
        for mono, poly in self.coordinates.items():
            base = ue_monomial(alg, mono)
            for xi_exps, c in poly.terms.items():
                term = base.scale(c)
                for i, a in enumerate(xi_exps):
                    for _ in range(a):
                        term = term * gens[i]
                total = term if total is None else total + term
        return total if total is not None else UEElement(alg, {})

    def specialize(self, point):
        """Evaluate all xi polynomials at a tuple of field elements."""
        return {mono: poly.evaluate(point) for mono, poly in self.coordinates.items()}

    def max_xi_degree(self) -> int:
        degs = [poly.total_degree for poly in self.coordinates.values()
                if not poly.is_zero()]
        return max(degs) if degs else 0


def zp_coordinates(a: UEElement, alg: ModularLieAlgebra) -> ZpCoordinateVector:
    """Eliminate every exponent >= p by the rewrite x_i^p = xi_i + x_i^[p].

    The substitution always targets the leftmost block of p letters of
    the offending variable; since xi_i is central it factors out, and
    the p-map remainder is restraightened with the PBW engine.  Each
    substitution strictly drops the total degree, so this terminates.
    """
    if alg.restricted is None:
        raise ValueError("algebra carries no restricted structure")
    n = alg.n
    p = alg.p
    zero_xi = (0,) * n
    work = [(zero_xi, mono, c) for mono, c in a.terms.items()]
    out: dict = {}
    while work:
        xi_exps, mono, coeff = work.pop()
        hot = next((i for i in range(n) if mono[i] >= p), None)
        if hot is None:
            bucket = out.setdefault(mono, {})
            _accumulate(bucket, xi_exps, coeff)
            continue
        # split x^mono = prefix . x_hot^p . remainder
        prefix = tuple(mono[k] if k < hot else 0 for k in range(n))
        remainder = tuple(
            mono[k] - (p if k == hot else 0) if k >= hot else 0 for k in range(n)
        )
        # central substitution term: xi_hot pulled out front
        new_xi = tuple(x + (1 if k == hot else 0) for k, x in enumerate(xi_exps))
        reduced = tuple(x - (p if k == hot else 0) for k, x in enumerate(mono))
        work.append((new_xi, reduced, coeff))
        # p-map remainder term: prefix * x_l * remainder, restraightened
        for l, cl in enumerate(alg.restricted.vector(hot)):
            if not cl:
                continue
            for m1, c1 in _mono_times_letter(alg, prefix, l).items():
                for m2, c2 in _mono_times_mono(alg, m1, remainder).items():
                    work.append((xi_exps, m2, coeff * cl * c1 * c2))
    coords = {
        mono: SymPoly(alg.field, n, bucket)
        for mono, bucket in out.items()
        if any(bucket.values())
    }
    coords = {m: poly for m, poly in coords.items() if not poly.is_zero()}
    return ZpCoordinateVector(alg, coords)


# ---------------------------------------------------------------------------
# degree-bounded center
# ---------------------------------------------------------------------------

@dataclass
class CenterBasis:
    """Canonical basis of the degree <= D slice of the center."""

    degree_bound: int
    elements: tuple
    stabilized: bool
    _rank_cache: dict = dfield(default_factory=dict, repr=False, compare=False)


def _center_space(alg: ModularLieAlgebra, bound: int, cap: int = MONOMIAL_CAP):
    """Exact nullspace of the stacked commutator maps on degree <= bound."""
    n = alg.n
    count = monomial_count(n, bound)
    if count > cap:
        raise DegreeBoundTooLargeForMemory(count, cap)
    monos = sorted(monomials_upto(n, bound), key=deglex_key, reverse=True)
    index = {m: k for k, m in enumerate(monos)}
    p = alg.p
    # operator rows: for each generator i and target monomial m', the
    # coefficient of m' in [x_i, x^m]; brackets do not raise the degree
    mat = np.zeros((n * count, count), dtype=np.int64)
    gens = [ue_gen(alg, i) for i in range(n)]
    for col, m in enumerate(monos):
        elem = ue_monomial(alg, m)
        for i in range(n):
            br = pbw_bracket(gens[i], elem)
            for m2, c in br.terms.items():
                mat[i * count + index[m2], col] = int(c)
    basis = linalg.nullspace_modp(mat, p)
    if basis.shape[0] == 0:
        return []
    # canonicalize: reduced echelon form with leading monomials as pivots
    reduced, _ = linalg.rref_modp(basis, p)
    elements = []
    field = alg.field
    for row in reduced:
        terms = {monos[k]: field.from_int(int(v)) for k, v in enumerate(row) if v}
        if terms:
            elements.append(UEElement(alg, terms))
    # exact recheck after the solve: every basis vector really is central
    for el in elements:
        for i in range(n):
            if not pbw_bracket(gens[i], el).is_zero():
                raise AssertionError(
                    f"nullspace vector fails exact centrality at generator {i}"
                )
    return elements


def center_basis_bounded(alg: ModularLieAlgebra, bound: int, seed: int = 0) -> CenterBasis:
    """Center slice of degree <= bound with a stabilization flag.

    ``stabilized`` is true when the rank over the p-center is unchanged
    between bounds D-1 and D, the working signal that no new central
    directions appear at the top degree.
    """
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    elements = _center_space(alg, bound)
    prev_elements = _center_space(alg, bound - 1) if bound > 1 else [ue_one(alg)]
    r_here = _rank_of_elements(alg, elements, seed)[0]
    r_prev = _rank_of_elements(alg, prev_elements, seed)[0]
    cb = CenterBasis(
        degree_bound=bound,
        elements=tuple(elements),
        stabilized=(r_here == r_prev),
    )
    cb._rank_cache[seed] = r_here
    return cb


# ---------------------------------------------------------------------------
# ranks over the p-center
# ---------------------------------------------------------------------------

def _specialization_field(alg, deg_bound, seed, min_ext=1):
    e = max(sz_extension_degree(alg.p, alg.n, deg_bound), min_ext)
    field = galois_field(alg.p, e, seed=derive_seed("spec-field", alg.p, e, seed))
    return field


def _rows_rank(alg, vectors, seed, min_ext=1):
    """Max specialized rank of zp coordinate rows over three random points."""
    live = [v for v in vectors if v.coordinates]
    if not live:
        return 0, prime_field(alg.p)
    columns = sorted({m for v in live for m in v.coordinates}, key=deglex_key)
    col_index = {m: k for k, m in enumerate(columns)}
    deg = max(v.max_xi_degree() for v in live)
    field = _specialization_field(alg, deg, seed, min_ext)
    rng = random.Random(derive_seed("specialize", alg.signature(), seed))
    best = 0
    for _ in range(RANK_TRIALS):
        point = tuple(field.random_nonzero(rng) for _ in range(alg.n))
        rows = []
        for v in live:
            row = [field.zero] * len(columns)
            for mono, val in v.specialize(point).items():
                row[col_index[mono]] = field.embed(val) if val.field is not field else val
            rows.append(row)
        best = max(best, linalg.rank(rows, field))
        if best == min(len(live), len(columns)):
            break
    return best, field


def _rank_of_elements(alg, elements, seed, min_ext=1):
    """Stabilized rank of the p-center subalgebra generated by ``elements``.

    Closes under products of at most two factors per round, at most
    PRODUCT_ROUNDS rounds, stopping as soon as the specialized rank
    stops growing.  Returns (rank, specialization field).
    """
    one = ue_one(alg)
    pool = [one] + [el for el in elements if not el.is_zero()]
    seen = {frozenset(el.terms.items()): el for el in pool}
    vectors = [zp_coordinates(el, alg) for el in pool]
    r, field = _rows_rank(alg, vectors, seed, min_ext)
    frontier = pool[1:]
    for _ in range(PRODUCT_ROUNDS):
        new_items = []
        for a in frontier:
            for b in pool[1:]:
                prod = a * b
                key = frozenset(prod.terms.items())
                if key in seen or prod.is_zero():
                    continue
                seen[key] = prod
                new_items.append(prod)
        if not new_items:
            break
        vectors.extend(zp_coordinates(el, alg) for el in new_items)
        r2, field = _rows_rank(alg, vectors, seed, min_ext)
        frontier = new_items
        if r2 == r:
            break
        r = r2
    return r, field


def rank_over_p_center(cb: CenterBasis, alg: ModularLieAlgebra, seed: int = 0) -> int:
    """Witnessed rank of the center over the p-center in degree <= D.

    A lower bound for the true fraction-field degree; exact with
    Schwartz-Zippel confidence once the degree bound has stabilized.
    """
    if seed in cb._rank_cache:
        return cb._rank_cache[seed]
    r = _rank_of_elements(alg, list(cb.elements), seed)[0]
    cb._rank_cache[seed] = r
    return r


def zp_subalgebra_contains(a: UEElement, alg: ModularLieAlgebra) -> bool:
    """Membership test for the subalgebra generated by the xi_i.

    Elements of the p-center are exactly those whose coordinates are
    concentrated on the reduced monomial 1.
    """
    coords = zp_coordinates(a, alg).coordinates
    unit = (0,) * alg.n
    return all(m == unit for m in coords)


# ---------------------------------------------------------------------------
# fraction field degrees
# ---------------------------------------------------------------------------

def fraction_field_degree(
    phi: UEElement,
    psi: UEElement,
    alg: ModularLieAlgebra,
    power_bound: int,
    seed: int = 0,
) -> int:
    """Degree of Frac(Z_p)(phi/psi) over Frac(Z_p), up to ``power_bound``.

    Both arguments must be semi-invariant of the same weight, which
    makes phi psi^{p-1} and psi^p central (verified exactly before any
    randomized step).  The fraction u = phi/psi is represented through
    the central elements v_j = phi^j psi^{pJ'-j}; the least j making
    them linearly dependent over Frac(Z_p) is the degree.  Returns
    power_bound + 1 when no dependence is found (inconclusive).
    """
    if psi.is_zero():
        raise ZeroElement("denominator is zero")
    w_phi = semi_invariant_weight(phi)
    w_psi = semi_invariant_weight(psi)
    if w_phi is None or w_psi is None or w_phi != w_psi:
        raise WeightMismatch(
            "numerator and denominator are not semi-invariant of equal weight"
        )
    p = alg.p
    gens = [ue_gen(alg, i) for i in range(alg.n)]
    psi_p = psi**p
    mixed = phi * psi ** (p - 1)
    for g in gens:
        if not pbw_bracket(g, psi_p).is_zero() or not pbw_bracket(g, mixed).is_zero():
            raise CentralityFailure(-1, -1)
    j_blocks = -(-power_bound // p)  # ceil
    exponent = p * j_blocks
    vectors = []
    psi_pow = [ue_one(alg)]
    for _ in range(exponent):
        psi_pow.append(psi_pow[-1] * psi)
    phi_pow = ue_one(alg)
    for d in range(power_bound + 1):
        v = phi_pow * psi_pow[exponent - d]
        vectors.append(zp_coordinates(v, alg))
        if d >= 1:
            r, _ = _rows_rank(alg, vectors, seed)
            if r < len(vectors):
                return d
        phi_pow = phi_pow * phi
    return power_bound + 1


# ---------------------------------------------------------------------------
# commutative Frobenius-subring rank checker
# ---------------------------------------------------------------------------

def _frobenius_coordinates(f: SymPoly, p: int):
    """Coordinates of f in the free module over p-th powers.

    Each exponent splits as a = p q + r with r < p; the x^r part
    indexes the coordinate and the q part lives in the polynomial ring
    of p-th powers.
    """
    coords: dict = {}
    for exps, c in f.terms.items():
        r = tuple(a % p for a in exps)
        q = tuple(a // p for a in exps)
        bucket = coords.setdefault(r, {})
        _accumulate(bucket, q, c)
    return {
        r: SymPoly(f.field, f.n, bucket)
        for r, bucket in coords.items()
        if any(bucket.values())
    }


def rank_over_frobenius_subring(
    num_vars: int,
    b_generators,
    p: int,
    stabilization_bound: int = 4,
    seed: int = 0,
) -> int:
    """Rank of the polynomial ring A over B . A^p, by specialization.

    ``b_generators`` are polynomials generating B inside
    A = F_p[x_1..x_n].  The rank of the A^p-subalgebra generated by B
    is computed in the free A^p-module basis of reduced monomials by
    the same specialize-and-rank routine used for enveloping algebras;
    the answer is p^n divided by that rank.
    """
    field = prime_field(p)
    gens = []
    for g in b_generators:
        if isinstance(g, SymPoly):
            gens.append(g)
        else:
            gens.append(SymPoly(field, num_vars, g))
    one = SymPoly.one(field, num_vars)
    pool = [one] + [g for g in gens if not g.is_zero()]
    seen = {frozenset(g.terms.items()) for g in pool}

    def rows_rank(items, rnd_seed):
        coords = [_frobenius_coordinates(f, p) for f in items]
        columns = sorted({m for c in coords for m in c}, key=deglex_key)
        if not columns:
            return 0
        col_index = {m: k for k, m in enumerate(columns)}
        deg = max(
            (poly.total_degree for c in coords for poly in c.values() if not poly.is_zero()),
            default=0,
        )
        e = sz_extension_degree(p, num_vars, max(1, deg))
        ext = galois_field(p, e, seed=derive_seed("frob-field", p, e, rnd_seed))
        rng = random.Random(derive_seed("frob-points", p, num_vars, rnd_seed))
        best = 0
        for _ in range(RANK_TRIALS):
            point = tuple(ext.random_nonzero(rng) for _ in range(num_vars))
            rows = []
            for c in coords:
                row = [ext.zero] * len(columns)
                for mono, poly in c.items():
                    val = poly.evaluate(point)
                    row[col_index[mono]] = ext.embed(val) if val.field is not ext else val
                rows.append(row)
            best = max(best, linalg.rank(rows, ext))
        return best

    r = rows_rank(pool, seed)
    frontier = pool[1:]
    stabilized = not frontier
    for _ in range(stabilization_bound):
        new_items = []
        for a in frontier:
            for b in pool[1:]:
                prod = a * b
                key = frozenset(prod.terms.items())
                if key in seen or prod.is_zero():
                    continue
                seen.add(key)
                new_items.append(prod)
        if not new_items:
            stabilized = True
            break
        candidates = pool + new_items
        r2 = rows_rank(candidates, seed)
        pool = candidates
        frontier = new_items
        if r2 == r:
            stabilized = True
            break
        r = r2
    if not stabilized:
        raise StabilizationNotReached(stabilization_bound)
    total = p**num_vars
    if total % r != 0:
        raise StabilizationNotReached(stabilization_bound)
    return total // r


# ---------------------------------------------------------------------------
# the verdict
# ---------------------------------------------------------------------------

@dataclass
class KW1Report:
    """Everything the verdict pipeline measured for one (algebra, p)."""

    algebra_name: str
    p: int
    e: int
    dim: int
    ind: int
    degree_bound: int
    rank_z_over_zp: int
    m_upper: int | None
    m_upper_formal: str
    m_lower: int
    verdict: str
    seed: int
    defining_polynomial: str
    stabilized: bool
    index_trials: int
    oracle_estimate: dict | None = None
    notes: tuple = ()


def _p_power_exponent(value: int, p: int):
    """k with value == p^k, or None."""
    k = 0
    v = value
    while v % p == 0:
        v //= p
        k += 1
    return k if v == 1 else None


def default_degree_bound(alg: ModularLieAlgebra) -> int:
    """2p - 2 in dimension <= 3, p above; no effective bound is known."""
    return 2 * alg.p - 2 if alg.n <= 3 else alg.p


def kw1_verdict(
    alg: ModularLieAlgebra,
    degree_bound: int | None = None,
    seed: int = 0,
    with_oracle: bool = False,
    samples: int = 10,
    index_trials: int = 3,
    dim_cap: int = 625,
    min_extension: int = 1,
) -> KW1Report:
    """Assemble the index, center rank, and bound comparison.

    verified   : rank equals p^ind, so both bounds coincide and the
                 largest irreducible dimension is pinned exactly;
    inconclusive: the witnessed rank is below p^ind, meaning the center
                 was not fully seen up to the degree bound.
    """
    if alg.restricted is None:
        raise ValueError("algebra carries no restricted structure")
    n = alg.n
    p = alg.p
    bound = degree_bound if degree_bound is not None else default_degree_bound(alg)
    ind = index_generic(alg, trials=index_trials, seed=seed)
    cb = center_basis_bounded(alg, bound, seed=seed)
    r, spec_field = _rank_of_elements(alg, list(cb.elements), seed, min_extension)
    cb._rank_cache[seed] = r
    assert r <= p**ind, "rank exceeded p^ind: impossible for exact inputs"
    m_lower = p ** ((n - ind) // 2)
    quotient = p**n // r if p**n % r == 0 else None
    notes = [
        "largest irreducible dimension M is read from M^2 * rank(Z over Z_p) = p^dim",
        "verdict is an empirical certificate for this (algebra, p), not a proof "
        "of algebraicity of the input",
    ]
    k = _p_power_exponent(quotient, p) if quotient else None
    if k is not None and k % 2 == 0:
        m_upper = p ** (k // 2)
        m_upper_formal = str(m_upper)
    elif k is not None:
        m_upper = None
        m_upper_formal = f"{p}^({k}/2)"
    else:
        m_upper = None
        m_upper_formal = f"sqrt({p**n}/{r})"
    verified = r == p**ind
    if not verified:
        notes.append(
            f"rank {r} < p^ind = {p**ind}: raise the degree bound above {bound}"
        )
    report = KW1Report(
        algebra_name=alg.name,
        p=p,
        e=spec_field.e,
        dim=n,
        ind=ind,
        degree_bound=bound,
        rank_z_over_zp=r,
        m_upper=m_upper,
        m_upper_formal=m_upper_formal,
        m_lower=m_lower,
        verdict="verified" if verified else "inconclusive",
        seed=seed,
        defining_polynomial=(
            "t" if spec_field.e == 1 else render_poly_modp(spec_field.modulus)
        ),
        stabilized=cb.stabilized,
        index_trials=index_trials,
        notes=tuple(notes),
    )
    if with_oracle:
        from .redenv import max_irreducible_dim

        est = max_irreducible_dim(alg, samples=samples, seed=seed, dim_cap=dim_cap)
        report.oracle_estimate = est.as_dict()
    return report
