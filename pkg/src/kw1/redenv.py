"""Independent oracle for the largest irreducible-module dimension.

Reduced enveloping algebras u_chi(g) have dimension p^n, with basis the
reduced PBW monomials; multiplication straightens and then rewrites
x_i^p as x_i^[p] + chi_i^p.  Splitting the left regular representation
into composition factors bounds the largest simple dimension from
below, and for generic chi attains it.

The splitter is a MeatAxe: pick a random algebra element, factor the
minimal polynomial of a random vector under it, spin kernel vectors of
an irreducible factor, and use the Norton dual test with a good factor
(nullity equal to the factor degree) to certify irreducibility.  A
certified factor can still be reducible after extending scalars; the
endomorphism field degree s is detected from good-factor degrees (with
a Burnside spin of the matrix algebra as the exact fallback) and the
factor is re-split over F_{p^{e s}}, the minimal splitting field.
Blind quadratic escalation cannot split factors with odd s, which do
occur (Artin-Schreier weight polynomials), so the escalation target
matters here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import gcd

from .center import zp_coordinates
from .errors import DimensionCap, SplitBudgetExceeded
from .fields import GF, galois_field, prime_field
from .liealg import ModularLieAlgebra, index_generic
from .matops import ops_for
from .pbw import UEElement, _mono_times_mono
from .polys import as_poly, proots
from .util import deglex_key, derive_seed

MAX_SPLIT_TRIES = 40
MAX_ESCALATIONS = 2
BURNSIDE_DIM_CAP = 96
ENDO_PROBE_TRIES = 6
KERNEL_SPIN_CAP = 4
ESCALATED_PHYSICAL_CAP = 12


@dataclass(frozen=True)
class Character:
    """A linear functional on the basis, with values in F_{p^e}."""

    chi: tuple

    def render(self):
        return tuple(c.render() for c in self.chi)


class ReducedEnvelopingAlgebra:
    """u_chi(g): the p^n-dimensional quotient of U(g) at the character chi."""

    def __init__(self, alg: ModularLieAlgebra, chi: Character, dim_cap: int = 625):
        if alg.restricted is None:
            raise ValueError("algebra carries no restricted structure")
        self.alg = alg
        self.chi = chi
        self.field = chi.chi[0].field if chi.chi else prime_field(alg.p)
        self.dimension = alg.p**alg.n
        if self.dimension > dim_cap:
            raise DimensionCap(self.dimension, dim_cap)
        self.monomials = sorted(
            product(range(alg.p), repeat=alg.n), key=deglex_key
        )
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self._xi_point = tuple(c**alg.p for c in chi.chi)
        self._memo = {}

    def _symbolic_left_action(self, i, mono):
        """chi-independent coordinates of x_i . x^mono, cached on the algebra."""
        cache = self.alg._pbw_memo.setdefault("redenv-left", {})
        key = (i, mono)
        hit = cache.get(key)
        if hit is None:
            gen_mono = tuple(1 if k == i else 0 for k in range(self.alg.n))
            elem = UEElement(self.alg, dict(_mono_times_mono(self.alg, gen_mono, mono)))
            hit = zp_coordinates(elem, self.alg).coordinates
            cache[key] = hit
        return hit

    def left_action_column(self, i, mono):
        """Coordinates of x_i . x^mono in the reduced basis at this chi."""
        out = {}
        for m, poly in self._symbolic_left_action(i, mono).items():
            val = poly.evaluate(self._xi_point)
            val = self.field.embed(val) if val.field is not self.field else val
            if val:
                out[m] = val
        return out

    def multiply(self, m1, m2):
        """Product of basis monomials as a sparse map, straighten then reduce."""
        key = (m1, m2)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        elem = UEElement(self.alg, dict(_mono_times_mono(self.alg, m1, m2)))
        coords = zp_coordinates(elem, self.alg).coordinates
        out = {}
        for m, poly in coords.items():
            val = poly.evaluate(self._xi_point)
            val = self.field.embed(val) if val.field is not self.field else val
            if val:
                out[m] = val
        self._memo[key] = out
        return out


def reduced_algebra(alg: ModularLieAlgebra, chi: Character, dim_cap: int = 625):
    return ReducedEnvelopingAlgebra(alg, chi, dim_cap=dim_cap)


@dataclass
class AlgebraModule:
    """A module given by one action matrix per algebra generator."""

    dimension: int
    field: GF
    mats: list

    def action_rows(self, i):
        a = self.mats[i]
        if isinstance(a, list):
            return [list(row) for row in a]
        return [[self.field.from_int(int(x)) for x in row] for row in a]


def regular_representation(u: ReducedEnvelopingAlgebra) -> AlgebraModule:
    """Left regular action of the generators on the reduced monomial basis."""
    import numpy as np

    d = u.dimension
    mats = []
    prime = u.field.e == 1
    for i in range(u.alg.n):
        if prime:
            mat = np.zeros((d, d), dtype=np.int64)
            for col, mono in enumerate(u.monomials):
                for m2, c in u.left_action_column(i, mono).items():
                    mat[u.index[m2], col] = int(c)
            mats.append(mat)
        else:
            rows = [[u.field.zero] * d for _ in range(d)]
            for col, mono in enumerate(u.monomials):
                for m2, c in u.left_action_column(i, mono).items():
                    rows[u.index[m2]][col] = c
            mats.append(rows)
    return AlgebraModule(dimension=d, field=u.field, mats=mats)


# ---------------------------------------------------------------------------
# MeatAxe
# ---------------------------------------------------------------------------

@dataclass
class SplitReport:
    """Composition factor data from one module split."""

    dims: tuple
    factors: tuple  # (dimension, working field order) pairs
    degraded: bool


def _random_algebra_element(ops, mats, d, rng):
    """Random element of the unital algebra generated by the action."""
    r = ops.scale(ops.identity(d), ops.random_scalar(rng))
    for a in mats:
        r = ops.add(r, ops.scale(a, ops.random_scalar(rng)))
    if len(mats) >= 2 and rng.random() < 0.5:
        i = rng.randrange(len(mats))
        j = rng.randrange(len(mats))
        r = ops.add(r, ops.scale(ops.matmul(mats[i], mats[j]), ops.random_scalar(rng)))
    return r


def _spin(ops, start_vectors, mats, width):
    """Smallest subspace containing the starts and stable under all mats."""
    state = ops.new_echelon(width)
    queue = []
    for v in start_vectors:
        if state.insert(v) is not None:
            queue.append(v)
    while queue:
        v = queue.pop()
        for a in mats:
            w = ops.matvec(a, v)
            if state.insert(w) is not None:
                queue.append(w)
    return state


def _restrict(ops, mats, state):
    """Action matrices on the submodule, in the echelon basis of ``state``."""
    k = state.dim
    out = []
    for a in mats:
        rows = [[None] * k for _ in range(k)]
        for j, w in enumerate(state.rows):
            u = ops.matvec(a, w)
            for i, piv in enumerate(state.pivots):
                rows[i][j] = u[piv]
        out.append(ops.from_rows(rows))
    return out


def _quotient(ops, mats, state, d):
    """Action matrices on the quotient by the submodule of ``state``."""
    pivset = set(state.pivots)
    comp = [c for c in range(d) if c not in pivset]
    out = []
    for a in mats:
        rows = [[None] * len(comp) for _ in range(len(comp))]
        for j, c in enumerate(comp):
            u = state.reduce(ops.column(a, c))
            for i, cc in enumerate(comp):
                rows[i][j] = u[cc]
        out.append(ops.from_rows(rows))
    return out


def _norton_attempt(ops, mats, d, rng):
    """One random-element attempt.

    Returns ("split", echelon state of a proper submodule), or
    ("irreducible", degree of the certifying good factor), or None when
    this element was inconclusive.
    """
    r = _random_algebra_element(ops, mats, d, rng)
    v = ops.random_vector(d, rng)
    if ops.vec_is_zero(v):
        return None
    minpoly = ops.krylov_minpoly(r, v)
    if len(minpoly) <= 1:
        return None
    factor_rng = random.Random(rng.randrange(2**62))
    for f in ops.iter_factors(minpoly, factor_rng):
        deg = len(f) - 1
        n_mat = ops.poly_eval(f, r)
        kernel = ops.nullspace(n_mat)
        if not kernel:
            continue
        for kv in kernel[:KERNEL_SPIN_CAP]:
            spun = _spin(ops, [kv], mats, d)
            if spun.dim < d:
                return ("split", spun)
        if len(kernel) == deg:
            # good factor: a single dual spin decides irreducibility
            mats_t = [ops.transpose(a) for a in mats]
            nt = ops.transpose(n_mat)
            dual_kernel = ops.nullspace(nt)
            dual_spun = _spin(ops, [dual_kernel[0]], mats_t, d)
            if dual_spun.dim < d:
                perp_rows = ops.nullspace(ops.stack(dual_spun.rows))
                perp = ops.new_echelon(d)
                for w in perp_rows:
                    perp.insert(w)
                return ("split", perp)
            return ("irreducible", deg)
    return None


def _flatten(ops, m, d):
    if isinstance(m, list):
        return [x for row in m for x in row]
    return m.reshape(d * d)


def _endomorphism_degree(ops, mats, d, rng, first_bound):
    """Endomorphism field degree of a certified irreducible module.

    Every good factor degree is a multiple of s, so gcds of a few
    probes usually pin s = 1 immediately; otherwise a Burnside spin of
    the generated matrix algebra gives s exactly, since that algebra
    has dimension d^2 / s.  Returns None when the module is too large
    for the fallback.
    """
    bound = gcd(d, first_bound)
    tries = 0
    while bound > 1 and tries < ENDO_PROBE_TRIES:
        tries += 1
        r = _random_algebra_element(ops, mats, d, rng)
        v = ops.random_vector(d, rng)
        if ops.vec_is_zero(v):
            continue
        minpoly = ops.krylov_minpoly(r, v)
        if len(minpoly) <= 1:
            continue
        factor_rng = random.Random(rng.randrange(2**62))
        for f in ops.iter_factors(minpoly, factor_rng):
            deg = len(f) - 1
            n_mat = ops.poly_eval(f, r)
            if ops.nullity(n_mat) == deg:
                bound = gcd(bound, deg)
                if bound == 1:
                    return 1
    if bound == 1:
        return 1
    if d > BURNSIDE_DIM_CAP:
        return None
    state = ops.new_echelon(d * d)
    queue = []
    ident = ops.identity(d)
    if state.insert(_flatten(ops, ident, d)) is not None:
        queue.append(ident)
    while queue:
        m = queue.pop()
        for a in mats:
            prod = ops.matmul(a, m)
            if state.insert(_flatten(ops, prod, d)) is not None:
                queue.append(prod)
    alg_dim = state.dim
    assert (d * d) % alg_dim == 0
    return (d * d) // alg_dim


def _field_embedding(old: GF, new: GF, seed: int):
    """Map F_{p^e} into F_{p^(e s)} by sending t to a root of the modulus."""
    if old.e == 1:
        return lambda x: new.from_int(int(x))
    modulus = as_poly(new, [new.from_int(c) for c in old.modulus])
    rng = random.Random(derive_seed("embed-root", old.p, old.e, new.e, seed))
    root = proots(modulus, new, rng)[0]
    powers = [new.one]
    for _ in range(old.e - 1):
        powers.append(powers[-1] * root)

    def embed(x):
        acc = new.zero
        for a, pw in zip(x.coeffs, powers):
            if a:
                acc = acc + new.from_int(a) * pw
        return acc

    return embed


def _base_change_module(module: AlgebraModule, new_field: GF, seed: int) -> AlgebraModule:
    embed = _field_embedding(module.field, new_field, seed)
    ops_new = ops_for(new_field)
    mats = []
    for a in module.mats:
        if isinstance(a, list):
            rows = [[embed(x) for x in row] for row in a]
        else:
            rows = [[embed(int(x)) for x in row] for row in a]
        mats.append(ops_new.from_rows(rows))
    return AlgebraModule(dimension=module.dimension, field=new_field, mats=mats)


def split_simples(module: AlgebraModule, seed: int = 0) -> SplitReport:
    """Composition factor dimensions of the module, working field recorded.

    Dimensions are reported over the final working field of each
    factor, so a factor that only splits after extending scalars
    contributes its smaller pieces.  ``degraded`` is set when some
    factor exhausted its escalation budget and contributes only an
    upper bound on the honest dimension.
    """
    rng = random.Random(derive_seed("meataxe", seed))
    dims = []
    factors = []
    degraded = False
    stack = [(module, 0)]
    while stack:
        mod, esc = stack.pop()
        d = mod.dimension
        if d == 0:
            continue
        if d == 1:
            dims.append(1)
            factors.append((1, mod.field.order))
            continue
        ops = ops_for(mod.field)
        outcome = None
        for _ in range(MAX_SPLIT_TRIES):
            outcome = _norton_attempt(ops, mod.mats, d, rng)
            if outcome is not None:
                break
        if outcome is None:
            raise SplitBudgetExceeded(
                f"no decision for a {d}-dimensional module after {MAX_SPLIT_TRIES} tries"
            )
        kind, payload = outcome
        if kind == "split":
            state = payload
            sub = AlgebraModule(
                dimension=state.dim, field=mod.field, mats=_restrict(ops, mod.mats, state)
            )
            quo = AlgebraModule(
                dimension=d - state.dim,
                field=mod.field,
                mats=_quotient(ops, mod.mats, state, d),
            )
            stack.append((sub, esc))
            stack.append((quo, esc))
            continue
        # certified irreducible over mod.field; decide absolute irreducibility
        s = _endomorphism_degree(ops, mod.mats, d, rng, payload)
        if s == 1:
            dims.append(d)
            factors.append((d, mod.field.order))
            continue
        if s is None or esc >= MAX_ESCALATIONS:
            degraded = True
            dims.append(d)
            factors.append((d, mod.field.order))
            continue
        new_field = galois_field(
            mod.field.p, mod.field.e * s, seed=derive_seed("escalate", seed, esc)
        )
        if d <= ESCALATED_PHYSICAL_CAP:
            stack.append((_base_change_module(mod, new_field, seed), esc + 1))
        else:
            # the endomorphism field has exact degree s (Burnside count),
            # so over its splitting field the factor is s Galois twists
            # of one absolutely irreducible module of dimension d // s;
            # expand structurally instead of re-splitting a large module
            for _ in range(s):
                dims.append(d // s)
                factors.append((d // s, new_field.order))
    return SplitReport(dims=tuple(sorted(dims)), factors=tuple(factors), degraded=degraded)


# ---------------------------------------------------------------------------
# the oracle
# ---------------------------------------------------------------------------

@dataclass
class OracleEstimate:
    """Best composition-factor dimension over sampled characters."""

    m_est: int
    witness: tuple
    samples: int
    seed: int
    escalated_sampling: bool
    degraded: bool

    def as_dict(self):
        return {
            "M": self.m_est,
            "witnessChi": list(self.witness),
            "samples": self.samples,
            "seed": self.seed,
            "escalatedSampling": self.escalated_sampling,
            "degraded": self.degraded,
        }


def _characters(alg, field, samples, rng):
    n = alg.n
    chis = [Character(tuple(field.zero for _ in range(n)))]
    for i in range(n):
        chis.append(
            Character(tuple(field.one if k == i else field.zero for k in range(n)))
        )
    for _ in range(samples):
        chis.append(Character(tuple(field.random(rng) for _ in range(n))))
    return chis


def max_irreducible_dim(
    alg: ModularLieAlgebra,
    samples: int = 10,
    seed: int = 0,
    dim_cap: int = 625,
) -> OracleEstimate:
    """Maximum composition-factor dimension over sampled characters.

    Always a lower bound for the largest irreducible dimension; with
    generic sampling it attains it.  Characters are drawn over F_p
    first; when every sample agrees on a value smaller than the
    expected generic dimension p^((n - ind)/2), sampling escalates once
    to F_{p^2} to dodge non-generic rational strata.
    """
    if alg.p**alg.n > dim_cap:
        raise DimensionCap(alg.p**alg.n, dim_cap)
    rng = random.Random(derive_seed("oracle", alg.signature(), seed))
    ind = index_generic(alg, trials=3, seed=seed)
    expected = alg.p ** ((alg.n - ind) // 2)

    def run(field, tag):
        best = 0
        witness = None
        seen = []
        degraded = False
        for chi in _characters(alg, field, samples, rng):
            u = reduced_algebra(alg, chi, dim_cap=dim_cap)
            module = regular_representation(u)
            report = split_simples(module, seed=derive_seed(tag, seed, chi.render()))
            top = max(report.dims)
            degraded = degraded or report.degraded
            seen.append(top)
            if top > best:
                best = top
                witness = chi
        return best, witness, seen, degraded

    fp = prime_field(alg.p)
    best, witness, seen, degraded = run(fp, "chi-run")
    escalated = False
    if len(set(seen)) == 1 and best < expected:
        escalated = True
        ext = galois_field(alg.p, 2, seed=derive_seed("oracle-ext", alg.p, seed))
        best2, witness2, _, degraded2 = run(ext, "chi-run-ext")
        degraded = degraded or degraded2
        if best2 > best:
            best, witness = best2, witness2
    return OracleEstimate(
        m_est=best,
        witness=witness.render() if witness is not None else (),
        samples=samples,
        seed=seed,
        escalated_sampling=escalated,
        degraded=degraded,
    )
