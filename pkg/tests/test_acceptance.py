"""Acceptance criteria, one test per criterion, exact tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.  Every randomized computation is seeded, so these
are regression tests, not smoke tests.

Criterion 1 note: the degree-bounded center slice is compared against
the module generated over the p-center by the golden generators
{1} u {h^p - h, x^p, y^p} u {x^i y^j : n i + m j = 0 mod p, 0 < i, j < p}.
At p in {5, 7} the slice of degree <= 2p - 2 contains products such as
x^p * (x y^2) that lie outside the plain linear span of the list but
inside the module it generates, so the module span is the faithful
golden statement; where no such products fit under the bound, the
computed canonical basis must equal the golden list literally.
"""

import itertools
import time

import numpy as np
import pytest

from kw1 import linalg
from kw1.center import (
    center_basis_bounded,
    fraction_field_degree,
    kw1_verdict,
    p_center_generators,
    rank_over_frobenius_subring,
    rank_over_p_center,
    zp_subalgebra_contains,
)
from kw1.cli import RunConfig, _prepare, run
from kw1.pbw import ue_monomial, ue_one
from kw1.redenv import max_irreducible_dim
from kw1.registry import get_example
from kw1.reports import to_json
from kw1.util import deglex_key, monomials_upto

REMARK_PAIRS = ((1, 1), (1, 2), (2, 3))
PRIMES_C1 = (3, 5, 7)
SUITE_C2 = ("abelian:2", "nonabelian2", "heisenberg", "sl2", "remark:1:1", "remark:1:2")
PRIMES_C2 = (3, 5)


def _span_matrix(alg, elements, bound):
    monos = sorted(monomials_upto(alg.n, bound), key=deglex_key)
    index = {m: k for k, m in enumerate(monos)}
    rows = np.zeros((len(elements), len(monos)), dtype=np.int64)
    for r, el in enumerate(elements):
        for m, c in el.terms.items():
            rows[r, index[m]] = int(c)
    return rows


def _same_span(alg, first, second, bound):
    a = _span_matrix(alg, first, bound)
    b = _span_matrix(alg, second, bound)
    ra = linalg.rank_modp(a, alg.p)
    rb = linalg.rank_modp(b, alg.p)
    rboth = linalg.rank_modp(np.vstack([a, b]), alg.p)
    return ra == rb == rboth


def _golden_monomials(n, m, p):
    return [
        (0, i, j)
        for i in range(1, p)
        for j in range(1, p)
        if (n * i + m * j) % p == 0
    ]


def test_c1_remark_center_golden_regression():
    started = time.monotonic()
    for n, m in REMARK_PAIRS:
        for p in PRIMES_C1:
            if (n * m) % p == 0:
                continue
            alg = _prepare(get_example(f"remark:{n}:{m}"), p, None)
            bound = 2 * p - 2
            cb = center_basis_bounded(alg, bound, seed=0)
            xi = p_center_generators(alg).xi
            golden = [ue_one(alg)] + list(xi) + [
                ue_monomial(alg, mono) for mono in _golden_monomials(n, m, p)
            ]
            # every golden element sits inside the computed center slice
            assert _same_span(alg, list(cb.elements), list(cb.elements) + golden, bound)
            # and the slice equals the p-center module on the golden set
            module_span = []
            reduced_gens = [ue_one(alg)] + [
                ue_monomial(alg, mono) for mono in _golden_monomials(n, m, p)
            ]
            for g in reduced_gens:
                for exps in monomials_upto(alg.n, (bound - int(g.degree)) // p):
                    term = g
                    for i, e in enumerate(exps):
                        for _ in range(e):
                            term = term * xi[i]
                    if term.degree <= bound:
                        module_span.append(term)
            assert _same_span(alg, list(cb.elements), module_span, bound), (n, m, p)
            # with no room for products above the listed generators, the
            # canonical basis is the golden list element for element
            min_gen_degree = min(
                (i + j for (_h, i, j) in _golden_monomials(n, m, p)), default=p
            )
            if p + min_gen_degree > bound:
                got = sorted(el.render() for el in cb.elements)
                want = sorted(g.render() for g in golden)
                assert got == want, (n, m, p)
    elapsed = time.monotonic() - started
    assert elapsed < 60, f"criterion 1 took {elapsed:.1f}s"
    print(f"\nC1 Remark center golden regression: PASS ({elapsed:.1f}s)")


def test_c2_kw1_verdicts():
    started = time.monotonic()
    for name in SUITE_C2:
        for p in PRIMES_C2:
            alg = _prepare(get_example(name), p, None)
            rep = kw1_verdict(alg, seed=0)
            assert rep.verdict == "verified", (name, p)
            assert rep.rank_z_over_zp == p**rep.ind, (name, p)
            expected_m = p ** ((rep.dim - rep.ind) // 2)
            assert rep.m_upper == expected_m and rep.m_lower == expected_m, (name, p)
    elapsed = time.monotonic() - started
    assert elapsed < 120, f"criterion 2 took {elapsed:.1f}s"
    print(f"C2 KW1 verdicts on the suite: PASS ({elapsed:.1f}s)")


def test_c3_oracle_agreement():
    started = time.monotonic()
    for name in SUITE_C2:
        for p in PRIMES_C2:
            alg = _prepare(get_example(name), p, None)
            m_lower = p ** ((alg.n - kw1_verdict(alg, seed=0).ind) // 2)
            est = max_irreducible_dim(alg, samples=10, seed=0)
            assert est.m_est == m_lower, (name, p, est.m_est, m_lower)
    gl2 = _prepare(get_example("gl2"), 3, None)
    est = max_irreducible_dim(gl2, samples=10, seed=0)
    assert est.m_est == 3
    elapsed = time.monotonic() - started
    assert elapsed < 180, f"criterion 3 took {elapsed:.1f}s"
    print(f"C3 oracle agreement: PASS ({elapsed:.1f}s)")


def test_c4_fraction_field_certification():
    started = time.monotonic()
    for n, m in REMARK_PAIRS:
        for p in PRIMES_C1:
            if (n * m) % p == 0:
                continue
            alg = _prepare(get_example(f"remark:{n}:{m}"), p, None)
            cb = center_basis_bounded(alg, 2 * p - 2, seed=0)
            r = rank_over_p_center(cb, alg, 0)
            phi = ue_monomial(alg, (0, m, 0))
            psi = ue_monomial(alg, (0, 0, n))
            d = fraction_field_degree(phi, psi, alg, p, seed=0)
            assert d == r == p, (n, m, p, d, r)
    elapsed = time.monotonic() - started
    print(f"C4 fraction-field degree equals center rank: PASS ({elapsed:.1f}s)")


def test_c5_kac_counterexample():
    alg = _prepare(get_example("remark:1:1"), 3, None)
    cb = center_basis_bounded(alg, 4, seed=0)
    xy2 = ue_monomial(alg, (0, 1, 2))
    assert any(el == xy2 for el in cb.elements)
    assert not zp_subalgebra_contains(xy2, alg)
    print("C5 Kac-conjecture counterexample (x y^2 central, not in Z_p): PASS")


def test_c6_frobenius_subring_desk_check():
    for p in (2, 3, 5):
        x = {(1, 0): 1}
        y = {(0, 1): 1}
        assert rank_over_frobenius_subring(2, [x], p, seed=0) == p
        assert rank_over_frobenius_subring(2, [], p, seed=0) == p * p
        assert rank_over_frobenius_subring(2, [x, y], p, seed=0) == 1
    print("C6 Frobenius-subring rank desk check: PASS")


def test_c7_property_suites_present():
    # the randomized suites live in test_properties.py; this criterion
    # asserts they are collected and seed-pinned rather than rerunning them
    import test_properties as props

    wanted = [
        "test_pbw_associativity_100_trials",
        "test_symbol_multiplicativity_100_trials",
        "test_bracket_degree_drop_100_trials",
        "test_symmetrization_section_100_trials",
        "test_xi_centrality_all_suite",
        "test_zp_reassembly_100_per_algebra",
        "test_rank_monotone_and_bounded_sweep",
        "test_split_dims_sum_100_cases",
        "test_index_parity_100_cases",
        "test_index_mod_p_matches_rational",
    ]
    for name in wanted:
        assert hasattr(props, name), name
    print("C7 property suites collected (run in test_properties.py): PASS")


def test_c8_determinism_byte_identical():
    configs = [
        (RunConfig(primes=(3,), seed=0, with_oracle=True, samples=6), "remark:1:1"),
        (RunConfig(primes=(3, 5), seed=0), "sl2"),
        (RunConfig(primes=(7,), degree_bound=12, seed=0), "remark:2:3"),
    ]
    for config, name in configs:
        first = to_json(run(config, get_example(name))[0])
        second = to_json(run(config, get_example(name))[0])
        assert first == second, name
    print("C8 byte-identical reports across repeated runs: PASS")
