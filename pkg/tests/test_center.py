import random

import pytest

from kw1.center import (
    CenterBasis,
    center_basis_bounded,
    fraction_field_degree,
    kw1_verdict,
    p_center_generators,
    rank_over_frobenius_subring,
    rank_over_p_center,
    zp_coordinates,
    zp_subalgebra_contains,
)
from kw1.errors import WeightMismatch
from kw1.pbw import SymPoly, pbw_bracket, ue_gen, ue_monomial, ue_one
from kw1.util import monomials_upto


def test_p_center_generators_remark(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    xi = p_center_generators(alg).xi
    assert xi[0] == ue_monomial(alg, (3, 0, 0)) - ue_gen(alg, 0)
    assert xi[1] == ue_monomial(alg, (0, 3, 0))
    assert xi[2] == ue_monomial(alg, (0, 0, 3))


def test_p_center_generators_heisenberg(make_algebra):
    alg = make_algebra("heisenberg", 3)
    xi = p_center_generators(alg).xi
    for i in range(3):
        mono = tuple(3 if k == i else 0 for k in range(3))
        assert xi[i] == ue_monomial(alg, mono)


def test_p_center_generators_abelian(make_algebra):
    alg = make_algebra("abelian:2", 5)
    xi = p_center_generators(alg).xi
    assert xi[0] == ue_monomial(alg, (5, 0))
    assert xi[1] == ue_monomial(alg, (0, 5))


def test_zp_coordinates_power_example(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    v = zp_coordinates(ue_monomial(alg, (0, 4, 0)), alg)
    assert set(v.coordinates) == {(0, 1, 0)}
    poly = v.coordinates[(0, 1, 0)]
    assert poly.terms == {(0, 1, 0): alg.field.one}


def test_zp_coordinates_hp(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    v = zp_coordinates(ue_monomial(alg, (3, 0, 0)), alg)
    # h^p = xi_h + h^[p] with h^[p] = h
    assert v.coordinates[(0, 0, 0)].terms == {(1, 0, 0): alg.field.one}
    assert v.coordinates[(1, 0, 0)].terms == {(0, 0, 0): alg.field.one}


def test_zp_coordinates_reduced_identity(make_algebra):
    alg = make_algebra("sl2", 3)
    m = ue_monomial(alg, (2, 1, 2))
    v = zp_coordinates(m, alg)
    assert v.coordinates == {(2, 1, 2): SymPoly.monomial(alg.field, 3, (0, 0, 0))}


def test_zp_reassembly_random(make_algebra):
    alg = make_algebra("sl2", 3)
    rng = random.Random(0)
    for _ in range(30):
        terms = {}
        for _ in range(rng.randrange(1, 4)):
            mono = tuple(rng.randrange(5) for _ in range(3))
            terms[mono] = alg.field.from_int(rng.randrange(1, 3))
        from kw1.pbw import UEElement

        a = UEElement(alg, terms)
        assert zp_coordinates(a, alg).reassemble() == a


def test_center_basis_remark_golden(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    cb = center_basis_bounded(alg, 4, seed=0)
    rendered = sorted(el.render() for el in cb.elements)
    assert rendered == sorted(
        ["1", "h^3 + 2*h", "x^3", "y^3", "x*y^2", "x^2*y"]
    )
    assert cb.stabilized


def test_center_basis_abelian_everything_central(make_algebra):
    alg = make_algebra("abelian:2", 2)
    cb = center_basis_bounded(alg, 1, seed=0)
    assert sorted(el.render() for el in cb.elements) == ["1", "x1", "x2"]


def test_center_basis_heisenberg_degree1(make_algebra):
    alg = make_algebra("heisenberg", 3)
    cb = center_basis_bounded(alg, 1, seed=0)
    assert sorted(el.render() for el in cb.elements) == ["1", "z"]


def test_center_elements_commute_exactly(make_algebra):
    alg = make_algebra("sl2", 3)
    cb = center_basis_bounded(alg, 4, seed=0)
    gens = [ue_gen(alg, i) for i in range(3)]
    for el in cb.elements:
        for g in gens:
            assert pbw_bracket(g, el).is_zero()


def test_rank_over_p_center_values(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    cb = center_basis_bounded(alg, 4, seed=0)
    assert rank_over_p_center(cb, alg, 0) == 3
    alg5 = make_algebra("sl2", 5)
    cb5 = center_basis_bounded(alg5, 8, seed=0)
    assert rank_over_p_center(cb5, alg5, 0) == 5
    ab = make_algebra("abelian:2", 3)
    cb_ab = center_basis_bounded(ab, 4, seed=0)
    assert rank_over_p_center(cb_ab, ab, 0) == 9


def test_zp_membership_counterexample(make_algebra):
    # xy^2 is central at p = 3 but does not lie in the p-center
    alg = make_algebra("remark:1:1", 3)
    xy2 = ue_monomial(alg, (0, 1, 2))
    cb = center_basis_bounded(alg, 4, seed=0)
    assert any(el == xy2 for el in cb.elements)
    assert not zp_subalgebra_contains(xy2, alg)
    xi = p_center_generators(alg).xi
    for el in xi:
        assert zp_subalgebra_contains(el, alg)
    assert zp_subalgebra_contains(xi[0] * xi[1] + ue_one(alg), alg)


@pytest.mark.parametrize(
    "nm,p", [((1, 1), 3), ((1, 2), 5), ((2, 3), 7)]
)
def test_fraction_field_degree_family(make_algebra, nm, p):
    n, m = nm
    alg = make_algebra(f"remark:{n}:{m}", p)
    phi = ue_monomial(alg, (0, m, 0))
    psi = ue_monomial(alg, (0, 0, n))
    assert fraction_field_degree(phi, psi, alg, p, seed=0) == p


def test_fraction_field_degree_trivial(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    xi = p_center_generators(alg).xi[1]
    assert fraction_field_degree(xi, xi, alg, 3, seed=0) == 1


def test_fraction_field_degree_weight_mismatch(make_algebra):
    alg = make_algebra("remark:1:2", 3)
    x = ue_gen(alg, 1)
    y = ue_gen(alg, 2)
    with pytest.raises(WeightMismatch):
        fraction_field_degree(x, y, alg, 3, seed=0)


def test_fraction_field_inconclusive_bound(make_algebra):
    # with power bound below p the dependence cannot be seen
    alg = make_algebra("remark:1:1", 5)
    phi = ue_monomial(alg, (0, 1, 0))
    psi = ue_monomial(alg, (0, 0, 1))
    assert fraction_field_degree(phi, psi, alg, 3, seed=0) == 4


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_rank_lemma_values(p):
    x = {(1, 0): 1}
    y = {(0, 1): 1}
    assert rank_over_frobenius_subring(2, [x], p, seed=0) == p
    assert rank_over_frobenius_subring(2, [], p, seed=0) == p * p
    assert rank_over_frobenius_subring(2, [x, y], p, seed=0) == 1


def test_frobenius_rank_nonmonomial():
    # B generated by x + y: still transcendence degree 1
    assert rank_over_frobenius_subring(2, [{(1, 0): 1, (0, 1): 1}], 3, seed=0) == 3


def test_kw1_verdict_remark(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    rep = kw1_verdict(alg, seed=0)
    assert rep.verdict == "verified"
    assert (rep.ind, rep.rank_z_over_zp, rep.m_upper, rep.m_lower) == (1, 3, 3, 3)
    assert rep.stabilized


def test_kw1_verdict_inconclusive_low_bound(make_algebra):
    alg = make_algebra("remark:1:1", 3)
    rep = kw1_verdict(alg, degree_bound=1, seed=0)
    assert rep.verdict == "inconclusive"
    assert rep.rank_z_over_zp == 1
    assert rep.m_upper is None
    assert rep.m_upper_formal == "3^(3/2)"
    assert any("raise the degree bound" in note for note in rep.notes)


@pytest.mark.parametrize(
    "nm,p",
    [((1, 1), 3), ((1, 1), 5), ((1, 1), 7),
     ((1, 2), 3), ((1, 2), 5), ((1, 2), 7),
     ((2, 3), 5), ((2, 3), 7)],
)
def test_center_rendering_matches_golden_file(make_algebra, nm, p):
    import os

    n, m = nm
    alg = make_algebra(f"remark:{n}:{m}", p)
    cb = center_basis_bounded(alg, 2 * p - 2, seed=0)
    path = os.path.join(
        os.path.dirname(__file__), "golden", f"center_remark_{n}_{m}_p{p}.txt"
    )
    with open(path) as fh:
        want = [line.rstrip("\n") for line in fh if line.strip()]
    assert [el.render() for el in cb.elements] == want


def test_degree_bound_memory_cap(make_algebra):
    from kw1.errors import DegreeBoundTooLargeForMemory

    alg = make_algebra("heisenberg", 3)
    with pytest.raises(DegreeBoundTooLargeForMemory) as info:
        center_basis_bounded(alg, 60, seed=0)
    assert info.value.count > info.value.cap


def test_frobenius_stabilization_bound():
    from kw1.errors import StabilizationNotReached

    with pytest.raises(StabilizationNotReached):
        rank_over_frobenius_subring(2, [{(1, 0): 1}], 3, stabilization_bound=0)


def test_rank_monotone_in_degree(make_algebra):
    alg = make_algebra("heisenberg", 3)
    ranks = []
    for bound in range(1, 5):
        cb = center_basis_bounded(alg, bound, seed=0)
        ranks.append(rank_over_p_center(cb, alg, 0))
    assert ranks == sorted(ranks)
    assert all(r <= 3 for r in ranks)
    assert ranks[-1] == 3
