import pytest

from factorlab import (
    ResourceBoundError,
    central_elements,
    congruence_of_central,
    correspondence_check,
    direct_product,
    factor_pairs,
    parse_formula,
    partition_text,
    verify_dfc,
)
from factorlab.fixtures import cyclic_ring, ring_context
from oracles import ring_idempotents

RING_PHI = "z1 * x = z1 * y"
LATTICE_PHI = r"x \/ z1 = y \/ z1"


def test_central_z6_matches_idempotents(z6, rings_z6_ctx):
    ces = central_elements(z6, rings_z6_ctx)
    assert sorted(ce.e[0] for ce in ces) == [0, 1, 3, 4]
    assert sorted(ce.e[0] for ce in ces) == ring_idempotents(z6)


def test_central_chain3_bottom_top_only(c3, lattices_ctx):
    ces = central_elements(c3, lattices_ctx)
    assert sorted(ce.e[0] for ce in ces) == [0, 2]


def test_central_diamond_all_four(diamond, lattices_ctx):
    ces = central_elements(diamond, lattices_ctx)
    assert sorted(ce.e[0] for ce in ces) == [0, 1, 2, 3]


def test_central_trivial_pairs_pin_orientation(z6, rings_z6_ctx):
    # the pair with identity theta carries the zero-term value, the mirrored
    # pair the one-term value
    zero_val = rings_z6_ctx.zero_values(z6)[0]
    one_val = rings_z6_ctx.one_values(z6)[0]
    for ce in central_elements(z6, rings_z6_ctx):
        if ce.pair.theta.is_identity():
            assert ce.e == (zero_val,)
        if ce.pair.theta.is_total():
            assert ce.e == (one_val,)


def test_central_uniqueness_per_pair(z6, rings_z6_ctx):
    ces = central_elements(z6, rings_z6_ctx)
    assert len(ces) == len(factor_pairs(z6))
    assert len({ce.e for ce in ces}) == len(ces)


def test_central_elements_of_ring_product(rings_ctx, z2):
    z2xz2 = direct_product(z2, z2, name="Z2xZ2")
    ces = central_elements(z2xz2, rings_ctx)
    assert len(ces) == 4
    assert sorted(ce.e[0] for ce in ces) == [0, 1, 2, 3]


def test_verify_dfc_ring_pool_passes(rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    report = verify_dfc(phi, rings_z6_ctx)
    assert report.ok
    assert len(report.pairs_tested) == 16
    assert report.counterexamples == ()


def test_verify_dfc_lattice_pool_passes(lattices_ctx):
    phi = parse_formula(LATTICE_PHI, lattices_ctx.signature, 1)
    assert verify_dfc(phi, lattices_ctx).ok


def test_verify_dfc_equality_fails_with_back_direction(rings_z6_ctx):
    phi = parse_formula("x = y", rings_z6_ctx.signature, 1)
    report = verify_dfc(phi, rings_z6_ctx)
    assert not report.ok
    ce = report.counterexamples[0]
    assert ce.direction == "<="
    # formula false although the first coordinates agree
    assert ce.a == ce.c and ce.b != ce.d


def test_verify_dfc_forward_direction_counterexample(rings_z6_ctx):
    # b = d holds in products whenever the second coordinates agree, so it
    # reports a forward failure at some a != c
    phi = parse_formula("exists w . w = w and x = x", rings_z6_ctx.signature, 1)
    report = verify_dfc(phi, rings_z6_ctx)
    assert not report.ok
    assert any(ce.direction == "=>" for ce in report.counterexamples)


def test_verify_dfc_respects_pair_cap(rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    report = verify_dfc(phi, rings_z6_ctx, pair_cap=6)
    assert ("Z6", "Z6") in report.skipped
    assert all(
        an != "Z6" or bn != "Z6" for an, bn in report.pairs_tested
    )


def test_verify_dfc_eval_cap(rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    with pytest.raises(ResourceBoundError):
        verify_dfc(phi, rings_z6_ctx, eval_cap=10)


def test_dfc_relation_is_first_projection_kernel(z6, rings_z6_ctx):
    # evaluated over A x B with the distinguished parameters, a passing
    # formula relates exactly the pairs with equal first coordinate
    from factorlab import DnfEvaluator, pair_index

    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    z3 = cyclic_ring(3)
    p = direct_product(z6, z3)
    ev = DnfEvaluator(p, phi)
    zs = tuple(
        pair_index(za, zb, z3.size)
        for za, zb in zip(rings_z6_ctx.zero_values(z6), rings_z6_ctx.one_values(z3))
    )
    for x in range(p.size):
        for y in range(p.size):
            assert ev.satisfied(x, y, zs) == (x // 3 == y // 3)


def test_congruence_of_central_z6(z6, rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    for ce in central_elements(z6, rings_z6_ctx):
        report = congruence_of_central(z6, phi, ce)
        assert report.ok
        assert report.computed.rep == ce.pair.theta.rep
    # the idempotent 3 defines the two-class congruence it is zero-side for
    three = [
        ce for ce in central_elements(z6, rings_z6_ctx) if ce.e == (3,)
    ][0]
    rep = congruence_of_central(z6, phi, three)
    assert partition_text(rep.computed) == "{0,2,4|1,3,5}"


def test_congruence_of_central_boundary_elements(z6, rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    ces = {ce.e[0]: ce for ce in central_elements(z6, rings_z6_ctx)}
    zero_side = rings_z6_ctx.zero_values(z6)[0]
    one_side = rings_z6_ctx.one_values(z6)[0]
    # zero-side element defines the identity relation's pair, one-side the total
    assert congruence_of_central(z6, phi, ces[zero_side]).computed.is_identity()
    assert congruence_of_central(z6, phi, ces[one_side]).computed.is_total()


def test_congruence_of_central_mismatch_reported(z6, rings_z6_ctx):
    # a formula that does not define factor congruences yields a mismatch
    # (here: constantly true relates everything)
    phi = parse_formula("0 = 0", rings_z6_ctx.signature, 1)
    ces = central_elements(z6, rings_z6_ctx)
    reports = [congruence_of_central(z6, phi, ce) for ce in ces]
    assert any(r.is_congruence and not r.matches_pair for r in reports)


def test_correspondence_z6(z6, rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    report = correspondence_check(z6, phi, rings_z6_ctx)
    assert report.ok
    assert report.n_central == report.n_pairs == 4
    assert report.idempotent_check["ok"]
    assert report.idempotent_check["complements_ok"]


def test_correspondence_simple_algebra(z5, rings_z6_ctx):
    phi = parse_formula(RING_PHI, rings_z6_ctx.signature, 1)
    ctx = ring_context(z5).populated(max_size=5, depth=1)
    report = correspondence_check(z5, phi, ctx)
    assert report.ok
    assert report.n_central == 2


def test_correspondence_ring_product(rings_ctx, z2):
    phi = parse_formula(RING_PHI, rings_ctx.signature, 1)
    z2xz2 = direct_product(z2, z2, name="Z2xZ2")
    report = correspondence_check(z2xz2, phi, rings_ctx)
    assert report.ok
    assert report.n_central == 4


def test_correspondence_lattice_no_idempotent_check(diamond, lattices_ctx):
    phi = parse_formula(LATTICE_PHI, lattices_ctx.signature, 1)
    report = correspondence_check(diamond, phi, lattices_ctx)
    assert report.ok
    assert report.idempotent_check is None


def test_complement_duality_ring_fixture(z6, rings_z6_ctx):
    ces = central_elements(z6, rings_z6_ctx)
    by_pair = {(ce.pair.theta.rep, ce.pair.theta_c.rep): ce.e[0] for ce in ces}
    for (t, tc), e in by_pair.items():
        mirror = by_pair[(tc, t)]
        assert z6.apply("+", (e, mirror)) == z6.apply("1")


def test_l2_context_machinery(z6):
    # duplicated zero/one terms exercise tuple plumbing beyond length one
    from factorlab import VarietyContext
    from factorlab.terms import App
    import dataclasses

    sig = dataclasses.replace(z6.signature, l=2)
    z6_l2 = dataclasses.replace(z6, signature=sig)
    ctx = VarietyContext(
        z6_l2, (App("1"), App("1")), (App("0"), App("0"))
    ).populated(max_size=6, depth=1)
    phi = parse_formula("z1 * x = z1 * y and z2 * x = z2 * y", sig, 2)
    assert verify_dfc(phi, ctx).ok
    ces = central_elements(z6_l2, ctx)
    assert sorted(ce.e for ce in ces) == [(0, 0), (1, 1), (3, 3), (4, 4)]
