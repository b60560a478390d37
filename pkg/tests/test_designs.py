import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpha.arrays import ExponentArray, is_gpha
from gpha.catalog import BINARY_CUBE, BINARY_SQUARE_4, GPBF_NOT_GPHA, TERNARY_SQUARE_3
from gpha.cocycles import (
    Cocycle,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    is_butson,
    mu_z,
    trivial_cocycle,
)
from gpha.designs import (
    Rds,
    equivalence_harness,
    ext_rds_check,
    gamma_iso,
    rds_from_expansion,
    splitting_rds,
    verify_rds,
)
from gpha.errors import InvalidInputError, InvalidParameterError
from gpha.groups import Group, expansion_context

import oracles


def test_l_mod_k_is_not_an_rds():
    ctx = expansion_context(Group((2, 2, 2)), (1, 1, 1), 2)
    Q = ctx.quotient
    LK = frozenset(Q.canonical(g) for g in ctx.L)
    r = Rds(Q, LK, LK, (8, 2, len(LK), 4))
    assert not verify_rds(r)


def test_cube_quotient_rds():
    r = rds_from_expansion(BINARY_CUBE, (1, 1, 1))
    assert r.ambient.order == 16
    assert len(r.members) == 8
    assert r.params == (8, 2, 8, 4)
    assert verify_rds(r)
    assert not r.notes


def test_ternary_quotient_rds():
    r = rds_from_expansion(TERNARY_SQUARE_3, (1, 1))
    assert len(r.members) == 9 and r.params == (9, 3, 9, 3)
    assert verify_rds(r)


def test_counterexample_quotient_rds_fails():
    assert not verify_rds(rds_from_expansion(GPBF_NOT_GPHA, (1, 1)))


def test_quotient_rds_matches_difference_count_oracle():
    r = rds_from_expansion(BINARY_CUBE, (1, 1, 1))
    Q = r.ambient
    counts = oracles.rds_counts(r.members, Q.sub, Q.elements())
    outside = {x: c for x, c in counts.items() if x not in r.forbidden}
    assert set(outside.values()) == {4}
    assert all(counts[x] == 0 for x in r.forbidden)


def test_non_prime_modulus_flagged():
    arr = ExponentArray(Group((2, 2)), 4, (0, 1, 2, 3))
    r = rds_from_expansion(arr, (1, 1))
    assert r.params[3] == 1
    assert any("not prime" in n for n in r.notes)
    odd = ExponentArray(Group((3,)), 2, (0, 1, 1))
    r2 = rds_from_expansion(odd, (1,))
    assert r2.params[3] == Fraction(3, 2)
    assert not verify_rds(r2)


def test_members_outside_ambient_rejected():
    r = splitting_rds(ExponentArray(Group((2, 2)), 2, (0, 0, 0, 1)))
    bad = Rds(r.ambient, r.forbidden, r.members | {(5, 0, 0)}, r.params)
    with pytest.raises(InvalidInputError):
        verify_rds(bad)


def test_splitting_examples():
    assert verify_rds(splitting_rds(ExponentArray(Group((2, 2)), 2, (0, 0, 0, 1))))
    assert not verify_rds(splitting_rds(ExponentArray(Group((2, 2)), 2, (0, 0, 0, 0))))
    sq = splitting_rds(ExponentArray(Group((3,)), 3, (0, 1, 1)))
    assert sq.params == (3, 3, 3, 1) and verify_rds(sq)


def test_splitting_matches_difference_count_oracle():
    G = Group((2, 2))
    for vals in itertools.product(range(2), repeat=4):
        f = ExponentArray(G, 2, vals)
        r = splitting_rds(f)
        counts = oracles.rds_counts(r.members, r.ambient.sub, r.ambient.elements())
        want = all(counts[x] == 0 for x in r.forbidden if any(x)) and all(
            c == 2 for x, c in counts.items() if x not in r.forbidden)
        assert verify_rds(r) == want


def test_extension_examples():
    G = TERNARY_SQUARE_3.group
    psi = cocycle_product(mu_z(G, (1, 1), 3), coboundary(TERNARY_SQUARE_3))
    assert ext_rds_check(psi) and is_butson(cocyclic_matrix(psi))
    assert not ext_rds_check(trivial_cocycle(Group((2, 2)), 2))
    assert ext_rds_check(mu_z(Group((2,)), (1,), 2))


def test_extension_requires_prime_modulus():
    with pytest.raises(InvalidParameterError):
        ext_rds_check(trivial_cocycle(Group((2, 2)), 4))


@settings(max_examples=40)
@given(st.sampled_from([((2, 2), 2), ((2, 2, 2), 2), ((3, 3), 3), ((3,), 3), ((4,), 2)]), st.data())
def test_extension_criterion_matches_butson(case, data):
    s, h = case
    G = Group(s)
    tail = data.draw(st.lists(st.integers(0, h - 1), min_size=G.size - 1, max_size=G.size - 1))
    phi = ExponentArray(G, h, (0, *tail))
    base = mu_z(G, (1,) * G.m, h) if data.draw(st.booleans()) else trivial_cocycle(G, h)
    psi = cocycle_product(base, coboundary(phi))
    assert ext_rds_check(psi) == is_butson(cocyclic_matrix(psi))


@pytest.mark.parametrize("phi", [BINARY_CUBE, TERNARY_SQUARE_3, BINARY_SQUARE_4, GPBF_NOT_GPHA])
def test_gamma_verdicts(phi):
    g = gamma_iso(phi, (1,) * phi.group.m)
    assert g.bijective and g.is_homomorphism and g.diagram_commutes
    assert g.image_of_transversal_equals_R


def test_gamma_smallest_case():
    phi = ExponentArray(Group((2,)), 2, (0, 0))
    g = gamma_iso(phi, (1,))
    assert g.ok
    assert len(g.mapping) == 4
    assert {g.mapping[(0, (x,))] for x in range(2)} == set(rds_from_expansion(phi, (1,)).members)


def test_gamma_mixed_type():
    phi = ExponentArray(Group((2, 3)), 2, (0, 1, 1, 0, 1, 0))
    assert gamma_iso(phi, (1, 0)).ok


def test_harness_square_example():
    r = equivalence_harness(BINARY_SQUARE_4, (1, 1))
    assert r.gpha and r.butson and r.symmetric and r.rds_ok and r.plateaued and r.gpbf
    assert r.obstruction_holds and not r.coboundary_mu and r.guarantees


def test_harness_counterexample():
    r = equivalence_harness(GPBF_NOT_GPHA, (1, 1))
    assert r.gpbf and not r.gpha and r.obstruction_holds is False


def test_harness_random_non_gpha_ternary():
    phi = ExponentArray(Group((3, 3)), 3, (0, 1, 2, 0, 0, 0, 0, 0, 0))
    assert not is_gpha(phi, (1, 1))
    r = equivalence_harness(phi, (1, 1))
    assert not (r.gpha or r.butson or r.rds_ok or r.plateaued)


def test_harness_non_prime_modulus_reports_without_guarantees():
    phi = ExponentArray(Group((2, 2)), 4, (0, 1, 2, 3))
    r = equivalence_harness(phi, (1, 1))
    assert not r.guarantees
    assert r.symmetric


def test_harness_rejects_zero_type():
    with pytest.raises(InvalidParameterError):
        equivalence_harness(BINARY_CUBE, (0, 0, 0))


def test_report_text_and_json():
    r = equivalence_harness(TERNARY_SQUARE_3, (1, 1))
    text = r.to_text()
    assert "gpha               true" in text
    assert '"gpha": true' in r.to_json()


def test_verified_parameters_satisfy_counting_identity():
    for phi in (BINARY_CUBE, TERNARY_SQUARE_3, BINARY_SQUARE_4):
        r = rds_from_expansion(phi, (1,) * phi.group.m)
        v, n, k, lam = r.params
        assert verify_rds(r) and k * (k - 1) == lam * n * (v - 1)


def test_rds_json():
    r = rds_from_expansion(TERNARY_SQUARE_3, (1, 1))
    d = r.to_json()
    assert d["params"] == [9, 3, 9, 3] and d["verified"] is True
    assert len(d["members"]) == 9 and len(d["forbidden"]) == 3


def test_imported_cocycle_must_be_a_cocycle():
    t = trivial_cocycle(Group((2,)), 2).table.copy()
    t[1, 0] = 1
    with pytest.raises(InvalidInputError):
        ext_rds_check(Cocycle(Group((2,)), 2, t))
