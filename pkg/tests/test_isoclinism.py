"""Commutation maps, isomorphism search, and isoclinism decisions."""

import numpy as np
import pytest

from pgf.constructions import (
    build_cyclic,
    build_direct_product_with_elem_abelian,
    build_group,
    u3_named_elements,
)
from pgf.engine import CapExceeded, GroupError
from pgf.isoclinism import (
    SearchConfig,
    are_isoclinic,
    are_isomorphic,
    commutation_map,
    conjugate_type_isoclinism_consistency,
    verify_isoclinism_witness,
    verify_isomorphism,
)
from pgf.structure import recognize_u3


@pytest.fixture(scope="module")
def u3_31():
    return build_group("u3:p=3,m=1")


@pytest.fixture(scope="module")
def hmod31():
    return build_group("hmod:p=3,m=1")


@pytest.fixture(scope="module")
def quint31():
    return build_group("quint:p=3,m=1")


@pytest.fixture(scope="module")
def u3_times_c3():
    return build_group("xab:u3:p=3,m=1,k=1")


# -- commutation map ---------------------------------------------------------


def test_commutation_map_identity_row_and_column(u3_31):
    cm = commutation_map(u3_31)
    e = cm.quotient.identity
    assert np.all(cm.table[e, :] == u3_31.identity)
    assert np.all(cm.table[:, e] == u3_31.identity)
    assert np.all(np.diagonal(cm.table) == u3_31.identity)


@pytest.mark.parametrize("spec", ["u3:p=3,m=1", "u3:p=3,m=2"])
def test_commutation_map_brackets_give_corner_elements(spec):
    # the bracket of the i-th and j-th standard generators lands on the
    # corner element whose field coordinate is alpha^(i+j), 0-based
    g = build_group(spec)
    named = u3_named_elements(g)
    cm = commutation_map(g)
    coset = cm.quotient.backend.coset_of
    m = g.field.m
    for i in range(m):
        for j in range(m):
            got = cm.table[coset[named["x"][i]], coset[named["y"][j]]]
            assert got == named["h"][i + j]


def test_commutation_map_image_fills_derived_subgroup(hmod31):
    cm = commutation_map(hmod31)
    image = cm.image_members()
    assert np.array_equal(hmod31.closure_members(image), cm.derived.members)
    # here the bracket values already exhaust the derived subgroup
    assert np.array_equal(image, cm.derived.members)


def test_commutation_map_stable_under_resampling_seed(u3_31):
    a = commutation_map(u3_31, resample=100, seed=1)
    b = commutation_map(u3_31, resample=200, seed=99)
    assert np.array_equal(a.table, b.table)


# -- isomorphism -------------------------------------------------------------


def test_self_isomorphism_is_identity(u3_31):
    res = are_isomorphic(u3_31, u3_31)
    assert res.outcome == "isomorphic"
    assert np.array_equal(res.mapping, np.arange(u3_31.order))
    assert verify_isomorphism(u3_31, u3_31, res.mapping)


def test_abelian_vs_nonabelian_refuted(u3_31):
    cube = build_direct_product_with_elem_abelian(build_cyclic(3), 2)
    assert cube.order == u3_31.order == 27
    res = are_isomorphic(u3_31, cube)
    assert res.outcome == "refuted"
    assert "abelian" in res.reason


def test_matrix_quotient_isomorphic_to_quintuple(hmod31, quint31):
    res = are_isomorphic(hmod31, quint31)
    assert res.outcome == "isomorphic"
    assert res.nodes > 0
    assert verify_isomorphism(hmod31, quint31, res.mapping)
    again = are_isomorphic(hmod31, quint31)
    assert np.array_equal(res.mapping, again.mapping)


def test_exponent_refutes_same_order_pair(u3_31):
    c27 = build_cyclic(27)
    res = are_isomorphic(u3_31, c27)
    assert res.outcome == "refuted"
    assert "abelian" in res.reason or "exponent" in res.reason


def test_budget_exhaustion_is_inconclusive_not_refuted(hmod31, quint31):
    res = are_isomorphic(hmod31, quint31, SearchConfig(max_nodes=1))
    assert res.outcome == "inconclusive"
    assert "budget" in res.reason


def test_search_exhaustion_refutes_without_invariant_pruning(u3_31):
    # with profile pruning off the candidate buckets still empty out,
    # because no cyclic-group element shares a noncentral fingerprint
    c27 = build_cyclic(27)
    res = are_isomorphic(u3_31, c27, SearchConfig(order_profile_pruning=False))
    assert res.outcome == "refuted"
    assert "search" in res.reason


def test_verify_isomorphism_rejects_tampering(hmod31, quint31):
    res = are_isomorphic(hmod31, quint31)
    bad = res.mapping.copy()
    bad[[1, 2]] = bad[[2, 1]]
    assert not verify_isomorphism(hmod31, quint31, bad)
    assert not verify_isomorphism(hmod31, quint31, bad[:-1])
    assert not verify_isomorphism(hmod31, quint31, np.zeros_like(res.mapping))


def test_isomorphism_result_serializes(u3_31):
    d = are_isomorphic(u3_31, u3_31).as_dict()
    assert d["outcome"] == "isomorphic"
    assert d["mapping"] == list(range(27))
    d = are_isomorphic(u3_31, build_cyclic(27)).as_dict()
    assert d["mapping"] is None and d["reason"]


# -- isoclinism --------------------------------------------------------------


def test_isoclinic_reflexive_identity_witness(u3_31):
    res = are_isoclinic(u3_31, u3_31)
    assert res.outcome == "isoclinic"
    assert np.array_equal(res.witness.phi, np.arange(9))
    assert np.array_equal(res.witness.theta_src, res.witness.theta_dst)
    assert verify_isoclinism_witness(u3_31, u3_31, res.witness)


def test_isoclinic_to_direct_product_with_c3(u3_31, u3_times_c3):
    res = are_isoclinic(u3_31, u3_times_c3)
    assert res.outcome == "isoclinic"
    assert verify_isoclinism_witness(u3_31, u3_times_c3, res.witness)
    assert conjugate_type_isoclinism_consistency(u3_31, u3_times_c3)
    assert u3_31.conjugate_type() == [1, 3]
    assert u3_times_c3.conjugate_type() == [1, 3]


def test_isoclinic_refuted_immediately_on_frame_sizes(u3_31, hmod31):
    res = are_isoclinic(u3_31, hmod31)
    assert res.outcome == "refuted"
    assert "9 vs 27" in res.reason


def test_abelian_groups_are_all_isoclinic():
    c27 = build_cyclic(27)
    cube = build_direct_product_with_elem_abelian(build_cyclic(3), 2)
    res = are_isoclinic(c27, cube)
    assert res.outcome == "isoclinic"
    assert verify_isoclinism_witness(c27, cube, res.witness)


def test_matrix_quotient_isoclinic_to_quintuple(hmod31, quint31):
    res = are_isoclinic(hmod31, quint31)
    assert res.outcome == "isoclinic"
    assert verify_isoclinism_witness(hmod31, quint31, res.witness)
    assert conjugate_type_isoclinism_consistency(hmod31, quint31)
    # both central quotients carry the unitriangular structure
    for g in (hmod31, quint31):
        rec = recognize_u3(g.quotient(g.center()))
        assert rec.recognized and rec.q == 3


def test_witness_inversion_is_symmetric(u3_31, u3_times_c3):
    res = are_isoclinic(u3_31, u3_times_c3)
    inv = res.witness.inverted()
    assert verify_isoclinism_witness(u3_times_c3, u3_31, inv)
    back = inv.inverted()
    assert np.array_equal(back.phi, res.witness.phi)
    assert np.array_equal(back.theta_src, res.witness.theta_src)
    assert np.array_equal(back.theta_dst, res.witness.theta_dst)


def test_conjugate_types_of_quotient_and_its_central_product(hmod31):
    wide = build_group("xab:hmod:p=3,m=1,k=1")
    res = are_isoclinic(hmod31, wide)
    assert res.outcome == "isoclinic"
    assert conjugate_type_isoclinism_consistency(hmod31, wide)
    assert hmod31.conjugate_type() == [1, 9]
    assert wide.conjugate_type() == [1, 9]


def test_isoclinism_budget_exhaustion_inconclusive(hmod31, quint31):
    res = are_isoclinic(hmod31, quint31, SearchConfig(max_nodes=1))
    assert res.outcome == "inconclusive"
    assert "budget" in res.reason


def test_verify_rejects_tampered_witness(u3_31, u3_times_c3):
    res = are_isoclinic(u3_31, u3_times_c3)
    w = res.witness
    bad_phi = w.phi.copy()
    bad_phi[[0, 1]] = bad_phi[[1, 0]]
    tampered = type(w)(bad_phi, w.theta_src, w.theta_dst)
    assert not verify_isoclinism_witness(u3_31, u3_times_c3, tampered)
    bad_dst = w.theta_dst.copy()
    bad_dst[[0, 1]] = bad_dst[[1, 0]]
    tampered = type(w)(w.phi, w.theta_src, bad_dst)
    assert not verify_isoclinism_witness(u3_31, u3_times_c3, tampered)


def test_search_cap_requires_override(monkeypatch, u3_31, u3_times_c3):
    import pgf.isoclinism as iso
    monkeypatch.setattr(iso, "SEARCH_CAP", 8)
    with pytest.raises(CapExceeded, match="allow_large"):
        are_isoclinic(u3_31, u3_times_c3)
    res = are_isoclinic(u3_31, u3_times_c3, allow_large=True)
    assert res.outcome == "isoclinic"


def test_search_config_rejects_empty_budgets():
    with pytest.raises(GroupError):
        SearchConfig(max_nodes=0)
    with pytest.raises(GroupError):
        SearchConfig(time_limit=0.0)


def test_witness_serializes_as_index_tables(u3_31, u3_times_c3):
    res = are_isoclinic(u3_31, u3_times_c3)
    d = res.as_dict()
    assert d["outcome"] == "isoclinic"
    w = d["witness"]
    assert sorted(w) == ["phi", "theta_dst", "theta_src"]
    assert sorted(w["phi"]) == list(range(9))
    assert all(isinstance(v, int) for v in w["theta_src"])
