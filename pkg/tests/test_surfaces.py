from fractions import Fraction as F

import pytest
from hypothesis import given
import hypothesis.strategies as st

from tautverify.errors import SpaceMismatchError
from tautverify.rings import divisor_product, special_expand
from tautverify.surfaces import (
    audit_overrides,
    evaluate,
    evaluate_formal_products,
    pair_on_surface,
    restrict_divisor,
    surface_functional,
)

from conftest import rationals


def test_pair_fiber_self_intersection(repo):
    s1 = repo.surface("S1")
    assert pair_on_surface(s1, [1, 0], [1, 0]) == 0
    assert pair_on_surface(s1, [1, 0], [0, 1]) == 1


def test_lattice_invariants(repo):
    # diagonal self-intersection 2-2g = -2 on the genus-2 square families
    for sid in ("T2", "V2"):
        surface = repo.surface(sid)
        d = surface.lattice_labels.index("D")
        assert surface.gram.entries[d][d] == -2
    # boundary divisors on the five-pointed genus-0 base square to -1
    v4 = repo.surface("V4")
    assert all(v4.gram.entries[i][i] == -1 for i in range(len(v4.lattice_labels)))
    # fiber classes square to zero on every product base
    for sid in ("S1", "S2", "S3", "T1"):
        gram = repo.surface(sid).gram
        assert gram.entries[0][0] == 0 and gram.entries[1][1] == 0


def test_pair_blowup_lattice(repo):
    # lam against d2 on the pencil family over the blown-up plane
    v3 = repo.surface("V3")
    assert pair_on_surface(v3, [3, -1, 0], [-3, 1, -1]) == -1


def test_pair_disjoint_boundary_divisors(repo):
    v4 = repo.surface("V4")
    d24 = [0, 0, 0, 0, 0, 1, 0, 0, 0, 0]
    d35 = [0, 0, 0, 0, 0, 0, 0, 0, 1, 0]
    assert pair_on_surface(v4, d24, d35) == 1


def test_restrict_divisor_s2(repo):
    m31 = repo.space("M31")
    assert restrict_divisor(repo.surface("S2"), m31.basis_class(1, "d0"), m31) == (F(-2), F(12))


def test_restrict_divisor_v3(repo):
    m4 = repo.space("M4")
    assert restrict_divisor(repo.surface("V3"), m4.basis_class(1, "d2"), m4) == (F(-3), F(1), F(-1))


def test_restrict_zero(repo):
    m31 = repo.space("M31")
    assert restrict_divisor(repo.surface("T1"), m31.zero(1), m31) == (F(0), F(0))


def test_functional_s1_nonzero_entries(repo):
    f = repo.functional("S1")
    nonzero = {k: v for k, v in f.values.items() if v != 0}
    assert nonzero == {
        "psi*d0": -2, "psi*d21": 1, "d0^2": 8,
        "d0*d11": -2, "d0*d21": -2, "d11*d21": 1,
        "gamma1": 2, "gamma2": -1,
    }


def test_functional_t3_stated_entries(repo):
    f = repo.functional("T3")
    assert f.values["d01a"] == 12
    assert f.values["kappa2"] == 1
    assert f.values["d0*d11"] == -12
    assert f.values["d11^2"] == 1
    assert f.values["d11*d21"] == 1
    assert f.values["gamma1"] == 12


def test_functional_v4_entries(repo):
    f = repo.functional("V4")
    assert f.values["d2^2"] == 1
    assert f.values["d1*d2"] == -2
    assert f.values["d1|1"] == 1
    assert f.values["gamma1"] == -2
    assert all(f.values[lbl] == 0 for lbl in ("lam^2", "lam*d0", "lam*d1", "lam*d2"))


def test_functional_provenance_tags(repo):
    f = repo.functional("T2")
    assert f.provenance["psi*d21"] == "override"
    assert f.provenance["psi^2"] == "derived"
    assert f.provenance["kappa2"] == "direct"
    assert repo.functional("V2").provenance["d1|1"] == "derived"


def test_evaluate_big_pairings(repo):
    m4 = repo.space("M4")
    theta_t = divisor_product(m4, repo.catalog_class("Theta_null_M4"), repo.catalog_class("T_M4"))
    assert evaluate(repo.functional("V1"), theta_t, m4) == 18432
    m31 = repo.space("M31")
    w_theta = divisor_product(m31, repo.catalog_class("W31"), repo.catalog_class("Theta31"))
    assert evaluate(repo.functional("T2"), w_theta, m31) == 388


def test_evaluate_zero(repo):
    m31 = repo.space("M31")
    assert evaluate(repo.functional("S3"), m31.zero(2), m31) == 0


def test_evaluate_space_mismatch(repo):
    m4 = repo.space("M4")
    with pytest.raises(SpaceMismatchError):
        evaluate(repo.functional("S1"), repo.catalog_class("Hyp4"), m4)


@given(st.data())
def test_evaluate_linear(repo, data):
    sid = data.draw(st.sampled_from(["S1", "S2", "T2", "V2", "V4"]))
    space = repo.surface_space(sid)
    f = repo.functional(sid)
    n = len(space.codim2_basis)
    coeffs_a = data.draw(st.lists(rationals, min_size=n, max_size=n))
    coeffs_b = data.draw(st.lists(rationals, min_size=n, max_size=n))
    t = data.draw(rationals)
    a = space.from_dict(2, dict(zip(space.codim2_basis, coeffs_a)))
    b = space.from_dict(2, dict(zip(space.codim2_basis, coeffs_b)))
    assert evaluate(f, a + b.scale(t), space) == evaluate(f, a, space) + t * evaluate(f, b, space)


def test_relation_annihilation_via_lattice(repo):
    m31, m4 = repo.space("M31"), repo.space("M4")
    for sid in ("S1", "S2", "S3", "T1", "T2", "T3"):
        for rel in m31.relations:
            assert evaluate_formal_products(repo.surface(sid), m31, rel) == 0
    for sid in ("V1", "V2", "V3", "V4"):
        for rel in m4.relations:
            assert evaluate_formal_products(repo.surface(sid), m4, rel) == 0


def test_relation_annihilation_via_functional(repo):
    # the reduced relation class is zero, so every functional kills it
    from tautverify.rings import reduce_to_basis

    m31 = repo.space("M31")
    reduced = reduce_to_basis(m31, m31.relations[0])
    for sid in ("S1", "S2", "S3", "T1", "T2", "T3"):
        assert evaluate(repo.functional(sid), reduced, m31) == 0


def test_audit_s1_all_match(repo):
    entries = audit_overrides(repo.surface("S1"), repo.space("M31"))
    products = [e for e in entries if e.derived is not None and e.label in repo.space("M31").product_pairs]
    assert products and all(e.status == "match" for e in products)


def test_audit_t2_single_override(repo):
    entries = {e.label: e for e in audit_overrides(repo.surface("T2"), repo.space("M31"))}
    assert entries["psi*d21"].status == "override"
    assert entries["psi*d21"].derived == -2
    assert entries["psi*d21"].effective == -6
    for lbl in ("psi^2", "d21^2", "d11^2"):
        assert entries[lbl].status == "match"
    assert entries["kappa2"].status == "underivable"


def test_audit_v2_lattice_specials_match(repo):
    entries = {e.label: e for e in audit_overrides(repo.surface("V2"), repo.space("M4"))}
    assert entries["d1^2"].status == "match" and entries["d1^2"].effective == 16
    assert entries["d2^2"].status == "match" and entries["d2^2"].effective == -2
    assert entries["d1|1"].status == "match" and entries["d1|1"].effective == 6


def test_single_override_across_all_surfaces(repo):
    overrides = []
    for sid in ("S1", "S2", "S3", "T1", "T2", "T3", "V1", "V2", "V3", "V4"):
        for e in audit_overrides(repo.surface(sid), repo.surface_space(sid)):
            if e.status == "override":
                overrides.append((sid, e.label))
    assert overrides == [("T2", "psi*d21")]


def test_t3_kappa2_consistent_with_two_node_expansion(repo):
    # the stated kappa2 value on the chain family follows from the vanishing
    # of the two-node class: evaluating its expansion must give zero
    m31 = repo.space("M31")
    assert evaluate(repo.functional("T3"), special_expand(m31, "d00"), m31) == 0
