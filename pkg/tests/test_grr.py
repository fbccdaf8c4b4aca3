from fractions import Fraction as F

import pytest

from tautverify.chern import ChernVector
from tautverify.errors import DegreeError
from tautverify.grr import (
    canonical_jet_porteous_class,
    grr_spin_character,
    jet_bundle_chern,
    kappa_pushforward,
    locus_lambda2,
    m4_specialize,
    porteous_c3,
    spin_cover_degree,
    spin_porteous_class,
)
from tautverify.poly import TruncatedPoly


def mono(powers, coeff, deg=3):
    return TruncatedPoly.monomial(powers, coeff, deg)


def test_spin_character_order4():
    out = grr_spin_character(4)
    assert out == mono({"kappa1": 1}, F(-1, 24)) + mono({"kappa3": 1}, F(7, 5760))


def test_spin_character_order2():
    assert grr_spin_character(2) == mono({"kappa1": 1}, F(-1, 24), deg=1)


def test_spin_character_order0():
    assert grr_spin_character(0).is_zero()


def test_spin_character_order_cap():
    with pytest.raises(DegreeError):
        grr_spin_character(5)


def test_jet_chern_spin():
    cv = jet_bundle_chern(2, F(1, 2))
    assert cv.rank == 3
    assert cv.c1 == mono({"psi": 1}, F(9, 2))
    assert cv.c2 == mono({"psi": 2}, F(23, 4))
    assert cv.c3 == mono({"psi": 3}, F(15, 8))


def test_jet_chern_canonical():
    cv = jet_bundle_chern(5, 1)
    assert cv.rank == 6
    assert (cv.c1, cv.c2, cv.c3) == (mono({"psi": 1}, 21), mono({"psi": 2}, 175), mono({"psi": 3}, 735))


def test_jet_chern_order_zero():
    cv = jet_bundle_chern(0, F(1, 2))
    assert cv.rank == 1
    assert cv.c1 == mono({"psi": 1}, F(1, 2))
    assert cv.c2.is_zero() and cv.c3.is_zero()


def test_porteous_with_trivial_denominator():
    cJ = jet_bundle_chern(2, F(1, 2))
    out = porteous_c3(cJ, ChernVector.trivial(1))
    assert out == cJ.c3


def test_porteous_spin_case():
    cJ = jet_bundle_chern(2, F(1, 2))
    cE = ChernVector.line_bundle(mono({"lam": 1}, F(-1, 4)))
    out = porteous_c3(cJ, cE)
    expected = (
        mono({"psi": 3}, F(15, 8))
        + mono({"psi": 2, "lam": 1}, F(23, 16))
        + mono({"psi": 1, "lam": 2}, F(9, 32))
    )
    assert out == expected
    # with c2(E) = 0 the quotient agrees with the published three-term form
    manual = cJ.c3 - cE.c1 * cJ.c2 + cE.c1 * cE.c1 * cJ.c1
    assert out == manual


def test_porteous_hodge_case():
    cJ = jet_bundle_chern(5, 1)
    cE = ChernVector(4, mono({"lam1": 1}, 1), mono({"lam2": 1}, 1), TruncatedPoly.zero(3))
    out = porteous_c3(cJ, cE)
    expected = (
        mono({"psi": 3}, 735)
        + mono({"psi": 2, "lam1": 1}, -175)
        + mono({"psi": 1, "lam1": 2}, 21)
        + mono({"psi": 1, "lam2": 1}, -21)
    )
    assert out == expected


def test_kappa_pushforward_rules():
    assert kappa_pushforward(mono({"psi": 3}, 1), 4) == mono({"kappa2": 1}, 1)
    assert kappa_pushforward(mono({"psi": 2, "lam1": 1}, -175), 4) == mono(
        {"kappa1": 1, "lam1": 1}, -175
    )
    out = kappa_pushforward(mono({"psi": 1, "lam1": 2}, 21) + mono({"psi": 1, "lam2": 1}, -21), 4)
    assert out == mono({"lam1": 2}, 126) + mono({"lam2": 1}, -126)


def test_kappa_pushforward_needs_fiber_class():
    with pytest.raises(DegreeError):
        kappa_pushforward(mono({"lam": 3}, 1), 4)


def test_specialize_examples():
    spin = (
        mono({"kappa2": 1}, F(15, 8))
        + mono({"kappa1": 1, "lam": 1}, F(23, 16))
        + mono({"lam": 2}, F(27, 16))
    )
    assert m4_specialize(spin) == F(177, 4)
    hodge = (
        mono({"kappa2": 1}, 735)
        + mono({"kappa1": 1, "lam1": 1}, -175)
        + mono({"lam1": 2}, 126)
        + mono({"lam2": 1}, -126)
    )
    assert m4_specialize(hodge) == F(15771, 2)
    assert m4_specialize(mono({"lam": 2}, 1)) == 1


def test_specialize_rejects_wrong_degree():
    with pytest.raises(DegreeError):
        m4_specialize(mono({"psi": 3}, 1))


def test_pipeline_classes():
    assert m4_specialize(spin_porteous_class()) == F(177, 4)
    assert m4_specialize(canonical_jet_porteous_class()) == F(15771, 2)


def test_spin_cover_degrees():
    assert spin_cover_degree(4, "odd") == 120
    assert spin_cover_degree(2, "odd") == 6
    assert spin_cover_degree(2, "even") == 10
    with pytest.raises(ValueError):
        spin_cover_degree(4, "sideways")


def test_locus_lambda2(repo):
    assert locus_lambda2("SH4_minus", repo) == F(177, 4)
    assert locus_lambda2("H4_minus", repo) == 5310
    assert locus_lambda2("H4", repo) == F(15771, 2)
    assert locus_lambda2("H4_plus", repo) == 2448


def test_lambda2_matches_assembled_class(repo):
    m4 = repo.space("M4")
    assert locus_lambda2("H4_plus", repo) == repo.catalog_class("H4plus_theorem").coeff("lam^2", m4)
