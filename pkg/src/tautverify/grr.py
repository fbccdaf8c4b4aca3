"""The determinantal pipeline: Riemann-Roch pushforward for the universal
spin bundle, jet-bundle Chern classes, the degeneracy-locus degree-3 class of
a virtual difference, the kappa pushforward, and the genus-4 specialization
extracting lambda^2 coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .chern import CHERN_MAX_DEGREE, ChernVector, chern_from_character
from .errors import DegreeError
from .linalg import as_fraction
from .poly import TruncatedPoly
from .series import exp_scaled, jet_sum, series_mul, todd_inverse

GRR_MAX_ORDER = 4
_KAPPA = ("kappa0", "kappa1", "kappa2", "kappa3")


def grr_spin_character(order: int) -> TruncatedPoly:
    """Chern character of the (virtual) pushforward of the universal spin bundle.

    Multiplies the inverse Todd series by e^{psi/2}, then sends the psi^k
    coefficient (k >= 1) to kappa_{k-1}.  The psi^1 coefficient vanishes, so
    no kappa0 term ever appears.
    """
    if order < 0:
        raise DegreeError("order must be >= 0")
    if order > GRR_MAX_ORDER:
        raise DegreeError(f"order {order} exceeds the configured series support {GRR_MAX_ORDER}")
    s = series_mul(todd_inverse(order), exp_scaled(Fraction(1, 2), order))
    out = TruncatedPoly.zero(max(order - 1, 0))
    for k in range(1, order + 1):
        c = s.coeff(k)
        if c != 0:
            out = out + TruncatedPoly.monomial({_KAPPA[k - 1]: 1}, c, out.max_degree)
    return out


def jet_bundle_chern(n: int, w) -> ChernVector:
    """Chern classes of the weight-w jet bundle of order n (rank n + 1)."""
    w = as_fraction(w)
    ch = jet_sum(n, w, CHERN_MAX_DEGREE)
    polys = [
        TruncatedPoly.monomial({"psi": k}, ch.coeff(k), CHERN_MAX_DEGREE) for k in range(1, 4)
    ]
    return chern_from_character(n + 1, *polys)


def porteous_c3(cJ: ChernVector, cE: ChernVector) -> TruncatedPoly:
    """Degree-3 part of c(J)/c(E), keeping only fiber-positive monomials.

    Terms without the fiber class psi die under the fiber pushforward, so the
    published expansion keeps exactly the psi-positive part; monomials with
    psi-exponent zero are dropped here for the same reason.
    """
    one = TruncatedPoly.constant(1, CHERN_MAX_DEGREE)
    e = cE.c1 + cE.c2 + cE.c3
    inv = one - e + e * e - e * e * e
    total = cJ.total() * inv
    deg3 = total.degree_part(3)
    kept = {exps: c for exps, c in deg3.terms if exps[0] >= 1}
    return TruncatedPoly.from_terms(kept, CHERN_MAX_DEGREE)


def kappa_pushforward(p: TruncatedPoly, g: int) -> TruncatedPoly:
    """Integrate over the fiber: psi^a * M -> kappa_{a-1} * M, psi * M -> (2g-2) M."""
    from .poly import _INDEX

    out = TruncatedPoly.zero(p.max_degree)
    for exps, c in p.terms:
        a = exps[0]
        rest = (0,) + exps[1:]
        if a == 0:
            raise DegreeError(f"monomial {exps} has no fiber-class factor to integrate")
        if a == 1:
            out = out + TruncatedPoly.from_terms({rest: c * (2 * g - 2)}, p.max_degree)
        else:
            if a - 1 >= len(_KAPPA):
                raise DegreeError(f"kappa_{a - 1} is outside the supported range")
            kappa_exps = list(rest)
            kappa_exps[_INDEX[_KAPPA[a - 1]]] += 1
            out = out + TruncatedPoly.from_terms({tuple(kappa_exps): c}, p.max_degree)
    return out


def _exps(powers: dict[str, int]) -> tuple[int, ...]:
    from .poly import _exps_from_powers

    return _exps_from_powers(powers)


# lambda^2 extraction on the genus-4 interior: kappa1 = 12 lambda, Faber's
# kappa2 = 27/2 lambda^2, lambda2 = lambda1^2/2, and lambda == lambda1.
_SPECIALIZE = {
    _exps({"kappa2": 1}): Fraction(27, 2),
    _exps({"kappa1": 1, "lam": 1}): Fraction(12),
    _exps({"kappa1": 1, "lam1": 1}): Fraction(12),
    _exps({"kappa1": 2}): Fraction(144),
    _exps({"lam": 2}): Fraction(1),
    _exps({"lam": 1, "lam1": 1}): Fraction(1),
    _exps({"lam1": 2}): Fraction(1),
    _exps({"lam2": 1}): Fraction(1, 2),
}


def m4_specialize(p: TruncatedPoly) -> Fraction:
    """Coefficient of lambda^2 after the genus-4 interior substitutions."""
    if not p.is_pure_degree(2):
        raise DegreeError("m4_specialize needs a class of pure total degree 2")
    total = Fraction(0)
    for exps, c in p.terms:
        factor = _SPECIALIZE.get(exps)
        if factor is None:
            raise DegreeError(f"no genus-4 specialization rule for monomial {exps}")
        total += c * factor
    return total


def spin_cover_degree(g: int, parity: str) -> int:
    """Degree of the forgetful map from the spin moduli space of given parity."""
    from .counts import even_theta_count, odd_theta_count

    if parity == "odd":
        return odd_theta_count(g)
    if parity == "even":
        return even_theta_count(g)
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def spin_porteous_class() -> TruncatedPoly:
    """kappa-pushforward of the spin degeneracy class at genus 4."""
    cJ = jet_bundle_chern(2, Fraction(1, 2))
    # c1 of the pushforward line bundle is -lambda/4 (the stated value is the
    # doubled one); its c2 vanishes as an input datum.
    cE = ChernVector.line_bundle(TruncatedPoly.monomial({"lam": 1}, Fraction(-1, 4), CHERN_MAX_DEGREE))
    return kappa_pushforward(porteous_c3(cJ, cE), g=4)


def canonical_jet_porteous_class() -> TruncatedPoly:
    """kappa-pushforward of the order-5 canonical jet degeneracy class at genus 4."""
    cJ = jet_bundle_chern(5, 1)
    z = TruncatedPoly.zero(CHERN_MAX_DEGREE)
    cE = ChernVector(
        4,
        TruncatedPoly.monomial({"lam1": 1}, 1, CHERN_MAX_DEGREE),
        TruncatedPoly.monomial({"lam2": 1}, 1, CHERN_MAX_DEGREE),
        z,
    )
    return kappa_pushforward(porteous_c3(cJ, cE), g=4)


_LOCI = ("SH4_minus", "H4_minus", "H4", "H4_plus")


def locus_lambda2(which: str, repo=None) -> Fraction:
    """lambda^2 coefficient of a subcanonical locus on the genus-4 interior.

    SH4_minus runs the full spin pipeline; H4_minus multiplies it by the odd
    spin cover degree; H4 runs the canonical-jet pipeline; H4_plus subtracts
    the hyperelliptic contribution (one per Weierstrass point) and H4_minus
    from H4.
    """
    if which not in _LOCI:
        raise ValueError(f"unknown locus {which!r}; expected one of {_LOCI}")
    if which == "SH4_minus":
        return m4_specialize(spin_porteous_class())
    if which == "H4_minus":
        return spin_cover_degree(4, "odd") * locus_lambda2("SH4_minus", repo)
    if which == "H4":
        return m4_specialize(canonical_jet_porteous_class())
    from .counts import hyperelliptic_weierstrass_count
    from .data import default_repo

    repo = repo or default_repo()
    m4 = repo.space("M4")
    hyp4_lambda2 = repo.catalog_class("Hyp4").coeff("lam^2", m4)
    return (
        locus_lambda2("H4", repo)
        - hyperelliptic_weierstrass_count(4) * hyp4_lambda2
        - locus_lambda2("H4_minus", repo)
    )
