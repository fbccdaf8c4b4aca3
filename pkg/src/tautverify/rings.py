"""Data-driven models of the graded ring pieces and the maps between them.

A RingSpace is a pure data object: an ordered divisor basis, an ordered
codimension-two basis, rewrite rules sending non-basis formal divisor
products into the basis, relation vectors that must reduce to zero, and
expansions of special codimension-two symbols.  Every coefficient lives in a
definition file; this module only implements the bilinear expansion, the
basis reduction, and the homomorphism rules.

Degree-2 classes are vectors over the codim-2 basis.  Formal inputs (plain
mappings from labels to rationals) may also mention non-basis product labels
and, where a map stores them, special symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DataError,
    DegreeError,
    MissingImageError,
    SpaceMismatchError,
    UnknownLabelError,
)
from .linalg import QMatrix, Solution, as_fraction, solve_exact

Formal = Mapping[str, Fraction]


def product_label(basis_index: Mapping[str, int], a: str, b: str) -> str:
    """Canonical label of the formal product of two divisor generators."""
    if basis_index[a] > basis_index[b]:
        a, b = b, a
    return f"{a}^2" if a == b else f"{a}*{b}"


@dataclass(frozen=True)
class TautClass:
    """Exact rational coefficient vector over one graded piece of one space."""

    space: str
    degree: int
    coeffs: tuple[Fraction, ...]

    def coeff(self, label: str, space: "RingSpace") -> Fraction:
        return self.coeffs[space.basis_index(self.degree)[label]]

    def as_dict(self, space: "RingSpace") -> dict[str, Fraction]:
        basis = space.basis(self.degree)
        return {lbl: c for lbl, c in zip(basis, self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "TautClass") -> "TautClass":
        _check_same(self, other)
        return TautClass(self.space, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TautClass") -> "TautClass":
        _check_same(self, other)
        return TautClass(self.space, self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "TautClass":
        c = as_fraction(c)
        return TautClass(self.space, self.degree, tuple(c * x for x in self.coeffs))


def _check_same(a: TautClass, b: TautClass):
    if a.space != b.space or a.degree != b.degree:
        raise SpaceMismatchError(
            f"cannot combine ({a.space}, degree {a.degree}) with ({b.space}, degree {b.degree})"
        )


@dataclass(frozen=True)
class RingSpace:
    """One moduli space: bases, product rewrites, relations, special expansions."""

    id: str
    divisor_basis: tuple[str, ...]
    codim2_basis: tuple[str, ...]
    divisor_index: Mapping[str, int]
    codim2_index: Mapping[str, int]
    # non-basis formal product label -> vector over codim2_basis
    product_reductions: Mapping[str, dict[str, Fraction]]
    # alias divisor symbol -> vector over divisor_basis (e.g. psi_i on the
    # two-pointed genus-1 space)
    divisor_reductions: Mapping[str, dict[str, Fraction]]
    relations: tuple[dict[str, Fraction], ...]
    special_expansions: Mapping[str, TautClass]
    # (gen_a, gen_b) pairs for every canonical product label
    product_pairs: Mapping[str, tuple[str, str]]

    def basis(self, degree: int) -> tuple[str, ...]:
        if degree == 1:
            return self.divisor_basis
        if degree == 2:
            return self.codim2_basis
        raise DegreeError(f"degree must be 1 or 2, got {degree}")

    def basis_index(self, degree: int) -> Mapping[str, int]:
        return self.divisor_index if degree == 1 else self.codim2_index

    def zero(self, degree: int) -> TautClass:
        return TautClass(self.id, degree, (Fraction(0),) * len(self.basis(degree)))

    def from_dict(self, degree: int, coeffs: Mapping[str, object]) -> TautClass:
        index = self.basis_index(degree)
        vec = [Fraction(0)] * len(self.basis(degree))
        for label, c in coeffs.items():
            if label not in index:
                raise UnknownLabelError(f"{label!r} is not a degree-{degree} basis label of {self.id}")
            vec[index[label]] = as_fraction(c)
        return TautClass(self.id, degree, tuple(vec))

    def basis_class(self, degree: int, label: str) -> TautClass:
        return self.from_dict(degree, {label: 1})


def make_space(
    id: str,
    divisor_basis: Sequence[str],
    codim2_basis: Sequence[str],
    product_reductions: Mapping[str, Mapping],
    divisor_reductions: Mapping[str, Mapping],
    relations: Sequence[Mapping],
    special_expansions_formal: Mapping[str, Mapping],
) -> RingSpace:
    """Build and validate a RingSpace from raw definition data."""
    div = tuple(divisor_basis)
    cod = tuple(codim2_basis)
    div_index = {l: i for i, l in enumerate(div)}
    cod_index = {l: i for i, l in enumerate(cod)}
    if len(div_index) != len(div) or len(cod_index) != len(cod):
        raise DataError(f"{id}: duplicate basis labels")

    pairs: dict[str, tuple[str, str]] = {}
    for i, a in enumerate(div):
        for b in div[i:]:
            pairs[product_label(div_index, a, b)] = (a, b)

    reductions = {
        label: {k: as_fraction(v) for k, v in vec.items()}
        for label, vec in product_reductions.items()
    }
    for label, vec in reductions.items():
        if label not in pairs:
            raise DataError(f"{id}: reduction target {label!r} is not a formal product")
        if label in cod_index:
            raise DataError(f"{id}: basis label {label!r} must not carry a reduction")
        for k in vec:
            if k not in cod_index:
                raise DataError(f"{id}: reduction of {label!r} mentions non-basis label {k!r}")
    # Pic-only auxiliary spaces carry no degree-2 piece; products are not
    # defined there and the completeness requirement is vacuous.
    if cod:
        for label in pairs:
            if label not in cod_index and label not in reductions:
                raise DataError(f"{id}: formal product {label!r} has neither basis slot nor reduction")

    dred = {
        alias: {k: as_fraction(v) for k, v in vec.items()}
        for alias, vec in divisor_reductions.items()
    }
    for alias, vec in dred.items():
        for k in vec:
            if k not in div_index:
                raise DataError(f"{id}: divisor reduction of {alias!r} mentions {k!r}")

    bare = RingSpace(
        id=id,
        divisor_basis=div,
        codim2_basis=cod,
        divisor_index=div_index,
        codim2_index=cod_index,
        product_reductions=reductions,
        divisor_reductions=dred,
        relations=tuple({k: as_fraction(v) for k, v in rel.items()} for rel in relations),
        special_expansions={},
        product_pairs=pairs,
    )
    specials = {
        name: reduce_to_basis(bare, {k: as_fraction(v) for k, v in formal.items()})
        for name, formal in special_expansions_formal.items()
    }
    space = replace(bare, special_expansions=specials)

    for rel in space.relations:
        if not reduce_to_basis(space, rel).is_zero():
            raise DataError(f"{id}: stored relation {rel} does not reduce to zero")
    return space


def reduce_to_basis(space: RingSpace, formal: Formal) -> TautClass:
    """Reduce a formal vector over divisor products (and basis labels) to the basis.

    Idempotent on already-reduced input.  Labels must be codim-2 basis labels
    or formal products with a stored rewrite; anything else is an error (in
    particular special-times-divisor products, which these models never need).
    """
    vec = [Fraction(0)] * len(space.codim2_basis)
    for label, c in formal.items():
        c = as_fraction(c)
        if c == 0:
            continue
        if label in space.codim2_index:
            vec[space.codim2_index[label]] += c
        elif label in space.product_reductions:
            for k, v in space.product_reductions[label].items():
                vec[space.codim2_index[k]] += c * v
        else:
            raise UnknownLabelError(f"{label!r} cannot be reduced on {space.id}")
    return TautClass(space.id, 2, tuple(vec))


def expand_divisor(space: RingSpace, coeffs: Formal) -> dict[str, Fraction]:
    """Resolve divisor aliases, returning a vector over the divisor basis."""
    out: dict[str, Fraction] = {}
    for label, c in coeffs.items():
        c = as_fraction(c)
        if label in space.divisor_index:
            out[label] = out.get(label, Fraction(0)) + c
        elif label in space.divisor_reductions:
            for k, v in space.divisor_reductions[label].items():
                out[k] = out.get(k, Fraction(0)) + c * v
        else:
            raise UnknownLabelError(f"{label!r} is not a divisor label of {space.id}")
    return out


def divisor_product(space: RingSpace, a: TautClass, b: TautClass) -> TautClass:
    """Bilinear symmetric product of two divisor classes, reduced to the basis."""
    for x in (a, b):
        if x.space != space.id:
            raise SpaceMismatchError(f"class on {x.space} given to product on {space.id}")
        if x.degree != 1:
            raise DegreeError(f"divisor_product needs degree-1 classes, got degree {x.degree}")
    formal: dict[str, Fraction] = {}
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb == 0:
                continue
            label = product_label(space.divisor_index, space.divisor_basis[i], space.divisor_basis[j])
            formal[label] = formal.get(label, Fraction(0)) + ca * cb
    return reduce_to_basis(space, formal)


def special_expand(space: RingSpace, symbol: str) -> TautClass:
    """Stored expansion of a special codim-2 symbol in the space's basis."""
    try:
        return space.special_expansions[symbol]
    except KeyError:
        raise UnknownLabelError(f"no stored expansion of {symbol!r} on {space.id}") from None


@dataclass(frozen=True)
class RingHom:
    """A pullback (ring rule) or pushforward (plain table) between two spaces."""

    id: str
    kind: str  # "ring" | "table"
    domain: str
    codomain: str
    divisor_images: Mapping[str, TautClass]  # ring kind: degree 1 -> degree 1
    special_images: Mapping[str, TautClass]  # ring kind: special label -> degree 2
    table_images: Mapping[str, TautClass]  # table kind: codim-2 label -> degree 1


def make_hom(
    id: str,
    kind: str,
    domain: RingSpace,
    codomain: RingSpace,
    divisor_images: Mapping[str, Mapping],
    special_images: Mapping[str, Mapping],
    table_images: Mapping[str, Mapping],
    table_unlisted_zero: bool = False,
) -> RingHom:
    """Build and validate a RingHom from raw definition data.

    Special-image vectors may reference the codomain's stored special
    expansions with ``special:<name>`` keys; everything else reduces through
    the codomain's rewrite rules.
    """
    if kind == "ring":
        div: dict[str, TautClass] = {}
        for gen, vec in divisor_images.items():
            if gen not in domain.divisor_index:
                raise DataError(f"{id}: image given for unknown generator {gen!r}")
            div[gen] = codomain.from_dict(1, expand_divisor(codomain, {k: as_fraction(v) for k, v in vec.items()}))
        for gen in domain.divisor_basis:
            if gen not in div:
                raise MissingImageError(f"{id}: no image for divisor generator {gen!r}")
        spec: dict[str, TautClass] = {}
        for name, vec in special_images.items():
            spec[name] = _resolve_special_image(codomain, vec)
        for label in domain.codim2_basis:
            if label not in domain.product_pairs and label not in spec:
                raise MissingImageError(f"{id}: no image for special basis label {label!r}")
        return RingHom(id, kind, domain.id, codomain.id, div, spec, {})
    if kind == "table":
        table: dict[str, TautClass] = {}
        for label, vec in table_images.items():
            if label not in domain.codim2_index:
                raise DataError(f"{id}: table entry for unknown label {label!r}")
            table[label] = codomain.from_dict(1, vec)
        for label in domain.codim2_basis:
            if label not in table:
                if not table_unlisted_zero:
                    raise MissingImageError(f"{id}: no table entry for {label!r}")
                table[label] = codomain.zero(1)
        return RingHom(id, kind, domain.id, codomain.id, {}, {}, table)
    raise DataError(f"{id}: unknown hom kind {kind!r}")


def _resolve_special_image(codomain: RingSpace, vec: Mapping[str, object]) -> TautClass:
    out = codomain.zero(2)
    formal: dict[str, Fraction] = {}
    for key, c in vec.items():
        c = as_fraction(c)
        if key.startswith("special:"):
            out = out + special_expand(codomain, key[len("special:"):]).scale(c)
        else:
            formal[key] = formal.get(key, Fraction(0)) + c
    return out + reduce_to_basis(codomain, formal)


def apply_hom(
    hom: RingHom,
    c: TautClass | Formal,
    domain: RingSpace,
    codomain: RingSpace,
    degree: int | None = None,
) -> TautClass:
    """Apply a stored map to a class.

    Degree-1 classes map linearly through the divisor images.  Degree-2
    classes map label by label: product labels via the ring-homomorphism rule
    (product of divisor images, reduced on the codomain), special labels via
    the stored special images.  Table (pushforward) maps are applied entry by
    entry with no product rule.  `c` may be a plain mapping, in which case it
    may also mention non-basis product labels and any stored special symbol.
    """
    if hom.domain != domain.id or hom.codomain != codomain.id:
        raise SpaceMismatchError(f"{hom.id} maps {hom.domain} -> {hom.codomain}")
    if isinstance(c, TautClass):
        if c.space != domain.id:
            raise SpaceMismatchError(f"class on {c.space} given to {hom.id} (domain {domain.id})")
        degree = c.degree
        items = list(zip(domain.basis(degree), c.coeffs))
    else:
        if degree is None:
            degree = 2
        items = [(k, as_fraction(v)) for k, v in c.items()]

    if hom.kind == "table":
        if degree != 2:
            raise DegreeError("pushforward tables act on degree-2 classes")
        out = codomain.zero(1)
        for label, coeff in items:
            if coeff == 0:
                continue
            if label not in hom.table_images:
                raise MissingImageError(f"{hom.id}: no table entry for {label!r}")
            out = out + hom.table_images[label].scale(coeff)
        return out

    if degree == 1:
        out = codomain.zero(1)
        for gen, coeff in items:
            if coeff == 0:
                continue
            if gen not in hom.divisor_images:
                raise MissingImageError(f"{hom.id}: no divisor image for {gen!r}")
            out = out + hom.divisor_images[gen].scale(coeff)
        return out

    out2 = codomain.zero(2)
    for label, coeff in items:
        if coeff == 0:
            continue
        if label in domain.product_pairs:
            a, b = domain.product_pairs[label]
            img = divisor_product(codomain, hom.divisor_images[a], hom.divisor_images[b])
        elif label in hom.special_images:
            img = hom.special_images[label]
        else:
            raise MissingImageError(f"{hom.id}: no image for label {label!r}")
        out2 = out2 + img.scale(coeff)
    return out2


# --- gluing restrictions for the node-smoothing lemmas -----------------------


@dataclass(frozen=True)
class GluingRestriction:
    """Restriction of a boundary-divisor sub-basis to a product of two spaces.

    Images live on the disjoint sum of the Picard groups of the two factors;
    coordinates are keyed ``(factor, divisor label)`` with factor 1 or 2.
    """

    id: str
    domain: str
    domain_labels: tuple[str, ...]
    factors: tuple[str, str]
    images: Mapping[str, dict[tuple[int, str], Fraction]]
    weierstrass_factors: tuple[int, ...]


def make_gluing(
    id: str,
    domain: RingSpace,
    domain_labels: Sequence[str],
    factors: tuple[RingSpace, RingSpace],
    images: Mapping[str, Mapping[str, object]],
    weierstrass_factors: Sequence[int],
) -> GluingRestriction:
    resolved: dict[str, dict[tuple[int, str], Fraction]] = {}
    for label in domain_labels:
        if label not in images:
            raise MissingImageError(f"{id}: no restriction stored for {label!r}")
        vec: dict[tuple[int, str], Fraction] = {}
        for key, c in images[label].items():
            fac_s, div_label = key.split(":", 1)
            fac = int(fac_s)
            expanded = expand_divisor(factors[fac - 1], {div_label: as_fraction(c)})
            for k, v in expanded.items():
                vec[(fac, k)] = vec.get((fac, k), Fraction(0)) + v
        resolved[label] = vec
    return GluingRestriction(
        id, domain.id, tuple(domain_labels), (factors[0].id, factors[1].id), resolved, tuple(weierstrass_factors)
    )


def solve_boundary_class(
    gluing: GluingRestriction,
    factors: tuple[RingSpace, RingSpace],
    weierstrass: TautClass,
    space: RingSpace,
) -> tuple[dict[str, Fraction], TautClass, Solution]:
    """Express a Weierstrass boundary locus in the boundary-divisor sub-basis.

    Sets up the linear system ``sum_i x_i * restriction(label_i) = pullback of
    the genus-2 Weierstrass divisor from the stated factors`` and solves it
    exactly.  Returns the sub-basis presentation, its reduction to the
    canonical codim-2 basis, and the raw solver output (for uniqueness and
    consistency assertions).
    """
    coords: list[tuple[int, str]] = []
    for fac, factor_space in ((1, factors[0]), (2, factors[1])):
        for lbl in factor_space.divisor_basis:
            coords.append((fac, lbl))
    coord_index = {c: i for i, c in enumerate(coords)}

    cols = []
    for label in gluing.domain_labels:
        col = [Fraction(0)] * len(coords)
        for key, v in gluing.images[label].items():
            col[coord_index[key]] += v
        cols.append(col)
    matrix = QMatrix.from_rows(list(map(list, zip(*cols))))

    rhs = [Fraction(0)] * len(coords)
    for fac in gluing.weierstrass_factors:
        factor_space = factors[fac - 1]
        if weierstrass.space != factor_space.id:
            raise SpaceMismatchError(
                f"Weierstrass divisor lives on {weierstrass.space}, factor is {factor_space.id}"
            )
        for lbl, c in weierstrass.as_dict(factor_space).items():
            rhs[coord_index[(fac, lbl)]] += c

    sol = solve_exact(matrix, rhs)
    if isinstance(sol, Solution):
        presentation = {lbl: sol.vector[i] for i, lbl in enumerate(gluing.domain_labels)}
        reduced = reduce_to_basis(space, presentation)
        return presentation, reduced, sol
    raise DataError(f"{gluing.id}: restriction system is inconsistent: {sol}")
