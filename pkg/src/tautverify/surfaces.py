"""Two-dimensional test families as linear functionals on codim-2 bases.

Each family is modelled by the numerical-equivalence lattice of its base
surface (a small Gram matrix), restriction vectors for the divisor
generators, and directly stated values for the special classes.  Product
entries are derived from the Gram pairing unless the source table overrides
them; audit_overrides recomputes every derivable entry and reports the
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DataError, DegreeError, DimensionError, SpaceMismatchError, UnknownLabelError
from .linalg import QMatrix, Vector, as_fraction, as_vector
from .rings import RingSpace, TautClass

DERIVED = "derived"
DIRECT = "direct"
OVERRIDE = "override"


@dataclass(frozen=True)
class SurfaceModel:
    id: str
    target_space: str
    lattice_labels: tuple[str, ...]
    gram: QMatrix
    divisor_restrictions: Mapping[str, Vector]
    overrides: Mapping[str, Fraction]  # product label -> stated value
    direct_values: Mapping[str, Fraction]  # special label -> stated value
    # special label -> list of lattice-vector pairs whose Gram pairings sum
    # to the value (for special classes the source computes on the lattice)
    special_products: Mapping[str, tuple[tuple[Vector, Vector], ...]]


@dataclass(frozen=True)
class SurfaceFunctional:
    surface: str
    target_space: str
    values: Mapping[str, Fraction]
    provenance: Mapping[str, str]


@dataclass(frozen=True)
class AuditEntry:
    label: str
    derived: Fraction | None
    effective: Fraction
    status: str  # "match" | "override" | "underivable"


def make_surface(
    id: str,
    target_space: str,
    lattice: Sequence[str],
    gram_rows: Sequence[Sequence],
    restrictions: Mapping[str, Sequence],
    overrides: Mapping[str, object],
    direct_values: Mapping[str, object],
    special_products: Mapping[str, Sequence],
    space: RingSpace,
) -> SurfaceModel:
    labels = tuple(lattice)
    gram = QMatrix.from_rows(gram_rows)
    if gram.rows != len(labels) or gram.cols != len(labels):
        raise DataError(f"{id}: gram matrix must be {len(labels)}x{len(labels)}")
    if gram.transpose() != gram:
        raise DataError(f"{id}: gram matrix must be symmetric")
    restr = {}
    for gen in space.divisor_basis:
        if gen not in restrictions:
            raise DataError(f"{id}: no restriction stored for divisor generator {gen!r}")
        vec = as_vector(restrictions[gen])
        if len(vec) != len(labels):
            raise DataError(f"{id}: restriction of {gen!r} has wrong length")
        restr[gen] = vec
    ov = {k: as_fraction(v) for k, v in overrides.items()}
    for k in ov:
        if k not in space.product_pairs or k not in space.codim2_index:
            raise DataError(f"{id}: override for non-basis product {k!r}")
    dv = {k: as_fraction(v) for k, v in direct_values.items()}
    sp = {}
    for k, pairs in special_products.items():
        sp[k] = tuple((as_vector(p[0]), as_vector(p[1])) for p in pairs)
    return SurfaceModel(id, target_space, labels, gram, restr, ov, dv, sp)


def pair_on_surface(surface: SurfaceModel, v: Sequence, w: Sequence) -> Fraction:
    """Intersection number v . w on the base surface: v^T Gram w."""
    vv, ww = as_vector(v), as_vector(w)
    if len(vv) != len(surface.lattice_labels) or len(ww) != len(surface.lattice_labels):
        raise DimensionError(f"{surface.id}: lattice vectors must have length {len(surface.lattice_labels)}")
    gw = surface.gram.mul_vec(ww)
    return sum((a * b for a, b in zip(vv, gw)), Fraction(0))


def restrict_divisor(surface: SurfaceModel, d: TautClass, space: RingSpace) -> Vector:
    """Linear extension of the stored generator restrictions."""
    if d.space != surface.target_space:
        raise SpaceMismatchError(f"class on {d.space} restricted to a family over {surface.target_space}")
    if d.degree != 1:
        raise DegreeError("restrict_divisor needs a degree-1 class")
    out = [Fraction(0)] * len(surface.lattice_labels)
    for gen, c in zip(space.divisor_basis, d.coeffs):
        if c == 0:
            continue
        for i, x in enumerate(surface.divisor_restrictions[gen]):
            out[i] += c * x
    return tuple(out)


def derived_product_value(surface: SurfaceModel, space: RingSpace, label: str) -> Fraction:
    a, b = space.product_pairs[label]
    return pair_on_surface(surface, surface.divisor_restrictions[a], surface.divisor_restrictions[b])


def _derived_special_value(surface: SurfaceModel, label: str) -> Fraction:
    total = Fraction(0)
    for v, w in surface.special_products[label]:
        total += pair_on_surface(surface, v, w)
    return total


def surface_functional(surface: SurfaceModel, space: RingSpace) -> SurfaceFunctional:
    """Build the full functional: every codim-2 basis label gets a value.

    Product labels come from the Gram pairing unless overridden; special
    labels come from lattice computations where the source gives one, and
    from the stated direct values otherwise.  Extra special symbols with
    direct values (used by the multiplicity systems) ride along.
    """
    values: dict[str, Fraction] = {}
    prov: dict[str, str] = {}
    for label in space.codim2_basis:
        if label in space.product_pairs:
            derived = derived_product_value(surface, space, label)
            if label in surface.overrides:
                values[label] = surface.overrides[label]
                prov[label] = OVERRIDE if surface.overrides[label] != derived else DERIVED
            else:
                values[label] = derived
                prov[label] = DERIVED
        elif label in surface.special_products:
            values[label] = _derived_special_value(surface, label)
            prov[label] = DERIVED
        elif label in surface.direct_values:
            values[label] = surface.direct_values[label]
            prov[label] = DIRECT
        else:
            raise DataError(f"{surface.id}: codim-2 basis label {label!r} is not covered")
    for label, v in surface.direct_values.items():
        if label not in values:
            values[label] = v
            prov[label] = DIRECT
    for label, _ in surface.special_products.items():
        if label not in values:
            values[label] = _derived_special_value(surface, label)
            prov[label] = DERIVED
    return SurfaceFunctional(surface.id, surface.target_space, values, prov)


def evaluate(functional: SurfaceFunctional, c: TautClass, space: RingSpace) -> Fraction:
    """Pair the functional with a codim-2 class: sum of value * coefficient."""
    if c.space != functional.target_space:
        raise SpaceMismatchError(
            f"class on {c.space} evaluated against a functional for {functional.target_space}"
        )
    if c.degree != 2:
        raise DegreeError("evaluate needs a degree-2 class")
    total = Fraction(0)
    for label, coeff in zip(space.codim2_basis, c.coeffs):
        if coeff != 0:
            total += coeff * functional.values[label]
    return total


def evaluate_formal_products(surface: SurfaceModel, space: RingSpace, formal: Mapping[str, object]) -> Fraction:
    """Pair a formal divisor-product vector with the family via raw Gram pairings.

    This bypasses both the basis reduction and any override, so it checks
    that the lattice data itself annihilates the stored ring relations.
    """
    total = Fraction(0)
    for label, c in formal.items():
        c = as_fraction(c)
        if c == 0:
            continue
        if label not in space.product_pairs:
            raise UnknownLabelError(f"{label!r} is not a formal divisor product on {space.id}")
        total += c * derived_product_value(surface, space, label)
    return total


def audit_overrides(surface: SurfaceModel, space: RingSpace) -> list[AuditEntry]:
    """Recompute every derivable entry and compare with the effective value."""
    functional = surface_functional(surface, space)
    report: list[AuditEntry] = []
    seen = set()
    for label in space.codim2_basis:
        seen.add(label)
        effective = functional.values[label]
        if label in space.product_pairs:
            derived = derived_product_value(surface, space, label)
        elif label in surface.special_products:
            derived = _derived_special_value(surface, label)
        else:
            report.append(AuditEntry(label, None, effective, "underivable"))
            continue
        status = "match" if derived == effective else "override"
        report.append(AuditEntry(label, derived, effective, status))
    for label, effective in functional.values.items():
        if label in seen:
            continue
        if label in surface.special_products:
            derived = _derived_special_value(surface, label)
            status = "match" if derived == effective else "override"
            report.append(AuditEntry(label, derived, effective, status))
        else:
            report.append(AuditEntry(label, None, effective, "underivable"))
    return report
