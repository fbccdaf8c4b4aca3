"""Loading and validation of the embedded definition data.

All bases, relations, images, catalog classes, families and expected values
live in JSON files under ``tautverify/data``; a ``data_dir`` override may
replace the embedded copies bit-for-bit.  Everything is validated once at
load and is immutable afterwards, so a repository can be shared freely
between threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .counts import CountRegistry
from .errors import DataError, UnknownNameError
from .linalg import as_fraction
from .rings import (
    GluingRestriction,
    RingHom,
    RingSpace,
    TautClass,
    make_gluing,
    make_hom,
    make_space,
)
from .surfaces import SurfaceFunctional, SurfaceModel, make_surface, surface_functional

SPACE_IDS = ("M22", "M31", "M3", "M4", "M12", "M21")
RING_HOM_IDS = ("theta_star", "j3_star", "p_star_pushforward", "p_pullback_m3")
GLUING_IDS = ("xi_star_m31", "xi_star_m4")
SURFACE_IDS = ("S1", "S2", "S3", "T1", "T2", "T3", "V1", "V2", "V3", "V4")


def _strip_comments(obj):
    if isinstance(obj, dict):
        return {k: _strip_comments(v) for k, v in obj.items() if k != "comment"}
    if isinstance(obj, list):
        return [_strip_comments(v) for v in obj]
    return obj


class Repo:
    """One fully loaded, validated set of definitions and expected values."""

    def __init__(self, data_dir: str | Path | None = None):
        self._dir = Path(data_dir) if data_dir is not None else None
        self._spaces: dict[str, RingSpace] = {}
        self._homs: dict[str, RingHom] = {}
        self._gluings: dict[str, GluingRestriction] = {}
        self._catalog: dict[str, TautClass] = {}
        self._catalog_sources: dict[str, str] = {}
        self._formal: dict[str, dict] = {}
        self._surfaces: dict[str, SurfaceModel] = {}
        self._functionals: dict[str, SurfaceFunctional] = {}
        self._load()

    # -- raw file access ------------------------------------------------

    def _read(self, relpath: str) -> dict:
        try:
            if self._dir is not None:
                text = (self._dir / relpath).read_text(encoding="utf-8")
            else:
                root = resources.files("tautverify").joinpath("data")
                text = root.joinpath(relpath).read_text(encoding="utf-8")
        except (FileNotFoundError, OSError) as exc:
            raise DataError(f"cannot read definition file {relpath!r}: {exc}") from exc
        try:
            return _strip_comments(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DataError(f"malformed JSON in {relpath!r}: {exc}") from exc

    # -- loading ----------------------------------------------------------

    def _load(self):
        for sid in SPACE_IDS:
            raw = self._read(f"spaces/{sid.lower()}.json")
            if raw["id"] != sid:
                raise DataError(f"space file {sid.lower()}.json declares id {raw['id']!r}")
            self._spaces[sid] = make_space(
                id=raw["id"],
                divisor_basis=raw["divisor_basis"],
                codim2_basis=raw["codim2_basis"],
                product_reductions=raw["product_reductions"],
                divisor_reductions=raw["divisor_reductions"],
                relations=raw["relations"],
                special_expansions_formal=raw["special_expansions"],
            )

        for hid in RING_HOM_IDS:
            raw = self._read(f"homs/{hid}.json")
            self._homs[hid] = make_hom(
                id=raw["id"],
                kind=raw["kind"],
                domain=self.space(raw["domain"]),
                codomain=self.space(raw["codomain"]),
                divisor_images=raw["divisor_images"],
                special_images=raw["special_images"],
                table_images=raw["table_images"],
                table_unlisted_zero=raw.get("table_unlisted_zero", False),
            )

        for gid in GLUING_IDS:
            raw = self._read(f"homs/{gid}.json")
            factors = tuple(self.space(f) for f in raw["factors"])
            self._gluings[gid] = make_gluing(
                id=raw["id"],
                domain=self.space(raw["domain"]),
                domain_labels=raw["domain_labels"],
                factors=factors,
                images=raw["images"],
                weierstrass_factors=raw["weierstrass_factors"],
            )

        raw = self._read("catalog.json")
        for name, entry in raw["classes"].items():
            space = self.space(entry["space"])
            self._catalog[name] = space.from_dict(entry["degree"], entry["coeffs"])
            self._catalog_sources[name] = entry.get("source", "")
        for name, entry in raw["formal_classes"].items():
            self._formal[name] = {
                "space": entry["space"],
                "degree": entry["degree"],
                "coeffs": {k: as_fraction(v) for k, v in entry["coeffs"].items()},
            }

        for sid in SURFACE_IDS:
            raw = self._read(f"surfaces/{sid.lower()}.json")
            space = self.space(raw["target_space"])
            model = make_surface(
                id=raw["id"],
                target_space=raw["target_space"],
                lattice=raw["lattice"],
                gram_rows=raw["gram"],
                restrictions=raw["restrictions"],
                overrides=raw["overrides"],
                direct_values=raw["direct_values"],
                special_products=raw["special_products"],
                space=space,
            )
            self._surfaces[sid] = model
            self._functionals[sid] = surface_functional(model, space)

        self.counts = CountRegistry(self._read("counts.json"))
        self.golden = self._read("golden_checks.json")

    # -- accessors --------------------------------------------------------

    def space(self, sid: str) -> RingSpace:
        try:
            return self._spaces[sid]
        except KeyError:
            raise UnknownNameError(f"unknown space {sid!r}") from None

    def hom(self, hid: str) -> RingHom:
        try:
            return self._homs[hid]
        except KeyError:
            raise UnknownNameError(f"unknown homomorphism {hid!r}") from None

    def gluing(self, gid: str) -> GluingRestriction:
        try:
            return self._gluings[gid]
        except KeyError:
            raise UnknownNameError(f"unknown gluing restriction {gid!r}") from None

    def catalog_class(self, name: str) -> TautClass:
        try:
            return self._catalog[name]
        except KeyError:
            raise UnknownNameError(f"unknown catalog class {name!r}") from None

    def catalog_source(self, name: str) -> str:
        self.catalog_class(name)
        return self._catalog_sources[name]

    def catalog_names(self) -> list[str]:
        return sorted(self._catalog)

    def formal_class(self, name: str) -> dict[str, Fraction]:
        try:
            return dict(self._formal[name]["coeffs"])
        except KeyError:
            raise UnknownNameError(f"unknown formal class {name!r}") from None

    def formal_class_space(self, name: str) -> str:
        self.formal_class(name)
        return self._formal[name]["space"]

    def surface(self, sid: str) -> SurfaceModel:
        try:
            return self._surfaces[sid]
        except KeyError:
            raise UnknownNameError(f"unknown surface {sid!r}") from None

    def functional(self, sid: str) -> SurfaceFunctional:
        self.surface(sid)
        return self._functionals[sid]

    def surface_space(self, sid: str) -> RingSpace:
        return self.space(self.surface(sid).target_space)


_DEFAULT: Repo | None = None


def default_repo() -> Repo:
    """The lazily loaded repository backed by the embedded data files."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Repo()
    return _DEFAULT
