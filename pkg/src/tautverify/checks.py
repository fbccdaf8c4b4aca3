"""Named, independently runnable checks covering every verified result.

Each check recomputes a published statement from the loaded definitions and
compares against the golden expected values, exactly.  A check result carries
the comparison serialized part by part; on failure only the differing parts
are kept, so a 16-entry vector mismatch reports just the offending entries.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from . import __version__
from .counts import (
    abel_difference_degree,
    mixed_difference_degree,
    scorza_correspondence_class,
    scorza_triple_degree,
)
from .data import Repo, default_repo
from .errors import UnknownNameError
from .grr import (
    grr_spin_character,
    jet_bundle_chern,
    locus_lambda2,
    spin_cover_degree,
)
from .linalg import (
    Inconsistent,
    QMatrix,
    Solution,
    as_fraction,
    kernel_basis,
    mat_rref,
    row_space_rref,
    solve_exact,
)
from .rings import RingSpace, TautClass, apply_hom, divisor_product, reduce_to_basis, special_expand
from .series import jet_sum
from .surfaces import audit_overrides, evaluate, evaluate_formal_products

Part = tuple[str, str, str]


# --- formatting ---------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)):
        return str(v)
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, dict):
        # key-sorted so the serialization never depends on insertion order
        return ", ".join(f"{k}={_fmt(v[k])}" for k in sorted(v))
    return str(v)


def _fmt_class(c: TautClass, space: RingSpace) -> str:
    parts = [f"{lbl}={coeff}" for lbl, coeff in zip(space.basis(c.degree), c.coeffs) if coeff != 0]
    return ", ".join(parts) if parts else "0"


def _cls_part(name: str, expected: TautClass, actual: TautClass, space: RingSpace) -> Part:
    return (name, _fmt_class(expected, space), _fmt_class(actual, space))


def _val_part(name: str, expected, actual) -> Part:
    return (name, _fmt(expected), _fmt(actual))


# --- results -------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    id: str
    anchor: str
    expected: str
    actual: str
    passed: bool
    micros: int


@dataclass(frozen=True)
class Report:
    version: str
    results: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self, deterministic: bool = True) -> str:
        """Canonical JSON document; byte-stable for fixed inputs.

        Measured runtimes vary between runs, so the canonical form zeroes the
        micros field; pass deterministic=False to keep measured timings.
        """
        doc = {
            "version": self.version,
            "checks": [
                {
                    "id": r.id,
                    "anchor": r.anchor,
                    "expected": r.expected,
                    "actual": r.actual,
                    "passed": r.passed,
                    "micros": 0 if deterministic else r.micros,
                }
                for r in self.results
            ],
            "summary": {
                "total": len(self.results),
                "passed": sum(r.passed for r in self.results),
                "failed": sum(not r.passed for r in self.results),
            },
        }
        return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=True) + "\n"

    def to_human(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.id}  ({r.micros} us)")
            lines.append(f"       {r.anchor}")
            if not r.passed:
                lines.append(f"       expected: {r.expected}")
                lines.append(f"       actual:   {r.actual}")
        n_pass = sum(r.passed for r in self.results)
        lines.append(f"{n_pass}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"


def _finish(check_id: str, anchor: str, parts: Sequence[Part], t0: float) -> CheckResult:
    micros = int((time.perf_counter() - t0) * 1_000_000)
    diffs = [p for p in parts if p[1] != p[2]]
    if diffs:
        expected = "; ".join(f"{n}: {e}" for n, e, _ in diffs)
        actual = "; ".join(f"{n}: {a}" for n, _, a in diffs)
        return CheckResult(check_id, anchor, expected, actual, False, micros)
    text = "; ".join(f"{n}: {e}" for n, e, _ in parts)
    return CheckResult(check_id, anchor, text, text, True, micros)


# --- multiplicity systems -------------------------------------------------


@dataclass(frozen=True)
class Component:
    """One right-hand class of a multiplicity decomposition.

    `ref` names a known class ("catalog:X", "special:X" or "basis:X"); the
    unknown component instead carries per-family fiber counts, a known
    pushforward, and optionally draws its lam^2 entry from the jet pipeline.
    """

    name: str
    ref: str | None = None
    counts: Mapping[str, str] | None = None  # surface id -> count-constant id
    pushforward_ref: str | None = None
    lambda2_from_pipeline: bool = False


@dataclass(frozen=True)
class MultiplicitySystem:
    id: str
    space: str
    lhs_factors: tuple[str, str]
    unknowns: tuple[str, ...]
    components: tuple[Component, ...]
    functional_constraints: tuple[str, ...]  # surface ids
    pushforward_constraints: tuple[str, ...]  # hom ids
    coefficient_constraints: tuple[str, ...]  # codim-2 basis labels


F31_SYSTEM = MultiplicitySystem(
    id="F31",
    space="M31",
    lhs_factors=("W31", "Theta31"),
    unknowns=("m", "n", "k", "l", "j"),
    components=(
        Component("hyperelliptic", ref="catalog:Hyp31_theorem"),
        Component(
            "hyperflex",
            counts={"T1": "T1_F31_fibers", "T2": "T2_F31_fibers"},
            pushforward_ref="F31_pushforward_M3",
        ),
        Component("weierstrass_boundary", ref="catalog:W2_M31"),
        Component("elliptic_bridge", ref="special:gamma1"),
        Component("rational_bridge", ref="special:gamma2"),
    ),
    functional_constraints=("T1", "T2", "T3"),
    pushforward_constraints=("p_star_pushforward",),
    coefficient_constraints=(),
)

H4PLUS_SYSTEM = MultiplicitySystem(
    id="H4plus",
    space="M4",
    lhs_factors=("Theta_null_M4", "T_M4"),
    unknowns=("m", "n", "k", "l"),
    components=(
        Component("hyperelliptic", ref="catalog:Hyp4"),
        Component(
            "even_triple_vanishing",
            counts={"V1": "V1_H4plus", "V2": "V2_H4plus"},
            lambda2_from_pipeline=True,
        ),
        Component("weierstrass_boundary", ref="catalog:W2_M4"),
        Component("elliptic_bridge", ref="basis:gamma1"),
    ),
    functional_constraints=("V1", "V2", "V3", "V4"),
    pushforward_constraints=(),
    coefficient_constraints=("lam^2",),
)

_SYSTEMS = {"F31": F31_SYSTEM, "H4plus": H4PLUS_SYSTEM}


def _resolve_component_class(repo: Repo, space: RingSpace, ref: str) -> TautClass:
    kind, _, name = ref.partition(":")
    if kind == "catalog":
        return repo.catalog_class(name)
    if kind == "special":
        return special_expand(space, name)
    if kind == "basis":
        return space.basis_class(2, name)
    raise UnknownNameError(f"unknown component reference {ref!r}")


def _lhs_product(repo: Repo, system: MultiplicitySystem) -> TautClass:
    space = repo.space(system.space)
    a, b = (repo.catalog_class(n) for n in system.lhs_factors)
    return divisor_product(space, a, b)


def _assemble_system(repo: Repo, system: MultiplicitySystem):
    """Rows of the linear system in the unknown multiplicities.

    Functional constraints pair every component against a family (the
    unknown component contributes its fiber count, zero for disjoint
    families); pushforward constraints contribute one row per target divisor
    generator; coefficient constraints equate a single basis coordinate,
    with the unknown component's lam^2 entry taken from the jet pipeline.
    """
    space = repo.space(system.space)
    lhs = _lhs_product(repo, system)
    known = {
        c.name: _resolve_component_class(repo, space, c.ref) for c in system.components if c.ref
    }
    names: list[str] = []
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    for sid in system.functional_constraints:
        f = repo.functional(sid)
        row = []
        for comp in system.components:
            if comp.ref:
                row.append(evaluate(f, known[comp.name], space))
            else:
                cid = (comp.counts or {}).get(sid)
                row.append(repo.counts.get(cid).value if cid else Fraction(0))
        names.append(f"family:{sid}")
        rows.append(row)
        rhs.append(evaluate(f, lhs, space))

    for hid in system.pushforward_constraints:
        hom = repo.hom(hid)
        codomain = repo.space(hom.codomain)
        lhs_push = apply_hom(hom, lhs, space, codomain)
        images = {}
        for comp in system.components:
            if comp.ref:
                images[comp.name] = apply_hom(hom, known[comp.name], space, codomain)
            else:
                images[comp.name] = repo.catalog_class(comp.pushforward_ref)
        for i, lbl in enumerate(codomain.divisor_basis):
            names.append(f"pushforward:{lbl}")
            rows.append([images[c.name].coeffs[i] for c in system.components])
            rhs.append(lhs_push.coeffs[i])

    for lbl in system.coefficient_constraints:
        idx = space.codim2_index[lbl]
        row = []
        for comp in system.components:
            if comp.ref:
                row.append(known[comp.name].coeffs[idx])
            elif comp.lambda2_from_pipeline and lbl == "lam^2":
                row.append(locus_lambda2("H4_plus", repo))
            else:
                raise UnknownNameError(
                    f"{system.id}: no source for coefficient {lbl!r} of component {comp.name!r}"
                )
        names.append(f"coefficient:{lbl}")
        rows.append(row)
        rhs.append(lhs.coeffs[idx])

    return names, QMatrix.from_rows(rows), tuple(rhs)


def solve_multiplicities(system_id: str, repo: Repo | None = None):
    """Solve a registered multiplicity system and scan for redundant rows.

    Returns (assignment, redundant_names, parts): the exact solution keyed by
    unknown name, the constraints whose removal keeps the system uniquely
    solvable with the same solution (each such constraint is automatically
    satisfied by it), and the serialized comparison parts.
    """
    repo = repo or default_repo()
    try:
        system = _SYSTEMS[system_id]
    except KeyError:
        raise UnknownNameError(f"unknown multiplicity system {system_id!r}") from None
    names, matrix, rhs = _assemble_system(repo, system)
    sol = solve_exact(matrix, rhs)
    parts: list[Part] = []
    golden = repo.golden[f"multiplicities_{system_id.lower()}"]
    expected = {k: as_fraction(v) for k, v in golden["solution"].items()}
    if isinstance(sol, Inconsistent):
        parts.append(("consistent", "true", f"false (witness rhs {sol.witness_rhs})"))
        return {}, [], parts
    assignment = dict(zip(system.unknowns, sol.vector))
    parts.append(_val_part("solution", expected, assignment))
    parts.append(_val_part("unique", True, sol.unique))

    redundant: list[str] = []
    for drop in range(matrix.rows):
        sub = QMatrix(tuple(r for i, r in enumerate(matrix.entries) if i != drop))
        sub_rhs = tuple(v for i, v in enumerate(rhs) if i != drop)
        sub_sol = solve_exact(sub, sub_rhs)
        if isinstance(sub_sol, Solution) and sub_sol.unique and sub_sol.vector == sol.vector:
            dropped_lhs = sum(
                (matrix.entries[drop][j] * sol.vector[j] for j in range(matrix.cols)), Fraction(0)
            )
            if dropped_lhs == rhs[drop]:
                redundant.append(names[drop])
    parts.append(
        _val_part(
            "redundant_constraints_at_least",
            golden["min_redundant"],
            min(len(redundant), golden["min_redundant"]),
        )
    )
    return assignment, redundant, parts


# --- individual checks ----------------------------------------------------


def _parts_basis_m31(repo: Repo) -> list[Part]:
    m31, m22 = repo.space("M31"), repo.space("M22")
    theta = repo.hom("theta_star")
    golden = repo.golden["basis_m31"]
    rows = [apply_hom(theta, m31.basis_class(2, lbl), m31, m22).coeffs for lbl in m31.codim2_basis]
    matrix = QMatrix(tuple(rows))
    parts = [_val_part("pullback_rank", golden["rank"], mat_rref(matrix).rank)]
    kernel = kernel_basis(matrix.transpose())
    parts.append(_val_part("kernel_dim", golden["kernel_dim"], len(kernel)))
    gens = [
        m31.from_dict(2, golden["relation_generators"][k]).coeffs
        for k in ("alpha", "beta", "gamma")
    ]
    parts.append(
        _val_part("kernel_span_matches", True, row_space_rref(kernel) == row_space_rref(gens))
    )
    eval_matrix = QMatrix.from_rows(
        [
            [
                evaluate(repo.functional(sid), m31.from_dict(2, golden["relation_generators"][k]), m31)
                for k in ("alpha", "beta", "gamma")
            ]
            for sid in ("S1", "S2", "S3")
        ]
    )
    det = eval_matrix.det3()
    parts.append(_val_part("family_matrix_det", golden["surface_matrix_det"], det))
    parts.append(_val_part("relations_forced_to_zero", True, det != 0))
    return parts


def _parts_prop4(repo: Repo) -> list[Part]:
    m31, m22 = repo.space("M31"), repo.space("M22")
    theta = repo.hom("theta_star")
    golden = repo.golden["prop4"]
    parts: list[Part] = []
    # the dependent-product identity is the stored relation; it must die both
    # on the space itself and under the gluing pullback
    rel = m31.relations[0]
    parts.append(_cls_part("lam_d11_relation_reduces", m31.zero(2), reduce_to_basis(m31, rel), m31))
    parts.append(
        _cls_part("lam_d11_relation_pullback", m22.zero(2), apply_hom(theta, rel, m31, m22), m22)
    )
    for sym in ("d00", "d1|1", "gamma1", "gamma2"):
        expansion = special_expand(m31, sym)
        parts.append(
            _cls_part(
                f"pullback_consistency:{sym}",
                theta.special_images[sym],
                apply_hom(theta, expansion, m31, m22),
                m22,
            )
        )
        expected = [as_fraction(v) for v in golden["surface_values"][sym]]
        actual = [
            evaluate(repo.functional(sid), expansion, m31) for sid in golden["surface_order"]
        ]
        parts.append(_val_part(f"family_values:{sym}", tuple(expected), tuple(actual)))
    return parts


def _parts_prop4_alt(repo: Repo) -> list[Part]:
    m31, m3 = repo.space("M31"), repo.space("M3")
    pullback = repo.hom("p_pullback_m3")
    parts = []
    for sym, catalog_name in (("d00", "delta00_M3"), ("gamma1", "gamma1_M3")):
        via_m3 = apply_hom(pullback, repo.catalog_class(catalog_name), m3, m31)
        parts.append(_cls_part(f"alt_route:{sym}", special_expand(m31, sym), via_m3, m31))
    return parts


def compute_hyp31(repo: Repo | None = None) -> tuple[TautClass, list[Part]]:
    """Pull the genus-4 hyperelliptic class back along the elliptic-tail map."""
    repo = repo or default_repo()
    m31, m4, m3, m22 = (repo.space(s) for s in ("M31", "M4", "M3", "M22"))
    golden = repo.golden["hyp31"]
    result = apply_hom(repo.hom("j3_star"), repo.catalog_class("Hyp4"), m4, m31)
    parts = [
        _cls_part("class", m31.from_dict(2, golden["class"]), result, m31),
        _cls_part("catalog_agrees", repo.catalog_class("Hyp31_theorem"), result, m31),
        _cls_part(
            "pushforward",
            m3.from_dict(1, golden["pushforward"]),
            apply_hom(repo.hom("p_star_pushforward"), result, m31, m3),
            m3,
        ),
        _cls_part(
            "pushforward_is_multiple",
            repo.catalog_class("Hyp3_M3").scale(golden["hyp3_multiple"]),
            apply_hom(repo.hom("p_star_pushforward"), result, m31, m3),
            m3,
        ),
        _cls_part(
            "double_ramification_pullback",
            m22.from_dict(2, golden["dr2_pullback"]),
            apply_hom(repo.hom("theta_star"), result, m31, m22),
            m22,
        ),
        _cls_part(
            "double_ramification_catalog",
            repo.catalog_class("DR2_2"),
            apply_hom(repo.hom("theta_star"), result, m31, m22),
            m22,
        ),
    ]
    return result, parts


def _parts_j3_table(repo: Repo) -> list[Part]:
    m31 = repo.space("M31")
    j3 = repo.hom("j3_star")
    golden = repo.golden["j3_pullback_table"]
    parts = []
    for sym in ("d1|1", "gamma1"):
        parts.append(
            _cls_part(f"pullback_image:{sym}", m31.from_dict(2, golden[sym]), j3.special_images[sym], m31)
        )
    parts.append(_cls_part("pullback_image:d00", special_expand(m31, "d00"), j3.special_images["d00"], m31))
    return parts


def _parts_w2_lemmas(repo: Repo) -> list[Part]:
    """Both node-smoothing lemmas: solve the restriction systems exactly."""
    from .rings import solve_boundary_class

    golden = repo.golden["w2_lemmas"]
    m31, m4, m12, m21 = (repo.space(s) for s in ("M31", "M4", "M12", "M21"))
    weier = repo.catalog_class("W21")
    parts = [
        _cls_part(
            "weierstrass_divisor_input", m21.from_dict(1, golden["weierstrass_divisor_g2"]), weier, m21
        )
    ]
    pres, reduced, sol = solve_boundary_class(repo.gluing("xi_star_m31"), (m12, m21), weier, m31)
    parts.append(_val_part("m31_unique", True, sol.unique))
    parts.append(
        _val_part(
            "m31_presentation",
            {k: as_fraction(v) for k, v in golden["m31_presentation"].items()},
            pres,
        )
    )
    parts.append(_cls_part("m31_class", repo.catalog_class("W2_M31"), reduced, m31))
    pres4, reduced4, sol4 = solve_boundary_class(repo.gluing("xi_star_m4"), (m21, m21), weier, m4)
    parts.append(_val_part("m4_unique", True, sol4.unique))
    parts.append(
        _val_part(
            "m4_presentation",
            {k: as_fraction(v) for k, v in golden["m4_presentation"].items()},
            pres4,
        )
    )
    parts.append(_cls_part("m4_reduced", m4.from_dict(2, golden["m4_reduced"]), reduced4, m4))
    parts.append(_cls_part("m4_catalog_agrees", repo.catalog_class("W2_M4"), reduced4, m4))
    return parts


def compute_f31(repo: Repo | None = None) -> tuple[TautClass, list[Part]]:
    """Assemble the marked-hyperflex class from the solved multiplicities."""
    repo = repo or default_repo()
    m31, m3 = repo.space("M31"), repo.space("M3")
    golden = repo.golden["f31"]
    assignment, _, solve_parts = solve_multiplicities("F31", repo)
    parts = list(solve_parts)
    if not assignment:
        # inconsistent system: the solve parts already carry the certificate
        return m31.zero(2), parts
    lhs = _lhs_product(repo, F31_SYSTEM)
    n = assignment["n"]
    combination = (
        lhs
        - repo.catalog_class("Hyp31_theorem").scale(assignment["m"])
        - repo.catalog_class("W2_M31").scale(assignment["k"])
        - special_expand(m31, "gamma1").scale(assignment["l"])
        - special_expand(m31, "gamma2").scale(assignment["j"])
    )
    parts.append(_val_part("division_multiplicity_nonzero", True, n != 0))
    if n == 0:
        return m31.zero(2), parts
    result = combination.scale(Fraction(1) / n)
    parts.append(_cls_part("class", m31.from_dict(2, golden["class"]), result, m31))
    parts.append(_cls_part("catalog_agrees", repo.catalog_class("F31_theorem"), result, m31))
    parts.append(_val_part("kappa2_coefficient", Fraction(3), result.coeff("kappa2", m31)))
    parts.append(_val_part("psi2_coefficient", Fraction(-3), result.coeff("psi^2", m31)))
    parts.append(
        _cls_part(
            "pushforward",
            m3.from_dict(1, golden["pushforward"]),
            apply_hom(repo.hom("p_star_pushforward"), result, m31, m3),
            m3,
        )
    )
    return result, parts


def compute_h4plus(repo: Repo | None = None) -> tuple[TautClass, list[Part]]:
    """Assemble the even-theta triple-vanishing class from the solved system."""
    repo = repo or default_repo()
    m4 = repo.space("M4")
    golden = repo.golden["h4plus"]
    assignment, _, solve_parts = solve_multiplicities("H4plus", repo)
    parts = list(solve_parts)
    if not assignment:
        return m4.zero(2), parts
    lhs = _lhs_product(repo, H4PLUS_SYSTEM)
    parts.append(_cls_part("lhs_product", m4.from_dict(2, golden["lhs_product"]), lhs, m4))
    n = assignment["n"]
    parts.append(_val_part("division_multiplicity_nonzero", True, n != 0))
    if n == 0:
        return m4.zero(2), parts
    result = (
        lhs
        - repo.catalog_class("Hyp4").scale(assignment["m"])
        - repo.catalog_class("W2_M4").scale(assignment["k"])
        - m4.basis_class(2, "gamma1").scale(assignment["l"])
    ).scale(Fraction(1) / n)
    parts.append(_cls_part("class", m4.from_dict(2, golden["class"]), result, m4))
    parts.append(_cls_part("catalog_agrees", repo.catalog_class("H4plus_theorem"), result, m4))
    parts.append(
        _val_part(
            "lambda2_cross_check",
            as_fraction(golden["lambda2"]),
            locus_lambda2("H4_plus", repo),
        )
    )
    parts.append(
        _val_part("lambda2_entry_agrees", locus_lambda2("H4_plus", repo), result.coeff("lam^2", m4))
    )
    return result, parts


def _parts_pushforwards(repo: Repo) -> list[Part]:
    m31, m3 = repo.space("M31"), repo.space("M3")
    push = repo.hom("p_star_pushforward")
    golden = repo.golden["pushforwards"]
    wtheta = _lhs_product(repo, F31_SYSTEM)
    parts = [
        _cls_part("divisor_product", m31.from_dict(2, golden["wtheta_product_m31"]), wtheta, m31),
        _cls_part(
            "wtheta_pushforward",
            m3.from_dict(1, golden["wtheta"]),
            apply_hom(push, wtheta, m31, m3),
            m3,
        ),
        _cls_part(
            "hyp31_pushforward",
            m3.from_dict(1, golden["hyp31"]),
            apply_hom(push, repo.catalog_class("Hyp31_theorem"), m31, m3),
            m3,
        ),
        _cls_part(
            "f31_pushforward",
            m3.from_dict(1, golden["f31"]),
            apply_hom(push, repo.catalog_class("F31_theorem"), m31, m3),
            m3,
        ),
    ]
    return parts


_EVAL_CLASSES = {
    "M31": {
        "WTheta": lambda repo, sp: _lhs_product(repo, F31_SYSTEM),
        "Hyp31": lambda repo, sp: repo.catalog_class("Hyp31_theorem"),
        "W2": lambda repo, sp: repo.catalog_class("W2_M31"),
        "gamma1": lambda repo, sp: special_expand(sp, "gamma1"),
        "gamma2": lambda repo, sp: special_expand(sp, "gamma2"),
    },
    "M4": {
        "ThetaT": lambda repo, sp: _lhs_product(repo, H4PLUS_SYSTEM),
        "Hyp4": lambda repo, sp: repo.catalog_class("Hyp4"),
        "W2": lambda repo, sp: repo.catalog_class("W2_M4"),
        "gamma1": lambda repo, sp: sp.basis_class(2, "gamma1"),
    },
}


def _parts_surface_tables(repo: Repo) -> list[Part]:
    golden = repo.golden["surface_tables"]
    parts: list[Part] = []
    for sid, block in golden["surfaces"].items():
        space = repo.surface_space(sid)
        functional = repo.functional(sid)
        nonzero = {k: as_fraction(v) for k, v in block["nonzero_basis"].items()}
        mismatches = []
        for lbl in space.codim2_basis:
            expected = nonzero.get(lbl, Fraction(0))
            if functional.values[lbl] != expected:
                mismatches.append(f"{lbl}:{functional.values[lbl]}!={expected}")
        parts.append(_val_part(f"{sid}:table", "exact", "exact" if not mismatches else ",".join(mismatches)))
        for lbl, v in block["extra"].items():
            parts.append(_val_part(f"{sid}:{lbl}", as_fraction(v), functional.values.get(lbl)))
        for cname, v in block["evaluations"].items():
            cls = _EVAL_CLASSES[space.id][cname](repo, space)
            parts.append(_val_part(f"{sid}:<{cname}>", as_fraction(v), evaluate(functional, cls, space)))
    override_rows = []
    for sid in golden["surfaces"]:
        for entry in audit_overrides(repo.surface(sid), repo.surface_space(sid)):
            if entry.status == "override":
                override_rows.append([sid, entry.label])
    parts.append(_val_part("override_count", golden["override_count"], len(override_rows)))
    parts.append(_val_part("override_at", [golden["override_at"]], override_rows))
    return parts


def _parts_relation_hygiene(repo: Repo) -> list[Part]:
    parts: list[Part] = []
    for sid in ("M31", "M4", "M22"):
        space = repo.space(sid)
        for i, rel in enumerate(space.relations):
            parts.append(
                _cls_part(f"{sid}:relation{i}_reduces", space.zero(2), reduce_to_basis(space, rel), space)
            )
    m31, m4 = repo.space("M31"), repo.space("M4")
    rel_formal = repo.formal_class("kappa2_relation_M4")
    parts.append(
        _cls_part(
            "kappa2_relation_pullback",
            m31.zero(2),
            apply_hom(repo.hom("j3_star"), rel_formal, m4, m31),
            m31,
        )
    )
    for sid in ("S1", "S2", "S3", "T1", "T2", "T3"):
        for i, rel in enumerate(m31.relations):
            value = evaluate_formal_products(repo.surface(sid), m31, rel)
            parts.append(_val_part(f"{sid}:lattice_annihilates_relation{i}", Fraction(0), value))
    for sid in ("V1", "V2", "V3", "V4"):
        for i, rel in enumerate(m4.relations):
            value = evaluate_formal_products(repo.surface(sid), m4, rel)
            parts.append(_val_part(f"{sid}:lattice_annihilates_relation{i}", Fraction(0), value))
    return parts


def _parts_complete_intersection(repo: Repo) -> list[Part]:
    """Obstruction coordinates vanish on divisor products but not on the loci."""
    golden = repo.golden["complete_intersection"]
    m31, m4, m3 = repo.space("M31"), repo.space("M4"), repo.space("M3")
    parts: list[Part] = []

    bad31 = []
    for i, a in enumerate(m31.divisor_basis):
        for b in m31.divisor_basis[i:]:
            product = divisor_product(m31, m31.basis_class(1, a), m31.basis_class(1, b))
            for obs in ("kappa2", "d01a"):
                if product.coeff(obs, m31) != 0:
                    bad31.append(f"{a}*{b}:{obs}")
    parts.append(_val_part("m31_products_miss_obstructions", "none", ",".join(bad31) or "none"))
    f31_kappa2 = repo.catalog_class("F31_theorem").coeff("kappa2", m31)
    parts.append(_val_part("f31_kappa2", as_fraction(golden["f31_kappa2"]), f31_kappa2))
    parts.append(_val_part("f31_kappa2_nonzero", True, f31_kappa2 != 0))

    bad4 = []
    obstructions = ("d00", "gamma1", "d01a", "d1|1")
    for i, a in enumerate(m4.divisor_basis):
        for b in m4.divisor_basis[i:]:
            product = divisor_product(m4, m4.basis_class(1, a), m4.basis_class(1, b))
            for obs in obstructions:
                if product.coeff(obs, m4) != 0:
                    bad4.append(f"{a}*{b}:{obs}")
    parts.append(_val_part("m4_products_miss_obstructions", "none", ",".join(bad4) or "none"))
    for name, cls in (("h4plus", "H4plus_theorem"), ("hyp4", "Hyp4")):
        expected = {k: as_fraction(v) for k, v in golden[f"{name}_obstructions"].items()}
        actual = {obs: repo.catalog_class(cls).coeff(obs, m4) for obs in obstructions}
        parts.append(_val_part(f"{name}_obstructions", expected, actual))
        parts.append(_val_part(f"{name}_obstructions_nonzero", True, all(v != 0 for v in actual.values())))

    # cofactor: with the hyperelliptic pullback factor fixed, the divisor b
    # solving (factor) * b = hyperelliptic-pointed class is unique and is
    # exactly the stated obstruction divisor
    factor = apply_hom(repo.hom("p_pullback_m3"), repo.catalog_class("Hyp3_M3"), m3, m31)
    columns = [
        divisor_product(m31, factor, m31.basis_class(1, g)).coeffs for g in m31.divisor_basis
    ]
    matrix = QMatrix.from_rows(list(map(list, zip(*columns))))
    sol = solve_exact(matrix, repo.catalog_class("Hyp31_theorem").coeffs)
    if isinstance(sol, Solution):
        parts.append(_val_part("cofactor_unique", True, sol.unique))
        cofactor = m31.from_dict(1, dict(zip(m31.divisor_basis, sol.vector)))
        parts.append(_cls_part("cofactor", m31.from_dict(1, golden["cofactor"]), cofactor, m31))
        parts.append(_cls_part("cofactor_catalog_agrees", repo.catalog_class("D_M31"), cofactor, m31))
    else:
        parts.append(_val_part("cofactor_unique", True, f"inconsistent ({sol.witness_rhs})"))
    return parts


def _parts_grr_spin(repo: Repo) -> list[Part]:
    golden = repo.golden["grr_spin"]
    parts = []
    for order, key in ((4, "order4"), (2, "order2")):
        actual = grr_spin_character(order)
        expected = {k: as_fraction(v) for k, v in golden[key].items()}
        actual_map = {
            sym: actual.coeff({sym: 1}) for sym in ("kappa0", "kappa1", "kappa2", "kappa3")
        }
        actual_map = {k: v for k, v in actual_map.items() if v != 0}
        parts.append(_val_part(f"character_order{order}", expected, actual_map))
    parts.append(_val_part("character_order0", "0", str(grr_spin_character(0))))
    return parts


def _parts_jet_chern(repo: Repo) -> list[Part]:
    golden = repo.golden["jet_chern"]
    parts = []
    for key, (n, w) in (("J2_spin", (2, Fraction(1, 2))), ("J5_canonical", (5, Fraction(1)))):
        block = golden[key]
        cv = jet_bundle_chern(n, w)
        parts.append(_val_part(f"{key}:rank", block["rank"], cv.rank))
        actual_c = (
            cv.c1.coeff({"psi": 1}),
            cv.c2.coeff({"psi": 2}),
            cv.c3.coeff({"psi": 3}),
        )
        parts.append(_val_part(f"{key}:c", tuple(as_fraction(v) for v in block["c"]), actual_c))
        ch = jet_sum(n, w, 3)
        actual_ch = (ch.coeff(1), ch.coeff(2), ch.coeff(3))
        parts.append(_val_part(f"{key}:ch", tuple(as_fraction(v) for v in block["ch"]), actual_ch))
    return parts


def _parts_lambda2(repo: Repo) -> list[Part]:
    golden = repo.golden["lambda2_values"]
    m4 = repo.space("M4")
    parts = [
        _val_part(which, as_fraction(golden[which]), locus_lambda2(which, repo))
        for which in ("SH4_minus", "H4_minus", "H4", "H4_plus")
    ]
    parts.append(
        _val_part(
            "agrees_with_class",
            repo.catalog_class("H4plus_theorem").coeff("lam^2", m4),
            locus_lambda2("H4_plus", repo),
        )
    )
    return parts


def _parts_enumerative(repo: Repo) -> list[Part]:
    golden = repo.golden["enumerative"]
    parts = []
    for d, v in golden["abel"].items():
        parts.append(_val_part(f"abel:{d}", v, abel_difference_degree(int(d))))
    for key, v in golden["mixed"].items():
        d1, d2 = (int(x) for x in key.split(","))
        parts.append(_val_part(f"mixed:{key}", v, mixed_difference_degree(d1, d2)))
    for g, v in golden["scorza_class"].items():
        cc = scorza_correspondence_class(int(g))
        parts.append(_val_part(f"correspondence_class:{g}", tuple(v), (cc.a, cc.b, cc.c)))
    total, triple_parts = scorza_triple_degree()
    parts.append(_val_part("triple_total", golden["scorza_triple"]["total"], total))
    parts.append(
        _val_part("triple_parts", tuple(golden["scorza_triple"]["parts"]), triple_parts)
    )
    parts.append(_val_part("triple_sum_consistent", 0, total - sum(triple_parts)))
    for key, v in golden["spin_cover"].items():
        g, parity = key.split(",")
        parts.append(_val_part(f"spin_cover:{key}", v, spin_cover_degree(int(g), parity)))
    for cid, v in golden["count_values"].items():
        const = repo.counts.get(cid)
        parts.append(_val_part(f"count:{cid}", as_fraction(v), const.value))
        parts.append(_val_part(f"count_reevaluates:{cid}", const.value, const.reevaluate(repo.counts)))
    # the two one-variable/two-variable formulas agree where they overlap
    agree = all(
        abel_difference_degree(d) == mixed_difference_degree(d + 1, d) for d in range(1, 11)
    )
    parts.append(_val_part("difference_formulas_agree", True, agree))
    return parts


# --- registry -------------------------------------------------------------


@dataclass(frozen=True)
class CheckDef:
    id: str
    fn: Callable[[Repo], list[Part]]
    golden_key: str


def check_basis_m31(repo: Repo | None = None) -> CheckResult:
    return run_check("basis_m31", repo)


def check_prop4(repo: Repo | None = None) -> CheckResult:
    return run_check("prop4", repo)


def check_w2_lemmas(repo: Repo | None = None) -> CheckResult:
    return run_check("w2_lemmas", repo)


def check_complete_intersection_obstructions(repo: Repo | None = None) -> CheckResult:
    return run_check("complete_intersection", repo)


CHECKS: tuple[CheckDef, ...] = (
    CheckDef("basis_m31", _parts_basis_m31, "basis_m31"),
    CheckDef("prop4", _parts_prop4, "prop4"),
    CheckDef("prop4_alt_route", _parts_prop4_alt, "prop4_alt_route"),
    CheckDef("hyp31", lambda repo: compute_hyp31(repo)[1], "hyp31"),
    CheckDef("j3_pullback_table", _parts_j3_table, "j3_pullback_table"),
    CheckDef("w2_lemmas", _parts_w2_lemmas, "w2_lemmas"),
    CheckDef("multiplicities_f31", lambda repo: solve_multiplicities("F31", repo)[2], "multiplicities_f31"),
    CheckDef("f31", lambda repo: compute_f31(repo)[1], "f31"),
    CheckDef(
        "multiplicities_h4plus",
        lambda repo: solve_multiplicities("H4plus", repo)[2],
        "multiplicities_h4plus",
    ),
    CheckDef("h4plus", lambda repo: compute_h4plus(repo)[1], "h4plus"),
    CheckDef("pushforwards", _parts_pushforwards, "pushforwards"),
    CheckDef("surface_tables", _parts_surface_tables, "surface_tables"),
    CheckDef("relation_hygiene", _parts_relation_hygiene, "relation_hygiene"),
    CheckDef("complete_intersection", _parts_complete_intersection, "complete_intersection"),
    CheckDef("grr_spin", _parts_grr_spin, "grr_spin"),
    CheckDef("jet_chern", _parts_jet_chern, "jet_chern"),
    CheckDef("lambda2_values", _parts_lambda2, "lambda2_values"),
    CheckDef("enumerative", _parts_enumerative, "enumerative"),
)

_CHECK_INDEX = {c.id: c for c in CHECKS}


def check_ids() -> list[str]:
    return [c.id for c in CHECKS]


def run_check(check_id: str, repo: Repo | None = None) -> CheckResult:
    """Run one named check; pure given the loaded repository."""
    repo = repo or default_repo()
    try:
        check = _CHECK_INDEX[check_id]
    except KeyError:
        raise UnknownNameError(
            f"unknown check {check_id!r}; known ids: {', '.join(check_ids())}"
        ) from None
    anchor = repo.golden.get(check.golden_key, {}).get("anchor", "")
    t0 = time.perf_counter()
    parts = check.fn(repo)
    return _finish(check.id, anchor, parts, t0)


def run_all(repo: Repo | None = None) -> Report:
    """Run every registered check deterministically, in declaration order."""
    repo = repo or default_repo()
    return Report(__version__, tuple(run_check(c.id, repo) for c in CHECKS))


def export_report(report: Report, format: str = "human", deterministic: bool = True) -> str:
    if format == "json":
        return report.to_json(deterministic=deterministic)
    if format == "human":
        return report.to_human()
    raise ValueError(f"unknown report format {format!r}")
