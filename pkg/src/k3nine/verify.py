"""Regression gate: recompute every bundled expectation and compare exactly."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import classifier, lattices
from .dataset import ReferenceDataset, tau_records
from .exact import parse_poly
from .fibration import WeierstrassModel, analyze, bisection_genus
from .lefschetz import admissible_types, build_holo_system, solution_relations
from .projective import DiagAction, coordinate_point_singularity_screen, format_monomial, invariant_monomials

PASS, FAIL, NOTE = "PASS", "FAIL", "NOTE"


@dataclass
class CheckResult:
    anchor: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"anchor": self.anchor, "status": self.status, "detail": self.detail}

    def line(self) -> str:
        return f"{self.status} {self.anchor}" + (f": {self.detail}" if self.detail else "")


def _result(anchor: str, problems: list[str]) -> CheckResult:
    return CheckResult(anchor, FAIL if problems else PASS, "; ".join(problems))


def check_lefschetz(fixtures: list[dict]) -> list[CheckResult]:
    out = []
    for fx in fixtures:
        types = admissible_types(fx["order"], fx["k"], fx["curve_points_allowed"], fx["cube_isolated_only"])
        system = build_holo_system(fx["order"], fx["k"], types, fx["curve_term"])
        rel = solution_relations(system)
        problems = []
        if rel.consistent != fx["consistent"]:
            problems.append(f"consistent={rel.consistent}, expected {fx['consistent']}")
        elif rel.consistent and rel.format() != fx["relations"]:
            problems.append(f"relations {rel.format()} != {fx['relations']}")
        out.append(_result(fx["anchor"], problems))
    return out


def check_sigma_rows(ds: ReferenceDataset) -> list[CheckResult]:
    rows = classifier.classify_all(ds.tau_cases, classifier.AxiomPack.full())
    diff = classifier.diff_against(rows, ds.sigma_rows)
    out = []
    missing, extra = set(diff["missing"]), set(diff["extra"])
    renamed = dict(diff["id_mismatch"])
    for rec in ds.sigma_rows:
        problems = []
        if rec["id"] in missing:
            problems.append(f"row {rec['id']} not reproduced by the classifier")
        out.append(_result(rec["anchor"], problems))
    for rid in sorted(extra):
        out.append(CheckResult(f"sigma/{rid}", FAIL, f"row {rid} produced but absent from the reference table"))
    for got, want in sorted(renamed.items()):
        out.append(CheckResult(f"sigma/{want}", FAIL, f"row {want} produced under id {got}"))
    unsound = classifier.soundness_check(rows)
    out.append(_result("sigma/identity-recheck", [f"row {r} fails the cyclotomic identity" for r in unsound]))
    return out


def check_lattices(records: list[dict]) -> list[CheckResult]:
    anchors = {rec["case"]: rec["anchor"] for rec in records}
    return [
        _result(anchors[rep["case"]] + "/lattice", rep["problems"])
        for rep in lattices.verify_lattice_rows(records)
    ]


def check_fibrations(fixtures: list[dict]) -> list[CheckResult]:
    out = []
    for fx in fixtures:
        a, b = parse_poly(fx["a"], "t"), parse_poly(fx["b"], "t")
        report = analyze(WeierstrassModel(a, b))
        problems = []
        if report.census() != fx["census"]:
            problems.append(f"census {report.census()} != {fx['census']}")
        if report.fiber_at("inf") != fx["at_infinity"]:
            problems.append(f"fiber at infinity {report.fiber_at('inf')} != {fx['at_infinity']}")
        if report.euler_total != fx["euler_total"]:
            problems.append(f"euler total {report.euler_total} != {fx['euler_total']}")
        if fx.get("bisection") is not None and bisection_genus(b) != fx["bisection"]:
            problems.append(f"bisection {bisection_genus(b)} != {fx['bisection']}")
        out.append(_result(fx["anchor"], problems))
        note = fx.get("note")
        if note and not problems:
            computed = report.census().get("I1", 0)
            out.append(CheckResult(
                fx["anchor"] + "/count",
                NOTE,
                f"computed-vs-text note: text states {note['stated_I1_count']} I1 fibers, computed {computed}",
            ))
    return out


def check_monomials(fixtures: list[dict]) -> list[CheckResult]:
    out = []
    for fx in fixtures:
        act = DiagAction(fx["order"], tuple(fx["weights"]), fx["character"])
        mons = invariant_monomials(act, fx["degree"])
        got = [format_monomial(m) for m in mons]
        problems = []
        if got != fx["monomials"]:
            problems.append(f"monomials {got} != {fx['monomials']}")
        screen = coordinate_point_singularity_screen(mons, act.dim)
        bad = [v["point"] for v in screen if v["verdict"].startswith("necessarily")]
        if bad != fx["singular_points"]:
            problems.append(f"screen flags {bad}, expected {fx['singular_points']}")
        out.append(_result(fx["anchor"], problems))
    return out


def run_all(data_dir: Path | None = None) -> list[CheckResult]:
    ds = ReferenceDataset.load(data_dir)
    results = [_result("data/checksums", [f"{name} differs from the manifest" for name in ds.checksum_failures])]
    results += check_lefschetz(ds.fixtures["lefschetz"])
    results += check_sigma_rows(ds)
    results += check_lattices(tau_records(data_dir))
    results += check_fibrations(ds.fixtures["fibrations"])
    results += check_monomials(ds.fixtures["monomials"])
    return results


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.status != FAIL for r in results)
