"""Bundled reference data: order-3 cases, expected order-9 rows, fixtures.

Each file is versioned and its SHA-256 is pinned in ``MANIFEST.json``.
A different directory can be supplied (used to test the verification
harness against deliberately corrupted data).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .classifier import TauCase

FILES = ("order3_cases.json", "order9_rows.json", "fixtures.json")


def default_dir() -> Path:
    return Path(str(resources.files("k3nine") / "data"))


def _read(name: str, data_dir: Path | None) -> dict:
    path = (data_dir or default_dir()) / name
    return json.loads(path.read_text(encoding="utf-8"))


def sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def checksum_problems(data_dir: Path | None = None) -> list[str]:
    """Files whose digest differs from the manifest shipped with the package."""
    manifest = json.loads((default_dir() / "MANIFEST.json").read_text(encoding="utf-8"))
    base = data_dir or default_dir()
    out = []
    for name in FILES:
        digest = sha256(base / name)
        if manifest["sha256"].get(name) != digest:
            out.append(name)
    return out


def load_tau_cases(data_dir: Path | None = None) -> list[TauCase]:
    doc = _read("order3_cases.json", data_dir)
    return [
        TauCase(rec["case"], rec["n"], tuple(rec["curves"]), rec["m"], rec["lattice"])
        for rec in doc["cases"]
    ]


def tau_records(data_dir: Path | None = None) -> list[dict]:
    return _read("order3_cases.json", data_dir)["cases"]


def load_sigma_rows(data_dir: Path | None = None) -> list[dict]:
    return _read("order9_rows.json", data_dir)["rows"]


def load_fixtures(data_dir: Path | None = None) -> dict:
    return _read("fixtures.json", data_dir)


@dataclass
class ReferenceDataset:
    tau_cases: list[TauCase]
    sigma_rows: list[dict]
    fixtures: dict
    data_dir: Path | None = None
    checksum_failures: list[str] = field(default_factory=list)

    @classmethod
    def load(cls, data_dir: Path | None = None) -> "ReferenceDataset":
        return cls(
            load_tau_cases(data_dir),
            load_sigma_rows(data_dir),
            load_fixtures(data_dir),
            data_dir,
            checksum_problems(data_dir),
        )
