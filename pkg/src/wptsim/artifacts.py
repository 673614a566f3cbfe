"""Data artifacts written by the command-line front end.

Path-gain maps and CDFs are RFC 4180 CSV with a header row; the run
manifest is JSON carrying everything needed to reproduce a run
bit-for-bit. Decibel columns use the power convention 10*log10.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .evaluation import CdfResult, FadingMarginReport, PathGainMap

MAP_COLUMNS = ["x_m", "y_m", "z_m", "pg_linear", "pg_db", "flag"]
CDF_COLUMNS = ["pg_db", "prob"]
DB_CONVENTION = "power dB = 10*log10(linear)"


def _atomic_writer(path: Path):
    tmp = path.with_name(path.name + ".tmp")
    return tmp


def write_map_csv(path: str | Path, pg_map: PathGainMap) -> None:
    path = Path(path)
    tmp = _atomic_writer(path)
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MAP_COLUMNS)
        with np.errstate(divide="ignore"):
            db = 10.0 * np.log10(pg_map.values)
        for pt, lin, d, flag in zip(pg_map.points, pg_map.values, db, pg_map.flags):
            row = [repr(float(v)) for v in (pt[0], pt[1], pt[2], lin, d)]
            writer.writerow(row + [int(flag)])
    os.replace(tmp, path)


def read_map_csv(path: str | Path) -> PathGainMap:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != MAP_COLUMNS:
            raise ValueError(f"unexpected map header {header!r} in {path}")
        rows = [row for row in reader if row]
    points = np.array([[float(r[0]), float(r[1]), float(r[2])] for r in rows])
    values = np.array([float(r[3]) for r in rows])
    flags = np.array([bool(int(r[5])) for r in rows])
    return PathGainMap(points, values, flags, domain={"kind": "file", "path": str(path)})


def write_cdf_csv(path: str | Path, cdf: CdfResult) -> None:
    path = Path(path)
    tmp = _atomic_writer(path)
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CDF_COLUMNS)
        with np.errstate(divide="ignore"):
            db = 10.0 * np.log10(cdf.values)
        for d, p in zip(db, cdf.probabilities):
            writer.writerow([repr(float(d)), repr(float(p))])
    os.replace(tmp, path)


def read_cdf_csv(path: str | Path) -> CdfResult:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CDF_COLUMNS:
            raise ValueError(f"unexpected CDF header {header!r} in {path}")
        rows = [row for row in reader if row]
    db = np.array([float(r[0]) for r in rows])
    probs = np.array([float(r[1]) for r in rows])
    return CdfResult(10.0 ** (db / 10.0), probs)


def write_margin_json(path: str | Path, report: FadingMarginReport) -> None:
    payload = {
        "outage": report.outage,
        "reference": report.reference,
        "pg_at_outage_db": report.pg_at_outage_db,
        "margin_reduction_db": report.margin_reduction_db,
        "warnings": list(report.warnings),
        "db_convention": DB_CONVENTION,
    }
    path = Path(path)
    tmp = _atomic_writer(path)
    with open(tmp, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    os.replace(tmp, path)


@dataclass
class RunManifest:
    """Everything needed to replay a run and interpret its outputs."""

    command: str
    argv: list
    config: dict
    derived: dict
    seeds: dict
    outputs: list
    timing: dict = field(default_factory=dict)
    version: str = __version__
    db_convention: str = DB_CONVENTION

    def to_dict(self) -> dict:
        return asdict(self)


def write_manifest(path: str | Path, manifest: RunManifest) -> None:
    path = Path(path)
    tmp = _atomic_writer(path)
    with open(tmp, "w") as fh:
        json.dump(manifest.to_dict(), fh, indent=2)
        fh.write("\n")
    os.replace(tmp, path)
