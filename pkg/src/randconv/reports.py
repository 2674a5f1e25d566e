"""Report files with a reproducibility header.

JSON reports: line 1 is the compact header object, the rest is the
indented report.  CSV reports: line 1 is ``# `` followed by the header.
The timestamp lives only in the header, so everything after line 1 is
byte-identical across reruns of the same config.
"""

from __future__ import annotations

import csv
import datetime as _dt
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__


def make_header(subcommand: str, digest: str, seed: int) -> dict:
    return {
        "config_sha256": digest,
        "seed": seed,
        "version": __version__,
        "subcommand": subcommand,
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }


def to_jsonable(obj):
    """Fractions become ``["p", "q"]`` string pairs, complexes ``{"re", "im"}``."""
    if isinstance(obj, Fraction):
        return [str(obj.numerator), str(obj.denominator)]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, range, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_json_report(path: Path, header: dict, body) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        fh.write(json.dumps(to_jsonable(body), indent=2, sort_keys=True) + "\n")
    return path


def read_json_report(path) -> tuple[dict, object]:
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        body = json.loads(fh.read())
    return header, body


def write_csv_report(path: Path, header: dict, fields, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("# " + json.dumps(header, sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def read_csv_report(path) -> tuple[dict, list[dict]]:
    with open(path, newline="", encoding="utf-8") as fh:
        first = fh.readline()
        header = json.loads(first[2:]) if first.startswith("# ") else {}
        rows = list(csv.DictReader(fh))
    return header, rows


def strip_header(path) -> bytes:
    """File contents after the header line (for determinism checks)."""
    data = Path(path).read_bytes()
    return data.split(b"\n", 1)[1] if b"\n" in data else b""
