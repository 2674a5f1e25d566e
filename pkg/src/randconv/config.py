"""Experiment configuration: one JSON document describing a full run.

Rationals may be written as integers, ``"p/q"`` strings or ``["p", "q"]``
pairs.  Validation happens in two passes: the JSON schema (shape and types),
then construction of the library objects (admissibility of supplied ``L``,
probability sums, ...).  Both raise :class:`ConfigError`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .core import DEFAULT_ATOM_CAP, AdmissiblePair, DigitPair, as_fraction
from .families import PairFamily, family_from_pairs, tnc_family
from .sequence_space import ExponentSequence, ProbabilityVector, SequenceModel
from .transform import PairSystem


class ConfigError(ValueError):
    """Schema or semantic violation in a configuration document."""


_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        {"type": "array", "minItems": 2, "maxItems": 2,
         "items": {"type": ["string", "integer"], "pattern": r"^-?\d+$"}},
    ]
}

_INT_LIST = {"type": "array", "items": {"type": "integer"}}

SCHEMA: dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["N", "B"],
                "properties": {
                    "N": {"type": "integer", "minimum": 2},
                    "B": {**_INT_LIST, "minItems": 1, "uniqueItems": True},
                    "L": {**_INT_LIST, "minItems": 1, "uniqueItems": True},
                },
            },
        },
        "family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {"kind": {"enum": ["finite", "periodic", "tight-noncompact"]}},
        },
        "model": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["explicit-prefix", "periodic-word", "iid-bernoulli"]},
                "word": {**_INT_LIST, "items": {"type": "integer", "minimum": 1}},
                "prob": {"type": "array", "minItems": 1, "items": _RATIONAL},
                "seed": {"type": "integer", "minimum": 0},
                "M": {"type": "integer", "minimum": 1},
            },
        },
        "exponents": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["constant-one", "explicit-list", "affine"]},
                "values": {**_INT_LIST, "items": {"type": "integer", "minimum": 1}},
                "a": {"type": "integer", "minimum": 0},
                "c": {"type": "integer"},
            },
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "points": {"type": "integer", "minimum": 1},
                "range": {"type": "array", "minItems": 2, "maxItems": 2,
                          "items": {"type": "number"}},
            },
        },
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "mask": {"type": "number", "exclusiveMinimum": 0},
                "parseval": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "depth_caps": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                key: {"type": "integer", "minimum": 1}
                for key in ("level", "conditions", "atoms", "sample", "horizon",
                            "tail_k", "tail_m")
            },
        },
        "dimension": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "p": {"type": "array", "minItems": 1, "items": _RATIONAL},
                "s": _RATIONAL,
            },
        },
        "recurrence": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "target": {"type": "array", "minItems": 1,
                           "items": {"type": "integer", "minimum": 1}},
            },
        },
        "tail": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"xi": _RATIONAL},
        },
        "output_dir": {"type": "string", "minLength": 1},
        "seed": {"type": "integer", "minimum": 0},
    },
    "required": ["output_dir"],
    # explicit pairs are mandatory unless a built-in rule family is named
    "if": {"properties": {"family": {"properties": {"kind": {"const": "tight-noncompact"}}}},
           "required": ["family"]},
    "then": {},
    "else": {"required": ["pairs"], "properties": {"pairs": {"minItems": 1}}},
}

DEFAULT_CAPS = {
    "level": 6,
    "conditions": 64,
    "atoms": DEFAULT_ATOM_CAP,
    "sample": 100_000,
    "horizon": 1_000_000,
    "tail_k": 20,
    "tail_m": 20,
}


@dataclass
class Config:
    raw: dict
    digest: str
    family: PairFamily
    pairs: list[DigitPair]
    model: SequenceModel
    exponents: ExponentSequence
    grid_points: int = 1024
    grid_range: tuple[float, float] = (0.0, 1.0)
    mask_tol: float = 1e-12
    parseval_tol: float = 1e-9
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    output_dir: Path = Path("out")
    seed: int = 0
    dimension_p: ProbabilityVector | None = None
    dimension_s: Any = None
    target: tuple[int, ...] | None = None
    tail_xi: Any = 1

    def system(self) -> PairSystem:
        return PairSystem(self.family, self.model, self.exponents)


def canonical_digest(raw: dict) -> str:
    """sha256 of the canonical (sorted, compact) JSON form."""
    text = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _rational(v):
    if isinstance(v, list):
        return as_fraction([int(v[0]), int(v[1])])
    return as_fraction(v)


def _pair(spec: dict) -> DigitPair:
    N, B, L = spec["N"], spec["B"], spec.get("L")
    if len(B) < 2:
        if L is not None:
            raise ConfigError(f"pair N={N}: a spectrum set needs at least two digits")
        return DigitPair(N, tuple(B))
    return AdmissiblePair(N, tuple(B), None if L is None else tuple(L))


def _model(spec: dict | None, seed: int) -> SequenceModel:
    if spec is None:
        return SequenceModel.periodic((1,))
    kind = spec["kind"]
    if kind == "iid-bernoulli":
        if "prob" not in spec:
            raise ConfigError("iid-bernoulli model needs 'prob'")
        prob = ProbabilityVector(tuple(_rational(p) for p in spec["prob"]))
        return SequenceModel(kind, prob=prob, seed=spec.get("seed", seed),
                             alphabet_bound=spec.get("M", len(prob)))
    if "word" not in spec:
        raise ConfigError(f"{kind} model needs 'word'")
    return SequenceModel(kind, tuple(spec["word"]), alphabet_bound=spec.get("M"))


def _exponents(spec: dict | None) -> ExponentSequence:
    if spec is None or spec["kind"] == "constant-one":
        return ExponentSequence()
    if spec["kind"] == "affine":
        return ExponentSequence.affine(spec.get("a", 0), spec.get("c", 1))
    return ExponentSequence.explicit(spec.get("values", ()))


def parse_config(raw: dict, base_dir: Path | None = None) -> Config:
    """Validate ``raw`` and build the library objects it describes."""
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"schema violation at {path}: {exc.message}") from None
    seed = raw.get("seed", 0)
    try:
        pairs = [_pair(p) for p in raw.get("pairs", [])]
        kind = raw.get("family", {}).get("kind", "finite")
        family = tnc_family() if kind == "tight-noncompact" else family_from_pairs(pairs, kind)
        model = _model(raw.get("model"), seed)
        exponents = _exponents(raw.get("exponents"))
        dim = raw.get("dimension", {})
        cfg = Config(
            raw=raw,
            digest=canonical_digest(raw),
            family=family,
            pairs=pairs,
            model=model,
            exponents=exponents,
            seed=seed,
            dimension_p=(ProbabilityVector(tuple(_rational(p) for p in dim["p"]))
                         if "p" in dim else None),
            dimension_s=_rational(dim["s"]) if "s" in dim else None,
            target=tuple(raw["recurrence"]["target"]) if "target" in raw.get("recurrence", {}) else None,
            tail_xi=_rational(raw.get("tail", {}).get("xi", 1)),
        )
        cfg.system()  # symbols must index pairs
    except ConfigError:
        raise
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from None
    grid = raw.get("grid", {})
    cfg.grid_points = grid.get("points", cfg.grid_points)
    lo, hi = grid.get("range", cfg.grid_range)
    if not hi > lo:
        raise ConfigError("grid range must satisfy lo < hi")
    cfg.grid_range = (float(lo), float(hi))
    tol = raw.get("tolerances", {})
    cfg.mask_tol = tol.get("mask", cfg.mask_tol)
    cfg.parseval_tol = tol.get("parseval", cfg.parseval_tol)
    cfg.caps.update(raw.get("depth_caps", {}))
    out = Path(raw["output_dir"])
    if not out.is_absolute() and base_dir is not None:
        out = base_dir / out
    cfg.output_dir = out
    return cfg


def load_config(path) -> Config:
    """Read and validate a config file; relative output dirs resolve against it."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return parse_config(raw, path.parent)
