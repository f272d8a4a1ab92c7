"""Versioned JSON Schemas for the wire formats.

The bundle shipped at ``hypolab/schemas/v1/api.json`` is generated from the
pydantic models; a test pins the shipped file against the live models so the
published schemas cannot drift silently.
"""

from __future__ import annotations

import importlib.resources
import json

from pydantic import TypeAdapter

from . import schemas as sc

_BUNDLED = [
    ("four_term_symbol", sc.FourTermSymbolIn),
    ("harmonic_symbol", sc.HarmonicSymbolIn),
    ("hardy_symbol", sc.HardySymbolIn),
    ("scan_report", sc.ScanResponse),
    ("inequality_report", sc.InequalityResponse),
    ("lushi_report", sc.LuShiResponse),
    ("spectrum_report", sc.SpectrumResponse),
    ("threshold_report", sc.ThresholdResponse),
    ("normality_report", sc.NormalityResponse),
    ("hardy_report", sc.HardyResponse),
    ("convergence_report", sc.ConvergenceResponse),
    ("sweep_report", sc.SweepResponse),
]


def generate_bundle() -> dict:
    return {
        "version": sc.SCHEMA_VERSION,
        "schemas": {name: TypeAdapter(model).json_schema() for name, model in _BUNDLED},
    }


def load_shipped_bundle() -> dict:
    resource = importlib.resources.files("hypolab").joinpath("schemas/v1/api.json")
    return json.loads(resource.read_text(encoding="utf-8"))


def schema_for(name: str) -> dict:
    bundle = load_shipped_bundle()
    return bundle["schemas"][name]
