"""Problem-file schema and JSON (de)serialization conventions.

One interchange format: JSON.  Complex scalars are [re, im] pairs, real
polynomial coefficient arrays are ascending (index k multiplies s^k), and
infinities serialize as the string "inf".
"""

from __future__ import annotations

import math
from typing import Any

from .poly import Polynomial
from .rational import RationalFunction, RationalMatrix
from .spectrum import (
    Annulus,
    Circle,
    Disk,
    MatrixSpectrum,
    Points,
    SpectrumDescriptor,
    Union,
)
from .zen import DensityPiece, MeasureDescriptor, TestSignal

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}

_REAL_POLY = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_COMPLEX_POLY = {"type": "array", "items": _COMPLEX, "minItems": 1}

_SPECTRUM: dict[str, Any] = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "type": {"const": "points"},
                "values": {"type": "array", "items": _COMPLEX, "minItems": 1},
            },
            "required": ["type", "values"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "matrix"},
                "entries": {
                    "type": "array",
                    "items": {"type": "array", "items": _COMPLEX, "minItems": 1},
                    "minItems": 1,
                },
            },
            "required": ["type", "entries"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "disk"},
                "center": _COMPLEX,
                "radius": {"type": "number", "minimum": 0},
            },
            "required": ["type", "center", "radius"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "circle"},
                "center": _COMPLEX,
                "radius": {"type": "number", "minimum": 0},
            },
            "required": ["type", "center", "radius"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "annulus"},
                "center": _COMPLEX,
                "r_inner": {"type": "number", "minimum": 0},
                "r_outer": {"type": "number", "minimum": 0},
            },
            "required": ["type", "center", "r_inner", "r_outer"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "union"},
                "members": {
                    "type": "array",
                    "items": {"$ref": "#/$defs/spectrum"},
                    "minItems": 1,
                },
            },
            "required": ["type", "members"],
            "additionalProperties": False,
        },
    ],
}

_SYSTEM = {
    "type": "object",
    "properties": {
        "p": _REAL_POLY,
        "q": _REAL_POLY,
        "spectrum": {"$ref": "#/$defs/spectrum"},
        "norm_a": {"type": "number", "minimum": 0},
        "h": {"type": "number", "minimum": 0},
        "h_max": {"type": "number", "exclusiveMinimum": 0},
        "subnormal": {"type": "boolean"},
    },
    "required": ["p", "q", "spectrum"],
    "additionalProperties": False,
}

_MEASURE = {
    "type": "object",
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "lo": {"type": "number", "minimum": 0},
                    "hi": {"type": "number", "exclusiveMinimum": 0},
                    "coeffs": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                },
                "required": ["lo", "hi", "coeffs"],
                "additionalProperties": False,
            },
        },
        "lebesgue_tail": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_SIGNAL = {
    "type": "object",
    "properties": {
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "coeff": _COMPLEX,
                    "power": {"type": "integer", "minimum": 0},
                    "rate": _COMPLEX,
                    "component": {"type": "integer", "minimum": 0},
                },
                "required": ["coeff", "power", "rate"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["terms"],
    "additionalProperties": False,
}

_SYMBOL = {
    "type": "object",
    "properties": {
        "rows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "properties": {"num": _COMPLEX_POLY, "den": _COMPLEX_POLY},
                    "required": ["num", "den"],
                    "additionalProperties": False,
                },
            },
        }
    },
    "required": ["rows"],
    "additionalProperties": False,
}

_ZEN = {
    "type": "object",
    "properties": {
        "measure": _MEASURE,
        "signals": {"type": "array", "items": _SIGNAL, "minItems": 1},
        "symbol": _SYMBOL,
        "adjoint_samples": {"type": "integer", "minimum": 1},
    },
    "required": ["measure", "signals"],
    "additionalProperties": False,
}

PROBLEM_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "delay-margin problem file",
    "type": "object",
    "$defs": {"spectrum": _SPECTRUM},
    "properties": {
        "kind": {
            "enum": ["margin", "hinf", "zen-verify", "neutral-demo", "unbounded-demo"]
        },
        "system": _SYSTEM,
        "zen": _ZEN,
        "n_max": {"type": "integer", "minimum": 1},
        "n_trunc": {"type": "integer", "minimum": 1},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "grid": {
            "type": "object",
            "properties": {
                "n_points": {"type": "integer", "minimum": 3},
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "max_rounds": {"type": "integer", "minimum": 1},
                "singular_cap": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "quad": {
            "type": "object",
            "properties": {
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "limit": {"type": "integer", "minimum": 10},
            },
            "additionalProperties": False,
        },
        "seed": {"type": "integer"},
    },
    "required": ["kind"],
    "additionalProperties": False,
}


# --- decoding ----------------------------------------------------------------


def decode_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def decode_spectrum(obj) -> SpectrumDescriptor:
    kind = obj["type"]
    if kind == "points":
        return Points([decode_complex(v) for v in obj["values"]])
    if kind == "matrix":
        return MatrixSpectrum([[decode_complex(v) for v in row] for row in obj["entries"]])
    if kind == "disk":
        return Disk(decode_complex(obj["center"]), obj["radius"])
    if kind == "circle":
        return Circle(decode_complex(obj["center"]), obj["radius"])
    if kind == "annulus":
        return Annulus(decode_complex(obj["center"]), obj["r_inner"], obj["r_outer"])
    if kind == "union":
        return Union([decode_spectrum(m) for m in obj["members"]])
    raise ValueError(f"unknown spectrum type {kind!r}")


def decode_measure(obj) -> MeasureDescriptor:
    return MeasureDescriptor(
        atoms=[tuple(a) for a in obj.get("atoms", [])],
        pieces=[DensityPiece(p["lo"], p["hi"], p["coeffs"]) for p in obj.get("pieces", [])],
        lebesgue_tail=obj.get("lebesgue_tail", False),
    )


def decode_signal(obj) -> TestSignal:
    return TestSignal(
        [
            (
                decode_complex(t["coeff"]),
                t["power"],
                decode_complex(t["rate"]),
                t.get("component", 0),
            )
            for t in obj["terms"]
        ]
    )


def decode_symbol(obj) -> RationalMatrix:
    return RationalMatrix(
        [
            [
                RationalFunction(
                    Polynomial([decode_complex(c) for c in e["num"]]),
                    Polynomial([decode_complex(c) for c in e["den"]]),
                )
                for e in row
            ]
            for row in obj["rows"]
        ]
    )


# --- encoding ----------------------------------------------------------------


def encode_complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def encode_real(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def encode_window(w: tuple[float, float]):
    return [encode_real(w[0]), encode_real(w[1])]
