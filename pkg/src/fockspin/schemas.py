"""JSON files for states, generators, qubit states and reports.

Mode indices in files are 1-based; everything past the parser is 0-based.
Floats are written with ``repr`` (shortest round-tripping form), so
``parse(serialize(x))`` reproduces every amplitude bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass

import jsonschema
import numpy as np

from .fock import HARD_MAX_MODES, FockState, norm, parity_sector
from .spin import SpinGenerator

SYMMETRIC_PART_TOL = 1e-12

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _COMPLEX}}

STATE_SCHEMA = {
    "type": "object",
    "required": ["d", "amplitudes"],
    "properties": {
        "d": {"type": "integer", "minimum": 0, "maximum": HARD_MAX_MODES},
        "amplitudes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["modes", "re", "im"],
                "properties": {
                    "modes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "re": {"type": "number"},
                    "im": {"type": "number"},
                },
                "additionalProperties": False,
            },
        },
        "metadata": {"type": "object"},
    },
    "additionalProperties": False,
}

GENERATOR_SCHEMA = {
    "type": "object",
    "required": ["d", "A", "B", "beta"],
    "properties": {
        "d": {"type": "integer", "minimum": 1, "maximum": HARD_MAX_MODES},
        "A": _MATRIX,
        "B": _MATRIX,
        "beta": _MATRIX,
    },
    "additionalProperties": False,
}

QUBIT_SCHEMA = {
    "type": "object",
    "required": ["qubits", "amplitudes"],
    "properties": {
        "qubits": {"enum": [2, 3]},
        "amplitudes": {
            "type": "object",
            "patternProperties": {"^[01]+$": _COMPLEX},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


class SchemaError(ValueError):
    """A file that is not valid JSON or violates its schema."""


def _validate(data, schema) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{path or '<root>'}: {exc.message}") from None


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None


# --- states

def state_from_json(data) -> FockState:
    _validate(data, STATE_SCHEMA)
    d = data["d"]
    amp = np.zeros(1 << d, dtype=complex)
    seen = set()
    for rec in data["amplitudes"]:
        modes = rec["modes"]
        if any(b <= a for a, b in zip(modes, modes[1:])):
            raise SchemaError(f"modes {modes} are not strictly ascending")
        if modes and modes[-1] > d:
            raise SchemaError(f"mode {modes[-1]} exceeds d = {d}")
        mask = sum(1 << (m - 1) for m in modes)
        if mask in seen:
            raise SchemaError(f"duplicate mode set {modes}")
        seen.add(mask)
        amp[mask] = complex(rec["re"], rec["im"])
    return FockState(d, amp)


def state_to_json(phi: FockState, metadata: dict | None = None) -> dict:
    out = {
        "d": phi.d,
        "amplitudes": [
            {"modes": [m + 1 for m in modes], "re": phi[modes].real, "im": phi[modes].imag}
            for modes in phi.support()
        ],
    }
    if metadata is not None:
        out["metadata"] = metadata
    return out


def state_metadata(phi: FockState) -> dict:
    return {"sector": parity_sector(phi), "norm": norm(phi)}


# --- generators

def _matrix(rows, d: int, name: str) -> np.ndarray:
    M = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex) if rows else np.zeros((0, 0))
    if M.shape != (d, d):
        raise SchemaError(f"{name} must be {d}x{d}, got shape {M.shape}")
    return M


def generator_from_json(data) -> SpinGenerator:
    _validate(data, GENERATOR_SCHEMA)
    d = data["d"]
    A = _matrix(data["A"], d, "A")
    blocks = {}
    for name in ("B", "beta"):
        M = _matrix(data[name], d, name)
        if np.max(np.abs(M + M.T), initial=0.0) > SYMMETRIC_PART_TOL:
            raise SchemaError(f"{name} is not antisymmetric")
        blocks[name] = 0.5 * (M - M.T)
    return SpinGenerator(d, A, blocks["B"], blocks["beta"])


def _pairs(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def generator_to_json(gen: SpinGenerator) -> dict:
    return {"d": gen.d, "A": _pairs(gen.A), "B": _pairs(gen.B), "beta": _pairs(gen.beta)}


# --- qubit states

def qubits_from_json(data) -> np.ndarray:
    """``(2, 2)`` or ``(2, 2, 2)`` amplitude array from ``{"qubits", "amplitudes"}``."""
    _validate(data, QUBIT_SCHEMA)
    n = data["qubits"]
    Phi = np.zeros((2,) * n, dtype=complex)
    for key, (re, im) in data["amplitudes"].items():
        if len(key) != n:
            raise SchemaError(f"basis label {key!r} needs {n} bits")
        Phi[tuple(int(b) for b in key)] = complex(re, im)
    return Phi


def qubits_to_json(Phi) -> dict:
    Phi = np.asarray(Phi, dtype=complex)
    amps = {}
    for idx in np.ndindex(Phi.shape):
        if Phi[idx] != 0:
            amps["".join(map(str, idx))] = [float(Phi[idx].real), float(Phi[idx].imag)]
    return {"qubits": Phi.ndim, "amplitudes": amps}


# --- reports

def to_jsonable(obj):
    """Recursively convert dataclasses, arrays and complex numbers for ``json.dumps``."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True)
