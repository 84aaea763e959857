"""JSON encodings for matrices and pure states.

Matrix: {"rows": R, "cols": C, "dims": [...], "re": [...], "im": [...]}
with entries flattened row-major.  Pure state: {"amps_re": [...],
"amps_im": [...], "dims": [...]}.
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from .states import DensityMatrix, PureState


class FormatError(ValueError):
    """Malformed serialized object."""


def matrix_to_json(m: np.ndarray, dims=None) -> dict[str, Any]:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise FormatError("matrix payload must be 2-dimensional")
    payload = {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "re": m.real.reshape(-1).tolist(),
        "im": m.imag.reshape(-1).tolist(),
    }
    if dims is not None:
        payload["dims"] = [int(d) for d in dims]
    return payload


def matrix_from_json(obj: dict[str, Any]) -> tuple[np.ndarray, tuple[int, ...] | None]:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc
    if re.size != rows * cols or im.size != rows * cols:
        raise FormatError("re/im length does not match rows*cols")
    m = (re + 1j * im).reshape(rows, cols)
    dims = tuple(int(d) for d in obj["dims"]) if "dims" in obj else None
    return m, dims


def state_to_json(psi: PureState) -> dict[str, Any]:
    return {
        "amps_re": psi.amps.real.tolist(),
        "amps_im": psi.amps.imag.tolist(),
        "dims": list(psi.dims),
    }


def state_from_json(obj: dict[str, Any]) -> PureState:
    try:
        re = np.asarray(obj["amps_re"], dtype=float)
        im = np.asarray(obj["amps_im"], dtype=float)
        dims = tuple(int(d) for d in obj["dims"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad state object: {exc}") from exc
    if re.size != im.size:
        raise FormatError("amps_re/amps_im length mismatch")
    try:
        return PureState(re + 1j * im, dims)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def load_state_or_density(path: str) -> PureState | DensityMatrix:
    """Read either encoding from a JSON file."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON object expected")
    if "amps_re" in obj:
        return state_from_json(obj)
    m, dims = matrix_from_json(obj)
    try:
        return DensityMatrix(m, dims)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
