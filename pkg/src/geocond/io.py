"""JSON documents for mass functions.

Layout::

    {"frame": ["x", "y", "z"], "masses": {"x": 0.2, "y": 0.3, "x z": 0.5}}

Subset keys are frame-order element names joined by single spaces. An
optional ``"empty"`` field carries mass on the empty set (unnormalized
results). Writers print six decimals and record that in ``"decimals"``;
readers then accept the matching rounding slack and rescale to sum 1.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .core import SUM_TOL, Frame, MassFunction, SignedMassFunction, UnnormalizedMass
from .errors import FormatError, InvalidMass

DECIMALS = 6


def _fmt(v: float, decimals: int = DECIMALS) -> float:
    r = round(float(v), decimals)
    return 0.0 if r == 0 else r  # no "-0.0"


def masses_field(m, decimals: int = DECIMALS) -> dict[str, float]:
    """Nonzero entries keyed canonically, in ascending bitmask order."""
    return {m.frame.key(a): _fmt(m.values[a], decimals) for a in range(1, m.frame.size) if m.values[a] != 0.0}


def mass_document(m, decimals: int = DECIMALS, **extra) -> dict:
    doc = {"frame": list(m.frame.names), "decimals": decimals, "masses": masses_field(m, decimals)}
    if isinstance(m, UnnormalizedMass):
        doc["empty"] = _fmt(m.empty_mass, decimals)
    doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_mass(m, decimals: int = DECIMALS) -> str:
    return dumps(mass_document(m, decimals))


def parse_frame(doc) -> Frame:
    if not isinstance(doc, dict) or "frame" not in doc:
        raise FormatError("document needs a 'frame' field")
    names = doc["frame"]
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise FormatError("'frame' must be a list of element names")
    try:
        return Frame(tuple(names))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _values(frame: Frame, masses) -> np.ndarray:
    if not isinstance(masses, dict):
        raise FormatError("'masses' must map subset keys to numbers")
    values = np.zeros(frame.size)
    for key, v in masses.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise FormatError(f"mass of {key!r} is not a finite number: {v!r}")
        mask = frame.subset(key)
        if mask == 0:
            raise FormatError("the empty set cannot be a key; use the 'empty' field")
        values[mask] += float(v)
    return values


def _slack(doc: dict, count: int, tolerance: float | None) -> float:
    if tolerance is not None:
        return tolerance
    decimals = doc.get("decimals")
    if isinstance(decimals, int) and not isinstance(decimals, bool) and decimals >= 0:
        return max(SUM_TOL, 0.5 * 10.0**-decimals * max(count, 1) + 1e-12)
    return SUM_TOL


def mass_from_doc(frame: Frame, doc: dict, *, signed: bool = False, tolerance: float | None = None):
    """Build a mass object from a document (or sub-document) holding 'masses'."""
    if "masses" not in doc:
        raise FormatError("document needs a 'masses' field")
    values = _values(frame, doc["masses"])
    empty = doc.get("empty", 0.0)
    if isinstance(empty, bool) or not isinstance(empty, (int, float)):
        raise FormatError("'empty' must be a number")
    values[0] = float(empty)
    tol = _slack(doc, len(doc["masses"]) + (empty != 0), tolerance)
    total = values.sum()
    if abs(total - 1.0) > tol:
        raise FormatError(f"masses sum to {total:.12g}, not 1 (tolerance {tol:.3g})")
    values = values / total
    try:
        if "empty" in doc:
            return UnnormalizedMass(frame, values)
        if signed:
            return SignedMassFunction(frame, values)
        return MassFunction(frame, values)
    except InvalidMass as exc:
        raise FormatError(str(exc)) from None


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    return doc


def read_mass(text: str, *, signed: bool = False, tolerance: float | None = None):
    doc = loads(text)
    return mass_from_doc(parse_frame(doc), doc, signed=signed, tolerance=tolerance)


def read_mass_file(path, *, signed: bool = False, tolerance: float | None = None):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return read_mass(text, signed=signed, tolerance=tolerance)


def read_all_masses(text: str, *, tolerance: float | None = None) -> dict[str, object]:
    """Every mass function in a result document, keyed by where it was found.

    Handles plain documents as well as set-valued results with
    ``vertices`` and ``barycenter`` entries.
    """
    doc = loads(text)
    frame = parse_frame(doc)
    decimals = {"decimals": doc["decimals"]} if "decimals" in doc else {}
    found = {}
    if "masses" in doc:
        found["masses"] = mass_from_doc(frame, doc, signed=True, tolerance=tolerance)
    for i, v in enumerate(doc.get("vertices", [])):
        found[f"vertex:{v.get('key', i)}"] = mass_from_doc(frame, {**decimals, **v}, signed=True, tolerance=tolerance)
    if "barycenter" in doc:
        found["barycenter"] = mass_from_doc(frame, {**decimals, "masses": doc["barycenter"]}, signed=True, tolerance=tolerance)
    return found
