"""Combination rules: Dempster's orthogonal sum, conjunctive and disjunctive rules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import NEG_TOL, MassFunction, UnnormalizedMass, _check_same_frame, focal_pairs
from .errors import TotalConflict


@dataclass(frozen=True)
class ConflictReport:
    """Total mass Dempster's rule sends to the empty set."""

    kappa: float

    @property
    def defined(self) -> bool:
        return 1.0 - self.kappa >= NEG_TOL


def _pairwise(m1, m2, op) -> np.ndarray:
    # Sparse over focal elements only; each pair contributes to op(B, C).
    f1, v1 = focal_pairs(m1)
    f2, v2 = focal_pairs(m2)
    targets = op.outer(f1, f2).ravel()
    weights = np.multiply.outer(v1, v2).ravel()
    return np.bincount(targets, weights=weights, minlength=m1.frame.size)


def conjunctive_combine(m1: MassFunction, m2: MassFunction) -> UnnormalizedMass:
    """Unnormalized intersection rule; conflict stays on the empty set."""
    frame = _check_same_frame(m1, m2)
    return UnnormalizedMass(frame, _pairwise(m1, m2, np.bitwise_and))


def dempster_sum(m1: MassFunction, m2: MassFunction) -> tuple[MassFunction, ConflictReport]:
    frame = _check_same_frame(m1, m2)
    raw = _pairwise(m1, m2, np.bitwise_and)
    kappa = float(raw[0])
    if 1.0 - kappa < NEG_TOL:
        raise TotalConflict(kappa)
    raw[0] = 0.0
    return MassFunction(frame, raw / (1.0 - kappa)), ConflictReport(kappa)


def disjunctive_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    frame = _check_same_frame(m1, m2)
    return MassFunction(frame, _pairwise(m1, m2, np.bitwise_or))
