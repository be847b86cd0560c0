"""Combination rules induced by conditioning.

Making a conditioning rule commute with affine combination of the second
argument turns it into a combination rule:

    b (+) b' = sum_A m'(A) * (b conditioned on A).

Only the rules with a unique conditional are supported. Whether the
set-valued L1 / L-inf conditionals induce set-valued combinations is left
open; they are rejected here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import conjunctive_condition, dempster_condition, suppes_condition
from .combination import dempster_sum
from .core import (
    NEG_TOL,
    SUM_TOL,
    MassFunction,
    SignedMassFunction,
    UnnormalizedMass,
    _check_same_frame,
    focal_pairs,
)
from .errors import DomainError, UndefinedConditional
from .lp import l2_condition

RULES = ("l2", "dempster", "suppes", "conjunctive")


def _conditional(rule: str, m: MassFunction, event: int):
    if rule == "l2":
        return l2_condition(m, event)
    if rule == "dempster":
        return dempster_condition(m, event)
    if rule == "suppes":
        return suppes_condition(m, event).mass
    if rule == "conjunctive":
        return conjunctive_condition(m, event)
    raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")


def conditioning_induced_combine(rule: str, m: MassFunction, m_prime: MassFunction):
    """Mix the conditionals of ``m`` on the focal elements of ``m_prime``.

    The conjunctive rule yields an :class:`UnnormalizedMass` (its conditionals
    may carry mass on the empty set); the others yield a mass function.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    frame = _check_same_frame(m, m_prime)
    total = np.zeros(frame.size)
    for a, w in zip(*focal_pairs(m_prime)):
        a = int(a)
        try:
            cond = _conditional(rule, m, a)
        except DomainError as exc:
            raise UndefinedConditional(a, f"{rule} conditioning on focal element {{{frame.key(a)}}} is undefined: {exc}") from exc
        if cond is None:
            # Suppes conditional values exist but do not invert to a mass function
            raise UndefinedConditional(a, f"{rule} conditional on {{{frame.key(a)}}} is not a belief function")
        total += w * cond.values
    if rule == "conjunctive":
        return UnnormalizedMass(frame, total)
    if total.min() < -NEG_TOL:
        return SignedMassFunction(frame, total)
    return MassFunction(frame, total)


@dataclass(frozen=True)
class DecompositionResult:
    ok: bool
    max_deviation: float
    direct: MassFunction
    mixture: np.ndarray
    weights: dict


def dempster_decomposition_check(m: MassFunction, m_prime: MassFunction, tol: float = SUM_TOL) -> DecompositionResult:
    """Compare m (+) m' with sum_A mu(A) (m conditioned on A), mu(A) proportional to m'(A) pl(A).

    Focal elements of m' with pl(A) = 0 get zero weight and are skipped.
    """
    frame = _check_same_frame(m, m_prime)
    direct, _ = dempster_sum(m, m_prime)
    pl = m.plausibility().values
    focal, w = focal_pairs(m_prime)
    mu = w * pl[focal]
    mu = mu / mu.sum()
    mixture = np.zeros(frame.size)
    weights = {}
    for a, mu_a in zip(focal, mu):
        a = int(a)
        weights[frame.key(a)] = float(mu_a)
        if mu_a > 0:
            mixture += mu_a * dempster_condition(m, a).values
    dev = float(np.max(np.abs(mixture - direct.values)))
    return DecompositionResult(dev < tol, dev, direct, mixture, weights)
