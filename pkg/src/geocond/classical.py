"""Classical conditioning operators and the nested-interval comparison.

Each operator has two computation paths where that is cheap: the
conditional mass (built from a combination rule or directly) and the
closed-form belief/plausibility values of the standard comparison table.
The test-suite checks one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combination import dempster_sum, disjunctive_combine
from .core import (
    NEG_TOL,
    SUM_TOL,
    Frame,
    MassFunction,
    UnnormalizedMass,
    as_event,
    categorical,
    focal_pairs,
    moebius,
    zeta,
)
from .errors import TotalConflict, UndefinedDenominator, ZeroBelief

DENOM_TOL = 1e-12


@dataclass(frozen=True)
class IntervalAssignment:
    """Per-event (lower, upper) conditional values given ``event``.

    ``lower`` and ``upper`` are dense arrays indexed by bitmask. ``mass`` is
    the Moebius inverse of ``lower`` when that inverse is a valid mass
    function, else None.
    """

    frame: Frame
    event: int
    lower: np.ndarray
    upper: np.ndarray
    mass: MassFunction | None = None

    def __getitem__(self, subset) -> tuple[float, float]:
        a = self.frame.subset(subset)
        return float(self.lower[a]), float(self.upper[a])

    def within(self, other: IntervalAssignment, tol: float = SUM_TOL) -> bool:
        """True when every interval here is contained in ``other``'s."""
        return bool(
            np.all(self.lower >= other.lower - tol) and np.all(self.upper <= other.upper + tol)
        )


def _vectors(m: MassFunction):
    b = zeta(m.values)
    pl = b[-1] - b[::-1]
    return b, pl


def _mass_or_none(frame, lower):
    mass = moebius(lower)
    mass[0] = 0.0
    if mass.min() < -SUM_TOL:
        return None
    return MassFunction(frame, np.maximum(mass, 0.0))


def dempster_condition(m: MassFunction, event) -> MassFunction:
    """Dempster conditioning: orthogonal sum with the categorical b.f. on ``event``."""
    b = as_event(m.frame, event)
    return dempster_sum(m, categorical(m.frame, b))[0]


def dempster_interval(m: MassFunction, event) -> IntervalAssignment:
    """Closed-form Dempster conditional values.

    bel(A|B) = (pl(B) - pl(B minus A)) / pl(B), pl(A|B) = pl(A and B) / pl(B).
    """
    B = as_event(m.frame, event)
    _, pl = _vectors(m)
    plB = pl[B]
    if plB < DENOM_TOL:
        raise TotalConflict(1.0 - plB, f"pl(B) = {plB:.3g}: Dempster conditioning on {{{m.frame.key(B)}}} is undefined")
    idx = np.arange(m.frame.size)
    lower = (plB - pl[B & ~idx]) / plB
    upper = pl[idx & B] / plB
    return IntervalAssignment(m.frame, B, lower, upper)


def credal_condition(m: MassFunction, event) -> IntervalAssignment:
    """Fagin-Halpern (credal) conditioning: envelopes of Bayes-conditioned members of the credal set."""
    frame = m.frame
    B = as_event(frame, event)
    b, pl = _vectors(m)
    if pl[B] < DENOM_TOL:
        raise TotalConflict(1.0 - pl[B], f"pl(B) = {pl[B]:.3g}: credal conditioning on {{{frame.key(B)}}} is undefined")
    idx = np.arange(frame.size)
    inside = idx & B
    outside = B & ~idx
    den_lo = b[inside] + pl[outside]
    den_hi = pl[inside] + b[outside]
    for den in (den_lo, den_hi):
        bad = np.flatnonzero(den < DENOM_TOL)
        if bad.size:
            a = int(bad[0])
            raise UndefinedDenominator(
                a, f"credal conditional of {{{frame.key(a)}}} given {{{frame.key(B)}}} has a zero denominator (b(B) = {b[B]:.3g})"
            )
    lower = b[inside] / den_lo
    upper = pl[inside] / den_hi
    return IntervalAssignment(frame, B, lower, upper, _mass_or_none(frame, lower))


def suppes_condition(m: MassFunction, event) -> IntervalAssignment:
    """Suppes-Zanotti geometric conditioning: Bayes' rule on belief values."""
    frame = m.frame
    B = as_event(frame, event)
    b, _ = _vectors(m)
    bB = b[B]
    if bB < DENOM_TOL:
        raise ZeroBelief(f"b(B) = {bB:.3g}: geometric conditioning on {{{frame.key(B)}}} divides by b(B)")
    idx = np.arange(frame.size)
    lower = b[idx & B] / bB
    upper = (bB - b[B & ~idx]) / bB
    return IntervalAssignment(frame, B, lower, upper, _mass_or_none(frame, lower))


def conjunctive_condition(m: MassFunction, event) -> UnnormalizedMass:
    """Smets' conjunctive conditioning m_U(B|A) = sum over C in A^c of m(B + C).

    Mass of focal elements disjoint from ``event`` lands on the empty set
    and is kept there.
    """
    A = as_event(m.frame, event)
    f, v = focal_pairs(m)
    return UnnormalizedMass(m.frame, np.bincount(f & A, weights=v, minlength=m.frame.size))


def disjunctive_condition(m: MassFunction, event) -> MassFunction:
    B = as_event(m.frame, event)
    return disjunctive_combine(m, categorical(m.frame, B))


CHAIN = (
    ("bel_dis", "bel_cr"),
    ("bel_cr", "bel_dem"),
    ("bel_dem", "bel_con"),
    ("bel_con", "pl_con"),
    ("pl_con", "pl_dem"),
    ("pl_dem", "pl_cr"),
    ("pl_cr", "pl_dis"),
)


@dataclass(frozen=True)
class ChainReport:
    ok: bool
    worst_slack: float
    worst_link: str
    worst_event: int
    link_slack: dict
    values: dict


def chain_values(m: MassFunction, event) -> dict[str, np.ndarray]:
    """The eight conditional set functions compared by :func:`nested_chain_check`."""
    B = as_event(m.frame, event)
    dis = disjunctive_condition(m, B)
    cr = credal_condition(m, B)
    dem = dempster_condition(m, B)
    con = conjunctive_condition(m, B)
    return {
        "bel_dis": dis.belief().values,
        "bel_cr": cr.lower,
        "bel_dem": dem.belief().values,
        "bel_con": con.belief().values,
        "pl_con": con.plausibility().values,
        "pl_dem": dem.plausibility().values,
        "pl_cr": cr.upper,
        "pl_dis": dis.plausibility().values,
    }


def nested_chain_check(m: MassFunction, event, tol: float = SUM_TOL) -> ChainReport:
    """Check bel_dis <= bel_cr <= bel_dem <= bel_con <= pl_con <= pl_dem <= pl_cr <= pl_dis for every event.

    The conjunctive pair uses the conditional's implicability (empty-set
    mass included), i.e. bel_con(A|B) = b(A or not-B) and
    pl_con(A|B) = pl(A and B).
    """
    values = chain_values(m, event)
    link_slack = {}
    worst = (np.inf, "", 0)
    for lo, hi in CHAIN:
        slack = values[hi] - values[lo]
        a = int(np.argmin(slack))
        name = f"{lo}<={hi}"
        link_slack[name] = float(slack[a])
        if slack[a] < worst[0]:
            worst = (float(slack[a]), name, a)
    return ChainReport(worst[0] >= -tol, worst[0], worst[1], worst[2], link_slack, values)
