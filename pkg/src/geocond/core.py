"""Frames, dense set-function storage and the Moebius machinery.

Subsets of a frame are integer bitmasks: element ``i`` of the frame is bit
``i``. Every set function is stored as a dense float array of length
``2**n`` indexed by bitmask, so ``values[0]`` is the empty set. Mass
assignments keep that slot pinned at zero; the conjunctive rule's
``UnnormalizedMass`` is the only container allowed to put mass there.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadCount,
    EmptyEvent,
    FormatError,
    FrameMismatch,
    InvalidMass,
    NotABeliefFunction,
    TotalConflict,
    WeightMismatch,
)

MAX_FRAME_SIZE = 12

# Tolerances shared by every module.
SUM_TOL = 1e-9  # normalization and equality of analytic results
NEG_TOL = 1e-12  # a mass entry counts as nonnegative above -NEG_TOL
NUM_TOL = 1e-6  # iterative or sampled numerics


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask`` in ascending order."""
    subs = []
    s = mask
    while s:
        subs.append(s)
        s = (s - 1) & mask
    return reversed(subs)


def is_subset(a: int, b: int) -> bool:
    return a & b == a


@dataclass(frozen=True)
class Frame:
    """A finite frame of discernment with ordered, distinct element names."""

    names: tuple[str, ...]
    cap: int = field(default=MAX_FRAME_SIZE, compare=False, repr=False)

    def __post_init__(self):
        names = tuple(str(x) for x in self.names)
        object.__setattr__(self, "names", names)
        if not 1 <= len(names) <= self.cap:
            raise ValueError(f"frame size must be in [1, {self.cap}], got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError(f"frame element names must be unique: {names}")
        for name in names:
            if not name or any(c.isspace() for c in name):
                raise ValueError(f"invalid element name {name!r}")

    @classmethod
    def of_size(cls, n: int, cap: int = MAX_FRAME_SIZE) -> Frame:
        if n < 1:
            raise ValueError("frame size must be positive")
        letters = string.ascii_lowercase
        names = tuple(letters[i] for i in range(n)) if n <= len(letters) else tuple(f"e{i}" for i in range(n))
        return cls(names, cap=cap)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        """Number of subsets, 2**n."""
        return 1 << len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def subset(self, spec) -> int:
        """Bitmask for ``spec``: an int mask, a space-joined key, or an iterable of names."""
        if isinstance(spec, (int, np.integer)):
            mask = int(spec)
            if not 0 <= mask <= self.full:
                raise ValueError(f"subset mask {mask} outside frame of size {self.n}")
            return mask
        if isinstance(spec, str):
            spec = spec.split()
        mask = 0
        for name in spec:
            try:
                mask |= 1 << self.names.index(name)
            except ValueError:
                raise FormatError(f"unknown element {name!r} (frame is {list(self.names)})") from None
        return mask

    def key(self, mask: int) -> str:
        """Canonical key: frame-order element names joined by single spaces."""
        return " ".join(name for i, name in enumerate(self.names) if mask >> i & 1)

    def elements(self, mask: int) -> tuple[str, ...]:
        return tuple(name for i, name in enumerate(self.names) if mask >> i & 1)

    def complement(self, mask: int) -> int:
        return self.full ^ mask


def _check_same_frame(*items):
    frame = items[0].frame
    for other in items[1:]:
        if other.frame != frame:
            raise FrameMismatch(f"frames differ: {frame.names} vs {other.frame.names}")
    return frame


# -- subset-sum transforms ----------------------------------------------------


def zeta(values: np.ndarray) -> np.ndarray:
    """Subset-sum transform f(A) = sum_{B subset of A} g(B), O(n 2^n)."""
    f = np.array(values, dtype=float)
    n = f.size.bit_length() - 1
    for i in range(n):
        v = f.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return f


def moebius(values: np.ndarray) -> np.ndarray:
    """Inverse of :func:`zeta`."""
    f = np.array(values, dtype=float)
    n = f.size.bit_length() - 1
    for i in range(n):
        v = f.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return f


# -- containers ---------------------------------------------------------------


class _SetVector:
    __slots__ = ("frame", "values")

    def __init__(self, frame: Frame, values):
        values = np.array(values, dtype=float)
        if values.ndim != 1:
            raise InvalidMass("values must be one-dimensional")
        if values.size == frame.size - 1:
            values = np.concatenate(([0.0], values))
        if values.size != frame.size:
            raise InvalidMass(f"expected {frame.size} values for a frame of size {frame.n}, got {values.size}")
        values.flags.writeable = False
        self.frame = frame
        self.values = values

    def __getitem__(self, subset) -> float:
        return float(self.values[self.frame.subset(subset)])

    def allclose(self, other, tol: float = SUM_TOL) -> bool:
        return self.frame == other.frame and bool(np.max(np.abs(self.values - other.values)) <= tol)

    def __repr__(self):
        body = ", ".join(
            f"{self.frame.key(a) or '{}'!s}: {v:.6g}" for a, v in enumerate(self.values) if v != 0.0
        )
        return f"{type(self).__name__}({{{body}}})"


class SignedMassFunction(_SetVector):
    """Mass assignment summing to one whose entries may be negative.

    Pseudo belief functions (for instance L-infinity conditional vertices)
    are returned as instances of this class; :class:`MassFunction` is the
    admissible special case.
    """

    __slots__ = ()

    def __init__(self, frame: Frame, values, *, tol: float = SUM_TOL):
        super().__init__(frame, values)
        if self.values[0] != 0.0:
            raise InvalidMass("mass on the empty set is not allowed here")
        total = float(self.values.sum())
        if abs(total - 1.0) > tol:
            raise InvalidMass(f"masses sum to {total:.12g}, not 1")

    @classmethod
    def from_dict(cls, frame: Frame, masses: dict, **kwargs):
        values = np.zeros(frame.size)
        for spec, v in masses.items():
            mask = frame.subset(spec)
            if mask == 0:
                raise InvalidMass("mass on the empty set is not allowed here")
            values[mask] += float(v)
        return cls(frame, values, **kwargs)

    @property
    def vector(self) -> np.ndarray:
        """The N-1 mass components, empty set excluded."""
        return self.values[1:]

    @property
    def focal(self) -> tuple[int, ...]:
        return tuple(int(a) for a in np.flatnonzero(self.values))

    @property
    def core(self) -> int:
        c = 0
        for a in self.focal:
            c |= a
        return c

    @property
    def is_admissible(self) -> bool:
        return bool(self.values.min() >= -NEG_TOL)

    def as_dict(self) -> dict[str, float]:
        return {self.frame.key(a): float(self.values[a]) for a in self.focal}

    def belief(self) -> BeliefVector:
        return BeliefVector(self.frame, zeta(self.values))

    def plausibility(self) -> PlausibilityVector:
        b = zeta(self.values)
        return PlausibilityVector(self.frame, b[-1] - b[::-1])

    def to_mass(self) -> MassFunction:
        """Reinterpret as a :class:`MassFunction`; raises if inadmissible."""
        return MassFunction(self.frame, self.values)


class MassFunction(SignedMassFunction):
    """Basic probability assignment: nonnegative, sums to one, nothing on the empty set."""

    __slots__ = ()

    def __init__(self, frame: Frame, values, *, tol: float = SUM_TOL):
        super().__init__(frame, values, tol=tol)
        lo = float(self.values.min())
        if lo < -NEG_TOL:
            bad = int(np.argmin(self.values))
            raise InvalidMass(f"negative mass {lo:.6g} on {{{frame.key(bad)}}}")


class UnnormalizedMass(_SetVector):
    """Nonnegative assignment summing to one that may put mass on the empty set.

    Produced by the conjunctive rule and conjunctive conditioning. Its
    ``belief`` includes the empty-set mass (so that ``pl(A) = 1 - b(A^c)``
    still holds), which is the convention of the conditioning table for
    the conjunctive operator.
    """

    __slots__ = ()

    def __init__(self, frame: Frame, values, *, tol: float = SUM_TOL):
        super().__init__(frame, values)
        if float(self.values.min()) < -NEG_TOL:
            raise InvalidMass("negative mass in unnormalized assignment")
        if abs(float(self.values.sum()) - 1.0) > tol:
            raise InvalidMass("unnormalized assignment must still sum to 1")

    @property
    def empty_mass(self) -> float:
        return float(self.values[0])

    @property
    def focal(self) -> tuple[int, ...]:
        return tuple(int(a) for a in np.flatnonzero(self.values))

    def belief(self) -> BeliefVector:
        return BeliefVector(self.frame, zeta(self.values), check=False)

    def plausibility(self) -> PlausibilityVector:
        b = zeta(self.values)
        return PlausibilityVector(self.frame, b[-1] - b[::-1])

    def normalized(self) -> MassFunction:
        k = self.empty_mass
        if 1.0 - k < NEG_TOL:
            raise TotalConflict(k)
        v = self.values.copy()
        v[0] = 0.0
        return MassFunction(self.frame, v / (1.0 - k))

    def as_dict(self) -> dict[str, float]:
        return {self.frame.key(a): float(self.values[a]) for a in self.focal}


class BeliefVector(_SetVector):
    """Belief values b(A) for every A, empty set included (b = 0 there)."""

    __slots__ = ()

    def __init__(self, frame: Frame, values, *, check: bool = True):
        super().__init__(frame, values)
        if check and (abs(self.values[0]) > SUM_TOL or abs(self.values[-1] - 1.0) > SUM_TOL):
            raise InvalidMass("a belief vector needs b(empty) = 0 and b(frame) = 1")


class PlausibilityVector(_SetVector):
    """Plausibility values pl(A) for every A."""

    __slots__ = ()


# -- operations ---------------------------------------------------------------


def mass_to_belief(m: SignedMassFunction) -> BeliefVector:
    return m.belief()


def belief_to_mass(b: BeliefVector) -> MassFunction:
    m = moebius(b.values)
    worst = int(np.argmin(m[1:])) + 1
    if m[worst] < -SUM_TOL:
        raise NotABeliefFunction(
            f"Moebius inversion gives m({{{b.frame.key(worst)}}}) = {m[worst]:.6g} < 0"
        )
    m[0] = 0.0
    return MassFunction(b.frame, np.maximum(m, 0.0))


def plausibility_of(m: SignedMassFunction) -> PlausibilityVector:
    return m.plausibility()


def categorical(frame: Frame, event) -> MassFunction:
    a = frame.subset(event)
    if a == 0:
        raise EmptyEvent("a categorical belief function needs a nonempty focal element")
    values = np.zeros(frame.size)
    values[a] = 1.0
    return MassFunction(frame, values)


def vacuous(frame: Frame) -> MassFunction:
    return categorical(frame, frame.full)


def convex_combine(weighted: Sequence[tuple[float, SignedMassFunction]]):
    """Entrywise convex combination. Returns a MassFunction when every input is one."""
    if not weighted:
        raise WeightMismatch("nothing to combine")
    weights = np.array([float(w) for w, _ in weighted])
    if weights.min() < -NEG_TOL or abs(weights.sum() - 1.0) > SUM_TOL:
        raise WeightMismatch(f"weights must be nonnegative and sum to 1, got {weights.tolist()}")
    frame = _check_same_frame(*(m for _, m in weighted))
    values = sum(w * m.values for w, m in zip(weights, (m for _, m in weighted)))
    if all(isinstance(m, MassFunction) for _, m in weighted):
        return MassFunction(frame, values)
    return SignedMassFunction(frame, values)


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    sum_deviation: float
    negative: tuple[int, ...]
    empty_mass: float
    focal: tuple[int, ...]
    core: int

    def describe(self, frame: Frame) -> str:
        parts = [f"sum deviation {self.sum_deviation:+.3g}"]
        if self.negative:
            parts.append("negative on " + ", ".join("{" + frame.key(a) + "}" for a in self.negative))
        if self.empty_mass:
            parts.append(f"mass {self.empty_mass:.6g} on the empty set")
        parts.append(f"{len(self.focal)} focal elements, core {{{frame.key(self.core)}}}")
        return ("ok: " if self.ok else "invalid: ") + "; ".join(parts)


def validate(frame: Frame, values=None) -> Diagnostics:
    """Diagnose raw values (or an existing mass function) without raising.

    ``validate(m)`` is accepted as shorthand for ``validate(m.frame, m.values)``.
    """
    if values is None:
        frame, values = frame.frame, frame.values
    v = np.array(values, dtype=float)
    if v.size == frame.size - 1:
        v = np.concatenate(([0.0], v))
    if v.size != frame.size:
        raise InvalidMass(f"expected {frame.size} values, got {v.size}")
    dev = float(v.sum() - 1.0)
    negative = tuple(int(a) for a in np.flatnonzero(v < -NEG_TOL))
    focal = tuple(int(a) for a in np.flatnonzero(v > 0) if a)
    core = 0
    for a in focal:
        core |= a
    ok = abs(dev) <= SUM_TOL and not negative and v[0] == 0.0
    return Diagnostics(ok, dev, negative, float(v[0]), focal, core)


def random_mass(frame: Frame, k_focal: int, seed=None) -> MassFunction:
    """``k_focal`` distinct focal elements with flat-Dirichlet masses."""
    if not 1 <= k_focal <= frame.size - 1:
        raise BadCount(f"k_focal must be in [1, {frame.size - 1}] on a frame of size {frame.n}, got {k_focal}")
    rng = np.random.default_rng(seed)
    focal = rng.choice(frame.size - 1, size=k_focal, replace=False) + 1
    weights = rng.dirichlet(np.ones(k_focal))
    values = np.zeros(frame.size)
    values[focal] = weights
    values /= values.sum()
    return MassFunction(frame, values)


def restrict_mask(frame: Frame, event: int) -> np.ndarray:
    """Boolean array selecting the nonempty subsets of ``event``."""
    idx = np.arange(frame.size)
    inside = (idx | event) == event
    inside[0] = False
    return inside


def focal_pairs(m: SignedMassFunction) -> tuple[np.ndarray, np.ndarray]:
    f = np.flatnonzero(m.values)
    return f, m.values[f]


def as_event(frame: Frame, event, *, allow_empty: bool = False) -> int:
    a = frame.subset(event)
    if a == 0 and not allow_empty:
        raise EmptyEvent("the conditioning event must be nonempty")
    return a


def iter_subsets(frame: Frame, include_empty: bool = True) -> Iterable[int]:
    return range(0 if include_empty else 1, frame.size)
