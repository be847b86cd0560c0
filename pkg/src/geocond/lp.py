"""Geometric conditioning: Lp projections of a mass vector onto the conditioning simplex.

For an event A, the conditioning simplex M_A holds the mass functions
whose focal elements are all subsets of A. Writing ``S`` for the mass the
original function puts outside A (S = 1 - b(A) = pl(A^c)), ``M`` for the
largest single such mass and ``k = 2**|A| - 1``:

* L1: the minimizers form a simplex whose vertex keyed by B adds all of S
  to B; every point dominates the original masses on subsets of A.
* L2: unique minimizer, S spread evenly over the k subsets of A.
* L-inf: minimal distance ``max(M, S/k)``. When M < S/k the minimizer is
  the L2 point. Otherwise the minimizers are the mass functions within M
  of the original on every subset of A; that box-slice is a simplex with k
  vertices when S >= (k - 2) M, and a larger polytope (see
  :class:`LinfPolytope`) when the outside mass is concentrated.

Outputs always live on the full frame with zero mass off the subsets of A.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import (
    SUM_TOL,
    Frame,
    MassFunction,
    SignedMassFunction,
    as_event,
    focal_pairs,
    restrict_mask,
)
from .errors import TooManyVertices

CASE_TOL = 1e-12
MAX_VERTICES = 100_000


@lru_cache(maxsize=None)
def _popcounts(size: int) -> np.ndarray:
    pc = np.zeros(size, dtype=np.int64)
    for i in range(1, size):
        pc[i] = pc[i >> 1] + (i & 1)
    pc.flags.writeable = False
    return pc


@dataclass(frozen=True)
class ConditioningSimplex:
    """M_A: convex hull of the categorical mass vectors of the nonempty subsets of A."""

    frame: Frame
    event: int

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(int(b) for b in np.flatnonzero(restrict_mask(self.frame, self.event)))

    def contains(self, q: SignedMassFunction, tol: float = SUM_TOL) -> bool:
        inside = restrict_mask(self.frame, self.event)
        return bool(
            np.all(np.abs(q.values[~inside]) <= tol)
            and np.all(q.values[inside] >= -tol)
            and abs(q.values.sum() - 1.0) <= tol
        )

    def corners(self) -> list[MassFunction]:
        out = []
        for b in self.generators:
            v = np.zeros(self.frame.size)
            v[b] = 1.0
            out.append(MassFunction(self.frame, v))
        return out

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """``count`` uniform points of M_A as dense rows."""
        gens = np.array(self.generators)
        pts = np.zeros((count, self.frame.size))
        pts[:, gens] = rng.dirichlet(np.ones(gens.size), size=count)
        return pts


def _split(m: MassFunction, A: int):
    inside = restrict_mask(m.frame, A)
    outside = ~inside
    outside[0] = False
    out_vals = m.values[outside]
    S = float(out_vals.sum())
    M = float(out_vals.max(initial=0.0))
    base = np.where(inside, m.values, 0.0)
    return inside, base, S, M


class _MinimizerSet:
    """Shared behaviour of the set-valued conditionals."""

    @property
    def frame(self) -> Frame:
        return self.source.frame

    @property
    def admissible(self) -> tuple[bool, ...]:
        return tuple(v.is_admissible for v in self.vertices)

    def contains(self, q: SignedMassFunction, tol: float = SUM_TOL) -> bool:
        """Membership in the minimizer set, via its inequality description."""
        inside = restrict_mask(self.frame, self.event)
        if np.any(np.abs(q.values[~inside]) > tol) or abs(q.values.sum() - 1.0) > tol:
            return False
        diff = q.values[inside] - self.source.values[inside]
        if self.norm == 1:
            return bool(np.all(diff >= -tol))
        return bool(np.max(np.abs(diff)) <= self.distance + tol)


@dataclass(frozen=True)
class ConditionalSimplex(_MinimizerSet):
    """Explicit simplex (or single point) of conditional (pseudo) belief functions.

    ``keys[i]`` is the subset of the event that generated ``vertices[i]``;
    vertices come in ascending key order.
    """

    source: MassFunction
    event: int
    kind: str  # "l1-simplex", "linf-simplex" or "linf-point"
    keys: tuple[int, ...]
    vertices: tuple[SignedMassFunction, ...]
    barycenter: SignedMassFunction
    distance: float

    @property
    def norm(self) -> float:
        return 1 if self.kind == "l1-simplex" else math.inf

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def iter_vertices(self) -> Iterator[SignedMassFunction]:
        return iter(self.vertices)

    def sample_vertices(self, count: int, seed=None) -> list[SignedMassFunction]:
        rng = np.random.default_rng(seed)
        return [self.vertices[i] for i in rng.integers(0, len(self.vertices), size=count)]


@dataclass(frozen=True)
class LinfPolytope(_MinimizerSet):
    """L-inf minimizers when one outside focal element dominates.

    In deviation coordinates d(B) = q(B) - m(B) over the k subsets of the
    event, the set is the slice of the cube [-r, r]^k by the hyperplane
    sum d = S. Its vertices have every coordinate at +-r except at most one,
    so their number grows like a binomial coefficient in k; they are
    enumerated lazily.
    """

    source: MassFunction
    event: int
    radius: float
    deficit: float
    barycenter: SignedMassFunction
    kind: str = field(default="linf-polytope", init=False)

    norm = math.inf

    @property
    def distance(self) -> float:
        return self.radius

    @property
    def _subs(self) -> np.ndarray:
        return np.flatnonzero(restrict_mask(self.frame, self.event))

    def _patterns(self):
        """(plus-count, has-free-coordinate, free value) for every vertex family."""
        k = self._subs.size
        r, S = self.radius, self.deficit
        eps = 1e-12 * max(r, 1.0)
        out = []
        twice_plus = k + S / r
        p0 = round(twice_plus / 2)
        if abs(twice_plus - 2 * p0) <= 1e-9 and 0 <= p0 <= k:
            out.append((p0, False, 0.0))
        for p in range(k):
            free = S - (2 * p - (k - 1)) * r
            if -r + eps < free < r - eps:
                out.append((p, True, free))
        return out

    @property
    def vertex_count(self) -> int:
        k = self._subs.size
        return sum(k * math.comb(k - 1, p) if has_free else math.comb(k, p) for p, has_free, _ in self._patterns())

    def _build(self, subs, plus, free_idx=None, free=0.0) -> SignedMassFunction:
        d = np.full(subs.size, -self.radius)
        d[list(plus)] = self.radius
        if free_idx is not None:
            d[free_idx] = free
        v = np.zeros(self.frame.size)
        v[subs] = self.source.values[subs] + d
        return SignedMassFunction(self.frame, v)

    def iter_vertices(self) -> Iterator[SignedMassFunction]:
        subs = self._subs
        k = subs.size
        for p, has_free, free in self._patterns():
            if not has_free:
                for plus in itertools.combinations(range(k), p):
                    yield self._build(subs, plus)
                continue
            for f in range(k):
                others = [i for i in range(k) if i != f]
                for plus in itertools.combinations(others, p):
                    yield self._build(subs, plus, f, free)

    @property
    def vertices(self) -> tuple[SignedMassFunction, ...]:
        count = self.vertex_count
        if count > MAX_VERTICES:
            raise TooManyVertices(f"{count} vertices exceed the enumeration cap of {MAX_VERTICES}")
        return tuple(self.iter_vertices())

    def sample_vertices(self, count: int, seed=None) -> list[SignedMassFunction]:
        """Random vertices, each family weighted by its size."""
        rng = np.random.default_rng(seed)
        subs = self._subs
        k = subs.size
        families = self._patterns()
        sizes = np.array(
            [k * math.comb(k - 1, p) if has_free else math.comb(k, p) for p, has_free, _ in families], dtype=float
        )
        out = []
        for j in rng.choice(len(families), size=count, p=sizes / sizes.sum()):
            p, has_free, free = families[j]
            if has_free:
                f = int(rng.integers(k))
                others = np.array([i for i in range(k) if i != f])
                plus = rng.choice(others, size=p, replace=False)
                out.append(self._build(subs, plus, f, free))
            else:
                out.append(self._build(subs, rng.choice(k, size=p, replace=False)))
        return out


def l1_condition(m: MassFunction, event) -> ConditionalSimplex:
    A = as_event(m.frame, event)
    inside, base, S, _ = _split(m, A)
    keys = tuple(int(b) for b in np.flatnonzero(inside))
    vertices = []
    for b in keys:
        v = base.copy()
        v[b] += S
        vertices.append(MassFunction(m.frame, v))
    bary = MassFunction(m.frame, np.mean([v.values for v in vertices], axis=0))
    return ConditionalSimplex(m, A, "l1-simplex", keys, tuple(vertices), bary, 2.0 * S)


def l2_condition(m: MassFunction, event) -> MassFunction:
    A = as_event(m.frame, event)
    inside, base, S, _ = _split(m, A)
    k = (1 << A.bit_count()) - 1
    return MassFunction(m.frame, np.where(inside, base + S / k, 0.0))


def l1_barycenter_equals_l2(m: MassFunction, event, tol: float = 1e-12) -> bool:
    return l1_condition(m, event).barycenter.allclose(l2_condition(m, event), tol)


def linf_norm_value(m: MassFunction, event) -> float:
    """Minimal L-inf distance from m to M_A."""
    A = as_event(m.frame, event)
    _, _, S, M = _split(m, A)
    k = (1 << A.bit_count()) - 1
    return max(M, S / k)


def linf_condition(m: MassFunction, event):
    """Set of L-inf conditional (pseudo) belief functions.

    Returns a :class:`ConditionalSimplex` of kind ``linf-point`` (M < S/k),
    ``linf-simplex`` (k vertices, vertex keyed by B' adds M to every subset
    but B', which absorbs S - (k-1) M), or a :class:`LinfPolytope` when
    S < (k - 2) M, where that vertex formula would overshoot the box.
    """
    A = as_event(m.frame, event)
    inside, base, S, M = _split(m, A)
    keys = tuple(int(b) for b in np.flatnonzero(inside))
    k = len(keys)
    if M * k < S - CASE_TOL:
        point = l2_condition(m, A)
        return ConditionalSimplex(m, A, "linf-point", (A,), (point,), point, S / k)
    if S < (k - 2) * M - CASE_TOL:
        return LinfPolytope(m, A, M, S, l2_condition(m, A))
    vertices = []
    shifted = np.where(inside, base + M, 0.0)
    for b in keys:
        v = shifted.copy()
        v[b] = m.values[b] + S - (k - 1) * M
        vertices.append(SignedMassFunction(m.frame, v))
    bary = SignedMassFunction(m.frame, np.mean([v.values for v in vertices], axis=0))
    return ConditionalSimplex(m, A, "linf-simplex", keys, tuple(vertices), bary, M)


def _outside_parts(m: MassFunction, A: int):
    """Split each focal element F not inside A into (F & A, F minus A, mass)."""
    f, v = focal_pairs(m)
    out = (f & ~A) != 0
    return f[out] & A, f[out] & ~A, v[out]


def _belief_space_result(m: MassFunction, A: int, weight_of_c, alternating_total) -> SignedMassFunction:
    frame = m.frame
    pc = _popcounts(frame.size)
    inside = restrict_mask(frame, A)
    proper = inside.copy()
    proper[A] = False
    values = np.where(proper, m.values, 0.0)
    b_part, c_part, mass = _outside_parts(m, A)
    keep = (b_part != 0) & (b_part != A)
    np.add.at(values, b_part[keep], mass[keep] * weight_of_c(pc[c_part[keep]]))
    sign = np.where(pc % 2 == 1, 1.0, -1.0)
    values[proper] += sign[proper] * alternating_total
    values[A] = 1.0 - values.sum()
    return SignedMassFunction(frame, values)


def l2_condition_belief_space(m: MassFunction, event) -> SignedMassFunction:
    """L2 conditional belief function computed in the belief space.

    For every B strictly inside A:
    m'(B) = m(B) + sum_C m(B + C) 2^-|C| + (-1)^(|B|+1) sum_C m(C) 2^-|C|,
    with C over the nonempty subsets of A^c; A itself takes the remainder.
    May be a pseudo belief function.
    """
    A = as_event(m.frame, event)
    b_part, c_part, mass = _outside_parts(m, A)
    pc = _popcounts(m.frame.size)
    lone = b_part == 0  # focal elements inside A^c
    total = float(np.sum(mass[lone] * 0.5 ** pc[c_part[lone]]))
    return _belief_space_result(m, A, lambda sizes: 0.5**sizes, total)


def linf_barycentre_belief_space(m: MassFunction, event) -> SignedMassFunction:
    """Barycentre of the L-inf conditional set computed in the belief space.

    For every B strictly inside A:
    m'(B) = m(B) + 1/2 sum_C m(B + C) + 1/2 (-1)^(|B|+1) b(A^c),
    C over the nonempty subsets of A^c; A itself takes the remainder.
    """
    A = as_event(m.frame, event)
    b_part, _, mass = _outside_parts(m, A)
    b_ac = float(mass[b_part == 0].sum())
    return _belief_space_result(m, A, lambda sizes: np.full(sizes.shape, 0.5), 0.5 * b_ac)
