"""Numerical oracles that check the analytic conditioning results independently.

Nothing here reuses the closed forms being checked: distances are
evaluated directly, the L2 projection solves its normal equations by
Gaussian elimination, and minimality is probed by sampling and, for
two-element events, by an exhaustive grid over the conditioning simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import (
    SUM_TOL,
    Frame,
    MassFunction,
    SignedMassFunction,
    _check_same_frame,
    as_event,
    categorical,
    focal_pairs,
    restrict_mask,
)
from .errors import TotalConflict
from .lp import LinfPolytope

_ORD = {1: 1, 2: 2, np.inf: np.inf, "inf": np.inf}


def _ord(p):
    try:
        return _ORD[p]
    except KeyError:
        raise ValueError(f"p must be 1, 2 or inf, got {p!r}") from None


def lp_distance(m1, m2, p=2) -> float:
    """Minkowski distance between two mass vectors over all nonempty subsets."""
    _check_same_frame(m1, m2)
    return float(np.linalg.norm(m1.values[1:] - m2.values[1:], ord=_ord(p)))


def _rows_distance(points: np.ndarray, ref: np.ndarray, p) -> np.ndarray:
    return np.linalg.norm(points[:, 1:] - ref[1:], ord=_ord(p), axis=1)


@lru_cache(maxsize=16)
def jaccard_matrix(n: int) -> np.ndarray:
    """D(A, B) = |A and B| / |A or B| over the nonempty subsets of an n-element frame."""
    masks = np.arange(1, 1 << n)
    pc = np.array([int(x).bit_count() for x in range(1 << n)])
    inter = pc[np.bitwise_and.outer(masks, masks)]
    union = pc[np.bitwise_or.outer(masks, masks)]
    d = inter / union
    d.flags.writeable = False
    return d


def jousselme_distance(m1, m2) -> float:
    frame = _check_same_frame(m1, m2)
    diff = m1.values[1:] - m2.values[1:]
    q = 0.5 * diff @ jaccard_matrix(frame.n) @ diff
    return float(np.sqrt(max(q, 0.0)))


# -- L2 projection by linear solve ----------------------------------------------


@dataclass(frozen=True)
class BetaVector:
    """Auxiliary variables beta(B) = m(B) - m_a(B) for the proper nonempty subsets B of the event.

    ``beta_event`` is the derived value for the event itself,
    b(A) - 1 - sum(beta).
    """

    frame: Frame
    event: int
    subsets: tuple[int, ...]
    values: np.ndarray

    def beta_event(self, m: MassFunction) -> float:
        return float(m.belief().values[self.event] - 1.0 - self.values.sum())

    def reconstruct(self, m: MassFunction) -> SignedMassFunction:
        out = np.zeros(self.frame.size)
        out[list(self.subsets)] = m.values[list(self.subsets)] - self.values
        out[self.event] = m.values[self.event] - self.beta_event(m)
        return SignedMassFunction(self.frame, out)

    @classmethod
    def from_pair(cls, m: MassFunction, m_a: SignedMassFunction, event) -> BetaVector:
        A = as_event(m.frame, event)
        subs = _proper_subsets(m.frame, A)
        return cls(m.frame, A, subs, m.values[list(subs)] - m_a.values[list(subs)])


def _proper_subsets(frame: Frame, A: int) -> tuple[int, ...]:
    inside = restrict_mask(frame, A)
    return tuple(int(b) for b in np.flatnonzero(inside) if b != A)


def _generators(frame: Frame, A: int, subs) -> np.ndarray:
    """Columns e_B - e_A spanning the directions of M_A."""
    g = np.zeros((frame.size, len(subs)))
    for j, b in enumerate(subs):
        g[b, j] = 1.0
        g[A, j] = -1.0
    return g


def a_matrix(d: int) -> np.ndarray:
    """Normal-equation matrix of the L2 projection for an event with d + 1 nonempty subsets."""
    return np.eye(d) + np.ones((d, d))


def a_matrix_identity_deviation(d: int) -> float:
    """max |A^-1 1 - 1/(d+1)|, inverse obtained by a dense solve."""
    if d == 0:
        return 0.0
    x = np.linalg.solve(a_matrix(d), np.ones(d))
    return float(np.max(np.abs(x - 1.0 / (d + 1))))


def l2_project_linear_solve(m: MassFunction, event) -> SignedMassFunction:
    """L2 projection of m onto M_A from the normal equations.

    With q = e_A + G x, G having columns e_B - e_A, the minimizer of
    |m - q|^2 solves (G^T G) x = G^T (m - e_A).
    """
    frame = m.frame
    A = as_event(frame, event)
    subs = _proper_subsets(frame, A)
    base = categorical(frame, A).values
    if not subs:
        return SignedMassFunction(frame, base)
    g = _generators(frame, A, subs)
    x = np.linalg.solve(g.T @ g, g.T @ (m.values - base))
    return SignedMassFunction(frame, base + g @ x)


# -- sampling and grid minimality checks -------------------------------------------


@dataclass(frozen=True)
class NonImprovement:
    ok: bool
    claimed: float
    worst_margin: float
    witness: np.ndarray | None
    spread: float
    checked: int


def _candidate_vertices(candidates, seed) -> list:
    if isinstance(candidates, LinfPolytope):
        # vertices are enumerated lazily: cap the work
        if candidates.vertex_count <= 200:
            return list(candidates.iter_vertices())
        return candidates.sample_vertices(200, seed=seed)
    if hasattr(candidates, "vertices"):
        return list(candidates.vertices)
    if isinstance(candidates, SignedMassFunction):
        return [candidates]
    return list(candidates)


def sampled_nonimprovement(
    m: MassFunction, event, p, candidates, n_samples: int = 10_000, seed=0, tol: float = SUM_TOL
) -> NonImprovement:
    """Try to beat the claimed minimizers with points of M_A.

    Probes ``n_samples`` uniform points of M_A plus its corners. For
    p in {1, inf} the claimed set is convex, so midpoints of candidate
    pairs must also reach the claimed minimum. Returns the first failing
    point as ``witness``.
    """
    frame = m.frame
    A = as_event(frame, event)
    p = _ord(p)
    verts = _candidate_vertices(candidates, seed)
    if not verts:
        raise ValueError("no candidates given")
    cand = np.array([v.values for v in verts])
    cand_d = _rows_distance(cand, m.values, p)
    claimed = float(cand_d.max())
    spread = float(cand_d.max() - cand_d.min())
    witness = None
    ok = spread <= tol
    if not ok:
        witness = cand[int(np.argmin(cand_d))]

    rng = np.random.default_rng(seed)
    gens = np.flatnonzero(restrict_mask(frame, A))
    corners = np.zeros((gens.size, frame.size))
    corners[np.arange(gens.size), gens] = 1.0
    pts = np.zeros((n_samples, frame.size))
    pts[:, gens] = rng.dirichlet(np.ones(gens.size), size=n_samples)
    pts = np.vstack([corners, pts])
    d = _rows_distance(pts, m.values, p)
    margins = d - claimed
    worst = int(np.argmin(margins))
    worst_margin = float(margins[worst])
    if worst_margin < -tol and ok:
        ok, witness = False, pts[worst]

    checked = pts.shape[0]
    if p != 2 and len(verts) > 1:
        pairs = list(combinations(range(len(verts)), 2))
        if len(pairs) > 2000:
            idx = rng.choice(len(pairs), size=2000, replace=False)
            pairs = [pairs[i] for i in idx]
        i, j = np.array(pairs).T
        mids = 0.5 * (cand[i] + cand[j])
        md = _rows_distance(mids, m.values, p)
        checked += mids.shape[0]
        bad = np.flatnonzero(np.abs(md - claimed) > tol)
        if bad.size and ok:
            ok, witness = False, mids[bad[0]]
    return NonImprovement(ok, claimed, worst_margin, witness, spread, checked)


def grid_minimum(m: MassFunction, event, p, resolution: int = 1000) -> float:
    """Exact minimum of the Lp distance over a regular grid of M_A, for |A| = 2.

    The grid has spacing 1/resolution in each barycentric coordinate.
    """
    frame = m.frame
    A = as_event(frame, event)
    gens = np.flatnonzero(restrict_mask(frame, A))
    if gens.size != 3:
        raise ValueError("the grid oracle needs a two-element event")
    p = _ord(p)
    outside = np.ones(frame.size, dtype=bool)
    outside[gens] = False
    outside[0] = False
    rest = m.values[outside]
    i, j = np.triu_indices(resolution + 1)
    # (i, j) with i <= j parametrize a = i/R, b = (j - i)/R, c = 1 - j/R
    a = i / resolution
    b = (j - i) / resolution
    c = 1.0 - j / resolution
    da, db, dc = (np.abs(x - m.values[g]) for x, g in zip((a, b, c), gens))
    if p == 1:
        vals = da + db + dc + np.abs(rest).sum()
    elif p == 2:
        vals = np.sqrt(da**2 + db**2 + dc**2 + np.sum(rest**2))
    else:
        vals = np.maximum(np.maximum(da, db), np.maximum(dc, np.max(np.abs(rest), initial=0.0)))
    return float(vals.min())


# -- credal sampling -------------------------------------------------------------


@dataclass(frozen=True)
class CredalEnvelope:
    """Sampled per-event envelope of Bayes-conditioned members of the credal set."""

    frame: Frame
    event: int
    lower: np.ndarray
    upper: np.ndarray
    samples: int

    def __getitem__(self, subset) -> tuple[float, float]:
        a = self.frame.subset(subset)
        return float(self.lower[a]), float(self.upper[a])


def _membership(n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    return ((masks[None, :] >> np.arange(n)[:, None]) & 1).astype(float)


def credal_sampling(
    m: MassFunction, event, n_samples: int = 20_000, seed=0, vertex_bias: float = 0.5, chunk: int = 4096
) -> CredalEnvelope:
    """Envelope of P(. | B) over sampled probabilities consistent with m.

    Each sample spreads every focal mass over its elements. With
    probability ``vertex_bias`` a focal element puts all its mass on one
    random element (an extreme point of the credal set), otherwise the
    split is flat-Dirichlet.
    """
    frame = m.frame
    B = as_event(frame, event)
    pl_b = m.plausibility().values[B]
    if pl_b < 1e-12:
        raise TotalConflict(1.0 - pl_b, f"pl(B) = {pl_b:.3g}: no probability consistent with m charges B")
    rng = np.random.default_rng(seed)
    focal, w = focal_pairs(m)
    members = [np.flatnonzero([(int(f) >> i) & 1 for i in range(frame.n)]) for f in focal]
    member = _membership(frame.n)
    lower = np.full(frame.size, np.inf)
    upper = np.full(frame.size, -np.inf)
    idx = np.arange(frame.size)
    done = 0
    while done < n_samples:
        size = min(chunk, n_samples - done)
        probs = np.zeros((size, frame.n))
        for elems, mass in zip(members, w):
            split = rng.dirichlet(np.ones(elems.size), size=size)
            extreme = rng.random(size) < vertex_bias
            if extreme.any():
                pick = rng.integers(elems.size, size=int(extreme.sum()))
                split[extreme] = np.eye(elems.size)[pick]
            probs[:, elems] += mass * split
        P = probs @ member
        pb = P[:, B]
        keep = pb > 1e-12
        cond = P[keep][:, idx & B] / pb[keep, None]
        if cond.size:
            lower = np.minimum(lower, cond.min(axis=0))
            upper = np.maximum(upper, cond.max(axis=0))
        done += size
    return CredalEnvelope(frame, B, lower, upper, n_samples)


# -- belief-space projection (least squares) -----------------------------------


def belief_space_l2_lstsq(m: MassFunction, event) -> SignedMassFunction:
    """L2 projection of m's belief vector onto the belief vectors of M_A, by least squares."""
    frame = m.frame
    A = as_event(frame, event)
    subs = _proper_subsets(frame, A)
    base = categorical(frame, A).values
    if not subs:
        return SignedMassFunction(frame, base)
    # zeta as a matrix: b = Z m with Z[C, B] = [B subset of C]
    masks = np.arange(frame.size)
    Z = ((masks[:, None] & masks[None, :]) == masks[None, :]).astype(float)
    g = _generators(frame, A, subs)
    target = Z @ m.values - Z @ base
    x, *_ = np.linalg.lstsq(Z @ g, target, rcond=None)
    return SignedMassFunction(frame, base + g @ x)
