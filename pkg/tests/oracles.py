"""Brute-force reference implementations used by the tests.

Everything works on dicts keyed by frozensets and enumerates subsets
explicitly; nothing here calls the package's transforms or closed forms.
Optimization oracles go through scipy's LP solver.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations

import numpy as np
from scipy.optimize import linprog


def powerset(elems):
    elems = tuple(elems)
    return [frozenset(c) for c in chain.from_iterable(combinations(elems, r) for r in range(len(elems) + 1))]


def as_sets(m) -> dict:
    """Mass object -> {frozenset: value} over nonzero entries (empty set included if charged)."""
    names = m.frame.names
    out = {}
    for mask, v in enumerate(m.values):
        if v != 0.0:
            out[frozenset(n for i, n in enumerate(names) if mask >> i & 1)] = float(v)
    return out


def mask_of(frame, s) -> int:
    return sum(1 << frame.names.index(x) for x in s)


def dense(frame, d: dict) -> np.ndarray:
    out = np.zeros(frame.size)
    for s, v in d.items():
        out[mask_of(frame, s)] += v
    return out


def bel(d: dict, A) -> float:
    return sum(v for s, v in d.items() if s and s <= A)


def implicability(d: dict, A) -> float:
    return sum(v for s, v in d.items() if s <= A)


def pl(d: dict, A) -> float:
    return sum(v for s, v in d.items() if s & A)


def moebius_brute(bvals: dict) -> dict:
    return {A: sum((-1) ** len(A - B) * bvals[B] for B in bvals if B <= A) for A in bvals}


def combine_brute(d1: dict, d2: dict, op) -> dict:
    out = {}
    for s1, v1 in d1.items():
        for s2, v2 in d2.items():
            t = op(s1, s2)
            out[t] = out.get(t, 0.0) + v1 * v2
    return out


def dempster_brute(d1: dict, d2: dict) -> dict:
    raw = combine_brute(d1, d2, frozenset.__and__)
    k = raw.pop(frozenset(), 0.0)
    return {s: v / (1 - k) for s, v in raw.items()}


def l2_fraction(d: dict, frame_elems, A) -> dict:
    """Exact rational L2 conditional from the definition 'spread pl(A^c) evenly'."""
    d = {s: Fraction(v) for s, v in d.items()}
    subs = [s for s in powerset(A) if s]
    S = sum(v for s, v in d.items() if not s <= A)
    return {s: d.get(s, Fraction(0)) + S / len(subs) for s in subs}


# -- LP oracles over the conditioning simplex -----------------------------------


def _simplex_lp(m_vals: np.ndarray, gens: np.ndarray, p):
    """Minimize the L1 or L-inf distance from m to conv{e_B : B in gens} by LP.

    Variables: q over gens, then slack(s). Returns the optimal value.
    """
    N = m_vals.size
    k = gens.size
    rest = np.ones(N, dtype=bool)
    rest[gens] = False
    rest[0] = False
    target = m_vals[gens]
    if p == 1:
        # q (k), u (k) with u >= |q - m|
        c = np.concatenate([np.zeros(k), np.ones(k)])
        I = np.eye(k)
        A_ub = np.block([[I, -I], [-I, -I]])
        b_ub = np.concatenate([target, -target])
        A_eq = np.concatenate([np.ones(k), np.zeros(k)])[None, :]
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=[(0, None)] * k + [(0, None)] * k)
        return res.fun + np.abs(m_vals[rest]).sum()
    c = np.concatenate([np.zeros(k), [1.0]])
    I = np.eye(k)
    ones = np.ones((k, 1))
    A_ub = np.block([[I, -ones], [-I, -ones]])
    b_ub = np.concatenate([target, -target])
    A_eq = np.concatenate([np.ones(k), [0.0]])[None, :]
    bounds = [(0, None)] * k + [(np.max(np.abs(m_vals[rest]), initial=0.0), None)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds)
    return res.fun


def lp_min_distance(m, gens, p) -> float:
    return float(_simplex_lp(m.values, np.asarray(gens), p))


def linf_min_signed(m, gens) -> float:
    """L-inf distance from m to the affine hull of M_A (negative masses allowed)."""
    m_vals = m.values
    gens = np.asarray(gens)
    k = gens.size
    rest = np.ones(m_vals.size, dtype=bool)
    rest[gens] = False
    rest[0] = False
    c = np.concatenate([np.zeros(k), [1.0]])
    I = np.eye(k)
    ones = np.ones((k, 1))
    A_ub = np.block([[I, -ones], [-I, -ones]])
    b_ub = np.concatenate([m_vals[gens], -m_vals[gens]])
    A_eq = np.concatenate([np.ones(k), [0.0]])[None, :]
    bounds = [(None, None)] * k + [(np.max(np.abs(m_vals[rest]), initial=0.0), None)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds)
    return float(res.fun)


# -- belief-space L-inf barycentre by polygon enumeration -------------------------


def belief_space_linf_polygon(m, A: int):
    """Vertices of the belief-space L-inf minimizer set for a 2-element event.

    The conditionals are parametrized by (q(B1), q(B2)); q(A) = 1 - q(B1) - q(B2).
    Returns (optimal value, array of vertex parameter pairs).
    """
    frame = m.frame
    size = frame.size
    subs = [b for b in range(1, size) if b | A == A and b != A]
    assert len(subs) == 2
    Z = np.array([[1.0 if (c & b) == b else 0.0 for b in range(size)] for c in range(size)])
    base = np.zeros(size)
    base[A] = 1.0
    G = np.zeros((size, 2))
    for j, b in enumerate(subs):
        G[b, j] = 1.0
        G[A, j] = -1.0
    rows = Z[1:-1] @ G  # proper nonempty events only: the others are fixed
    rhs = (Z @ m.values - Z @ base)[1:-1]
    # minimize t s.t. |rows x - rhs| <= t
    r = rows.shape[0]
    c = np.array([0.0, 0.0, 1.0])
    A_ub = np.block([[rows, -np.ones((r, 1))], [-rows, -np.ones((r, 1))]])
    b_ub = np.concatenate([rhs, -rhs])
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None), (None, None), (0, None)])
    t = res.fun
    # polygon {x : |rows x - rhs| <= t}: intersect every pair of boundary lines
    lines = [(rows[i], rhs[i] + t) for i in range(r)] + [(-rows[i], -rhs[i] + t) for i in range(r)]
    verts = []
    for (a1, c1), (a2, c2) in combinations(lines, 2):
        M = np.array([a1, a2])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, [c1, c2])
        if np.all(np.abs(rows @ x - rhs) <= t + 1e-9):
            if not any(np.allclose(x, v, atol=1e-9) for v in verts):
                verts.append(x)
    return t, np.array(verts), subs
