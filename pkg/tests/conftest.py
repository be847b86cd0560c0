import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from geocond import Frame, MassFunction, random_mass  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

XYZ = Frame(("x", "y", "z"))


@pytest.fixture
def frame3():
    return XYZ


@pytest.fixture
def running_mass():
    """m = {x: 0.2, y: 0.3, xz: 0.5}, the running ternary instance."""
    return MassFunction.from_dict(XYZ, {"x": 0.2, "y": 0.3, "x z": 0.5})


@st.composite
def mass_and_event(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    frame = Frame.of_size(n)
    k = draw(st.integers(1, min(frame.size - 1, 8)))
    seed = draw(st.integers(0, 2**32 - 1))
    event = draw(st.integers(1, frame.full))
    return random_mass(frame, k, seed), event


def sweep(count, seed=0, max_n=6, min_n=2, max_focal=10):
    """Deterministic (m, A) instances with mixed frame sizes and sparsity."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        frame = Frame.of_size(n)
        k = int(rng.integers(1, min(frame.size - 1, max_focal) + 1))
        m = random_mass(frame, k, int(rng.integers(2**32)))
        A = int(rng.integers(1, frame.size))
        out.append((m, A))
    return out


def case2_instance(rng, n=None):
    """An (m, A) with max_{C not in A} m(C) < pl(A^c) / (2^|A| - 1).

    Spreads the outside mass thinly over many subsets not contained in A.
    """
    while True:
        n = n or int(rng.integers(3, 6))
        frame = Frame.of_size(n)
        A = int(rng.integers(1, frame.size))
        outside = [c for c in range(1, frame.size) if c | A != A]
        inside = [b for b in range(1, frame.size) if b | A == A]
        k = len(inside)
        if len(outside) <= k:
            n = None
            continue
        vals = np.zeros(frame.size)
        S = rng.uniform(0.2, 0.9)
        vals[outside] = rng.dirichlet(np.full(len(outside), 50.0)) * S
        vals[inside] = rng.dirichlet(np.ones(k)) * (1 - S)
        m = MassFunction(frame, vals / vals.sum())
        Mx = vals[outside].max()
        if Mx < S / k - 1e-9:
            return m, A
        n = None
