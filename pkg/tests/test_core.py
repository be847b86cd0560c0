import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import XYZ, mass_and_event
from geocond import (
    BadCount,
    BeliefVector,
    EmptyEvent,
    Frame,
    InvalidMass,
    MassFunction,
    NotABeliefFunction,
    SignedMassFunction,
    WeightMismatch,
    belief_to_mass,
    categorical,
    convex_combine,
    mass_to_belief,
    moebius,
    plausibility_of,
    random_mass,
    vacuous,
    validate,
    zeta,
)
from oracles import as_sets, bel, mask_of, moebius_brute, pl, powerset


# -- oracle agreement ---------------------------------------------------------------


@given(mass_and_event())
def test_belief_matches_enumeration(case):
    m, _ = case
    d = as_sets(m)
    b = mass_to_belief(m)
    for A in powerset(m.frame.names):
        assert b.values[mask_of(m.frame, A)] == pytest.approx(bel(d, A), abs=1e-12)


@given(mass_and_event())
def test_plausibility_matches_enumeration(case):
    m, _ = case
    d = as_sets(m)
    p = plausibility_of(m)
    for A in powerset(m.frame.names):
        assert p.values[mask_of(m.frame, A)] == pytest.approx(pl(d, A), abs=1e-12)


@given(mass_and_event())
def test_moebius_matches_enumeration(case):
    m, _ = case
    frame = m.frame
    bvals = {A: bel(as_sets(m), A) for A in powerset(frame.names)}
    expect = moebius_brute(bvals)
    got = moebius(zeta(m.values))
    for A, v in expect.items():
        assert got[mask_of(frame, A)] == pytest.approx(v, abs=1e-9)


# -- documented examples ------------------------------------------------------------


def test_belief_of_xy_in_running_example(running_mass):
    assert mass_to_belief(running_mass)["x y"] == pytest.approx(0.5, abs=1e-15)


def test_vacuous_belief_is_zero_below_frame():
    b = mass_to_belief(vacuous(XYZ)).values
    assert b[-1] == 1.0 and np.all(b[:-1] == 0.0)


def test_singleton_categorical_belief():
    b = mass_to_belief(categorical(XYZ, "x")).values
    for a in range(XYZ.size):
        assert b[a] == (1.0 if a & 1 else 0.0)


def test_belief_to_mass_additive_case():
    f = Frame(("x", "y"))
    m = belief_to_mass(BeliefVector(f, [0.0, 0.5, 0.5, 1.0]))
    assert m.as_dict() == {"x": 0.5, "y": 0.5}


def test_belief_to_mass_rejects_non_belief():
    f = Frame(("x", "y"))
    with pytest.raises(NotABeliefFunction, match="-0.2"):
        belief_to_mass(BeliefVector(f, [0.0, 0.6, 0.6, 1.0]))


def test_plausibility_examples(running_mass):
    p = plausibility_of(running_mass)
    assert p["z"] == pytest.approx(0.5)
    assert p["x y"] == pytest.approx(1.0)
    assert p["x y z"] == pytest.approx(1.0)


def test_categorical_examples():
    assert categorical(XYZ, "x y z").as_dict() == {"x y z": 1.0}
    assert categorical(XYZ, "x y").as_dict() == {"x y": 1.0}
    with pytest.raises(EmptyEvent):
        categorical(XYZ, 0)


def test_convex_combine_rebuilds_running_example(running_mass):
    parts = [(0.2, categorical(XYZ, "x")), (0.3, categorical(XYZ, "y")), (0.5, categorical(XYZ, "x z"))]
    out = convex_combine(parts)
    assert np.allclose(out.vector, [0.2, 0.3, 0, 0, 0.5, 0, 0], atol=1e-15)
    assert convex_combine([(1.0, running_mass)]).allclose(running_mass, 0)
    with pytest.raises(WeightMismatch):
        convex_combine([(0.5, running_mass), (0.4, running_mass)])


def test_validate_examples(running_mass):
    d = validate(running_mass)
    assert d.ok and d.core == XYZ.full and len(d.focal) == 3
    short = validate(XYZ, [0.3, 0.3, 0, 0.3, 0, 0, 0])
    assert not short.ok and short.sum_deviation == pytest.approx(-0.1)
    neg = validate(XYZ, [-0.1, 0.6, 0, 0.5, 0, 0, 0])
    assert not neg.ok and neg.negative == (1,)
    assert "negative" in neg.describe(XYZ)


def test_random_mass_examples():
    f3 = Frame.of_size(3)
    a, b = random_mass(f3, 3, 7), random_mass(f3, 3, 7)
    assert np.array_equal(a.values, b.values) and len(a.focal) == 3
    assert validate(a).ok
    with pytest.raises(BadCount):
        random_mass(Frame.of_size(2), 4, 1)


# -- invariants ---------------------------------------------------------------------


@given(mass_and_event())
def test_round_trip(case):
    m, _ = case
    back = belief_to_mass(mass_to_belief(m))
    assert np.max(np.abs(back.values - m.values)) < 1e-9


@given(mass_and_event())
def test_duality(case):
    m, _ = case
    b = mass_to_belief(m).values
    p = plausibility_of(m).values
    full = m.frame.full
    for a in range(m.frame.size):
        assert abs(p[a] - (1 - b[full ^ a])) <= 1e-12


@given(mass_and_event())
def test_monotone(case):
    m, _ = case
    b = mass_to_belief(m).values
    for a in range(m.frame.size):
        for c in range(m.frame.size):
            if a | c == c:
                assert b[a] <= b[c] + 1e-12


@given(mass_and_event(min_n=2), st.data())
def test_superadditive_on_disjoint_pairs(case, data):
    m, _ = case
    b = mass_to_belief(m).values
    a = data.draw(st.integers(0, m.frame.full))
    c = data.draw(st.integers(0, m.frame.full)) & ~a
    assert b[a | c] >= b[a] + b[c] - b[a & c] - 1e-9


@given(mass_and_event())
def test_decomposition_over_categoricals(case):
    m, _ = case
    parts = [(m.values[a], categorical(m.frame, a)) for a in m.focal]
    assert np.max(np.abs(convex_combine(parts).values - m.values)) < 1e-12


# -- representation -----------------------------------------------------------------


def test_mass_rejects_negative_and_bad_sum():
    with pytest.raises(InvalidMass):
        MassFunction(XYZ, [1.1, -0.1, 0, 0, 0, 0, 0])
    with pytest.raises(InvalidMass):
        MassFunction(XYZ, [0.5, 0, 0, 0, 0, 0, 0])


def test_signed_mass_allows_negative():
    s = SignedMassFunction(XYZ, [-0.3, 0.8, 0.5, 0, 0, 0, 0])
    assert not s.is_admissible


def test_values_are_read_only(running_mass):
    with pytest.raises(ValueError):
        running_mass.values[1] = 0.0


def test_frame_cap_and_names():
    with pytest.raises(ValueError):
        Frame(("a", "a"))
    with pytest.raises(ValueError):
        Frame.of_size(13)
    assert Frame.of_size(13, cap=14).n == 13
    assert XYZ.key(XYZ.subset("z x")) == "x z"
