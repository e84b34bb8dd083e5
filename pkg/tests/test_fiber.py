"""Fiber-torus membership, classification, order, and lopsidedness."""

import math
import random

import numpy as np
import pytest

from amoebas import (
    DegenerateFiber,
    InconsistentOrder,
    LaurentPoly,
    classify,
    fiber_solutions,
    is_critical,
    lopsided,
    order,
    parse_poly,
)
from amoebas.fiber import BothGaussComponentsZero

from oracles import brute_member, eval_at_phases

TAU = 2.0 * math.pi


def angdist(a, b):
    d = abs(a - b) % TAU
    return min(d, TAU - d)


# --------------------------------------------------------------------------
# hand-checked fibers
# --------------------------------------------------------------------------

def test_linear_boundary_tangency():
    # 1 + z1 + z2 at the symmetric boundary point e^w1 + e^w2 = 1:
    # single solution at phi = (pi, pi), a double tangency
    f = parse_poly("1 + z1 + z2", 2)
    w = (math.log(0.5), math.log(0.5))
    sols = fiber_solutions(f, w)
    assert len(sols) == 1
    s = sols[0]
    assert angdist(s.phi[0], math.pi) < 1e-7
    assert angdist(s.phi[1], math.pi) < 1e-7
    assert s.multiplicity == 2
    assert s.critical
    assert classify(f, w).tag == "Boundary"


def test_linear_interior_two_transversal_solutions():
    f = parse_poly("1 + z1 + z2", 2)
    w = (math.log(0.8), math.log(0.7))
    sols = fiber_solutions(f, w)
    assert len(sols) == 2
    assert all(not s.critical for s in sols)
    # conjugate pair
    assert angdist(sols[0].phi[0], TAU - sols[1].phi[0]) < 1e-9
    assert angdist(sols[0].phi[1], TAU - sols[1].phi[1]) < 1e-9
    assert classify(f, w).tag == "Interior"


def test_linear_complement_empty_fiber():
    f = parse_poly("1 + z1 + z2", 2)
    assert fiber_solutions(f, (math.log(0.2), math.log(0.3))) == []
    assert classify(f, (math.log(0.2), math.log(0.3))).tag == "Complement"


def test_cubic_special_point_census():
    # z1^3 + z2^3 + z1*z2 + 1 over the origin: nine solutions at angle
    # multiples of pi/3, each a tangential double point, so the origin is
    # an (extended) boundary point; the Gauss directions split, hence the
    # singular-contour caveat
    f = parse_poly("z1^3 + z2^3 + z1*z2 + 1", 2)
    pc = classify(f, (0.0, 0.0))
    assert pc.tag == "Boundary"
    assert pc.caveat is True
    assert len(pc.solutions) == 9
    step = math.pi / 3.0
    expected = {(1, 5), (3, 3), (5, 1), (0, 3), (2, 1), (4, 5), (3, 0), (1, 2), (5, 4)}
    got = set()
    for s in pc.solutions:
        a = round(s.phi[0] / step) % 6
        b = round(s.phi[1] / step) % 6
        assert angdist(s.phi[0], a * step) < 1e-6
        assert angdist(s.phi[1], b * step) < 1e-6
        assert s.multiplicity == 2
        assert s.critical
        got.add((a, b))
    assert got == expected
    # every solution really lies on the variety
    terms = list(f.terms.items())
    for s in pc.solutions:
        assert abs(eval_at_phases(terms, (0.0, 0.0), s.phi)) < 1e-8


def test_cubic_nearby_complement():
    f = parse_poly("z1^3 + z2^3 + 1.3*z1*z2 + 1", 2)
    pc = classify(f, (0.0, 0.0))
    assert pc.tag == "Complement"
    assert pc.solutions == ()


def test_quadnomial_interior_and_complement():
    inside = parse_poly("-2*z1^2 - 2*z1*z2^2 + 1.5i*z1^-1*z2^-1 - 1.2", 2)
    pc = classify(inside, (0.0, 0.0))
    assert pc.tag == "Interior"
    assert any(not s.critical for s in pc.solutions)

    outside = parse_poly("-2*z1^2 - 2*z1*z2^2 + 1.5i*z1^-1*z2^-1 - 4.9", 2)
    pc = classify(outside, (0.0, 0.0))
    assert pc.tag == "Complement"


def test_solutions_sorted_and_in_range():
    f = parse_poly("-2*z1^2 - 2*z1*z2^2 + 1.5i*z1^-1*z2^-1 - 1.2", 2)
    sols = fiber_solutions(f, (0.0, 0.0))
    phis = [s.phi for s in sols]
    assert phis == sorted(phis)
    for p1, p2 in phis:
        assert 0.0 <= p1 < TAU
        assert 0.0 <= p2 < TAU


def test_conjugation_symmetry_for_real_coefficients():
    f = parse_poly("z1^2*z2 + z1*z2^2 - 4*z1*z2 + 1", 2)
    sols = fiber_solutions(f, (1.1, 0.4))
    assert sols
    for s in sols:
        mirror = ((TAU - s.phi[0]) % TAU, (TAU - s.phi[1]) % TAU)
        assert any(
            angdist(t.phi[0], mirror[0]) < 1e-7 and angdist(t.phi[1], mirror[1]) < 1e-7
            for t in sols
        )


# --------------------------------------------------------------------------
# degenerate fibers
# --------------------------------------------------------------------------

def test_degenerate_full_circle_intersection():
    # z1 z2 - 1 vanishes on the whole fiber torus over the anti-diagonal
    f = parse_poly("z1*z2 - 1", 2)
    with pytest.raises(DegenerateFiber):
        fiber_solutions(f, (0.0, 0.0))
    assert classify(f, (0.0, 0.0)).tag == "Degenerate"
    # off the anti-diagonal the fiber is empty
    assert classify(f, (0.5, 0.0)).tag == "Complement"


def test_degenerate_univariate_restriction():
    # z1 - 2 meets the fiber over w1 = log 2 in a full circle of z2 values
    f = parse_poly("z1 - 2", 2)
    with pytest.raises(DegenerateFiber):
        fiber_solutions(f, (math.log(2.0), 0.0))
    assert fiber_solutions(f, (0.0, 0.0)) == []


def test_monomial_rejected():
    with pytest.raises(ValueError):
        fiber_solutions(parse_poly("3*z1*z2^2", 2), (0.0, 0.0))


# --------------------------------------------------------------------------
# criticality
# --------------------------------------------------------------------------

def test_is_critical_real_point_of_cubic():
    f = parse_poly("z1^3 + z2^3 + z1*z2 + 1", 2)
    flag, score = is_critical(f, (1.0, -1.0))
    assert flag
    assert score < 1e-12


def test_is_critical_generic_point_is_not():
    f = parse_poly("1 + z1 + z2", 2)
    # a non-real variety point: z1 = e^{i pi/3} 0.8, z2 = -1 - z1
    z1 = 0.8 * complex(math.cos(1.0), math.sin(1.0))
    z2 = -1.0 - z1
    flag, score = is_critical(f, (z1, z2))
    assert not flag
    assert score > 1e-3


def test_is_critical_warns_when_gauss_undefined():
    # (z1 + z2)^2 has a singular variety point at (1, -1)
    f = parse_poly("z1^2 + 2*z1*z2 + z2^2", 2)
    with pytest.warns(BothGaussComponentsZero):
        flag, score = is_critical(f, (1.0, -1.0))
    assert flag
    assert score == 0.0


# --------------------------------------------------------------------------
# order and lopsidedness
# --------------------------------------------------------------------------

def test_order_picks_dominant_vertex():
    f = parse_poly("1 + z1 + z2", 2)
    assert order(f, (10.0, 0.0)) == (1, 0)
    assert order(f, (0.0, 10.0)) == (0, 1)
    assert order(f, (-10.0, -10.0)) == (0, 0)


def test_order_of_bounded_component():
    f = parse_poly("z1^3 + z2^3 + 1.3*z1*z2 + 1", 2)
    assert order(f, (0.0, 0.0)) == (1, 1)
    q = parse_poly("-2*z1^2 - 2*z1*z2^2 + 1.5i*z1^-1*z2^-1 - 4.9", 2)
    assert order(q, (0.0, 0.0)) == (0, 0)


def test_order_is_deterministic():
    f = parse_poly("z1^3 + z2^3 + 1.3*z1*z2 + 1", 2)
    assert order(f, (0.0, 0.0)) == order(f, (0.0, 0.0))


def test_order_unstable_near_amoeba():
    # on the amoeba itself the winding count depends on the angle draw
    f = parse_poly("1 + z1 + z2", 2)
    w = (math.log(0.5), math.log(0.5))
    try:
        val = order(f, w)
    except InconsistentOrder:
        return
    assert val in ((0, 0), (1, 0), (0, 1))


def test_lopsided_certificate_and_silence():
    f = parse_poly("1 + z1 + z2", 2)
    assert lopsided(f, (10.0, 0.0)) == (1, 0)
    assert lopsided(f, (-10.0, -10.0)) == (0, 0)
    # near the triple point nothing dominates
    assert lopsided(f, (math.log(0.5), math.log(0.5))) is None


def test_lopsided_never_contradicts_membership():
    rng = random.Random(321)
    for _ in range(60):
        terms = {}
        for _ in range(rng.randint(2, 5)):
            a = (rng.randint(-3, 3), rng.randint(-3, 3))
            terms[a] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        f = LaurentPoly(2, terms)
        if len(f.terms) < 2:
            continue
        w = (rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        cert = lopsided(f, w)
        if cert is None:
            continue
        try:
            sols = fiber_solutions(f, w)
        except DegenerateFiber:
            continue
        assert sols == [], (dict(f.terms), w)


# --------------------------------------------------------------------------
# membership against the brute oracle
# --------------------------------------------------------------------------

def test_membership_matches_brute_torus_sweep():
    rng = random.Random(20260815)
    checked = 0
    while checked < 60:
        terms = {}
        for _ in range(rng.randint(3, 6)):
            a = (rng.randint(-4, 4), rng.randint(-4, 4))
            terms[a] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        f = LaurentPoly(2, terms)
        if len(f.terms) < 3:
            continue
        w = (rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        try:
            sols = fiber_solutions(f, w)
        except DegenerateFiber:
            continue
        assert (len(sols) > 0) == brute_member(list(f.terms.items()), w), (
            dict(f.terms),
            w,
        )
        checked += 1


def test_reported_solutions_really_vanish():
    rng = random.Random(77)
    for _ in range(25):
        terms = {}
        for _ in range(rng.randint(3, 5)):
            a = (rng.randint(-2, 3), rng.randint(-2, 3))
            terms[a] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        f = LaurentPoly(2, terms)
        if len(f.terms) < 3:
            continue
        w = (rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
        try:
            sols = fiber_solutions(f, w)
        except DegenerateFiber:
            continue
        items = list(f.terms.items())
        for s in sols:
            assert abs(eval_at_phases(items, w, s.phi)) < 1e-6
