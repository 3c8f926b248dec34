from fractions import Fraction

import pytest

from artifact.groebner import buchberger, local_length_at_origin, quotient_dimension
from artifact.modspace import (
    PARAM_RING,
    PLANE_RING,
    StableMapProblem,
    build_stable_map_system,
    build_torus_knot_system,
    multiplicity_via_groebner,
    stable_map_local_length,
    validate_stable_map_input,
    weighted_bezout_length,
)
from artifact.polyalg import polynomial_ring, substitute, weighted_degree

s, t = polynomial_ring(PARAM_RING)
x, y, z = polynomial_ring(PLANE_RING)

CUSP = (3, (t**2 * s, t**3, s**3), z * y**2 - x**3)
NODE = (3, ((t**2 - s**2) * s, t * (t**2 - s**2), s**3), y**2 * z - x**3 - x**2 * z)
CONIC = (2, (s**2, s * t, t**2), x * z - y**2)

TORUS = [(2, 3, 2), (2, 5, 3), (3, 4, 5), (2, 7, 4), (3, 5, 7), (4, 5, 14)]


def test_torus_2_3_equations():
    sysm = build_torus_knot_system(2, 3)
    x0, y0, y1 = polynomial_ring(sysm.ring)
    assert sysm.ring == ("x0", "y0", "y1")
    assert sysm.weights == (2, 3, 2)
    assert sysm.equations == (4 * y1 - 6 * x0, 6 * y0, -2 * x0 * y1)
    assert sysm.equation_degrees == (2, 3, 4)


@pytest.mark.parametrize("p,q,expected", TORUS)
def test_torus_systems_are_weighted_homogeneous(p, q, expected):
    sysm = build_torus_knot_system(p, q)
    assert len(sysm.equations) == len(sysm.ring) == p + q - 2
    assert sysm.equation_degrees == tuple(range(2, p + q))
    for eq, d in zip(sysm.equations, sysm.equation_degrees):
        assert weighted_degree(eq, sysm.weights) == d
    assert weighted_bezout_length(sysm.equation_degrees, sysm.weights) == expected
    assert multiplicity_via_groebner(p, q) == expected
    # supported only at the origin: local and global lengths agree
    assert local_length_at_origin(sysm.ideal()) == quotient_dimension(buchberger(sysm.ideal()))


def test_bezout_examples():
    assert weighted_bezout_length((2, 3, 4), (2, 3, 2)) == 2
    assert weighted_bezout_length((2, 3, 5), (2, 3, 5)) == 1
    assert weighted_bezout_length((2, 3, 4, 5, 6), (2, 3, 2, 3, 4)) == 5
    with pytest.raises(ValueError):
        weighted_bezout_length((2, 3), (2, 2))


@pytest.mark.parametrize("case", [CUSP, NODE, CONIC], ids=["cusp", "node", "conic"])
def test_auto_marked_data_validates(case):
    prob = StableMapProblem.create(*case)
    report = validate_stable_map_input(prob)
    assert report.ok, str(report)
    assert substitute(prob.implicit, dict(zip(PLANE_RING, prob.parametrization))).is_zero()


def test_cusp_marked_at_singular_point_fails():
    d, param, F = CUSP
    prob = StableMapProblem(d, param, F, ((0, 1), (1, 1), (-1, 1)), ((0, 1, 0), (1, -1, 0), (1, 1, 0)))
    report = validate_stable_map_input(prob)
    assert not report.ok
    assert any(c.witness.startswith("marked point maps to singular point") for c in report.failures)


def test_wrong_curve_fails():
    d, param, _ = CUSP
    prob = StableMapProblem.create(d, param, z * y**2 - x**2 * y)
    report = validate_stable_map_input(prob)
    assert any(c.witness.startswith("F does not vanish on parametrization") for c in report.failures)
    with pytest.raises(ValueError):
        build_stable_map_system(prob)


def test_common_factor_fails():
    prob = StableMapProblem(2, (s * t, s**2, s * t + s**2), x - z + y, (), ())
    report = validate_stable_map_input(prob)
    assert not report.ok
    assert "parametrization components are coprime" in {c.name for c in report.failures}


def test_chart_normalisation_moves_points():
    d, param, F = CONIC
    prob = StableMapProblem.create(d, param, F)
    assert prob.parametrization[2].coefficient((2, 0))
    pts = [(Fraction(2), Fraction(1)), (Fraction(-1), Fraction(1)), (Fraction(3), Fraction(2))]
    moved = StableMapProblem.create(d, param, F, marked_points=pts)
    # images of the given points are unchanged by the reparametrisation
    for (t0, s0), new in zip(pts, moved.marked_points):
        old_img = tuple(c.evaluate({"s": s0, "t": t0}) for c in param)
        assert moved.image(new) == old_img


def test_system_shape():
    prob = StableMapProblem.create(*CUSP)
    sysm = build_stable_map_system(prob)
    assert len(sysm.ring) == 12
    assert len(sysm.point_conditions) == 3
    assert len(sysm.image_equations) == 10
    assert len(sysm.equations) == 14
    origin = {v: 0 for v in sysm.ring}
    assert all(eq.evaluate(origin) == 0 for eq in sysm.equations)


@pytest.mark.parametrize("case,expected", [(CUSP, 2), (NODE, 1), (CONIC, 1)], ids=["cusp", "node", "conic"])
def test_stable_map_lengths(case, expected):
    assert stable_map_local_length(StableMapProblem.create(*case)) == expected


@pytest.mark.parametrize("seed", [1, 7, 99])
def test_cusp_gauge_robustness(seed):
    prob = StableMapProblem.create(*CUSP, seed=seed)
    assert validate_stable_map_input(prob).ok
    assert stable_map_local_length(prob) == 2
