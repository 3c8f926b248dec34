from fractions import Fraction

import pytest
from hypothesis import given

from artifact.modspace import build_torus_knot_system
from artifact.parsing import (
    PolySyntaxError,
    format_poly_source,
    parse_poly_source,
    parse_polynomial,
    parse_stable_map_document,
)
from artifact.polyalg import MonomialOrder, polynomial_ring
from test_polyalg import RING, polys


def test_simple_source():
    ring, order, ps = parse_poly_source("vars: x y\norder: grevlex\nx^2 - y\ny^2")
    x, y = polynomial_ring("x y")
    assert ring == ("x", "y")
    assert order == MonomialOrder.grevlex()
    assert ps == [x**2 - y, y**2]


def test_torus_source_matches_builder():
    ring, order, ps = parse_poly_source("vars: x0 y0 y1\norder: weighted 2 3 2\n4*y1 - 6*x0\n6*y0\n-2*x0*y1")
    sysm = build_torus_knot_system(2, 3)
    assert ring == sysm.ring
    assert order == sysm.order
    assert tuple(ps) == sysm.equations


@pytest.mark.parametrize(
    "doc,line,column",
    [
        ("vars: x\norder: grevlex\nx^", 3, 3),
        ("vars: x\norder: grevlex\nx + q", 3, 5),
        ("vars: x\norder: grevlex\n2x", 3, 2),
        ("vars: x\norder: grevlex\n(x + 1", 3, 7),
        ("vars: x\norder: grevlex\nx^1/2", 3, 3),
        ("vars: x\norder: grevlex\n1/0", 3, 1),
        ("vars: x y\norder: weighted 1\nx", 2, 7),
        ("vars: x y\norder: weighted 1 0\nx", 2, 7),
        ("vars: x y\norder: weighted a b\nx", 2, 7),
        ("vars: x\norder: revlex\nx", 2, 7),
        ("order: grevlex\nx", 1, 1),
        ("vars: x\n\n# comment only\n", 4, 1),
    ],
)
def test_syntax_errors_carry_positions(doc, line, column):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly_source(doc)
    assert (info.value.line, info.value.column) == (line, column)


def test_comments_and_blank_lines():
    doc = "# header\nvars: a b  # two\n\norder: lex\na*b + 1/2  # tail\n\n"
    ring, order, ps = parse_poly_source(doc)
    a, b = polynomial_ring("a b")
    assert ps == [a * b + Fraction(1, 2)]
    assert order == MonomialOrder.lex()


def test_grammar_details():
    x, y, z = polynomial_ring(RING)
    assert parse_polynomial("-(x - y)^2*3", RING) == -3 * (x - y) ** 2
    assert parse_polynomial("--x", RING) == x
    assert parse_polynomial("x^0", RING) == 1
    assert parse_polynomial("2/4*x*y*z", RING) == Fraction(1, 2) * x * y * z


@given(polys())
def test_round_trip(p):
    assert parse_polynomial(p.to_string(), RING) == p
    assert parse_polynomial(str(p), RING) == p


def test_source_round_trip():
    src = "vars: x0 y0 y1\norder: weighted 2 3 2\n4*y1 - 6*x0\n6*y0\n-2*x0*y1"
    parsed = parse_poly_source(src)
    assert parse_poly_source(format_poly_source(*parsed)) == parsed


def test_stable_map_document():
    doc = """
    # cuspidal cubic
    degree: 3
    param_x: t^2*s
    param_y: t^3
    param_z: s^3
    implicit: z*y^2 - x^3
    marked_points: 1 1; -1 1; 2 1
    marked_lines: x - y; x + y; 8*x - 4*y
    """
    fields = parse_stable_map_document(doc)
    s, t = polynomial_ring("s t")
    assert fields["degree"] == 3
    assert fields["parametrization"] == (t**2 * s, t**3, s**3)
    assert fields["marked_points"] == [(1, 1), (-1, 1), (2, 1)]
    assert fields["marked_lines"][2] == (8, -4, 0)


@pytest.mark.parametrize(
    "doc",
    [
        "degree: 3\nparam_x: t\nparam_y: t\nparam_z: s",
        "degree: three\nparam_x: t\nparam_y: t\nparam_z: s\nimplicit: x",
        "degree: 1\nparam_x: t\nparam_y: u\nparam_z: s\nimplicit: x",
        "degree: 1\ncolour: red",
        "degree: 1\nparam_x: t\nparam_y: s\nparam_z: s\nimplicit: x\nmarked_lines: x^2",
        "degree: 1\nparam_x: t\nparam_y: s\nparam_z: s\nimplicit: x\nmarked_points: 1",
    ],
)
def test_bad_stable_map_documents(doc):
    with pytest.raises(PolySyntaxError):
        parse_stable_map_document(doc)
