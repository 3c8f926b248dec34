"""Zero-dimensional schemes whose lengths give delta-constant multiplicities.

Two constructions live here.

* The torus-knot system for ``x^q = y^p``: deform the parametrisation to
  ``f = t^p + sum x_i t^i``, ``g = t^q + sum y_i t^i`` and ask for
  ``f^q = g^p``, equivalently for the ``t``-coefficients of
  ``q f' g - p g' f`` to vanish.  Its length is compared with the weighted
  Bezout number and with the closed form.
* The stable-map system of a parametrised rational plane curve: perturb
  every coefficient of the parametrisation, fix the gauge by ``z_d = 0`` and
  three point-on-line conditions, and require the implicit equation to
  vanish identically.  Its length at the origin is the curve's multiplicity.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import (
    DEFAULT_LOCAL_CAP,
    DEFAULT_STEP_LIMIT,
    Ideal,
    buchberger,
    local_length_at_origin,
    quotient_dimension,
)
from .polyalg import (
    MonomialOrder,
    Polynomial,
    coefficients_in,
    differentiate,
    substitute,
    weighted_degree,
)
from .singularity import TorusKnotSingularity

log = logging.getLogger(__name__)

PARAM_RING = ("s", "t")
PLANE_RING = ("x", "y", "z")
DEFAULT_SEED = 20240613


# -- torus-knot system -------------------------------------------------------


@dataclass(frozen=True)
class TorusKnotSystem:
    """Equations of the deformation algebra of ``x^q = y^p``.

    ``equations[k]`` is weighted-homogeneous of degree ``equation_degrees[k]``
    for the weights ``wt(x_i) = p - i``, ``wt(y_i) = q - i``.
    """

    p: int
    q: int
    ring: tuple[str, ...]
    weights: tuple[int, ...]
    equations: tuple[Polynomial, ...]
    equation_degrees: tuple[int, ...]

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder.weighted(self.weights)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.equations, self.order)


def build_torus_knot_system(p: int, q: int) -> TorusKnotSystem:
    """Coefficients of ``t^j`` (``j = 0..p+q-3``) in ``q f' g - p g' f``.

    The two top coefficients vanish identically; that is checked, not assumed.
    Equations are listed by increasing weighted degree.
    """
    TorusKnotSingularity(p, q)
    xs = [f"x{i}" for i in range(p - 1)]
    ys = [f"y{i}" for i in range(q - 1)]
    ring = tuple(xs + ys)
    weights = tuple([p - i for i in range(p - 1)] + [q - i for i in range(q - 1)])

    big = ("t",) + ring
    t = Polynomial.variable(big, "t")
    f = t**p
    for i, name in enumerate(xs):
        f = f + Polynomial.variable(big, name) * t**i
    g = t**q
    for i, name in enumerate(ys):
        g = g + Polynomial.variable(big, name) * t**i
    h = q * differentiate(f, "t") * g - p * differentiate(g, "t") * f

    by_power = {e[0]: c for e, c in coefficients_in(h, ["t"])}
    top = p + q - 1
    for j in (top, top - 1):
        if by_power.get(j):
            raise ArithmeticError(f"coefficient of t^{j} does not vanish: {by_power[j]}")

    equations = []
    degrees = []
    for j in range(top - 2, -1, -1):
        eq = by_power.get(j, Polynomial(ring))
        deg = weighted_degree(eq, weights)
        if deg is None or deg != top - j:
            raise ArithmeticError(f"equation for t^{j} is not homogeneous of degree {top - j}")
        equations.append(eq)
        degrees.append(deg)
    return TorusKnotSystem(p, q, ring, weights, tuple(equations), tuple(degrees))


def weighted_bezout_length(equation_degrees: Sequence[int], variable_weights: Sequence[int]) -> int:
    """``prod(equation_degrees) / prod(variable_weights)``, which must be an integer."""
    if len(equation_degrees) != len(variable_weights):
        raise ValueError("need as many equations as variables")
    if any(d < 1 for d in equation_degrees) or any(w < 1 for w in variable_weights):
        raise ValueError("degrees and weights must be positive")
    num = math.prod(equation_degrees)
    den = math.prod(variable_weights)
    length, rem = divmod(num, den)
    if rem:
        raise ValueError(f"{num}/{den} is not an integer: data is not a weighted complete intersection")
    return length


def multiplicity_via_groebner(
    p: int, q: int, step_limit: int = DEFAULT_STEP_LIMIT, modulus: int = 0
) -> int:
    """Length of the torus-knot algebra from a weighted-graded Groebner basis."""
    system = build_torus_knot_system(p, q)
    G = buchberger(system.ideal(), step_limit=step_limit, modulus=modulus)
    dim = quotient_dimension(G)
    if dim == math.inf:
        raise ArithmeticError(f"torus-knot system ({p}, {q}) is not zero-dimensional")
    return dim


# -- stable maps -----------------------------------------------------------------


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _proportional(u, v) -> bool:
    return not any(_cross(u, v))


@dataclass(frozen=True)
class StableMapProblem:
    """A parametrised plane curve with the marked data that fixes the gauge.

    ``parametrization`` holds three binary forms of degree ``degree`` in
    ``(s, t)``; ``implicit`` is the curve equation in ``(x, y, z)``.  A marked
    point is a pair ``(t, s)`` of homogeneous coordinates, so ``(c, 1)`` is
    the affine parameter value ``t = c``.  A marked line ``(a, b, c)`` is the
    linear form ``a*x + b*y + c*z``.
    """

    degree: int
    parametrization: tuple[Polynomial, Polynomial, Polynomial]
    implicit: Polynomial
    marked_points: tuple[tuple[Fraction, Fraction], ...] = ()
    marked_lines: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parametrization", tuple(self.parametrization))
        object.__setattr__(
            self, "marked_points", tuple(tuple(_frac(v) for v in pt) for pt in self.marked_points)
        )
        object.__setattr__(
            self, "marked_lines", tuple(tuple(_frac(v) for v in ln) for ln in self.marked_lines)
        )

    @classmethod
    def create(
        cls,
        degree: int,
        parametrization: Sequence[Polynomial],
        implicit: Polynomial,
        marked_points=None,
        marked_lines=None,
        seed: int = DEFAULT_SEED,
    ) -> StableMapProblem:
        """Build a problem in the normal form the scheme construction expects.

        If ``z`` has no ``s^d`` term the parameter line is reparametrised
        (swap ``s, t``, else ``t -> t + c*s``); given marked points are moved
        along.  Missing marked data is chosen by :func:`choose_marked_data`.
        """
        param = tuple(p.in_ring(PARAM_RING) for p in parametrization)
        implicit = implicit.in_ring(PLANE_RING)
        points = tuple(marked_points) if marked_points else ()
        param, points = _normalize_chart(degree, param, points)
        prob = cls(degree, param, implicit, points, tuple(marked_lines or ()))
        if not marked_points or not marked_lines:
            prob = choose_marked_data(prob, seed=seed, keep_points=bool(marked_points))
        return prob

    def image(self, point) -> tuple[Fraction, Fraction, Fraction]:
        t0, s0 = point
        return tuple(c.evaluate({"s": s0, "t": t0}) for c in self.parametrization)

    def with_marked_data(self, points, lines) -> StableMapProblem:
        return StableMapProblem(self.degree, self.parametrization, self.implicit, tuple(points), tuple(lines))


def _normalize_chart(d, param, points):
    z = param[2]
    if z.coefficient((d, 0)):
        return param, points
    s = Polynomial.variable(PARAM_RING, "s")
    t = Polynomial.variable(PARAM_RING, "t")
    if z.coefficient((0, d)):
        new = tuple(substitute(c, {"s": t, "t": s}) for c in param)
        moved = tuple((s0, t0) for t0, s0 in points)
        log.info("reparametrised s <-> t so that z contains s^%d", d)
        return new, moved
    for c in range(1, d + 2):
        new = tuple(substitute(comp, {"t": t + c * s}) for comp in param)
        if new[2].coefficient((d, 0)):
            # new(s, t) = old(s, t + c s): old point (t0, s0) is new (t0 - c s0, s0)
            moved = tuple((t0 - c * s0, s0) for t0, s0 in points)
            log.info("reparametrised t -> t + %d*s so that z contains s^%d", c, d)
            return new, moved
    raise ValueError("z component is identically zero")


def _gradient_at(F: Polynomial, point) -> tuple[Fraction, Fraction, Fraction]:
    values = dict(zip(PLANE_RING, point))
    return tuple(differentiate(F, v).evaluate(values) for v in PLANE_RING)


def _dehomogenize(form: Polynomial, d: int) -> list[Fraction]:
    """Coefficients in ``t`` of ``form(1, t)``, lowest first."""
    return [form.coefficient((d - k, k)) for k in range(d + 1)]


def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _poly_mod(a, b):
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _trim(a)
    return a


def _univariate_gcd(polys):
    g = []
    for p in polys:
        p = _trim(p)
        while p:
            g, p = p, _poly_mod(g, p)
    return g


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, witness=""):
        self.checks.append(Check(name, bool(passed), "" if passed else witness))

    def __str__(self):
        lines = []
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}" + (f": {c.witness}" if c.witness else ""))
        return "\n".join(lines)


def validate_stable_map_input(prob: StableMapProblem) -> ValidationReport:
    """Check every requirement on a stable-map problem; never raises."""
    report = ValidationReport()
    d = prob.degree
    param = prob.parametrization
    F = prob.implicit

    report.add("degree is positive", isinstance(d, int) and d >= 1, f"degree = {d!r}")
    if not report.ok:
        return report
    rings_ok = all(c.ring == PARAM_RING for c in param) and F.ring == PLANE_RING
    report.add("rings are (s, t) and (x, y, z)", rings_ok, "parametrization must use s, t and the equation x, y, z")
    if not rings_ok:
        return report

    bad = [str(c) for c in param if c and weighted_degree(c, (1, 1)) != d]
    report.add(
        "parametrization is by binary forms of degree d",
        not bad and any(param),
        f"not homogeneous of degree {d}: {bad}" if bad else "all components are zero",
    )
    report.add(
        "implicit equation is homogeneous of degree d",
        F and weighted_degree(F, (1, 1, 1)) == d,
        f"{F} is not homogeneous of degree {d}",
    )

    g = _univariate_gcd([_dehomogenize(c, d) for c in param])
    common_at_s0 = all(not c.coefficient((0, d)) for c in param)
    report.add(
        "parametrization components are coprime",
        len(g) <= 1 and not common_at_s0,
        "common factor " + ("s" if common_at_s0 else f"with t-coefficients {[str(v) for v in g]}"),
    )

    composite = substitute(F, dict(zip(PLANE_RING, param)))
    report.add(
        "F vanishes on parametrization",
        not composite,
        f"F does not vanish on parametrization: F(x(s,t), y(s,t), z(s,t)) = {composite}",
    )
    report.add(
        "z contains s^d",
        bool(param[2].coefficient((d, 0))),
        f"coefficient of s^{d} in z is zero",
    )

    points = prob.marked_points
    lines = prob.marked_lines
    report.add("three marked points", len(points) == 3, f"got {len(points)}")
    report.add("three marked lines", len(lines) == 3, f"got {len(lines)}")
    for i, pt in enumerate(points):
        for j in range(i):
            other = points[j]
            if pt[0] * other[1] == pt[1] * other[0]:
                report.add(f"marked points {j + 1} and {i + 1} are distinct", False,
                           f"marked points coincide in P^1: {_fmt(pt)} ~ {_fmt(other)}")
    for i, pt in enumerate(points):
        if not any(pt):
            report.add(f"marked point {i + 1} is a point of P^1", False, "(0, 0) is not a point")
            continue
        img = prob.image(pt)
        grad = _gradient_at(F, img)
        report.add(
            f"marked point {i + 1} maps to a smooth point",
            any(grad),
            f"marked point maps to singular point: {_fmt(pt)} -> {_fmt(img)}",
        )
        if i < len(lines):
            ln = lines[i]
            through = sum(a * b for a, b in zip(ln, img)) == 0
            report.add(
                f"marked line {i + 1} passes through the image point",
                any(ln) and through,
                f"line {_fmt(ln)} misses {_fmt(img)}",
            )
            if any(grad):
                report.add(
                    f"marked line {i + 1} is transversal",
                    not _proportional(ln, grad),
                    f"line {_fmt(ln)} is the tangent line at {_fmt(img)}",
                )
    return report


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _candidate_points():
    vals = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3), Fraction(-3),
            Fraction(1, 2), Fraction(-1, 2), Fraction(4), Fraction(-4), Fraction(5), Fraction(-5)]
    return [(v, Fraction(1)) for v in vals]


def choose_marked_data(prob: StableMapProblem, seed: int = DEFAULT_SEED, keep_points: bool = False) -> StableMapProblem:
    """Pick marked points and transversal lines with small integer data.

    Deterministic for a given ``seed``.  Points are tried from a fixed list of
    small parameter values in seeded order; each line joins the image point
    to a random small integer point and is kept if it is not the tangent.
    """
    rng = random.Random(seed)
    F = prob.implicit
    if keep_points:
        points = list(prob.marked_points)
    else:
        cands = _candidate_points()
        rng.shuffle(cands)
        points = []
        for pt in cands:
            if any(_gradient_at(F, prob.image(pt))):
                points.append(pt)
            if len(points) == 3:
                break
        if len(points) < 3:
            raise ValueError("could not find three marked points on the smooth locus")

    lines = []
    for pt in points:
        img = prob.image(pt)
        grad = _gradient_at(F, img)
        for _ in range(1000):
            v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
            ln = _cross(img, v)
            # at a singular image any line will do; validation reports the point
            if any(ln) and (not any(grad) or not _proportional(ln, grad)):
                g = math.gcd(*(int(c * _lcm_den(ln)) for c in ln))
                ln = tuple(c * _lcm_den(ln) / g for c in ln)
                lines.append(ln)
                break
        else:
            raise ValueError(f"could not find a transversal line at {_fmt(img)}")
    return prob.with_marked_data(points, lines)


def _lcm_den(vals) -> int:
    out = 1
    for v in vals:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out


@dataclass(frozen=True)
class StableMapSystem:
    """Equations cutting out the stable-map scheme near the normalisation map.

    ``ring`` is ``x0..xd, y0..yd, z0..zd``; variable ``x_i`` multiplies
    ``s^i t^(d-i)`` in the perturbation of ``x``.  The origin is the
    unperturbed parametrisation.
    """

    degree: int
    ring: tuple[str, ...]
    gauge: Polynomial
    point_conditions: tuple[Polynomial, ...]
    image_equations: tuple[Polynomial, ...]

    @property
    def equations(self) -> tuple[Polynomial, ...]:
        return (self.gauge,) + self.point_conditions + self.image_equations

    def ideal(self) -> Ideal:
        return Ideal.of(self.equations)


def build_stable_map_system(prob: StableMapProblem) -> StableMapSystem:
    """Gauge ``z_d = 0``, the three point-on-line conditions and all ``d^2 + 1``
    coefficients of ``F(x, y, z)`` as a binary form in ``(s, t)``.
    """
    report = validate_stable_map_input(prob)
    if not report.ok:
        raise ValueError("invalid stable-map problem:\n" + str(report))
    d = prob.degree
    names = [f"{c}{i}" for c in "xyz" for i in range(d + 1)]
    ring = tuple(names)
    big = PARAM_RING + ring
    s = Polynomial.variable(big, "s")
    t = Polynomial.variable(big, "t")
    basis = [s**i * t ** (d - i) for i in range(d + 1)]

    perturbed = []
    for comp, c in zip(prob.parametrization, "xyz"):
        total = comp.in_ring(big)
        for i in range(d + 1):
            total = total + Polynomial.variable(big, f"{c}{i}") * basis[i]
        perturbed.append(total)

    composite = substitute(prob.implicit, dict(zip(PLANE_RING, perturbed)))
    coeffs = {e: c for e, c in coefficients_in(composite, PARAM_RING)}
    image_eqs = []
    for a in range(d * d, -1, -1):
        image_eqs.append(coeffs.get((a, d * d - a), Polynomial(ring)))

    gauge = Polynomial.variable(ring, f"z{d}")
    conditions = []
    for (t0, s0), line in zip(prob.marked_points, prob.marked_lines):
        cond = Polynomial(ring)
        for comp, c, a in zip(prob.parametrization, "xyz", line):
            if not a:
                continue
            value = Polynomial.constant(ring, comp.evaluate({"s": s0, "t": t0}))
            for i in range(d + 1):
                value = value + Polynomial.variable(ring, f"{c}{i}") * (s0**i * t0 ** (d - i))
            cond = cond + value * a
        conditions.append(cond)
    return StableMapSystem(d, ring, gauge, tuple(conditions), tuple(image_eqs))


def stable_map_local_length(
    prob: StableMapProblem,
    cap: int = DEFAULT_LOCAL_CAP,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> int:
    """Length at the origin of the stable-map scheme of ``prob``."""
    system = build_stable_map_system(prob)
    return local_length_at_origin(system.ideal(), cap=cap, step_limit=step_limit)
