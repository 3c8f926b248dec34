"""Buchberger's algorithm, normal forms and lengths of zero-dimensional quotients.

Internally a polynomial is a list of ``(key, exps, coeff)`` triples sorted
by decreasing ``key``.  Both ``key`` and ``exps`` pack one field per
row of the order matrix (resp. per variable) into a single Python integer,
``FIELD_BITS`` bits per field:

* the order key is linear in the exponents, so comparing packed keys
  compares monomials and multiplying monomials adds keys;
* the top bit of every exponent field is a guard bit, so ``a | b`` holds
  exactly when ``((b | guard) - a) & guard == guard``.

Over the rationals the engine is fraction-free (primitive integer
polynomials).  Modulo a prime every basis element is kept monic.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

from . import kernel
from .polyalg import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingMismatchError,
    substitute,
)

log = logging.getLogger(__name__)

FIELD_BITS = 32
DEFAULT_STEP_LIMIT = 10**7
DEFAULT_PRIME = 32003
DEFAULT_LOCAL_CAP = 50
DEFAULT_DIM_BOUND = 10**6


class GroebnerError(Exception):
    """Base class for failures of the Groebner machinery."""


class StepLimitExceeded(GroebnerError):
    """Buchberger ran past its reduction-step budget."""


class NotIsolatedError(GroebnerError):
    """The origin is not an isolated point of the ideal's zero set."""


class UnluckyPrimeError(GroebnerError):
    """A coefficient denominator vanishes modulo the chosen prime."""


@dataclass(frozen=True)
class Ideal:
    """Generators in a fixed ring, together with the order used to reduce them."""

    ring: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "ring", tuple(self.ring))
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError(f"generator {g} is not in ring {self.ring}")
            if not g:
                raise ValueError("ideal generators must be nonzero")
        self.order.check(len(self.ring))

    @classmethod
    def of(cls, generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Ideal:
        """Build from polynomials, dropping zeros; the ring is taken from the first."""
        generators = list(generators)
        if not generators:
            raise ValueError("an ideal needs at least one generator")
        ring = generators[0].ring
        nonzero = [g for g in generators if g]
        if not nonzero:
            raise ValueError("all generators are zero")
        return cls(ring, tuple(nonzero), order)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, sorted by increasing lead monomial.

    ``modulus`` is 0 for a basis over the rationals, otherwise the prime
    the coefficients live modulo (stored as integers in ``[0, modulus)``).
    """

    ring: tuple[str, ...]
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    modulus: int = 0
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @cached_property
    def lead_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.leading_term(self.order)[0] for g in self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


class _Packer:
    """Converts between exponent tuples and packed key/exponent integers."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.rows = order.key_rows(nvars)
        self.mask = (1 << FIELD_BITS) - 1
        self.limit = 1 << (FIELD_BITS - 1)
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(nvars))
        self.unit_keys = tuple(
            self.key(tuple(int(i == j) for j in range(nvars))) for i in range(nvars)
        )

    def key(self, exps: Monomial) -> int:
        K = 0
        for row in self.rows:
            v = 0
            for a, e in zip(row, exps):
                v += a * e
            if v > self.mask:
                raise OverflowError("monomial order key exceeds packing width")
            K = (K << FIELD_BITS) | v
        return K

    def exps(self, exps: Monomial) -> int:
        E = 0
        for e in exps:
            if e >= self.limit:
                raise OverflowError("exponent exceeds packing width")
            E = (E << FIELD_BITS) | e
        return E

    def unpack(self, E: int) -> Monomial:
        out = []
        for _ in range(self.nvars):
            out.append(E & self.mask)
            E >>= FIELD_BITS
        return tuple(reversed(out))

    def divides(self, Ea: int, Eb: int) -> bool:
        return ((Eb | self.guard) - Ea) & self.guard == self.guard


def _modinv(a: int, p: int) -> int:
    return pow(a, -1, p)


class _Engine:
    """Conversion and normalisation for one (ring, order, modulus) triple."""

    def __init__(self, ring: tuple[str, ...], order: MonomialOrder, modulus: int = 0):
        self.ring = ring
        self.order = order
        self.modulus = modulus
        self.packer = _Packer(len(ring), order)

    def to_terms(self, poly: Polynomial) -> list:
        pk = self.packer
        items = poly.as_dict().items()
        if self.modulus:
            p = self.modulus
            terms = []
            for e, c in items:
                if c.denominator % p == 0:
                    raise UnluckyPrimeError(f"denominator of {c} vanishes modulo {p}")
                v = c.numerator * _modinv(c.denominator % p, p) % p
                if v:
                    terms.append((pk.key(e), pk.exps(e), v))
        else:
            den = 1
            for _, c in items:
                den = den * c.denominator // math.gcd(den, c.denominator)
            terms = [(pk.key(e), pk.exps(e), int(c * den)) for e, c in items]
        terms.sort(key=lambda t: t[0], reverse=True)
        return self.normalize(terms) if terms else terms

    def normalize(self, terms: list) -> list:
        return kernel.normalize(terms, self.modulus)

    def to_poly(self, terms: list, monic: bool = True) -> Polynomial:
        unpack = self.packer.unpack
        if not terms:
            return Polynomial(self.ring)
        if self.modulus:
            return Polynomial(self.ring, {unpack(E): c for _, E, c in terms})
        lc = terms[0][2] if monic else 1
        return Polynomial(self.ring, {unpack(E): Fraction(c, lc) for _, E, c in terms})

    def reduce(self, terms: list, basis: list, budget: int, full: bool = True):
        out, steps, mult = kernel.reduce(
            terms, basis, self.packer.guard, self.modulus, full, budget
        )
        if out is None:
            raise StepLimitExceeded(f"reduction step limit {budget} exceeded")
        return out, steps, mult


def _buchberger_terms(engine: _Engine, inputs: list, step_limit: int) -> tuple[list, dict]:
    """Run Buchberger on packed polynomials; returns the reduced basis and stats."""
    packer = engine.packer
    G, stats = kernel.groebner_loop(
        inputs, packer.guard, packer.unit_keys, FIELD_BITS, engine.modulus, step_limit
    )
    if G is None:
        raise StepLimitExceeded(f"reduction step limit {step_limit} exceeded")
    steps = stats["steps"]

    # minimal basis, then interreduce
    G.sort(key=lambda t: t[0][0])
    minimal: list = []
    for g in G:
        if not any(packer.divides(m[0][1], g[0][1]) for m in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r, n, _ = engine.reduce(g, others, step_limit - steps)
        steps += n
        reduced.append(engine.normalize(r))
    stats["steps"] = steps
    stats["backend"] = kernel.BACKEND
    return reduced, stats


def buchberger(
    ideal: Ideal, step_limit: int = DEFAULT_STEP_LIMIT, modulus: int = 0
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``ideal.order``.

    Pairs are taken in order of increasing lcm (normal strategy) and pruned
    by the coprime-lead-term and chain criteria.  ``modulus`` switches to
    arithmetic modulo that prime (it must be below 2**31).

    Raises
    ------
    StepLimitExceeded
        If more than ``step_limit`` reduction steps are needed.
    """
    if modulus and not 2 <= modulus < 2**31:
        raise ValueError("modulus must be a prime below 2**31")
    engine = _Engine(ideal.ring, ideal.order, modulus)
    inputs = [engine.to_terms(g) for g in ideal.generators]
    inputs.sort(key=lambda t: t[0][0] if t else -1)
    reduced, stats = _buchberger_terms(engine, inputs, step_limit)
    basis = tuple(engine.to_poly(g) for g in reduced)
    log.debug("buchberger: %d generators -> %d basis elements, %s", len(inputs), len(basis), stats)
    return GroebnerBasis(ideal.ring, basis, ideal.order, modulus, stats)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """``(L/lt f) f - (L/lt g) g`` with ``L`` the lcm of the lead monomials (monic leads)."""
    if f.ring != g.ring:
        raise RingMismatchError("s_polynomial of polynomials in different rings")
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    L = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = Polynomial.monomial(f.ring, tuple(a - b for a, b in zip(L, ef)), 1 / cf)
    mg = Polynomial.monomial(g.ring, tuple(a - b for a, b in zip(L, eg)), 1 / cg)
    return mf * f - mg * g


def normal_form(p: Polynomial, G: GroebnerBasis, step_limit: int = DEFAULT_STEP_LIMIT) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``G``.

    For a modular basis the coefficients of ``p`` are mapped to the prime
    field first and the remainder is returned with residues in ``[0, p)``.
    """
    if p.ring != G.ring:
        raise RingMismatchError(f"ring mismatch: {p.ring} vs {G.ring}")
    if not p:
        return p
    engine = _Engine(G.ring, G.order, G.modulus)
    basis = [engine.to_terms(g) for g in G.basis]
    if G.modulus:
        pk = engine.packer
        terms = []
        for e, c in p.as_dict().items():
            if c.denominator % G.modulus == 0:
                raise UnluckyPrimeError(f"denominator of {c} vanishes modulo {G.modulus}")
            v = c.numerator * _modinv(c.denominator % G.modulus, G.modulus) % G.modulus
            if v:
                terms.append((pk.key(e), pk.exps(e), v))
        terms.sort(key=lambda t: t[0], reverse=True)
        r, _, _ = engine.reduce(terms, basis, step_limit)
        return engine.to_poly(r, monic=False)
    den = 1
    for _, c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    pk = engine.packer
    terms = sorted(
        ((pk.key(e), pk.exps(e), int(c * den)) for e, c in p),
        key=lambda t: t[0],
        reverse=True,
    )
    r, _, mult = engine.reduce(terms, basis, step_limit)
    scale = Fraction(1, den * mult)
    return Polynomial(G.ring, {pk.unpack(E): c * scale for _, E, c in r})


def _pure_power_bounds(G: GroebnerBasis) -> list[int | None]:
    n = len(G.ring)
    bounds: list[int | None] = [None] * n
    for e in G.lead_monomials:
        support = [i for i, k in enumerate(e) if k]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    return bounds


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the lead monomials.

    The unit ideal counts as zero-dimensional (its quotient is zero).
    """
    if any(not any(e) for e in G.lead_monomials):
        return True
    return all(b is not None for b in _pure_power_bounds(G))


def standard_monomials(G: GroebnerBasis, limit: int = DEFAULT_DIM_BOUND) -> list[Monomial] | None:
    """Monomials outside the lead-term ideal, or ``None`` if there are infinitely many.

    Raises ``GroebnerError`` if more than ``limit`` would be listed.
    """
    leads = G.lead_monomials
    if any(not any(e) for e in leads):
        return []
    if not is_zero_dimensional(G):
        return None
    bounds = _pure_power_bounds(G)
    n = len(G.ring)
    out: list[Monomial] = []

    # a lead can divide a candidate only while it fits under the fixed prefix;
    # ``alive`` carries those leads down the recursion
    last = {m: max((i for i, a in enumerate(m) if a), default=-1) for m in leads}

    def walk(prefix: list, i: int, alive: list):
        if i == n:
            out.append(tuple(prefix))
            if len(out) > limit:
                raise GroebnerError(f"more than {limit} standard monomials")
            return
        for k in range(bounds[i]):
            fits = [m for m in alive if m[i] <= k]
            if any(last[m] <= i for m in fits):
                break
            walk(prefix + [k], i + 1, fits)

    walk([], 0, list(leads))
    return out


def quotient_dimension(G: GroebnerBasis, limit: int = DEFAULT_DIM_BOUND) -> int | float:
    """Vector-space dimension of ``ring / <G>``; ``math.inf`` if not zero-dimensional."""
    mons = standard_monomials(G, limit)
    if mons is None:
        return math.inf
    return len(mons)


# -- local length at the origin ---------------------------------------------


def _linear_pivot(f: Polynomial) -> tuple[int, Fraction] | None:
    """A variable occurring in ``f`` only as a linear term ``c*v`` with ``c`` constant."""
    n = f.nvars
    best = None
    for i in range(n):
        coeff = None
        clean = True
        for e, c in f:
            if e[i] == 0:
                continue
            if e[i] == 1 and sum(e) == 1:
                coeff = c
            else:
                clean = False
                break
        if clean and coeff is not None:
            # prefer the variable listed last; it keeps earlier names stable
            best = (i, coeff)
    return best


def eliminate_linear_variables(
    generators: Sequence[Polynomial],
) -> tuple[tuple[str, ...], list[Polynomial], dict[str, Polynomial]]:
    """Remove variables solved for by generators of the form ``c*v + h(other vars)``.

    Substituting ``v = -h/c`` everywhere is an isomorphism of quotient rings,
    so lengths are unchanged.  Returns the reduced ring, the transformed
    generators and the substitutions performed (in the original ring's names).
    """
    gens = [g for g in generators if g]
    ring = gens[0].ring if gens else ()
    solved: dict[str, Polynomial] = {}
    while True:
        choice = None
        for idx, f in enumerate(gens):
            piv = _linear_pivot(f)
            if piv is None:
                continue
            rank = (f.total_degree(), len(f))
            if choice is None or rank < choice[0]:
                choice = (rank, idx, piv)
        if choice is None:
            return ring, gens, solved
        _, idx, (i, c) = choice
        f = gens[idx]
        name = ring[i]
        new_ring = ring[:i] + ring[i + 1 :]
        v = Polynomial.variable(ring, name)
        expr = ((f - v * c).scale(-1 / c)).in_ring(new_ring)
        solved[name] = expr
        rest = []
        for k, g in enumerate(gens):
            if k == idx:
                continue
            h = substitute(g, {name: expr})
            if h:
                rest.append(h)
        gens = rest
        ring = new_ring
        if not ring:
            return ring, gens, solved


def _truncate(p: Polynomial, k: int) -> Polynomial:
    return Polynomial(p.ring, {e: c for e, c in p if sum(e) < k})


def _monomials_of_degree(n: int, k: int):
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def local_length_at_origin(
    ideal: Ideal,
    cap: int = DEFAULT_LOCAL_CAP,
    dim_bound: int = DEFAULT_DIM_BOUND,
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> int:
    """Length of the localisation of ``ring / ideal`` at the origin.

    Computes ``dim ring / (I + m^k)`` for ``k = 1, 2, ...`` and returns the
    first value that repeats, ``m`` being the maximal ideal of the origin.
    A repeat forces ``m^k`` into the local ideal (Nakayama), so the value is
    exact.  Variables that some generator determines linearly are
    eliminated first.

    Raises
    ------
    NotIsolatedError
        If no repeat occurs for ``k <= cap`` or a dimension exceeds ``dim_bound``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if any(g.constant_term() for g in ideal.generators):
        return 0
    ring, gens, _ = eliminate_linear_variables(ideal.generators)
    if not ring:
        return 1
    n = len(ring)
    prev = None
    history = []
    for k in range(1, cap + 1):
        if math.comb(n + k - 1, k) > dim_bound:
            raise NotIsolatedError(
                f"not isolated at origin: m^{k} needs more than {dim_bound} generators"
            )
        trunc = [t for t in (_truncate(g, k) for g in gens) if t]
        power = [Polynomial.monomial(ring, e) for e in _monomials_of_degree(n, k)]
        G = buchberger(Ideal(ring, tuple(trunc + power), GREVLEX), step_limit=step_limit)
        try:
            dim = quotient_dimension(G, limit=dim_bound)
        except GroebnerError:
            raise NotIsolatedError(
                f"not isolated at origin: dim ring/(I + m^{k}) exceeds {dim_bound}"
            ) from None
        history.append(dim)
        if dim == prev:
            log.debug("local length stabilised at k=%d: %s", k, history)
            return dim
        prev = dim
    raise NotIsolatedError(
        f"not isolated at origin: no stabilisation for k <= {cap} (dims {history[-5:]})"
    )
