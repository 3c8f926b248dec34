"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` lives in a *ring*, an ordered tuple of variable names,
and stores a map from exponent tuples to nonzero :class:`fractions.Fraction`
coefficients.  Values are immutable; arithmetic between polynomials of
different rings raises :class:`RingMismatchError` instead of unifying names.

Term order matters only for presentation (``str``, :meth:`Polynomial.terms`)
and for the Groebner machinery; equality and hashing ignore it.

Example
-------
>>> x, y = polynomial_ring("x y")
>>> str((x + y) * (x - y))
'x^2 - y^2'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]

ORDER_KINDS = ("grevlex", "lex", "weighted")


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order.

    ``grevlex`` is graded reverse lexicographic, ``lex`` is pure
    lexicographic, ``weighted`` compares the weighted degree first and breaks
    ties with grevlex.  Variables compare in ring order (first is largest).
    """

    kind: str = "grevlex"
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted":
            if not self.weights:
                raise ValueError("weighted order requires weights")
            w = tuple(int(v) for v in self.weights)
            if any(v <= 0 for v in w):
                raise ValueError("weights must be positive integers")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{self.kind} order takes no weights")

    @classmethod
    def grevlex(cls) -> MonomialOrder:
        return cls("grevlex")

    @classmethod
    def lex(cls) -> MonomialOrder:
        return cls("lex")

    @classmethod
    def weighted(cls, weights: Iterable[int]) -> MonomialOrder:
        return cls("weighted", tuple(weights))

    def check(self, nvars: int) -> None:
        if self.kind == "weighted" and len(self.weights) != nvars:
            raise ValueError(
                f"weighted order has {len(self.weights)} weights for {nvars} variables"
            )

    def key_rows(self, nvars: int) -> list[list[int]]:
        """Nonnegative integer matrix ``A`` with ``key(e) = A @ e``.

        Comparing ``A @ e`` lexicographically realises the order.  Grevlex is
        encoded through prefix sums: with equal degree, a smaller last
        exponent means a larger prefix sum of the others.
        """
        self.check(nvars)
        if self.kind == "lex":
            return [[int(i == j) for j in range(nvars)] for i in range(nvars)]
        rows = [[1] * nvars]
        for stop in range(nvars - 1, 0, -1):
            rows.append([1] * stop + [0] * (nvars - stop))
        if self.kind == "weighted":
            rows.insert(0, list(self.weights))
        return rows

    def key(self, exps: Monomial) -> tuple[int, ...]:
        return tuple(
            sum(a * e for a, e in zip(row, exps)) for row in self.key_rows(len(exps))
        )

    def __str__(self):
        if self.kind == "weighted":
            return "weighted " + " ".join(map(str, self.weights))
        return self.kind


GREVLEX = MonomialOrder.grevlex()


def _coerce_coefficient(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficient must be int, Fraction or str, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    Parameters
    ----------
    ring : sequence of str
        Ordered variable names.
    terms : mapping
        Exponent tuple -> coefficient.  Zero coefficients are dropped.
    """

    __slots__ = ("_ring", "_terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise ValueError(f"duplicate variable names in ring {ring}")
        n = len(ring)
        clean: dict[Monomial, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for ring {ring}")
            c = _coerce_coefficient(c)
            if c:
                clean[exps] = c
        self._ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring: tuple[str, ...], terms: dict[Monomial, Fraction]) -> Polynomial:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, ring: Sequence[str], c=1) -> Polynomial:
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def variable(cls, ring: Sequence[str], name: str) -> Polynomial:
        ring = tuple(ring)
        if name not in ring:
            raise ValueError(f"unknown variable {name!r} for ring {ring}")
        i = ring.index(name)
        return cls(ring, {tuple(int(j == i) for j in range(len(ring))): 1})

    @classmethod
    def monomial(cls, ring: Sequence[str], exps: Monomial, c=1) -> Polynomial:
        return cls(ring, {tuple(exps): c})

    # -- accessors -------------------------------------------------------

    @property
    def ring(self) -> tuple[str, ...]:
        return self._ring

    @property
    def nvars(self) -> int:
        return len(self._ring)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def coefficient(self, exps: Monomial) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return all(e == zero for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        """Names of the variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, v in enumerate(e) if v)
        return tuple(self._ring[i] for i in sorted(used))

    def terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted from largest to smallest under ``order``."""
        rows = order.key_rows(self.nvars)

        def key(item):
            e = item[0]
            return tuple(sum(a * x for a, x in zip(row, e)) for row in rows)

        return sorted(self._terms.items(), key=key, reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        rows = order.key_rows(self.nvars)
        return max(
            self._terms.items(),
            key=lambda item: tuple(sum(a * x for a, x in zip(row, item[0])) for row in rows),
        )

    def _index(self, name: str) -> int:
        try:
            return self._ring.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} for ring {self._ring}") from None

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other._ring != self._ring:
                raise RingMismatchError(f"ring mismatch: {self._ring} vs {other._ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self._ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._make(self._ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self._ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._make(self._ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = Polynomial.constant(self._ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        c = _coerce_coefficient(c)
        if not c:
            return Polynomial._make(self._ring, {})
        return Polynomial._make(self._ring, {e: c * v for e, v in self._terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Evaluate at a full rational point given by name."""
        values = [_coerce_coefficient(point[v]) for v in self._ring]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term *= v**k
            total += term
        return total

    def in_ring(self, ring: Sequence[str]) -> Polynomial:
        """Re-express in another ring containing every variable that occurs."""
        ring = tuple(ring)
        pos = []
        for i, name in enumerate(self._ring):
            if name in ring:
                pos.append(ring.index(name))
            else:
                pos.append(None)
        n = len(ring)
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise RingMismatchError(
                            f"variable {self._ring[i]!r} does not exist in ring {ring}"
                        )
                    new[pos[i]] = k
            out[tuple(new)] = c
        return Polynomial._make(ring, out)

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._ring == other._ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self._ring!r}, {str(self)!r})"

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        """Render in the ``+ - * ^`` grammar accepted by the CLI parser."""
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms(order):
            factors = []
            for name, k in zip(self._ring, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = to_string


def polynomial_ring(names: str | Sequence[str]) -> tuple[Polynomial, ...]:
    """Generators of the ring on ``names`` (space separated or a sequence)."""
    if isinstance(names, str):
        names = names.split()
    ring = tuple(names)
    return tuple(Polynomial.variable(ring, v) for v in ring)


def _check_same_ring(a: Polynomial, b: Polynomial) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same_ring(a, b)
    return a * b


def differentiate(p: Polynomial, var: str) -> Polynomial:
    """Formal partial derivative with respect to ``var``."""
    i = p._index(var)
    out = {}
    for e, c in p:
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1 :]] = c * k
    return Polynomial._make(p.ring, out)


def substitute(p: Polynomial, bindings: Mapping[str, Polynomial]) -> Polynomial:
    """Compose ``p`` with the given variable bindings.

    Every binding value must live in one common target ring.  Variables of
    ``p`` without a binding are carried over by name, so they must exist in
    the target ring too.  With no bindings ``p`` is returned unchanged.
    """
    if not bindings:
        return p
    for name in bindings:
        if name not in p.ring:
            raise ValueError(f"cannot bind {name!r}: not a variable of {p.ring}")
    values = list(bindings.values())
    target = values[0].ring
    for v in values[1:]:
        if v.ring != target:
            raise RingMismatchError("binding values live in different rings")

    images = []
    for name in p.ring:
        if name in bindings:
            images.append(bindings[name])
        elif name in target:
            images.append(Polynomial.variable(target, name))
        else:
            images.append(None)

    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        if (i, k) not in powers:
            powers[i, k] = images[i] ** k
        return powers[i, k]

    result = Polynomial._make(target, {})
    for e, c in p:
        term = Polynomial.constant(target, c)
        for i, k in enumerate(e):
            if not k:
                continue
            if images[i] is None:
                raise RingMismatchError(
                    f"unbound variable {p.ring[i]!r} is missing from target ring {target}"
                )
            term = term * power(i, k)
        result = result + term
    return result


def coefficients_in(
    p: Polynomial, params: Iterable[str], order: MonomialOrder = GREVLEX
) -> list[tuple[Monomial, Polynomial]]:
    """Split ``p`` as a polynomial in ``params`` with coefficients in the rest.

    Returns ``(monomial in params, coefficient)`` pairs, largest parameter
    monomial first.  Parameters keep their ring order; the coefficients live
    in the ring of the remaining variables.
    """
    params = set(params)
    if not params:
        raise ValueError("params must be a nonempty set of variables")
    unknown = params.difference(p.ring)
    if unknown:
        raise ValueError(f"params {sorted(unknown)} not in ring {p.ring}")
    pidx = [i for i, v in enumerate(p.ring) if v in params]
    ridx = [i for i, v in enumerate(p.ring) if v not in params]
    rest = tuple(p.ring[i] for i in ridx)

    buckets: dict[Monomial, dict[Monomial, Fraction]] = {}
    for e, c in p:
        pe = tuple(e[i] for i in pidx)
        re = tuple(e[i] for i in ridx)
        buckets.setdefault(pe, {})[re] = c
    keys = sorted(buckets, key=order.key, reverse=True)
    return [(k, Polynomial._make(rest, buckets[k])) for k in keys]


def weighted_degree(p: Polynomial, weights: Sequence[int]) -> int | None:
    """Common weighted degree of all terms, or ``None`` if inhomogeneous.

    The zero polynomial has no well-defined degree and also gives ``None``.
    """
    if len(weights) != p.nvars:
        raise ValueError(f"{len(weights)} weights for {p.nvars} variables")
    degrees = {sum(w * k for w, k in zip(weights, e)) for e in p._terms}
    if len(degrees) != 1:
        return None
    return degrees.pop()


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row; fine for the small sizes used here."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j, entry in enumerate(matrix[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return matrix[0][0] * 0
    return total


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    """All ``k x k`` minors of a square matrix, without zeros or repeats."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and nonempty")
    if not 1 <= k <= n:
        raise ValueError(f"minor size {k} out of range 1..{n}")
    rings = {entry.ring for row in matrix for entry in row}
    if len(rings) != 1:
        raise RingMismatchError("matrix entries live in different rings")

    seen = set()
    out = []
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.combinations(range(n), k):
            sub = [[matrix[i][j] for j in cols] for i in rows]
            m = determinant(sub)
            if m and m not in seen:
                seen.add(m)
                out.append(m)
    return out
