"""Invariants of the torus-knot singularities ``x^q = y^p``.

The local ring of ``x^q = y^p`` (``gcd(p, q) = 1``) is the semigroup ring of
``<p, q>``, so the delta invariant is the number of semigroup gaps and the
conductor is one past the largest gap.  Both are computed by formula and by
enumeration; the two routes are cross-checked on every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class TorusKnotSingularity:
    """The germ ``x^q = y^p`` with ``1 < p < q`` coprime.

    Swapped or non-coprime pairs are rejected, never normalised.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise TypeError("p and q must be integers")
        if not 1 < p < q:
            raise ValueError(f"need 1 < p < q, got (p, q) = ({p}, {q})")
        if math.gcd(p, q) != 1:
            raise ValueError(f"p and q must be coprime, got gcd({p}, {q}) = {math.gcd(p, q)}")


@dataclass(frozen=True)
class SingularityRecord:
    """One singular point of a curve: a node or a torus-knot germ."""

    kind: str
    multiplicity: int
    delta: int
    p: int | None = None
    q: int | None = None

    @classmethod
    def node(cls) -> SingularityRecord:
        return cls("node", 1, 1)

    @classmethod
    def torus_knot(cls, p: int, q: int) -> SingularityRecord:
        s = TorusKnotSingularity(p, q)
        return cls("torus-knot", multiplicity_closed_form(s), delta_invariant(s), p, q)

    def __post_init__(self):
        if self.kind == "node":
            if (self.multiplicity, self.delta) != (1, 1):
                raise ValueError("a node has multiplicity 1 and delta 1")
        elif self.kind == "torus-knot":
            s = TorusKnotSingularity(self.p, self.q)
            if self.multiplicity != multiplicity_closed_form(s) or self.delta != delta_invariant(s):
                raise ValueError(f"inconsistent record for torus knot ({self.p}, {self.q})")
        else:
            raise ValueError(f"unknown singularity kind {self.kind!r}")


def _as_singularity(s) -> TorusKnotSingularity:
    if isinstance(s, TorusKnotSingularity):
        return s
    p, q = s
    return TorusKnotSingularity(p, q)


def multiplicity_closed_form(s: TorusKnotSingularity | tuple[int, int]) -> int:
    """``binom(p+q, p) / (p+q)``; the division is exact for coprime ``p, q``."""
    s = _as_singularity(s)
    n = s.p + s.q
    total = math.comb(n, s.p)
    count, rem = divmod(total, n)
    if rem:
        raise ArithmeticError(f"{n} does not divide binom({n}, {s.p})")
    return count


def multiplicity_factorial_form(s: TorusKnotSingularity | tuple[int, int]) -> int:
    """``(p+q-1)! / (p! q!)``, the same number written differently."""
    s = _as_singularity(s)
    count, rem = divmod(math.factorial(s.p + s.q - 1), math.factorial(s.p) * math.factorial(s.q))
    if rem:
        raise ArithmeticError("factorial form is not an integer")
    return count


def semigroup_gaps(s: TorusKnotSingularity | tuple[int, int]) -> list[int]:
    """Naturals not of the form ``a*p + b*q`` with ``a, b >= 0``, by enumeration."""
    s = _as_singularity(s)
    p, q = s.p, s.q
    # every n > pq - p - q is representable (Frobenius number)
    top = p * q
    reachable = [False] * (top + 1)
    reachable[0] = True
    for n in range(1, top + 1):
        reachable[n] = (n >= p and reachable[n - p]) or (n >= q and reachable[n - q])
    return [n for n in range(top + 1) if not reachable[n]]


def delta_invariant(s: TorusKnotSingularity | tuple[int, int]) -> int:
    """``(p-1)(q-1)/2``, checked against the number of semigroup gaps."""
    s = _as_singularity(s)
    delta = (s.p - 1) * (s.q - 1) // 2
    gaps = len(semigroup_gaps(s))
    if gaps != delta:
        raise ArithmeticError(f"delta formula {delta} disagrees with gap count {gaps}")
    return delta


def conductor_exponent(s: TorusKnotSingularity | tuple[int, int]) -> int:
    """Smallest ``c`` with every integer ``>= c`` in the semigroup; equals ``2*delta``."""
    s = _as_singularity(s)
    gaps = semigroup_gaps(s)
    c = gaps[-1] + 1 if gaps else 0
    if c != 2 * delta_invariant(s):
        raise ArithmeticError(f"conductor {c} is not twice delta")
    return c


def euler_compactified_jacobian(sings: Iterable[SingularityRecord]) -> int:
    """Product of the local multiplicities; an empty list gives 1."""
    out = 1
    for rec in sings:
        out *= rec.multiplicity
    return out
