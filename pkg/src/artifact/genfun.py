"""Truncated integer power series and the rational curve counts ``n(g)``.

``n(g)`` is the coefficient of ``q^g`` in ``prod_{n>=1} (1 - q^n)^(-24)``,
i.e. of ``q / Delta(q)`` with the leading ``q`` cancelled.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum c_i q^i`` for ``i <= order``; higher terms are discarded."""

    coefficients: tuple[int, ...]
    order: int

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(coeffs) > self.order + 1:
            coeffs = coeffs[: self.order + 1]
        coeffs = coeffs + (0,) * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls((1,), order)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __mul__(self, other):
        return series_multiply(self, other)

    def __pow__(self, k):
        return series_power(self, k)


def series_multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")
    G = a.order
    ac, bc = a.coefficients, b.coefficients
    nz = [(j, c) for j, c in enumerate(bc) if c]
    out = [0] * (G + 1)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j, y in nz:
            if i + j > G:
                break
            out[i + j] += x * y
    return TruncatedSeries(tuple(out), G)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; the constant term must be 1 or -1."""
    c0 = a.coefficients[0]
    if c0 not in (1, -1):
        raise ValueError(f"constant term {c0} is not a unit in the integers")
    G = a.order
    ac = a.coefficients
    nz = [(j, c) for j, c in enumerate(ac) if c and j]
    out = [0] * (G + 1)
    out[0] = c0
    for n in range(1, G + 1):
        s = 0
        for j, c in nz:
            if j > n:
                break
            s += c * out[n - j]
        out[n] = -s * c0
    return TruncatedSeries(tuple(out), G)


def series_power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a**k`` by binary exponentiation."""
    if k < 0:
        return series_power(series_inverse(a), -k)
    result = TruncatedSeries.one(a.order)
    base = a
    while k:
        if k & 1:
            result = series_multiply(result, base)
        k >>= 1
        if k:
            base = series_multiply(base, base)
    return result


def series_power_naive(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a**k`` by ``k`` successive multiplications."""
    result = TruncatedSeries.one(a.order)
    for _ in range(k):
        result = series_multiply(result, a)
    return result


def _pentagonal(G: int) -> TruncatedSeries:
    out = [0] * (G + 1)
    out[0] = 1
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        lo = k * (3 * k - 1) // 2
        hi = k * (3 * k + 1) // 2
        if lo > G:
            break
        out[lo] += sign
        if hi <= G:
            out[hi] += sign
        k += 1
    return TruncatedSeries(tuple(out), G)


def _naive_product(G: int) -> TruncatedSeries:
    coeffs = [0] * (G + 1)
    coeffs[0] = 1
    for n in range(1, G + 1):
        # multiply by (1 - q^n) in place, high to low
        for i in range(G, n - 1, -1):
            coeffs[i] -= coeffs[i - n]
    return TruncatedSeries(tuple(coeffs), G)


def euler_product(G: int, method: str = "pentagonal") -> TruncatedSeries:
    """``prod_{n=1..G} (1 - q^n)`` to order ``G``.

    ``method="pentagonal"`` uses the sparse pentagonal-number expansion,
    ``method="product"`` multiplies the factors out one by one.
    """
    if G < 0:
        raise ValueError("G must be nonnegative")
    if method == "pentagonal":
        return _pentagonal(G)
    if method == "product":
        return _naive_product(G)
    raise ValueError(f"unknown method {method!r}")


def rational_curve_counts(G: int) -> list[int]:
    """``[n(0), ..., n(G)]``: invert the pentagonal series, then take the 24th power."""
    inv = series_inverse(euler_product(G, "pentagonal"))
    return list(series_power(inv, 24).coefficients)


def counts_cross_check(G: int) -> bool:
    """Compare two independent pipelines for ``n(0..G)``.

    One inverts the pentagonal series and squares up to the 24th power; the
    other takes the factor-by-factor product to the 24th power by repeated
    multiplication and inverts last.
    """
    a = rational_curve_counts(G)
    b = series_inverse(series_power_naive(euler_product(G, "product"), 24)).coefficients
    return list(b) == a
