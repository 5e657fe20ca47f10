"""Exact rational and combinatorial kernels.

Polynomial routines operate on homogeneous bivariate polynomials of
degree n, stored as a coefficient sequence c of length n+1 where c[j]
multiplies x**(n-j) * y**j.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Sequence, Union

# Canonical exact scalar type: lowest terms, positive denominator.
Rational = Fraction

RationalLike = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse a rational string, "p/q" or bare "p"; no decimals."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value: RationalLike) -> str:
    """Serialize to the canonical "p/q" (or "p" when q == 1) form."""
    return str(Fraction(value))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def krawtchouk(m: int, k: int, n: int) -> int:
    """Krawtchouk polynomial K_m(k; n) at integer arguments.

    K_m(k; n) = sum_a (-1)^a C(n-k, m-a) C(k, a); equivalently the
    coefficient of x**(n-m) y**m in (x+y)**(n-k) (x-y)**k. Zero for m
    outside 0..n.
    """
    if m < 0 or m > n:
        return 0
    return sum(
        (-1) ** a * binomial(n - k, m - a) * binomial(k, a)
        for a in range(min(k, m) + 1)
    )


def krawtchouk_like(m: int, k: int, n: int, gamma: int, delta: int) -> int:
    """Generalized Krawtchouk value with weights gamma, delta.

    Coefficient of x**(n-m) y**m in (gamma*x + delta*y)**(n-k) (x-y)**k:
    sum_a (-1)^a C(n-k, m-a) C(k, a) gamma**((n-k)-(m-a)) delta**(m-a).
    Reduces to krawtchouk at gamma = delta = 1.
    """
    if m < 0 or m > n:
        return 0
    total = 0
    for a in range(min(k, m) + 1):
        c = binomial(n - k, m - a) * binomial(k, a)
        if c == 0:
            continue
        total += (
            (-1) ** a * c
            * gamma ** ((n - k) - (m - a))
            * delta ** (m - a)
        )
    return total


def _mul_linear(coeffs: list, a: Fraction, b: Fraction) -> list:
    # Multiply a homogeneous polynomial by the linear form a*x + b*y.
    out = [Fraction(0)] * (len(coeffs) + 1)
    for j, c in enumerate(coeffs):
        if c:
            out[j] += a * c
            out[j + 1] += b * c
    return out


def poly_substitute(
    coeffs: Sequence[RationalLike],
    xsub: tuple[RationalLike, RationalLike],
    ysub: tuple[RationalLike, RationalLike],
) -> tuple[Fraction, ...]:
    """Substitute x -> a*x + b*y, y -> c*x + d*y into a homogeneous polynomial.

    xsub = (a, b), ysub = (c, d). Evaluated by a Horner scheme over the
    coefficient list, O(n^2) exact operations; returns the coefficient
    tuple of the (still homogeneous, same degree) result.
    """
    p = [Fraction(c) for c in coeffs]
    if not p:
        raise ValueError("empty coefficient sequence")
    a, b = Fraction(xsub[0]), Fraction(xsub[1])
    c, d = Fraction(ysub[0]), Fraction(ysub[1])
    n = len(p) - 1
    # Horner: r_j = r_{j-1} * (a x + b y) + p_j * (c x + d y)**j
    result = [p[0]]
    ypow = [Fraction(1)]
    for j in range(1, n + 1):
        result = _mul_linear(result, a, b)
        ypow = _mul_linear(ypow, c, d)
        if p[j]:
            pj = p[j]
            for i, yc in enumerate(ypow):
                if yc:
                    result[i] += pj * yc
    return tuple(result)
