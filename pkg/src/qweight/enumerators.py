"""Weight-enumerator vectors and the exact transforms between them.

Five kinds are tracked: the Shor-Laflamme pair A and B, the subset-sum
(unitary) pair A' and B', and the shadow S. Every transform checks the
kind of its input, so a vector cannot silently pass through the wrong
substitution. Each polynomial transform is implemented twice: once as a
homogeneous substitution and once through Krawtchouk sums; the test
suite pins their exact agreement.

Coefficient convention: coeffs[j] is the weight-j coefficient, i.e. the
coefficient of x**(n-j) y**j of the enumerator polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .exactmath import (
    RationalLike,
    format_rational,
    krawtchouk,
    krawtchouk_like,
    parse_rational,
    poly_substitute,
)


class KindError(ValueError):
    """An enumerator vector was fed to a transform of the wrong kind."""


class EnumeratorKind(str, Enum):
    A = "A"                # Shor-Laflamme A_j = sum Tr(EM)Tr(E^dag N)
    B = "B"                # Shor-Laflamme B_j = sum Tr(EME^dag N)
    UNITARY_A = "Aprime"   # A'_m = sum_{|S|=m} Tr[(Tr_Sc M)(Tr_Sc N)]
    UNITARY_B = "Bprime"
    SHADOW = "S"


@dataclass(frozen=True)
class EnumeratorVector:
    """A length-(n+1) exact coefficient vector with its kind and base dimension."""

    n: int
    D: int
    kind: EnumeratorKind
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"party count n must be >= 1, got {self.n}")
        if self.D < 2:
            raise ValueError(f"local dimension D must be >= 2, got {self.D}")
        object.__setattr__(self, "kind", EnumeratorKind(self.kind))
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.n + 1:
            raise ValueError(
                f"expected {self.n + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)


def _require_kind(v: EnumeratorVector, *kinds: EnumeratorKind) -> None:
    if v.kind not in kinds:
        wanted = ", ".join(k.value for k in kinds)
        raise KindError(f"expected enumerator kind in {{{wanted}}}, got {v.kind.value}")


def _with(v: EnumeratorVector, kind: EnumeratorKind,
          coeffs: Iterable[RationalLike]) -> EnumeratorVector:
    return EnumeratorVector(n=v.n, D=v.D, kind=kind, coeffs=tuple(coeffs))


# ---------------------------------------------------------------------------
# Substitution routes


def macwilliams(v: EnumeratorVector) -> EnumeratorVector:
    """Quantum MacWilliams transform, A <-> B.

    Substitutes x -> (x + (D^2-1) y)/D, y -> (x - y)/D. Involutory.
    """
    _require_kind(v, EnumeratorKind.A, EnumeratorKind.B)
    D = Fraction(v.D)
    coeffs = poly_substitute(
        v.coeffs,
        (1 / D, (D * D - 1) / D),
        (1 / D, -1 / D),
    )
    out_kind = (EnumeratorKind.B if v.kind is EnumeratorKind.A
                else EnumeratorKind.A)
    return _with(v, out_kind, coeffs)


def shadow_transform(v: EnumeratorVector) -> EnumeratorVector:
    """Shadow transform A -> S.

    Substitutes x -> ((D-1)x + (D+1)y)/D, y -> (y - x)/D.
    """
    _require_kind(v, EnumeratorKind.A)
    D = Fraction(v.D)
    coeffs = poly_substitute(
        v.coeffs,
        ((D - 1) / D, (D + 1) / D),
        (-1 / D, 1 / D),
    )
    return _with(v, EnumeratorKind.SHADOW, coeffs)


def unitary_from_A(v: EnumeratorVector) -> EnumeratorVector:
    """A -> A' (or B -> B'): substitute x -> x + y/D, y -> y/D."""
    _require_kind(v, EnumeratorKind.A, EnumeratorKind.B)
    D = Fraction(v.D)
    coeffs = poly_substitute(v.coeffs, (1, 1 / D), (0, 1 / D))
    out_kind = (EnumeratorKind.UNITARY_A if v.kind is EnumeratorKind.A
                else EnumeratorKind.UNITARY_B)
    return _with(v, out_kind, coeffs)


def A_from_unitary(v: EnumeratorVector) -> EnumeratorVector:
    """A' -> A (or B' -> B): substitute x -> x - y, y -> D*y."""
    _require_kind(v, EnumeratorKind.UNITARY_A, EnumeratorKind.UNITARY_B)
    coeffs = poly_substitute(v.coeffs, (1, -1), (0, v.D))
    out_kind = (EnumeratorKind.A if v.kind is EnumeratorKind.UNITARY_A
                else EnumeratorKind.B)
    return _with(v, out_kind, coeffs)


def shadow_from_unitary(v: EnumeratorVector) -> EnumeratorVector:
    """A' -> S: substitute x -> x + y, y -> y - x."""
    _require_kind(v, EnumeratorKind.UNITARY_A)
    coeffs = poly_substitute(v.coeffs, (1, 1), (-1, 1))
    return _with(v, EnumeratorKind.SHADOW, coeffs)


def dual_unitary(v: EnumeratorVector) -> EnumeratorVector:
    """A' <-> B': coefficient reversal (B'_k = A'_{n-k})."""
    _require_kind(v, EnumeratorKind.UNITARY_A, EnumeratorKind.UNITARY_B)
    out_kind = (EnumeratorKind.UNITARY_B if v.kind is EnumeratorKind.UNITARY_A
                else EnumeratorKind.UNITARY_A)
    return _with(v, out_kind, tuple(reversed(v.coeffs)))


# ---------------------------------------------------------------------------
# Krawtchouk-sum routes (independent implementations of the same maps)


def macwilliams_via_krawtchouk(v: EnumeratorVector) -> EnumeratorVector:
    """MacWilliams as B_i = D^-n sum_k Ktilde_i(k; n, 1, D^2-1) A_k."""
    _require_kind(v, EnumeratorKind.A, EnumeratorKind.B)
    n, D = v.n, v.D
    scale = Fraction(1, D ** n)
    coeffs = [
        scale * sum(
            krawtchouk_like(i, k, n, 1, D * D - 1) * v.coeffs[k]
            for k in range(n + 1)
        )
        for i in range(n + 1)
    ]
    out_kind = (EnumeratorKind.B if v.kind is EnumeratorKind.A
                else EnumeratorKind.A)
    return _with(v, out_kind, coeffs)


def shadow_via_krawtchouk(v: EnumeratorVector) -> EnumeratorVector:
    """Shadow as S_i = D^-n sum_k (-1)^k Ktilde_i(k; n, D-1, D+1) A_k."""
    _require_kind(v, EnumeratorKind.A)
    n, D = v.n, v.D
    scale = Fraction(1, D ** n)
    coeffs = [
        scale * sum(
            (-1) ** k * krawtchouk_like(i, k, n, D - 1, D + 1) * v.coeffs[k]
            for k in range(n + 1)
        )
        for i in range(n + 1)
    ]
    return _with(v, EnumeratorKind.SHADOW, coeffs)


def shadow_from_unitary_via_krawtchouk(v: EnumeratorVector) -> EnumeratorVector:
    """Shadow from A' as S_j = sum_k K_{n-j}(k; n) A'_k."""
    _require_kind(v, EnumeratorKind.UNITARY_A)
    n = v.n
    coeffs = [
        sum(krawtchouk(n - j, k, n) * v.coeffs[k] for k in range(n + 1))
        for j in range(n + 1)
    ]
    return _with(v, EnumeratorKind.SHADOW, coeffs)


# ---------------------------------------------------------------------------
# Interchange


def to_json_dict(v: EnumeratorVector) -> dict:
    return {
        "n": v.n,
        "D": v.D,
        "kind": v.kind.value,
        "coeffs": [format_rational(c) for c in v.coeffs],
    }


def from_json_dict(doc: Mapping) -> EnumeratorVector:
    try:
        n = int(doc["n"])
        D = int(doc["D"])
        kind = EnumeratorKind(doc["kind"])
        coeffs = tuple(parse_rational(c) for c in doc["coeffs"])
    except KeyError as exc:
        raise ValueError(f"enumerator document missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed enumerator document: {exc}") from exc
    return EnumeratorVector(n=n, D=D, kind=kind, coeffs=coeffs)


def enumerator_to_json(v: EnumeratorVector) -> str:
    return json.dumps(to_json_dict(v), indent=2)


def enumerator_from_json(text: str) -> EnumeratorVector:
    return from_json_dict(json.loads(text))
