"""Existence screens for absolutely maximally entangled (AME) states.

Uniform local dimension: the Scott bound, non-negativity of the
Shor-Laflamme coefficients, and non-negativity of the shadow
coefficients of the putative state. Mixed local dimensions: a direct
scan of the shadow inequality over every signed subset combination of
reduction purities. All arithmetic is exact.

Subsets of sites are bitmasks: bit i-1 set means site i (1-based) is in
the subset.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .enumerators import (
    A_from_unitary,
    EnumeratorKind,
    EnumeratorVector,
    shadow_from_unitary,
)
from .exactmath import binomial, format_rational


class ResourceLimitError(RuntimeError):
    """An enumeration guard was exceeded."""


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered local dimensions of an n-party system."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("dimension profile must be non-empty")
        if any(d < 2 for d in dims):
            raise ValueError(f"all local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        out = 1
        for d in self.dims:
            out *= d
        return out

    @property
    def uniform(self) -> Optional[int]:
        """The common local dimension, or None if the profile is mixed."""
        first = self.dims[0]
        return first if all(d == first for d in self.dims) else None

    def subset_dim(self, subset: int) -> int:
        """Product of the dimensions of the sites in a bitmask subset."""
        if subset < 0 or subset >= 1 << self.n:
            raise ValueError(f"subset {subset} out of range for n={self.n}")
        out = 1
        for i, d in enumerate(self.dims):
            if subset >> i & 1:
                out *= d
        return out


@dataclass(frozen=True)
class AmeVerdict:
    """Outcome of the exclusion screens for one dimension profile."""

    profile: DimensionProfile
    scott_violated: bool = False
    negative_A_index: Optional[int] = None
    negative_shadow_index: Optional[int] = None
    min_shadow_coeff: Optional[Fraction] = None
    min_mixed_value: Optional[Fraction] = None
    witness_T: Optional[int] = None
    excluded: bool = False
    excluded_by: tuple[str, ...] = ()

    def __post_init__(self):
        if self.excluded != bool(self.excluded_by):
            raise ValueError("excluded must mirror excluded_by being non-empty")


def ame_purity(k: int, n: int, D: int) -> Fraction:
    """Reduction purity D**(-min(k, n-k)) forced on any k-site marginal."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if D < 2:
        raise ValueError(f"local dimension D must be >= 2, got {D}")
    return Fraction(1, D ** min(k, n - k))


def ame_unitary_coeffs(n: int, D: int) -> EnumeratorVector:
    """A'_k = C(n,k) * D**(-min(k, n-k)) of the putative AME state."""
    if n < 1:
        raise ValueError(f"party count n must be >= 1, got {n}")
    coeffs = [binomial(n, k) * ame_purity(k, n, D) for k in range(n + 1)]
    return EnumeratorVector(n=n, D=D, kind=EnumeratorKind.UNITARY_A,
                            coeffs=tuple(coeffs))


def ame_shor_laflamme(n: int, D: int) -> EnumeratorVector:
    """Shor-Laflamme A vector of the putative AME state.

    A_0 = 1 and A_j = 0 for 1 <= j <= floor(n/2) always hold; a negative
    entry anywhere is the non-existence signal.
    """
    return A_from_unitary(ame_unitary_coeffs(n, D))


def ame_shadow_coeffs(n: int, D: int) -> EnumeratorVector:
    """Shadow coefficients of the putative AME state."""
    return shadow_from_unitary(ame_unitary_coeffs(n, D))


def scott_bound(D: int) -> tuple[int, int]:
    """(max even n, max odd n) compatible with AME existence."""
    if D < 2:
        raise ValueError(f"local dimension D must be >= 2, got {D}")
    return 2 * (D * D - 1), 2 * D * (D + 1) - 1


def _first_negative(coeffs: Sequence[Fraction]) -> Optional[int]:
    for j, c in enumerate(coeffs):
        if c < 0:
            return j
    return None


def check_ame_uniform(n: int, D: int) -> AmeVerdict:
    """Run all uniform-dimension screens, recording every violated one.

    Order: Scott bound, then Shor-Laflamme non-negativity, then shadow
    non-negativity.
    """
    even_max, odd_max = scott_bound(D)
    scott_violated = n > (even_max if n % 2 == 0 else odd_max)
    A = ame_shor_laflamme(n, D)
    S = ame_shadow_coeffs(n, D)
    neg_A = _first_negative(A.coeffs)
    neg_S = _first_negative(S.coeffs)
    excluded_by = []
    if scott_violated:
        excluded_by.append("scott")
    if neg_A is not None:
        excluded_by.append("A-coefficient")
    if neg_S is not None:
        excluded_by.append("shadow")
    return AmeVerdict(
        profile=DimensionProfile((D,) * n),
        scott_violated=scott_violated,
        negative_A_index=neg_A,
        negative_shadow_index=neg_S,
        min_shadow_coeff=min(S.coeffs),
        excluded=bool(excluded_by),
        excluded_by=tuple(excluded_by),
    )


# ---------------------------------------------------------------------------
# Mixed local dimensions


def mixed_purity(profile: DimensionProfile, subset: int) -> Fraction:
    """Purity 1/min(d_S, d_Sc) forced on the reduction onto a subset."""
    d_s = profile.subset_dim(subset)
    d_c = profile.total_dim // d_s
    return Fraction(1, min(d_s, d_c))


_MIXED_SCAN_MAX_N = 20


@dataclass(frozen=True)
class MixedScanResult:
    profile: DimensionProfile
    min_value: Fraction
    witness_T: int
    excluded: bool


def mixed_shadow_values(profile: DimensionProfile) -> list[Fraction]:
    """For every subset T: sum_S (-1)^|S & T| * mixed_purity(profile, S).

    The sign convention fixes (-1)^|S&T|; since all T are scanned, the
    complementary convention yields the same value set. Computed as an
    exact integer Walsh-Hadamard transform of the purity vector.
    """
    n = profile.n
    if n > _MIXED_SCAN_MAX_N:
        raise ResourceLimitError(
            f"mixed shadow scan limited to n <= {_MIXED_SCAN_MAX_N}, got {n}"
        )
    total = profile.total_dim
    size = 1 << n
    # Subset dimensions by dynamic programming over the lowest set bit,
    # then purities scaled by the total dimension to stay integral.
    d_sub = [1] * size
    for s in range(1, size):
        low = s & -s
        d_sub[s] = d_sub[s ^ low] * profile.dims[low.bit_length() - 1]
    vals = [total // min(d_sub[s], total // d_sub[s]) for s in range(size)]
    # In-place fast Walsh-Hadamard transform: exact on Python integers.
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                x, y = vals[j], vals[j + h]
                vals[j] = x + y
                vals[j + h] = x - y
        h *= 2
    return [Fraction(v, total) for v in vals]


def mixed_shadow_scan(profile: DimensionProfile) -> MixedScanResult:
    """Minimum signed purity combination over all subsets T.

    A negative minimum violates the shadow inequality, excluding an AME
    state on the profile. Ties break to the lowest witness bitmask.
    """
    values = mixed_shadow_values(profile)
    witness = min(range(len(values)), key=lambda t: (values[t], t))
    min_value = values[witness]
    return MixedScanResult(
        profile=profile,
        min_value=min_value,
        witness_T=witness,
        excluded=min_value < 0,
    )


def check_ame_mixed(profile: DimensionProfile) -> AmeVerdict:
    """AmeVerdict wrapper around mixed_shadow_scan."""
    scan = mixed_shadow_scan(profile)
    excluded_by = ("mixed-shadow",) if scan.excluded else ()
    return AmeVerdict(
        profile=profile,
        min_mixed_value=scan.min_value,
        witness_T=scan.witness_T,
        excluded=bool(excluded_by),
        excluded_by=excluded_by,
    )


# ---------------------------------------------------------------------------
# Grid scan


@dataclass(frozen=True)
class ScanRow:
    n: int
    D: int
    scott_excluded: bool
    negative_A_index: int        # -1 when absent or not computed
    negative_shadow_index: int   # -1 when absent or not computed
    min_shadow_coeff: Optional[Fraction]
    verdict: str


def _scan_cell(cell: tuple[int, int]) -> ScanRow:
    n, D = cell
    even_max, odd_max = scott_bound(D)
    if n > (even_max if n % 2 == 0 else odd_max):
        # Exclusion already certain; skip the coefficient work.
        return ScanRow(n=n, D=D, scott_excluded=True, negative_A_index=-1,
                       negative_shadow_index=-1, min_shadow_coeff=None,
                       verdict="excluded_scott")
    verdict = check_ame_uniform(n, D)
    neg_A = -1 if verdict.negative_A_index is None else verdict.negative_A_index
    neg_S = -1 if verdict.negative_shadow_index is None else verdict.negative_shadow_index
    if neg_S >= 0:
        label = "excluded_shadow"
    elif neg_A >= 0:
        # Not observed on any scanned grid; kept so an A-only violation
        # could never be silently filed under "open".
        label = "excluded_A"
    else:
        label = "open"
    return ScanRow(n=n, D=D, scott_excluded=False, negative_A_index=neg_A,
                   negative_shadow_index=neg_S,
                   min_shadow_coeff=verdict.min_shadow_coeff, verdict=label)


def default_scan_threads() -> int:
    try:
        return max(1, int(os.environ.get("QWEIGHT_THREADS", "1")))
    except ValueError:
        return 1


def scan_grid(d_max: int, threads: Optional[int] = None) -> list[ScanRow]:
    """Verdicts for every D in 2..d_max and n from 2 up to the Scott odd bound.

    Rows are ordered D ascending, then n ascending, independent of the
    worker count.
    """
    if d_max < 2:
        raise ValueError(f"d_max must be >= 2, got {d_max}")
    cells = []
    for D in range(2, d_max + 1):
        _, odd_max = scott_bound(D)
        for n in range(2, odd_max + 1):
            cells.append((n, D))
    if threads is None:
        threads = default_scan_threads()
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_scan_cell, cells, chunksize=8))
    return [_scan_cell(cell) for cell in cells]


SCAN_CSV_COLUMNS = (
    "n", "D", "scott_excluded", "negative_A_index",
    "negative_shadow_index", "min_shadow_coeff", "verdict",
)


def scan_rows_to_csv(rows: Sequence[ScanRow]) -> str:
    """Render scan rows as CSV; rationals stay exact strings, never floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            row.n,
            row.D,
            "true" if row.scott_excluded else "false",
            row.negative_A_index,
            row.negative_shadow_index,
            "" if row.min_shadow_coeff is None else format_rational(row.min_shadow_coeff),
            row.verdict,
        ])
    return buf.getvalue()
