"""Dense complex-arithmetic backend over mixed local dimensions.

Error operators are Heisenberg-Weyl words X^a Z^b per site. Every such
word acts on computational basis states as a permutation with phases,
so traces against dense operators never materialize the D^n x D^n error
matrix: an error is carried as (perm, phase) with
E|k> = phase[k] |perm[k]>.

Index convention: amplitudes and matrix rows are row-major with the
LAST subsystem varying fastest. Subsets of sites are bitmasks with bit
i-1 for site i.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .ame import DimensionProfile, ResourceLimitError

_SL_GUARD = 10 ** 7       # D ** (2n) cap for full error-basis sums
_SHADOW_BRUTE_MAX_N = 4   # 4^n subset pairs

STATE_ORDERING = "row-major-last-fastest"


@dataclass(eq=False)
class StateVector:
    profile: DimensionProfile
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != (self.profile.total_dim,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, expected "
                f"({self.profile.total_dim},)"
            )
        self.amplitudes = amp

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(eq=False)
class DenseOperator:
    profile: DimensionProfile
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        side = self.profile.total_dim
        if mat.shape != (side, side):
            raise ValueError(
                f"matrix has shape {mat.shape}, expected ({side}, {side})"
            )
        self.matrix = mat


def density(psi: StateVector) -> DenseOperator:
    return DenseOperator(psi.profile, np.outer(psi.amplitudes,
                                               psi.amplitudes.conj()))


# ---------------------------------------------------------------------------
# Local error basis


def weyl_x(D: int) -> np.ndarray:
    """Shift matrix: X|j> = |j+1 mod D>."""
    return np.roll(np.eye(D, dtype=np.complex128), 1, axis=0)


def weyl_z(D: int) -> np.ndarray:
    """Clock matrix: Z|j> = exp(2 pi i j / D)|j>."""
    phases = np.exp(2j * np.pi * np.arange(D) / D)
    return np.diag(phases)


@dataclass(frozen=True)
class LocalErrorBasis:
    """The D^2 words X^a Z^b on one site; orthogonal, Tr(e^dag e') = D delta."""

    D: int

    def __post_init__(self):
        if self.D < 2:
            raise ValueError(f"local dimension must be >= 2, got {self.D}")

    @property
    def labels(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.D) for b in range(self.D)]

    def matrix(self, a: int, b: int) -> np.ndarray:
        if not (0 <= a < self.D and 0 <= b < self.D):
            raise ValueError(f"labels out of range for D={self.D}: {(a, b)}")
        return (np.linalg.matrix_power(weyl_x(self.D), a)
                @ np.linalg.matrix_power(weyl_z(self.D), b))


@dataclass(frozen=True)
class WeightedErrorIndex:
    """Per-site (a_i, b_i) labels of one tensor-product error word."""

    labels: tuple[tuple[int, int], ...]

    @property
    def support(self) -> int:
        mask = 0
        for i, lab in enumerate(self.labels):
            if lab != (0, 0):
                mask |= 1 << i
        return mask

    @property
    def weight(self) -> int:
        return sum(1 for lab in self.labels if lab != (0, 0))


def enumerate_errors(profile: DimensionProfile) -> Iterator[WeightedErrorIndex]:
    """All per-site label words, site-local dimensions respected."""
    per_site = [[(a, b) for a in range(d) for b in range(d)]
                for d in profile.dims]
    for labels in itertools.product(*per_site):
        yield WeightedErrorIndex(labels=labels)


class _SiteTables:
    """Per-site flat-index shift and phase lookup tables for one profile."""

    def __init__(self, profile: DimensionProfile):
        dims = profile.dims
        n = len(dims)
        total = profile.total_dim
        idx = np.arange(total)
        self.shift: list[list[np.ndarray]] = []
        self.phase: list[list[np.ndarray]] = []
        stride = total
        for i, d in enumerate(dims):
            stride //= d
            digit = idx // stride % d
            self.shift.append(
                [stride * ((digit + a) % d) for a in range(d)]
            )
            omega_pow = np.exp(2j * np.pi * np.arange(d) / d)
            self.phase.append(
                [omega_pow[(b * digit) % d] for b in range(d)]
            )
        self.total = total
        self.n = n


def _perm_phase(tables: _SiteTables,
                labels: Sequence[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    perm = tables.shift[0][labels[0][0]]
    phase = tables.phase[0][labels[0][1]]
    for i in range(1, tables.n):
        perm = perm + tables.shift[i][labels[i][0]]
        phase = phase * tables.phase[i][labels[i][1]]
    return perm, phase


def error_perm_phase(profile: DimensionProfile,
                     error: WeightedErrorIndex) -> tuple[np.ndarray, np.ndarray]:
    """(perm, phase) arrays with E|k> = phase[k] |perm[k]>."""
    for (a, b), d in zip(error.labels, profile.dims):
        if not (0 <= a < d and 0 <= b < d):
            raise ValueError(f"labels {error.labels} out of range for {profile.dims}")
    return _perm_phase(_SiteTables(profile), error.labels)


def error_matrix(profile: DimensionProfile,
                 error: WeightedErrorIndex) -> np.ndarray:
    """Dense matrix of the error word (tests compare against (perm, phase))."""
    out = np.ones((1, 1), dtype=np.complex128)
    basis_cache: dict[int, LocalErrorBasis] = {}
    for (a, b), d in zip(error.labels, profile.dims):
        basis = basis_cache.setdefault(d, LocalErrorBasis(d))
        out = np.kron(out, basis.matrix(a, b))
    return out


# ---------------------------------------------------------------------------
# Partial traces


def _ptrace_matrix(matrix: np.ndarray, dims: Sequence[int],
                   traced: int) -> np.ndarray:
    """Trace out the bitmask subset; remaining sites keep their order."""
    n = len(dims)
    tensor = matrix.reshape(tuple(dims) * 2)
    remaining = n
    for i in reversed(range(n)):
        if traced >> i & 1:
            tensor = np.trace(tensor, axis1=i, axis2=i + remaining)
            remaining -= 1
    side = int(round(math.prod(
        d for i, d in enumerate(dims) if not traced >> i & 1
    )))
    return tensor.reshape(side, side)


def partial_trace(op: DenseOperator, subset: int) -> DenseOperator:
    """Trace out the sites in the bitmask subset (not all of them)."""
    n = op.profile.n
    if subset < 0 or subset >= 1 << n:
        raise ValueError(f"subset {subset} out of range for n={n}")
    if subset == (1 << n) - 1:
        raise ValueError("cannot trace out every site; use np.trace instead")
    reduced = _ptrace_matrix(op.matrix, op.profile.dims, subset)
    kept = tuple(d for i, d in enumerate(op.profile.dims)
                 if not subset >> i & 1)
    return DenseOperator(DimensionProfile(kept), reduced)


def tensor_with_identity(reduced: np.ndarray, profile: DimensionProfile,
                         traced: int) -> np.ndarray:
    """Embed an operator on the kept sites as (reduced x I_traced), site order kept."""
    dims = profile.dims
    n = len(dims)
    kept = [i for i in range(n) if not traced >> i & 1]
    tr = [i for i in range(n) if traced >> i & 1]
    kept_dims = [dims[i] for i in kept]
    tr_dims = [dims[i] for i in tr]
    red_tensor = reduced.reshape(tuple(kept_dims) * 2)
    eye_dim = int(math.prod(tr_dims)) if tr_dims else 1
    eye_tensor = np.eye(eye_dim, dtype=np.complex128).reshape(tuple(tr_dims) * 2)
    outer = np.multiply.outer(red_tensor, eye_tensor)
    # outer axes: kept rows, kept cols, traced rows, traced cols
    p, q = len(kept), len(tr)
    row_axis = {}
    col_axis = {}
    for pos, site in enumerate(kept):
        row_axis[site] = pos
        col_axis[site] = p + pos
    for pos, site in enumerate(tr):
        row_axis[site] = 2 * p + pos
        col_axis[site] = 2 * p + q + pos
    order = [row_axis[s] for s in range(n)] + [col_axis[s] for s in range(n)]
    side = profile.total_dim
    return outer.transpose(order).reshape(side, side)


def channel_partial_trace(op: DenseOperator, subset: int) -> DenseOperator:
    """Partial trace as an error-basis channel, identity left on the subset.

    (prod_{i in S} d_i)^{-1} sum_{supp(E) subseteq S} E M E^dag, which
    equals partial_trace(M, S) tensored with the identity on S. Works
    per-site, so the subset may mix local dimensions.
    """
    profile = op.profile
    n = profile.n
    if subset < 0 or subset >= 1 << n:
        raise ValueError(f"subset {subset} out of range for n={n}")
    if subset == 0:
        return DenseOperator(profile, op.matrix.copy())
    tables = _SiteTables(profile)
    sites = [i for i in range(n) if subset >> i & 1]
    per_site = [[(a, b) for a in range(profile.dims[i]) for b in range(profile.dims[i])]
                for i in sites]
    total = profile.total_dim
    out = np.zeros((total, total), dtype=np.complex128)
    for choice in itertools.product(*per_site):
        labels = [(0, 0)] * n
        for site, lab in zip(sites, choice):
            labels[site] = lab
        perm, phase = _perm_phase(tables, labels)
        out[np.ix_(perm, perm)] += np.outer(phase, phase.conj()) * op.matrix
    scale = math.prod(profile.dims[i] for i in sites)
    return DenseOperator(profile, out / scale)


# ---------------------------------------------------------------------------
# Enumerators measured from explicit operators


def _require_same_profile(M: DenseOperator, N: DenseOperator) -> DimensionProfile:
    if M.profile != N.profile:
        raise ValueError("operators live on different dimension profiles")
    return M.profile


def shor_laflamme_from_operators(
    M: DenseOperator, N: DenseOperator
) -> tuple[np.ndarray, np.ndarray]:
    """(A, B) with A_j = sum_{wt=j} Tr(EM)Tr(E^dag N), B_j = sum Tr(EME^dag N).

    Full error-basis enumeration; uniform local dimension required. For
    Hermitian inputs the imaginary parts cancel to rounding and the real
    parts are returned.
    """
    profile = _require_same_profile(M, N)
    D = profile.uniform
    if D is None:
        raise ValueError("Shor-Laflamme enumeration needs a uniform dimension")
    n = profile.n
    if D ** (2 * n) > _SL_GUARD:
        raise ResourceLimitError(
            f"error basis of size D^2n = {D ** (2 * n)} exceeds {_SL_GUARD}"
        )
    tables = _SiteTables(profile)
    idx = np.arange(profile.total_dim)
    A = np.zeros(n + 1, dtype=np.complex128)
    B = np.zeros(n + 1, dtype=np.complex128)
    Mm, Nm = M.matrix, N.matrix
    pairs = [(a, b) for a in range(D) for b in range(D)]
    for labels in itertools.product(pairs, repeat=n):
        weight = sum(1 for lab in labels if lab != (0, 0))
        perm, phase = _perm_phase(tables, labels)
        tr_em = (phase * Mm[idx, perm]).sum()
        tr_edn = (phase.conj() * Nm[perm, idx]).sum()
        A[weight] += tr_em * tr_edn
        ng = Nm[np.ix_(perm, perm)]
        B[weight] += np.einsum("u,v,uv,vu->", phase, phase.conj(), Mm, ng)
    return A.real.copy(), B.real.copy()


def unitary_enum_from_operators(
    M: DenseOperator, N: DenseOperator
) -> tuple[np.ndarray, np.ndarray]:
    """(A', B') with A'_m = sum_{|S|=m} Tr[(Tr_Sc M)(Tr_Sc N)].

    B' uses the complementary subset sizes.
    """
    profile = _require_same_profile(M, N)
    n = profile.n
    a_out = np.zeros(n + 1, dtype=np.complex128)
    b_out = np.zeros(n + 1, dtype=np.complex128)
    full = (1 << n) - 1
    for traced in range(1 << n):
        kept_size = n - bin(traced).count("1")
        if traced == full:
            val = np.trace(M.matrix) * np.trace(N.matrix)
        else:
            mr = _ptrace_matrix(M.matrix, profile.dims, traced)
            nr = _ptrace_matrix(N.matrix, profile.dims, traced)
            val = np.trace(mr @ nr)
        a_out[kept_size] += val
        b_out[n - kept_size] += val
    return a_out.real.copy(), b_out.real.copy()


def shadow_coeffs_brute(M: DenseOperator, N: DenseOperator) -> np.ndarray:
    """S_j = sum_{|T|=j} sum_S (-1)^{|S intersect T^c|} A'_S(M, N).

    Direct double-subset summation; the oracle for the polynomial
    shadow routes.
    """
    profile = _require_same_profile(M, N)
    n = profile.n
    if n > _SHADOW_BRUTE_MAX_N:
        raise ResourceLimitError(
            f"shadow brute force limited to n <= {_SHADOW_BRUTE_MAX_N}, got {n}"
        )
    full = (1 << n) - 1
    prime = np.zeros(1 << n, dtype=np.complex128)
    for s in range(1 << n):
        traced = full ^ s
        if traced == full:
            prime[s] = np.trace(M.matrix) * np.trace(N.matrix)
        else:
            mr = _ptrace_matrix(M.matrix, profile.dims, traced)
            nr = _ptrace_matrix(N.matrix, profile.dims, traced)
            prime[s] = np.trace(mr @ nr)
    out = np.zeros(n + 1, dtype=np.complex128)
    for t in range(1 << n):
        tc = full ^ t
        j = bin(t).count("1")
        acc = 0.0 + 0.0j
        for s in range(1 << n):
            sign = -1 if bin(s & tc).count("1") % 2 else 1
            acc += sign * prime[s]
        out[j] += acc
    return out.real.copy()


# ---------------------------------------------------------------------------
# Code verification


def _validate_projector(projector: DenseOperator, K: int,
                        tol: float = 1e-9) -> None:
    Q = projector.matrix
    if np.abs(Q @ Q - Q).max() > tol:
        raise ValueError("operator is not idempotent within tolerance")
    if abs(np.trace(Q).real - K) > tol or abs(np.trace(Q).imag) > tol:
        raise ValueError(f"projector trace is not {K} within tolerance")


def code_distance(projector: DenseOperator, K: int, tol: float = 1e-8) -> int:
    """Largest d such that the distance-d criterion holds for all j < d.

    K > 1: K*B_j = A_j. K = 1 (a single pure state, necessarily a pure
    code): A_j = 0 for 1 <= j < d, since A_j = B_j identically then.
    Capped at n + 1.
    """
    _validate_projector(projector, K)
    A, B = shor_laflamme_from_operators(projector, projector)
    n = projector.profile.n
    for j in range(1, n + 1):
        gap = abs(A[j]) if K == 1 else abs(K * B[j] - A[j])
        if gap > tol:
            return j
    return n + 1


def verify_code(projector: DenseOperator, K: int, d: int,
                tol: float = 1e-8) -> bool:
    """Does the projector define an ((n, K, >= d)) code?"""
    return code_distance(projector, K, tol=tol) >= d


# ---------------------------------------------------------------------------
# The 2x3x3x3 AME state


_PHI_2333_TERMS = (
    ("-a", "0011"), ("-b", "0012"), ("+b", "0021"), ("+a", "0022"),
    ("-b", "0101"), ("+a", "0102"), ("+b", "0110"), ("+a", "0120"),
    ("-a", "0201"), ("+b", "0202"), ("-a", "0210"), ("-b", "0220"),
    ("-b", "1011"), ("+a", "1012"), ("-a", "1021"), ("+b", "1022"),
    ("+a", "1101"), ("+b", "1102"), ("-a", "1110"), ("+b", "1120"),
    ("-b", "1201"), ("-a", "1202"), ("-b", "1210"), ("+a", "1220"),
)


def phi_2333_coefficients(branch: str = "+") -> tuple[float, float]:
    """(alpha, beta) with 12(alpha^2 + beta^2) = 1 and 54*alpha*beta = 1."""
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    sign = 1.0 if branch == "+" else -1.0
    alpha = math.sqrt(1.5 + sign * math.sqrt(65.0) / 6.0) / 6.0
    beta = 1.0 / (54.0 * alpha)
    return alpha, beta


def phi_2333(branch: str = "+") -> StateVector:
    """The 24-term AME state on local dimensions (2, 3, 3, 3)."""
    alpha, beta = phi_2333_coefficients(branch)
    profile = DimensionProfile((2, 3, 3, 3))
    amp = np.zeros(profile.total_dim, dtype=np.complex128)
    for coeff, word in _PHI_2333_TERMS:
        value = alpha if coeff[1] == "a" else beta
        if coeff[0] == "-":
            value = -value
        q, b, c, d = (int(ch) for ch in word)
        amp[((q * 3 + b) * 3 + c) * 3 + d] = value
    return StateVector(profile, amp)


def max_marginal_deviation(psi: StateVector) -> float:
    """Largest max-norm gap between any small-side reduction and I/d_S."""
    profile = psi.profile
    n = profile.n
    rho = density(psi).matrix
    total = profile.total_dim
    full = (1 << n) - 1
    worst = 0.0
    for s in range(1, full):
        d_s = profile.subset_dim(s)
        if d_s * d_s > total:
            continue
        red = _ptrace_matrix(rho, profile.dims, full ^ s)
        dev = float(np.abs(red - np.eye(d_s) / d_s).max())
        worst = max(worst, dev)
    return worst


def is_ame(psi: StateVector, tol: float = 1e-9) -> bool:
    """Every reduction with d_S <= d_Sc equals I/d_S within tol (max norm)."""
    return max_marginal_deviation(psi) <= tol


def lu_branch_map_check(phi: Optional[float] = None, tol: float = 1e-9) -> bool:
    """Does exp(i phi sigma_y) on the qubit map the '+' branch to the '-' one?

    Defaults to phi = -2 arctan sqrt(5/13); equality is up to a global
    phase, i.e. unit overlap magnitude.
    """
    if phi is None:
        phi = -2.0 * math.atan(math.sqrt(5.0 / 13.0))
    plus = phi_2333("+")
    minus = phi_2333("-")
    c, s = math.cos(phi), math.sin(phi)
    gate = np.array([[c, s], [-s, c]], dtype=np.complex128)
    u = np.kron(gate, np.eye(27, dtype=np.complex128))
    overlap = abs(np.vdot(minus.amplitudes, u @ plus.amplitudes))
    return overlap >= 1.0 - tol


# ---------------------------------------------------------------------------
# Interchange


def state_to_json_dict(psi: StateVector) -> dict:
    return {
        "dims": list(psi.profile.dims),
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
        "ordering": STATE_ORDERING,
    }


def state_from_json_dict(doc: Mapping) -> StateVector:
    try:
        dims = tuple(int(d) for d in doc["dims"])
        pairs = doc["amplitudes"]
        ordering = doc.get("ordering", STATE_ORDERING)
        amp = np.array([complex(re, im) for re, im in pairs],
                       dtype=np.complex128)
    except KeyError as exc:
        raise ValueError(f"state document missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    if ordering != STATE_ORDERING:
        raise ValueError(f"unsupported amplitude ordering {ordering!r}")
    return StateVector(DimensionProfile(dims), amp)


def operator_to_json_dict(op: DenseOperator) -> dict:
    side = op.profile.total_dim
    flat = op.matrix.reshape(side * side)
    return {
        "dims": list(op.profile.dims),
        "matrix": [[float(v.real), float(v.imag)] for v in flat],
        "ordering": STATE_ORDERING,
    }


def operator_from_json_dict(doc: Mapping) -> DenseOperator:
    try:
        dims = tuple(int(d) for d in doc["dims"])
        pairs = doc["matrix"]
        ordering = doc.get("ordering", STATE_ORDERING)
        flat = np.array([complex(re, im) for re, im in pairs],
                        dtype=np.complex128)
    except KeyError as exc:
        raise ValueError(f"operator document missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed operator document: {exc}") from exc
    if ordering != STATE_ORDERING:
        raise ValueError(f"unsupported ordering {ordering!r}")
    profile = DimensionProfile(dims)
    side = profile.total_dim
    if flat.shape != (side * side,):
        raise ValueError("matrix entry count does not match the profile")
    return DenseOperator(profile, flat.reshape(side, side))
