"""Profile utilities: subset dimensions, marginals, constraint selection.

Site subsets are tuples of 0-based site indices. A subset S qualifies as
a pinning candidate when its dimension does not exceed its complement's
(d_S <= d_{S^c}); the constraint list keeps the inclusion-maximal ones
plus any smaller subset whose marginal is not forced by tracing a kept
superset down through sites at least as large as everything it contains.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

import numpy as np


def validate_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 1 or any(d < 2 for d in dims):
        raise ValueError(f"dims must be >= 2 each, got {dims}")
    return dims


def subset_dim(dims: Sequence[int], subset: Sequence[int]) -> int:
    return math.prod(dims[i] for i in subset)


def marginal_constraints(dims: Sequence[int]) -> list[tuple[int, ...]]:
    """Subsets pinned maximally mixed in the step-2 program.

    Larger subsets first, lexicographic within a size. On a two-site
    profile only the lowest-index side is pinned; the other side's
    marginal is left to the post-hoc verifier.
    """
    dims = validate_dims(dims)
    n = len(dims)
    total = math.prod(dims)

    candidates = []
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            d_s = subset_dim(dims, subset)
            if d_s * d_s <= total:
                candidates.append(subset)

    cand_set = set(candidates)
    kept = []
    for s in candidates:
        s_set = set(s)
        dominated = False
        for t in candidates:
            t_set = set(t)
            if s_set < t_set and all(
                dims[j] >= max(dims[i] for i in s) for j in t_set - s_set
            ):
                dominated = True
                break
        if not dominated:
            kept.append(s)

    if n == 2 and len(kept) == 2:
        # both singletons qualify; pin one side, lowest index wins
        kept = [min(kept)]

    kept.sort(key=lambda s: (-len(s), s))
    return kept


def random_pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def reduced_from_vector(vec: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """rho_S of a pure state, tracing out every site not in keep."""
    dims = tuple(dims)
    n = len(dims)
    comp = [i for i in range(n) if i not in keep]
    tensor = vec.reshape(dims)
    ordered = np.transpose(tensor, tuple(keep) + tuple(comp))
    flat = ordered.reshape(subset_dim(dims, keep), -1)
    return flat @ flat.conj().T


def reduced_from_matrix(mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """rho_S of a density matrix."""
    dims = tuple(dims)
    n = len(dims)
    comp = [i for i in range(n) if i not in keep]
    tensor = mat.reshape(dims + dims)
    for axis in sorted(comp, reverse=True):
        k = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=axis, axis2=axis + k)
    return tensor.reshape(subset_dim(dims, keep), subset_dim(dims, keep))


def max_marginal_deviation(vec: np.ndarray, dims: Sequence[int]) -> float:
    """Largest max-norm gap between any small-side reduction and I/d_S.

    Matches the metric the primary verifier reports: every nonempty
    proper subset with d_S^2 <= total dimension is checked.
    """
    dims = tuple(dims)
    n = len(dims)
    total = math.prod(dims)
    worst = 0.0
    for size in range(1, n):
        for subset in combinations(range(n), size):
            d_s = subset_dim(dims, subset)
            if d_s * d_s > total:
                continue
            red = reduced_from_vector(vec, dims, subset)
            dev = float(np.abs(red - np.eye(d_s) / d_s).max())
            worst = max(worst, dev)
    return worst


def state_payload(vec: np.ndarray, dims: Sequence[int]) -> dict:
    """Interchange form shared with the primary core."""
    return {
        "dims": [int(d) for d in dims],
        "amplitudes": [[float(a.real), float(a.imag)] for a in vec],
        "ordering": "row-major-last-fastest",
    }
