"""Iterative SDP search for maximally entangled states.

Each pass: (1) draw a random pure state, (2) maximize <psi|rho|psi> over
density matrices with the selected marginals pinned maximally mixed,
(3) replace psi by the top eigenvector of the optimum, (4) repeat until
the eigenvector stops moving. A pass that reaches a fixed point whose
marginal deviation clears the reporting gate counts as converged;
otherwise the best pass by deviation is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import cvxpy as cp
import numpy as np

from .core import (
    marginal_constraints,
    max_marginal_deviation,
    random_pure_state,
    state_payload,
    subset_dim,
    validate_dims,
)

CONVERGED_DEVIATION = 1e-6


class SolverFailure(RuntimeError):
    """The conic solver returned no usable optimum."""


@dataclass(frozen=True)
class SearchConfig:
    dims: tuple[int, ...]
    max_iterations: int = 500
    tol: float = 1e-9
    restarts: int = 10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "dims", validate_dims(self.dims))
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


def config_from_json_dict(doc: Mapping) -> SearchConfig:
    if "dims" not in doc:
        raise ValueError("config needs a dims list")
    known = {"dims", "max_iterations", "tol", "restarts", "seed"}
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {k: doc[k] for k in known if k in doc}
    kwargs["dims"] = tuple(kwargs["dims"])
    return SearchConfig(**kwargs)


@dataclass(frozen=True)
class SearchResult:
    converged: bool
    state: dict
    max_marginal_deviation: float
    top_eigenvalue: float
    iterations: int
    restarts_used: int

    def __post_init__(self):
        if self.converged and self.max_marginal_deviation > CONVERGED_DEVIATION:
            raise ValueError("converged result above the deviation gate")

    def report_dict(self) -> dict:
        return {
            "dims": self.state["dims"],
            "converged": self.converged,
            "max_marginal_deviation": self.max_marginal_deviation,
            "top_eigenvalue": self.top_eigenvalue,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
        }


class _Program:
    """Reusable step-2 SDP: the projector enters as a parameter."""

    def __init__(self, dims: Sequence[int]):
        total = math.prod(dims)
        self.rho = cp.Variable((total, total), hermitian=True)
        self.proj = cp.Parameter((total, total), hermitian=True)
        constraints = [self.rho >> 0, cp.trace(self.rho) == 1]
        for subset in marginal_constraints(dims):
            d_s = subset_dim(dims, subset)
            target = np.eye(d_s) / d_s
            constraints.append(_cvx_marginal(self.rho, dims, subset) == target)
        objective = cp.Maximize(cp.real(cp.trace(self.proj @ self.rho)))
        self.problem = cp.Problem(objective, constraints)

    # The pinned-marginal equalities overlap (single-site pins are implied
    # by overlapping pair pins, and each pin fixes the trace), so the
    # equality block is rank deficient.  The first-order solver shrugs
    # that off; the interior-point one stalls on the singular KKT system,
    # so it is only a fallback.
    _PLANS = (
        (cp.SCS, {"eps": 1e-9, "max_iters": 200_000}),
        (cp.CLARABEL, {}),
    )

    def solve(self, psi: np.ndarray) -> np.ndarray:
        self.proj.value = np.outer(psi, psi.conj())
        failures = []
        for solver, options in self._PLANS:
            try:
                self.problem.solve(solver=solver, **options)
            except cp.error.SolverError as exc:
                failures.append(f"{solver}: {exc}")
                continue
            if self.rho.value is None or self.problem.status not in (
                cp.OPTIMAL,
                cp.OPTIMAL_INACCURATE,
            ):
                failures.append(f"{solver}: status {self.problem.status}")
                continue
            value = np.asarray(self.rho.value)
            return (value + value.conj().T) / 2
        raise SolverFailure("; ".join(failures))


def _cvx_marginal(rho, dims: Sequence[int], keep: Sequence[int]):
    """Partial trace of a cvxpy expression down to the kept sites."""
    expr = rho
    remaining = list(dims)
    for axis in sorted((i for i in range(len(dims)) if i not in keep), reverse=True):
        expr = cp.partial_trace(expr, remaining, axis)
        del remaining[axis]
    return expr


def _top_eigenvector(rho: np.ndarray) -> tuple[np.ndarray, float]:
    eigvals, eigvecs = np.linalg.eigh(rho)
    vec = eigvecs[:, -1]
    # fix the global phase so reruns are bit-comparable
    anchor = int(np.argmax(np.abs(vec)))
    phase = vec[anchor] / abs(vec[anchor])
    return vec / phase, float(eigvals[-1])


def _iterate(program: _Program, psi0: np.ndarray, max_iterations: int, tol: float):
    psi = psi0
    top_eig = 0.0
    for itercount in range(1, max_iterations + 1):
        rho = program.solve(psi)
        nxt, top_eig = _top_eigenvector(rho)
        overlap = abs(np.vdot(nxt, psi))
        psi = nxt
        if 1 - overlap < tol:
            return True, psi, top_eig, itercount
    return False, psi, top_eig, max_iterations


def search(config: SearchConfig) -> SearchResult:
    """Run restarts until one converges; report the best by deviation."""
    program = _Program(config.dims)
    best: Optional[SearchResult] = None
    for restart in range(config.restarts):
        rng = np.random.default_rng(config.seed + restart)
        psi0 = random_pure_state(rng, math.prod(config.dims))
        try:
            fixed, psi, top_eig, iters = _iterate(
                program, psi0, config.max_iterations, config.tol
            )
        except SolverFailure:
            continue
        deviation = max_marginal_deviation(psi, config.dims)
        candidate = SearchResult(
            converged=fixed and deviation <= CONVERGED_DEVIATION,
            state=state_payload(psi, config.dims),
            max_marginal_deviation=deviation,
            top_eigenvalue=top_eig,
            iterations=iters,
            restarts_used=restart + 1,
        )
        if best is None or candidate.max_marginal_deviation < best.max_marginal_deviation:
            best = candidate
        if candidate.converged:
            return candidate
    if best is None:
        # every restart died in the solver; report the last seed's start
        rng = np.random.default_rng(config.seed + config.restarts - 1)
        psi0 = random_pure_state(rng, math.prod(config.dims))
        best = SearchResult(
            converged=False,
            state=state_payload(psi0, config.dims),
            max_marginal_deviation=max_marginal_deviation(psi0, config.dims),
            top_eigenvalue=0.0,
            iterations=0,
            restarts_used=config.restarts,
        )
    return best
