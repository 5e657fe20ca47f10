"""Exact linear-programming feasibility for hypothetical ((n,K,d))_D codes.

The model variables are the Shor-Laflamme coefficients A_0..A_n, all
implicitly non-negative. Rows encode the enumerator relations a code
with the given parameters would have to satisfy; feasibility is decided
by a phase-1 simplex over exact rationals with Bland's pivot rule, so
verdicts are deterministic and never subject to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import format_rational, krawtchouk_like

try:  # optional fast exact rationals; results are identical
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_PARITY_VALUES = ("none", "typeI", "typeII")


@dataclass(frozen=True)
class CodeParams:
    """Parameters of a hypothetical ((n, K, d))_D code."""

    n: int
    K: int
    d: int
    D: int
    pure: bool = False
    stabilizer_parity: str = "none"
    self_dual_odd_shadow: bool = False

    def __post_init__(self):
        if self.n < 1 or self.K < 1 or self.d < 1 or self.D < 2:
            raise ValueError(f"invalid code parameters {self}")
        if self.d > self.n + 1:
            raise ValueError(f"distance d={self.d} exceeds n+1={self.n + 1}")
        if self.K > self.D ** self.n:
            raise ValueError(f"K={self.K} exceeds the full space dimension")
        if self.K == 1:
            # K=1 subspaces only count as codes when pure.
            object.__setattr__(self, "pure", True)
        if self.stabilizer_parity not in _PARITY_VALUES:
            raise ValueError(
                f"stabilizer_parity must be one of {_PARITY_VALUES}"
            )
        if self.stabilizer_parity != "none":
            if self.D != 2 or self.K & (self.K - 1):
                raise ValueError(
                    "stabilizer parity constraints need D=2 and K a power of two"
                )
        if self.self_dual_odd_shadow and self.K != 1:
            raise ValueError("the self-dual shadow condition requires K=1")


@dataclass(frozen=True)
class LinearConstraint:
    """coeffs . A  (= | >=)  rhs, with every A_k >= 0 implicit."""

    coeffs: tuple[Fraction, ...]
    rel: str  # "eq" | "ge"
    rhs: Fraction

    def satisfied_by(self, vec: Sequence[Fraction]) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, vec))
        return lhs == self.rhs if self.rel == "eq" else lhs >= self.rhs


@dataclass(frozen=True)
class LpModel:
    params: Optional[CodeParams]
    n_vars: int
    constraints: tuple[LinearConstraint, ...]

    def check_vector(self, vec: Sequence) -> bool:
        """Exact re-substitution check, including non-negativity."""
        vec = [Fraction(v) for v in vec]
        if len(vec) != self.n_vars:
            return False
        if any(v < 0 for v in vec):
            return False
        return all(row.satisfied_by(vec) for row in self.constraints)


@dataclass(frozen=True)
class LpResult:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]]
    iterations: int


@dataclass(frozen=True)
class CheckResult:
    verdict: str  # "excluded" | "undecided"
    result: LpResult


def build_lp(params: CodeParams) -> LpModel:
    """Rows every enumerator of a ((n,K,d))_D code must satisfy.

    B- and shadow-family rows are scaled by D**n so all coefficients are
    integers: the K̃ combinations defining B_i and S_i are substituted in
    exactly.
    """
    n, K, d, D = params.n, params.K, params.d, params.D
    Dn = D ** n
    rows: list[LinearConstraint] = []

    def unit(i):
        return tuple(Fraction(1 if k == i else 0) for k in range(n + 1))

    rows.append(LinearConstraint(unit(0), "eq", Fraction(K * K)))

    # K * B_i - A_i, with B_i expanded through the Krawtchouk-like sum.
    for i in range(n + 1):
        coeffs = tuple(
            Fraction(K * krawtchouk_like(i, k, n, 1, D * D - 1)
                     - (Dn if k == i else 0))
            for k in range(n + 1)
        )
        rel = "eq" if i < d else "ge"
        rows.append(LinearConstraint(coeffs, rel, Fraction(0)))

    # Shadow coefficients S_i >= 0 (pinned to zero for a self-dual code
    # at the indices i = n - j with j odd).
    for i in range(n + 1):
        coeffs = tuple(
            Fraction((-1) ** k * krawtchouk_like(i, k, n, D - 1, D + 1))
            for k in range(n + 1)
        )
        pin_zero = params.self_dual_odd_shadow and (n - i) % 2 == 1
        rows.append(LinearConstraint(coeffs, "eq" if pin_zero else "ge",
                                     Fraction(0)))

    if params.pure:
        for i in range(1, d):
            rows.append(LinearConstraint(unit(i), "eq", Fraction(0)))

    if params.stabilizer_parity != "none":
        log2k = K.bit_length() - 1
        exponent = n - log2k - (1 if params.stabilizer_parity == "typeI" else 0)
        rhs = Fraction(2) ** exponent
        coeffs = tuple(
            Fraction(1 if k % 2 == 0 else 0) for k in range(n + 1)
        )
        rows.append(LinearConstraint(coeffs, "eq", rhs))

    return LpModel(params=params, n_vars=n + 1, constraints=tuple(rows))


# ---------------------------------------------------------------------------
# Exact phase-1 simplex


def _presolve(rows, n_vars):
    """Pin variables forced by singleton equality rows.

    Returns (fixed: dict var->value, remaining rows over all vars,
    feasible: bool). Substitution cascades until no singleton equality
    remains.
    """
    work = [[list(r.coeffs), r.rel, r.rhs] for r in rows]
    fixed: dict[int, Fraction] = {}
    changed = True
    while changed:
        changed = False
        kept = []
        for coeffs, rel, rhs in work:
            support = [k for k, c in enumerate(coeffs) if c]
            if not support:
                if rel == "eq" and rhs != 0:
                    return fixed, [], False
                if rel == "ge" and rhs > 0:
                    return fixed, [], False
                continue  # trivially satisfied row
            if rel == "eq" and len(support) == 1:
                k = support[0]
                value = rhs / coeffs[k]
                if value < 0:
                    return fixed, [], False
                if k in fixed:
                    if fixed[k] != value:
                        return fixed, [], False
                else:
                    fixed[k] = value
                changed = True
                continue
            kept.append([coeffs, rel, rhs])
        if fixed and changed:
            for row in kept:
                coeffs, rel, rhs = row
                for k, value in fixed.items():
                    if coeffs[k]:
                        row[2] = row[2] - coeffs[k] * value
                        coeffs[k] = Fraction(0)
        work = kept
    return fixed, work, True


def lp_feasible(model: LpModel) -> LpResult:
    """Exact feasibility via phase-1 simplex with Bland's rule.

    Deterministic: identical models produce identical results, including
    the iteration count. The witness, when present, satisfies every row
    exactly.
    """
    fixed, rows, ok = _presolve(model.constraints, model.n_vars)
    if not ok:
        return LpResult(feasible=False, witness=None, iterations=0)

    free = [k for k in range(model.n_vars) if k not in fixed]
    col_of = {k: idx for idx, k in enumerate(free)}

    # Canonicalize rows to rhs >= 0 and collect slack/surplus/artificial
    # column requirements.
    canon = []
    for coeffs, rel, rhs in rows:
        dense = [coeffs[k] for k in free]
        if rhs < 0:
            dense = [-c for c in dense]
            rhs = -rhs
            rel = {"eq": "eq", "ge": "le"}[rel]
        if rel == "ge" and rhs == 0:
            dense = [-c for c in dense]
            rel = "le"
        canon.append((dense, rel, rhs))

    n_struct = len(free)
    n_extra = len(canon)  # one slack/surplus/artificial driver per row
    surplus_rows = [i for i, (_, rel, _) in enumerate(canon) if rel == "ge"]
    width = n_struct + n_extra + len(surplus_rows)

    tableau: list[list] = []
    basis: list[int] = []
    artificial_cols: set[int] = set()
    surplus_seen = 0
    for i, (dense, rel, rhs) in enumerate(canon):
        row = [_Q(c.numerator, c.denominator) for c in dense]
        row += [_Q(0)] * (width - n_struct)
        if rel == "le":
            col = n_struct + i
            row[col] = _Q(1)
        elif rel == "ge":
            surplus_col = n_struct + n_extra + surplus_seen
            surplus_seen += 1
            row[surplus_col] = _Q(-1)
            col = n_struct + i
            row[col] = _Q(1)
            artificial_cols.add(col)
        else:  # eq
            col = n_struct + i
            row[col] = _Q(1)
            artificial_cols.add(col)
        row.append(_Q(rhs.numerator, rhs.denominator))
        tableau.append(row)
        basis.append(col)

    rhs_col = width
    w_row = [_Q(0)] * (width + 1)
    for i, col in enumerate(basis):
        if col in artificial_cols:
            for j in range(width + 1):
                w_row[j] += tableau[i][j]

    iterations = 0
    while True:
        enter = -1
        for j in range(width):
            if j in artificial_cols:
                continue
            if w_row[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i, row in enumerate(tableau):
            coef = row[enter]
            if coef > 0:
                ratio = row[rhs_col] / coef
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # The phase-1 objective is a sum of non-negative variables,
            # so it cannot be unbounded below.
            raise RuntimeError("phase-1 simplex invariant violated")
        iterations += 1
        pivot_row = tableau[leave]
        pivot = pivot_row[enter]
        if pivot != 1:
            inv = 1 / pivot
            for j in range(width + 1):
                if pivot_row[j]:
                    pivot_row[j] *= inv
        for row in tableau + [w_row]:
            if row is pivot_row:
                continue
            factor = row[enter]
            if factor:
                for j in range(width + 1):
                    if pivot_row[j]:
                        row[j] -= factor * pivot_row[j]
        basis[leave] = enter

    if w_row[rhs_col] != 0:
        return LpResult(feasible=False, witness=None, iterations=iterations)

    values = dict(fixed)
    for k in free:
        values[k] = Fraction(0)
    for i, col in enumerate(basis):
        if col < n_struct:
            q = tableau[i][rhs_col]
            values[free[col]] = Fraction(int(q.numerator), int(q.denominator))
    witness = tuple(values[k] for k in range(model.n_vars))
    return LpResult(feasible=True, witness=witness, iterations=iterations)


def check_code_params(params: CodeParams) -> CheckResult:
    """Excluded iff the LP is infeasible; a feasible enumerator proves nothing."""
    result = lp_feasible(build_lp(params))
    return CheckResult(
        verdict="undecided" if result.feasible else "excluded",
        result=result,
    )


def check_code_params_either_parity(params: CodeParams) -> CheckResult:
    """Disjunctive stabilizer condition: feasible under type I or type II."""
    last = None
    for parity in ("typeI", "typeII"):
        trial = CodeParams(
            n=params.n, K=params.K, d=params.d, D=params.D,
            pure=params.pure, stabilizer_parity=parity,
            self_dual_odd_shadow=params.self_dual_odd_shadow,
        )
        last = check_code_params(trial)
        if last.result.feasible:
            return last
    return last


def lp_result_json_dict(params: CodeParams, result: LpResult) -> dict:
    return {
        "params": {
            "n": params.n,
            "K": params.K,
            "d": params.d,
            "D": params.D,
            "pure": params.pure,
            "stabilizer_parity": params.stabilizer_parity,
            "self_dual_odd_shadow": params.self_dual_odd_shadow,
        },
        "feasible": result.feasible,
        "witness": (None if result.witness is None
                    else [format_rational(v) for v in result.witness]),
    }
