"""Exact LP feasibility tests.

The simplex is checked against hand-solved miniature programs before any
code-parameter verdict is trusted; verdicts are then frozen for known
parameter sets and cross-checked against the analytic screen over the
whole small-dimension grid.
"""

from fractions import Fraction

import pytest

from qweight import (
    CheckResult,
    CodeParams,
    LinearConstraint,
    LpModel,
    build_lp,
    check_ame_uniform,
    check_code_params,
    check_code_params_either_parity,
    lp_feasible,
    lp_result_json_dict,
    scott_bound,
)
from qweight.enumerators import EnumeratorVector, shadow_transform


def _model(rows, n_vars):
    constraints = tuple(
        LinearConstraint(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))
        for coeffs, rel, rhs in rows
    )
    return LpModel(params=None, n_vars=n_vars, constraints=constraints)


def test_params_validation():
    with pytest.raises(ValueError):
        CodeParams(0, 1, 1, 2)
    with pytest.raises(ValueError):
        CodeParams(4, 1, 6, 2)  # d > n+1
    with pytest.raises(ValueError):
        CodeParams(2, 5, 2, 2)  # K > D**n
    with pytest.raises(ValueError):
        CodeParams(4, 1, 3, 1)  # D < 2
    with pytest.raises(ValueError):
        CodeParams(4, 2, 2, 3, stabilizer_parity="typeI")  # needs D=2
    with pytest.raises(ValueError):
        CodeParams(4, 3, 2, 2, stabilizer_parity="typeII")  # K not 2-power
    with pytest.raises(ValueError):
        CodeParams(4, 2, 2, 2, self_dual_odd_shadow=True)  # needs K=1
    with pytest.raises(ValueError):
        CodeParams(4, 1, 2, 2, stabilizer_parity="bogus")
    assert CodeParams(4, 1, 2, 2).pure  # K=1 implies pure


def test_simplex_hand_solved_equalities():
    m = _model([((1, 1), "eq", 2), ((1, -1), "eq", 0)], 2)
    r = lp_feasible(m)
    assert r.feasible
    assert r.witness == (Fraction(1), Fraction(1))
    assert m.check_vector(r.witness)


def test_simplex_hand_solved_infeasible():
    m = _model([((1, 1), "eq", 1), ((1, 1), "eq", 2)], 2)
    assert not lp_feasible(m).feasible

    m = _model([((1, 1), "eq", -1)], 2)  # needs a negative variable
    assert not lp_feasible(m).feasible

    m = _model([((1, 1), "eq", 1), ((1, 0), "ge", 2)], 2)
    assert not lp_feasible(m).feasible


def test_simplex_hand_solved_inequalities():
    m = _model([((1, -1), "ge", 1)], 2)
    r = lp_feasible(m)
    assert r.feasible and m.check_vector(r.witness)

    m = _model([((-1, -1), "ge", -5), ((1, 1), "eq", 3)], 2)
    r = lp_feasible(m)
    assert r.feasible and m.check_vector(r.witness)

    m = _model([((1, 2), "ge", 4), ((2, 1), "ge", 4), ((1, 1), "eq", 3)], 2)
    r = lp_feasible(m)
    assert r.feasible and m.check_vector(r.witness)


def test_check_vector_rejects():
    m = _model([((1, 1), "eq", 2)], 2)
    assert m.check_vector((1, 1))
    assert not m.check_vector((2, 1))
    assert not m.check_vector((3, -1))  # negative entry
    assert not m.check_vector((2,))  # wrong arity


def test_build_lp_structure():
    params = CodeParams(4, 1, 3, 2)
    model = build_lp(params)
    assert model.n_vars == 5
    # 1 normalization + 5 B-rows + 5 shadow rows + 2 purity pins.
    assert len(model.constraints) == 13
    assert model.constraints[0].coeffs == (1, 0, 0, 0, 0)
    assert model.constraints[0].rhs == 1
    b_rows = model.constraints[1:6]
    assert [row.rel for row in b_rows] == ["eq", "eq", "eq", "ge", "ge"]
    s_rows = model.constraints[6:11]
    assert all(row.rel == "ge" for row in s_rows)
    assert all(row.rhs == 0 for row in s_rows)


def test_build_lp_distance_one_edge():
    model = build_lp(CodeParams(3, 1, 1, 2))
    # d=1: only the i=0 B-row stays an equality, and no purity pins.
    rels = [row.rel for row in model.constraints[1:5]]
    assert rels == ["eq", "ge", "ge", "ge"]
    assert len(model.constraints) == 9
    assert lp_feasible(model).feasible


def test_known_verdicts():
    r = check_code_params(CodeParams(4, 1, 3, 2))
    assert r.verdict == "excluded"
    assert r.result.witness is None
    assert r.result.iterations == 0  # presolve alone settles it

    r = check_code_params(CodeParams(5, 1, 3, 2))
    assert r.verdict == "undecided"
    assert r.result.witness == (1, 0, 0, 10, 15, 6)

    assert check_code_params(CodeParams(7, 1, 4, 2)).verdict == "undecided"
    assert check_code_params(CodeParams(6, 1, 4, 2)).verdict == "undecided"
    assert check_code_params(CodeParams(8, 1, 5, 3)).verdict == "excluded"

    r = check_code_params(CodeParams(2, 1, 2, 2))
    assert r.verdict == "undecided"
    assert r.result.witness == (1, 0, 3)


def test_witness_satisfies_model():
    for args in [(5, 1, 3, 2), (6, 1, 4, 2), (7, 1, 4, 2), (5, 2, 3, 2)]:
        params = CodeParams(*args)
        model = build_lp(params)
        result = lp_feasible(model)
        assert result.feasible
        assert model.check_vector(result.witness)


def test_five_qubit_code_witness_matches_real_enumerator():
    # The LP lands on 4x the five-qubit code's stabilizer weight
    # distribution, i.e. the actual projector enumerator.
    r = check_code_params(CodeParams(5, 2, 3, 2))
    assert r.result.witness == (4, 0, 0, 0, 60, 0)


def test_determinism():
    params = CodeParams(7, 1, 4, 2)
    first = lp_feasible(build_lp(params))
    second = lp_feasible(build_lp(params))
    assert first == second
    assert first.iterations == second.iterations


def test_stabilizer_parity_rows():
    model = build_lp(CodeParams(5, 1, 3, 2, stabilizer_parity="typeI"))
    row = model.constraints[-1]
    assert row.coeffs == (1, 0, 1, 0, 1, 0)
    assert row.rel == "eq" and row.rhs == 16  # 2**(5-0-1)
    model = build_lp(CodeParams(5, 1, 3, 2, stabilizer_parity="typeII"))
    assert model.constraints[-1].rhs == 32  # 2**(5-0)
    model = build_lp(CodeParams(5, 2, 3, 2, stabilizer_parity="typeI"))
    assert model.constraints[-1].rhs == 8  # 2**(5-1-1)


def test_stabilizer_parity_verdicts():
    # Type I admits the perfect five-site enumerator (even-weight sum 16);
    # type II pins the sum to 32 and becomes infeasible.
    r = check_code_params(CodeParams(5, 1, 3, 2, stabilizer_parity="typeI"))
    assert r.verdict == "undecided"
    assert r.result.witness == (1, 0, 0, 10, 15, 6)
    r = check_code_params(CodeParams(5, 1, 3, 2, stabilizer_parity="typeII"))
    assert r.verdict == "excluded"
    either = check_code_params_either_parity(CodeParams(5, 1, 3, 2))
    assert either.verdict == "undecided" and either.result.feasible


def test_self_dual_shadow_pins():
    params = CodeParams(5, 1, 3, 2, self_dual_odd_shadow=True)
    model = build_lp(params)
    s_rows = model.constraints[7:13]
    # n - i odd at i = 0, 2, 4 for n = 5.
    assert [row.rel for row in s_rows] == ["eq", "ge", "eq", "ge", "eq", "ge"]
    r = check_code_params(params)
    assert r.verdict == "undecided"
    a = EnumeratorVector(n=5, D=2, kind="A", coeffs=r.result.witness)
    s = shadow_transform(a)
    assert s.coeffs[0] == 0 and s.coeffs[2] == 0 and s.coeffs[4] == 0


def test_json_dict_shape():
    params = CodeParams(5, 1, 3, 2)
    r = check_code_params(params)
    blob = lp_result_json_dict(params, r.result)
    assert blob["feasible"] is True
    assert blob["witness"] == ["1", "0", "0", "10", "15", "6"]
    assert blob["params"]["n"] == 5 and blob["params"]["pure"] is True

    r = check_code_params(CodeParams(4, 1, 3, 2))
    blob = lp_result_json_dict(CodeParams(4, 1, 3, 2), r.result)
    assert blob["feasible"] is False and blob["witness"] is None


def test_agreement_with_analytic_screen_full_grid():
    # Whenever the closed-form screen excludes a uniform profile, the LP
    # for the matching pure distance floor(n/2)+1 parameters must be
    # infeasible too.
    for D in (2, 3, 4, 5):
        for n in range(2, scott_bound(D)[1] + 1):
            if not check_ame_uniform(n, D).excluded:
                continue
            params = CodeParams(n, 1, n // 2 + 1, D)
            verdict = check_code_params(params).verdict
            assert verdict == "excluded", (n, D)
