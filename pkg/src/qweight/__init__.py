"""Exact quantum weight enumerators, AME exclusion screens, and QECC LP bounds."""

from .ame import (
    AmeVerdict,
    DimensionProfile,
    MixedScanResult,
    ResourceLimitError,
    ame_purity,
    ame_shadow_coeffs,
    ame_shor_laflamme,
    ame_unitary_coeffs,
    check_ame_mixed,
    check_ame_uniform,
    mixed_purity,
    mixed_shadow_scan,
    mixed_shadow_values,
    scan_grid,
    scan_rows_to_csv,
    scott_bound,
)
from .enumerators import (
    A_from_unitary,
    EnumeratorKind,
    EnumeratorVector,
    KindError,
    dual_unitary,
    enumerator_from_json,
    enumerator_to_json,
    macwilliams,
    macwilliams_via_krawtchouk,
    shadow_from_unitary,
    shadow_from_unitary_via_krawtchouk,
    shadow_transform,
    shadow_via_krawtchouk,
    unitary_from_A,
)
from .exactmath import (
    Rational,
    binomial,
    format_rational,
    krawtchouk,
    krawtchouk_like,
    parse_rational,
    poly_substitute,
)
from .qecclp import (
    CheckResult,
    CodeParams,
    LinearConstraint,
    LpModel,
    LpResult,
    build_lp,
    check_code_params,
    check_code_params_either_parity,
    lp_feasible,
    lp_result_json_dict,
)
from .states import (
    DenseOperator,
    LocalErrorBasis,
    StateVector,
    WeightedErrorIndex,
    channel_partial_trace,
    code_distance,
    density,
    enumerate_errors,
    is_ame,
    lu_branch_map_check,
    max_marginal_deviation,
    operator_from_json_dict,
    operator_to_json_dict,
    partial_trace,
    phi_2333,
    phi_2333_coefficients,
    shadow_coeffs_brute,
    shor_laflamme_from_operators,
    state_from_json_dict,
    state_to_json_dict,
    tensor_with_identity,
    unitary_enum_from_operators,
    verify_code,
)

__version__ = "0.1.0"
