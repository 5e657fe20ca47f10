"""Command-line surface: exact transforms, existence screens, LP checks.

Exit status: 0 on any successful computation regardless of verdict,
2 on usage errors, 3 on validation or resource errors. Verdicts live in
the emitted JSON/CSV, never in the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import ame, enumerators, qecclp, states
from .ame import DimensionProfile, ResourceLimitError
from .exactmath import format_rational, krawtchouk, krawtchouk_like


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _parse_dims(text: str) -> DimensionProfile:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse dimension list {text!r}") from exc
    return DimensionProfile(dims)


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


# ---------------------------------------------------------------------------
# Handlers


def _cmd_krawtchouk(args) -> int:
    has_gamma = args.gamma is not None
    has_delta = args.delta is not None
    if has_gamma != has_delta:
        raise ValueError("--gamma and --delta must be given together")
    if has_gamma:
        print(krawtchouk_like(args.m, args.k, args.n, args.gamma, args.delta))
    else:
        print(krawtchouk(args.m, args.k, args.n))
    return 0


_TRANSFORM_OPS = {
    "macwilliams": enumerators.macwilliams,
    "shadow": enumerators.shadow_transform,
    "unitary": enumerators.unitary_from_A,
    "from-unitary": enumerators.A_from_unitary,
}


def _cmd_transform(args) -> int:
    vector = enumerators.from_json_dict(_load_json(args.infile))
    result = _TRANSFORM_OPS[args.op](vector)
    _emit(enumerators.to_json_dict(result))
    return 0


def _verdict_json(verdict: ame.AmeVerdict) -> dict:
    return {
        "n": verdict.profile.n,
        "D": verdict.profile.dims[0],
        "scott_violated": verdict.scott_violated,
        "negative_A_index": (-1 if verdict.negative_A_index is None
                             else verdict.negative_A_index),
        "negative_shadow_index": (-1 if verdict.negative_shadow_index is None
                                  else verdict.negative_shadow_index),
        "min_shadow_coeff": format_rational(verdict.min_shadow_coeff),
        "excluded": verdict.excluded,
        "excluded_by": list(verdict.excluded_by),
    }


def _cmd_ame_check(args) -> int:
    _emit(_verdict_json(ame.check_ame_uniform(args.n, args.D)))
    return 0


def _cmd_ame_scan(args) -> int:
    rows = ame.scan_grid(args.dmax)
    text = ame.scan_rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_ame_mixed(args) -> int:
    scan = ame.mixed_shadow_scan(_parse_dims(args.dims))
    _emit({
        "dims": list(scan.profile.dims),
        "min_value": format_rational(scan.min_value),
        "witness_T": scan.witness_T,
        "verdict": "excluded" if scan.excluded else "open",
    })
    return 0


def _cmd_lp(args) -> int:
    parity = {None: "none", "I": "typeI", "II": "typeII"}[args.stabilizer_parity]
    params = qecclp.CodeParams(
        n=args.n, K=args.k, d=args.d, D=args.q,
        pure=args.pure, stabilizer_parity=parity,
        self_dual_odd_shadow=args.self_dual,
    )
    result = qecclp.lp_feasible(qecclp.build_lp(params))
    _emit(qecclp.lp_result_json_dict(params, result))
    return 0


def _cmd_state_verify(args) -> int:
    psi = states.state_from_json_dict(_load_json(args.file))
    report = {
        "dims": list(psi.profile.dims),
        "norm": psi.norm,
        "tol": args.tol,
    }
    if args.ame:
        deviation = states.max_marginal_deviation(psi)
        report["max_marginal_deviation"] = deviation
        report["is_ame"] = deviation <= args.tol
    if args.distance:
        report["distance"] = states.code_distance(states.density(psi), K=1)
    _emit(report)
    return 0


def _cmd_state_enum(args) -> int:
    psi = states.state_from_json_dict(_load_json(args.file))
    rho = states.density(psi)
    a_vec, b_vec = states.shor_laflamme_from_operators(rho, rho)
    aprime, _ = states.unitary_enum_from_operators(rho, rho)
    _emit({
        "dims": list(psi.profile.dims),
        "D": psi.profile.uniform,
        "A": [float(v) for v in a_vec],
        "B": [float(v) for v in b_vec],
        "Aprime": [float(v) for v in aprime],
    })
    return 0


def _cmd_state_phi2333(args) -> int:
    doc = states.state_to_json_dict(states.phi_2333())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(doc, handle, indent=2)
            handle.write("\n")
    else:
        _emit(doc)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qweight",
        description="Exact quantum weight enumerators, AME existence screens, "
                    "and QECC linear-programming feasibility.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("krawtchouk", help="evaluate a (generalized) Krawtchouk value")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int)
    p.add_argument("--delta", type=int)
    p.set_defaults(func=_cmd_krawtchouk)

    p = sub.add_parser("transform", help="apply an exact enumerator transform")
    p.add_argument("--in", dest="infile", required=True, metavar="ENUM_JSON")
    p.add_argument("--op", required=True, choices=sorted(_TRANSFORM_OPS))
    p.set_defaults(func=_cmd_transform)

    ame_parser = sub.add_parser("ame", help="AME existence screens")
    ame_sub = ame_parser.add_subparsers(dest="ame_command", required=True)

    p = ame_sub.add_parser("check", help="screens for a uniform profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.set_defaults(func=_cmd_ame_check)

    p = ame_sub.add_parser("scan", help="grid scan up to a maximum dimension")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--out", metavar="CSV")
    p.set_defaults(func=_cmd_ame_scan)

    p = ame_sub.add_parser("mixed", help="shadow scan for a mixed profile")
    p.add_argument("--dims", required=True, metavar="D1,D2,...")
    p.set_defaults(func=_cmd_ame_mixed)

    p = sub.add_parser("lp", help="exact LP feasibility for ((n,K,d))_D")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True, help="local dimension D")
    p.add_argument("--pure", action="store_true")
    p.add_argument("--stabilizer-parity", choices=["I", "II"])
    p.add_argument("--self-dual", dest="self_dual", action="store_true")
    p.set_defaults(func=_cmd_lp)

    state_parser = sub.add_parser("state", help="dense state operations")
    state_sub = state_parser.add_subparsers(dest="state_command", required=True)

    p = state_sub.add_parser("verify", help="norm/AME/distance report")
    p.add_argument("--file", required=True, metavar="STATE_JSON")
    p.add_argument("--ame", action="store_true")
    p.add_argument("--distance", action="store_true")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_state_verify)

    p = state_sub.add_parser("enum", help="measure A, B, A' from a state")
    p.add_argument("--file", required=True, metavar="STATE_JSON")
    p.set_defaults(func=_cmd_state_enum)

    p = state_sub.add_parser("phi2333", help="emit the 2x3x3x3 AME state")
    p.add_argument("--out", metavar="STATE_JSON")
    p.set_defaults(func=_cmd_state_phi2333)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 3
    except (ValueError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
