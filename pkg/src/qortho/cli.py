"""Command-line front end.

Four subcommands:

    qortho eval    evaluate one function at explicit arguments
    qortho verify  run one identity checker, exit 0/1 on pass/fail
    qortho sweep   run a seeded randomized sweep of one identity
    qortho table   tabulate expansion or connection coefficients as CSV

Exit codes: 0 = pass, 1 = a check verified false, 2 = invalid input
(hypothesis violation or malformed arguments).  Complex parameters are
entered as two flags (--alpha-re / --alpha-im, imaginary part defaulting
to 0).  Reports serialize to JSON or RFC-4180 CSV with complex values split
into _re/_im fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone

from .errors import DomainError, QOrthoError
from .hyper import PhiSpec, phi_series
from .qcore import QBase, TruncationPolicy, qpoch_finite, qpoch_infinite
from .qfun import (
    ParamSet4,
    ReducedParams,
    big_c_coeffs,
    big_c_eval,
    connection_coeffs,
    cq_ultraspherical,
    expansion_weights,
    h_norm,
    phi_eval,
    weight_omega,
)
from .quad import QuadratureSpec
from .verify import (
    IdentityId,
    SweepSpec,
    VerificationReport,
    _CHECKERS,
    run_sweep,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2

_COMPLEX_PARAMS = ("alpha", "beta", "gamma", "delta", "a", "b", "c", "d", "s", "t", "x", "y", "z")

CSV_FIELDS = (
    "identity", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
    "abs_residual", "rel_residual", "tolerance", "passed", "flags",
)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=float, help="base q (real, |q| < 1)")
    for name in _COMPLEX_PARAMS:
        parser.add_argument(f"--{name}-re", type=float, default=None)
        parser.add_argument(f"--{name}-im", type=float, default=0.0)
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--theta", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--nodes", type=int, default=256)
    parser.add_argument("--max-nodes", type=int, default=8192)
    parser.add_argument("--max-terms", type=int, default=10000)
    parser.add_argument("--rel-tol", type=float, default=1e-14,
                        help="truncation tolerance for products and series")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qortho",
        description="Evaluate and numerically verify q-orthogonal function identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one function")
    p_eval.add_argument(
        "function",
        choices=("big_c", "phi", "ultra", "weight", "h", "qpoch", "phi_series"),
    )
    _add_param_flags(p_eval)
    p_eval.add_argument("--inf", action="store_true", help="qpoch: infinite product")
    p_eval.add_argument("--num", action="append", default=[],
                        help="phi_series numerator parameter RE[,IM] (repeatable)")
    p_eval.add_argument("--den", action="append", default=[],
                        help="phi_series denominator parameter RE[,IM] (repeatable)")
    _add_output_flags(p_eval)

    p_verify = sub.add_parser("verify", help="run one identity check")
    p_verify.add_argument("--identity", required=True,
                          choices=[i.value for i in IdentityId])
    _add_param_flags(p_verify)
    _add_output_flags(p_verify)

    p_sweep = sub.add_parser("sweep", help="run a seeded randomized sweep")
    p_sweep.add_argument("--identity", required=True,
                         choices=[i.value for i in IdentityId])
    p_sweep.add_argument("--draws", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, required=True)
    p_sweep.add_argument("--m-max", type=int, default=6)
    p_sweep.add_argument("--n-max", type=int, default=6)
    _add_param_flags(p_sweep)
    _add_output_flags(p_sweep)

    p_table = sub.add_parser("table", help="tabulate coefficients as CSV")
    p_table.add_argument("what", choices=("big_c", "connection", "ultra"))
    _add_param_flags(p_table)
    p_table.add_argument("--n-max", type=int, default=None, help="degree cap")
    p_table.add_argument("--out", default=None)

    return parser


def _get_complex(args, name: str):
    re = getattr(args, f"{name.replace('-', '_')}_re")
    if re is None:
        return None
    return complex(re, getattr(args, f"{name.replace('-', '_')}_im"))


def _require(value, flag: str):
    if value is None:
        raise DomainError(f"missing required flag {flag}")
    return value


def _paramset(args) -> ParamSet4:
    return ParamSet4(
        _require(_get_complex(args, "alpha"), "--alpha-re"),
        _require(_get_complex(args, "beta"), "--beta-re"),
        _require(_get_complex(args, "gamma"), "--gamma-re"),
        _require(_get_complex(args, "delta"), "--delta-re"),
    )


def _policy(args) -> TruncationPolicy:
    return TruncationPolicy(rel_tol=args.rel_tol, max_terms=args.max_terms)


def _qspec(args) -> QuadratureSpec:
    return QuadratureSpec(nodes=args.nodes, max_nodes=args.max_nodes)


def _parse_listed_complex(raw: str) -> complex:
    parts = raw.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise DomainError(f"cannot parse complex parameter {raw!r}, expected RE[,IM]")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_safe(value):
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _report_json(report: VerificationReport) -> str:
    return json.dumps(_json_safe(report.to_record()), indent=2)


def _reports_csv(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, quoting=csv.QUOTE_MINIMAL)
    writer.writeheader()
    for report in reports:
        rec = report.to_record()
        rec["inputs"] = json.dumps(_json_safe(rec["inputs"]), sort_keys=True)
        rec["flags"] = json.dumps(rec["flags"])
        writer.writerow(rec)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    policy = _policy(args)
    q = _require(args.q, "--q")
    metadata = {"rel_tol": policy.rel_tol, "max_terms": policy.max_terms}
    fn = args.function

    if fn == "big_c":
        value = big_c_eval(
            _require(args.n, "--n"), _require(args.theta, "--theta"),
            _paramset(args), q,
        )
    elif fn == "phi":
        value = phi_eval(
            _require(args.n, "--n"),
            _require(_get_complex(args, "x"), "--x-re"),
            _require(_get_complex(args, "y"), "--y-re"),
            _paramset(args), q,
        )
    elif fn == "ultra":
        value = cq_ultraspherical(
            _require(args.n, "--n"), _require(args.theta, "--theta"),
            _require(_get_complex(args, "beta"), "--beta-re"), q,
        )
    elif fn == "weight":
        value = weight_omega(
            _require(args.theta, "--theta"), _paramset(args), q, policy
        )
    elif fn == "h":
        value = h_norm(
            _require(args.n, "--n"),
            _require(_get_complex(args, "a"), "--a-re"), q, policy,
        )
    elif fn == "qpoch":
        a = _require(_get_complex(args, "a"), "--a-re")
        if args.inf:
            value = qpoch_infinite(a, q, policy)
        else:
            value = qpoch_finite(a, q, _require(args.n, "--n"))
    elif fn == "phi_series":
        nums = tuple(_parse_listed_complex(v) for v in args.num)
        dens = tuple(_parse_listed_complex(v) for v in args.den)
        z = _require(_get_complex(args, "z"), "--z-re")
        value = phi_series(PhiSpec(nums, dens, QBase.coerce(q), z), policy)
        metadata["numerators"] = len(nums)
        metadata["denominators"] = len(dens)
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown function {fn}")

    record = {
        "function": fn,
        "value_re": value.real,
        "value_im": value.imag,
        "metadata": metadata,
    }
    _emit(json.dumps(_json_safe(record), indent=2), args.out)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _checker_kwargs(identity: IdentityId, args) -> dict:
    """Assemble explicit checker arguments from CLI flags, validating the
    identity's hypotheses (ParamSet4 / ReducedParams constructors and the
    checkers themselves raise DomainError naming the violated bound)."""
    policy = _policy(args)
    qspec = _qspec(args)
    q = _require(args.q, "--q")
    tol = args.tol
    if identity == IdentityId.THM_1_1:
        return {"p": _paramset(args), "q": q, "m": _require(args.m, "--m"),
                "n": _require(args.n, "--n"), "qspec": qspec, "policy": policy,
                "tolerance": tol}
    if identity == IdentityId.THM_1_2:
        return {"p": _paramset(args), "s": _require(_get_complex(args, "s"), "--s-re"),
                "t": _require(_get_complex(args, "t"), "--t-re"), "q": q,
                "qspec": qspec, "policy": policy, "tolerance": tol}
    if identity == IdentityId.THM_1_3:
        return {"r": ReducedParams(_require(_get_complex(args, "a"), "--a-re"),
                                   _require(_get_complex(args, "b"), "--b-re")),
                "gamma": _require(_get_complex(args, "gamma"), "--gamma-re"),
                "delta": _require(_get_complex(args, "delta"), "--delta-re"),
                "q": q, "m": _require(args.m, "--m"), "n": _require(args.n, "--n"),
                "qspec": qspec, "policy": policy, "tolerance": tol}
    if identity == IdentityId.PROP_3_1:
        return {"r": ReducedParams(_require(_get_complex(args, "a"), "--a-re"),
                                   _require(_get_complex(args, "b"), "--b-re")),
                "gamma": _require(_get_complex(args, "gamma"), "--gamma-re"),
                "delta": _require(_get_complex(args, "delta"), "--delta-re"),
                "q": q, "m": _require(args.m, "--m"), "policy": policy,
                "tolerance": tol}
    if identity == IdentityId.PROP_2_1_2:
        return {"p": _paramset(args), "q": q, "n": _require(args.n, "--n"),
                "theta": args.theta if args.theta is not None else 0.0,
                "tolerance": tol}
    if identity == IdentityId.PROP_2_1_3:
        kwargs = {"p": _paramset(args), "q": q, "tolerance": tol}
        if args.n is not None:
            kwargs["n"] = args.n
        return kwargs
    if identity == IdentityId.PROP_2_2:
        return {"p": _paramset(args), "q": q, "tolerance": tol}
    if identity == IdentityId.PROP_2_4:
        return {"p": _paramset(args), "q": q, "n": _require(args.n, "--n"),
                "x": _require(_get_complex(args, "x"), "--x-re"),
                "y": _require(_get_complex(args, "y"), "--y-re"),
                "policy": policy, "tolerance": tol}
    if identity == IdentityId.ROGERS_6W5:
        return {"a": _require(_get_complex(args, "a"), "--a-re"),
                "b": _require(_get_complex(args, "b"), "--b-re"),
                "c": _require(_get_complex(args, "c"), "--c-re"),
                "d": _require(_get_complex(args, "d"), "--d-re"),
                "q": q, "policy": policy, "tolerance": tol}
    if identity == IdentityId.QBINOMIAL:
        return {"a": _require(_get_complex(args, "a"), "--a-re"),
                "z": _require(_get_complex(args, "z"), "--z-re"),
                "q": q, "policy": policy, "tolerance": tol}
    if identity == IdentityId.ULTRA_ORTHO:
        return {"beta": _require(_get_complex(args, "beta"), "--beta-re"), "q": q,
                "m": _require(args.m, "--m"), "n": _require(args.n, "--n"),
                "qspec": qspec, "policy": policy, "tolerance": tol}
    raise DomainError(f"unknown identity {identity}")


def _cmd_verify(args) -> int:
    identity = IdentityId(args.identity)
    kwargs = _checker_kwargs(identity, args)
    report = _CHECKERS[identity](**kwargs)
    if args.format == "csv":
        _emit(_reports_csv([report]), args.out)
    else:
        _emit(_report_json(report), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _cmd_sweep(args) -> int:
    identity = IdentityId(args.identity)
    spec = SweepSpec(seed=args.seed, draws=args.draws, m_max=args.m_max, n_max=args.n_max)
    reports = run_sweep(identity, spec, tolerance=args.tol)
    all_passed = all(r.passed for r in reports)
    if args.format == "csv":
        _emit(_reports_csv(reports), args.out)
    else:
        payload = {
            "identity": identity.value,
            "seed": args.seed,
            "draws": args.draws,
            "all_passed": all_passed,
            "reports": [_json_safe(r.to_record()) for r in reports],
            # excluded from the determinism contract
            "generated_at": datetime.now(timezone.utc).isoformat(),
        }
        _emit(json.dumps(payload, indent=2), args.out)
    if all_passed:
        return EXIT_PASS
    first_bad = next(i for i, r in enumerate(reports) if not r.passed)
    print(
        f"draw {first_bad} failed: inputs {json.dumps(_json_safe(_flat(reports[first_bad])))}",
        file=sys.stderr,
    )
    return EXIT_FAIL


def _flat(report: VerificationReport) -> dict:
    return report.to_record()["inputs"]


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def _cmd_table(args) -> int:
    q = _require(args.q, "--q")
    rows: list[tuple[int, int, float, float]] = []
    if args.what == "big_c":
        n_max = _require(args.n_max, "--n-max")
        p = _paramset(args)
        for n in range(n_max + 1):
            coefs = big_c_coeffs(n, p, q)
            for k, ck in enumerate(coefs):
                rows.append((n, k, ck.real, ck.imag))
    elif args.what == "connection":
        m = _require(args.m, "--m")
        r = ReducedParams(
            _require(_get_complex(args, "a"), "--a-re"),
            _require(_get_complex(args, "b"), "--b-re"),
        )
        gamma = _require(_get_complex(args, "gamma"), "--gamma-re")
        delta = _require(_get_complex(args, "delta"), "--delta-re")
        coefs = connection_coeffs(m, r, gamma * delta, q)
        for k, ck in enumerate(coefs):
            rows.append((m, k, ck.real, ck.imag))
    else:  # ultra
        n_max = _require(args.n_max, "--n-max")
        beta = _require(_get_complex(args, "beta"), "--beta-re")
        for n in range(n_max + 1):
            w = expansion_weights(n, complex(beta), complex(beta), QBase.coerce(q))
            for k, wk in enumerate(w):
                rows.append((n, k, wk.real, wk.imag))

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("n", "k", "coefficient_re", "coefficient_im"))
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_PASS
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "table":
            return _cmd_table(args)
    except QOrthoError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_INVALID  # pragma: no cover - unreachable


if __name__ == "__main__":
    sys.exit(main())
