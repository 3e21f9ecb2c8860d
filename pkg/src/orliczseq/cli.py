"""Command-line interface.

Subcommands mirror the library operations: norm, modular, classify, delta2,
dominate, embed, tail-index, covering, schauder-curve, chain.  Output is one
structured record (json) or a table (csv) on stdout, floats printed with 17
significant digits so values round-trip exactly.  Identical invocations
produce byte-identical output; the only randomness is the explicit --seed.

Exit codes: 0 success, 1 check failure (a witness or verification that does
not hold), 2 usage or parse error, 3 numeric failure (overflow, certificate
breakdown).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from .embeddings import (chain_embeddings, check_domination, covering_check,
                         embedding_constant, sample_ball, uniform_tail_index,
                         verify_embedding)
from .errors import (CertificateError, CertificateRefutedError,
                     CompositionError, ComputationOverflowError, DomainError,
                     PreconditionError)
from .functions import GeometricProbe, delta2_at_zero, parse_orlicz
from .luxemburg import DEFAULT_TOL_REL, luxemburg_norm, schauder_curve
from .spaces import (SeqVector, SpaceParams, classify, geometric_envelope,
                     modular, parse_weights)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dump_json(obj) -> str:
    """Minimal JSON emitter with deterministic key order and .17g floats."""
    out: list[str] = []

    def write(o) -> None:
        if o is None:
            out.append("null")
        elif o is True:
            out.append("true")
        elif o is False:
            out.append("false")
        elif isinstance(o, int):
            out.append(str(o))
        elif isinstance(o, float):
            out.append(_fmt(o))
        elif isinstance(o, str):
            out.append('"' + o.replace("\\", "\\\\").replace('"', '\\"') + '"')
        elif isinstance(o, dict):
            out.append("{")
            for i, (k, v) in enumerate(o.items()):
                if i:
                    out.append(", ")
                write(str(k))
                out.append(": ")
                write(v)
            out.append("}")
        elif isinstance(o, (list, tuple)):
            out.append("[")
            for i, v in enumerate(o):
                if i:
                    out.append(", ")
                write(v)
            out.append("]")
        else:
            raise TypeError(f"cannot serialize {type(o).__name__}")

    write(obj)
    return "".join(out)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(args, record: dict, csv_header=None, csv_rows=None) -> None:
    if args.format == "json":
        sys.stdout.write(dump_json(record) + "\n")
        return
    if csv_rows is None:
        scalars = {k: v for k, v in record.items() if not isinstance(v, (list, tuple, dict))}
        csv_header = list(scalars.keys())
        csv_rows = [list(scalars.values())]
    sys.stdout.write(_csv_text(csv_header, csv_rows))


def _space_from(args, order_attr: str = "k") -> SpaceParams:
    phi = parse_orlicz(args.phi)
    weights = parse_weights(args.weights, inf_override=args.inf_w)
    return SpaceParams(getattr(args, order_attr), phi, weights)


def _vector_from(args) -> SeqVector:
    if args.infile is None:
        raise DomainError("this subcommand needs --in <sequence.csv>")
    return SeqVector.from_csv(args.infile)


def _add_space_flags(sp, k_help="space order k"):
    sp.add_argument("--k", type=float, default=0.0, help=k_help)
    sp.add_argument("--phi", required=True, help="generator descriptor, e.g. power:2, expsq")
    sp.add_argument("--weights", default="const:1",
                    help="weight descriptor: const:<w> or table:<csv>[:<default>]")
    sp.add_argument("--inf-w", dest="inf_w", type=float, default=None,
                    help="certified weight infimum overriding the listed minimum")


def _add_common(sp):
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def _cmd_norm(args) -> int:
    params = _space_from(args)
    res = luxemburg_norm(params, _vector_from(args), args.tol)
    _emit(args, {
        "value": res.value,
        "rho_low": res.bracket[0],
        "rho_high": res.bracket[1],
        "modular_at_value": res.modular_at_value,
        "iterations": res.iterations,
    })
    return EXIT_OK


def _cmd_modular(args) -> int:
    params = _space_from(args)
    value = modular(params, _vector_from(args), args.rho)
    _emit(args, {"rho": args.rho, "modular": value})
    return EXIT_OK


def _cmd_classify(args) -> int:
    params = _space_from(args)
    p = SeqVector.from_csv(args.infile) if args.infile else SeqVector()
    envelope = None
    if args.env_c is not None or args.env_r is not None:
        if args.env_c is None or args.env_r is None:
            raise DomainError("an envelope needs both --env-c and --env-r")
        envelope = geometric_envelope(params, args.env_c, args.env_r, args.env_from)
    elif args.infile is None:
        raise DomainError("classify needs --in and/or an envelope (--env-c/--env-r)")
    report = classify(params, p, envelope)
    record = {
        "in_class": report.in_class,
        "in_large": report.in_large,
        "in_small": report.in_small,
        "large_witness_rho": report.large_witness_rho,
        "note": report.note,
        "certificates": [
            {"rho": c.rho, "trunc": c.trunc, "tail_bound": c.tail_bound,
             "modular_upper": c.modular_upper} for c in report.certificates],
    }
    rows = [(c.rho, c.trunc, c.tail_bound,
             "" if c.modular_upper is None else c.modular_upper)
            for c in report.certificates]
    _emit(args, record, ("rho", "trunc", "tail_bound", "modular_upper"), rows)
    return EXIT_OK


def _cmd_delta2(args) -> int:
    phi = parse_orlicz(args.phi)
    rep = delta2_at_zero(phi, GeometricProbe(args.t_start, args.depth))
    _emit(args, {
        "limsup_estimate": rep.limsup_estimate,
        "sup_ratio": rep.sup_ratio,
        "holds": rep.holds,
        "probes_used": rep.probes_used,
        "truncated": rep.truncated,
    })
    return EXIT_OK


def _cmd_dominate(args) -> int:
    phi = parse_orlicz(args.phi)
    psi = parse_orlicz(args.psi)
    w = check_domination(phi, psi, args.gamma, args.t0, args.grid_points)
    _emit(args, {
        "holds": w.holds,
        "gamma": w.gamma,
        "t0": w.t0,
        "grid_checked": w.grid_checked,
        "first_violation": w.first_violation,
    })
    return EXIT_OK if w.holds else EXIT_CHECK_FAILED


def _cmd_embed(args) -> int:
    phi = parse_orlicz(args.phi)
    psi = parse_orlicz(args.psi)
    weights = parse_weights(args.weights, inf_override=args.inf_w)
    if args.mode == "a":
        source_k = args.kprime if args.kprime is not None else args.k
        target_k = args.k
        t0 = math.inf
    else:
        if args.t0 is None or math.isinf(args.t0):
            raise DomainError("mode b needs a finite --t0")
        source_k = args.k
        target_k = 0.0
        t0 = args.t0
    witness = check_domination(phi, psi, args.gamma, t0, args.grid_points)
    record = {
        "mode": args.mode,
        "holds": witness.holds,
        "gamma": witness.gamma,
        "t0": witness.t0,
        "first_violation": witness.first_violation,
    }
    if not witness.holds:
        _emit(args, record)
        return EXIT_CHECK_FAILED
    source = SpaceParams(source_k, psi, weights)
    cert = embedding_constant(args.mode, witness, source, target_k, args.inf_w)
    record.update({"c": cert.c, "source_k": cert.source.k, "target_k": cert.target.k})
    code = EXIT_OK
    if args.infile is not None:
        check = verify_embedding(cert, SeqVector.from_csv(args.infile), args.tol)
        record.update({
            "target_norm": check.target_norm,
            "source_norm": check.source_norm,
            "bound": check.bound,
            "ok": check.ok,
        })
        if not check.ok:
            code = EXIT_CHECK_FAILED
    _emit(args, record)
    return code


def _cmd_tail_index(args) -> int:
    psi = parse_orlicz(args.phi)
    weights = parse_weights(args.weights, inf_override=args.inf_w)
    source = SpaceParams(args.kprime, psi, weights)
    cert = uniform_tail_index(source, args.k, args.kappa, args.epsilon, args.t_theta)
    _emit(args, {
        "m_eps_kappa": cert.m_eps_kappa,
        "m1": cert.m1,
        "m2": cert.m2,
        "theta": cert.theta,
        "c_theta": cert.bound.c_theta,
        "t_theta": cert.bound.t_theta,
        "covering_dim": cert.covering_dim,
    })
    return EXIT_OK


def _cmd_covering(args) -> int:
    psi = parse_orlicz(args.phi)
    weights = parse_weights(args.weights, inf_override=args.inf_w)
    source = SpaceParams(args.kprime, psi, weights)
    cert = uniform_tail_index(source, args.k, args.kappa, args.epsilon, args.t_theta)
    samples = sample_ball(source, args.kappa, args.seed, args.samples,
                          args.max_support, args.tol)
    report = covering_check(cert, samples, norm_tol=args.tol)
    record = {
        "samples": report.samples,
        "covering_dim": report.covering_dim,
        "m_eps_kappa": report.m_eps_kappa,
        "epsilon": report.epsilon,
        "kappa": report.kappa,
        "max_tail_modular": report.max_tail_modular,
        "max_residual": report.max_residual,
    }
    rows = [(i, tm, rs) for i, (tm, rs)
            in enumerate(zip(report.tail_modulars, report.residuals))]
    _emit(args, record, ("sample", "tail_modular", "residual"), rows)
    return EXIT_OK


def _cmd_schauder_curve(args) -> int:
    params = _space_from(args)
    curve = schauder_curve(params, _vector_from(args), args.tol)
    record = {"points": [{"m": m, "residual": r} for m, r in curve]}
    _emit(args, record, ("m", "residual"), curve)
    return EXIT_OK


def _cmd_chain(args) -> int:
    phi = parse_orlicz(args.phi)
    psi = parse_orlicz(args.psi)
    weights = parse_weights(args.weights, inf_override=args.inf_w)
    if args.form == "a":
        if args.kpp is None:
            raise DomainError("form a needs --kpp (outer source order)")
        compact_src = SpaceParams(args.kpp, psi, weights)
        compact = uniform_tail_index(compact_src, args.kprime, args.kappa,
                                     args.epsilon, args.t_theta)
        witness = check_domination(phi, psi, args.gamma, math.inf, args.grid_points)
        if not witness.holds:
            _emit(args, {"holds": False, "first_violation": witness.first_violation})
            return EXIT_CHECK_FAILED
        cont = embedding_constant("a", witness, SpaceParams(args.kprime, psi, weights),
                                  args.k, args.inf_w)
    else:
        if args.t0 is None or math.isinf(args.t0):
            raise DomainError("form b needs a finite --t0")
        compact_src = SpaceParams(args.kprime, psi, weights)
        compact = uniform_tail_index(compact_src, args.k, args.kappa,
                                     args.epsilon, args.t_theta)
        witness = check_domination(phi, psi, args.gamma, args.t0, args.grid_points)
        if not witness.holds:
            _emit(args, {"holds": False, "first_violation": witness.first_violation})
            return EXIT_CHECK_FAILED
        cont = embedding_constant("b", witness, SpaceParams(args.k, psi, weights),
                                  0.0, args.inf_w)
    report = chain_embeddings(compact, cont)
    _emit(args, {
        "constant": report.constant,
        "compact": report.compact,
        "form": report.form,
        "links": [{"kind": l.kind, "constant": l.constant, "detail": l.detail}
                  for l in report.links],
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orliczseq",
        description="Weighted Orlicz sequence spaces: norms, modulars, "
                    "embedding and compactness certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("norm", help="Luxemburg norm of a sequence CSV")
    _add_space_flags(sp)
    sp.add_argument("--in", dest="infile", required=True, help="sequence CSV (m,re,im rows)")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL_REL)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_norm)

    sp = sub.add_parser("modular", help="weighted modular at a given scale")
    _add_space_flags(sp)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--rho", type=float, required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_modular)

    sp = sub.add_parser("classify", help="membership in the class and the large/small spaces")
    _add_space_flags(sp)
    sp.add_argument("--in", dest="infile", default=None)
    sp.add_argument("--env-c", dest="env_c", type=float, default=None,
                    help="envelope amplitude C with |p_m| <= C*r^|m|")
    sp.add_argument("--env-r", dest="env_r", type=float, default=None,
                    help="envelope ratio r in (0,1)")
    sp.add_argument("--env-from", dest="env_from", type=int, default=0,
                    help="index the envelope is valid from")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_classify)

    sp = sub.add_parser("delta2", help="doubling-condition probe at zero")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--t-start", dest="t_start", type=float, default=1.0)
    sp.add_argument("--depth", type=int, default=60)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_delta2)

    sp = sub.add_parser("dominate", help="probe phi(t) <= psi(gamma*t) on (0, t0]")
    sp.add_argument("--phi", required=True, help="dominated generator")
    sp.add_argument("--psi", required=True, help="dominating generator")
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--t0", type=float, default=math.inf)
    sp.add_argument("--grid-points", dest="grid_points", type=int, default=4096)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_dominate)

    sp = sub.add_parser("embed", help="continuous embedding certificate (modes a/b)")
    sp.add_argument("--mode", choices=("a", "b"), required=True)
    sp.add_argument("--phi", required=True, help="target generator")
    sp.add_argument("--psi", required=True, help="source generator")
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--t0", type=float, default=None, help="domination window end (mode b)")
    sp.add_argument("--k", type=float, default=0.0,
                    help="target order (mode a) or source order (mode b)")
    sp.add_argument("--kprime", type=float, default=None, help="source order (mode a)")
    sp.add_argument("--weights", default="const:1")
    sp.add_argument("--inf-w", dest="inf_w", type=float, default=None)
    sp.add_argument("--grid-points", dest="grid_points", type=int, default=4096)
    sp.add_argument("--in", dest="infile", default=None,
                    help="optionally verify the inequality on this sequence")
    sp.add_argument("--tol", type=float, default=1e-9)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_embed)

    sp = sub.add_parser("tail-index", help="uniform ball truncation index")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--kprime", type=float, required=True, help="source order k'")
    sp.add_argument("--k", type=float, required=True, help="target order k < k'")
    sp.add_argument("--weights", default="const:1")
    sp.add_argument("--inf-w", dest="inf_w", type=float, default=None)
    sp.add_argument("--kappa", type=float, required=True, help="ball radius")
    sp.add_argument("--epsilon", type=float, required=True, help="target accuracy")
    sp.add_argument("--t-theta", dest="t_theta", type=float, default=1.0)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_tail_index)

    sp = sub.add_parser("covering", help="sample the ball and check the tail certificate")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--kprime", type=float, required=True)
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--weights", default="const:1")
    sp.add_argument("--inf-w", dest="inf_w", type=float, default=None)
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--t-theta", dest="t_theta", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-support", dest="max_support", type=int, default=64)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL_REL)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_covering)

    sp = sub.add_parser("schauder-curve", help="truncation residual norms")
    _add_space_flags(sp)
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL_REL)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_schauder_curve)

    sp = sub.add_parser("chain", help="compose a compact link with a continuous one")
    sp.add_argument("--form", choices=("a", "b"), required=True)
    sp.add_argument("--phi", required=True, help="target generator")
    sp.add_argument("--psi", required=True, help="source generator")
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--t0", type=float, default=None)
    sp.add_argument("--kpp", type=float, default=None, help="outer source order k'' (form a)")
    sp.add_argument("--kprime", type=float, required=True)
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--weights", default="const:1")
    sp.add_argument("--inf-w", dest="inf_w", type=float, default=None)
    sp.add_argument("--kappa", type=float, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--t-theta", dest="t_theta", type=float, default=1.0)
    sp.add_argument("--grid-points", dest="grid_points", type=int, default=4096)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_chain)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, CompositionError, CertificateRefutedError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ComputationOverflowError, CertificateError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
