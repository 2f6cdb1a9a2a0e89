"""Command-line front end.

Exit codes: 0 when the verdict is ordinary (or there is none), 1 when it is
not ordinary, 2 on bad input, 3 when the two character routes disagree.
"""

import argparse
import sys
from fractions import Fraction

from . import embedding
from .cartan import INCONCLUSIVE, NOT_ORDINARY, cartan_verdict
from .cartan_lemma import CartanLemmaError, solve
from .curvature import (ConvergenceError, SecondFundamentalForm, dim_Km, gauss_jacobian_rank, gauss_map, in_H,
                        preimage_newton, random_h_in_H)
from .document import (DocumentError, curvature_json, dumps, parse,
                       parse_cartan_lemma, parse_curvature, parse_h, scalar_text)
from .exterior import d_squared_defects
from .ideal import NotIntegralError, close, extension_rank, is_integral, polar_space

EXIT_OK, EXIT_NOT_ORDINARY, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _vec(v):
    return [scalar_text(x) for x in v]


def _report(rep):
    return rep.to_dict()


def _verdict_for(doc, gs):
    flag = doc.flag_object()
    if flag is None:
        return None
    try:
        return cartan_verdict(flag, gs, doc.split_object())
    except NotIntegralError as exc:
        raise InputError(str(exc)) from None


def cmd_check(doc):
    """Close the system and, when a flag is given, run Cartan's test on it."""
    gs = close(doc.generator_set())
    out = {
        "command": "check",
        "dimension": doc.dimension,
        "closed_generators": [g.render() for g in gs.generators],
        "d_squared_defects": [[str(i), f.render()] for i, f in d_squared_defects(gs.sd) if f],
    }
    rep = _verdict_for(doc, gs)
    if rep is not None:
        out["report"] = _report(rep)
    return out


def cmd_polar(doc, p=None):
    """Polar space of E_p, the span of the first p flag vectors."""
    flag = doc.flag_object()
    if flag is None:
        raise InputError("polar needs a flag in the document")
    p = len(flag) if p is None else p
    if not 0 <= p <= len(flag):
        raise InputError("p must lie in 0..%d" % len(flag))
    gs = close(doc.generator_set())
    E = flag.element(p)
    if not is_integral(E, gs):
        raise InputError("E_%d is not an integral element" % p)
    basis = polar_space(E, gs)
    return {"command": "polar", "p": p, "polar_dim": len(basis),
            "polar_basis": [_vec(v) for v in basis], "extension_rank": extension_rank(E, gs)}


def cmd_characters(doc):
    if doc.flag is None:
        raise InputError("characters needs a flag in the document")
    gs = close(doc.generator_set())
    return {"command": "characters", "report": _report(_verdict_for(doc, gs))}


def _threshold(m, N):
    if m is None or N is None:
        raise InputError("--m and --N are required")
    if m < 2:
        raise InputError("need m >= 2")
    if not embedding.threshold_ok(m, N):
        raise InputError("threshold violated: need N >= m(m+1)/2 = %d for m = %d, got N = %d"
                         % (m * (m + 1) // 2, m, N))


def cmd_bcjs(m, N, curvature=None, seed=0, grid=10 ** 6):
    """Sample or load (R, h) with gamma(h) = R, then certify the flag."""
    _threshold(m, N)
    out = {"command": "bcjs", "m": m, "N": N, "seed": seed}
    if curvature is None:
        h = random_h_in_H(m, N, seed)
        R = gauss_map(h)
        out["source"] = "random"
    else:
        R_in = parse_curvature(curvature)
        if R_in.m != m:
            raise InputError("curvature file has m = %d, expected %d" % (R_in.m, m))
        approx = preimage_newton(R_in, random_h_in_H(m, N, seed))
        # snap to a common denominator so gamma(h) stays readable
        h = SecondFundamentalForm.from_upper(
            m, N, [Fraction(round(float(x) * grid), grid) for x in approx.upper()])
        R = gauss_map(h)
        out["source"] = "file"
        out["curvature_input"] = curvature_json(R_in)
        # the certificate is exact for gamma(h_rational); report how far that is from the input
        out["curvature_rounding_error"] = "%.3e" % float((R - R_in).max_abs())
    out["h"] = [scalar_text(x) for x in h.upper()]
    out["curvature"] = curvature_json(R)
    system = embedding.build(m, N, R, h)
    report, dims = embedding.certify(system)
    out["dims"] = dims.to_dict()
    out["report"] = _report(report)
    out["step6"] = [row.to_dict() for row in embedding.step6_table(system)]
    return out


def cmd_dims(m, N):
    _threshold(m, N)
    return {"command": "dims", **embedding.dims_report(m, N).to_dict()}


def cmd_gauss_rank(m, N, h):
    if h.m != m or h.N != N:
        raise InputError("h has the wrong shape")
    return {"command": "gauss-rank", "m": m, "N": N, "rank": gauss_jacobian_rank(h),
            "dim_Km": dim_Km(m), "in_H": in_H(h)}


def cmd_cartan_lemma(theta, omega):
    h = solve(theta, omega)
    return {"command": "cartan-lemma", "h": [[scalar_text(x) for x in row] for row in h]}


def cmd_conformal(m, n):
    if m is None or n is None:
        raise InputError("--m and --n are required")
    if m < 2:
        raise InputError("need m >= 2")
    return {"command": "conformal", **embedding.conformal_threshold(m, n).to_dict()}


def exit_code(out):
    rep = out.get("report")
    if not rep:
        return EXIT_OK
    if rep["verdict"] == NOT_ORDINARY:
        return EXIT_NOT_ORDINARY
    if rep["verdict"] == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _text(out):
    lines = []

    def emit(key, value, indent=""):
        if isinstance(value, dict):
            lines.append("%s%s:" % (indent, key))
            for k in value:
                emit(k, value[k], indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append("%s%s:" % (indent, key))
            for item in value:
                if isinstance(item, dict):
                    lines.append(indent + "  - " + ", ".join("%s=%s" % kv for kv in item.items()))
                else:
                    lines.append(indent + "  - " + " ".join(str(x) for x in item))
        elif isinstance(value, list):
            lines.append("%s%s: [%s]" % (indent, key, ", ".join(str(x) for x in value)))
        else:
            lines.append("%s%s: %s" % (indent, key, value))

    for k, v in out.items():
        emit(k, v)
    return "\n".join(lines) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--m", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--n", type=int)

    parser = argparse.ArgumentParser(prog="cartan-eds",
                                     description="Cartan's test for exterior differential systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "characters"):
        sub.add_parser(name, parents=[common]).add_argument("document")
    p = sub.add_parser("polar", parents=[common])
    p.add_argument("document")
    p.add_argument("--p", type=int, help="dimension of E_p along the flag (default: all)")
    p = sub.add_parser("bcjs", parents=[common])
    p.add_argument("curvature", nargs="?", help="curvature file; omit to sample")
    p.add_argument("--random", type=int, metavar="SEED", help="sample (R, h) from this seed")
    sub.add_parser("dims", parents=[common])
    sub.add_parser("gauss-rank", parents=[common]).add_argument("hfile")
    sub.add_parser("cartan-lemma", parents=[common]).add_argument("file")
    sub.add_parser("conformal", parents=[common])
    return parser


def run(args):
    c = args.command
    if c == "check":
        return cmd_check(parse(args.document))
    if c == "polar":
        return cmd_polar(parse(args.document), args.p)
    if c == "characters":
        return cmd_characters(parse(args.document))
    if c == "bcjs":
        if args.random is not None and args.curvature:
            raise InputError("give either a curvature file or --random, not both")
        seed = args.random if args.random is not None else args.seed
        return cmd_bcjs(args.m, args.N, args.curvature, seed)
    if c == "dims":
        return cmd_dims(args.m, args.N)
    if c == "gauss-rank":
        _threshold(args.m, args.N)
        return cmd_gauss_rank(args.m, args.N, parse_h(args.hfile, args.m, args.N))
    if c == "cartan-lemma":
        return cmd_cartan_lemma(*parse_cartan_lemma(args.file))
    if c == "conformal":
        return cmd_conformal(args.m, args.n)
    raise InputError("unknown command %s" % c)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out = run(args)
    except CartanLemmaError as exc:
        msg = str(exc)
        if exc.residual is not None:
            msg += " (residual %s)" % exc.residual.render()
        print("error: %s" % msg, file=sys.stderr)
        return EXIT_INPUT
    except embedding.CertificationError as exc:
        print("certification failed: %s" % exc, file=sys.stderr)
        return EXIT_NOT_ORDINARY
    except (DocumentError, InputError, ConvergenceError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    out = {"schema_version": 1, **out}
    sys.stdout.write(dumps(out) if args.json else _text(out))
    return exit_code(out)


if __name__ == "__main__":
    sys.exit(main())
