"""Command-line front end.

Direction grammar (``--direction``):
    e<k>            k-th standard basis vector (1-based)
    random          seeded uniform direction (zero-sum for the simplex)
    1,1,-1,-1       inline coordinates, normalized with a notice if needed
    @path           one coordinate per line

Pair grammar (``--pair``):
    e<i>,e<j>       two basis vectors, either may carry a leading minus
    trig            the pair whose cube shadow is a regular 2n-gon
    random          seeded random orthonormal pair
    1,0,0;0,1,0     two inline vectors, Gram-Schmidt applied
    @path           two lines, comma-separated coordinates each

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import closedform as cf
from . import extremal as ex
from . import lpbodies as lp
from . import oracle as orc
from . import sections as sec
from .linalg import (OrthoPair, normalize, orthobasis_of_complement, orthonormal_pair, project_zero_sum,
                     rng_from, sample_pairs)
from .verify import SUITES, run_suite, simplex_shadow_basis

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def default_seed():
    raw = os.environ.get("POLYSHADOW_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POLYSHADOW_SEED must be an integer, got {raw!r}")


def fmt(x):
    if isinstance(x, (list, tuple)):
        return " | ".join(fmt(v) for v in x) if x and isinstance(x[0], list) else " ".join(fmt(v) for v in x)
    return "%.17g" % x if isinstance(x, float) else str(x)


def _notice(msg):
    print(f"note: {msg}", file=sys.stderr)


def _basis_token(tok, n):
    tok = tok.strip()
    sign = -1.0 if tok.startswith("-") else 1.0
    tok = tok.lstrip("+-")
    if not (tok.startswith("e") and tok[1:].isdigit()):
        raise UsageError(f"bad basis token {tok!r}")
    k = int(tok[1:])
    if not 1 <= k <= n:
        raise UsageError(f"basis index e{k} out of range 1..{n}")
    v = np.zeros(n)
    v[k - 1] = sign
    return v


def _floats(text):
    try:
        return np.array([float(t) for t in text.replace(" ", "").split(",") if t != ""])
    except ValueError:
        raise UsageError(f"cannot parse coordinates {text!r}")


def parse_vector(text, length, seed=0, zero_sum=False):
    """Raw vector from the direction grammar (not yet normalized)."""
    text = text.strip()
    if text == "random":
        g = rng_from(seed).standard_normal(length)
        return g - g.mean() if zero_sum else g
    if text.startswith("@"):
        with open(text[1:]) as fh:
            x = np.array([float(line) for line in fh if line.strip()])
    elif text.lstrip("+-").startswith("e"):
        x = _basis_token(text, length)
    else:
        x = _floats(text)
    if x.size != length:
        raise UsageError(f"expected {length} coordinates, got {x.size}")
    return x


def parse_pair(text, n, seed=0):
    text = text.strip()
    if text == "trig":
        return ex.trig_pair(n)
    if text == "random":
        u, v = sample_pairs(1, n, seed)[0]
        return OrthoPair(u, v)
    if text.startswith("@"):
        with open(text[1:]) as fh:
            rows = [line for line in fh if line.strip()]
        if len(rows) != 2:
            raise UsageError("pair file must hold exactly two lines")
        x, y = _floats(rows[0]), _floats(rows[1])
    elif ";" in text:
        a, b = text.split(";", 1)
        x, y = _floats(a), _floats(b)
    else:
        toks = text.split(",")
        if len(toks) != 2:
            raise UsageError(f"cannot parse pair {text!r}")
        x, y = _basis_token(toks[0], n), _basis_token(toks[1], n)
    if x.size != n or y.size != n:
        raise UsageError(f"pair vectors must have {n} coordinates")
    return orthonormal_pair(x, y)


def _direction(text, length, seed, zero_sum_flag, need_zero_sum):
    x = parse_vector(text, length, seed, zero_sum=need_zero_sum)
    if need_zero_sum:
        if abs(x.sum()) > 1e-12 * max(np.linalg.norm(x), 1.0):
            if not zero_sum_flag:
                raise UsageError("direction must lie in the zero-sum hyperplane; pass --zero-sum to project it")
            _notice("direction projected onto the zero-sum hyperplane")
        d = project_zero_sum(x)
    else:
        d = normalize(x)
    if abs(np.linalg.norm(x) - 1) > 1e-12 and text.strip() != "random":
        _notice(f"direction normalized (input norm {np.linalg.norm(x):.17g})")
    return d


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def emit(rows, args, title=None):
    """rows: list of (key, value) pairs."""
    fmt_ = args.format
    if fmt_ == "json":
        text = json.dumps({k: _jsonable(v) for k, v in rows}, indent=2) + "\n"
    elif fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in rows:
            w.writerow([k, fmt(v)])
        text = buf.getvalue()
    else:
        width = max(len(k) for k, _ in rows)
        lines = [title] if title else []
        for k, v in rows:
            lines.append(f"{k.ljust(width)}  {fmt(v)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, tuple):
        return list(v)
    return v


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _hyperplane_oracle(body, n, coords, samples, seed):
    """Brute-force shadow of a hyperplane projection: exact in 2-d, MC for 3..6."""
    if body == "simplex":
        P = orc.standard_body("simplex", n)
        B = simplex_shadow_basis(coords)
    else:
        P = orc.standard_body(body, n)
        B = orthobasis_of_complement(coords[None, :])
    k = len(B)
    if k == 2:
        return orc.hull_area_2d(orc.shadow_vertices(P, B))[0], 0.0
    if 3 <= k <= 6:
        est = orc.shadow_volume_mc(P, B, samples, seed)
        return est.value, est.stderr
    raise UsageError(f"no oracle for a {k}-dimensional shadow (supported: 2..6)")


def cmd_volume(args):
    n = args.n
    rows = [("body", args.body), ("n", n), ("seed", args.seed)]
    if args.planar:
        if args.body != "cube":
            raise UsageError("planar shadows are available for the cube only")
        pair = parse_pair(args.pair or "e1,e2", n, args.seed)
        value = cf.cube_planar_shadow(pair)
        rows += [("kind", "planar"), ("u", pair.u.tolist()), ("v", pair.v.tolist()), ("volume", value)]
        if args.oracle:
            o = orc.shadow_area_2d(orc.standard_body("cube", n), pair)
            rows += [("oracle", o), ("difference", value - o)]
        emit(rows, args)
        return EXIT_OK
    if args.direction is None:
        raise UsageError("--direction is required for hyperplane shadows")
    if args.body == "simplex":
        d = _direction(args.direction, n + 1, args.seed, args.zero_sum, True)
        value = cf.simplex_hyperplane_shadow(d)
    elif args.body == "cube":
        d = _direction(args.direction, n, args.seed, args.zero_sum, False)
        value = cf.cube_hyperplane_shadow(d)
    else:
        d = _direction(args.direction, n, args.seed, args.zero_sum, False)
        value = cf.cauchy_shadow(cf.facet_data("cross", n), d)
    rows += [("kind", "hyperplane"), ("direction", d.coords.tolist()), ("volume", value)]
    if args.oracle:
        o, se = _hyperplane_oracle(args.body, n, d.coords, args.samples, args.seed)
        rows += [("oracle", o), ("oracle_stderr", se), ("difference", value - o)]
    emit(rows, args)
    return EXIT_OK


def _arg_list(arg):
    if isinstance(arg, OrthoPair):
        return [arg.u.tolist(), arg.v.tolist()]
    return np.asarray(arg).tolist()


def cmd_extremal(args):
    prob = args.problem
    rows = [("problem", prob), ("seed", args.seed)]
    numeric = None
    if prob == "simplex-proj":
        n = _need(args.n, "--n")
        lo, hi = ex.simplex_extremal_volumes(n)
        rows.append(("n", n))
        if args.numeric:
            scale = 0.5 * math.sqrt(n + 1) / cf.factorial(n - 1)
            numeric = [(r, scale * ex.numeric_search("l1", n + 1, "zero_sum_unit_sphere", r.kind,
                                                     args.restarts, args.seed).value) for r in (lo, hi)]
    elif prob == "simplex-width":
        n = _need(args.n, "--n")
        lo, hi = ex.simplex_extremal_widths(n)
        rows.append(("n", n))
        if args.numeric:
            numeric = [(r, ex.numeric_search("width", n + 1, "zero_sum_unit_sphere", r.kind,
                                             args.restarts, args.seed).value) for r in (lo, hi)]
    elif prob == "cube-planar":
        n = _need(args.n, "--n")
        lo, hi = ex.planar_cube_bounds(n)
        rows.append(("n", n))
        if args.numeric:
            numeric = [(r, ex.numeric_search("minor_sum", n, "orthonormal_pair", r.kind,
                                             args.restarts, args.seed).value) for r in (lo, hi)]
    else:
        m = _need(args.m if args.m is not None else args.n, "--m")
        if args.p is None:
            raise UsageError("fp needs --p")
        lo, hi = ex.fp_extrema_sphere(m, args.p)
        rows += [("m", m), ("p", args.p)]
        if args.numeric:
            numeric = [(r, ex.numeric_search("fp", m, "unit_sphere", r.kind, args.restarts,
                                             args.seed, p=args.p).value) for r in (lo, hi)]
    rows += [("min", lo.value), ("argmin", _arg_list(lo.argument)),
             ("max", hi.value), ("argmax", _arg_list(hi.argument))]
    if numeric:
        rows.append(("restarts", args.restarts))
        for r, val in numeric:
            rows += [(f"numeric_{r.kind}", val), (f"gap_{r.kind}", val - r.value)]
    emit(rows, args)
    return EXIT_OK


def _need(val, flag):
    if val is None:
        raise UsageError(f"{flag} is required")
    return val


def cmd_lp(args):
    n = args.n
    if args.body == "simplex":
        d = _direction(args.direction, n + 1, args.seed, args.zero_sum, True)
        hp = lp.lp_simplex_support_p(d, args.p)
        extra = []
    elif args.body == "cube":
        d = _direction(args.direction, n, args.seed, False, False)
        hp = lp.lp_cube_support_p(d, args.p)
        extra = []
    else:
        d = _direction(args.direction, n, args.seed, False, False)
        mom = lp.rademacher_moment(d, args.p, args.mode, args.samples, args.seed)
        hp = 2.0 ** (n - 1) / cf.factorial(n - 1) * mom.value
        extra = [("method", mom.method), ("moment", mom.value), ("moment_stderr", mom.stderr),
                 ("samples", mom.samples)]
    rows = [("body", args.body), ("n", n), ("p", args.p), ("seed", args.seed),
            ("direction", d.coords.tolist()), ("h_p^p", hp), ("h_p", lp.lp_support(hp, args.p))] + extra
    emit(rows, args)
    return EXIT_OK


def parse_range(text):
    if text is None:
        return None
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad dimension range {text!r}; use N or A..B")
    if lo > hi:
        raise UsageError(f"empty dimension range {text!r}")
    return lo, hi


def report_csv(rep):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "inputs", "formula_value", "oracle_value", "tolerance", "check", "pass"])
    for suite, c in rep.iter_cases():
        w.writerow([suite, json.dumps(c["inputs"], sort_keys=True), fmt(c["formula_value"]),
                    fmt(c["oracle_value"]), fmt(c["tolerance"]), c["check"], int(c["pass"])])
    return buf.getvalue()


def report_table(rep):
    lines = [f"seed {rep.seed}"]
    for suite, passed, total, frac, ok in rep.summary():
        if total == 0:
            continue
        need = "" if frac == 1.0 else f" (need {frac:.0%})"
        lines.append(f"{'PASS' if ok else 'FAIL'}  {suite:<34} {passed}/{total}{need}")
    lines.append(f"overall: {'PASS' if rep.passed else 'FAIL'}")
    if rep.wall_time_s is not None:
        lines.append(f"wall time: {rep.wall_time_s:.2f} s")
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    rep = run_suite(args.suite, parse_range(args.n), args.trials, args.samples, args.seed, args.timing)
    if args.out:
        as_csv = args.format == "csv" or args.out.endswith(".csv")
        with open(args.out, "w") as fh:
            fh.write(report_csv(rep) if as_csv else rep.to_json())
    if args.format == "json":
        sys.stdout.write(rep.to_json())
    elif args.format == "csv":
        sys.stdout.write(report_csv(rep))
    else:
        sys.stdout.write(report_table(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_section(args):
    n = args.n
    pair = parse_pair(args.pair, n, args.seed)
    s = sec.cross_section_polygon(pair)
    area = sec.polygon_area(s.polygon)
    rows = [("n", n), ("seed", args.seed), ("u", pair.u.tolist()), ("v", pair.v.tolist()),
            ("area", area), ("vertices", len(s.polygon)), ("mahler_product", sec.mahler_product(s.polygon))]
    if n >= 3:
        rows += [("nazarov_bound", sec.nazarov_bound(n)), ("nazarov_margin", area - sec.nazarov_bound(n))]
    if args.emit:
        with open(args.emit, "w") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s", "t"])
            for x, y in s.polygon.vertices:
                w.writerow([fmt(float(x)), fmt(float(y))])
        rows.append(("polygon_csv", args.emit))
    emit(rows, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", metavar="PATH", help="also write the output to PATH")
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: $POLYSHADOW_SEED or 0)")

    parser = argparse.ArgumentParser(prog="polyshadow", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="closed-form shadow volume")
    p.add_argument("body", choices=("simplex", "cube", "cross"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--direction")
    p.add_argument("--pair")
    p.add_argument("--planar", action="store_true", help="2-d shadow on span{u,v} (cube)")
    p.add_argument("--zero-sum", action="store_true", help="project the direction onto sum x = 0")
    p.add_argument("--oracle", action="store_true", help="also print the brute-force value")
    p.add_argument("--samples", type=int, default=200_000)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("extremal", parents=[common], help="extremal values and arguments")
    p.add_argument("problem", choices=("simplex-proj", "simplex-width", "cube-planar", "fp"))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--numeric", action="store_true", help="cross-check with the numeric search")
    p.add_argument("--restarts", type=int, default=200)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("lp", parents=[common], help="L_p projection body support (p-th power)")
    p.add_argument("body", choices=("cube", "cross", "simplex"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--direction", required=True)
    p.add_argument("--zero-sum", action="store_true")
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", help="dimension range, N or A..B")
    p.add_argument("--trials", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--timing", action="store_true", help="record wall time (makes reports non-reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("section", parents=[common], help="planar section of the cross-polytope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pair", default="e1,e2")
    p.add_argument("--emit", metavar="CSV", help="write the section polygon as s,t rows")
    p.set_defaults(func=cmd_section)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = default_seed()
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"polyshadow {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"polyshadow {args.command}: failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
