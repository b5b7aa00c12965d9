"""Command-line surface: compute vertex series, run identity and
wall-crossing suites, emit JSON/CSV tables.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 computational error. Output is deterministic: identical invocations
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import qcombi, vertexk, wallcross
from .qcombi import parse_partition


class UsageError(Exception):
    pass


def parse_legs(text):
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError('legs must be three ";"-separated partitions, e.g. "3,1;2;"')
    try:
        return tuple(parse_partition(p) for p in parts)
    except ValueError as e:
        raise UsageError("bad partition: %s" % e)


def _coeff_pretty(rf):
    num = str(rf.num)
    if rf.is_poly():
        return num
    return "(%s) / (%s)" % (num, rf.den)


def _series_rows(vs):
    rows = []
    for i, c in enumerate(vs.series.coeffs):
        rows.append((vs.series.min_power + i, c))
    return rows


def _emit_series(vs, fmt, out):
    if fmt == "json":
        out.write(json.dumps(vs.to_json(), sort_keys=True, indent=2))
        out.write("\n")
    elif fmt == "csv":
        out.write("power,coefficient\n")
        for n, c in _series_rows(vs):
            out.write('%d,"%s"\n' % (n, _coeff_pretty(c)))
    else:
        out.write("%s vertex series, legs %s\n" % (vs.kind, list(map(list, vs.legs))))
        for n, c in _series_rows(vs):
            out.write("  Q^%d: %s\n" % (n, _coeff_pretty(c)))


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w"), True


SUITES = ("qbinom", "qmultinom", "mochizuki", "joyce_lt", "joyce_b")


def _suite_instances(suite, max_n):
    """Instances in increasing size, so the first failure reported is the
    smallest one."""
    if suite == "qbinom":
        for total in range(2, max_n + 1):
            for m in range(1, total):
                yield {"m": m, "n": total - m}
    elif suite == "qmultinom":
        for total in range(1, max_n + 1):
            for mvec in _compositions(total):
                yield {"mvec": list(mvec)}
    else:
        for total in range(1, min(6, max_n - 1) + 1):
            for mvec in _partitions_le3(total):
                for N in range(total + 1, max_n + 1):
                    yield {"mvec": list(mvec), "N": N}


def _compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _partitions_le3(total):
    """Multisets (weakly decreasing) of at most three positive parts."""
    for a in range(total, 0, -1):
        if a == total:
            yield (a,)
        for b in range(min(a, total - a), 0, -1):
            if a + b == total:
                yield (a, b)
            c = total - a - b
            if 0 < c <= b:
                yield (a, b, c)


def run_suite(suite, max_n):
    prop = {
        "qbinom": "QBINOM",
        "qmultinom": "QMULTINOM",
        "mochizuki": "MOCHIZUKI",
        "joyce_lt": "JOYCE_LT",
        "joyce_b": "JOYCE_B",
    }[suite]
    records = []
    ok = True
    first_failure = None
    for args in _suite_instances(suite, max_n):
        res = qcombi.check_identity(prop, **{k: (tuple(v) if k == "mvec" else v) for k, v in args.items()})
        records.append(res.to_json())
        if not res.verdict and first_failure is None:
            first_failure = res.to_json()
            ok = False
    return {
        "suite": suite,
        "max_n": max_n,
        "instances": len(records),
        "verdict": ok,
        "smallest_failure": first_failure,
        "records": records,
    }


def cmd_check_identities(args, out):
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = [run_suite(s, args.max_n) for s in suites]
    payload = report[0] if len(report) == 1 else {"suites": report, "verdict": all(r["verdict"] for r in report)}
    out.write(json.dumps(payload, sort_keys=True, indent=2))
    out.write("\n")
    verdict = payload["verdict"] if "verdict" in payload else all(r["verdict"] for r in report)
    return 0 if verdict else 1


def cmd_dt(args, out):
    vs = vertexk.dt_vertex_series(*args.legs, order=args.order, jobs=args.jobs)
    _emit_series(vs, args.format, out)
    return 0


def cmd_pt(args, out):
    guard = int(os.environ.get("KVERTEX_GUARD_ORDER", "2"))
    vs = vertexk.pt_vertex_series(*args.legs, order=args.order, jobs=args.jobs, guard=guard)
    _emit_series(vs, args.format, out)
    return 0


def cmd_quot2(args, out):
    vs = vertexk.quot2_vertex_series(args.order, jobs=args.jobs)
    _emit_series(vs, args.format, out)
    return 0


def cmd_cy_limit(args, out):
    vs = vertexk.dt_vertex_series(*args.legs, order=args.order, jobs=args.jobs)
    consts = vertexk.cy_constancy_check(vs)
    rows = list(zip(range(vs.series.min_power, vs.series.trunc + 1), consts))
    if args.format == "json":
        payload = {
            "legs": [list(x) for x in vs.legs],
            "order": vs.series.trunc,
            "constants": [[n, str(c)] for n, c in rows],
        }
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
    elif args.format == "csv":
        out.write("power,constant\n")
        for n, c in rows:
            out.write("%d,%s\n" % (n, c))
    else:
        out.write("Calabi-Yau limit constants:\n")
        for n, c in rows:
            out.write("  Q^%d: %s\n" % (n, c))
    return 0


def cmd_check_wcf(args, out):
    order, N = args.order, args.frame_dim
    if order > N - 1:
        raise UsageError("order must be at most frame-dim - 1")
    collapse = all(
        wallcross.wall_transfer(m, N) == wallcross.FormalExpr.symbol(wallcross.HILB, m)
        for m in range(1, order + 1)
    )
    joyce = wallcross.joyce_check(order, N)
    mochizuki = wallcross.mochizuki_check(order, N)
    pt_structural = wallcross.wall_transfer_series(order, N, sign="+").eq_through(
        wallcross.shifted_product_series(order), order
    )
    payload = {
        "order": order,
        "frame_dim": N,
        "transfer_collapse": collapse,
        "factorization": joyce,
        "iterated_collapse": mochizuki,
        "pt_transfer_structural": pt_structural,
        "verdict": collapse and joyce and mochizuki and pt_structural,
    }
    out.write(json.dumps(payload, sort_keys=True, indent=2))
    out.write("\n")
    return 0 if payload["verdict"] else 1


def cmd_bridge(args, out):
    order, N = args.order, args.frame_dim
    if order > N - 1:
        raise UsageError("order must be at most frame-dim - 1")
    hilb = vertexk.dt_vertex_series(order=order, jobs=args.jobs)
    ok = wallcross.rank2_bridge(order, N, hilb)
    payload = {"order": order, "frame_dim": N, "verdict": ok}
    out.write(json.dumps(payload, sort_keys=True, indent=2))
    out.write("\n")
    return 0 if ok else 1


def cmd_bench(args, out):
    """Compare the vectorized and pure-Python summation engines."""
    from .boxconfig import plane_partitions
    from . import fastsum

    rows = []
    for n in range(0, args.order + 1):
        fws = [vertexk._config_weight(c) for c in plane_partitions(n)]
        t0 = time.time()
        fast = fastsum.sum_factored(fws)
        t_fast = time.time() - t0
        t0 = time.time()
        pure = vertexk._sum_factored(fws)
        t_pure = time.time() - t0
        agree = fast[0] == pure[0] and fast[1] == pure[1]
        rows.append((n, t_fast, t_pure, agree))
    out.write("volume,vectorized_s,pure_s,agree\n")
    for n, tf, tp, agree in rows:
        out.write("%d,%.3f,%.3f,%s\n" % (n, tf, tp, agree))
    return 0 if all(r[3] for r in rows) else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="kvertex",
        description="Exact equivariant box-counting vertex series and "
        "wall-crossing identity checks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, legs=False, order=True):
        if legs:
            sp.add_argument("--legs", default=";;", help='three partitions, e.g. "3,1;2;"')
        if order:
            sp.add_argument("--order", type=int, required=True, help="truncation order in Q")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("dt-vertex", help="box-counting vertex series")
    common(sp, legs=True)
    sp.set_defaults(fn=cmd_dt)

    sp = sub.add_parser("pt-vertex", help="stable-pairs vertex series (as a quotient)")
    common(sp, legs=True)
    sp.set_defaults(fn=cmd_pt)

    sp = sub.add_parser("quot2-vertex", help="rank-2 degree-0 vertex series")
    common(sp)
    sp.set_defaults(fn=cmd_quot2)

    sp = sub.add_parser("cy-limit", help="Calabi-Yau limit constants of a 0-leg series")
    common(sp, legs=True)
    sp.set_defaults(fn=cmd_cy_limit)

    sp = sub.add_parser("check-identities", help="exhaustive combinatorial identity suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_check_identities, format="json", jobs=1)

    sp = sub.add_parser("check-wcf", help="formal wall-crossing verification")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--frame-dim", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_check_wcf, format="json", jobs=1)

    sp = sub.add_parser("bridge", help="formal-geometric rank-2 cross-check")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--frame-dim", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_bridge, format="json")

    sp = sub.add_parser("bench", help="compare summation engines")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_bench, format="csv", jobs=1)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if getattr(args, "order", 0) < 0:
            raise UsageError("order must be nonnegative")
        if getattr(args, "legs", None) is not None:
            args.legs = parse_legs(args.legs)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("jobs must be positive")
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    out, close = _open_out(getattr(args, "out", None))
    try:
        return args.fn(args, out)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError, ZeroDivisionError) as e:
        print("computational error: %s" % e, file=sys.stderr)
        return 3
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
