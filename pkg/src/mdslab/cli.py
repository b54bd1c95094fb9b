"""mdslab command line: construct, inspect, extend and search codes.

Tables go out as CSV, streams as JSON lines, codes as the plain-text code
file format.  Exit status: 0 success, 1 a reproduced claim failed, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import warnings
from typing import Sequence

from . import reproduce
from .code import (
    LinearCode,
    Tag,
    classify,
    code_from_text,
    code_to_text,
    is_mds_by_columns,
    is_nmds_by_columns,
    vector_str,
)
from .constructions import EvalConfig, egrs, esgrs, grs, roth_lempel
from .covering import build_syndrome_table, enumerate_deep_holes, report_for
from .criteria import class1_is_deep_hole, forbidden_set
from .equiv import monomial_equivalent
from .errors import MdsLabError
from .extend import HypothesisWarning, algorithm1, extend_by_deep_hole, mkz_check, mkz_cost_bound
from .field import FieldSpec, Poly, field_new, prime_power

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _field(args) -> FieldSpec:
    p, m = prime_power(args.q)
    return field_new(p, m, args.modulus)


def _cfg(args) -> EvalConfig:
    F = _field(args)
    v = None if args.v is None or args.v == [1] else args.v
    return EvalConfig.make(F, args.S, v)


def _read_code(path: str) -> LinearCode:
    if path == "-":
        return code_from_text(sys.stdin.read())
    with open(path) as fh:
        return code_from_text(fh.read())


def _write_code(C: LinearCode, path: str | None) -> None:
    text = code_to_text(C)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _summary(C: LinearCode) -> str:
    c = classify(C)
    return f"[{C.n},{C.k},{c.d}]_{C.q} {c.tag.value} d_dual={c.d_dual}"


def _f_poly(F: FieldSpec, coeffs: Sequence[int], k: int) -> Poly:
    """f from (f_0, ..., f_{k-2}, f_k); the x^(k-1) slot is skipped."""
    if len(coeffs) != k:
        raise UsageError(f"--f needs {k} values: f_0..f_{k - 2}, f_k")
    terms = {i: coeffs[i] for i in range(k - 1)}
    terms[k] = coeffs[-1]
    return Poly.from_terms(F, terms)


# -- subcommands ------------------------------------------------------------------------

def cmd_construct(args) -> int:
    F = _field(args)
    if args.family == "rl":
        if args.delta is None:
            raise UsageError("construct rl needs --delta")
        C = roth_lempel(F, args.S, args.k, args.delta)
    else:
        cfg = _cfg(args)
        C = {"grs": grs, "egrs": egrs, "esgrs": esgrs}[args.family](cfg, args.k)
    _write_code(C, args.out)
    # keep stdout clean for the code file when no --out is given
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    print(_summary(C), file=stream)
    return 0


def cmd_classify(args) -> int:
    C = _read_code(args.code)
    print(_summary(C))
    if args.columns:
        print(f"mds_by_columns={is_mds_by_columns(C)} nmds_by_columns={is_nmds_by_columns(C)}")
    return 0


def cmd_deepholes(args) -> int:
    C = _read_code(args.code)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["vector", "error_distance", "rho", "is_deep_hole"])
    if args.vector:
        reports = [report_for(C, vec) for vec in args.vector]
    else:
        build_syndrome_table(C)
        reports = enumerate_deep_holes(C, limit=args.limit)
    for r in reports:
        w.writerow([vector_str(r.vector), r.error_distance, r.rho, int(r.is_deep_hole)])
    return 0


def cmd_criteria(args) -> int:
    cfg = _cfg(args)
    F = cfg.field
    f = _f_poly(F, args.f, args.k)
    w = csv.writer(sys.stdout, lineterminator="\n")
    if F.coerce(args.g_kp1) == 0:
        # class 1: list g_{k-1} values giving deep holes
        w.writerow(["g_km1", "deep_hole"])
        for g in F.nonzero():
            w.writerow([g, int(class1_is_deep_hole(cfg, args.k, g, f, args.u))])
        return 0
    fs = forbidden_set(cfg, args.k, args.g_kp1, F.sub(F.coerce(args.u), f.coeff(args.k)))
    w.writerow(["set", "value"])
    for name, vals in (("L1", fs.L1), ("L2", fs.L2), ("L", fs.L), ("admissible", fs.admissible(F))):
        for x in sorted(vals):
            w.writerow([name, x])
    return 0


def cmd_extend(args) -> int:
    C = _read_code(args.code)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        res = extend_by_deep_hole(C, args.u, check=not args.no_check)
    for wmsg in caught:
        print(f"warning: {wmsg.message}", file=sys.stderr)
    if args.out:
        _write_code(res.extended, args.out)
    bc, ec = res.base_class, res.extended_class
    print(json.dumps({
        "u": list(res.u),
        "rho": res.rho,
        "error_distance": res.error_distance,
        "base": {"n": C.n, "k": C.k, "d": bc.d, "class": bc.tag.value},
        "extended": {"n": res.extended.n, "k": res.extended.k, "d": ec.d, "class": ec.tag.value},
        "hypotheses_hold": res.nongrs_inherited,
    }))
    return 0


def cmd_algorithm1(args) -> int:
    cfg = _cfg(args)
    seed = (args.seed if args.seed is not None else DEFAULT_SEED) if args.shuffle else None
    f_values = [tuple(t) for t in args.f] if args.f else None
    want = None if args.only is None else Tag(args.only.upper())
    out = sys.stdout
    for r in algorithm1(
        cfg,
        args.k,
        args.budget,
        seed=seed,
        g_kp1_values=args.g_kp1,
        g_km1_values=args.g_km1,
        f_values=f_values,
        u_values=args.u,
        verify=not args.no_verify,
    ):
        tag = r.result.extended_class.tag if r.result.extended_class else r.advertised
        if want is not None and tag != want:
            continue
        out.write(json.dumps(r.to_json()) + "\n")
        if args.emit_code:
            out.write(json.dumps({"code": code_to_text(r.result.extended)}) + "\n")
    out.flush()
    return 0


def cmd_equiv(args) -> int:
    A, B = _read_code(args.a), _read_code(args.b)
    w = monomial_equivalent(A, B)
    if w.found:
        print("perm=" + ",".join(map(str, w.perm)))
        print("scale=" + ",".join(map(str, w.scale)))
    else:
        print("NONE")
    return 0


def cmd_mkz_bench(args) -> int:
    C = _read_code(args.code)
    q, n, k = C.q, C.n, C.k
    total = q ** n
    if args.samples is None or args.samples >= total:
        from .code import all_vectors

        U = all_vectors(q, n)
    else:
        rng = random.Random(args.seed if args.seed is not None else DEFAULT_SEED)
        U = [[rng.randrange(q) for _ in range(n)] for _ in range(args.samples)]
    per_u = mkz_cost_bound(n, k, q, exhaustive=False)
    nmds = 0
    worst = 0
    ops_total = 0
    for u in U:
        rep = mkz_check(C, u)
        nmds += rep.verdict
        ops_total += rep.ops_count
        worst = max(worst, rep.ops_count)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["vectors", "nmds_extensions", "ops_total", "ops_max", "bound_per_u", "bound_primal", "bound_dual"])
    w.writerow([
        len(U), nmds, ops_total, worst, per_u,
        mkz_cost_bound(n, k, q), mkz_cost_bound(n, k, q, dual_path=True),
    ])
    return 0


def cmd_reproduce(args) -> int:
    names = list(reproduce.EXAMPLES) if args.example == "all" else [args.example]
    ok = True
    for name in names:
        rep = reproduce.run(name)
        print(rep.to_json() if args.json else rep.to_text())
        ok &= rep.passed
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------------------

def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--modulus", type=_ints, default=None, help="c0,...,cm of a monic irreducible modulus")


def _add_cfg(p: argparse.ArgumentParser, need_k: bool = True) -> None:
    _add_field(p)
    p.add_argument("--S", type=_ints, required=True, help="evaluation points, comma separated")
    p.add_argument("--v", type=_ints, default=None, help="multipliers, comma separated; 1 for all ones")
    p.add_argument("--k", type=int, required=need_k)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mdslab", description="MDS/NMDS codes, deep holes and extensions")
    ap.add_argument("--threads", type=int, default=None, help="worker cap (also MDSLAB_THREADS)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a GRS-family code file")
    p.add_argument("family", choices=["grs", "egrs", "esgrs", "rl"])
    _add_cfg(p)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="parameters and MDS/NMDS tag of a code file")
    p.add_argument("code")
    p.add_argument("--columns", action="store_true", help="also run the column-subset criteria")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("deepholes", help="CSV of deep holes or of given vectors")
    p.add_argument("code")
    p.add_argument("--vector", type=_ints, action="append", help="report this vector (repeatable)")
    p.add_argument("--limit", type=int, default=100)
    p.set_defaults(func=cmd_deepholes)

    p = sub.add_parser("criteria", help="forbidden set and admissible g_(k-1) for an ESGRS candidate")
    _add_cfg(p)
    p.add_argument("--g-kp1", type=int, required=True, help="x^(k+1) coefficient; 0 selects class 1")
    p.add_argument("--f", type=_ints, required=True, help="f_0,...,f_(k-2),f_k")
    p.add_argument("--u", type=int, required=True, help="last coordinate of the candidate")
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("extend", help="extend a code by the row (u, 1)")
    p.add_argument("code")
    p.add_argument("--u", type=_ints, required=True)
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--no-check", action="store_true", help="skip the covering-radius check")
    p.set_defaults(func=cmd_extend)

    for name in ("algorithm1", "search"):
        p = sub.add_parser(name, help="search ESGRS extensions over the coefficient grid")
        _add_cfg(p)
        p.add_argument("--budget", type=int, required=True, help="grid points to examine")
        p.add_argument("--emit", choices=["jsonl"], default="jsonl")
        p.add_argument("--only", choices=["mds", "nmds"], default=None)
        p.add_argument("--shuffle", action="store_true", help="visit each axis in seeded random order")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--g-kp1", type=_ints, default=None, help="restrict g_(k+1)")
        p.add_argument("--g-km1", type=_ints, default=None, help="restrict g_(k-1)")
        p.add_argument("--f", type=_ints, action="append", default=None, help="restrict f (repeatable)")
        p.add_argument("--u", type=_ints, default=None, help="restrict the last coordinate")
        p.add_argument("--emit-code", action="store_true", help="follow each record with the code file")
        p.add_argument("--no-verify", action="store_true")
        p.set_defaults(func=cmd_algorithm1)

    p = sub.add_parser("equiv", help="monomial equivalence witness or NONE")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("mkz-bench", help="run the MKZ check over all (or sampled) u")
    p.add_argument("code")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_mkz_bench)

    p = sub.add_parser("reproduce", help="recompute a worked example and compare")
    p.add_argument("example", choices=list(reproduce.EXAMPLES) + ["all"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            ap.error("--threads must be positive")
        os.environ["MDSLAB_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except (UsageError, MdsLabError) as exc:
        print(f"mdslab: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
