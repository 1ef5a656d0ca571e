"""Command-line front end.

Exit codes: 0 success, 1 a verification found a failure, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import combinat, klr, qloop_a, schur_weyl
from .errors import InvariantViolation, KlrkitError
from .quiver_ar import DynkinQuiver, HeightFunction, ar_quiver_dot, build_phi, default_height
from .root_system import build_root_system

DEFAULT_MAX_HEIGHT = 8
DUALITY_MAX_HEIGHT = 4
MAX_RANK_A = 3


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _max_height(default: int = DEFAULT_MAX_HEIGHT) -> int:
    raw = os.environ.get("KLRKIT_MAX_HEIGHT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"KLRKIT_MAX_HEIGHT must be an integer, got {raw!r}") from exc


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")


# -- argument helpers ----------------------------------------------------------

def _root_system(args):
    return build_root_system(args.type, args.rank)


def _quiver(args, rs):
    return DynkinQuiver.parse(rs, args.arrows) if args.arrows else DynkinQuiver.default(rs)


def _height(args, quiver):
    if args.height:
        return HeightFunction(_ints(args.height))
    return default_height(quiver)


def _phi(args):
    rs = _root_system(args)
    q = _quiver(args, rs)
    return build_phi(q, _height(args, q))


def _beta(args, rs, cap):
    beta = _ints(args.beta)
    if len(beta) != rs.rank:
        raise UsageError(f"--beta needs {rs.rank} entries")
    if any(b < 0 for b in beta):
        raise UsageError("--beta entries must be nonnegative")
    if sum(beta) > cap:
        raise UsageError(f"height of beta is {sum(beta)}, above the cap {cap} "
                         "(raise it with KLRKIT_MAX_HEIGHT)")
    return beta


def _require_type_a(rs):
    if rs.type_tag != "A":
        raise UsageError("this subcommand only supports type A")
    cap = int(os.environ.get("KLRKIT_MAX_RANK", MAX_RANK_A))
    if rs.rank > cap:
        raise UsageError(f"rank {rs.rank} is above the cap {cap} (raise it with KLRKIT_MAX_RANK)")


def _pair(text, rs):
    p = _ints(text)
    if len(p) != 2 or not all(1 <= x <= rs.rank for x in p):
        raise UsageError(f"--pair needs two vertices in 1..{rs.rank}")
    return p


# -- subcommands -----------------------------------------------------------------

def cmd_roots(args) -> int:
    rs = _root_system(args)
    if args.format == "text":
        print(f"{rs.name}: {len(rs.positive_roots)} positive roots, Coxeter number "
              f"{rs.coxeter_number()}")
        for w, a in zip(rs.positive_roots, rs.positive_alpha):
            print(f"  {rs.root_str(w)}  alpha={list(a)}  weight={list(w.coords)}")
        return 0
    _emit_json({
        "type": rs.name,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "count": len(rs.positive_roots),
        "coxeter_number": rs.coxeter_number(),
        "roots": [{"label": rs.root_str(w), "alpha": list(a), "weight": list(w.coords)}
                  for w, a in zip(rs.positive_roots, rs.positive_alpha)],
    })
    return 0


def cmd_ar_quiver(args) -> int:
    pt = _phi(args)
    rs = pt.rs
    if args.format == "dot":
        sys.stdout.write(ar_quiver_dot(pt))
        return 0
    rows = [{"root": rs.root_str(w), "alpha": list(rs.to_alpha(w)), "vertex": list(v)}
            for w, v in pt.rows()]
    spectral = [{"i": i, "lambda": pt.lambda_of[i], "a": f"q^{pt.a_exp_of[i]}"}
                for i in rs.vertices()]
    if args.format == "text":
        print(f"{rs.name} arrows={pt.quiver.arrows_str()} xi={list(pt.xi.xi)} "
              f"coxeter={list(pt.coxeter_word)}")
        for r in rows:
            print(f"  {r['root']} -> {tuple(r['vertex'])}")
        for s in spectral:
            print(f"  lambda_{s['i']} = w{s['lambda']}, a_{s['i']} = {s['a']}")
        return 0
    _emit_json({
        "type": rs.name,
        "arrows": pt.quiver.arrows_str(),
        "height": list(pt.xi.xi),
        "coxeter_word": list(pt.coxeter_word),
        "phi": rows,
        "spectral": spectral,
    })
    return 0


def cmd_kostant(args) -> int:
    rs = _root_system(args)
    beta = _beta(args, rs, _max_height())
    parts = combinat.enumerate_kostant(rs, beta)
    if args.format == "text":
        print(f"{len(parts)} Kostant partitions of {list(beta)}")
        for p in parts:
            print("  " + " + ".join(f"{m}*({r})" if m > 1 else f"({r})"
                                    for r, m in p.describe(rs).items()))
        return 0
    _emit_json({"type": rs.name, "beta": list(beta), "count": len(parts),
                "partitions": [p.describe(rs) for p in parts]})
    return 0


def cmd_sequences(args) -> int:
    rs = _root_system(args)
    beta = _beta(args, rs, _max_height())
    seqs = combinat.enumerate_sequences(rs, beta)
    if args.format == "text":
        print(f"{len(seqs)} sequences")
        for s in seqs:
            print("  " + ",".join(map(str, s)))
        return 0
    _emit_json({"type": rs.name, "beta": list(beta), "count": len(seqs),
                "sequences": [list(s) for s in seqs]})
    return 0


def _emit_report(report, fmt) -> int:
    if fmt == "text":
        sys.stdout.write(report.summary())
    else:
        sys.stdout.write(report.to_json())
    return 0 if report.ok else 1


def cmd_verify_klr(args) -> int:
    rs = _root_system(args)
    q = _quiver(args, rs)
    beta = _beta(args, rs, _max_height())
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    report = klr.verify_relations(rs, q, beta, args.trials, args.seed, args.max_degree)
    report.extend(klr.verify_grading(rs, q, beta))
    return _emit_report(report, args.format)


def cmd_rmatrix(args) -> int:
    rs = _root_system(args)
    _require_type_a(rs)
    if args.levels:
        lv = _ints(args.levels)
        if len(lv) != 2 or not all(1 <= x <= rs.rank for x in lv):
            raise UsageError(f"--levels needs two fundamental weights in 1..{rs.rank}")
        r = qloop_a.solve_normalized_R(rs.rank, *lv)
        extra = {}
    else:
        pt = _phi(args)
        i1, i2 = _pair(args.pair or "1,1", rs)
        r = qloop_a.r_matrix_for_pair(pt, i1, i2)
        extra = {"i1": i1, "i2": i2}
    body = r.to_dict()
    if args.format == "text":
        print(f"R(w{r.level1}, w{r.level2}) for n={r.n}: denominator "
              f"{qloop_a.upoly_canonical_str(r.denominator)}")
        for row_label, row in zip(body["target_basis"], body["entries"]):
            print(f"  {row_label}: " + ", ".join(row))
        return 0
    _emit_json({**extra, **body})
    return 0


def cmd_check_pole(args) -> int:
    rs = _root_system(args)
    _require_type_a(rs)
    pt = _phi(args)
    if args.all_pairs:
        out = schur_weyl.check_all_pairs(pt)
        ok = all(r["pass"] for r in out)
    else:
        if not args.pair:
            raise UsageError("give --pair i1,i2 or --all-pairs")
        out = schur_weyl.check_simple_pole(pt, *_pair(args.pair, rs))
        ok = out["pass"]
    if args.format == "text":
        for r in out if isinstance(out, list) else [out]:
            print(f"({r['i1']},{r['i2']}) point {r['point']}: order {r['order']} "
                  f"{'pass' if r['pass'] else 'FAIL'}")
    else:
        _emit_json(out)
    return 0 if ok else 1


def cmd_verify_duality(args) -> int:
    rs = _root_system(args)
    _require_type_a(rs)
    pt = _phi(args)
    beta = _beta(args, rs, _max_height(DUALITY_MAX_HEIGHT))
    if args.N < 1:
        raise UsageError("--N must be >= 1")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    actions = ("twisted", "log") if args.log else ("twisted",)
    report = schur_weyl.verify_bimodule(pt, beta, args.N, args.trials, args.seed, actions)
    report.extend(schur_weyl.verify_highest_weight(pt, beta, args.N))
    return _emit_report(report, args.format)


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="klrkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text"), quiver=True, default_format="json"):
        sp.add_argument("--type", required=True, help="A, D or E")
        sp.add_argument("--rank", required=True, type=int)
        sp.add_argument("--format", choices=formats, default=default_format)
        if quiver:
            sp.add_argument("--arrows", help='orientation, e.g. "1>2,3>2" (default: i>i+1)')
            sp.add_argument("--height", help='height function, e.g. "1,0"')

    common(sub.add_parser("roots", help="positive roots"), quiver=False)
    common(sub.add_parser("ar-quiver", help="the bijection phi and spectral data"),
           formats=("json", "dot", "text"))
    for name, helptext in (("kostant", "Kostant partitions"), ("sequences", "residue sequences")):
        sp = sub.add_parser(name, help=helptext)
        common(sp, quiver=False)
        sp.add_argument("--beta", required=True, help='dimension vector, e.g. "1,1"')

    sp = sub.add_parser("verify-klr", help="check the KLR relations on P_beta")
    common(sp)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=5)

    sp = sub.add_parser("rmatrix", help="normalized R-matrix (type A)")
    common(sp)
    sp.add_argument("--pair", help="vertices i1,i2 (levels read from phi)")
    sp.add_argument("--levels", help="fundamental weights k,l directly")

    sp = sub.add_parser("check-pole", help="pole order of d at a_{i2}/a_{i1} (type A)")
    common(sp)
    sp.add_argument("--pair")
    sp.add_argument("--all-pairs", action="store_true")

    sp = sub.add_parser("verify-duality", help="bimodule checks (type A)")
    common(sp)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--N", type=int, default=4, help="truncation order")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--log", action="store_true", help="also check the log-coordinate action")
    return p


COMMANDS = {
    "roots": cmd_roots,
    "ar-quiver": cmd_ar_quiver,
    "kostant": cmd_kostant,
    "sequences": cmd_sequences,
    "verify-klr": cmd_verify_klr,
    "rmatrix": cmd_rmatrix,
    "check-pole": cmd_check_pole,
    "verify-duality": cmd_verify_duality,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"klrkit: invariant violation: {exc}", file=sys.stderr)
        return 3
    except (UsageError, KlrkitError, ValueError, IndexError) as exc:
        print(f"klrkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
