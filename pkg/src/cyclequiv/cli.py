"""Command-line entry point: ``cyclequiv <command> ...``.

Exit codes: ``equiv`` returns 0/1/2 for equivalent/unknown/inequivalent;
``mindist`` returns 0 for an exact distance and 1 for bounds only;
``verify`` returns 0 only if every entry passes. Bad arguments, unparsable
input and refused budgets return 64.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import FieldError, format_poly, gf, parse_poly
from .codes import CodeError, CyclicCodeSpec, QCCodeSpec
from .cosets import (coset_table, coset_to_poly, format_multiset, parse_multiset,
                     poly_to_coset)
from .distance import DEFAULT_BUDGET, min_distance, upper_bound_search
from .equivalence import MODES, verdict
from . import manifest as mf
from . import partition as pt
from . import search as sr

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _progress(args):
    if args.quiet:
        return None
    return lambda msg: print(msg, file=sys.stderr, flush=True)


def _field(q: int):
    try:
        return gf(q)
    except (FieldError, ValueError) as exc:
        raise UsageError(f"--q {q}: {exc}") from None


def _code_set(text: str, table):
    """Multiset grammar or a generator polynomial."""
    s = text.strip()
    if s.startswith("{"):
        return parse_multiset(s, table)
    g = parse_poly(s, table.field)
    return poly_to_coset(g.monic() if not g.is_zero() else g, table)


# --- subcommands ------------------------------------------------------------


def cmd_cosets(args) -> int:
    F = _field(args.q)
    table = coset_table(F, args.n)
    split = table.split
    lines = [f"n = {split.n_q} * {F.p}^{split.i}  (n_q = {split.n_q}, multiplicity <= {table.max_multiplicity})"]
    rows = []
    for j, c in enumerate(table.cosets):
        poly = format_poly(table.coset_polys[j])
        rows.append({"coset": list(c), "size": len(c), "minimal_polynomial": poly})
        lines.append(f"{{{','.join(map(str, c))}}}\t{len(c)}\t{poly}")
    _emit(args, "\n".join(lines), {"q": F.q, "n": args.n, "n_q": split.n_q, "i": split.i,
                                   "cosets": rows})
    return 0


def cmd_equiv(args) -> int:
    F = _field(args.q)
    table = coset_table(F, args.n)
    a = _code_set(args.a, table)
    b = _code_set(args.b, table)
    v = verdict(a, b, args.mode, oracle_cap=args.oracle_cap)
    payload = {"status": v.status.value, "mode": v.mode, "reason": v.reason,
               "witness": None if v.witness is None else {"e": v.witness.e, "b": v.witness.b},
               "a": format_multiset(a), "b": format_multiset(b),
               "gen_a": format_poly(coset_to_poly(a)), "gen_b": format_poly(coset_to_poly(b))}
    _emit(args, str(v), payload)
    return v.exit_code


def cmd_partition(args) -> int:
    F = _field(args.q)
    t0 = time.perf_counter()
    rec = pt.partition_cyclic(F, args.n, args.mode, budget=args.budget, method=args.method)
    text = pt.dumps(rec)
    if args.out:
        Path(args.out).write_text(text)
    if not args.quiet:
        print(f"{len(rec)} classes among {rec.total_enumerated} nonzero divisors "
              f"({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    if args.format == "json":
        _emit(args, "", {"q": F.q, "n": rec.n, "mode": rec.mode, "total": rec.total_enumerated,
                         "classes": [{"multiset": format_multiset(ms), "size": s,
                                      "dimension": ms.dimension,
                                      "generator": format_poly(coset_to_poly(ms))}
                                     for ms, s in zip(rec.representatives, rec.class_sizes)]})
    elif not args.out:
        sys.stdout.write(text)
    else:
        print(f"{len(rec)} classes written to {args.out}")
    return 0


def cmd_mindist(args) -> int:
    F = _field(args.q)
    g = parse_poly(args.gen, F)
    if args.qc:
        try:
            m, ell = (int(t) for t in args.qc.split(","))
        except ValueError:
            raise UsageError(f"--qc expects 'm,ell', got {args.qc!r}") from None
        texts = [t for t in (args.f2, args.f3) if t is not None] + (args.f or [])
        fs = [parse_poly(t, F) for t in texts]
        if len(fs) != ell - 1:
            raise UsageError(f"--qc {m},{ell} needs {ell - 1} multiplier(s), got {len(fs)}")
        spec = QCCodeSpec(F, m, g, tuple(fs))
        if args.n is not None and args.n != spec.n:
            raise UsageError(f"--n {args.n} disagrees with m*ell = {spec.n}")
    else:
        if args.n is None:
            raise UsageError("--n is required for cyclic codes")
        spec = (CyclicCodeSpec.from_check(F, args.n, g) if args.check
                else CyclicCodeSpec(F, args.n, g))
    M = spec.matrix()
    if args.upper_only:
        res = upper_bound_search(M, target=args.target, seed=args.seed, iterations=args.iterations)
    else:
        res = min_distance(M, args.budget)
        if not res.exact and args.iterations:
            res = upper_bound_search(M, target=args.target, seed=args.seed,
                                     iterations=args.iterations, start=res)
    params = f"[{M.n},{M.k},{res.ub}]_{F.q}" if res.exact else f"[{M.n},{M.k},{res.lb}..{res.ub}]_{F.q}"
    sep = "" if F.m == 1 and F.p <= 10 else ","
    witness = sep.join(F.format_element(int(x)) for x in res.witness)
    text = f"{params} cert={res.cert} lb={res.lb} ub={res.ub} method={res.method}"
    if args.witness:
        text += f"\nwitness [{witness}]"
    _emit(args, text, {"n": M.n, "k": M.k, "q": F.q, "lb": res.lb, "ub": res.ub, "cert": res.cert,
                       "method": res.method, "enumerated": res.enumerated,
                       "witness": [int(x) for x in res.witness]})
    return 0 if res.exact else 1


def cmd_search(args) -> int:
    F = _field(args.q)
    if (args.m is None) == (args.n is None):
        raise UsageError("give either --m (quasi-cyclic search) or --n (cyclic sweep)")
    bklc = sr.BKLCTable.load(args.bklc)
    forced = sr.forced_from_text(Path(args.force).read_text(), F) if args.force else []
    cfg = sr.SearchConfig(field=F, n=args.n, m=args.m, ell=args.ell, kmin=args.kmin, kmax=args.kmax,
                          trials=args.trials, seed=args.seed, budget=args.budget, bklc=bklc,
                          forced=forced, out=args.out, progress=not args.quiet)
    kmax = args.kmax if args.kmax is not None else (args.n or args.m)
    if args.n is not None:
        records = sr.cyclic_sweep(cfg)
        header = f"cyclic sweep q={F.q} n={args.n} k={args.kmin}..{kmax} seed={args.seed}"
    else:
        records = sr.asr_search(cfg)
        header = (f"qc search q={F.q} m={args.m} ell={args.ell} k={args.kmin}..{kmax} "
                  f"trials={args.trials} seed={args.seed}")
    if args.derive:
        extra = []
        for rec in records:
            extra.extend(sr.derive_neighbors(rec, bklc, args.budget))
        records = records + extra
    text = sr.dumps_records(records, header)
    if args.out:
        Path(args.out).write_text(text)
    if args.format == "json":
        _emit(args, "", [{"q": r.q, "n": r.n, "k": r.k, "d": r.d, "lb": r.lb, "cert": r.cert,
                          "seed": r.seed, "flag": r.flag, "construction": r.construction}
                         for r in records])
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    text = Path(args.manifest).read_text() if args.manifest else mf.shipped_manifest()
    entries = mf.parse_manifest(text)
    only = {s for s in args.only.split(",") if s} if args.only else set()
    opts = mf.VerifyOptions(budget=args.budget, seed=args.seed, only=only)
    results = []
    for r in mf.verify_manifest(entries, opts, progress=_progress(args)):
        results.append(r)
        if args.format == "text":
            print(r.line(), flush=True)
    passed = sum(r.ok for r in results)
    if args.format == "json":
        _emit(args, "", [r.as_dict() for r in results])
    else:
        print(f"{passed}/{len(results)} entries passed")
    if args.out:
        Path(args.out).write_text(json.dumps([r.as_dict() for r in results], indent=2) + "\n")
    return 0 if passed == len(results) else 1


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--quiet", action="store_true", help="no progress lines on stderr")

    p = _Parser(prog="cyclequiv", description="Equivalence, partitions and searches of cyclic codes.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("cosets", parents=[common], help="cyclotomic cosets of a length")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cosets)

    s = sub.add_parser("equiv", parents=[common], help="affine equivalence of two cyclic codes")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", required=True, help="coset multiset like '{1,2,4}^2 + {0}' or a polynomial")
    s.add_argument("--b", required=True)
    s.add_argument("--mode", choices=MODES, default="strict")
    s.add_argument("--oracle-cap", type=int, default=None,
                   help="run the exhaustive monomial search when n!(q-1)^(n-1) is below this")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("partition", parents=[common], help="classes of all cyclic codes of a length")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=MODES, default="strict")
    s.add_argument("--method", choices=("orbit", "pairwise"), default="orbit")
    s.add_argument("--budget", type=int, default=pt.DEFAULT_BUDGET)
    s.add_argument("--out")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("mindist", parents=[common], help="minimum distance of a cyclic or QC code")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--gen", required=True)
    s.add_argument("--check", action="store_true", help="--gen is the check polynomial")
    s.add_argument("--qc", help="m,ell for a 1-generator quasi-cyclic code")
    s.add_argument("--f2", help="multiplier of the second block")
    s.add_argument("--f3", help="multiplier of the third block")
    s.add_argument("--f", action="append", help="further multipliers f_4, f_5, ... (repeat)")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--upper-only", action="store_true")
    s.add_argument("--target", type=int)
    s.add_argument("--iterations", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--witness", action="store_true", help="print the lightest codeword")
    s.set_defaults(func=cmd_mindist)

    s = sub.add_parser("search", parents=[common], help="equivalence-aware code search")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, help="block length (quasi-cyclic search)")
    s.add_argument("--n", type=int, help="length (cyclic sweep)")
    s.add_argument("--ell", type=int, default=2)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kmin", type=int, default=1)
    s.add_argument("--kmax", type=int)
    s.add_argument("--budget", type=int, default=sr.SEARCH_BUDGET)
    s.add_argument("--bklc", help="best-known table (q n k d lines); default: shipped snapshot")
    s.add_argument("--force", help="file of 'g f2 f3 ...' lines evaluated first")
    s.add_argument("--derive", action="store_true", help="also shorten/puncture/extend each record")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", parents=[common], help="check a manifest of code parameters")
    s.add_argument("--manifest", help="default: the shipped paper_codes.manifest")
    s.add_argument("--only", help="comma-separated labels")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write JSON results here")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FieldError, CodeError, mf.ManifestError, pt.BudgetError,
            ValueError, OSError) as exc:
        print(f"cyclequiv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
