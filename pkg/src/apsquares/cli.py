"""Command line entry point.  Exit codes: 0 success, 1 error, 2 ran but
inconclusive."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import covering, pipeline
from .ap import search_aps
from .curves import model_four
from .descent import certify_z_zero, full_two_descent, isogeny_selmer_dims, rank_window
from .elliptic import cohn_predicts_infinite, root_number, torsion_subgroup
from .pell import ap_intersection
from .subsets import canonical_primitive, enumerate_classes, format_subset, is_symmetric, parse_subset

OK, ERROR, INCONCLUSIVE = 0, 1, 2


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _store(args) -> pipeline.CertificateStore:
    if getattr(args, "no_cache", False):
        return pipeline.CertificateStore()
    return pipeline.CertificateStore(pipeline.cache_path(args.cache))


def cmd_qn(args) -> int:
    rows = pipeline.compute_q_table(args.max, args.bound, _store(args), args.jobs,
                                    progress=lambda r: print(r.format(), flush=True))
    if args.json:
        print(json.dumps([r.to_json() for r in rows]))
    return OK if all(r.status == "proved" for r in rows) else INCONCLUSIVE


def cmd_certify(args) -> int:
    I = canonical_primitive(parse_subset(args.subset))
    store = _store(args)
    if len(I) == 4:
        cert = store.get(I)
        if cert is None:
            cert = certify_z_zero(I, search_bound=args.bound)
            store.put(cert)
        print(cert.to_json())
        return INCONCLUSIVE if cert.conclusion == "inconclusive" else OK
    oracle = pipeline.SubsetOracle(store, args.bound)
    status = oracle.status(I)
    print(json.dumps({"subset": list(I), "status": status,
                      "witnesses": [[w.q, w.a] for w in oracle.witnesses.get(I, [])]}))
    return INCONCLUSIVE if status == "undecided" else OK


def cmd_search(args) -> int:
    for ap in search_aps(_ints(args.positions), args.bound):
        print(ap)
    return OK


def cmd_curve(args) -> int:
    I = parse_subset(args.subset)
    M = model_four(I)
    E = M.curve
    print(f"I = {{{format_subset(M.subset)}}}  m0 = {M.m0}  m1 = {M.m1}")
    print(f"E_I: {E.pretty()}")
    print(f"torsion: {torsion_subgroup(E).label()}")
    dim, _ = full_two_descent(E)
    print(f"2-Selmer dimension: {dim}")
    for T in E.two_torsion():
        d1, d2 = isogeny_selmer_dims(E, T[0])
        print(f"2-isogeny at ({T[0]}, 0): Selmer dims {d1} and {d2} (dual)")
    lo, up = rank_window(E, args.height, args.selmer_height)
    print(f"rank window: ({lo}, {up})")
    if is_symmetric(M.subset):
        _, n1, n2, _ = M.subset
        print(f"root number: {root_number(n1, n2):+d}")
    return OK if lo == up else INCONCLUSIVE


def cmd_covering(args) -> int:
    I, J = parse_subset(args.subset), parse_subset(args.J)
    j1, j2 = _ints(args.j)
    M = covering.quartic_model(I, J)
    for i, j in ((1, j1), (2, j2)):
        fp = covering.factor_pair(M, i, j)
        print(f"p_{i},{j},+ = {fp.pretty('+')}")
        print(f"p_{i},{j},- = {fp.pretty('-')}")
    datum = covering.analyse_choice(I, J, j1, j2, args.height)
    print(datum.to_json())
    return OK if datum.resolved else INCONCLUSIVE


def cmd_pell(args) -> int:
    for n in ap_intersection(args.q1, args.a1, args.q2, args.a2, args.count):
        print(n)
    return OK


def cmd_classes(args) -> int:
    count, classes = enumerate_classes(args.N, args.k, args.symmetric)
    print(count)
    if args.list:
        for I in classes:
            print(format_subset(I))
    return OK


def cmd_sieve(args) -> int:
    progress = (lambda i, n: print(f"certified {i}/{n}", file=sys.stderr, flush=True)) if args.verbose else None
    st = pipeline.sieve_stats(args.N, args.k, _store(args), args.jobs, progress=progress)
    print(st.report())
    return OK


def cmd_cohn(args) -> int:
    w = root_number(2, args.n)
    print(f"root number of {{0,2,{args.n},{args.n + 2}}}: {w:+d}")
    print("parity predicts infinitely many progressions" if cohn_predicts_infinite(args.n)
          else "parity predicts even rank")
    return OK


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(seed=args.seed, only=args.only, echo=print)
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return ERROR if failed else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apsquares", description="Squares in arithmetic progressions.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def cached(sp):
        sp.add_argument("--cache", help=f"certificate store (default ${pipeline.CACHE_ENV} or "
                                        f"{pipeline.DEFAULT_CACHE})")
        sp.add_argument("--no-cache", action="store_true", help="keep certificates in memory only")

    s = sub.add_parser("qn", help="table of Q(N)")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--bound", type=int, default=10**4, help="witness search box")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    cached(s)
    s.set_defaults(fn=cmd_qn)

    s = sub.add_parser("certify-subset", help="decide whether a subset carries progressions")
    s.add_argument("--subset", required=True)
    s.add_argument("--bound", type=int, default=10**4)
    cached(s)
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("search-ap", help="progressions with squares at given positions")
    s.add_argument("--positions", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("curve", help="the elliptic curve of a 4-subset")
    s.add_argument("--subset", required=True)
    s.add_argument("--height", type=int, default=30)
    s.add_argument("--selmer-height", type=int, default=100)
    s.set_defaults(fn=cmd_curve)

    s = sub.add_parser("covering", help="covering data for a 5-subset")
    s.add_argument("--subset", required=True)
    s.add_argument("--J", required=True)
    s.add_argument("--j", required=True, help="j1,j2")
    s.add_argument("--height", type=int, default=60)
    s.set_defaults(fn=cmd_covering)

    s = sub.add_parser("pell", help="positions common to two progressions q*n + a^2")
    for name in ("q1", "a1", "q2", "a2"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--count", type=int, default=10)
    s.set_defaults(fn=cmd_pell)

    s = sub.add_parser("classes", help="count equivalence classes of k-subsets of {0..N-1}")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--list", action="store_true")
    s.set_defaults(fn=cmd_classes)

    s = sub.add_parser("sieve", help="descent statistics over the 4- or 5-classes")
    s.add_argument("--N", type=int, default=52)
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--jobs", type=int, default=1)
    cached(s)
    s.set_defaults(fn=cmd_sieve)

    s = sub.add_parser("cohn", help="parity prediction for {0,2,n,n+2}")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_cohn)

    s = sub.add_parser("verify-paper", help="golden values and property checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--only", help="run checks whose name contains this text")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
