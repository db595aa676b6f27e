"""Command line entry point.

Exit codes: 0 success, 1 falsified identity, 2 usage or domain error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .combinatorics import DomainError, Multiset, ResourceError
from .cores import bruhat_lower_set, c_map
from .katalan import KatalanTerm, OracleGuardError, closed_gkk, gkk, render_grid
from .rootideal import RootIdeal
from .straighten import (StraighteningAnomaly, evaluate_gterms, g_lowered, lowering_power_terms,
                         omega, omega_multiset, vanishing_bound)
from .verify import CHECKS, SweepConfig, run


class UsageError(Exception):
    pass


def parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()", "-"):
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as comma-separated integers") from None


def parse_ideal(text: str, ell: int) -> RootIdeal:
    """'row:startcol' pairs, e.g. '1:3,2:4'; unlisted rows are empty."""
    cols = [None] * ell
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        try:
            row, col = (int(x) for x in chunk.split(":"))
        except ValueError:
            raise UsageError(f"bad ideal entry {chunk!r}; expected row:startcol") from None
        if not 1 <= row <= ell:
            raise UsageError(f"row {row} outside [1, {ell}]")
        cols[row - 1] = col
    return RootIdeal(ell, cols)


def _dump(obj) -> str:
    return json.dumps(obj)


def _gterms_json(terms) -> list:
    return [{"coeff": c, "nu": list(nu), "lowered": S.to_json()} for c, nu, S in terms]


def _omega_json(counter) -> list:
    return [{"vector": list(nu), "multiplicity": m} for nu, m in sorted(counter.items())]


def cmd_gkk(args) -> int:
    lam = parse_vector(args.partition)
    if args.closed:
        f = closed_gkk(lam, args.k)
    else:
        f = gkk(lam, args.k, generalized=args.generalized)
    print(str(f) if args.ascii else _dump(f.to_json()))
    return 0


def cmd_lower(args) -> int:
    lam = parse_vector(args.partition)
    if not 1 <= args.z <= len(lam):
        raise DomainError(f"z={args.z} outside [1, {len(lam)}]")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    terms = lowering_power_terms(lam, args.k, args.z, args.n)
    direct = g_lowered(lam, args.k, Multiset.power(args.z, args.n))
    formula = evaluate_gterms(terms, args.k)
    om = omega(lam, args.k, args.z) if args.n == 1 else omega_multiset(lam, args.k, [args.z] * args.n)
    bound = vanishing_bound(lam, args.z)
    report = {
        "partition": list(lam), "k": args.k, "z": args.z, "n": args.n,
        "omega": _omega_json(om),
        "terms": _gterms_json(terms),
        "formula": formula.to_json(),
        "direct": direct.to_json(),
        "equal": formula == direct,
        "vanishing_bound": bound,
        "beyond_bound": args.n > bound,
    }
    if args.ascii:
        print(f"L_{args.z}^{args.n} g{lam}  (k={args.k})")
        print("omega:")
        for nu, m in sorted(om.items()):
            print(f"  {m} x {nu}")
        print(f"formula: {formula}")
        print(f"direct:  {direct}")
        print(f"equal:   {report['equal']}")
        if report["beyond_bound"]:
            print(f"n exceeds the vanishing bound {bound}")
    else:
        print(_dump(report))
    return 0 if report["equal"] else 1


def _config(args) -> SweepConfig:
    cfg = SweepConfig.from_json(args.config) if args.config else SweepConfig()
    overrides = {"max_ell": args.max_ell, "max_k": args.max_k, "max_n": args.max_n,
                 "degree_cap": args.degree_cap, "random_instances": args.random,
                 "rng_seed": args.seed, "parallelism": args.parallel}
    overrides = {key: v for key, v in overrides.items() if v is not None}
    if args.strict_length:
        overrides["strict_length"] = True
    return replace(cfg, **overrides)


def cmd_verify(args) -> int:
    names = sorted(CHECKS) if args.check == "all" else [args.check]
    if any(n not in CHECKS for n in names):
        raise UsageError(f"unknown check {args.check!r}; choose from all, {', '.join(sorted(CHECKS))}")
    cfg = _config(args)
    summaries = [run(n, cfg, keep_records=args.records) for n in names]
    if args.ascii:
        for s in summaries:
            print(f"{s['check']}: {s['instances']} instances, {s['passes']} pass, {s['failures']} fail")
            for rec in s.get("records", []):
                print(f"  {'pass' if rec['equal'] else 'FAIL'} {rec['instance']}")
            if s["first_failure"] is not None:
                print(f"  first failure: {s['first_failure']}")
    else:
        print(_dump(summaries if len(summaries) > 1 else summaries[0]))
    return 0 if all(s["failures"] == 0 for s in summaries) else 1


def cmd_grid(args) -> int:
    gamma = parse_vector(args.gamma)
    ell = args.ell if args.ell is not None else len(gamma)
    t = KatalanTerm(parse_ideal(args.ideal, ell), Multiset(parse_vector(args.multiset)), gamma)
    pic = render_grid(t)
    if args.ascii:
        sys.stdout.write(pic)
    else:
        print(_dump({"term": t.to_json(), "grid": pic}))
    return 0


def cmd_omega(args) -> int:
    lam = parse_vector(args.partition)
    M = parse_vector(args.multiset)
    res = omega_multiset(lam, args.k, M)
    if args.ascii:
        for nu, m in sorted(res.items()):
            print(f"{m} x {nu}")
    else:
        print(_dump(_omega_json(res)))
    return 0


def cmd_bruhat(args) -> int:
    lam = parse_vector(args.partition)
    ell = args.ell if args.ell is not None else len(lam)
    if len(lam) > ell:
        raise DomainError(f"{lam} has more than ell={ell} parts")
    lam = lam + (0,) * (ell - len(lam))
    lower = bruhat_lower_set(lam, args.k, ell, strict_length=args.strict_length)
    if args.ascii:
        for mu in lower:
            print(f"{mu}  core {c_map(mu, args.k)}")
    else:
        print(_dump([list(mu) for mu in lower]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="katalan", description="Katalan and K-k-Schur function computations.")
    p.add_argument("--ascii", action="store_true", help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gkk", help="expand a K-k-Schur function in the h basis")
    g.add_argument("partition")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--closed", action="store_true", help="closed k-Schur Katalan function instead")
    g.add_argument("--generalized", action="store_true", help="accept vectors from the extended set")
    g.set_defaults(func=cmd_gkk)

    lo = sub.add_parser("lower", help="straighten L_z^n g_lam and compare with direct evaluation")
    lo.add_argument("partition")
    lo.add_argument("--k", type=int, required=True)
    lo.add_argument("--z", type=int, required=True)
    lo.add_argument("--n", type=int, default=1)
    lo.set_defaults(func=cmd_lower)

    v = sub.add_parser("verify", help="run an identity sweep")
    v.add_argument("check", help="check name, or 'all'")
    v.add_argument("--config", help="JSON file with SweepConfig fields")
    v.add_argument("--max-ell", type=int)
    v.add_argument("--max-k", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--degree-cap", type=int)
    v.add_argument("--random", type=int, help="number of random instances")
    v.add_argument("--seed", type=int)
    v.add_argument("--parallel", type=int, help="worker processes")
    v.add_argument("--records", action="store_true", help="include every instance record")
    v.add_argument("--strict-length", action="store_true",
                   help="Bruhat lower sets keep only partitions with exactly ell positive parts")
    v.set_defaults(func=cmd_verify)

    gr = sub.add_parser("grid", help="draw a Katalan function as an ASCII grid")
    gr.add_argument("--ell", type=int)
    gr.add_argument("--ideal", default="", help="row:startcol pairs, e.g. 1:3,2:4")
    gr.add_argument("--multiset", default="")
    gr.add_argument("--gamma", required=True)
    gr.set_defaults(func=cmd_grid)

    om = sub.add_parser("omega", help="the Omega set of lam for a multiset of lowering indices")
    om.add_argument("partition")
    om.add_argument("--k", type=int, required=True)
    om.add_argument("--multiset", "--z", default="", help="comma-separated lowering indices")
    om.set_defaults(func=cmd_omega)

    b = sub.add_parser("bruhat", help="Bruhat lower set via core containment")
    b.add_argument("partition")
    b.add_argument("--ell", type=int)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--strict-length", action="store_true")
    b.set_defaults(func=cmd_bruhat)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, DomainError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceError, OracleGuardError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except StraighteningAnomaly as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
