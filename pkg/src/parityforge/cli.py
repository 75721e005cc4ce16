"""Command line front end.

Exit codes: 0 success, 2 bad parameters or unparsable input, 3 no
construction covers the request, 4 a search exhausted its range. Flags
beat the PF_WORKERS / PF_SEGMENT / PF_BOUND environment variables, which
beat the built-in defaults. All JSON output is canonical: sorted keys,
no whitespace, one document (or one JSONL row) per line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    build_construction,
    construction_to_dict,
    list_theorems,
    make_stage2_input,
    stage1_cutoff,
    stage1_system,
    stage2_case_for_pair,
    theorem_info,
    verify_construction,
)
from .errors import (
    CaseUnavailable,
    FormParseError,
    Incompatible,
    NotOdd,
    OutOfDomain,
    ParityForgeError,
)
from .forms import parse_system
from .search import (
    DEFAULT_BOUND,
    DEFAULT_SEGMENT,
    e2_gap_scan,
    find_simultaneous_e2,
    oracle_scan,
    search_witnesses,
    stage2_input_from_hit,
    verify_witness,
    witness_to_dict,
)
from .twins import check_hypothesis_t

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_UNAVAILABLE = 3
EXIT_EXHAUSTED = 4


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise OutOfDomain(f"environment variable {name}={raw!r} is not an integer")


def _resolve(value: int | None, env: str, fallback: int) -> int:
    if value is not None:
        return value
    return _env_int(env, fallback)


def _parse_value(text: str):
    if "," in text:
        try:
            return tuple(int(part) for part in text.split(","))
        except ValueError:
            raise OutOfDomain(f"cannot parse value {text!r}")
    try:
        return int(text)
    except ValueError:
        raise OutOfDomain(f"cannot parse value {text!r}")


def _stage2_from_args(args, n: int):
    if args.q is not None:
        if args.case is None:
            raise OutOfDomain("--q needs --case to say which stage-2 family it anchors")
        return make_stage2_input(args.case, args.q, n)
    bound = _resolve(args.bound, "PF_BOUND", DEFAULT_BOUND)
    segment = _resolve(args.segment, "PF_SEGMENT", DEFAULT_SEGMENT)
    workers = _resolve(args.workers, "PF_WORKERS", 1)
    hits = find_simultaneous_e2(
        stage1_system(), stage1_cutoff(n), hi=bound, limit=64, segment=segment, workers=workers
    )
    for hit in hits:
        if args.case is None or stage2_case_for_pair(hit.pair) == args.case:
            return stage2_input_from_hit(hit, n)
    raise _Exhausted(
        f"no stage-1 pair{'' if args.case is None else f' for case {args.case}'} below {bound}"
    )


class _Exhausted(Exception):
    pass


def _build_from_args(args):
    theorem = args.theorem
    target = getattr(args, "target", None)
    n = getattr(args, "n", None)
    stage2 = None
    if theorem == "T12a" and target in ("omega", "d"):
        if n is None:
            raise OutOfDomain("T12a needs n")
        stage2 = _stage2_from_args(args, n)
    return build_construction(
        theorem,
        n=n,
        A=getattr(args, "A", None),
        target=target,
        twin_limit=getattr(args, "twin_limit", 10**6),
        stage2=stage2,
    )


def _print_construction(c, report, out) -> None:
    claim_value = (
        "{" + ",".join(str(v) for v in c.claim.value) + "}"
        if isinstance(c.claim.value, tuple)
        else str(c.claim.value)
    )
    shift = "pair-dependent" if c.claim.shift is None else str(c.claim.shift)
    print(f"theorem {c.theorem}" + (f"  case {c.case}" if c.case else ""), file=out)
    params = []
    if c.n is not None:
        params.append(f"n={c.n}")
    if c.A is not None:
        params.append(f"A={c.A}")
    if c.target:
        params.append(f"target={c.target}")
    if params:
        print("params: " + "  ".join(params), file=out)
    print(f"claim: {c.claim.statistic} = {claim_value} at shift {shift}", file=out)
    print("base: " + ", ".join(str(f) for f in c.base.forms), file=out)
    print(
        f"constraint: m = {c.constraint.residue} (mod {c.constraint.modulus})",
        file=out,
    )
    print("reduced: " + ", ".join(str(f) for f in c.adjoined.reduced.forms), file=out)
    for fi, plants in enumerate(c.recipe.plants):
        if plants:
            parts = ", ".join(
                f"{pl.p}^{pl.exponent}" + ("" if pl.kind == "divides" else f" ({pl.kind})")
                for pl in plants
            )
            print(f"planted on L{fi + 1}: {parts}", file=out)
    for rel in c.relations:
        print(
            f"relation: {rel.ci}*L{rel.i + 1} - {rel.cj}*L{rel.j + 1} = {rel.shift}",
            file=out,
        )
    for pred in c.predictions:
        lo, hi = pred.low, pred.high
        print(
            f"pair (L{pred.relation.i + 1},L{pred.relation.j + 1}): "
            f"x = {lo.multiplier}*L{lo.form + 1}, x+{pred.shift} = {hi.multiplier}*L{hi.form + 1}; "
            f"fixed {lo.fixed.value} | {hi.fixed.value}",
            file=out,
        )
    print(f"C: {c.C}", file=out)
    if c.tags:
        print("tags: " + ", ".join(f"eq {t}" for t in c.tags), file=out)
    if c.unproven_sketch:
        print("warning: this branch follows an unproven sketch", file=out)
    if report is not None:
        for name, passed, detail in report.checks:
            line = f"check {name}: {'ok' if passed else 'FAIL'}"
            if detail:
                line += f" ({detail})"
            print(line, file=out)


def cmd_construct(args) -> int:
    c = _build_from_args(args)
    report = verify_construction(c) if args.verify else None
    if args.json:
        print(canonical_json(construction_to_dict(c, report)))
    else:
        _print_construction(c, report, sys.stdout)
    if report is not None and not report.passed:
        return 1
    return EXIT_OK


def cmd_witness(args) -> int:
    c = _build_from_args(args)
    bound = _resolve(args.bound, "PF_BOUND", DEFAULT_BOUND)
    segment = _resolve(args.segment, "PF_SEGMENT", DEFAULT_SEGMENT)
    workers = _resolve(args.workers, "PF_WORKERS", 1)
    witnesses, mismatches = search_witnesses(
        c, hi=bound, limit=args.limit, segment=segment, workers=workers
    )
    bad = 0
    for w in witnesses:
        if args.check and not verify_witness(w):
            bad += 1
            print(f"verification failed at index {w.ell}", file=sys.stderr)
            continue
        print(canonical_json(witness_to_dict(w)))
    print(
        f"witnesses: {len(witnesses) - bad}  mismatches: {len(mismatches) + bad}  "
        f"searched: [0,{bound})  C={c.C}",
        file=sys.stderr,
    )
    for exc in mismatches:
        print(f"mismatch: {exc}", file=sys.stderr)
    if len(witnesses) - bad == 0:
        return EXIT_EXHAUSTED
    return EXIT_OK


def cmd_scan(args) -> int:
    value = _parse_value(args.value)
    statistic = args.statistic
    if statistic == "pattern" and isinstance(value, int):
        value = (value,)
    matches = oracle_scan(statistic, value, args.shift, args.limit)
    if args.json:
        doc = {
            "schema": "parity-forge/1",
            "kind": "scan",
            "statistic": statistic,
            "value": list(value) if isinstance(value, tuple) else value,
            "shift": args.shift,
            "limit": args.limit,
            "matches": matches,
        }
        print(canonical_json(doc))
    else:
        for x in matches:
            print(f"{x} {x + args.shift}")
        print(f"matches: {len(matches)} up to {args.limit}", file=sys.stderr)
    return EXIT_OK


def cmd_hyp_t(args) -> int:
    report = check_hypothesis_t(args.n, args.limit)
    if args.json:
        doc = {
            "schema": "parity-forge/1",
            "kind": "hyp-t",
            "n": report.n,
            "pair": [report.pair.p, report.pair.q] if report.pair else None,
            "strong": report.strong,
            "searched_up_to": report.searched_up_to,
        }
        print(canonical_json(doc))
    elif report.pair is None:
        print(f"n={args.n}: no twin pair with p(p+2) not dividing n below {args.limit}")
    else:
        kind = "strong (both members coprime to n)" if report.strong else "ordinary"
        print(f"n={args.n}: first pair ({report.pair.p},{report.pair.q}), {kind}")
    return EXIT_OK if report.pair is not None else EXIT_EXHAUSTED


def cmd_admissible(args) -> int:
    system = parse_system(args.system)
    from .forms import check_admissible, is_reduced

    reduced = is_reduced(system)
    cert = check_admissible(system)
    if args.json:
        doc = {
            "schema": "parity-forge/1",
            "kind": "admissible",
            "forms": [[f.a, f.b] for f in system.forms],
            "reduced": reduced,
            "admissible": cert.admissible,
            "witnesses": [[p, x] for p, x in cert.witnesses],
            "failing_prime": cert.failing_prime,
        }
        print(canonical_json(doc))
    else:
        print("reduced: " + ("yes" if reduced else "no"))
        print("admissible: " + ("yes" if cert.admissible else "no"))
        for p, x in cert.witnesses:
            print(f"p={p}: m={x} keeps every form nonzero")
        if cert.failing_prime is not None:
            print(f"every residue class mod {cert.failing_prime} kills some form")
    return EXIT_OK if (reduced and cert.admissible) else 1


def cmd_e2_gaps(args) -> int:
    pairs = e2_gap_scan(args.limit, args.max_gap)
    if args.json:
        doc = {
            "schema": "parity-forge/1",
            "kind": "e2-gaps",
            "limit": args.limit,
            "max_gap": args.max_gap,
            "pairs": [list(p) for p in pairs],
        }
        print(canonical_json(doc))
    else:
        for a, b in pairs:
            print(f"{a} {b}")
        print(f"pairs: {len(pairs)} with gap <= {args.max_gap} up to {args.limit}", file=sys.stderr)
    return EXIT_OK


def cmd_theorems(args) -> int:
    rows = list_theorems()
    if args.json:
        doc = [
            {
                "id": t.id,
                "statistic": t.statistic,
                "summary": t.summary,
                "domain": t.domain,
                "targets": list(t.targets),
            }
            for t in rows
        ]
        print(canonical_json(doc))
    else:
        for t in rows:
            print(f"{t.id:5s} {t.summary}  [{t.domain}]")
    return EXIT_OK


def _add_build_flags(sub, with_search: bool):
    sub.add_argument("theorem", choices=[t.id for t in list_theorems()])
    sub.add_argument("-n", type=int, default=None, help="shift between the pair members")
    sub.add_argument("-A", type=int, default=None, help="target statistic value")
    sub.add_argument(
        "--target",
        choices=("omega", "big_omega", "d", "pattern"),
        default=None,
        help="statistic for theorems proving several",
    )
    sub.add_argument("--case", type=int, choices=(1, 2, 3), default=None, help="stage-2 case")
    sub.add_argument("--q", type=int, default=None, help="anchor value of a known stage-1 pair")
    sub.add_argument("--twin-limit", type=int, default=10**6, dest="twin_limit")
    sub.add_argument("--bound", type=int, default=None, help="search bound [env PF_BOUND]")
    sub.add_argument("--segment", type=int, default=None, help="segment size [env PF_SEGMENT]")
    sub.add_argument("--workers", type=int, default=None, help="thread count [env PF_WORKERS]")
    if with_search:
        sub.add_argument("--limit", type=int, default=10, help="stop after this many witnesses")
        sub.add_argument(
            "--no-check",
            action="store_false",
            dest="check",
            help="skip the from-scratch verification of each witness",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parity-forge",
        description="construct and search pairs x, x+n sharing a multiplicative statistic",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("construct", help="build and print one construction")
    _add_build_flags(p, with_search=False)
    p.add_argument("--verify", action="store_true", help="recheck the construction")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = commands.add_parser("witness", help="search witnesses for a construction")
    _add_build_flags(p, with_search=True)
    p.set_defaults(func=cmd_witness)

    p = commands.add_parser("scan", help="exhaustive statistic scan (reference oracle)")
    p.add_argument("--statistic", required=True, choices=("omega", "big_omega", "d", "pattern"))
    p.add_argument("--value", required=True, help="integer, or comma pattern like 2,1,1,1")
    p.add_argument("--shift", type=int, default=1)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = commands.add_parser("hyp-t", help="first twin pair whose product misses n")
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hyp_t)

    p = commands.add_parser("admissible", help="check a triplet given as 'a,b;a,b;a,b'")
    p.add_argument("system")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_admissible)

    p = commands.add_parser("e2-gaps", help="consecutive E2 numbers at small gaps")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--max-gap", type=int, default=2, dest="max_gap")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_e2_gaps)

    p = commands.add_parser("theorems", help="list the catalog")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_theorems)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except CaseUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except (OutOfDomain, NotOdd, FormParseError, Incompatible, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ParityForgeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
