"""Command-line front end.

Exit codes: 0 on success, 1 when ``--strict`` is set and the verdict is
negative, 2 on any error.  ``--json`` switches every command to a stable
machine-readable rendering with rationals as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .coherence import (
    Assessment,
    check_coherence,
    extension_interval,
    fraction_str,
    interval_to_json,
    verdict_to_json,
)
from .conditionals import (
    constituents,
    parse_conditional,
    quasi_conjunction,
    quasi_disjunction,
    truth_value,
)
from .errors import CohereError
from .inference import (
    GammaRegion,
    KnowledgeBase,
    RULE_KINDS,
    all_ones,
    loop_entails,
    loop_family,
    p_consistent,
    p_entails,
    p_entails_qc,
    rule_bounds,
)
from .kbfile import load_kb, parse_rational
from .oracle import extension_interval_bruteforce, sigma_polytope, vertices
from .tnorms import (
    DRASTIC,
    INF,
    LUKASIEWICZ,
    MINIMUM,
    PRODUCT,
    hamacher,
    tconorm,
    tnorm,
)

_FAMILIES = {
    "min": MINIMUM,
    "minimum": MINIMUM,
    "product": PRODUCT,
    "lukasiewicz": LUKASIEWICZ,
    "drastic": DRASTIC,
}

REGION_NAMES = ("Lqc", "Uqc", "Lqd", "Uqd")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohere",
        description=(
            "Exact coherence checking, p-entailment, and probability bound "
            "propagation for conditional events."
        ),
    )
    parser.add_argument("--version", action="version", version=f"cohere {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, strict=True, as_json=True):
        if as_json:
            p.add_argument("--json", action="store_true", help="machine-readable output")
        if strict:
            p.add_argument(
                "--strict",
                action="store_true",
                help="exit with status 1 on a negative verdict",
            )

    p = sub.add_parser("check", help="decide coherence of the assessment in a KB file")
    p.add_argument("kb", help="knowledge-base file with probabilities")
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    common(p)

    p = sub.add_parser("consistent", help="decide p-consistency of a KB")
    p.add_argument("kb")
    common(p)

    p = sub.add_parser("entails", help="decide p-entailment of a conditional from a KB")
    p.add_argument("kb")
    p.add_argument("target", help="conditional expression, e.g. '~N | L'")
    p.add_argument(
        "--method",
        choices=("lp", "qc", "both"),
        default="lp",
        help="lp: extension interval; qc: quasi-conjunction subset search",
    )
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    common(p)

    p = sub.add_parser(
        "bounds",
        help="closed-form probability bounds (logically independent premises)",
    )
    p.add_argument("kind", choices=[k for k in RULE_KINDS if k != "dual"])
    p.add_argument("probs", nargs="+", help="premise probabilities (a/b or decimal)")
    common(p, strict=False)

    p = sub.add_parser(
        "region",
        help="membership in a premise region for a conclusion bound gamma",
    )
    p.add_argument("region", choices=REGION_NAMES)
    p.add_argument("--gamma", required=True)
    p.add_argument("probs", nargs="*", help="premise probabilities")
    p.add_argument(
        "--grid",
        type=int,
        metavar="N",
        help="print an N x N textual sampling of the two-premise region",
    )
    common(p)

    p = sub.add_parser("loop", help="p-entailment facts for cyclic families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--derangement",
        help="comma-separated fixed-point-free permutation of 1..n",
    )
    common(p)

    p = sub.add_parser(
        "truth-table", help="three-valued table of a KB's conditionals with their "
        "quasi conjunction and disjunction"
    )
    p.add_argument("kb")
    p.add_argument("names", nargs="*", help="conditional names (default: all)")
    common(p, strict=False)

    for op in ("tnorm", "tconorm"):
        p = sub.add_parser(op, help=f"evaluate a {op} exactly")
        p.add_argument(
            "family", help="min | product | lukasiewicz | drastic | hamacher"
        )
        p.add_argument("--param", help="hamacher parameter (a/b or 'inf')")
        p.add_argument("args", nargs="+", help="arguments in [0, 1]")
        common(p, strict=False)

    return parser


def _emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load(path: str) -> tuple[KnowledgeBase, Assessment | None]:
    return load_kb(path)


def _cmd_check(args) -> int:
    kb, assessment = _load(args.kb)
    if assessment is None:
        raise CohereError("the KB file carries no probabilities to check")
    verdict = check_coherence(assessment)
    oracle_note = ""
    if args.oracle:
        feasible = len(vertices(sigma_polytope(assessment))) > 0
        solvable = verdict.trace[0].witness is not None
        if feasible != solvable:
            raise CohereError("oracle disagreement on system solvability")
        oracle_note = " (oracle agrees)"
    payload = verdict_to_json(verdict)
    if verdict.coherent:
        _emit(payload, f"COHERENT{oracle_note}", args.json)
        return 0
    stakes = ", ".join(fraction_str(s) for s in verdict.certificate)
    _emit(
        payload,
        f"INCOHERENT{oracle_note}\n"
        f"  refuted indices: {list(verdict.deciding_indices)}\n"
        f"  positive-gain stakes: ({stakes})",
        args.json,
    )
    return 1 if args.strict else 0


def _cmd_consistent(args) -> int:
    kb, _ = _load(args.kb)
    ok = p_consistent(kb)
    _emit({"p_consistent": ok}, "P-CONSISTENT" if ok else "NOT P-CONSISTENT", args.json)
    return 1 if args.strict and not ok else 0


def _cmd_entails(args) -> int:
    kb, _ = _load(args.kb)
    target = parse_conditional(args.target, kb.context)
    results: dict[str, bool] = {}
    if args.method in ("lp", "both"):
        results["lp"] = p_entails(kb, target)
        if args.oracle:
            lp_interval = extension_interval(all_ones(kb), target)
            bf = extension_interval_bruteforce(all_ones(kb), target)
            if (lp_interval.lo, lp_interval.hi) != (bf.lo, bf.hi):
                raise CohereError(
                    f"oracle disagreement: lp {lp_interval} vs brute force {bf}"
                )
    if args.method in ("qc", "both"):
        results["qc"] = p_entails_qc(kb, target)
    if args.method == "both" and results["lp"] != results["qc"]:
        raise CohereError(
            f"procedure disagreement on {args.target!r}: {results}"
        )
    verdict = all(results.values())
    text = "P-ENTAILED" if verdict else "NOT P-ENTAILED"
    if args.method == "both":
        text += " (lp and qc agree)"
    _emit({"target": args.target, "p_entailed": verdict, "method": args.method},
          text, args.json)
    return 1 if args.strict and not verdict else 0


def _cmd_bounds(args) -> int:
    probs = [parse_rational(p) for p in args.probs]
    rb = rule_bounds(args.kind, probs)
    payload = {
        "rule": rb.rule,
        "probs": [fraction_str(p) for p in rb.probs],
        "interval": interval_to_json(rb.interval),
    }
    _emit(payload, str(rb.interval), args.json)
    return 0


def _cmd_region(args) -> int:
    gamma = parse_rational(args.gamma)
    region = GammaRegion(args.region[0], args.region[1:], gamma)
    if args.grid:
        if args.probs:
            raise CohereError("--grid ignores explicit premise probabilities")
        return _region_grid(region, args.grid, args.json)
    if not args.probs:
        raise CohereError("premise probabilities are required without --grid")
    probs = [parse_rational(p) for p in args.probs]
    inside = region.contains(probs)
    _emit(
        {"region": args.region, "gamma": fraction_str(gamma), "member": inside},
        "IN REGION" if inside else "NOT IN REGION",
        args.json,
    )
    return 1 if args.strict and not inside else 0


def _region_grid(region: GammaRegion, n: int, as_json: bool) -> int:
    if n < 2:
        raise CohereError("--grid needs at least 2 samples per axis")
    steps = [Fraction(i, n - 1) for i in range(n)]
    rows = []
    for y in reversed(steps):
        rows.append("".join("#" if region.contains([x, y]) else "." for x in steps))
    if as_json:
        print(json.dumps({"region": region.kind + region.operation,
                          "gamma": fraction_str(region.gamma),
                          "grid": rows}, sort_keys=True))
    else:
        print("\n".join(rows))
    return 0


def _cmd_loop(args) -> int:
    if args.derangement:
        derangement = tuple(int(t) for t in args.derangement.split(","))
        ok = loop_entails(args.n, derangement)
        text = (
            f"MUTUALLY P-ENTAILED (loop {args.n} and derangement {derangement})"
            if ok
            else "NOT MUTUALLY P-ENTAILED"
        )
        _emit({"n": args.n, "derangement": list(derangement), "mutual": ok}, text, args.json)
        return 1 if args.strict and not ok else 0
    kb = loop_family(args.n)
    facts = []
    ok = True
    for j in range(1, args.n + 1):
        for i in range(1, args.n + 1):
            if i == j:
                continue
            target = parse_conditional(f"A{i} | A{j}", kb.context)
            entailed = p_entails(kb, target)
            ok = ok and entailed
            facts.append({"target": f"A{i} | A{j}", "p_entailed": entailed})
    text_lines = [
        f"{f['target']}: {'P-ENTAILED' if f['p_entailed'] else 'NOT P-ENTAILED'}"
        for f in facts
    ]
    _emit({"n": args.n, "facts": facts}, "\n".join(text_lines), args.json)
    return 1 if args.strict and not ok else 0


def _cmd_truth_table(args) -> int:
    kb, _ = _load(args.kb)
    names = args.names or list(kb.names)
    members = [kb.get(name) for name in names]
    cs = constituents(members)
    qc = quasi_conjunction(members)
    qd = quasi_disjunction(members)
    rows = []
    ordered = ([cs.c0] if cs.c0 is not None else []) + list(cs.inside)
    for c in ordered:
        w = c.representative
        rows.append(
            {
                "world": str(w),
                "values": [str(v) for v in c.profile],
                "C": str(truth_value(qc, w)),
                "D": str(truth_value(qd, w)),
            }
        )
    if args.json:
        print(json.dumps({"conditionals": names, "rows": rows}, sort_keys=True))
        return 0
    headers = ["constituent"] + names + ["C", "D"]
    table = [headers] + [[r["world"], *r["values"], r["C"], r["D"]] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def _cmd_tnorm(args, conorm: bool) -> int:
    name = args.family.lower()
    if name == "hamacher":
        if args.param is None:
            raise CohereError("the hamacher family needs --param (a/b or 'inf')")
        param = INF if args.param.lower() in ("inf", "infinity") else parse_rational(args.param)
        family = hamacher(param)
    elif name in _FAMILIES:
        if args.param is not None:
            raise CohereError(f"family {name!r} takes no parameter")
        family = _FAMILIES[name]
    else:
        raise CohereError(f"unknown operator family {args.family!r}")
    values = [parse_rational(v) for v in args.args]
    result = tconorm(family, values) if conorm else tnorm(family, values)
    payload = {
        "family": str(family),
        "args": [fraction_str(v) for v in values],
        "exact": fraction_str(result),
        "decimal": float(result),
    }
    _emit(payload, f"exact: {result}\ndecimal: {float(result):.12g}", args.json)
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "consistent": _cmd_consistent,
    "entails": _cmd_entails,
    "bounds": _cmd_bounds,
    "region": _cmd_region,
    "loop": _cmd_loop,
    "truth-table": _cmd_truth_table,
}


def _rotate_region_flags(argv: list[str]) -> list[str]:
    """Move the region command's flags behind its probability list.

    argparse matches a zero-or-more positional eagerly, so probabilities
    placed after ``--gamma g`` would otherwise be orphaned.
    """
    takes_value = {"--gamma", "--grid"}
    flags: list[str] = []
    rest: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in takes_value and i + 1 < len(argv):
            flags.extend(argv[i : i + 2])
            i += 2
        elif tok.startswith("--"):
            flags.append(tok)
            i += 1
        else:
            rest.append(tok)
            i += 1
    return rest + flags


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    if argv and argv[0] == "region":
        argv = ["region"] + _rotate_region_flags(argv[1:])
    args = parser.parse_args(argv)
    try:
        if args.command == "tnorm":
            return _cmd_tnorm(args, conorm=False)
        if args.command == "tconorm":
            return _cmd_tnorm(args, conorm=True)
        return _HANDLERS[args.command](args)
    except (CohereError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
