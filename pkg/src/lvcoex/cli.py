"""Command-line surface: completion queries, impossibility certificates,
class enumeration, witness search, and the self-check battery.

Every command is deterministic given its arguments and seeds, and prints
no timing information, so repeated runs emit identical bytes.  JSON output
follows the versioned envelope in schemas/result-v1.schema.json.

Exit codes: 0 command completed (the verdict itself may be "impossible" or
"none found"), 1 selftest failures, 2 input error, 3 resource limit.
"""

import argparse
import json
import re
import sys
from itertools import permutations, product

from .acceptance import run_checks
from .completion import SearchConfig, certify_impossible, complete
from .model import (
    EcologicalNetwork,
    ParameterPoint,
    PatternError,
    SignPattern,
    apply_permutation,
    canonicalize,
    network_to_sign_pattern,
    parse_sign_pattern,
)
from .witness import (
    SignMismatchError,
    find_witness,
    linear_infeasibility,
    verify_point,
)

SCHEMA_ID = "result-v1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


class BudgetError(Exception):
    """An enumeration was refused because it exceeds the default budget."""


# ------------------------------------------------------------ pattern input

# argparse reads a leading '-' as an option prefix, but sign strings are
# data; pure sign tokens travel behind an inert marker the parser strips
_PURE_SIGNS = re.compile(r"[-+ ]{2,}")


def _shield_patterns(argv: list[str]) -> list[str]:
    return [
        "pattern=" + tok if tok != "--" and _PURE_SIGNS.fullmatch(tok) else tok
        for tok in argv
    ]


def pattern_argument(text: str) -> SignPattern:
    """A flat sign string, or the network DSL when the text has statements.

    An optional "pattern=" prefix guards sign strings that begin with '-'
    (added automatically for quoted command-line arguments).  DSL example:
    "n=3; grow 1; mutual 2 3; pred 1>2; comp 1 3" declares the growth signs
    (listed species positive, the rest negative) and exactly one
    interaction per species pair, 1-based.
    """
    text = text.removeprefix("pattern=")
    if ";" in text or text.strip().startswith("n="):
        return _parse_network(text)
    return parse_sign_pattern(text)


def _parse_network(text: str) -> SignPattern:
    n = None
    growth: set[int] = set()
    edges: dict = {}

    def species(tok: str) -> int:
        try:
            k = int(tok)
        except ValueError:
            raise PatternError(f"species index {tok!r} is not a number")
        if not 1 <= k <= n:
            raise PatternError(f"species {k} outside 1..{n}")
        return k

    def pair(i: int, j: int) -> tuple[int, int]:
        if i == j:
            raise PatternError(f"pair needs two distinct species, got {i} {i}")
        key = (min(i, j) - 1, max(i, j) - 1)
        if key in edges:
            raise PatternError(f"pair {i} {j} declared twice")
        return key

    for raw in text.split(";"):
        stmt = raw.strip()
        if not stmt:
            continue
        parts = stmt.split()
        head = parts[0].lower()
        if head.startswith("n="):
            try:
                n = int(head[2:])
            except ValueError:
                raise PatternError(f"bad species count in {stmt!r}")
            if n < 1:
                raise PatternError("species count must be positive")
            continue
        if n is None:
            raise PatternError("network DSL must start with n=<count>")
        if head == "grow":
            growth.update(species(p) for p in parts[1:])
        elif head in ("mutual", "comp"):
            if len(parts) != 3:
                raise PatternError(f"{head} needs exactly two species: {stmt!r}")
            i, j = species(parts[1]), species(parts[2])
            kind = "mutualism" if head == "mutual" else "competition"
            edges[pair(i, j)] = kind
        elif head == "pred":
            arrow = "".join(parts[1:])
            pred, sep, prey = arrow.partition(">")
            if not sep:
                raise PatternError(f"predation needs the form i>j: {stmt!r}")
            p, q = species(pred), species(prey)
            edges[pair(p, q)] = f"predation:{p - 1}>{q - 1}"
        else:
            raise PatternError(f"unknown network statement {stmt!r}")
    if n is None:
        raise PatternError("network DSL must declare n=<count>")
    net = EcologicalNetwork(
        n, tuple(1 if i + 1 in growth else -1 for i in range(n)), edges
    )
    return network_to_sign_pattern(net)


# --------------------------------------------------------------- subcommands

def _strip_timing(payload: dict) -> dict:
    payload["stats"].pop("wall_time_s", None)
    return payload


def _search_config(ns) -> SearchConfig:
    return SearchConfig(
        enable_feasibility=not ns.no_feasibility,
        enable_stability=not ns.no_stability,
        branch_heuristic=ns.heuristic,
        max_nodes=ns.max_nodes,
        collect_all=not ns.first_only,
        trivial_init=ns.trivial_init,
        normalize_chart=not ns.no_chart_normalization,
    )


def _cmd_complete(ns):
    sp = pattern_argument(ns.pattern)
    result = complete(sp, _search_config(ns))
    payload = _strip_timing(result.to_json())
    payload = {"kind": "complete", **payload}
    summary = (
        f"{result.verdict}: {result.count} completions "
        f"({result.stats.nodes} nodes)"
    )
    code = EXIT_LIMIT if result.limit_hit else EXIT_OK
    return payload, summary, code, list(result.completions)


def _cmd_certify(ns):
    sp = pattern_argument(ns.pattern)
    canonical, _ = canonicalize(sp)
    orbit_size = len({apply_permutation(sp, pi).text()
                      for pi in permutations(range(sp.n))})
    result = certify_impossible(sp)
    note = None
    witness = None
    lines = [f"canonical class: {canonical.text()} (orbit size {orbit_size})"]
    if result.verdict == "possible":
        row = linear_infeasibility(sp)
        if row is not None:
            # the completions are sign-consistent yet unrealizable, and a
            # witness search would burn the whole budget for nothing
            note = (
                f"no positive equilibrium exists: row {row + 1} of the "
                "interaction matrix is single-signed and forces the opposite "
                "growth sign, so the completions are not realizable"
            )
            lines.append("witness: skipped (row-sign refutation)")
        else:
            note = (
                "sign-consistent completions exist; this is a relaxation and "
                "does not by itself prove a realizable equilibrium"
            )
            report = find_witness(sp, trials=ns.trials, seed=ns.seed,
                                  fixed_equilibrium=True)
            if report is not None:
                witness = report.to_json()
                lines.append(
                    f"witness: found after {report.trials_used} trials"
                )
            else:
                lines.append(f"witness: none found in {ns.trials} trials")
        lines.append(f"note: {note}")
    payload = {
        "kind": "certify",
        "pattern": sp.text(),
        "canonical_pattern": canonical.text(),
        "orbit_size": orbit_size,
        "verdict": result.verdict,
        "count": result.count,
        "completions": list(result.completions),
        "stats": _strip_timing(result.to_json())["stats"],
        "note": note,
        "witness": witness,
    }
    if result.verdict == "impossible":
        summary = "impossible: no completion survives the sign constraints"
    elif result.verdict == "possible":
        summary = f"possible ({result.count} completions)"
    else:
        summary = "resource-limit: search budget exhausted before a verdict"
    code = EXIT_LIMIT if result.limit_hit else EXIT_OK
    return payload, summary, code, lines


def _all_patterns(n: int):
    cells = n * (n - 1)
    for a_bits in product((1, -1), repeat=n):
        for off_bits in product((1, -1), repeat=cells):
            vals = iter(off_bits)
            B = tuple(
                tuple(1 if i == j else next(vals) for j in range(n))
                for i in range(n)
            )
            yield SignPattern(n, a_bits, B)


def _cmd_enumerate(ns):
    n = ns.n
    heavy = n > 4 or (n == 4 and not ns.canonical_only)
    if heavy and not ns.allow_large:
        raise BudgetError(
            f"enumerating n={n}{'' if ns.canonical_only else ' without --canonical-only'} "
            "is expensive; pass --allow-large to proceed"
        )
    orbits: dict[str, dict] = {}
    for sp in _all_patterns(n):
        key = canonicalize(sp)[0].text()
        entry = orbits.setdefault(key, {"size": 0, "counts": set()})
        entry["size"] += 1
        if not ns.canonical_only:
            entry["counts"].add(complete(sp).count)
    limit = False
    rows = []
    for key in sorted(orbits):
        rep = parse_sign_pattern(key)
        result = complete(rep)
        limit = limit or result.limit_hit
        counts = orbits[key]["counts"] | {result.count}
        if len(counts) > 1:
            raise RuntimeError(
                f"orbit {key} gave inconsistent counts {sorted(counts)}"
            )
        witness = "skipped"
        if ns.with_witness and result.count > 0:
            if linear_infeasibility(rep) is not None:
                witness = "infeasible"
            else:
                report = find_witness(rep, trials=ns.trials, seed=ns.seed,
                                      fixed_equilibrium=ns.fixed_equilibrium)
                witness = "found" if report is not None else "none"
        rows.append({
            "canonical_pattern": key,
            "orbit_size": orbits[key]["size"],
            "completions": result.count,
            "witness": witness,
        })
    payload = {
        "kind": "enumerate",
        "n": n,
        "orbits": len(rows),
        "with_witness": ns.with_witness,
        "trials": ns.trials if ns.with_witness else None,
        "seed": ns.seed if ns.with_witness else None,
        "rows": rows,
    }
    impossible = sum(1 for r in rows if r["completions"] == 0)
    summary = f"{len(rows)} orbits, {impossible} impossible"
    if ns.with_witness:
        infeasible = sum(1 for r in rows if r["witness"] == "infeasible")
        if infeasible:
            summary += f", {infeasible} infeasible by row sign"
        unwitnessed = sum(1 for r in rows if r["witness"] == "none")
        summary += f", {unwitnessed} possible but unwitnessed"
    if ns.csv:
        lines = ["canonical_pattern,orbit_size,completions,witness"]
        lines += [
            f"{r['canonical_pattern']},{r['orbit_size']},"
            f"{r['completions']},{r['witness']}"
            for r in rows
        ]
    else:
        lines = [
            f"{r['canonical_pattern']}  orbit={r['orbit_size']}  "
            f"completions={r['completions']}  witness={r['witness']}"
            for r in rows
        ]
    return payload, summary, EXIT_LIMIT if limit else EXIT_OK, lines


def _cmd_witness(ns):
    if ns.check_point is not None:
        try:
            with open(ns.check_point, encoding="utf-8") as fh:
                point = ParameterPoint.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise PatternError(f"cannot read point file: {exc}")
        expected = pattern_argument(ns.pattern) if ns.pattern else None
        report = verify_point(point, expected)
        payload = {"kind": "point-verification", "report": report.to_json()}
        summary = f"feasible-stable: {str(report.feasible_stable).lower()}"
        return payload, summary, EXIT_OK, [f"chirotope: {report.chirotope}"]
    if ns.pattern is None:
        raise PatternError("witness needs a pattern or --check-point FILE")
    sp = pattern_argument(ns.pattern)
    report = find_witness(sp, trials=ns.trials, seed=ns.seed,
                          fixed_equilibrium=ns.fixed_equilibrium)
    mode = "fixed-equilibrium" if ns.fixed_equilibrium else "direct"
    payload = {
        "kind": "witness-search",
        "pattern": sp.text(),
        "found": report is not None,
        "trials": ns.trials,
        "seed": ns.seed,
        "mode": mode,
        "report": None if report is None else report.to_json(),
    }
    if report is None:
        summary = f"no witness in {ns.trials} trials ({mode})"
        lines = []
    else:
        summary = f"witness found after {report.trials_used} trials ({mode})"
        lines = [
            f"point: {json.dumps(report.point.to_json())}",
            f"chirotope: {report.chirotope}",
        ]
    return payload, summary, EXIT_OK, lines


def _cmd_selftest(ns):
    try:
        results = run_checks(ns.section)
    except ValueError as exc:
        raise PatternError(str(exc))
    rows = [
        {"section": r.section, "name": r.name, "ok": r.ok, "detail": r.detail}
        for r in results
    ]
    ok = all(r.ok for r in results)
    payload = {"kind": "selftest", "ok": ok, "results": rows}
    passed = sum(1 for r in results if r.ok)
    summary = f"{passed}/{len(results)} checks passed"
    lines = [
        f"{'PASS' if r.ok else 'FAIL'} [{r.section}] {r.name} - {r.detail}"
        for r in results
    ]
    return payload, summary, EXIT_OK if ok else EXIT_FAIL, lines


# -------------------------------------------------------------------- driver

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvcoex",
        description="sign-pattern coexistence analysis for Lotka-Volterra "
                    "communities",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true",
                       help="print the result-v1 JSON envelope")

    p = sub.add_parser("complete", help="enumerate chirotope completions")
    p.add_argument("pattern", help="flat sign string or network DSL")
    p.add_argument("--no-feasibility", action="store_true",
                   help="drop the positive-equilibrium sign constraints")
    p.add_argument("--no-stability", action="store_true",
                   help="drop the stability sign constraints")
    p.add_argument("--no-chart-normalization", action="store_true",
                   help="also release the fixed orientation of the "
                        "all-interaction basis")
    p.add_argument("--trivial-init", action="store_true",
                   help="seed the search from single-monomial signs only")
    p.add_argument("--heuristic", choices=("most-constrained", "lowest-rank"),
                   default="most-constrained")
    p.add_argument("--max-nodes", type=int, default=1_000_000)
    p.add_argument("--first-only", action="store_true",
                   help="stop at the first completion")
    add_json(p)
    p.set_defaults(handler=_cmd_complete)

    p = sub.add_parser("certify", help="certify a pattern impossible, or "
                                       "report its completions and a witness")
    p.add_argument("pattern")
    p.add_argument("--trials", type=int, default=2000,
                   help="witness trials when the verdict is possible")
    p.add_argument("--seed", type=int, default=0)
    add_json(p)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("enumerate", help="classify all diagonal-positive "
                                         "patterns of a given size by orbit")
    p.add_argument("n", type=int)
    p.add_argument("--canonical-only", action="store_true",
                   help="search one representative per orbit instead of "
                        "verifying every member")
    p.add_argument("--with-witness", action="store_true",
                   help="attempt a witness for each orbit with completions")
    p.add_argument("--fixed-equilibrium", action="store_true",
                   help="witness via a = B x* at a sampled positive x*")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-large", action="store_true",
                   help="permit the expensive n=4 full sweep and n>4")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true",
                     help="print CSV rows instead of the aligned table")
    fmt.add_argument("--json", action="store_true",
                     help="print the result-v1 JSON envelope")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("witness", help="search for an exact feasible-stable "
                                       "point, or verify one from a file")
    p.add_argument("pattern", nargs="?",
                   help="sign pattern (with --check-point: the expected signs)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fixed-equilibrium", action="store_true",
                   help="sample x* > 0 and set a = B x* exactly")
    p.add_argument("--check-point", metavar="FILE",
                   help="verify the exact point in this JSON file")
    add_json(p)
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("selftest", help="run the published-results checks")
    p.add_argument("--section", default=None,
                   help="run only this section (exact match)")
    add_json(p)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = _build_parser().parse_args(_shield_patterns(argv))
    try:
        payload, summary, code, lines = ns.handler(ns)
    except (PatternError, SignMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if getattr(ns, "json", False):
        doc = {
            "schema": SCHEMA_ID,
            "command": argv,
            "summary": summary,
            "exit_code": code,
            "payload": payload,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(summary)
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
