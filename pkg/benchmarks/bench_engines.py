"""Benchmark the compiled search core against the pure-Python fallback.

Runs a fixed workload of completion searches through both engines on
identical flat tables, checks that the results agree exactly, and reports
wall times and the speedup.  Exits nonzero on any disagreement.

Usage: python3 benchmarks/bench_engines.py [--repeat N] [--heavy]
"""

import argparse
import sys
from time import perf_counter

from lvcoex import _search
from lvcoex.completion import SearchConfig, search_arguments
from lvcoex.model import parse_sign_pattern

NO_CHECKS = SearchConfig(enable_feasibility=False, enable_stability=False)

WORKLOAD = [
    ("n3 quartet x50", ["--- +-- -+- --+", "+-- +++ ++- +-+",
                        "+-- +-- ++- +-+", "--- +-+ ++- -++"],
     SearchConfig(), 50),
    ("n4 boxed (impossible)", ["---- +--- -+-- --+- ---+",
                               "+--- ++++ ++-- +-+- +--+",
                               "++-- +-++ -+++ +++- ++-+"],
     SearchConfig(), 5),
    ("n4 unboxed, full checks", ["+--- +-++ -+++ +++- ++-+",
                                 "---- +-++ -+++ +++- ++-+"],
     SearchConfig(), 5),
    ("n4 unboxed, checks off", ["+--- +-++ -+++ +++- ++-+"],
     NO_CHECKS, 2),
]

HEAVY = [
    ("n4 asymmetric, full checks", ["++-- ++++ -+-- +++- ++-+"],
     SearchConfig(), 1),
]


def time_engine(engine, jobs, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = perf_counter()
        result = [engine.search(*args) for args in jobs]
        dt = perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per item (best is kept)")
    parser.add_argument("--heavy", action="store_true",
                        help="include the long-running workload items")
    opts = parser.parse_args(argv)

    try:
        from lvcoex import _speedups
    except ImportError:
        print("compiled engine not built; nothing to compare", file=sys.stderr)
        return 1

    workload = WORKLOAD + (HEAVY if opts.heavy else [])
    header = f"{'workload':<28} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    total = {"pure": 0.0, "fast": 0.0}
    failures = 0
    for name, texts, cfg, reps in workload:
        jobs = [search_arguments(parse_sign_pattern(t), cfg)
                for t in texts] * reps
        t_pure, res_pure = time_engine(_search, jobs, opts.repeat)
        t_fast, res_fast = time_engine(_speedups, jobs, opts.repeat)
        for a, b in zip(res_pure, res_fast):
            if a != b:
                print(f"!! result mismatch in {name!r}", file=sys.stderr)
                failures += 1
                break
        total["pure"] += t_pure
        total["fast"] += t_fast
        print(f"{name:<28} {t_pure:>10.4f} {t_fast:>13.4f} "
              f"{t_pure / t_fast:>8.1f}x")
    print("-" * len(header))
    print(f"{'total':<28} {total['pure']:>10.4f} {total['fast']:>13.4f} "
          f"{total['pure'] / total['fast']:>8.1f}x")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
