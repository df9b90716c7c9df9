#!/usr/bin/env python3
"""
Walk through the SL_2 framed seed: its exchange relation, a few membership
queries, and the sl2 and gl2 acceptance suites.

Usage (from project root):
  python scripts/demo.py [--samples 20] [--seed 42]

Output: the seed, a table of check results, and a short report under reports/.
"""
import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

REPORT_PATH = ROOT / "reports" / "sl2-demo-report.txt"

QUERIES = [("A1'", None), ("A0^-1", None), ("A0^-1", ["all"]), ("A2^-1", None), ("1/A1", None)]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--samples", type=int, default=20)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)

    from clusterlab.services.cartan import datum_of_type
    from clusterlab.services.cluster_engine import initial_state, mutate_state
    from clusterlab.services.dbc_seed import framed_seed
    from clusterlab.services.expression import membership_query
    from clusterlab.services.verify_service import default_config, run_suite
    from clusterlab.utils.logging import configure_logging

    configure_logging(level="WARNING")

    built = framed_seed(datum_of_type("A1"))
    seed = built.seed
    print(f"Framed seed of SL_2: word {list(built.word.letters)}")
    for v in seed.vertices:
        kind = "mutable" if v in seed.mutable else "frozen"
        print(f"  {seed.names[v]:<4} vertex {v:>3}  {kind}")
    k = seed.mutable_vertices[0]
    mutated = mutate_state(initial_state(seed), k).vars[k]
    print(f"\n{seed.names[k]}' = {mutated.to_text()}\n")

    col_expr = 10
    col_sigma = 14
    print(f"{'Expression':<{col_expr}} {'Σ':<{col_sigma}} Verdict")
    print("-" * (col_expr + col_sigma + 14))
    for text, sigma in QUERIES:
        _, vertices, result = membership_query(text, built, sigma, depth=1)
        names = ",".join(seed.names[v] for v in vertices)
        print(f"{text:<{col_expr}} {names:<{col_sigma}} {result.verdict.value}")

    reports = [
        run_suite("sl2", default_config("sl2", rng_seed=args.seed, samples=args.samples, command="demo")),
        run_suite("gl2", default_config("gl2", rng_seed=args.seed, command="demo")),
    ]

    col_id = 32
    print()
    print(f"{'Check':<{col_id}} Pass")
    print("-" * (col_id + 5))
    for report in reports:
        for r in report.results:
            print(f"{report.suite + '/' + r.check_id:<{col_id}} {'Yes' if r.passed else 'No'}")

    passed = sum(r.passed for r in reports)
    total = sum(r.total for r in reports)
    print(f"\nSummary: {passed}/{total} passed")

    lines = [
        "clusterlab SL_2 demo report",
        "=" * 40,
        f"RNG seed: {args.seed}",
        f"Samples: {args.samples}",
        f"Total checks: {total}",
        f"Passed: {passed}",
        f"Failed: {total - passed}",
        "",
        "Failed checks:",
    ]
    for report in reports:
        for r in report.results:
            if not r.passed:
                lines.append(f"  - {report.suite}/{r.check_id}: {r.error_message or 'check returned false'}")
    REPORT_PATH.parent.mkdir(parents=True, exist_ok=True)
    REPORT_PATH.write_text("\n".join(lines), encoding="utf-8")
    print(f"Report written to {REPORT_PATH}")
    return 0 if passed == total else 1


if __name__ == "__main__":
    sys.exit(main())
