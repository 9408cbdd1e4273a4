"""Run the finite-model combinatorics oracle and report counts, witnesses and timing.

    python3 scripts/run_combinatorics.py --model 5,4 --model 6,5
    python3 scripts/run_combinatorics.py --model 4,4 --types IIa,IIIa
"""
import argparse
import json
import sys
import time

from gspbessel.verify import FiniteModel, check_combinatorics


def model(text: str) -> FiniteModel:
    n, b = (int(x) for x in text.split(","))
    return FiniteModel(n, b)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--model", type=model, action="append")
    parser.add_argument("--types", help="comma-separated Siegel types (default: all)")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    models = args.model or [FiniteModel(5, 4), FiniteModel(6, 5)]
    types = args.types.split(",") if args.types else None
    merged = None
    for m in models:
        start = time.perf_counter()
        report = check_combinatorics(m, types)
        elapsed = time.perf_counter() - start
        print(f"N={m.N} B={m.B}: {report.checked['instantiations']} instantiations, "
              f"{len(report.failures)} counterexamples, {elapsed:.1f}s", file=sys.stderr)
        merged = report if merged is None else merged.merge(report)
    if args.json:
        print(json.dumps(merged.to_json(), indent=2))
    else:
        for name, count in sorted(merged.witnesses.items()):
            print(f"{count:8d}  {name}")
        if types is None:
            print(f"missing witnesses: {merged.missing_witnesses or 'none'}")
    return 0 if not merged.failures and (types is not None or not merged.missing_witnesses) else 1


if __name__ == "__main__":
    sys.exit(main())
