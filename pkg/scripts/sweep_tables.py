"""Compare the engine against the transcribed reference tables and print every disagreement.

    python3 scripts/sweep_tables.py            # summary
    python3 scripts/sweep_tables.py --json     # machine-readable
"""
import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import table_checks as tc  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    bessel_bad, deviations = tc.check_bessel()
    results = {
        "existence": tc.check_existence(),
        "existence_columns": tc.check_existence_columns_agree(),
        "delta": tc.check_delta(),
        "vc_derivation": tc.check_vc_derivation(),
        "lreg": tc.check_lreg(False),
        "lreg_twisted": tc.check_lreg(True),
        "bessel": bessel_bad,
    }
    devs = [vars(d) | {"mismatched": list(d.mismatched)} for d in deviations]
    if args.json:
        print(json.dumps({"mismatches": results, "deviations": devs}, indent=2, ensure_ascii=False))
    else:
        for name, bad in results.items():
            print(f"{name:18s} {len(bad)} mismatches")
            for line in bad:
                print(f"    {line}")
        for d in deviations:
            print(f"deviation {d.ty} rho={d.rho}: engine {d.engine}, printed {d.table}")
            print(f"    {d.deviation}")
    return 1 if any(results.values()) else 0


if __name__ == "__main__":
    sys.exit(main())
