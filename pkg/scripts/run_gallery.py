#!/usr/bin/env python3
"""Run the full verification pipeline over every spec in specs/.

Writes one JSON report per spec into the output directory and prints a
one-line summary per spec.  Exits nonzero if any spec fails.

Usage: python scripts/run_gallery.py [--out-dir reports] [--jobs N]
"""

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from partialmha import cli  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out-dir", default="reports")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--specs-dir",
                        default=str(pathlib.Path(__file__).resolve()
                                    .parents[1] / "specs"))
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for path in sorted(pathlib.Path(args.specs_dir).glob("*.toml")):
        spec = cli.load_spec(str(path))
        reports = cli.run_all(spec, args.jobs)
        payload = cli.assemble_output(spec, "all", reports)
        out_path = out_dir / (path.stem + ".json")
        out_path.write_text(json.dumps(payload, indent=2) + "\n")
        n_checks = sum(len(r["checks"]) for r in payload["reports"])
        status = "ok" if payload["passed"] else "FAIL"
        print(f"{status:>4}  {path.stem:<36} {n_checks:>4} checks")
        if not payload["passed"]:
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
