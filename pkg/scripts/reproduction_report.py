#!/usr/bin/env python3
"""Rebuild the reference-value manifest and print the pass/fail table.

Equivalent to `wmteleport reproduce` with a writable default output
path; exits nonzero if any reference value is missed in both modes.
"""

import argparse
import sys
from pathlib import Path

from wmteleport.reproduce import build_manifest, manifest_json, manifest_lines


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resolution", type=int, default=101)
    parser.add_argument("--measure", choices=("haar", "polar"), default="polar")
    parser.add_argument(
        "--out", type=Path, default=Path("reproduction_manifest.json")
    )
    parser.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the generation timestamp for byte-identical reruns",
    )
    args = parser.parse_args(argv)
    if args.resolution < 2:
        parser.error("--resolution must be at least 2")

    manifest = build_manifest(
        resolution=args.resolution,
        measure=args.measure,
        timestamp=not args.no_timestamp,
    )
    args.out.write_text(manifest_json(manifest), encoding="utf-8")
    for line in manifest_lines(manifest):
        print(line)
    print(f"wrote {args.out}")
    return 0 if manifest["all_passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
