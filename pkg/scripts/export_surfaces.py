#!/usr/bin/env python3
"""Export fidelity surfaces for every protocol/channel pair.

Writes one CSV per combination into --outdir, named
surface_{protocol}_{channel}_r{r}.csv, using the same column layout as
`wmteleport surface`.
"""

import argparse
import sys
from pathlib import Path

from wmteleport.cli import main as cli_main
from wmteleport.operators import CHANNEL_KINDS


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--r", type=float, default=0.5, help="channel strength")
    parser.add_argument("--resolution", type=int, default=101)
    parser.add_argument("--mode", choices=("paper", "physical"), default="physical")
    parser.add_argument("--measure", choices=("haar", "polar"), default="polar")
    parser.add_argument("--outdir", type=Path, default=Path("surfaces"))
    args = parser.parse_args(argv)

    args.outdir.mkdir(parents=True, exist_ok=True)
    for protocol in ("I", "II"):
        for channel in CHANNEL_KINDS:
            out = args.outdir / f"surface_{protocol}_{channel}_r{args.r:g}.csv"
            code = cli_main(
                [
                    "surface",
                    "--protocol", protocol,
                    "--channel", channel,
                    "--r", str(args.r),
                    "--resolution", str(args.resolution),
                    "--mode", args.mode,
                    "--measure", args.measure,
                    "--out", str(out),
                ]
            )
            if code != 0:
                return code
            print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
