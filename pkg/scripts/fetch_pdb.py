#!/usr/bin/env python3
"""Download real PDB entries to replace the committed synthetic fixtures.

The build and the test suite never touch the network; run this separately
when you have connectivity, then re-run ingest/build on the downloaded
files:

    python scripts/fetch_pdb.py --out data/pdb
    dockslice ingest data/pdb --out out
    dockslice build --out out

Note the committed goldens (tests/goldens/) and the salt-bridge REMARKs
describe the synthetic fixtures; regenerate goldens after swapping in
real structures (tools/make_goldens.py).
"""

from __future__ import annotations

import argparse
import sys
import urllib.request
from pathlib import Path

ENTRIES = ["1acb", "1atn", "1avx", "1buh", "1bvn", "1emv", "1fss", "1grn", "2ptc", "4kc3"]
URL = "https://files.rcsb.org/download/{code}.pdb"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/pdb", help="download directory")
    parser.add_argument("--entries", nargs="*", default=ENTRIES)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for code in args.entries:
        target = out / f"{code.lower()}.pdb"
        if target.exists():
            print(f"{code}: already present")
            continue
        url = URL.format(code=code.upper())
        try:
            with urllib.request.urlopen(url, timeout=30) as resp:
                target.write_bytes(resp.read())
            print(f"{code}: downloaded {target}")
        except OSError as exc:
            print(f"{code}: FAILED ({exc})", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
