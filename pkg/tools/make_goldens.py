#!/usr/bin/env python3
"""Freeze golden values for the committed fixtures.

parse_counts.json comes from a raw text scan (independent of the parser).
reference_2ptc.json freezes per-half atom counts and receptor-footprint
measurements from a reference pipeline run; the geometry test suite
cross-checks those against independent oracles before trusting them.

Rerun after regenerating fixtures: python tools/make_goldens.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures" / "pdb"
GOLDENS = ROOT / "tests" / "goldens"


def rawscan(text: str):
    count = 0
    chains = []
    model_seen = 0
    for line in text.splitlines():
        rec = line[:6]
        if rec.startswith("MODEL"):
            model_seen += 1
        if rec not in ("ATOM  ", "HETATM") or model_seen > 1:
            continue
        if line[16] not in (" ", "A"):
            continue
        if rec == "HETATM" and line[17:20].strip() == "HOH":
            continue
        count += 1
        if line[21] not in chains:
            chains.append(line[21])
    return {"atoms": count, "chains": chains}


def main() -> int:
    sys.path.insert(0, str(ROOT / "src"))
    from dockslice import (
        extract_footprint,
        find_salt_bridges,
        fit_interface_plane,
        parse_structure,
        select_pair,
        split_halves,
    )
    from dockslice import polygon

    GOLDENS.mkdir(parents=True, exist_ok=True)

    counts = {}
    for path in sorted(FIXTURES.glob("*.pdb")):
        counts[path.stem] = rawscan(path.read_text())
    (GOLDENS / "parse_counts.json").write_text(json.dumps(counts, indent=1, sort_keys=True))
    print("wrote parse_counts.json")

    model = parse_structure((FIXTURES / "2ptc.pdb").read_text())
    pair = select_pair(model, ["E"], ["I"])
    bridges = find_salt_bridges(pair, 4.0)
    plane = fit_interface_plane(pair, bridges)
    rec_half, lig_half = split_halves(pair, plane)
    rec_fp = extract_footprint(rec_half, plane)
    reference = {
        "receptor_half_atoms": len(rec_half.atoms),
        "ligand_half_atoms": len(lig_half.atoms),
        "receptor_footprint_vertices": len(rec_fp),
        "receptor_footprint_area": polygon.area(rec_fp),
        "n_bridges": len(bridges),
    }
    (GOLDENS / "reference_2ptc.json").write_text(json.dumps(reference, indent=1, sort_keys=True))
    print("wrote reference_2ptc.json:", reference)
    return 0


if __name__ == "__main__":
    sys.exit(main())
