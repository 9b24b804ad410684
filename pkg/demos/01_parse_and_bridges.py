#!/usr/bin/env python3
"""Walk through the analysis front half: parse a complex, list its charged
sites, and print the inter-chain salt bridges sorted by distance.

Run from the repository root:  python demos/01_parse_and_bridges.py
"""

from pathlib import Path

from dockslice import (
    bridge_report,
    find_charge_sites,
    find_salt_bridges,
    parse_structure,
    select_pair,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdb"

text = (FIXTURES / "2ptc.pdb").read_text()
model = parse_structure(text)
print(f"parsed {model.entry_id}: chains {model.chain_ids}, {model.atom_count()} atoms")

# Trypsin is chain E, its inhibitor chain I.
pair = select_pair(model, ["E"], ["I"])

sites = find_charge_sites(pair)
positives = sum(1 for s in sites if s.sign == "positive")
print(f"{len(sites)} charged side-chain atoms ({positives} positive, "
      f"{len(sites) - positives} negative)")

bridges = find_salt_bridges(pair, cutoff=4.0)
print(f"\n{len(bridges)} inter-chain salt bridges within 4.0 A:\n")
print(bridge_report(bridges, "text"))

print("\nThe same report as JSON (what the pipeline archives):")
print(bridge_report(bridges, "json"))
