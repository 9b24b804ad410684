#!/usr/bin/env python3
"""Slice a complex into its two puzzle pieces and plot them.

Shows the geometry back half: interface-plane fit, footprint extraction,
charge projection, and the canonical pose that re-docks the ligand piece.
Writes pieces.png next to this script when matplotlib is available.

Run from the repository root:  python demos/02_slice_to_pieces.py
"""

from pathlib import Path

import numpy as np

from dockslice import (
    extract_footprint,
    find_salt_bridges,
    fit_interface_plane,
    make_piece_pair,
    parse_structure,
    score_pose,
    select_pair,
    split_halves,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdb"

pair = select_pair(parse_structure((FIXTURES / "1fss.pdb").read_text()), ["A"], ["B"])
bridges = find_salt_bridges(pair, 4.0)
plane = fit_interface_plane(pair, bridges)
print(f"interface plane origin {np.round(plane.origin, 2)}, normal {np.round(plane.normal, 3)}")

receptor_half, ligand_half = split_halves(pair, plane)
footprints = (
    extract_footprint(receptor_half, plane),
    extract_footprint(ligand_half, plane),
)
receptor, ligand = make_piece_pair(
    pair, plane, bridges, footprints,
    display_names=("Acetylcholinesterase", "Fasciculin 2"),
)

for piece in (receptor, ligand):
    print(f"{piece.piece_id}: {len(piece.outline)} vertices, "
          f"{len(piece.charges)} charges, canonical pose {piece.canonical_pose}")

score = score_pose(receptor, ligand, ligand.canonical_pose)
print(f"score at the canonical pose: {score.percent:.1f}% "
      f"(overlap {score.overlap_area:.0f} A^2)")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the figure")
    raise SystemExit(0)

fig, (left, right) = plt.subplots(1, 2, figsize=(11, 5))
colors = {"positive": "#3366ff", "negative": "#ff3333"}

# Left: pieces apart, each in its own frame.
for ax_offset, piece in ((-30.0, receptor), (30.0, ligand)):
    outline = piece.outline + [ax_offset, 0.0]
    left.fill(outline[:, 0], outline[:, 1], alpha=0.35)
    for charge in piece.charges:
        left.plot(charge.point[0] + ax_offset, charge.point[1], "o",
                  color=colors[charge.sign], markersize=8)
left.set_title("pieces apart (own frames)")
left.set_aspect("equal")

# Right: ligand placed by its canonical pose = the crystallographic dock.
right.fill(receptor.outline[:, 0], receptor.outline[:, 1], alpha=0.35)
docked = ligand.canonical_pose.apply(ligand.outline)
right.fill(docked[:, 0], docked[:, 1], alpha=0.35)
for piece, pose in ((receptor, None), (ligand, ligand.canonical_pose)):
    for charge in piece.charges:
        pt = np.array(charge.point) if pose is None else pose.apply([charge.point])[0]
        right.plot(pt[0], pt[1], "o", color=colors[charge.sign], markersize=8)
right.set_title("canonical pose: charges pair up")
right.set_aspect("equal")

out = Path(__file__).with_name("pieces.png")
fig.savefig(out, dpi=110, bbox_inches="tight")
print(f"wrote {out}")
