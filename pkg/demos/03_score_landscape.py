#!/usr/bin/env python3
"""Explore the docking score: the percentage falls off linearly as charges
leave their targets, decoys always score zero, and overlapping mismatches
get a repulsion impulse.

Run from the repository root:  python demos/03_score_landscape.py
"""

from pathlib import Path

import numpy as np

from dockslice import pipeline, repulsion_impulse, score_pose
from dockslice.pieces import Pose2D

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdb"

import tempfile

workdir = Path(tempfile.mkdtemp())
pipeline.ingest(sorted(FIXTURES.glob("*.pdb")), workdir / "cache")
pack = pipeline.build(pipeline.default_config(), workdir / "cache", None).pack

receptor = pack.piece("2ptc", "receptor")
partner = pack.piece("2ptc", "ligand")
decoy = pack.piece("1avx", "ligand")
canonical = partner.canonical_pose

print("straight-line departure from the perfect dock:")
for t in (0.0, 1.0, 2.5, 5.0, 7.5):
    pose = canonical.translated(t, 0.0)
    score = score_pose(receptor, partner, pose)
    bar = "#" * int(score.percent / 5)
    print(f"  offset {t:4.1f} A -> {score.percent:6.2f}%  {bar}")

print("\nper-charge breakdown 2.0 A off target:")
for bridge_index, distance, contribution in score_pose(
    receptor, partner, canonical.translated(2.0, 0.0)
).per_charge:
    print(f"  bridge {bridge_index}: distance {distance:.2f} A, "
          f"contribution {contribution:.2f}")

wrong = score_pose(receptor, decoy, canonical)
print(f"\na decoy parked on the dock scores {wrong.percent:.0f}% "
      f"while overlapping {wrong.overlap_area:.0f} A^2,")
dvx, dvy = repulsion_impulse(receptor, decoy, canonical, is_true=False, score=wrong)
print(f"so the engine pushes it away with impulse ({dvx:.1f}, {dvy:.1f}) A/s")

print("\nrotation also costs score (charges swing off target):")
for degrees in (0, 15, 30, 60):
    pose = Pose2D(canonical.tx, canonical.ty, np.radians(degrees))
    score = score_pose(receptor, partner, pose)
    print(f"  {degrees:3d} deg -> {score.percent:6.2f}%")
