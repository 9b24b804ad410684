#!/usr/bin/env python3
"""Play the full game loop headlessly: tutorial, rounds, snap, quiz, and
the wire transcript a browser client would consume.

Run from the repository root:  python demos/04_headless_game.py
"""

import json
import tempfile
from pathlib import Path

from dockslice import create_session, pipeline, sample_bank
from dockslice.runner import parse_script, simulate

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "pdb"

workdir = Path(tempfile.mkdtemp())
pipeline.ingest(sorted(FIXTURES.glob("*.pdb")), workdir / "cache")
pack = pipeline.build(pipeline.default_config(), workdir / "cache", None).pack

# -- direct session driving --------------------------------------------
session = create_session(pack, seed=42, bank=sample_bank())
print(f"phase={session.state.phase} (tutorial page: {session.state.tutorial_page})")
session.handle_input({"type": "dismiss"})

index = session.true_candidate_index()
piece = session.candidate_piece(index)
pose = session.state.candidates[index].dyn.pose
print(f"round 1: true partner is candidate {index} ({piece.piece_id})")

events = session.handle_input({
    "type": "drag", "candidate": index,
    "dx": piece.canonical_pose.tx - pose.tx,
    "dy": piece.canonical_pose.ty - pose.ty,
})
print("events:", [e["kind"] for e in events])
print(f"phase={session.state.phase}, points={session.state.points}, "
      f"lives={session.state.lives}")

session.handle_input({"type": "dismiss"})       # round_end -> level_end
print("level summary:", session.round_summary())
session.handle_input({"type": "dismiss"})       # level_end -> quiz
question = session.state.quiz_current
print(f"quiz ({question.tier}): {question.prompt}")
for i, choice in enumerate(question.choices):
    print(f"  [{i}] {choice}")
session.handle_input({"type": "answer_quiz", "choice": question.correct_index})
print(f"after quiz: level={session.level.level}, points={session.state.points}")

# -- the same flow over the wire ----------------------------------------
script = parse_script([
    {"t": 0.2, "input": {"type": "dismiss"}},
    {"t": 0.5, "input": {"type": "dock_true"}},
])
transcript = simulate(pack, script, seed=42, bank=sample_bank())
kinds = [json.loads(line)["kind"] for line in transcript.outbound]
print(f"\nsimulated transcript: {len(transcript.outbound)} outbound messages")
print("first five kinds:", kinds[:5])
print("win events present:", "win_animation" in kinds)
