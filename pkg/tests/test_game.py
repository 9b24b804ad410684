import math
from dataclasses import replace

import pytest

from dockslice import (
    GameConfig,
    IllegalInPhase,
    InvalidPack,
    create_session,
    default_level_specs,
    draw_question,
    sample_bank,
)
from dockslice.game import DEFAULT_CONFIG
from dockslice.levels import LevelPack

TABLE_ROWS = {
    1: (3, False, 1, False, 3, False, False),
    2: (4, False, 1, True, 3, False, False),
    3: (17, True, 2, False, 3, False, False),
    4: (10, True, 3, False, 3, True, False),
    5: (17, True, 3, True, 3, False, False),
    6: (15, True, 5, True, 3, True, True),
    7: (18, True, 5, True, 4, True, True),
}


def snapshot_of(session):
    return session.snapshot()


def dismiss(session):
    return session.handle_input({"type": "dismiss"})


def dock_true(session):
    """Rotate and drag the true partner exactly onto its dock."""
    index = session.true_candidate_index()
    cand = session.state.candidates[index]
    piece = session.candidate_piece(index)
    step = math.radians(session.config.rotation_step_deg)
    taps = round((-cand.dyn.pose.theta) % (2 * math.pi) / step) % 24
    events = []
    for _ in range(taps):
        events += session.handle_input({"type": "double_tap", "candidate": index})
    pose = session.state.candidates[index].dyn.pose
    events += session.handle_input(
        {
            "type": "drag",
            "candidate": index,
            "dx": piece.canonical_pose.tx - pose.tx,
            "dy": piece.canonical_pose.ty - pose.ty,
        }
    )
    return events


def kinds(events):
    return [e["kind"] for e in events]


def test_default_levels_match_progression_table():
    for spec in default_level_specs():
        row = TABLE_ROWS[spec.level]
        assert (
            spec.n_proteins,
            spec.charges_visible,
            spec.n_rounds,
            spec.rotation_required,
            spec.candidates_per_round,
            spec.moving,
            spec.gravity,
        ) == row


def test_create_session_deterministic(pack):
    a = create_session(pack, seed=42)
    b = create_session(pack, seed=42)
    assert snapshot_of(a) == snapshot_of(b)
    c = create_session(pack, seed=43)
    assert snapshot_of(c) != snapshot_of(a)


def test_invalid_pack_missing_level(pack):
    broken = LevelPack(
        pack_id="broken",
        levels=[s for s in pack.levels if s.level != 5],
        pieces=pack.pieces,
    )
    with pytest.raises(InvalidPack) as err:
        create_session(broken, seed=1)
    assert any("expected 7" in p for p in err.value.problems)


def test_invalid_pack_insufficient_inventory(pack):
    only = {
        pid: piece for pid, piece in pack.pieces.items() if piece.source_entry == "2ptc"
    }
    broken = LevelPack(pack_id="tiny", levels=pack.levels, pieces=only)
    with pytest.raises(InvalidPack):
        create_session(broken, seed=1)


def test_level1_three_candidates_charges_hidden(pack):
    session = create_session(pack, seed=7)
    snap = snapshot_of(session)
    assert snap["phase"] == "tutorial"
    assert snap["level"] == 1
    assert len(snap["candidates"]) == 3
    assert snap["receptor"]["charges"] == []
    assert all(c["charges"] == [] for c in snap["candidates"])
    # Non-rotation level: candidates all upright.
    assert all(c["pose"]["theta"] == 0.0 for c in snap["candidates"])


def test_tutorial_pages_for_first_two_levels(pack):
    session = create_session(pack, seed=3)
    assert session.state.tutorial_page == "drag"
    dismiss(session)
    assert session.state.phase == "playing"


def test_double_tap_24_times_returns_to_start(pack):
    session = create_session(pack, seed=11)
    dismiss(session)
    start = session.state.candidates[0].dyn.pose.theta
    for _ in range(24):
        session.handle_input({"type": "double_tap", "candidate": 0})
    assert session.state.candidates[0].dyn.pose.theta == pytest.approx(start, abs=1e-9)


def test_drag_true_partner_to_canonical_wins(pack):
    session = create_session(pack, seed=5)
    dismiss(session)
    events = dock_true(session)
    names = kinds(events)
    assert "score_update" in names
    assert "win_animation" in names
    assert any(
        e["kind"] == "sound_cue" and e["payload"]["name"] == "win" for e in events
    )
    assert session.state.phase == "round_end"
    assert session.state.points >= DEFAULT_CONFIG.base_points
    last_score = [e for e in events if e["kind"] == "score_update"][-1]
    assert last_score["payload"]["percent"] == 100.0


def test_every_playing_input_emits_one_state_update(pack):
    session = create_session(pack, seed=9)
    dismiss(session)
    for event in (
        {"type": "drag", "candidate": 0, "dx": 1.0, "dy": 0.0},
        {"type": "double_tap", "candidate": 1},
        {"type": "select_info"},
        {"type": "dismiss"},  # closes info
    ):
        events = session.handle_input(event)
        assert kinds(events).count("state_update") == 1


def test_drag_clamped_to_play_area(pack):
    session = create_session(pack, seed=13)
    dismiss(session)
    session.handle_input({"type": "drag", "candidate": 0, "dx": 1e4, "dy": -1e4})
    pose = session.state.candidates[0].dyn.pose
    xmin, ymin, xmax, ymax = DEFAULT_CONFIG.engine.play_area
    assert xmin <= pose.tx <= xmax and ymin <= pose.ty <= ymax


def test_illegal_inputs_by_phase(pack):
    session = create_session(pack, seed=2)
    with pytest.raises(IllegalInPhase):
        session.handle_input({"type": "drag", "candidate": 0, "dx": 1, "dy": 0})
    dismiss(session)
    with pytest.raises(IllegalInPhase):
        session.handle_input({"type": "answer_quiz", "choice": 0})
    with pytest.raises(IllegalInPhase):
        dismiss(session)  # nothing to dismiss mid-round
    with pytest.raises(ValueError):
        session.handle_input({"type": "drag", "candidate": 99, "dx": 0, "dy": 0})


def test_timer_runs_out_and_lives_decrease(pack):
    session = create_session(pack, seed=21)
    dismiss(session)
    limit = session.level.round_time_limit
    events = []
    for _ in range(int(limit / 0.1) + 2):
        events += session.tick(0.1)
        if any(e["kind"] == "life_lost" for e in events):
            break
    assert any(e["kind"] == "life_lost" for e in events)
    assert session.state.lives == DEFAULT_CONFIG.lives - 1
    assert session.state.phase == "playing"  # round restarted
    assert session.state.timer_remaining == pytest.approx(limit)


def test_three_timeouts_end_the_game(pack):
    session = create_session(pack, seed=21)
    dismiss(session)
    events = []
    for _ in range(3 * int(60.0 / 0.1) + 10):
        events += session.tick(0.1)
        if session.state.phase == "game_over":
            break
    assert session.state.lives == 0
    assert session.state.phase == "game_over"
    game_over = [e for e in events if e["kind"] == "game_over"]
    assert game_over and game_over[0]["payload"]["reason"] == "out_of_lives"


def test_win_points_include_time_bonus(pack):
    config = replace(DEFAULT_CONFIG)
    session = create_session(pack, seed=5, config=config)
    dismiss(session)
    for _ in range(30):
        session.tick(1.0 / 30.0)  # burn one second
    dock_true(session)
    t = session.state.timer_remaining
    expected = config.base_points + math.ceil(t * config.time_bonus_rate)
    assert session.state.points == expected


def test_full_level_flow_summary_and_quiz(pack):
    bank = sample_bank()
    session = create_session(pack, seed=31, bank=bank)
    dismiss(session)  # tutorial
    for _ in range(30):
        session.tick(1.0 / 30.0)  # let some round time pass
    dock_true(session)
    assert session.state.phase == "round_end"
    events = dismiss(session)  # level 1 has a single round -> level_end
    assert session.state.phase == "level_end"
    summaries = [e for e in events if e["kind"] == "level_end"]
    assert summaries and summaries[0]["payload"]["precision"] == 1.0

    stats = session.round_summary()
    assert stats["level"] == 1
    assert stats["precision"] == 1.0
    assert stats["mean_time"] > 0

    events = dismiss(session)  # level_end -> quiz
    assert session.state.phase == "quiz"
    quiz_events = [e for e in events if e["kind"] == "quiz"]
    assert quiz_events
    assert len(quiz_events[0]["payload"]["choices"]) == 3
    assert "correct_index" not in quiz_events[0]["payload"]

    question = session.state.quiz_current
    points_before = session.state.points
    events = session.handle_input(
        {"type": "answer_quiz", "choice": question.correct_index}
    )
    explanations = [e for e in events if e["kind"] == "explanation"]
    assert explanations and explanations[0]["payload"]["correct"]
    assert session.state.points == points_before + DEFAULT_CONFIG.quiz_bonus
    assert session.state.phase == "tutorial"  # level 2 opens with its tutorial
    assert session.level.level == 2


def test_wrong_quiz_answer_keeps_points(pack):
    bank = sample_bank()
    session = create_session(pack, seed=31, bank=bank)
    dismiss(session)
    dock_true(session)
    dismiss(session)
    dismiss(session)
    question = session.state.quiz_current
    wrong = (question.correct_index + 1) % 3
    points_before = session.state.points
    events = session.handle_input({"type": "answer_quiz", "choice": wrong})
    assert session.state.points == points_before
    explanation = [e for e in events if e["kind"] == "explanation"][0]
    assert explanation["payload"]["correct"] is False
    assert explanation["payload"]["correct_index"] == question.correct_index


def test_skip_quiz_never_changes_points(pack):
    bank = sample_bank()
    session = create_session(pack, seed=31, bank=bank)
    dismiss(session)
    dock_true(session)
    dismiss(session)
    dismiss(session)
    points_before = session.state.points
    session.handle_input({"type": "skip_quiz"})
    assert session.state.points == points_before
    assert session.state.phase in ("tutorial", "playing")
    assert session.level.level == 2


def test_round_summary_requires_level_end(pack):
    session = create_session(pack, seed=4)
    with pytest.raises(IllegalInPhase):
        session.round_summary()


def test_rotation_level_assigns_nonzero_thetas(pack):
    bank = sample_bank()
    session = create_session(pack, seed=8, bank=bank)
    dismiss(session)
    dock_true(session)
    dismiss(session)  # round_end -> level_end
    dismiss(session)  # level_end -> quiz
    session.handle_input({"type": "skip_quiz"})  # into level 2 (rotation)
    assert session.level.rotation_required
    dismiss(session)
    thetas = [c.dyn.pose.theta for c in session.state.candidates]
    assert all(abs(t) > 1e-9 for t in thetas)
    step = math.radians(DEFAULT_CONFIG.rotation_step_deg)
    for t in thetas:
        ratio = (t % (2 * math.pi)) / step
        assert abs(ratio - round(ratio)) < 1e-9  # multiples of the tap step


def test_lives_and_points_monotone_over_scripted_game(pack):
    session = create_session(pack, seed=77, bank=sample_bank())
    dismiss(session)
    lives, points = session.state.lives, session.state.points
    rng_actions = 0
    while session.state.phase != "game_over" and rng_actions < 2000:
        rng_actions += 1
        st = session.state
        if st.phase == "playing":
            if rng_actions % 7 == 0:
                session.tick(0.1)
            else:
                dock_true(session)
        elif st.phase in ("round_end", "level_end"):
            dismiss(session)
        elif st.phase == "tutorial":
            dismiss(session)
        elif st.phase == "quiz":
            session.handle_input({"type": "answer_quiz", "choice": 0})
        assert session.state.lives <= lives
        assert session.state.points >= points
        lives, points = session.state.lives, session.state.points
    assert session.state.phase == "game_over"


def test_moving_level_candidates_drift_without_input(pack):
    session = create_session(pack, seed=55, bank=None)
    # March to level 4 (moving) by winning rounds.
    guard = 0
    while session.level.level < 4 and guard < 200:
        guard += 1
        st = session.state
        if st.phase == "tutorial":
            dismiss(session)
        elif st.phase == "playing":
            dock_true(session)
        elif st.phase in ("round_end", "level_end"):
            dismiss(session)
    assert session.level.level == 4 and session.level.moving
    assert session.state.phase == "playing"
    before = [c.dyn.pose.tx for c in session.state.candidates]
    for _ in range(30):
        session.tick(1.0 / 30.0)
    after = [c.dyn.pose.tx for c in session.state.candidates]
    assert any(abs(a - b) > 1e-6 for a, b in zip(before, after))


def test_draw_question_without_repetition():
    import random

    bank = sample_bank()
    rng = random.Random(1)
    used: set[str] = set()
    tier_questions = bank.of_tier("GCSE")
    drawn = [draw_question(bank, "GCSE", rng, used) for _ in range(len(tier_questions))]
    assert len({q.question_id for q in drawn}) == len(tier_questions)
    # Exhausted tier recycles instead of failing.
    again = draw_question(bank, "GCSE", rng, used)
    assert again.question_id in {q.question_id for q in tier_questions}


def test_draw_question_empty_tier():
    import random

    from dockslice import EmptyBank
    from dockslice.quiz import QuizBank

    with pytest.raises(EmptyBank):
        draw_question(QuizBank(version=1, questions=()), "GCSE", random.Random(0), set())


def test_seeded_question_draws_repeat():
    import random

    bank = sample_bank()
    a = [draw_question(bank, "A_Level", random.Random(9), set()) for _ in range(4)]
    b = [draw_question(bank, "A_Level", random.Random(9), set()) for _ in range(4)]
    assert [q.question_id for q in a] == [q.question_id for q in b]
