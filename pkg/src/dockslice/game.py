"""The round/level game loop behind the wire protocol.

One session owns one GameState.  Inputs and clock ticks are pure-ish
transitions on that state returning the events they caused; all
randomness flows through the session's seeded RNG so a (pack, seed,
scripted inputs) triple always reproduces the same transcript.

Flow: levels 1-2 open with a tutorial page; each round shows a fixed
receptor piece and a drawn set of candidates (the true partner plus
decoys from other entries, same side).  Docking the true partner above
the snap threshold wins the round; running out the timer costs a life.
After the last round of a level the summary screen appears, followed by
an optional quiz question, then the next level.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

from . import engine
from .engine import DEFAULT_PARAMS, DynamicsState, EngineParams
from .errors import DockSliceError
from .levels import InvalidPack, LevelPack, LevelSpec, validate_pack_structure
from .pieces import Pose2D, SlicePiece
from .quiz import EmptyBank, QuizBank, QuizQuestion

PHASES = ("tutorial", "playing", "quiz", "round_end", "level_end", "game_over")


class IllegalInPhase(DockSliceError):
    def __init__(self, event: str, phase: str):
        self.event = event
        self.phase = phase
        super().__init__(f"event {event!r} is not legal in phase {phase!r}")


@dataclass(frozen=True)
class GameConfig:
    lives: int = 3
    base_points: int = 100
    time_bonus_rate: float = 10.0   # points per second left on the clock
    quiz_bonus: int = 50
    rotation_step_deg: float = 15.0
    repulsion_period: float = 0.5   # s between impulses on a held overlap
    weak_sound_period: float = 1.0  # s between weak-dock cues
    tier: str = "GCSE"
    candidate_row_y: float = 40.0
    candidate_span_x: float = 100.0
    engine: EngineParams = DEFAULT_PARAMS


DEFAULT_CONFIG = GameConfig()


@dataclass
class CandidateState:
    piece_id: str
    dyn: DynamicsState
    last_repulsion: float = -math.inf
    initial_theta: float = 0.0


@dataclass
class RoundStat:
    level: int
    round: int
    time_taken: float
    first_selection_correct: bool


@dataclass
class GameState:
    phase: str
    level_index: int            # 0-based into pack.levels
    round_index: int            # 1-based within the level
    lives: int
    points: int
    timer_remaining: float
    receptor_id: str = ""
    candidates: list[CandidateState] = field(default_factory=list)
    selected: int | None = None
    rng_seed: int = 0
    round_stats: list[RoundStat] = field(default_factory=list)
    tutorial_page: str = ""
    info_open: bool = False
    quiz_current: QuizQuestion | None = None
    used_question_ids: set[str] = field(default_factory=set)
    first_selection: int | None = None
    round_elapsed: float = 0.0
    last_weak_cue: float = -math.inf
    game_time: float = 0.0


def _ev(kind: str, **payload) -> dict:
    return {"kind": kind, "payload": payload}


class GameSession:
    """Owner of one live game; see create_session()."""

    def __init__(
        self,
        pack: LevelPack,
        seed: int,
        config: GameConfig = DEFAULT_CONFIG,
        bank: QuizBank | None = None,
    ):
        problems = validate_pack_structure(pack)
        if problems:
            raise InvalidPack(problems)
        self.pack = pack
        self.config = config
        self.bank = bank
        self.rng = random.Random(seed)
        self._entry_queue: list[str] = []
        self.state = GameState(
            phase="tutorial",
            level_index=0,
            round_index=1,
            lives=config.lives,
            points=0,
            timer_remaining=0.0,
            rng_seed=seed,
        )
        self._start_level(0)

    # -- helpers -------------------------------------------------------

    @property
    def level(self) -> LevelSpec:
        return self.pack.levels[self.state.level_index]

    def receptor_piece(self) -> SlicePiece:
        return self.pack.pieces[self.state.receptor_id]

    def candidate_piece(self, index: int) -> SlicePiece:
        return self.pack.pieces[self.state.candidates[index].piece_id]

    def true_candidate_index(self) -> int:
        receptor = self.receptor_piece()
        for i in range(len(self.state.candidates)):
            if engine.is_true_partner(receptor, self.candidate_piece(i)):
                return i
        raise RuntimeError("round has no true partner")  # draw guarantees one

    def _next_entry(self) -> str:
        if not self._entry_queue:
            entries = self.pack.entries()
            self._entry_queue = self.rng.sample(entries, len(entries))
        return self._entry_queue.pop(0)

    def _start_level(self, level_index: int) -> None:
        st = self.state
        st.level_index = level_index
        st.round_index = 1
        # Fresh draw order per level; the table's n_proteins is the design
        # target for variety, attainable only up to the pack inventory.
        self._entry_queue = []
        self._start_round()
        if self.level.level == 1:
            st.phase, st.tutorial_page = "tutorial", "drag"
        elif self.level.level == 2:
            st.phase, st.tutorial_page = "tutorial", "rotate"
        else:
            st.phase, st.tutorial_page = "playing", ""

    def _start_round(self) -> None:
        st = self.state
        spec = self.level
        entry = self._next_entry()
        st.receptor_id = f"{entry}-receptor"

        decoy_pool = [e for e in self.pack.entries() if e != entry]
        decoys = self.rng.sample(decoy_pool, spec.candidates_per_round - 1)
        ids = [f"{entry}-ligand"] + [f"{e}-ligand" for e in decoys]
        self.rng.shuffle(ids)

        n = len(ids)
        span = self.config.candidate_span_x
        xs = [(-span / 2 + span * i / (n - 1)) if n > 1 else 0.0 for i in range(n)]
        candidates = []
        for i, pid in enumerate(ids):
            if spec.rotation_required:
                steps = self.rng.randrange(1, 24)  # never 0: a turn is required
                theta = math.radians(self.config.rotation_step_deg * steps)
            else:
                theta = 0.0
            pose = Pose2D(xs[i], self.config.candidate_row_y, theta)
            candidates.append(
                CandidateState(
                    piece_id=pid,
                    dyn=DynamicsState(
                        pose=pose,
                        shaking=spec.moving,
                        gravity=spec.gravity,
                    ),
                    initial_theta=theta,
                )
            )
        st.candidates = candidates
        st.selected = None
        st.first_selection = None
        st.timer_remaining = spec.round_time_limit
        st.round_elapsed = 0.0
        st.last_weak_cue = -math.inf
        st.info_open = False

    def _score(self, index: int) -> engine.DockScore:
        cand = self.state.candidates[index]
        piece = self.candidate_piece(index)
        if not self.level.charges_visible and piece.charges:
            # Levels that hide charges play their pieces charge-free, so
            # scoring falls back to the centroid/orientation proxy.
            piece = replace(piece, charges=[])
        return engine.score_pose(
            self.receptor_piece(), piece, cand.dyn.pose, self.config.engine
        )

    def _level_summary(self) -> dict:
        spec = self.level
        stats = [s for s in self.state.round_stats if s.level == spec.level]
        times = [s.time_taken for s in stats]
        correct = sum(1 for s in stats if s.first_selection_correct)
        return {
            "level": spec.level,
            "points": self.state.points,
            "mean_time": (sum(times) / len(times)) if times else 0.0,
            "precision": correct / spec.n_rounds if spec.n_rounds else 0.0,
        }

    def _win_round(self, index: int, events: list[dict]) -> None:
        st = self.state
        cand = st.candidates[index]
        piece = self.candidate_piece(index)
        cand.dyn = replace(cand.dyn, pose=piece.canonical_pose, velocity=(0.0, 0.0))
        # Snapping moved the piece, so report the post-snap (perfect) score.
        snapped = self._score(index)
        events.append(
            _ev(
                "score_update",
                candidate=index,
                percent=snapped.percent,
                overlap_area=snapped.overlap_area,
            )
        )

        bonus = math.ceil(max(0.0, st.timer_remaining) * self.config.time_bonus_rate)
        st.points += self.config.base_points + bonus
        st.round_stats.append(
            RoundStat(
                level=self.level.level,
                round=st.round_index,
                time_taken=st.round_elapsed,
                first_selection_correct=st.first_selection == self.true_candidate_index(),
            )
        )
        events.append(_ev("sound_cue", name="win"))
        events.append(_ev("win_animation", entry=piece.source_entry))
        st.phase = "round_end"

    def _advance_after_round(self, events: list[dict]) -> None:
        st = self.state
        if st.round_index < self.level.n_rounds:
            st.round_index += 1
            self._start_round()
            st.phase = "playing"
        else:
            st.phase = "level_end"
            events.append(_ev("level_end", **self._level_summary()))

    def _enter_quiz_or_advance(self, events: list[dict]) -> None:
        st = self.state
        if self.bank is not None:
            try:
                question = draw_question(
                    self.bank, self.config.tier, self.rng, st.used_question_ids
                )
            except EmptyBank:
                question = None
            if question is not None:
                st.quiz_current = question
                st.phase = "quiz"
                events.append(
                    _ev(
                        "quiz",
                        question_id=question.question_id,
                        tier=question.tier,
                        prompt=question.prompt,
                        choices=list(question.choices),
                    )
                )
                return
        self._advance_level(events)

    def _advance_level(self, events: list[dict]) -> None:
        st = self.state
        if st.level_index + 1 < len(self.pack.levels):
            self._start_level(st.level_index + 1)
        else:
            st.phase = "game_over"
            events.append(_ev("game_over", points=st.points, reason="completed"))

    def _apply_contact_effects(self, index: int, score, events: list[dict]) -> None:
        """Repulsion for overlapping decoys / weak true partners."""
        st = self.state
        cand = st.candidates[index]
        if score.overlap_area <= 0.0:
            return
        receptor = self.receptor_piece()
        piece = self.candidate_piece(index)
        true_partner = engine.is_true_partner(receptor, piece)
        if true_partner and score.percent >= self.config.engine.weak_threshold:
            return
        if st.game_time - cand.last_repulsion < self.config.repulsion_period:
            return
        dvx, dvy = engine.repulsion_impulse(
            receptor, piece, cand.dyn.pose, true_partner, self.config.engine, score
        )
        vx, vy = cand.dyn.velocity
        cand.dyn = replace(cand.dyn, velocity=(vx + dvx, vy + dvy))
        cand.last_repulsion = st.game_time
        events.append(_ev("sound_cue", name="repulsion" if not true_partner else "weak"))

    # -- spec operations ----------------------------------------------

    def handle_input(self, event: dict) -> list[dict]:
        """Apply one player input; returns the events it produced."""
        st = self.state
        etype = event.get("type")
        events: list[dict] = []

        if etype == "drag":
            self._require_phase(etype, "playing")
            index = self._candidate_index(event)
            cand = st.candidates[index]
            self._mark_selected(index)
            pose = cand.dyn.pose.translated(
                float(event.get("dx", 0.0)), float(event.get("dy", 0.0))
            )
            cand.dyn = replace(cand.dyn, pose=engine.clamp_pose(pose, self.config.engine))
            self._after_pose_change(index, events)
        elif etype == "double_tap":
            self._require_phase(etype, "playing")
            index = self._candidate_index(event)
            cand = st.candidates[index]
            self._mark_selected(index)
            step = math.radians(self.config.rotation_step_deg)
            cand.dyn = replace(cand.dyn, pose=cand.dyn.pose.rotated(step))
            self._after_pose_change(index, events)
        elif etype == "select_info":
            self._require_phase(etype, "playing")
            st.info_open = True
        elif etype == "answer_quiz":
            self._require_phase(etype, "quiz")
            question = st.quiz_current
            choice = int(event.get("choice", -1))
            correct = choice == question.correct_index
            awarded = self.config.quiz_bonus if correct else 0
            st.points += awarded
            events.append(
                _ev(
                    "explanation",
                    correct_index=question.correct_index,
                    text=question.explanation,
                    correct=correct,
                    points_awarded=awarded,
                )
            )
            st.quiz_current = None
            self._advance_level(events)
        elif etype == "skip_quiz":
            # Quizzes are optional; skipping never touches points.
            self._require_phase(etype, "quiz")
            st.quiz_current = None
            self._advance_level(events)
        elif etype == "dismiss":
            self._handle_dismiss(events)
        else:
            raise ValueError(f"unknown input type {etype!r}")

        events.append(_ev("state_update"))
        return events

    def _require_phase(self, etype: str, *phases: str) -> None:
        if self.state.phase not in phases:
            raise IllegalInPhase(etype, self.state.phase)

    def _candidate_index(self, event: dict) -> int:
        index = event.get("candidate")
        if not isinstance(index, int) or not 0 <= index < len(self.state.candidates):
            raise ValueError(f"bad candidate index {index!r}")
        return index

    def _mark_selected(self, index: int) -> None:
        st = self.state
        st.selected = index
        if st.first_selection is None:
            st.first_selection = index

    def _after_pose_change(self, index: int, events: list[dict]) -> None:
        score = self._score(index)
        events.append(
            _ev(
                "score_update",
                candidate=index,
                percent=score.percent,
                overlap_area=score.overlap_area,
            )
        )
        self._apply_contact_effects(index, score, events)
        if engine.is_true_partner(
            self.receptor_piece(), self.candidate_piece(index)
        ) and engine.check_snap(score, self.config.engine):
            self._win_round(index, events)

    def _handle_dismiss(self, events: list[dict]) -> None:
        st = self.state
        if st.phase == "playing" and st.info_open:
            st.info_open = False
        elif st.phase == "tutorial":
            st.phase = "playing"
            st.tutorial_page = ""
        elif st.phase == "round_end":
            self._advance_after_round(events)
        elif st.phase == "level_end":
            self._enter_quiz_or_advance(events)
        else:
            raise IllegalInPhase("dismiss", st.phase)

    def tick(self, dt: float) -> list[dict]:
        """Advance the clock by dt seconds (no-op outside phase playing)."""
        st = self.state
        if st.phase != "playing":
            return []
        events: list[dict] = []
        st.timer_remaining -= dt
        st.round_elapsed += dt
        st.game_time += dt

        for i, cand in enumerate(st.candidates):
            before = cand.dyn.pose
            cand.dyn = engine.step_dynamics(cand.dyn, dt, self.config.engine)
            score = self._score(i)
            if cand.dyn.pose != before and st.selected == i:
                events.append(
                    _ev(
                        "score_update",
                        candidate=i,
                        percent=score.percent,
                        overlap_area=score.overlap_area,
                    )
                )
            # Contact effects persist while pieces overlap.
            self._apply_contact_effects(i, score, events)
            if (
                st.selected == i
                and 0.0 < score.percent < self.config.engine.weak_threshold
                and score.overlap_area > 0.0
                and st.game_time - st.last_weak_cue >= self.config.weak_sound_period
            ):
                st.last_weak_cue = st.game_time
                events.append(_ev("sound_cue", name="weak"))

        if st.timer_remaining <= 0.0:
            st.lives -= 1
            events.append(_ev("life_lost", lives=st.lives))
            if st.lives <= 0:
                st.phase = "game_over"
                events.append(_ev("game_over", points=st.points, reason="out_of_lives"))
            else:
                self._start_round()  # retry the same round with a fresh draw

        events.append(_ev("state_update"))
        return events

    def round_summary(self) -> dict:
        """Level statistics; only available on the level_end screen."""
        self._require_phase("round_summary", "level_end")
        return self._level_summary()

    def snapshot(self) -> dict:
        """Self-contained view of the session for the wire protocol."""
        st = self.state
        spec = self.level

        def piece_view(piece: SlicePiece) -> dict:
            charges = (
                [
                    {
                        "x": c.point[0],
                        "y": c.point[1],
                        "sign": c.sign,
                        "bridge_index": c.bridge_index,
                    }
                    for c in piece.charges
                ]
                if spec.charges_visible
                else []
            )
            return {
                "piece_id": piece.piece_id,
                "outline": [[float(x), float(y)] for x, y in piece.outline],
                "charges": charges,
                "display_name": piece.display_name,
                "blurb": piece.blurb,
            }

        candidates = []
        for cand in st.candidates:
            view = piece_view(self.pack.pieces[cand.piece_id])
            view["pose"] = cand.dyn.pose.to_dict()
            candidates.append(view)

        snap = {
            "phase": st.phase,
            "level": spec.level,
            "round": st.round_index,
            "lives": st.lives,
            "points": st.points,
            "timer_remaining": st.timer_remaining,
            "level_spec": spec.to_dict(),
            "receptor": piece_view(self.receptor_piece()),
            "candidates": candidates,
            "selected": st.selected,
            "info_open": st.info_open,
            "tutorial_page": st.tutorial_page,
        }
        if st.phase == "level_end":
            snap["summary"] = self._level_summary()
        return snap


def create_session(
    pack: LevelPack,
    seed: int,
    config: GameConfig = DEFAULT_CONFIG,
    bank: QuizBank | None = None,
) -> GameSession:
    """Validate the pack and start a session in the level-1 tutorial."""
    return GameSession(pack, seed, config=config, bank=bank)


def draw_question(
    bank: QuizBank,
    tier: str,
    rng: random.Random,
    used_ids: set[str],
) -> QuizQuestion:
    """Uniform draw without repetition until the tier exhausts, then recycle."""
    pool = bank.of_tier(tier)
    if not pool:
        raise EmptyBank(tier)
    fresh = [q for q in pool if q.question_id not in used_ids]
    if not fresh:
        for q in pool:
            used_ids.discard(q.question_id)
        fresh = pool
    question = rng.choice(fresh)
    used_ids.add(question.question_id)
    return question
