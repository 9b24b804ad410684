/** Client view state: the latest snapshot plus transient HUD extras.
 *
 * Rendering is a pure function of this state, and the snapshot is
 * self-contained, so a reconnect followed by a fresh snapshot renders
 * the identical scene.
 */

import type {
  ExplanationPayload,
  QuizPayload,
  ServerMessage,
  SnapshotPayload,
  LevelSummary,
} from "./types.js";

export interface Flourish {
  entry: string;
  startedAt: number;
}

export interface ViewState {
  snapshot: SnapshotPayload | null;
  packId: string | null;
  /** percent by candidate index, from the latest score_update this round. */
  scores: Map<number, number>;
  lastScore: { candidate: number; percent: number } | null;
  quiz: QuizPayload | null;
  explanation: ExplanationPayload | null;
  summary: LevelSummary | null;
  flourish: Flourish | null;
  gameOver: { points: number; reason: string } | null;
  lastError: string | null;
}

export function initialViewState(): ViewState {
  return {
    snapshot: null,
    packId: null,
    scores: new Map(),
    lastScore: null,
    quiz: null,
    explanation: null,
    summary: null,
    flourish: null,
    gameOver: null,
    lastError: null,
  };
}

export const FLOURISH_MS = 1200;

/** Fold one server message into the view; returns sound cues to play. */
export function applyMessage(
  state: ViewState,
  msg: ServerMessage,
  nowMs: number,
): string[] {
  const cues: string[] = [];
  switch (msg.kind) {
    case "hello":
      state.packId = msg.payload.pack_id;
      break;
    case "snapshot": {
      const prev = state.snapshot;
      if (
        prev === null ||
        prev.level !== msg.payload.level ||
        prev.round !== msg.payload.round
      ) {
        state.scores.clear();
        state.lastScore = null;
      }
      state.snapshot = msg.payload;
      if (msg.payload.phase !== "quiz") {
        state.quiz = null;
      }
      if (msg.payload.phase === "level_end" && msg.payload.summary) {
        state.summary = msg.payload.summary;
      }
      break;
    }
    case "score_update":
      state.scores.set(msg.payload.candidate, msg.payload.percent);
      state.lastScore = {
        candidate: msg.payload.candidate,
        percent: msg.payload.percent,
      };
      break;
    case "sound_cue":
      cues.push(msg.payload.name);
      break;
    case "win_animation":
      state.flourish = { entry: msg.payload.entry, startedAt: nowMs };
      break;
    case "life_lost":
      cues.push("life_lost");
      break;
    case "quiz":
      state.quiz = msg.payload;
      state.explanation = null;
      break;
    case "explanation":
      state.explanation = msg.payload;
      state.quiz = null;
      break;
    case "level_end":
      state.summary = msg.payload;
      break;
    case "game_over":
      state.gameOver = msg.payload;
      break;
    case "error":
      state.lastError = msg.payload.message;
      break;
  }
  return cues;
}

export function flourishPhase(state: ViewState, nowMs: number): number | null {
  if (!state.flourish) return null;
  const t = (nowMs - state.flourish.startedAt) / FLOURISH_MS;
  if (t >= 1) {
    return null;
  }
  return t;
}

// -- overlay model --------------------------------------------------------
// The DOM layer renders whatever this returns; keeping it a pure function
// of the view makes the screens testable without a browser.

export interface OverlayButton {
  label: string;
  action:
    | { type: "dismiss" }
    | { type: "answer_quiz"; choice: number }
    | { type: "skip_quiz" }
    | { type: "acknowledge" };
}

export interface OverlayModel {
  kind: "tutorial" | "info" | "quiz" | "explanation" | "summary" | "game_over";
  title: string;
  lines: string[];
  buttons: OverlayButton[];
}

export function overlayFor(state: ViewState): OverlayModel | null {
  const snap = state.snapshot;
  if (!snap) return null;

  if (state.explanation) {
    const e = state.explanation;
    return {
      kind: "explanation",
      title: e.correct ? "Correct!" : "Not quite",
      lines: [e.text],
      buttons: [{ label: "Continue", action: { type: "acknowledge" } }],
    };
  }
  if (snap.phase === "quiz" && state.quiz) {
    return {
      kind: "quiz",
      title: `${state.quiz.tier} question`,
      lines: [state.quiz.prompt],
      buttons: [
        ...state.quiz.choices.map((choice, i) => ({
          label: choice,
          action: { type: "answer_quiz" as const, choice: i },
        })),
        { label: "Skip", action: { type: "skip_quiz" } },
      ],
    };
  }
  if (snap.phase === "tutorial") {
    const lines =
      snap.tutorial_page === "rotate"
        ? ["Double-tap a piece to rotate it by 15 degrees.",
           "Line up the shape, then drag it onto the dock."]
        : ["Drag the matching piece onto the docked protein.",
           "The score shows how close you are to a perfect dock."];
    return {
      kind: "tutorial",
      title: `Level ${snap.level}: ${snap.tutorial_page === "rotate" ? "rotating" : "dragging"}`,
      lines,
      buttons: [{ label: "Play", action: { type: "dismiss" } }],
    };
  }
  if (snap.phase === "playing" && snap.info_open) {
    const lines: string[] = [];
    const seen = new Set<string>();
    for (const piece of [snap.receptor, ...snap.candidates]) {
      if (!piece.display_name || seen.has(piece.display_name)) continue;
      seen.add(piece.display_name);
      lines.push(`${piece.display_name}: ${piece.blurb}`);
    }
    return {
      kind: "info",
      title: "About these proteins",
      lines,
      buttons: [{ label: "Close", action: { type: "dismiss" } }],
    };
  }
  if (snap.phase === "round_end") {
    return {
      kind: "summary",
      title: "Docked!",
      lines: [`Points so far: ${snap.points}`],
      buttons: [{ label: "Next", action: { type: "dismiss" } }],
    };
  }
  if (snap.phase === "level_end") {
    const s = state.summary;
    const lines = s
      ? [
          `Total points: ${s.points}`,
          `Average time: ${s.mean_time.toFixed(1)} s`,
          `First-pick precision: ${(s.precision * 100).toFixed(0)}%`,
        ]
      : [`Points: ${snap.points}`];
    return {
      kind: "summary",
      title: `Level ${snap.level} complete`,
      lines,
      buttons: [{ label: "Continue", action: { type: "dismiss" } }],
    };
  }
  if (snap.phase === "game_over") {
    const reason = state.gameOver?.reason === "completed"
      ? "You finished every level!"
      : "Out of lives.";
    return {
      kind: "game_over",
      title: "Game over",
      lines: [reason, `Final score: ${state.gameOver?.points ?? snap.points}`],
      buttons: [],
    };
  }
  return null;
}
