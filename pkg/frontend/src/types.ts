/** Wire-facing types for the session protocol (mirror of the server schema). */

export type Sign = "positive" | "negative";

export interface ChargeView {
  x: number;
  y: number;
  sign: Sign;
  bridge_index: number;
}

export interface Pose {
  tx: number;
  ty: number;
  theta: number;
}

export interface PieceView {
  piece_id: string;
  outline: [number, number][];
  charges: ChargeView[];
  display_name: string;
  blurb: string;
  pose?: Pose;
}

export interface LevelSpecView {
  level: number;
  n_proteins: number;
  charges_visible: boolean;
  n_rounds: number;
  rotation_required: boolean;
  candidates_per_round: number;
  moving: boolean;
  gravity: boolean;
  round_time_limit: number;
}

export type Phase =
  | "tutorial"
  | "playing"
  | "quiz"
  | "round_end"
  | "level_end"
  | "game_over";

export interface LevelSummary {
  level: number;
  points: number;
  mean_time: number;
  precision: number;
}

export interface SnapshotPayload {
  phase: Phase;
  level: number;
  round: number;
  lives: number;
  points: number;
  timer_remaining: number;
  level_spec: LevelSpecView;
  receptor: PieceView;
  candidates: PieceView[];
  selected: number | null;
  info_open: boolean;
  tutorial_page: string;
  summary?: LevelSummary;
}

export interface ScoreUpdatePayload {
  candidate: number;
  percent: number;
  overlap_area?: number;
}

export interface QuizPayload {
  question_id: string;
  tier: string;
  prompt: string;
  choices: string[];
}

export interface ExplanationPayload {
  correct_index: number;
  text: string;
  correct: boolean;
  points_awarded?: number;
}

export interface HelloPayload {
  protocol_version: number;
  pack_id: string;
  seed?: number;
  level_spec: LevelSpecView;
}

export type ServerMessage =
  | { kind: "hello"; seq: number; payload: HelloPayload }
  | { kind: "snapshot"; seq: number; payload: SnapshotPayload }
  | { kind: "score_update"; seq: number; payload: ScoreUpdatePayload }
  | { kind: "sound_cue"; seq: number; payload: { name: string } }
  | { kind: "win_animation"; seq: number; payload: { entry: string } }
  | { kind: "life_lost"; seq: number; payload: { lives: number } }
  | { kind: "quiz"; seq: number; payload: QuizPayload }
  | { kind: "explanation"; seq: number; payload: ExplanationPayload }
  | { kind: "level_end"; seq: number; payload: LevelSummary }
  | { kind: "game_over"; seq: number; payload: { points: number; reason: string } }
  | { kind: "error"; seq: number; payload: { message: string } };

export type InputPayload =
  | { type: "drag"; candidate: number; dx: number; dy: number }
  | { type: "double_tap"; candidate: number }
  | { type: "select_info" }
  | { type: "answer_quiz"; choice: number }
  | { type: "skip_quiz" }
  | { type: "dismiss" };

export const POSITIVE_COLOR = "#3366ff";
export const NEGATIVE_COLOR = "#ff3333";
