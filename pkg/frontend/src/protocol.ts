/** Newline-delimited JSON codec and outbound sequence allocation. */

import type { InputPayload, ServerMessage } from "./types.js";

const SERVER_KINDS = new Set([
  "hello",
  "snapshot",
  "score_update",
  "sound_cue",
  "win_animation",
  "life_lost",
  "quiz",
  "explanation",
  "level_end",
  "game_over",
  "error",
]);

export class ProtocolError extends Error {}

/** Parse one line from the server; throws ProtocolError on malformed input. */
export function decodeLine(line: string): ServerMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch {
    throw new ProtocolError("not valid JSON");
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new ProtocolError("message must be an object");
  }
  const msg = raw as { kind?: unknown; seq?: unknown; payload?: unknown };
  if (typeof msg.kind !== "string" || !SERVER_KINDS.has(msg.kind)) {
    throw new ProtocolError(`unknown kind ${String(msg.kind)}`);
  }
  if (typeof msg.seq !== "number" || !Number.isInteger(msg.seq) || msg.seq < 0) {
    throw new ProtocolError("seq must be a non-negative integer");
  }
  if (typeof msg.payload !== "object" || msg.payload === null) {
    throw new ProtocolError("payload must be an object");
  }
  return raw as ServerMessage;
}

/** Allocates strictly increasing sequence numbers for the client side. */
export class OutboundWriter {
  private nextSeq = 0;

  encode(kind: "join" | "input" | "tick_ack", payload: Record<string, unknown>): string {
    const line = JSON.stringify({ kind, seq: this.nextSeq, payload });
    this.nextSeq += 1;
    return line + "\n";
  }

  encodeJoin(packId: string, seed?: number): string {
    const payload: Record<string, unknown> = { pack_id: packId };
    if (seed !== undefined) payload.seed = seed;
    return this.encode("join", payload);
  }

  encodeInput(input: InputPayload): string {
    return this.encode("input", input as unknown as Record<string, unknown>);
  }

  encodeTickAck(seq: number): string {
    return this.encode("tick_ack", { seq });
  }
}
