"""Newline-delimited JSON wire contract between engine and client.

Every message is one JSON object per line: {"kind", "seq", "payload"}.
Sequence numbers increase strictly per direction.  Encoding is canonical
(sorted keys, compact separators) so identical message streams are
byte-identical; unknown top-level fields are ignored on decode while the
payload is preserved verbatim for forward compatibility.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DockSliceError

PROTOCOL_VERSION = 1

OUTBOUND_KINDS = (
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
)
INBOUND_KINDS = ("join", "input", "tick_ack")
ALL_KINDS = OUTBOUND_KINDS + INBOUND_KINDS


class SchemaViolation(DockSliceError):
    """A message failed validation; `path` names the offending field."""

    def __init__(self, path: str, detail: str = ""):
        self.path = path
        msg = f"schema violation at {path}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class Message:
    kind: str
    seq: int
    payload: dict


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_choices(value) -> bool:
    return (
        isinstance(value, list)
        and len(value) == 3
        and all(isinstance(c, str) for c in value)
    )


_CHECKS = {
    "str": (lambda v: isinstance(v, str), "a string"),
    "int": (_is_int, "an integer"),
    "number": (_is_number, "a number"),
    "bool": (lambda v: isinstance(v, bool), "a boolean"),
    "dict": (lambda v: isinstance(v, dict), "an object"),
    "list": (lambda v: isinstance(v, list), "a list"),
    "choices": (_is_choices, "a list of exactly 3 strings"),
}

# Required payload fields per message kind.
SCHEMAS: dict[str, dict[str, str]] = {
    "hello": {"protocol_version": "int", "pack_id": "str", "level_spec": "dict"},
    "snapshot": {
        "phase": "str",
        "level": "int",
        "round": "int",
        "lives": "int",
        "points": "int",
        "timer_remaining": "number",
        "receptor": "dict",
        "candidates": "list",
    },
    "score_update": {"candidate": "int", "percent": "number"},
    "sound_cue": {"name": "str"},
    "win_animation": {"entry": "str"},
    "life_lost": {"lives": "int"},
    "quiz": {"question_id": "str", "tier": "str", "prompt": "str", "choices": "choices"},
    "explanation": {"correct_index": "int", "text": "str", "correct": "bool"},
    "level_end": {"level": "int", "points": "int", "mean_time": "number", "precision": "number"},
    "game_over": {"points": "int", "reason": "str"},
    "error": {"message": "str"},
    "join": {"pack_id": "str"},
    "input": {"type": "str"},
    "tick_ack": {"seq": "int"},
}


def validate(msg: Message) -> None:
    if msg.kind not in SCHEMAS:
        raise SchemaViolation("kind", f"unknown kind {msg.kind!r}")
    if not _is_int(msg.seq) or msg.seq < 0:
        raise SchemaViolation("seq", "must be a non-negative integer")
    if not isinstance(msg.payload, dict):
        raise SchemaViolation("payload", "must be an object")
    for name, kind in SCHEMAS[msg.kind].items():
        if name not in msg.payload:
            raise SchemaViolation(f"payload.{name}", "missing")
        check, label = _CHECKS[kind]
        if not check(msg.payload[name]):
            raise SchemaViolation(f"payload.{name}", f"must be {label}")


def encode(msg: Message) -> bytes:
    """Canonical single-line encoding (validates first)."""
    validate(msg)
    body = {"kind": msg.kind, "seq": msg.seq, "payload": msg.payload}
    return (json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n").encode()


def decode(data: bytes | str) -> Message:
    """Parse and validate one line; unknown top-level fields are ignored."""
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("message", f"not valid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SchemaViolation("message", "must be a JSON object")
    if "kind" not in raw:
        raise SchemaViolation("kind", "missing")
    if "seq" not in raw:
        raise SchemaViolation("seq", "missing")
    msg = Message(kind=raw["kind"], seq=raw["seq"], payload=raw.get("payload", {}))
    validate(msg)
    return msg


class MessageWriter:
    """Allocates strictly increasing sequence numbers for one direction."""

    def __init__(self) -> None:
        self._next_seq = 0

    @property
    def last_seq(self) -> int:
        return self._next_seq - 1

    def make(self, kind: str, payload: dict) -> Message:
        msg = Message(kind=kind, seq=self._next_seq, payload=payload)
        validate(msg)
        self._next_seq += 1
        return msg
