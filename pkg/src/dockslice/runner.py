"""Couples a game session to the wire protocol.

The runner is transport-agnostic: it consumes inbound Message objects
(join / input / tick_ack) and returns the outbound messages they caused.
In stream transports and replay, tick_ack both acknowledges the latest
outbound seq and paces the clock: each ack advances one fixed dt step.
That makes a recorded inbound transcript self-timing, so replaying it
against a fresh runner reproduces the outbound transcript byte-for-byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from . import protocol
from .errors import DockSliceError
from .game import DEFAULT_CONFIG, GameConfig, GameSession, IllegalInPhase, create_session
from .levels import InvalidPack, LevelPack
from .pieces import wrap_angle
from .protocol import Message, MessageWriter
from .quiz import QuizBank

TICK_DT = 1.0 / 30.0


class ScriptError(DockSliceError):
    pass


class SessionRunner:
    """One connection: at most one session, strictly ordered messages."""

    def __init__(
        self,
        pack: LevelPack,
        bank: QuizBank | None = None,
        config: GameConfig = DEFAULT_CONFIG,
        dt: float = TICK_DT,
        server_clock: bool = False,
    ):
        self.pack = pack
        self.bank = bank
        self.config = config
        self.dt = dt
        self.server_clock = server_clock
        self.session: GameSession | None = None
        self.writer = MessageWriter()
        self.acked_seq = -1
        self._last_inbound_seq = -1

    # -- outbound helpers ----------------------------------------------

    def _out(self, kind: str, payload: dict) -> Message:
        return self.writer.make(kind, payload)

    def _error(self, message: str) -> list[Message]:
        return [self._out("error", {"message": message})]

    def _snapshot_msg(self) -> Message:
        return self._out("snapshot", self.session.snapshot())

    def _events_to_messages(self, events: list[dict]) -> list[Message]:
        out = []
        for event in events:
            kind = event["kind"]
            if kind == "state_update":
                out.append(self._snapshot_msg())
            else:
                out.append(self._out(kind, event["payload"]))
        return out

    # -- inbound handling ----------------------------------------------

    def handle(self, msg: Message) -> list[Message]:
        if msg.seq <= self._last_inbound_seq:
            return self._error(
                f"inbound seq {msg.seq} not increasing (last {self._last_inbound_seq})"
            )
        self._last_inbound_seq = msg.seq

        if msg.kind == "join":
            return self._handle_join(msg.payload)
        if self.session is None:
            return self._error("no session; send join first")
        if msg.kind == "input":
            return self._handle_input(msg.payload)
        if msg.kind == "tick_ack":
            self.acked_seq = max(self.acked_seq, int(msg.payload.get("seq", -1)))
            if self.server_clock:
                return []
            return self._events_to_messages(self.session.tick(self.dt))
        return self._error(f"unexpected inbound kind {msg.kind!r}")

    def handle_line(self, line: bytes | str) -> list[Message]:
        try:
            msg = protocol.decode(line)
        except protocol.SchemaViolation as exc:
            return self._error(str(exc))
        return self.handle(msg)

    def _handle_join(self, payload: dict) -> list[Message]:
        if self.session is not None:
            return self._error("session already joined")
        if payload["pack_id"] != self.pack.pack_id:
            return self._error(f"unknown pack {payload['pack_id']!r}")
        seed = int(payload.get("seed", 0))
        tier = payload.get("tier", self.config.tier)
        config = replace(self.config, tier=tier)
        try:
            self.session = create_session(self.pack, seed, config=config, bank=self.bank)
        except InvalidPack as exc:
            return self._error(str(exc))
        hello = self._out(
            "hello",
            {
                "protocol_version": protocol.PROTOCOL_VERSION,
                "pack_id": self.pack.pack_id,
                "seed": seed,
                "level_spec": self.session.level.to_dict(),
            },
        )
        return [hello, self._snapshot_msg()]

    def _handle_input(self, payload: dict) -> list[Message]:
        try:
            events = self.session.handle_input(payload)
        except (IllegalInPhase, ValueError) as exc:
            return self._error(str(exc))
        return self._events_to_messages(events)

    def tick(self) -> list[Message]:
        """Server-clock transports call this on their own timer."""
        if self.session is None:
            return []
        return self._events_to_messages(self.session.tick(self.dt))


# -- scripted simulation ------------------------------------------------


@dataclass
class ScriptItem:
    t: float
    input: dict


def parse_script(data) -> list[ScriptItem]:
    if not isinstance(data, list):
        raise ScriptError("script must be a JSON array of {t, input} items")
    items = []
    for i, raw in enumerate(data):
        if not isinstance(raw, dict) or "t" not in raw or "input" not in raw:
            raise ScriptError(f"script item {i} must have 't' and 'input'")
        items.append(ScriptItem(t=float(raw["t"]), input=dict(raw["input"])))
    items.sort(key=lambda it: it.t)
    return items


def _resolve_sugar(session: GameSession, item: dict) -> list[dict]:
    """Expand convenience script inputs into concrete wire inputs.

    `dock_true` rotates the true partner back to its canonical angle and
    drags it onto the dock in one motion; the recorded transcript contains
    only the concrete inputs.
    """
    if item.get("type") != "dock_true":
        return [item]
    if session.state.phase != "playing":
        raise ScriptError("dock_true requires phase playing")
    index = session.true_candidate_index()
    cand = session.state.candidates[index]
    piece = session.candidate_piece(index)
    canonical = piece.canonical_pose

    step = math.radians(session.config.rotation_step_deg)
    diff = wrap_angle(canonical.theta - cand.dyn.pose.theta)
    taps = round((diff % (2.0 * math.pi)) / step) % round(2.0 * math.pi / step)
    inputs = [{"type": "double_tap", "candidate": index} for _ in range(taps)]
    inputs.append(
        {
            "type": "drag",
            "candidate": index,
            "dx": canonical.tx - cand.dyn.pose.tx,
            "dy": canonical.ty - cand.dyn.pose.ty,
        }
    )
    return inputs


@dataclass
class Transcript:
    inbound: list[bytes] = field(default_factory=list)
    outbound: list[bytes] = field(default_factory=list)


def simulate(
    pack: LevelPack,
    script: list[ScriptItem],
    seed: int,
    bank: QuizBank | None = None,
    config: GameConfig = DEFAULT_CONFIG,
    dt: float = TICK_DT,
    duration: float | None = None,
) -> Transcript:
    """Run a scripted headless session; returns both wire transcripts."""
    runner = SessionRunner(pack, bank=bank, config=config, dt=dt)
    writer = MessageWriter()
    transcript = Transcript()

    def send(kind: str, payload: dict) -> None:
        msg = writer.make(kind, payload)
        line = protocol.encode(msg)
        transcript.inbound.append(line)
        for out in runner.handle(msg):
            transcript.outbound.append(protocol.encode(out))

    send("join", {"pack_id": pack.pack_id, "seed": seed})

    end_t = duration
    if end_t is None:
        end_t = (script[-1].t if script else 0.0) + 1.0

    sim_t = 0.0
    queue = list(script)
    while True:
        while queue and queue[0].t <= sim_t + 1e-9:
            item = queue.pop(0)
            for concrete in _resolve_sugar(runner.session, item.input):
                send("input", concrete)
        if sim_t + dt > end_t + 1e-9:
            break
        send("tick_ack", {"seq": runner.writer.last_seq})
        sim_t += dt
    return transcript


def replay(
    pack: LevelPack,
    inbound: list[bytes],
    bank: QuizBank | None = None,
    config: GameConfig = DEFAULT_CONFIG,
    dt: float = TICK_DT,
) -> list[bytes]:
    """Feed a recorded inbound transcript to a fresh runner."""
    runner = SessionRunner(pack, bank=bank, config=config, dt=dt)
    outbound = []
    for line in inbound:
        for out in runner.handle_line(line):
            outbound.append(protocol.encode(out))
    return outbound
