import json

from dockslice import protocol, sample_bank
from dockslice.runner import SessionRunner, parse_script, replay, simulate


def kinds(messages):
    return [m.kind for m in messages]


def wire_kinds(lines):
    return [json.loads(line)["kind"] for line in lines]


def make_runner(pack):
    return SessionRunner(pack, bank=sample_bank())


def join_msg(pack, seq=0, seed=1):
    return protocol.Message(kind="join", seq=seq, payload={"pack_id": pack.pack_id, "seed": seed})


def test_join_returns_hello_then_snapshot(pack):
    runner = make_runner(pack)
    out = runner.handle(join_msg(pack))
    assert kinds(out) == ["hello", "snapshot"]
    hello = out[0]
    assert hello.payload["protocol_version"] == protocol.PROTOCOL_VERSION
    assert hello.payload["level_spec"]["level"] == 1
    snapshot = out[1]
    assert snapshot.payload["phase"] == "tutorial"
    assert len(snapshot.payload["candidates"]) == 3
    # Snapshot is self-contained: geometry rides along.
    assert snapshot.payload["receptor"]["outline"]
    assert all(c["outline"] for c in snapshot.payload["candidates"])


def test_unknown_pack_is_error(pack):
    runner = make_runner(pack)
    out = runner.handle(
        protocol.Message(kind="join", seq=0, payload={"pack_id": "nope"})
    )
    assert kinds(out) == ["error"]


def test_input_before_join_is_error(pack):
    runner = make_runner(pack)
    out = runner.handle(protocol.Message(kind="input", seq=0, payload={"type": "dismiss"}))
    assert kinds(out) == ["error"]


def test_non_increasing_seq_is_error(pack):
    runner = make_runner(pack)
    runner.handle(join_msg(pack, seq=5))
    out = runner.handle(protocol.Message(kind="tick_ack", seq=5, payload={"seq": 0}))
    assert kinds(out) == ["error"]


def test_illegal_phase_input_becomes_error_message(pack):
    runner = make_runner(pack)
    runner.handle(join_msg(pack))
    out = runner.handle(
        protocol.Message(
            kind="input", seq=1, payload={"type": "drag", "candidate": 0, "dx": 1, "dy": 0}
        )
    )
    assert kinds(out) == ["error"]


def test_malformed_line_becomes_error_message(pack):
    runner = make_runner(pack)
    out = runner.handle_line(b'{"kind": "score_update", "seq": 0, "payload": {}}')
    assert kinds(out) == ["error"]
    assert "payload.candidate" in out[0].payload["message"]


def test_tick_ack_paces_the_clock(pack):
    runner = make_runner(pack)
    runner.handle(join_msg(pack))
    runner.handle(protocol.Message(kind="input", seq=1, payload={"type": "dismiss"}))
    before = runner.session.state.timer_remaining
    out = runner.handle(protocol.Message(kind="tick_ack", seq=2, payload={"seq": 0}))
    assert runner.session.state.timer_remaining < before
    assert kinds(out)[-1] == "snapshot"
    assert runner.acked_seq == 0


def test_outbound_seq_strictly_increasing(pack):
    runner = make_runner(pack)
    collected = []
    collected += runner.handle(join_msg(pack))
    collected += runner.handle(
        protocol.Message(kind="input", seq=1, payload={"type": "dismiss"})
    )
    for i in range(5):
        collected += runner.handle(
            protocol.Message(kind="tick_ack", seq=2 + i, payload={"seq": 0})
        )
    seqs = [m.seq for m in collected]
    assert seqs == sorted(seqs) and len(set(seqs)) == len(seqs)


def test_parse_script_validation():
    items = parse_script([{"t": 1.0, "input": {"type": "dismiss"}}])
    assert items[0].t == 1.0
    import pytest

    from dockslice.runner import ScriptError

    with pytest.raises(ScriptError):
        parse_script({"not": "a list"})
    with pytest.raises(ScriptError):
        parse_script([{"input": {}}])


PERFECT_DOCK = [
    {"t": 0.2, "input": {"type": "dismiss"}},
    {"t": 0.5, "input": {"type": "dock_true"}},
]


def test_simulate_perfect_dock_wins(pack):
    transcript = simulate(pack, parse_script(PERFECT_DOCK), seed=12, bank=sample_bank())
    out_kinds = wire_kinds(transcript.outbound)
    assert "win_animation" in out_kinds
    assert "hello" == out_kinds[0]
    in_kinds = wire_kinds(transcript.inbound)
    assert in_kinds[0] == "join"
    assert set(in_kinds) <= {"join", "input", "tick_ack"}
    # The recorded inputs are concrete wire inputs, not script sugar.
    input_types = [
        json.loads(line)["payload"]["type"]
        for line in transcript.inbound
        if json.loads(line)["kind"] == "input"
    ]
    assert "dock_true" not in input_types


def test_simulate_deterministic_transcripts(pack):
    a = simulate(pack, parse_script(PERFECT_DOCK), seed=9, bank=sample_bank())
    b = simulate(pack, parse_script(PERFECT_DOCK), seed=9, bank=sample_bank())
    assert a.outbound == b.outbound
    assert a.inbound == b.inbound
    c = simulate(pack, parse_script(PERFECT_DOCK), seed=10, bank=sample_bank())
    assert c.outbound != a.outbound


def test_replay_reproduces_outbound_byte_for_byte(pack):
    script = parse_script(PERFECT_DOCK)
    recorded = simulate(pack, script, seed=33, bank=sample_bank())
    replayed = replay(pack, recorded.inbound, bank=sample_bank())
    assert replayed == recorded.outbound


def test_simulate_idle_loses_a_life(pack):
    script = parse_script([{"t": 0.2, "input": {"type": "dismiss"}}])
    transcript = simulate(pack, script, seed=3, bank=sample_bank(), duration=61.0)
    out_kinds = wire_kinds(transcript.outbound)
    assert "life_lost" in out_kinds
    assert "game_over" not in out_kinds


def test_simulate_three_idle_losses_end_game(pack):
    script = parse_script([{"t": 0.2, "input": {"type": "dismiss"}}])
    transcript = simulate(pack, script, seed=3, bank=sample_bank(), duration=185.0)
    out_kinds = wire_kinds(transcript.outbound)
    assert out_kinds.count("life_lost") == 3
    assert "game_over" in out_kinds
