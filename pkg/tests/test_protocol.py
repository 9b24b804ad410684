import json
import random

import pytest

from dockslice.protocol import (
    ALL_KINDS,
    Message,
    MessageWriter,
    SchemaViolation,
    decode,
    encode,
)


def test_snapshot_roundtrip_identity():
    msg = Message(
        kind="snapshot",
        seq=4,
        payload={
            "phase": "playing",
            "level": 1,
            "round": 1,
            "lives": 3,
            "points": 0,
            "timer_remaining": 59.5,
            "receptor": {"piece_id": "2ptc-receptor", "outline": [[0, 0], [1, 0], [0, 1]]},
            "candidates": [{"piece_id": f"c{i}", "pose": {"tx": 0, "ty": 0, "theta": 0}}
                           for i in range(4)],
        },
    )
    assert decode(encode(msg)) == msg


def test_missing_percent_names_field():
    raw = json.dumps({"kind": "score_update", "seq": 1, "payload": {"candidate": 0}})
    with pytest.raises(SchemaViolation) as err:
        decode(raw)
    assert err.value.path == "payload.percent"


def test_wrong_type_names_field():
    raw = json.dumps(
        {"kind": "score_update", "seq": 1, "payload": {"candidate": 0, "percent": "high"}}
    )
    with pytest.raises(SchemaViolation) as err:
        decode(raw)
    assert err.value.path == "payload.percent"


def test_quiz_requires_exactly_three_choices():
    payload = {"question_id": "q", "tier": "GCSE", "prompt": "?", "choices": ["a", "b"]}
    with pytest.raises(SchemaViolation) as err:
        decode(json.dumps({"kind": "quiz", "seq": 0, "payload": payload}))
    assert err.value.path == "payload.choices"


def test_unknown_kind_rejected():
    with pytest.raises(SchemaViolation) as err:
        decode(json.dumps({"kind": "teleport", "seq": 0, "payload": {}}))
    assert err.value.path == "kind"


def test_bad_seq_rejected():
    with pytest.raises(SchemaViolation) as err:
        decode(json.dumps({"kind": "error", "seq": -1, "payload": {"message": "x"}}))
    assert err.value.path == "seq"
    with pytest.raises(SchemaViolation):
        decode(json.dumps({"kind": "error", "payload": {"message": "x"}}))


def test_garbage_input_rejected():
    with pytest.raises(SchemaViolation) as err:
        decode(b"not json at all\n")
    assert err.value.path == "message"
    with pytest.raises(SchemaViolation):
        decode(b"[]")


def test_unknown_top_level_fields_ignored():
    raw = json.dumps(
        {"kind": "sound_cue", "seq": 3, "payload": {"name": "win"}, "debug": True}
    )
    msg = decode(raw)
    assert msg == Message(kind="sound_cue", seq=3, payload={"name": "win"})


def test_extra_payload_fields_preserved():
    msg = Message(kind="sound_cue", seq=0, payload={"name": "weak", "volume": 0.5})
    assert decode(encode(msg)).payload["volume"] == 0.5


def test_encoding_is_canonical_single_line():
    msg = Message(kind="life_lost", seq=9, payload={"lives": 2, "a": 1, "z": 2})
    data = encode(msg)
    assert data.endswith(b"\n") and data.count(b"\n") == 1
    assert data == encode(decode(data))


def _random_valid_message(rng: random.Random, seq: int) -> Message:
    def rand_str():
        return "".join(rng.choice("abcdefgh stuv") for _ in range(rng.randint(1, 12)))

    samples = {
        "hello": lambda: {
            "protocol_version": 1,
            "pack_id": rand_str(),
            "level_spec": {"level": rng.randint(1, 7)},
        },
        "snapshot": lambda: {
            "phase": rng.choice(["tutorial", "playing", "quiz"]),
            "level": rng.randint(1, 7),
            "round": rng.randint(1, 5),
            "lives": rng.randint(0, 3),
            "points": rng.randint(0, 10_000),
            "timer_remaining": rng.uniform(0, 60),
            "receptor": {"piece_id": rand_str()},
            "candidates": [{"i": i} for i in range(rng.randint(0, 4))],
        },
        "score_update": lambda: {
            "candidate": rng.randint(0, 3),
            "percent": rng.uniform(0, 100),
            "overlap_area": rng.uniform(0, 400),
        },
        "sound_cue": lambda: {"name": rng.choice(["win", "weak", "repulsion"])},
        "win_animation": lambda: {"entry": rand_str()},
        "life_lost": lambda: {"lives": rng.randint(0, 3)},
        "quiz": lambda: {
            "question_id": rand_str(),
            "tier": rng.choice(["GCSE", "A_Level"]),
            "prompt": rand_str(),
            "choices": [rand_str(), rand_str(), rand_str()],
        },
        "explanation": lambda: {
            "correct_index": rng.randint(0, 2),
            "text": rand_str(),
            "correct": rng.random() < 0.5,
        },
        "level_end": lambda: {
            "level": rng.randint(1, 7),
            "points": rng.randint(0, 9999),
            "mean_time": rng.uniform(0, 60),
            "precision": rng.random(),
        },
        "game_over": lambda: {
            "points": rng.randint(0, 9999),
            "reason": rng.choice(["completed", "out_of_lives"]),
        },
        "error": lambda: {"message": rand_str()},
        "join": lambda: {"pack_id": rand_str(), "seed": rng.randint(0, 2**31)},
        "input": lambda: {"type": rand_str(), "dx": rng.uniform(-5, 5)},
        "tick_ack": lambda: {"seq": rng.randint(0, 10_000)},
    }
    kind = rng.choice(list(samples))
    payload = samples[kind]()
    if rng.random() < 0.3:  # forward-compat extras survive the round trip
        payload["x_extra"] = {"nested": [rng.random(), rand_str()]}
    return Message(kind=kind, seq=seq, payload=payload)


def test_fuzz_1000_messages_roundtrip_byte_stable():
    rng = random.Random(2024)
    for seq in range(1000):
        msg = _random_valid_message(rng, seq)
        wire = encode(msg)
        back = decode(wire)
        assert back == msg
        assert encode(back) == wire


def test_writer_sequences_strictly_increase():
    writer = MessageWriter()
    seqs = [writer.make("sound_cue", {"name": "win"}).seq for _ in range(5)]
    assert seqs == [0, 1, 2, 3, 4]
    assert writer.last_seq == 4


def test_all_kinds_have_schemas():
    from dockslice.protocol import SCHEMAS

    assert set(SCHEMAS) == set(ALL_KINDS)
