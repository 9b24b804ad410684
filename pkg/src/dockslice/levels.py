"""Level progression table and the playable asset pack.

The seven-level progression is fixed: candidate counts, charge
visibility, rotation, movement and gravity ramp up across levels.  Round
time limits are tunables of this artifact (the progression table does not
set them).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DockSliceError
from .pieces import SlicePiece

PACK_SCHEMA_VERSION = 1

# (level, n_proteins, charges_visible, n_rounds, rotation_required,
#  candidates_per_round, moving, gravity)
LEVEL_TABLE = (
    (1, 3, False, 1, False, 3, False, False),
    (2, 4, False, 1, True, 3, False, False),
    (3, 17, True, 2, False, 3, False, False),
    (4, 10, True, 3, False, 3, True, False),
    (5, 17, True, 3, True, 3, False, False),
    (6, 15, True, 5, True, 3, True, True),
    (7, 18, True, 5, True, 4, True, True),
)

DEFAULT_TIME_LIMITS = (60.0, 60.0, 60.0, 45.0, 45.0, 40.0, 40.0)


class InvalidPack(DockSliceError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("invalid level pack: " + "; ".join(problems))


@dataclass(frozen=True)
class LevelSpec:
    level: int
    n_proteins: int
    charges_visible: bool
    n_rounds: int
    rotation_required: bool
    candidates_per_round: int
    moving: bool
    gravity: bool
    round_time_limit: float

    def table_row(self) -> tuple:
        return (
            self.level,
            self.n_proteins,
            self.charges_visible,
            self.n_rounds,
            self.rotation_required,
            self.candidates_per_round,
            self.moving,
            self.gravity,
        )

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "n_proteins": self.n_proteins,
            "charges_visible": self.charges_visible,
            "n_rounds": self.n_rounds,
            "rotation_required": self.rotation_required,
            "candidates_per_round": self.candidates_per_round,
            "moving": self.moving,
            "gravity": self.gravity,
            "round_time_limit": self.round_time_limit,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LevelSpec":
        return cls(**data)


def default_level_specs() -> list[LevelSpec]:
    return [
        LevelSpec(*row, round_time_limit=DEFAULT_TIME_LIMITS[i])
        for i, row in enumerate(LEVEL_TABLE)
    ]


@dataclass
class LevelPack:
    pack_id: str
    levels: list[LevelSpec]
    pieces: dict[str, SlicePiece] = field(default_factory=dict)  # piece_id -> piece
    conformant: bool = True
    problems: list[str] = field(default_factory=list)

    def entries(self) -> list[str]:
        """Entry codes that have both a receptor and a ligand piece."""
        sides: dict[str, set[str]] = {}
        for piece in self.pieces.values():
            sides.setdefault(piece.source_entry, set()).add(piece.side)
        return sorted(e for e, s in sides.items() if {"receptor", "ligand"} <= s)

    def piece(self, entry: str, side: str) -> SlicePiece:
        return self.pieces[f"{entry}-{side}"]


def validate_pack_structure(pack: LevelPack) -> list[str]:
    """Structural problems that make a pack unplayable for a session."""
    problems = []
    expected = default_level_specs()
    if len(pack.levels) != 7:
        problems.append(f"pack has {len(pack.levels)} levels, expected 7")
    else:
        for spec, want in zip(pack.levels, expected):
            if spec.table_row() != want.table_row():
                problems.append(
                    f"level {want.level} does not match the progression table"
                )
    entries = pack.entries()
    if not entries:
        problems.append("pack has no complete piece pair")
    else:
        max_candidates = max((s.candidates_per_round for s in pack.levels), default=3)
        if len(entries) < max_candidates:
            problems.append(
                f"inventory has {len(entries)} entries; "
                f"{max_candidates} needed to fill a round with decoys"
            )
    return problems


def pack_to_dict(pack: LevelPack) -> dict:
    return {
        "schema_version": PACK_SCHEMA_VERSION,
        "pack_id": pack.pack_id,
        "levels": [s.to_dict() for s in pack.levels],
        "pieces": [pack.pieces[k].to_dict() for k in sorted(pack.pieces)],
        "conformant": pack.conformant,
        "problems": pack.problems,
    }


def pack_from_dict(data: dict) -> LevelPack:
    pieces = {p["piece_id"]: SlicePiece.from_dict(p) for p in data["pieces"]}
    return LevelPack(
        pack_id=data["pack_id"],
        levels=[LevelSpec.from_dict(d) for d in data["levels"]],
        pieces=pieces,
        conformant=data.get("conformant", True),
        problems=data.get("problems", []),
    )


def save_pack(pack: LevelPack, path: str | Path) -> None:
    Path(path).write_text(json.dumps(pack_to_dict(pack), sort_keys=True, indent=1))


def load_pack(path: str | Path) -> LevelPack:
    return pack_from_dict(json.loads(Path(path).read_text()))
