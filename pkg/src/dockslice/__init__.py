"""dockslice: slice real protein complexes into 2D docking-puzzle pieces
and play them back through a headless, deterministic game engine.

The pipeline half turns PDB structures into piece assets (interface-plane
footprints with salt-bridge charge annotations and a canonical docked
pose); the engine half scores candidate poses as a percentage of the
perfect dock and runs the level/round game loop behind a newline-
delimited JSON protocol.
"""

from .charges import (
    ChargeSite,
    NoBridges,
    SaltBridge,
    bridge_report,
    find_charge_sites,
    find_salt_bridges,
)
from .engine import (
    DEFAULT_PARAMS,
    DockScore,
    DynamicsState,
    EngineParams,
    InvalidTimestep,
    check_snap,
    repulsion_impulse,
    score_pose,
    step_dynamics,
)
from .errors import DockSliceError
from .footprint import (
    DegenerateSplit,
    EmptyFootprint,
    FootprintParams,
    extract_footprint,
    split_halves,
)
from .game import (
    GameConfig,
    GameSession,
    GameState,
    IllegalInPhase,
    create_session,
    draw_question,
)
from .levels import (
    InvalidPack,
    LevelPack,
    LevelSpec,
    default_level_specs,
    load_pack,
    save_pack,
)
from .pdb import (
    AtomRecord,
    ComplexPair,
    EmptyStructure,
    MalformedRecord,
    OverlappingSelection,
    StructureModel,
    UnknownChain,
    parse_structure,
    select_pair,
)
from .pieces import Pose2D, SlicePiece, make_piece_pair
from .plane import InterfacePlane, NoContact, fit_interface_plane
from .quiz import DuplicateId, EmptyBank, QuizBank, QuizQuestion, load_bank, sample_bank

__version__ = "0.1.0"

__all__ = [
    "AtomRecord",
    "ChargeSite",
    "ComplexPair",
    "DEFAULT_PARAMS",
    "DegenerateSplit",
    "DockScore",
    "DockSliceError",
    "DuplicateId",
    "DynamicsState",
    "EmptyBank",
    "EmptyFootprint",
    "EmptyStructure",
    "EngineParams",
    "FootprintParams",
    "GameConfig",
    "GameSession",
    "GameState",
    "IllegalInPhase",
    "InterfacePlane",
    "InvalidPack",
    "InvalidTimestep",
    "LevelPack",
    "LevelSpec",
    "MalformedRecord",
    "NoBridges",
    "NoContact",
    "OverlappingSelection",
    "Pose2D",
    "QuizBank",
    "QuizQuestion",
    "SaltBridge",
    "SlicePiece",
    "StructureModel",
    "UnknownChain",
    "bridge_report",
    "check_snap",
    "create_session",
    "default_level_specs",
    "draw_question",
    "extract_footprint",
    "find_charge_sites",
    "find_salt_bridges",
    "fit_interface_plane",
    "load_bank",
    "load_pack",
    "make_piece_pair",
    "parse_structure",
    "repulsion_impulse",
    "sample_bank",
    "save_pack",
    "score_pose",
    "select_pair",
    "split_halves",
    "step_dynamics",
]
