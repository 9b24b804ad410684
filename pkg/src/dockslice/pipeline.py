"""Asset pipeline: ingest -> analyze -> slice -> compile -> validate.

Per-entry chain selectors, display text and geometry parameters live in a
JSON configuration (a packaged default covers the ten shipped entries).
Builds are deterministic: entries are processed in sorted order, floats
serialize as shortest round-trip decimals, and outputs are written
atomically, so identical inputs produce byte-identical asset packs.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import pdb
from .charges import NoBridges, SaltBridge, bridge_report, find_salt_bridges
from .engine import DEFAULT_PARAMS, EngineParams
from .errors import DockSliceError
from .footprint import (
    DegenerateSplit,
    EmptyFootprint,
    FootprintParams,
    extract_footprint,
    split_halves,
)
from .levels import (
    LevelPack,
    default_level_specs,
    load_pack,
    pack_to_dict,
    validate_pack_structure,
)
from .pdb import EmptyStructure, MalformedRecord, parse_structure, select_pair
from .pieces import SlicePiece, make_piece_pair
from .plane import NoContact, fit_interface_plane
from .polygon import distance_to_polygon, is_simple

log = logging.getLogger(__name__)

CACHE_SCHEMA_VERSION = 1


class ConfigError(DockSliceError):
    pass


@dataclass(frozen=True)
class EntryConfig:
    pdb_code: str
    receptor_chains: tuple[str, ...]
    ligand_chains: tuple[str, ...]
    display_names: dict
    blurbs: dict


@dataclass(frozen=True)
class PipelineConfig:
    pack_id: str
    entries: tuple[EntryConfig, ...]
    footprint: FootprintParams = FootprintParams()
    contact_cutoff: float = 5.0
    bridge_weight: float = 3.0
    bridge_cutoff: float = 4.0
    include_histidine: bool = True
    engine: EngineParams = DEFAULT_PARAMS

    def entry(self, code: str) -> EntryConfig:
        for e in self.entries:
            if e.pdb_code == code:
                return e
        raise ConfigError(f"no config stanza for entry {code!r}")


def parse_config(data: dict) -> PipelineConfig:
    try:
        geometry = data.get("geometry", {})
        bridges = data.get("bridges", {})
        entries = tuple(
            EntryConfig(
                pdb_code=e["pdb_code"].lower(),
                receptor_chains=tuple(e["receptor_chains"]),
                ligand_chains=tuple(e["ligand_chains"]),
                display_names=e.get("display_names", {}),
                blurbs=e.get("blurbs", {}),
            )
            for e in data["entries"]
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad pipeline config: {exc}") from None
    return PipelineConfig(
        pack_id=data.get("pack_id", "default"),
        entries=entries,
        footprint=FootprintParams(
            grid_step=geometry.get("grid_step", 0.5),
            slab=geometry.get("slab", 6.0),
            probe=geometry.get("probe", 1.4),
            simplify_tol=geometry.get("simplify_tol", 0.25),
            min_area=geometry.get("min_area", 10.0),
        ),
        contact_cutoff=geometry.get("contact_cutoff", 5.0),
        bridge_weight=geometry.get("bridge_weight", 3.0),
        bridge_cutoff=bridges.get("cutoff", 4.0),
        include_histidine=bridges.get("include_histidine", True),
    )


def load_config(path: str | Path) -> PipelineConfig:
    return parse_config(json.loads(Path(path).read_text()))


def default_config() -> PipelineConfig:
    text = resources.files("dockslice").joinpath("data/default_config.json").read_text()
    return parse_config(json.loads(text))


# -- ingest ---------------------------------------------------------------


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


@dataclass
class IngestResult:
    cached: list[str] = field(default_factory=list)   # codes written
    hits: list[str] = field(default_factory=list)     # codes already current
    failures: dict[str, str] = field(default_factory=dict)  # path -> reason


def ingest(paths: list[Path], cache_dir: Path) -> IngestResult:
    """Parse PDB files into the structure cache, keyed by file stem.

    Unchanged files (same sha256) are cache hits and are not rewritten.
    """
    cache_dir.mkdir(parents=True, exist_ok=True)
    result = IngestResult()
    for path in sorted(paths):
        code = path.stem.lower()
        cache_path = cache_dir / f"{code}.json"
        try:
            digest = _sha256(path)
            if cache_path.exists():
                try:
                    cached = json.loads(cache_path.read_text())
                    if cached.get("source_sha256") == digest:
                        result.hits.append(code)
                        continue
                except (json.JSONDecodeError, OSError):
                    pass  # corrupt cache entry: rebuild below
            structure = parse_structure(path.read_text(), entry_id=code)
            payload = {
                "schema_version": CACHE_SCHEMA_VERSION,
                "source_path": str(path),
                "source_sha256": digest,
                "structure": pdb.structure_to_dict(structure),
            }
            _atomic_write(cache_path, json.dumps(payload, sort_keys=True))
            result.cached.append(code)
        except (MalformedRecord, EmptyStructure, OSError) as exc:
            result.failures[str(path)] = str(exc)
    return result


def load_cached_structure(cache_dir: Path, code: str) -> pdb.StructureModel:
    """Read one cache entry, re-ingesting when the source changed or the
    cache entry is corrupt."""
    cache_path = cache_dir / f"{code}.json"
    payload = None
    if cache_path.exists():
        try:
            payload = json.loads(cache_path.read_text())
        except json.JSONDecodeError:
            payload = None
    source = Path(payload["source_path"]) if payload else None
    if payload is not None and source.exists():
        if payload.get("source_sha256") != _sha256(source):
            payload = None  # stale: source changed since ingest
    if payload is None:
        if source is None or not source.exists():
            raise DockSliceError(
                f"no usable cache entry for {code!r}; run ingest first"
            )
        log.warning("cache for %s stale or corrupt; re-ingesting", code)
        ingest([source], cache_dir)
        payload = json.loads(cache_path.read_text())
    return pdb.structure_from_dict(payload["structure"])


# -- build ----------------------------------------------------------------


@dataclass
class BuildResult:
    pack: LevelPack
    pack_path: Path | None
    built: list[str] = field(default_factory=list)
    skipped: dict[str, str] = field(default_factory=dict)  # code -> reason


def build_entry(
    structure: pdb.StructureModel,
    entry_cfg: EntryConfig,
    config: PipelineConfig,
) -> tuple[SlicePiece, SlicePiece, list[SaltBridge]]:
    """Slice one complex into its receptor/ligand piece pair."""
    pair = select_pair(structure, entry_cfg.receptor_chains, entry_cfg.ligand_chains)
    try:
        bridges = find_salt_bridges(
            pair, config.bridge_cutoff, include_histidine=config.include_histidine
        )
    except NoBridges:
        log.warning("%s: no salt bridges; pieces will be charge-free", entry_cfg.pdb_code)
        bridges = []
    plane = fit_interface_plane(
        pair,
        bridges,
        contact_cutoff=config.contact_cutoff,
        bridge_weight=config.bridge_weight,
    )
    rec_half, lig_half = split_halves(pair, plane)
    rec_fp = extract_footprint(rec_half, plane, config.footprint)
    lig_fp = extract_footprint(lig_half, plane, config.footprint)
    names = entry_cfg.display_names
    blurbs = entry_cfg.blurbs
    receptor, ligand = make_piece_pair(
        pair,
        plane,
        bridges,
        (rec_fp, lig_fp),
        display_names=(names.get("receptor", ""), names.get("ligand", "")),
        blurbs=(blurbs.get("receptor", ""), blurbs.get("ligand", "")),
        params=config.footprint,
    )
    return receptor, ligand, bridges


def build(
    config: PipelineConfig,
    cache_dir: Path,
    out_dir: Path | None,
    only_entries: list[str] | None = None,
) -> BuildResult:
    """Build piece pairs plus the level pack from cached structures.

    Per-entry geometry failures are collected; entries whose chains do not
    touch are skipped with a warning.  When `out_dir` is given, pieces and
    the pack are written there deterministically.
    """
    pieces: dict[str, SlicePiece] = {}
    built: list[str] = []
    skipped: dict[str, str] = {}
    reports: dict[str, str] = {}

    wanted = [e for e in config.entries if not only_entries or e.pdb_code in only_entries]
    for entry_cfg in sorted(wanted, key=lambda e: e.pdb_code):
        code = entry_cfg.pdb_code
        try:
            structure = load_cached_structure(cache_dir, code)
            receptor, ligand, bridges = build_entry(structure, entry_cfg, config)
        except NoContact as exc:
            log.warning("%s: %s; entry skipped", code, exc)
            skipped[code] = str(exc)
            continue
        except (DockSliceError, DegenerateSplit, EmptyFootprint) as exc:
            log.warning("%s: %s; entry skipped", code, exc)
            skipped[code] = str(exc)
            continue
        pieces[receptor.piece_id] = receptor
        pieces[ligand.piece_id] = ligand
        reports[code] = bridge_report(bridges, "json")
        built.append(code)

    pack = LevelPack(
        pack_id=config.pack_id,
        levels=default_level_specs(),
        pieces=pieces,
    )
    pack.problems = validate_pack_structure(pack)
    pack.conformant = not pack.problems

    pack_path = None
    if out_dir is not None:
        pieces_dir = out_dir / "pieces"
        pieces_dir.mkdir(parents=True, exist_ok=True)
        for piece_id in sorted(pieces):
            _atomic_write(pieces_dir / f"{piece_id}.json", pieces[piece_id].dumps())
        reports_dir = out_dir / "reports"
        reports_dir.mkdir(parents=True, exist_ok=True)
        for code in sorted(reports):
            _atomic_write(reports_dir / f"{code}.bridges.json", reports[code])
        pack_path = out_dir / "level_pack.json"
        _atomic_write(
            pack_path, json.dumps(pack_to_dict(pack), sort_keys=True, indent=1)
        )
    return BuildResult(pack=pack, pack_path=pack_path, built=built, skipped=skipped)


# -- validate ---------------------------------------------------------------


def validate_assets(
    pack: LevelPack,
    footprint_params: FootprintParams = FootprintParams(),
    engine_params: EngineParams = DEFAULT_PARAMS,
) -> list[str]:
    """All asset invariants plus progression-table conformance.

    Returns a list of violations (empty means the pack is clean).
    """
    from .engine import score_pose  # local import avoids cycles at module load

    violations = list(validate_pack_structure(pack))

    charge_slack = footprint_params.probe + footprint_params.grid_step
    for piece_id in sorted(pack.pieces):
        piece = pack.pieces[piece_id]
        if not is_simple(piece.outline):
            violations.append(f"{piece_id}: outline is not a simple polygon")
            continue
        for charge in piece.charges:
            d = distance_to_polygon(charge.point, piece.outline)
            if d > charge_slack:
                violations.append(
                    f"{piece_id}: charge {charge.bridge_index} lies {d:.2f} A "
                    f"outside the outline (allowed {charge_slack:.2f})"
                )

    for entry in pack.entries():
        receptor = pack.piece(entry, "receptor")
        ligand = pack.piece(entry, "ligand")
        if len(receptor.charges) != len(ligand.charges):
            violations.append(f"{entry}: charge lists differ in length")
        if receptor.bridge_indices() != ligand.bridge_indices():
            violations.append(f"{entry}: bridge index sets do not match")
        score = score_pose(receptor, ligand, ligand.canonical_pose, engine_params)
        if abs(score.percent - 100.0) > 1e-9:
            violations.append(
                f"{entry}: canonical-pose score {score.percent!r} != 100"
            )
        if score.overlap_area <= engine_params.snap_min_overlap:
            violations.append(
                f"{entry}: pieces do not overlap at the canonical pose; snap unreachable"
            )
    return violations


def validate_pack_file(pack_path: Path, config: PipelineConfig) -> list[str]:
    pack = load_pack(pack_path)
    return validate_assets(pack, config.footprint, config.engine)
