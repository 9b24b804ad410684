"""Fixed-column PDB ingestion.

Reads ATOM/HETATM records into a chain/residue/atom model and selects the
two docking partners of a complex.  Only the first MODEL of a multi-model
file is kept, alternate locations other than ' '/'A' are dropped, and
waters (HOH) are excluded.  Non-water HETATM records are kept but flagged
so they never contribute charges downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import DockSliceError


class PdbError(DockSliceError):
    pass


class MalformedRecord(PdbError):
    """A numeric field of an ATOM/HETATM record failed to parse."""

    def __init__(self, line_no: int, detail: str = ""):
        self.line_no = line_no
        msg = f"malformed record at line {line_no}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EmptyStructure(PdbError):
    """No atoms survived parsing and filtering."""


class UnknownChain(PdbError):
    def __init__(self, chain_id: str):
        self.chain_id = chain_id
        super().__init__(f"chain {chain_id!r} not present in structure")


class OverlappingSelection(PdbError):
    """Receptor and ligand selectors name at least one common chain."""


@dataclass(frozen=True)
class AtomRecord:
    """One ATOM/HETATM record after column extraction.

    `line_no` is the 1-based source line, kept so every parsed atom can be
    traced back to (and re-extracted from) the raw text.
    """

    serial: int
    name: str
    alt_loc: str
    residue_name: str
    chain_id: str
    residue_seq: int
    insertion_code: str
    position: tuple[float, float, float]
    element: str
    het: bool = False
    line_no: int = -1


@dataclass
class Residue:
    name: str
    seq: int
    insertion_code: str
    het: bool
    atoms: list[AtomRecord] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, str]:
        return (self.seq, self.insertion_code)


@dataclass
class ChainModel:
    chain_id: str
    residues: list[Residue] = field(default_factory=list)

    def atoms(self) -> Iterator[AtomRecord]:
        for res in self.residues:
            yield from res.atoms


@dataclass
class StructureModel:
    """Parsed structure: ordered chains, each holding ordered residues."""

    entry_id: str
    chains: list[ChainModel] = field(default_factory=list)

    @property
    def chain_ids(self) -> list[str]:
        return [c.chain_id for c in self.chains]

    def chain(self, chain_id: str) -> ChainModel:
        for c in self.chains:
            if c.chain_id == chain_id:
                return c
        raise UnknownChain(chain_id)

    def atoms(self) -> Iterator[AtomRecord]:
        for c in self.chains:
            yield from c.atoms()

    def atom_count(self) -> int:
        return sum(1 for _ in self.atoms())


@dataclass(frozen=True)
class ComplexPair:
    """A structure split into receptor and ligand chain sets."""

    receptor: frozenset[str]
    ligand: frozenset[str]
    structure: StructureModel

    def side_of(self, chain_id: str) -> str:
        if chain_id in self.receptor:
            return "receptor"
        if chain_id in self.ligand:
            return "ligand"
        raise UnknownChain(chain_id)

    def atoms_of(self, side: str) -> Iterator[AtomRecord]:
        wanted = self.receptor if side == "receptor" else self.ligand
        for chain in self.structure.chains:
            if chain.chain_id in wanted:
                yield from chain.atoms()

    def receptor_atoms(self) -> list[AtomRecord]:
        return list(self.atoms_of("receptor"))

    def ligand_atoms(self) -> list[AtomRecord]:
        return list(self.atoms_of("ligand"))


def coords_of(atoms: Iterable[AtomRecord]) -> np.ndarray:
    """Positions of `atoms` as an (N, 3) float array."""
    return np.array([a.position for a in atoms], dtype=float).reshape(-1, 3)


# Fixed columns (1-based in the format spec, 0-based slices here):
# record 1-6, serial 7-11, name 13-16, alt_loc 17, residue 18-20, chain 22,
# residue seq 23-26, insertion code 27, x 31-38, y 39-46, z 47-54,
# element 77-78.
def _parse_atom_line(line: str, line_no: int, het: bool) -> AtomRecord:
    if len(line) < 54:
        raise MalformedRecord(line_no, "record too short for coordinates")

    def _int(lo: int, hi: int, what: str) -> int:
        try:
            return int(line[lo:hi])
        except ValueError:
            raise MalformedRecord(line_no, f"bad {what} field") from None

    def _float(lo: int, hi: int, what: str) -> float:
        try:
            value = float(line[lo:hi])
        except ValueError:
            raise MalformedRecord(line_no, f"bad {what} field") from None
        if not math.isfinite(value):
            raise MalformedRecord(line_no, f"non-finite {what}")
        return value

    name = line[12:16].strip()
    element = line[76:78].strip() if len(line) >= 78 else ""
    if not element:
        # Older files leave columns 77-78 blank; fall back to the first
        # alphabetic character of the atom name.
        element = next((ch for ch in name if ch.isalpha()), "")
    if not name or not element:
        raise MalformedRecord(line_no, "empty atom name")

    return AtomRecord(
        serial=_int(6, 11, "serial"),
        name=name,
        alt_loc=line[16] if len(line) > 16 else " ",
        residue_name=line[17:20].strip(),
        chain_id=line[21] if len(line) > 21 else " ",
        residue_seq=_int(22, 26, "residue seq"),
        insertion_code=line[26] if len(line) > 26 else " ",
        position=(_float(30, 38, "x"), _float(38, 46, "y"), _float(46, 54, "z")),
        element=element.upper(),
        het=het,
        line_no=line_no,
    )


def parse_structure(text: str, entry_id: str | None = None) -> StructureModel:
    """Parse PDB-format text into a StructureModel.

    Keeps ATOM records of the first MODEL with alt_loc in {' ', 'A'};
    HETATM records are kept (flagged) except waters.  Records are grouped
    by chain then residue in file order.  Raises MalformedRecord when a
    numeric field fails to parse and EmptyStructure when nothing survives.
    """
    header_code = None
    model_count = 0
    in_active_model = True

    chains: dict[str, ChainModel] = {}
    residues: dict[tuple[str, int, str], Residue] = {}
    n_atoms = 0

    for line_no, line in enumerate(text.splitlines(), start=1):
        record = line[:6]
        if record == "HEADER":
            code = line[62:66].strip()
            if code:
                header_code = code.lower()
        elif record.startswith("MODEL"):
            model_count += 1
            in_active_model = model_count == 1
        elif record.startswith("ENDMDL"):
            # Atoms between models belong nowhere; stay inactive until the
            # next MODEL record (which will not be the first).
            in_active_model = model_count == 0
        elif record in ("ATOM  ", "HETATM") and in_active_model:
            het = record == "HETATM"
            atom = _parse_atom_line(line, line_no, het)
            if atom.alt_loc not in (" ", "A"):
                continue
            if het and atom.residue_name == "HOH":
                continue
            chain = chains.get(atom.chain_id)
            if chain is None:
                chain = chains[atom.chain_id] = ChainModel(atom.chain_id)
            res_key = (atom.chain_id, atom.residue_seq, atom.insertion_code)
            res = residues.get(res_key)
            if res is None:
                res = residues[res_key] = Residue(
                    name=atom.residue_name,
                    seq=atom.residue_seq,
                    insertion_code=atom.insertion_code,
                    het=atom.het,
                )
                chain.residues.append(res)
            res.atoms.append(atom)
            n_atoms += 1

    if n_atoms == 0:
        raise EmptyStructure("no atoms survived parsing and filtering")

    entry = entry_id or header_code or "xxxx"
    return StructureModel(entry_id=entry.lower(), chains=list(chains.values()))


def select_pair(
    structure: StructureModel,
    receptor_sel: Iterable[str],
    ligand_sel: Iterable[str],
) -> ComplexPair:
    """Split a structure into receptor/ligand partners, dropping other chains."""
    receptor = frozenset(receptor_sel)
    ligand = frozenset(ligand_sel)
    if not receptor or not ligand:
        raise ValueError("receptor and ligand selectors must be non-empty")
    common = receptor & ligand
    if common:
        raise OverlappingSelection(
            f"chains selected on both sides: {sorted(common)}"
        )
    present = set(structure.chain_ids)
    for chain_id in sorted(receptor | ligand):
        if chain_id not in present:
            raise UnknownChain(chain_id)

    kept = [c for c in structure.chains if c.chain_id in receptor | ligand]
    filtered = StructureModel(entry_id=structure.entry_id, chains=kept)
    return ComplexPair(receptor=receptor, ligand=ligand, structure=filtered)


def structure_to_dict(structure: StructureModel) -> dict:
    """JSON-ready form of a StructureModel (used by the ingest cache)."""
    return {
        "entry_id": structure.entry_id,
        "chains": [
            {
                "chain_id": chain.chain_id,
                "residues": [
                    {
                        "name": res.name,
                        "seq": res.seq,
                        "insertion_code": res.insertion_code,
                        "het": res.het,
                        "atoms": [
                            {
                                "serial": a.serial,
                                "name": a.name,
                                "alt_loc": a.alt_loc,
                                "position": list(a.position),
                                "element": a.element,
                                "het": a.het,
                                "line_no": a.line_no,
                            }
                            for a in res.atoms
                        ],
                    }
                    for res in chain.residues
                ],
            }
            for chain in structure.chains
        ],
    }


def structure_from_dict(data: dict) -> StructureModel:
    chains = []
    for cdata in data["chains"]:
        chain = ChainModel(cdata["chain_id"])
        for rdata in cdata["residues"]:
            res = Residue(
                name=rdata["name"],
                seq=rdata["seq"],
                insertion_code=rdata["insertion_code"],
                het=rdata["het"],
            )
            for adata in rdata["atoms"]:
                res.atoms.append(
                    AtomRecord(
                        serial=adata["serial"],
                        name=adata["name"],
                        alt_loc=adata["alt_loc"],
                        residue_name=res.name,
                        chain_id=chain.chain_id,
                        residue_seq=res.seq,
                        insertion_code=res.insertion_code,
                        position=tuple(adata["position"]),
                        element=adata["element"],
                        het=adata["het"],
                        line_no=adata["line_no"],
                    )
                )
            chain.residues.append(res)
        chains.append(chain)
    return StructureModel(entry_id=data["entry_id"], chains=chains)
