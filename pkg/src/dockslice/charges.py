"""Charged side-chain sites and inter-chain salt bridges.

Positive sites come from LYS/ARG/HIS side-chain nitrogens, negative sites
from ASP/GLU carboxylate oxygens.  A salt bridge is the closest
positive/negative atom pair of a residue pair spanning the receptor/ligand
partition, within a distance cutoff (default 4.0 A between charged heavy
atoms, the usual structural-biology criterion).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DockSliceError
from .pdb import AtomRecord, ComplexPair

POSITIVE = "positive"
NEGATIVE = "negative"

# residue -> (sign, qualifying side-chain atom names)
_NEGATIVE_ATOMS = {
    "ASP": ("OD1", "OD2"),
    "GLU": ("OE1", "OE2"),
}
_POSITIVE_ATOMS = {
    "LYS": ("NZ",),
    "ARG": ("NH1", "NH2", "NE"),
    "HIS": ("ND1", "NE2"),
}

DEFAULT_CUTOFF = 4.0


class NoBridges(DockSliceError):
    """The complex has no inter-chain salt bridge within the cutoff.

    Callers building tutorial content may catch this and proceed with an
    empty charge list.
    """


@dataclass(frozen=True)
class ChargeSite:
    chain_id: str
    residue_seq: int
    residue_name: str
    atom_name: str
    position: tuple[float, float, float]
    sign: str

    @property
    def residue_key(self) -> tuple[str, int]:
        return (self.chain_id, self.residue_seq)


@dataclass(frozen=True)
class SaltBridge:
    positive_site: ChargeSite
    negative_site: ChargeSite
    distance: float


def _distance(a: tuple[float, float, float], b: tuple[float, float, float]) -> float:
    return math.dist(a, b)


def _site_from_atom(atom: AtomRecord, sign: str) -> ChargeSite:
    return ChargeSite(
        chain_id=atom.chain_id,
        residue_seq=atom.residue_seq,
        residue_name=atom.residue_name,
        atom_name=atom.name,
        position=atom.position,
        sign=sign,
    )


def find_charge_sites(
    pair: ComplexPair, include_histidine: bool = True
) -> list[ChargeSite]:
    """All qualifying charged side-chain atoms of the pair.

    HETATM residues never contribute.  Ordered by chain, residue_seq,
    atom_name.  Chain termini (N-term/C-term backbone charges) are not
    counted.
    """
    sites = []
    for chain in pair.structure.chains:
        for res in chain.residues:
            if res.het:
                continue
            if res.name in _NEGATIVE_ATOMS:
                wanted, sign = _NEGATIVE_ATOMS[res.name], NEGATIVE
            elif res.name in _POSITIVE_ATOMS:
                if res.name == "HIS" and not include_histidine:
                    continue
                wanted, sign = _POSITIVE_ATOMS[res.name], POSITIVE
            else:
                continue
            for atom in res.atoms:
                if atom.name in wanted:
                    sites.append(_site_from_atom(atom, sign))
    sites.sort(key=lambda s: (s.chain_id, s.residue_seq, s.atom_name))
    return sites


def find_salt_bridges(
    pair: ComplexPair,
    cutoff: float = DEFAULT_CUTOFF,
    include_histidine: bool = True,
) -> list[SaltBridge]:
    """Inter-partner salt bridges, closest atom pair per residue pair.

    Considers every (positive, negative) site combination whose sites lie
    on opposite sides of the receptor/ligand partition and within `cutoff`,
    keeps only the minimum-distance atom pair for each residue pair, and
    returns the list sorted ascending by distance.  Raises NoBridges when
    the result would be empty.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")

    sites = find_charge_sites(pair, include_histidine=include_histidine)
    positives = [s for s in sites if s.sign == POSITIVE]
    negatives = [s for s in sites if s.sign == NEGATIVE]

    best: dict[tuple, SaltBridge] = {}
    for pos in positives:
        pos_side = pair.side_of(pos.chain_id)
        for neg in negatives:
            if pair.side_of(neg.chain_id) == pos_side:
                continue
            d = _distance(pos.position, neg.position)
            if d > cutoff:
                continue
            key = (pos.residue_key, neg.residue_key)
            cur = best.get(key)
            if cur is None or d < cur.distance:
                best[key] = SaltBridge(positive_site=pos, negative_site=neg, distance=d)

    bridges = sorted(
        best.values(),
        key=lambda b: (b.distance, b.positive_site.residue_key, b.negative_site.residue_key),
    )
    if not bridges:
        raise NoBridges(f"no inter-chain salt bridge within {cutoff} A")
    return bridges


def bridge_report(bridges: list[SaltBridge], fmt: str = "text") -> str:
    """Annotation report listing bridges in sorted order (text or JSON)."""
    if fmt == "json":
        return json.dumps(
            [
                {
                    "positive": {
                        "chain": b.positive_site.chain_id,
                        "residue": b.positive_site.residue_name,
                        "seq": b.positive_site.residue_seq,
                        "atom": b.positive_site.atom_name,
                    },
                    "negative": {
                        "chain": b.negative_site.chain_id,
                        "residue": b.negative_site.residue_name,
                        "seq": b.negative_site.residue_seq,
                        "atom": b.negative_site.atom_name,
                    },
                    "distance": b.distance,
                }
                for b in bridges
            ],
            indent=2,
            sort_keys=True,
        )
    lines = []
    for i, b in enumerate(bridges):
        p, n = b.positive_site, b.negative_site
        lines.append(
            f"{i:3d}  {p.chain_id}/{p.residue_name}{p.residue_seq}:{p.atom_name}"
            f" -- {n.chain_id}/{n.residue_name}{n.residue_seq}:{n.atom_name}"
            f"  {b.distance:.3f} A"
        )
    return "\n".join(lines)
