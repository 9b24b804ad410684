"""Puzzle-piece assembly: outlines, charge points and the canonical pose.

The receptor piece lives directly in the interface-plane frame (its
canonical pose is the identity).  The ligand piece is re-centred on its
own footprint centroid; its canonical pose is the rigid transform that
puts it back into the crystallographic docked position, so applying it
reproduces the true relative placement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import polygon
from .charges import SaltBridge
from .footprint import FootprintParams
from .pdb import ComplexPair
from .plane import InterfacePlane

SCHEMA_VERSION = 1


def wrap_angle(theta: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    wrapped = math.fmod(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    elif wrapped > math.pi:
        wrapped -= 2.0 * math.pi
    return wrapped


@dataclass(frozen=True)
class Pose2D:
    """Rigid 2D pose: rotate by theta about the local origin, then translate."""

    tx: float = 0.0
    ty: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not all(map(math.isfinite, (self.tx, self.ty, self.theta))):
            raise ValueError("pose components must be finite")
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    def apply(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        c, s = math.cos(self.theta), math.sin(self.theta)
        rot = np.array([[c, -s], [s, c]])
        return pts @ rot.T + np.array([self.tx, self.ty])

    def compose(self, inner: "Pose2D") -> "Pose2D":
        """Pose equivalent to applying `inner` first, then this pose."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        tx = self.tx + c * inner.tx - s * inner.ty
        ty = self.ty + s * inner.tx + c * inner.ty
        return Pose2D(tx, ty, self.theta + inner.theta)

    def inverse(self) -> "Pose2D":
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Pose2D(-(c * self.tx + s * self.ty), -(-s * self.tx + c * self.ty), -self.theta)

    def translated(self, dx: float, dy: float) -> "Pose2D":
        return Pose2D(self.tx + dx, self.ty + dy, self.theta)

    def rotated(self, dtheta: float) -> "Pose2D":
        return Pose2D(self.tx, self.ty, self.theta + dtheta)

    def to_dict(self) -> dict:
        return {"tx": self.tx, "ty": self.ty, "theta": self.theta}

    @classmethod
    def from_dict(cls, data: dict) -> "Pose2D":
        return cls(data["tx"], data["ty"], data["theta"])


IDENTITY = Pose2D(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Charge2D:
    point: tuple[float, float]
    sign: str  # "positive" | "negative"
    bridge_index: int


@dataclass
class SlicePiece:
    piece_id: str
    source_entry: str
    side: str  # "receptor" | "ligand"
    outline: np.ndarray = field(repr=False)
    charges: list[Charge2D]
    canonical_pose: Pose2D
    display_name: str = ""
    blurb: str = ""
    provenance: dict = field(default_factory=dict, repr=False)

    def charge_points(self) -> np.ndarray:
        return np.array([c.point for c in self.charges], dtype=float).reshape(-1, 2)

    def bridge_indices(self) -> set[int]:
        return {c.bridge_index for c in self.charges}

    def centroid(self) -> np.ndarray:
        return polygon.centroid(self.outline)

    def circumradius(self) -> float:
        return polygon.circumradius(self.outline)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "piece_id": self.piece_id,
            "source_entry": self.source_entry,
            "side": self.side,
            "outline": [[float(x), float(y)] for x, y in self.outline],
            "charges": [
                {
                    "x": float(c.point[0]),
                    "y": float(c.point[1]),
                    "sign": c.sign,
                    "bridge_index": c.bridge_index,
                }
                for c in self.charges
            ],
            "canonical_pose": self.canonical_pose.to_dict(),
            "display_name": self.display_name,
            "blurb": self.blurb,
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SlicePiece":
        return cls(
            piece_id=data["piece_id"],
            source_entry=data["source_entry"],
            side=data["side"],
            outline=np.array(data["outline"], dtype=float),
            charges=[
                Charge2D(
                    point=(c["x"], c["y"]),
                    sign=c["sign"],
                    bridge_index=c["bridge_index"],
                )
                for c in data["charges"]
            ],
            canonical_pose=Pose2D.from_dict(data["canonical_pose"]),
            display_name=data.get("display_name", ""),
            blurb=data.get("blurb", ""),
            provenance=data.get("provenance", {}),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)


def make_piece_pair(
    pair: ComplexPair,
    plane: InterfacePlane,
    bridges: list[SaltBridge],
    footprints: tuple[np.ndarray, np.ndarray],
    display_names: tuple[str, str] = ("", ""),
    blurbs: tuple[str, str] = ("", ""),
    params: FootprintParams = FootprintParams(),
) -> tuple[SlicePiece, SlicePiece]:
    """Build the (receptor, ligand) piece pair from footprints and bridges."""
    rec_outline, lig_outline = footprints
    entry = pair.structure.entry_id

    lig_center = polygon.centroid(lig_outline)
    canonical = Pose2D(float(lig_center[0]), float(lig_center[1]), 0.0)

    rec_charges: list[Charge2D] = []
    lig_charges: list[Charge2D] = []
    for index, bridge in enumerate(bridges):
        for site in (bridge.positive_site, bridge.negative_site):
            uv = plane.project(np.array(site.position))[0]
            side = pair.side_of(site.chain_id)
            if side == "receptor":
                rec_charges.append(Charge2D((float(uv[0]), float(uv[1])), site.sign, index))
            else:
                local = uv - lig_center
                lig_charges.append(Charge2D((float(local[0]), float(local[1])), site.sign, index))

    provenance = {
        "plane": plane.to_dict(),
        "footprint_params": params.to_dict(),
        "n_bridges": len(bridges),
    }

    receptor = SlicePiece(
        piece_id=f"{entry}-receptor",
        source_entry=entry,
        side="receptor",
        outline=polygon.ensure_ccw(rec_outline),
        charges=rec_charges,
        canonical_pose=IDENTITY,
        display_name=display_names[0],
        blurb=blurbs[0],
        provenance=provenance,
    )
    ligand = SlicePiece(
        piece_id=f"{entry}-ligand",
        source_entry=entry,
        side="ligand",
        outline=polygon.ensure_ccw(np.asarray(lig_outline) - lig_center),
        charges=lig_charges,
        canonical_pose=canonical,
        display_name=display_names[1],
        blurb=blurbs[1],
        provenance=provenance,
    )
    return receptor, ligand
