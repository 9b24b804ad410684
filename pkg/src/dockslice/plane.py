"""Least-squares interface plane between two docking partners.

The plane is fitted to the midpoints of all inter-chain heavy-atom pairs
within a contact cutoff, with salt-bridge midpoints given extra weight so
the cut stays anchored at the main region of contact.  The normal points
from the receptor toward the ligand, and the in-plane axes are derived
from the contact cloud itself so the whole construction is covariant
under rigid motions of the input coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .charges import SaltBridge
from .errors import DockSliceError
from .pdb import ComplexPair, coords_of

CONTACT_CUTOFF = 5.0
BRIDGE_WEIGHT = 3.0


class NoContact(DockSliceError):
    """The two partners have no heavy-atom pair within the contact cutoff."""


@dataclass(frozen=True)
class InterfacePlane:
    """Plane frame: origin, unit normal and right-handed in-plane axes."""

    origin: np.ndarray
    normal: np.ndarray
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("origin", "normal", "u", "v"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if abs(np.linalg.norm(self.normal) - 1.0) > 1e-9:
            raise ValueError("normal must be unit length")
        for a, b in ((self.u, self.v), (self.u, self.normal), (self.v, self.normal)):
            if abs(float(np.dot(a, b))) > 1e-9:
                raise ValueError("plane axes must be orthonormal")

    def signed_distance(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return (pts - self.origin) @ self.normal

    def project(self, points) -> np.ndarray:
        """In-plane (u, v) coordinates of 3D points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        rel = pts - self.origin
        return np.column_stack([rel @ self.u, rel @ self.v])

    def to_dict(self) -> dict:
        return {
            "origin": self.origin.tolist(),
            "normal": self.normal.tolist(),
            "u": self.u.tolist(),
            "v": self.v.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InterfacePlane":
        return cls(
            origin=np.array(data["origin"]),
            normal=np.array(data["normal"]),
            u=np.array(data["u"]),
            v=np.array(data["v"]),
        )


def contact_midpoints(pair: ComplexPair, cutoff: float = CONTACT_CUTOFF) -> np.ndarray:
    """Midpoints of all inter-partner heavy-atom pairs within `cutoff`."""
    rec = [a for a in pair.receptor_atoms() if a.element != "H"]
    lig = [a for a in pair.ligand_atoms() if a.element != "H"]
    if not rec or not lig:
        return np.empty((0, 3))
    rc, lc = coords_of(rec), coords_of(lig)
    pairs = cKDTree(rc).query_ball_tree(cKDTree(lc), r=cutoff)
    mids = [
        0.5 * (rc[i] + lc[j])
        for i, neighbours in enumerate(pairs)
        for j in neighbours
    ]
    return np.array(mids).reshape(-1, 3)


def _weighted_frame(points: np.ndarray, weights: np.ndarray):
    """Weighted centroid and eigen-decomposition of the point covariance."""
    total = weights.sum()
    center = (weights[:, None] * points).sum(axis=0) / total
    rel = points - center
    cov = (weights[:, None] * rel).T @ rel
    eigvals, eigvecs = np.linalg.eigh(cov)  # ascending
    return center, eigvals, eigvecs, rel


def fit_interface_plane(
    pair: ComplexPair,
    bridges: list[SaltBridge] | None = None,
    contact_cutoff: float = CONTACT_CUTOFF,
    bridge_weight: float = BRIDGE_WEIGHT,
) -> InterfacePlane:
    """Fit the plane minimising weighted squared distances to the contacts.

    Contact midpoints carry weight 1; each bridge midpoint is added with
    weight `bridge_weight`.  Raises NoContact when the contact set is
    empty.
    """
    mids = contact_midpoints(pair, contact_cutoff)
    if len(mids) == 0:
        raise NoContact(
            f"no inter-chain atom pair within {contact_cutoff} A")

    weights = [np.ones(len(mids))]
    points = [mids]
    for bridge in bridges or []:
        mid = 0.5 * (
            np.asarray(bridge.positive_site.position)
            + np.asarray(bridge.negative_site.position)
        )
        points.append(mid[None, :])
        weights.append(np.array([bridge_weight]))
    pts = np.vstack(points)
    w = np.concatenate(weights)

    center, _, eigvecs, _ = _weighted_frame(pts, w)
    normal = eigvecs[:, 0]  # smallest-variance direction

    # Orient the normal from receptor toward ligand.
    rec_centroid = coords_of(pair.receptor_atoms()).mean(axis=0)
    lig_centroid = coords_of(pair.ligand_atoms()).mean(axis=0)
    if float(normal @ (lig_centroid - rec_centroid)) < 0:
        normal = -normal

    # In-plane axes from the contact cloud itself (largest in-plane spread),
    # sign fixed by the third moment, so the frame follows any rigid motion
    # of the inputs.
    u = eigvecs[:, 2]
    rel = pts - center
    skew = float(np.sum(w * (rel @ u) ** 3))
    if skew < 0:
        u = -u
    u = u - (u @ normal) * normal
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)

    return InterfacePlane(origin=center, normal=normal, u=u, v=v)


def plane_residual(plane: InterfacePlane, points, weights=None) -> float:
    """Weighted sum of squared point-to-plane distances."""
    d = plane.signed_distance(points)
    w = np.ones(len(d)) if weights is None else np.asarray(weights, dtype=float)
    return float(np.sum(w * d * d))
