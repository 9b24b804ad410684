"""Slab splitting and 2D footprint extraction.

Atoms near the interface plane are projected onto the plane frame and
drawn as probe-inflated van der Waals disks onto a signed coverage field
(`max_i(r_i - |x - c_i|)`, positive inside the disk union).  Marching
squares with linear interpolation walks the zero isoline; the largest
closed contour becomes the piece outline after Douglas-Peucker
simplification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import polygon
from .errors import DockSliceError
from .pdb import AtomRecord, ComplexPair, coords_of
from .plane import InterfacePlane

# Bondi radii for the elements that matter here.
VDW_RADII = {"C": 1.70, "N": 1.55, "O": 1.52, "S": 1.80, "P": 1.80, "H": 1.20}
DEFAULT_VDW = 1.70


class DegenerateSplit(DockSliceError):
    """One half of the split contains no atoms."""


class EmptyFootprint(DockSliceError):
    """No atom in the slab, or the contour is an unplayable sliver."""


@dataclass(frozen=True)
class FootprintParams:
    grid_step: float = 0.5
    slab: float = 6.0
    probe: float = 1.4
    simplify_tol: float = 0.25
    min_area: float = 10.0

    def to_dict(self) -> dict:
        return {
            "grid_step": self.grid_step,
            "slab": self.slab,
            "probe": self.probe,
            "simplify_tol": self.simplify_tol,
            "min_area": self.min_area,
        }


@dataclass
class Half:
    side: str  # "receptor" | "ligand"
    atoms: list[AtomRecord] = field(default_factory=list)


def vdw_radius(element: str) -> float:
    return VDW_RADII.get(element.upper(), DEFAULT_VDW)


def split_halves(
    pair: ComplexPair,
    plane: InterfacePlane,
    slab_keep: float = math.inf,
) -> tuple[Half, Half]:
    """Assign atoms to the receptor/ligand halves of the cut.

    With the default infinite `slab_keep` each half simply keeps its own
    chains; a finite value trims atoms farther than `slab_keep` beyond the
    plane (receptor keeps signed distance <= +slab_keep, ligand >=
    -slab_keep).
    """
    halves = []
    for side, sign in (("receptor", 1.0), ("ligand", -1.0)):
        atoms = list(pair.atoms_of(side))
        if atoms and math.isfinite(slab_keep):
            s = plane.signed_distance(coords_of(atoms))
            atoms = [a for a, d in zip(atoms, s) if sign * d <= slab_keep]
        if not atoms:
            raise DegenerateSplit(f"{side} half is empty")
        halves.append(Half(side=side, atoms=atoms))
    return halves[0], halves[1]


# Marching-squares segment table.  Corner bits: a=(i,j) 1, b=(i+1,j) 2,
# c=(i+1,j+1) 4, d=(i,j+1) 8.  Edges: S bottom, E right, N top, W left.
# Segments are directed so the inside (field >= 0) lies on the left,
# which makes loops around filled regions counter-clockwise.
_SEGMENTS = {
    1: [("S", "W")],
    2: [("E", "S")],
    3: [("E", "W")],
    4: [("N", "E")],
    6: [("N", "S")],
    7: [("N", "W")],
    8: [("W", "N")],
    9: [("S", "N")],
    11: [("E", "N")],
    12: [("W", "E")],
    13: [("S", "E")],
    14: [("W", "S")],
}
_SADDLE = {
    5: {True: [("S", "E"), ("N", "W")], False: [("S", "W"), ("N", "E")]},
    10: {True: [("W", "S"), ("E", "N")], False: [("E", "S"), ("W", "N")]},
}


def _edge_key(edge: str, i: int, j: int):
    if edge == "S":
        return ("h", i, j)
    if edge == "N":
        return ("h", i, j + 1)
    if edge == "W":
        return ("v", i, j)
    return ("v", i + 1, j)  # E


def _marching_squares(field_vals: np.ndarray, x0: float, y0: float, step: float):
    """Zero-isoline loops of a node field, as lists of (x, y) vertices."""
    inside = field_vals >= 0.0
    a = inside[:-1, :-1]
    b = inside[1:, :-1]
    c = inside[1:, 1:]
    d = inside[:-1, 1:]
    case = (
        a.astype(np.uint8)
        + (b.astype(np.uint8) << 1)
        + (c.astype(np.uint8) << 2)
        + (d.astype(np.uint8) << 3)
    )
    cells = np.argwhere((case != 0) & (case != 15))

    crossing: dict[tuple, tuple[float, float]] = {}

    def point_on(key) -> tuple[float, float]:
        pt = crossing.get(key)
        if pt is not None:
            return pt
        kind, i, j = key
        f0 = field_vals[i, j]
        f1 = field_vals[i + 1, j] if kind == "h" else field_vals[i, j + 1]
        t = f0 / (f0 - f1)
        if kind == "h":
            pt = (x0 + (i + t) * step, y0 + j * step)
        else:
            pt = (x0 + i * step, y0 + (j + t) * step)
        crossing[key] = pt
        return pt

    segments: dict[tuple, tuple] = {}
    for ci, cj in cells:
        i, j = int(ci), int(cj)
        code = int(case[i, j])
        if code in _SADDLE:
            center = (
                field_vals[i, j]
                + field_vals[i + 1, j]
                + field_vals[i + 1, j + 1]
                + field_vals[i, j + 1]
            ) * 0.25
            segs = _SADDLE[code][bool(center >= 0.0)]
        else:
            segs = _SEGMENTS[code]
        for frm, to in segs:
            segments[_edge_key(frm, i, j)] = _edge_key(to, i, j)

    loops = []
    for start in sorted(segments):
        if start not in segments:
            continue
        points = [point_on(start)]
        cur = segments.pop(start)
        while cur != start:
            points.append(point_on(cur))
            cur = segments.pop(cur)
        if len(points) >= 3:
            loops.append(np.array(points))
    return loops


def coverage_field(
    centers: np.ndarray, radii: np.ndarray, step: float
) -> tuple[np.ndarray, float, float]:
    """Signed coverage field of a disk union sampled on a node grid.

    Returns (field, x0, y0) where field[i, j] is the coverage value at
    node (x0 + i*step, y0 + j*step).  The grid is padded so every border
    node lies strictly outside, which guarantees closed isolines.
    """
    pad = 2.0 * step
    x0 = float(np.min(centers[:, 0] - radii)) - pad
    y0 = float(np.min(centers[:, 1] - radii)) - pad
    x1 = float(np.max(centers[:, 0] + radii)) + pad
    y1 = float(np.max(centers[:, 1] + radii)) + pad
    nx = int(math.ceil((x1 - x0) / step)) + 1
    ny = int(math.ceil((y1 - y0) / step)) + 1

    vals = np.full((nx, ny), -1e9)
    for (cx, cy), r in zip(centers, radii):
        reach = r + 2.0 * step
        i0 = max(0, int(math.floor((cx - reach - x0) / step)))
        i1 = min(nx - 1, int(math.ceil((cx + reach - x0) / step)))
        j0 = max(0, int(math.floor((cy - reach - y0) / step)))
        j1 = min(ny - 1, int(math.ceil((cy + reach - y0) / step)))
        if i0 > i1 or j0 > j1:
            continue
        xs = x0 + np.arange(i0, i1 + 1) * step
        ys = y0 + np.arange(j0, j1 + 1) * step
        dist = np.hypot(xs[:, None] - cx, ys[None, :] - cy)
        window = vals[i0 : i1 + 1, j0 : j1 + 1]
        np.maximum(window, r - dist, out=window)
    return vals, x0, y0


def extract_footprint(
    half: Half,
    plane: InterfacePlane,
    params: FootprintParams = FootprintParams(),
) -> np.ndarray:
    """Simple CCW polygon outlining the half near the interface plane."""
    if not half.atoms:
        raise EmptyFootprint(f"{half.side} half has no atoms")
    pos = coords_of(half.atoms)
    s = plane.signed_distance(pos)
    keep = np.abs(s) <= params.slab
    if not np.any(keep):
        raise EmptyFootprint(f"no {half.side} atom within {params.slab} A of plane")

    atoms = [a for a, k in zip(half.atoms, keep) if k]
    centers = plane.project(pos[keep])
    radii = np.array([vdw_radius(a.element) + params.probe for a in atoms])

    vals, x0, y0 = coverage_field(centers, radii, params.grid_step)
    loops = [l for l in _marching_squares(vals, x0, y0, params.grid_step)
             if polygon.signed_area(l) > 0]
    if not loops:
        raise EmptyFootprint(f"{half.side} slab produced no closed contour")

    outline = max(loops, key=polygon.signed_area)
    outline = polygon.simplify(outline, params.simplify_tol)
    if polygon.area(outline) < params.min_area:
        raise EmptyFootprint(
            f"{half.side} contour area {polygon.area(outline):.1f} A^2 "
            f"below minimum {params.min_area}"
        )
    return outline
