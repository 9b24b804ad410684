"""Small 2D polygon helpers shared by the slicer and the dock engine.

Boolean operations (intersection area) and robustness checks are delegated
to shapely; the cheap scalar measures are plain numpy.
"""

from __future__ import annotations

import numpy as np
from shapely.geometry import Point, Polygon


def as_array(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("polygon must be an (N, 2) array")
    return pts


def signed_area(points) -> float:
    """Shoelace area; positive for counter-clockwise orientation."""
    pts = as_array(points)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def area(points) -> float:
    return abs(signed_area(points))


def perimeter(points) -> float:
    pts = as_array(points)
    return float(np.sum(np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)))


def centroid(points) -> np.ndarray:
    """Area-weighted centroid (falls back to vertex mean for zero area)."""
    pts = as_array(points)
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = 0.5 * np.sum(cross)
    if abs(a) < 1e-12:
        return pts.mean(axis=0)
    cx = np.sum((x + xn) * cross) / (6.0 * a)
    cy = np.sum((y + yn) * cross) / (6.0 * a)
    return np.array([cx, cy])


def circumradius(points, center=None) -> float:
    """Largest vertex distance from `center` (default: area centroid)."""
    pts = as_array(points)
    c = centroid(pts) if center is None else np.asarray(center, dtype=float)
    return float(np.max(np.linalg.norm(pts - c, axis=1)))


def ensure_ccw(points) -> np.ndarray:
    pts = as_array(points)
    return pts if signed_area(pts) >= 0 else pts[::-1].copy()


def is_simple(points) -> bool:
    """True for a valid simple polygon with >= 3 vertices and positive area."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        return False
    if not np.all(np.isfinite(pts)):
        return False
    poly = Polygon(pts)
    return poly.is_valid and poly.area > 0


def overlap_area(points_a, points_b) -> float:
    """Intersection area of two polygons (0.0 when disjoint)."""
    a = as_array(points_a)
    b = as_array(points_b)
    # Cheap bounding-box rejection; the engine calls this every tick.
    if (
        a[:, 0].max() < b[:, 0].min() or b[:, 0].max() < a[:, 0].min()
        or a[:, 1].max() < b[:, 1].min() or b[:, 1].max() < a[:, 1].min()
    ):
        return 0.0
    pa = Polygon(a)
    pb = Polygon(b)
    if not pa.is_valid:
        pa = pa.buffer(0)
    if not pb.is_valid:
        pb = pb.buffer(0)
    if pa.is_empty or pb.is_empty:
        return 0.0
    return float(pa.intersection(pb).area)


def distance_to_polygon(point, points) -> float:
    """Distance from a point to the region bounded by the polygon (0 inside)."""
    return float(Point(point).distance(Polygon(as_array(points))))


def simplify(points, tolerance: float, max_area_change: float = 0.02) -> np.ndarray:
    """Douglas-Peucker simplification that preserves polygon validity.

    `tolerance` is the starting (maximum) deviation.  Plain DP inscribes
    convex arcs and can visibly shrink small contours, so the tolerance is
    halved until the enclosed area changes by at most `max_area_change`
    relative.
    """
    pts = ensure_ccw(points)
    if tolerance <= 0 or len(pts) <= 4:
        return pts
    raw_area = area(pts)
    tol = tolerance
    while tol >= 1e-3:
        simplified = Polygon(pts).simplify(tol, preserve_topology=True)
        if not simplified.is_empty and simplified.exterior is not None:
            out = np.asarray(simplified.exterior.coords)[:-1]  # drop closing vertex
            if (
                len(out) >= 3
                and is_simple(out)
                and abs(area(out) - raw_area) <= max_area_change * raw_area
            ):
                return ensure_ccw(out)
        tol *= 0.5
    return pts
