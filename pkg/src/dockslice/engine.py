"""Pose scoring and candidate dynamics.

The score is a percentage of the perfect dock: each charge contributes
max(0, 1 - d/d_tol) where d is its distance to the spot the canonical
pose would give it, and the percentage is 100 times the mean
contribution.  Decoys always score 0.  Charge-free tutorial pieces fall
back to a centroid/orientation proxy.  The per-charge linear falloff is
this artifact's standardization; all tunables live in EngineParams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import polygon
from .errors import DockSliceError
from .pieces import Pose2D, SlicePiece, wrap_angle


class InvalidTimestep(DockSliceError):
    pass


@dataclass(frozen=True)
class EngineParams:
    d_tol: float = 5.0                 # A; charge distance at which contribution hits 0
    snap_threshold: float = 95.0       # percent, inclusive
    weak_threshold: float = 40.0       # percent; below this a true partner is "weak"
    k_rep: float = 2.0                 # A/(s*A^2) impulse per overlap area
    area_cap: float = 100.0            # A^2 overlap cap for the impulse
    snap_min_overlap: float = 0.0      # A^2; snap needs overlap strictly above this
    gravity: float = 50.0              # A/s^2, downward
    damping: float = 1.5               # 1/s velocity decay
    shake_amplitude: float = 2.0       # A
    shake_omega: float = 4.0           # rad/s
    dt_max: float = 0.1                # s
    play_area: tuple[float, float, float, float] = (-80.0, -60.0, 80.0, 60.0)


DEFAULT_PARAMS = EngineParams()


@dataclass(frozen=True)
class DockScore:
    percent: float
    per_charge: list[tuple[int, float, float]]  # (bridge_index, distance, contribution)
    overlap_area: float


@dataclass(frozen=True)
class DynamicsState:
    pose: Pose2D
    velocity: tuple[float, float] = (0.0, 0.0)
    angular_velocity: float = 0.0
    shaking: bool = False
    gravity: bool = False
    time: float = 0.0


def is_true_partner(receptor: SlicePiece, candidate: SlicePiece) -> bool:
    """Decoy detection is by provenance, not geometry."""
    return (
        candidate.source_entry == receptor.source_entry
        and candidate.side != receptor.side
    )


def score_pose(
    receptor: SlicePiece,
    candidate: SlicePiece,
    pose: Pose2D,
    params: EngineParams = DEFAULT_PARAMS,
) -> DockScore:
    overlap = polygon.overlap_area(receptor.outline, pose.apply(candidate.outline))

    if not is_true_partner(receptor, candidate):
        return DockScore(percent=0.0, per_charge=[], overlap_area=overlap)

    canonical = candidate.canonical_pose
    if candidate.charges:
        points = candidate.charge_points()
        targets = canonical.apply(points)
        actual = pose.apply(points)
        dists = np.linalg.norm(actual - targets, axis=1)
        contribs = np.maximum(0.0, 1.0 - dists / params.d_tol)
        per_charge = [
            (c.bridge_index, float(d), float(k))
            for c, d, k in zip(candidate.charges, dists, contribs)
        ]
        percent = 100.0 * float(np.mean(contribs))
        return DockScore(percent=percent, per_charge=per_charge, overlap_area=overlap)

    # Tutorial pieces carry no charges; use centroid error with the
    # orientation error folded in as an effective displacement.
    c_local = candidate.centroid()
    centroid_err = float(np.linalg.norm(pose.apply(c_local) - canonical.apply(c_local)))
    theta_err = abs(wrap_angle(pose.theta - canonical.theta))
    effective = centroid_err + theta_err * candidate.circumradius()
    percent = 100.0 * max(0.0, 1.0 - effective / params.d_tol)
    return DockScore(percent=percent, per_charge=[], overlap_area=overlap)


def check_snap(score: DockScore, params: EngineParams = DEFAULT_PARAMS) -> bool:
    """Snap when the score reaches the threshold with the pieces in contact."""
    return (
        score.percent >= params.snap_threshold
        and score.overlap_area > params.snap_min_overlap
    )


def repulsion_impulse(
    receptor: SlicePiece,
    candidate: SlicePiece,
    pose: Pose2D,
    is_true: bool,
    params: EngineParams = DEFAULT_PARAMS,
    score: DockScore | None = None,
) -> tuple[float, float]:
    """Velocity impulse pushing an overlapping wrong/weak match away.

    Zero when the outlines do not overlap.  Decoys are pushed whenever
    they overlap; the true partner only while its score is weak.
    """
    if score is None:
        score = score_pose(receptor, candidate, pose, params)
    if score.overlap_area <= 0.0:
        return (0.0, 0.0)
    if is_true and score.percent >= params.weak_threshold:
        return (0.0, 0.0)

    rec_c = receptor.centroid()
    cand_c = pose.apply(candidate.centroid())[0]
    direction = cand_c - rec_c
    norm = float(np.linalg.norm(direction))
    if norm < 1e-9:
        direction = np.array([1.0, 0.0])
    else:
        direction = direction / norm
    magnitude = params.k_rep * min(score.overlap_area, params.area_cap)
    return (float(magnitude * direction[0]), float(magnitude * direction[1]))


def step_dynamics(
    state: DynamicsState,
    dt: float,
    params: EngineParams = DEFAULT_PARAMS,
) -> DynamicsState:
    """Semi-implicit Euler step with optional gravity, shake and damping.

    Order: gravity accelerates velocity, the shake offset moves the piece
    laterally, position integrates the new velocity, then damping decays
    it.  The pose is clamped to the play-area rectangle (velocity along a
    clamped axis is zeroed).
    """
    if not (0.0 < dt <= params.dt_max):
        raise InvalidTimestep(f"dt must be in (0, {params.dt_max}], got {dt}")

    vx, vy = state.velocity
    if state.gravity:
        vy -= params.gravity * dt

    t_next = state.time + dt
    dx_shake = 0.0
    if state.shaking:
        dx_shake = params.shake_amplitude * (
            math.sin(params.shake_omega * t_next) - math.sin(params.shake_omega * state.time)
        )

    tx = state.pose.tx + vx * dt + dx_shake
    ty = state.pose.ty + vy * dt
    theta = state.pose.theta + state.angular_velocity * dt

    decay = max(0.0, 1.0 - params.damping * dt)
    vx *= decay
    vy *= decay
    omega = state.angular_velocity * decay

    xmin, ymin, xmax, ymax = params.play_area
    if tx < xmin:
        tx, vx = xmin, 0.0
    elif tx > xmax:
        tx, vx = xmax, 0.0
    if ty < ymin:
        ty, vy = ymin, 0.0
    elif ty > ymax:
        ty, vy = ymax, 0.0

    return replace(
        state,
        pose=Pose2D(tx, ty, theta),
        velocity=(vx, vy),
        angular_velocity=omega,
        time=t_next,
    )


def clamp_pose(pose: Pose2D, params: EngineParams = DEFAULT_PARAMS) -> Pose2D:
    xmin, ymin, xmax, ymax = params.play_area
    return Pose2D(
        min(max(pose.tx, xmin), xmax),
        min(max(pose.ty, ymin), ymax),
        pose.theta,
    )
