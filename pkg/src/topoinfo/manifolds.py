"""Synthetic point clouds with known topology, plus rigid and PCA rotations.

Every sampler is a pure function of its arguments and seed (Philox streams,
one per sampler), so repeated calls are bit-identical.  All clouds are 3-D.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _rng
from .cloud import as_point_cloud
from .errors import InvalidArgumentError


@dataclass(frozen=True)
class RotationSpec:
    """Euler rotation about the body-fixed x, then y, then z axes (radians).

    The composite matrix is Rx @ Ry @ Rz, i.e. intrinsic x-y-z order.
    """

    angle_x: float = 0.0
    angle_y: float = 0.0
    angle_z: float = 0.0


@dataclass(frozen=True)
class PcaResult:
    """A cloud re-expressed in its principal axes.

    ``explained_variance_ratio`` is sorted non-increasing and sums to one
    whenever the cloud has any variance at all.
    """

    rotated: np.ndarray
    explained_variance_ratio: np.ndarray


def _require_count(n: int) -> int:
    n = int(n)
    if n < 1:
        raise InvalidArgumentError(f"sample count must be >= 1, got {n}")
    return n


def sample_line(n: int, seed: int = 0) -> np.ndarray:
    """n points (a, a, a) with a ~ Uniform[-1, 1]: a diagonal line segment."""
    n = _require_count(n)
    a = _rng.stream(seed, _rng.LINE).uniform(-1.0, 1.0, size=n)
    return as_point_cloud(np.column_stack([a, a, a]))


def sample_plane(n: int, seed: int = 0) -> np.ndarray:
    """n points (a, b, 0) with independent a, b ~ Uniform[-1, 1]."""
    n = _require_count(n)
    g = _rng.stream(seed, _rng.PLANE)
    ab = g.uniform(-1.0, 1.0, size=(n, 2))
    return as_point_cloud(np.column_stack([ab, np.zeros(n)]))


def sample_sphere(n: int, radius: float = 1.0, seed: int = 0) -> np.ndarray:
    """n points uniform on the sphere of the given radius, centered at 0.

    Directions come from normalized standard normals, which is exact and
    rejection-free.
    """
    n = _require_count(n)
    if radius <= 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius}")
    g = _rng.stream(seed, _rng.SPHERE)
    v = g.standard_normal(size=(n, 3))
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    return as_point_cloud(radius * v / norms)


def sample_ball(n: int, radius: float = 1.0, seed: int = 0) -> np.ndarray:
    """n points uniform in the solid ball: direction times radius * U^(1/3)."""
    n = _require_count(n)
    if radius <= 0:
        raise InvalidArgumentError(f"radius must be positive, got {radius}")
    g = _rng.stream(seed, _rng.BALL)
    v = g.standard_normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    r = radius * np.cbrt(g.uniform(size=(n, 1)))
    return as_point_cloud(v * r)


def sample_torus(
    n: int,
    major_r: float = 1.0,
    minor_r: float = 0.5,
    hollow: bool = True,
    seed: int = 0,
) -> np.ndarray:
    """n points on (hollow) or inside (solid) a torus around the z-axis.

    Hollow clouds are area-uniform on the surface, solid clouds are
    volume-uniform in the tube; both use rejection on the tube angle with
    acceptance proportional to the local Jacobian (R + rho*cos v).
    """
    n = _require_count(n)
    if not (major_r > minor_r > 0):
        raise InvalidArgumentError(
            f"need major_r > minor_r > 0, got major_r={major_r}, minor_r={minor_r}"
        )
    g = _rng.stream(seed, _rng.TORUS)
    u = np.empty(n)
    v = np.empty(n)
    rho = np.empty(n)
    filled = 0
    while filled < n:
        m = max(n - filled, 1024)
        u_c = g.uniform(0.0, 2.0 * np.pi, size=m)
        v_c = g.uniform(0.0, 2.0 * np.pi, size=m)
        rho_c = np.full(m, minor_r) if hollow else minor_r * np.sqrt(g.uniform(size=m))
        accept = g.uniform(size=m) < (major_r + rho_c * np.cos(v_c)) / (major_r + minor_r)
        kept = min(int(accept.sum()), n - filled)
        sel = np.flatnonzero(accept)[:kept]
        u[filled : filled + kept] = u_c[sel]
        v[filled : filled + kept] = v_c[sel]
        rho[filled : filled + kept] = rho_c[sel]
        filled += kept
    ring = major_r + rho * np.cos(v)
    pts = np.column_stack([ring * np.cos(u), ring * np.sin(u), rho * np.sin(v)])
    return as_point_cloud(pts)


def sample_torus_knot(
    n: int,
    p: int = 2,
    q: int = 3,
    seed: int = 0,
    *,
    ring_radius: float = 2.0,
    z_scale: float = 1.0,
) -> np.ndarray:
    """n points on the (p, q) torus knot, angle-uniform along the parameter.

    The default curve is phi -> ((2+cos q*phi) cos p*phi,
    (2+cos q*phi) sin p*phi, sin q*phi); (2, 3) is the trefoil.
    ``ring_radius`` and ``z_scale`` reshape the carrier tube (the curve then
    lies on (sqrt(x^2+y^2) - ring_radius)^2 + (z/z_scale)^2 = 1) without
    changing the knot type.
    """
    n = _require_count(n)
    p, q = int(p), int(q)
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise InvalidArgumentError(f"(p, q) must be coprime positive integers, got ({p}, {q})")
    if ring_radius <= 1.0 or z_scale <= 0:
        raise InvalidArgumentError("need ring_radius > 1 and z_scale > 0")
    phi = _rng.stream(seed, _rng.TORUS_KNOT).uniform(0.0, 2.0 * np.pi, size=n)
    ring = ring_radius + np.cos(q * phi)
    pts = np.column_stack(
        [ring * np.cos(p * phi), ring * np.sin(p * phi), z_scale * np.sin(q * phi)]
    )
    return as_point_cloud(pts)


def rotation_matrix(spec: RotationSpec) -> np.ndarray:
    """3x3 matrix for the intrinsic x-then-y-then-z rotation."""
    cx, sx = np.cos(spec.angle_x), np.sin(spec.angle_x)
    cy, sy = np.cos(spec.angle_y), np.sin(spec.angle_y)
    cz, sz = np.cos(spec.angle_z), np.sin(spec.angle_z)
    rx = np.array([[1, 0, 0], [0, cx, -sx], [0, sx, cx]])
    ry = np.array([[cy, 0, sy], [0, 1, 0], [-sy, 0, cy]])
    rz = np.array([[cz, -sz, 0], [sz, cz, 0], [0, 0, 1]])
    return rx @ ry @ rz


def rotate_euler(cloud, spec: RotationSpec) -> np.ndarray:
    """Rigidly rotate a 3-D cloud; pairwise distances are preserved."""
    pts = as_point_cloud(cloud)
    if pts.shape[1] != 3:
        raise InvalidArgumentError(f"rotation requires 3 columns, got {pts.shape[1]}")
    for name in ("angle_x", "angle_y", "angle_z"):
        if not np.isfinite(getattr(spec, name)):
            raise InvalidArgumentError(f"{name} must be finite")
    return as_point_cloud(pts @ rotation_matrix(spec).T)


def pca_rotate(cloud) -> PcaResult:
    """Center a cloud and re-express it in its principal axes.

    Columns of the result are ordered by decreasing eigenvalue of the sample
    covariance; each eigenvector's sign is fixed so its largest-magnitude
    loading is positive, making the rotation deterministic.
    """
    pts = as_point_cloud(cloud)
    n = pts.shape[0]
    if n < 2:
        raise InvalidArgumentError(f"PCA requires at least 2 samples, got {n}")
    centered = pts - pts.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    eigvecs = eigvecs[:, order]
    for j in range(eigvecs.shape[1]):
        lead = np.argmax(np.abs(eigvecs[:, j]))
        if eigvecs[lead, j] < 0:
            eigvecs[:, j] = -eigvecs[:, j]
    total = eigvals.sum()
    ratios = eigvals / total if total > 0 else np.zeros_like(eigvals)
    return PcaResult(
        rotated=as_point_cloud(centered @ eigvecs),
        explained_variance_ratio=ratios,
    )
