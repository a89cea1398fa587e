"""Small exact-size geometric primitives for a single tetrahedron.

Everything here is plain double precision. The orientation determinant is the
4x4 determinant of the vertex rows with an appended column of ones; its sign
encodes orientation and ``|det| / 6`` is the volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateTetrahedron

DEGENERACY_EPS = 1e-12


class Point3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class Barycentric4:
    """Convex weights ``(a, s, t, u)`` on vertices A1..A4."""

    a: float
    s: float
    t: float
    u: float

    def __post_init__(self):
        weights = (self.a, self.s, self.t, self.u)
        if min(weights) < -1e-12:
            raise ValueError(f"negative barycentric weight in {weights}")
        if abs(math.fsum(weights) - 1.0) > 1e-12:
            raise ValueError(f"barycentric weights {weights} do not sum to 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.s, self.t, self.u)


@dataclass(frozen=True)
class Tetrahedron:
    """Ordered vertices A1, A2, A3, A4."""

    vertices: tuple[Point3, Point3, Point3, Point3]

    def __post_init__(self):
        if len(self.vertices) != 4:
            raise ValueError("a tetrahedron needs exactly four vertices")
        verts = tuple(Point3(*map(float, v)) for v in self.vertices)
        if not all(math.isfinite(c) for v in verts for c in v):
            raise ValueError("tetrahedron coordinates must be finite")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_array(cls, arr) -> "Tetrahedron":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (4, 3):
            raise ValueError(f"expected a (4, 3) array of vertices, got {arr.shape}")
        return cls(tuple(Point3(*row) for row in arr.tolist()))

    def to_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    def __getitem__(self, i: int) -> Point3:
        return self.vertices[i]

    def __iter__(self):
        return iter(self.vertices)

    def bbox_diagonal(self) -> float:
        arr = self.to_array()
        return float(np.linalg.norm(arr.max(axis=0) - arr.min(axis=0)))

    def is_degenerate(self, eps: float = DEGENERACY_EPS) -> bool:
        """True unless ``|det| > eps * L**3`` with ``L`` the bounding-box diagonal."""
        scale = self.bbox_diagonal()
        return not abs(orientation_determinant(self)) > eps * scale**3

    def permuted(self, order: Sequence[int]) -> "Tetrahedron":
        return Tetrahedron(tuple(self.vertices[i] for i in order))


def _det_rows(p1, p2, p3, p4) -> float:
    # det [[p1,1],[p2,1],[p3,1],[p4,1]] = -det[p2-p1; p3-p1; p4-p1]
    e1 = (p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2])
    e2 = (p3[0] - p1[0], p3[1] - p1[1], p3[2] - p1[2])
    e3 = (p4[0] - p1[0], p4[1] - p1[1], p4[2] - p1[2])
    cx = e2[1] * e3[2] - e2[2] * e3[1]
    cy = e2[2] * e3[0] - e2[0] * e3[2]
    cz = e2[0] * e3[1] - e2[1] * e3[0]
    return -(e1[0] * cx + e1[1] * cy + e1[2] * cz)


def orientation_determinant(tet: Tetrahedron) -> float:
    """Signed determinant of the vertex rows augmented with a unit column."""
    return float(_det_rows(*tet.vertices))


def volume(tet: Tetrahedron) -> float:
    return abs(orientation_determinant(tet)) / 6.0


def _require_nondegenerate(tet: Tetrahedron) -> float:
    delta = orientation_determinant(tet)
    if tet.is_degenerate():
        raise DegenerateTetrahedron(
            f"degenerate tetrahedron (orientation determinant {delta!r})"
        )
    return delta


def _barycentric_rows(tet: Tetrahedron, points) -> np.ndarray:
    _require_nondegenerate(tet)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    # Cramer's rule on [p, 1] = lambda @ [[A_i, 1]]: the same ratios, one solve
    inv = np.linalg.inv(np.c_[tet.to_array(), np.ones(4)])
    return inv[:3].T @ pts.T + inv[3][:, None]


def barycentric_coordinates(tet: Tetrahedron, points) -> np.ndarray:
    """Ratios ``delta_i / delta`` for every point, shape (n, 4).

    ``delta_i`` is the orientation determinant with vertex ``i`` replaced by the
    point, so the ratios are the barycentric coordinates of the point.
    """
    return _barycentric_rows(tet, points).T


def contains_points(tet: Tetrahedron, points, slack: float = 0.0) -> np.ndarray:
    """Boolean mask: every ``delta_i / delta >= -slack``."""
    if slack < 0:
        raise ValueError("slack must be non-negative")
    b = _barycentric_rows(tet, points)
    return np.minimum(np.minimum(b[0], b[1]), np.minimum(b[2], b[3])) >= -slack


def contains_point(tet: Tetrahedron, p, slack: float = 0.0) -> bool:
    """Five-determinant containment test for a single point.

    The point is inside when the four replaced-vertex determinants share the
    sign of the full determinant; ``slack`` admits relative violations of that
    size, so points on the boundary count as inside for any ``slack >= 0``.
    """
    if slack < 0:
        raise ValueError("slack must be non-negative")
    delta = _require_nondegenerate(tet)
    v = tet.vertices
    p = tuple(float(c) for c in p)
    for i in range(4):
        rows = list(v)
        rows[i] = p
        if _det_rows(*rows) / delta < -slack:
            return False
    return True


def barycentric_to_cartesian(tet: Tetrahedron, b: Barycentric4) -> Point3:
    a, s, t, u = b.as_tuple()
    A1, A2, A3, A4 = tet.vertices
    return Point3(
        a * A1.x + s * A2.x + t * A3.x + u * A4.x,
        a * A1.y + s * A2.y + t * A3.y + u * A4.y,
        a * A1.z + s * A2.z + t * A3.z + u * A4.z,
    )


def barycentric_to_cartesian_batch(tet: Tetrahedron, weights) -> np.ndarray:
    """Rows of ``(a, s, t, u)`` to Cartesian points.

    Uses the same operation order as `barycentric_to_cartesian`, so the two
    agree bit for bit.
    """
    w = np.asarray(weights, dtype=float)
    v = tet.to_array()
    return (
        w[:, 0:1] * v[0] + w[:, 1:2] * v[1] + w[:, 2:3] * v[2] + w[:, 3:4] * v[3]
    )
