"""Empirical and exact moments of points uniformly distributed in a tetrahedron.

Exact moments come from the Dirichlet(1, 1, 1, 1) law of the barycentric
weights of a uniform point. For one axis with vertex coordinates
``c1..c4``::

    E[X^k] = h_k(c1, c2, c3, c4) / C(k + 3, 3)

where ``h_k`` is the complete homogeneous symmetric polynomial of degree k.
The mixed moment used for vertex matching is::

    120 E[XYZ] = Sa Sb Sc + Sc S(ab) + Sb S(ac) + Sa S(bc) + 2 S(abc)

with ``Sa = sum_r a_r``, ``S(ab) = sum_r a_r b_r`` and so on.

``variant="paper"`` selects the originally published closed forms instead: the
fourth-order axis moment without its ``a_i^2 a_j^2`` terms, and a mixed moment
made of only the first and last terms above, over 60. Both disagree with
sampling (see the test suite); they are kept so that disagreement stays
reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, NamedTuple

import numpy as np

from .errors import EmptySample, TooFewPoints
from .geometry import Point3, Tetrahedron, orientation_determinant

Variant = Literal["corrected", "paper"]


class MomentIndex(NamedTuple):
    i: int
    j: int
    k: int


AXIS_INDICES = (
    MomentIndex(1, 0, 0), MomentIndex(0, 1, 0), MomentIndex(0, 0, 1),
    MomentIndex(2, 0, 0), MomentIndex(0, 2, 0), MomentIndex(0, 0, 2),
    MomentIndex(3, 0, 0), MomentIndex(0, 3, 0), MomentIndex(0, 0, 3),
    MomentIndex(4, 0, 0), MomentIndex(0, 4, 0), MomentIndex(0, 0, 4),
)
MIXED_INDEX = MomentIndex(1, 1, 1)
MOMENT_INDICES = AXIS_INDICES + (MIXED_INDEX,)


def _axis_index(axis: int, order: int) -> MomentIndex:
    exps = [0, 0, 0]
    exps[axis] = order
    return MomentIndex(*exps)


@dataclass(frozen=True)
class MomentSet:
    """The 13 moments that drive estimation, keyed by `MomentIndex`."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = {MomentIndex(*k): float(v) for k, v in self.values.items()}
        missing = set(MOMENT_INDICES) - set(vals)
        if missing:
            raise ValueError(f"missing moments {sorted(missing)}")
        if not all(math.isfinite(v) for v in vals.values()):
            raise ValueError("moments must be finite")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, idx) -> float:
        return self.values[MomentIndex(*idx)]

    def axis(self, axis: int) -> tuple[float, float, float, float]:
        """``(m1, m2, m3, m4)`` for axis 0 (x), 1 (y) or 2 (z)."""
        return tuple(self.values[_axis_index(axis, k)] for k in range(1, 5))

    @property
    def mixed(self) -> float:
        return self.values[MIXED_INDEX]


@dataclass(frozen=True)
class EmpiricalMomentSet(MomentSet):
    n: int = 0

    def __post_init__(self):
        super().__post_init__()
        if self.n < 1:
            raise ValueError("an empirical moment set needs n >= 1")


@dataclass(frozen=True)
class TheoreticalMomentSet(MomentSet):
    variant: str = "corrected"


def _as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        raise EmptySample("empty point sample")
    arr = np.atleast_2d(arr)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"points must have shape (n, 3), got {arr.shape}")
    return arr


def _monomials(arr: np.ndarray, idx) -> np.ndarray:
    i, j, k = idx
    out = np.ones(arr.shape[0])
    if i:
        out = out * arr[:, 0] ** i
    if j:
        out = out * arr[:, 1] ** j
    if k:
        out = out * arr[:, 2] ** k
    return out


def empirical_moment(points, idx) -> float:
    """Sample mean of ``x^i y^j z^k``, summed with `math.fsum` (exactly rounded)."""
    arr = _as_points(points)
    return math.fsum(_monomials(arr, idx).tolist()) / arr.shape[0]


def empirical_moment_set(points) -> EmpiricalMomentSet:
    arr = _as_points(points)
    n = arr.shape[0]
    if n < 4:
        raise TooFewPoints(f"need at least 4 points, got {n}")
    values = {idx: empirical_moment(arr, idx) for idx in MOMENT_INDICES}
    return EmpiricalMomentSet(values=values, n=n)


def complete_homogeneous(coords: Iterable[float], k: int) -> float:
    """``h_k``: sum of every degree-k monomial in ``coords``."""
    coords = tuple(coords)
    return math.fsum(
        math.prod(c) for c in itertools.combinations_with_replacement(coords, k)
    )


def _sum_squared_pairs(coords) -> float:
    return math.fsum(
        (ci * cj) ** 2 for ci, cj in itertools.combinations(coords, 2)
    )


def theoretical_axis_moment(coords, order: int, variant: Variant = "corrected") -> float:
    """Exact ``E[X^order]`` for the axis whose four vertex coordinates are ``coords``.

    ``variant="paper"`` drops the ``a_i^2 a_j^2`` class at order 4; orders 1-3
    are the same in both variants.
    """
    coords = tuple(float(c) for c in coords)
    if len(coords) != 4:
        raise ValueError("need the four vertex coordinates of one axis")
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be 1..4, got {order}")
    h = complete_homogeneous(coords, order)
    if variant == "paper" and order == 4:
        h -= _sum_squared_pairs(coords)
    elif variant not in ("corrected", "paper"):
        raise ValueError(f"unknown variant {variant!r}")
    return h / math.comb(order + 3, 3)


def mixed_moment_from_vertices(verts, variant: Variant = "corrected") -> float:
    """``E[XYZ]`` from a (4, 3) array-like of vertex coordinates."""
    v = np.asarray(verts, dtype=float)
    a, b, c = v[:, 0], v[:, 1], v[:, 2]
    sa, sb, sc = a.sum(), b.sum(), c.sum()
    sabc = float(np.dot(a * b, c))
    if variant == "paper":
        return (sa * sb * sc + 2.0 * sabc) / 60.0
    if variant != "corrected":
        raise ValueError(f"unknown variant {variant!r}")
    sab, sac, sbc = float(np.dot(a, b)), float(np.dot(a, c)), float(np.dot(b, c))
    return (sa * sb * sc + sc * sab + sb * sac + sa * sbc + 2.0 * sabc) / 120.0


def theoretical_mixed_111(tet: Tetrahedron, variant: Variant = "corrected") -> float:
    return mixed_moment_from_vertices(tet.to_array(), variant)


def theoretical_moment_set(tet: Tetrahedron, variant: Variant = "corrected") -> TheoreticalMomentSet:
    v = tet.to_array()
    values = {}
    for axis in range(3):
        for order in range(1, 5):
            values[_axis_index(axis, order)] = theoretical_axis_moment(v[:, axis], order, variant)
    values[MIXED_INDEX] = mixed_moment_from_vertices(v, variant)
    return TheoreticalMomentSet(values=values, variant=variant)


def cube_to_tetra_transform(tet: Tetrahedron, u: float, v: float, w: float) -> Point3:
    """Map the unit cube onto the tetrahedron.

    ``(1,1,1) -> A4``, ``(0,1,1) -> A3``, ``(*,0,1) -> A2``, ``(*,*,0) -> A1``.
    """
    c1 = 1.0 - w
    c2 = (1.0 - v) * w
    c3 = (1.0 - u) * v * w
    c4 = u * v * w
    A1, A2, A3, A4 = tet.vertices
    return Point3(
        c1 * A1.x + c2 * A2.x + c3 * A3.x + c4 * A4.x,
        c1 * A1.y + c2 * A2.y + c3 * A3.y + c4 * A4.y,
        c1 * A1.z + c2 * A2.z + c3 * A3.z + c4 * A4.z,
    )


def transform_jacobian(tet: Tetrahedron, u: float, v: float, w: float) -> float:
    """Jacobian determinant of `cube_to_tetra_transform`: ``v * w**2 * det``."""
    return v * w * w * orientation_determinant(tet)
