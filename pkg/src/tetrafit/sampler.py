"""Uniform random points inside a tetrahedron by cube folding.

Three uniform variates ``(s, t, u)`` from the unit cube are folded into the
corner simplex ``s + t + u <= 1`` by two measure-preserving cut-and-fold steps,
and the resulting barycentric weights ``(1 - s - t - u, s, t, u)`` are mapped
onto the vertices.

The uniform stream comes from :class:`SeededGenerator`: NumPy's PCG64 bit
generator (PCG-XSL-RR 128/64), with each double formed from one raw 64-bit
output as ``(raw >> 11) * 2**-53``. Both pieces are fixed by construction and
do not depend on NumPy's higher-level ``Generator`` methods, so a seed names
the same point stream on every platform and release.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateTetrahedron, InvalidCount
from .geometry import (
    Barycentric4,
    Point3,
    Tetrahedron,
    barycentric_to_cartesian,
    barycentric_to_cartesian_batch,
)

_TWO_POW_M53 = 2.0**-53


class SeededGenerator:
    """Deterministic uniform [0, 1) stream.

    Single-owner mutable state: do not share one instance between threads.
    Parallel work should use distinct seeds instead.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._bitgen = np.random.PCG64(seed)
        self.draws = 0

    def random(self, size: int | None = None):
        """One double, or an array of ``size`` doubles, uniform on [0, 1)."""
        count = 1 if size is None else int(size)
        raw = self._bitgen.random_raw(count)
        self.draws += count
        values = (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_M53
        if size is None:
            return float(values[0])
        return values

    def __repr__(self):
        return f"SeededGenerator(seed={self.seed}, draws={self.draws})"


def fold_to_barycentric(s: float, t: float, u: float) -> Barycentric4:
    """Fold a cube point into barycentric weights ``(a, s, t, u)``."""
    if s + t > 1.0:
        s, t = 1.0 - s, 1.0 - t
    if s + t + u > 1.0:
        if t + u > 1.0:
            s, t, u = s, 1.0 - u, 1.0 - s - t
        else:
            s, t, u = 1.0 - t - u, t, s + t + u - 1.0
    a = 1.0 - s - t - u
    return Barycentric4(a, s, t, u)


def fold_batch(stu) -> np.ndarray:
    """Vectorised `fold_to_barycentric`; rows of ``(s, t, u)`` to rows of ``(a, s, t, u)``.

    Matches the scalar fold bit for bit.
    """
    stu = np.asarray(stu, dtype=float)
    s, t, u = stu[:, 0].copy(), stu[:, 1].copy(), stu[:, 2].copy()

    m = s + t > 1.0
    s[m], t[m] = 1.0 - s[m], 1.0 - t[m]

    over = s + t + u > 1.0
    high = over & (t + u > 1.0)
    low = over & ~high
    s1, t1, u1 = s[high], 1.0 - u[high], 1.0 - s[high] - t[high]
    s2, t2, u2 = 1.0 - t[low] - u[low], t[low], s[low] + t[low] + u[low] - 1.0
    s[high], t[high], u[high] = s1, t1, u1
    s[low], t[low], u[low] = s2, t2, u2

    a = 1.0 - s - t - u
    return np.column_stack([a, s, t, u])


def _check(tet: Tetrahedron):
    if tet.is_degenerate():
        raise DegenerateTetrahedron("degenerate tetrahedron: cannot sample its interior")


def sample_point(tet: Tetrahedron, gen: SeededGenerator) -> Point3:
    _check(tet)
    s, t, u = gen.random(3)
    return barycentric_to_cartesian(tet, fold_to_barycentric(float(s), float(t), float(u)))


def sample_batch(tet: Tetrahedron, n: int, gen: SeededGenerator) -> np.ndarray:
    """``n`` uniform points as an (n, 3) array.

    Consumes exactly ``3 * n`` draws and reproduces ``n`` consecutive
    `sample_point` calls on the same generator.
    """
    if int(n) != n or n < 1:
        raise InvalidCount(f"sample size must be a positive integer, got {n!r}")
    _check(tet)
    stu = gen.random(3 * int(n)).reshape(-1, 3)
    return barycentric_to_cartesian_batch(tet, fold_batch(stu))


def sample(tet: Tetrahedron, n: int, seed: int) -> np.ndarray:
    """Convenience wrapper: ``n`` points from a fresh generator seeded with ``seed``."""
    return sample_batch(tet, n, SeededGenerator(seed))
