"""Per-axis quartics whose roots are the vertex coordinates.

For one axis, the first four moments ``m1..m4`` of a uniform point fix the
elementary symmetric functions ``e1..e4`` of the four vertex coordinates, so
the coordinates are the roots of ``z^4 - e1 z^3 + e2 z^2 - e3 z + e4``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ComplexRoots

_EPS = np.finfo(float).eps
AMBIGUITY_TOL = 1e-6


class QuarticCoefficients(NamedTuple):
    """Monic quartic ``z^4 - l1 z^3 + l2 z^2 - l3 z + l4``."""

    l1: float
    l2: float
    l3: float
    l4: float

    def poly(self) -> np.ndarray:
        """Coefficients in descending powers, as `numpy.polyval` expects."""
        return np.array([1.0, -self.l1, self.l2, -self.l3, self.l4])

    def __call__(self, z):
        return (((z - self.l1) * z + self.l2) * z - self.l3) * z + self.l4

    def derivative(self, z):
        return ((4.0 * z - 3.0 * self.l1) * z + 2.0 * self.l2) * z - self.l3


@dataclass(frozen=True)
class RootQuadruple:
    roots: tuple[float, float, float, float]
    residual: float
    max_imag: float
    ambiguous: bool = False

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]


def lambdas_from_moments(m1: float, m2: float, m3: float, m4: float) -> QuarticCoefficients:
    """Quartic coefficients from the first four moments of one axis."""
    return QuarticCoefficients(
        4.0 * m1,
        16.0 * m1**2 - 10.0 * m2,
        64.0 * m1**3 + 20.0 * m3 - 80.0 * m1 * m2,
        256.0 * m1**4 - 35.0 * m4 + 160.0 * m1 * m3 + 100.0 * m2**2 - 480.0 * m1**2 * m2,
    )


def _companion(c: QuarticCoefficients) -> np.ndarray:
    mat = np.zeros((4, 4))
    mat[0, :] = [c.l1, -c.l2, c.l3, -c.l4]
    mat[1:, :3] = np.eye(3)
    return mat


def _merge_multiple_roots(eig: np.ndarray, imag_tol: float) -> np.ndarray:
    """Collapse eigenvalue clusters that are really one multiple real root.

    A root of multiplicity m is perturbed by about ``eps**(1/m)`` relative, which
    for m >= 3 exceeds any sensible imaginary tolerance. Only clusters that
    contain a visibly complex member are considered, so distinct real roots are
    never averaged together.
    """
    eig = eig.astype(complex).copy()
    scale = max(1.0, float(np.max(np.abs(eig))))

    def is_complex(z):
        return abs(z.imag) > imag_tol * (1.0 + abs(z.real))

    for m in (4, 3, 2):
        if not any(is_complex(z) for z in eig):
            break
        radius = 16.0 * _EPS ** (1.0 / m) * scale
        best = None
        for idx in itertools.combinations(range(4), m):
            group = eig[list(idx)]
            if not any(is_complex(z) for z in group):
                continue
            centre = group.mean()
            spread = float(np.max(np.abs(group - centre)))
            if spread <= radius and abs(centre.imag) <= imag_tol * (1.0 + abs(centre.real)):
                if best is None or spread < best[0]:
                    best = (spread, idx, centre.real)
        if best is not None:
            _, idx, centre = best
            eig[list(idx)] = centre
    return eig


def _polish(c: QuarticCoefficients, z: float) -> float:
    """One Newton step, kept only if it does not increase ``|p(z)|``."""
    p = c(z)
    dp = c.derivative(z)
    if dp == 0.0 or p == 0.0:
        return z
    z_new = z - p / dp
    if math.isfinite(z_new) and abs(c(z_new)) <= abs(p):
        return z_new
    return z


def solve_quartic_real(c: QuarticCoefficients, imag_tol: float = 1e-6, axis=None) -> RootQuadruple:
    """The four real roots of a monic quartic, sorted ascending.

    Roots come from the eigenvalues of the companion matrix, each refined by a
    single guarded Newton step. Imaginary parts up to ``imag_tol * (1 + |Re|)``
    are discarded; anything larger raises `ComplexRoots`.
    """
    if not imag_tol > 0:
        raise ValueError("imag_tol must be positive")
    c = QuarticCoefficients(*map(float, c))
    if not all(math.isfinite(v) for v in c):
        raise ValueError("quartic coefficients must be finite")

    eig = _merge_multiple_roots(np.linalg.eigvals(_companion(c)), imag_tol)
    imag = np.abs(eig.imag)
    max_imag = float(imag.max())
    limit = imag_tol * (1.0 + np.abs(eig.real))
    if np.any(imag > limit):
        where = "" if axis is None else f" on axis {axis}"
        raise ComplexRoots(
            f"quartic{where} has complex roots (max |Im| = {max_imag:.3g}); "
            "the sample is probably too small or not uniform in a tetrahedron",
            max_imag=max_imag,
            axis=axis,
        )

    roots = sorted(_polish(c, float(z)) for z in eig.real)
    coef_scale = max(1.0, max(abs(v) for v in c))
    residual = max(abs(c(z)) for z in roots) / coef_scale
    spread = roots[-1] - roots[0]
    ambiguous = any(b - a <= AMBIGUITY_TOL * spread for a, b in zip(roots, roots[1:]))
    return RootQuadruple(tuple(roots), residual, max_imag, ambiguous)


def roots_from_moments(m1, m2, m3, m4, imag_tol: float = 1e-6, axis=None) -> RootQuadruple:
    return solve_quartic_real(lambdas_from_moments(m1, m2, m3, m4), imag_tol, axis=axis)
