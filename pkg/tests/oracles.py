"""Independent reference computations used only by the tests."""

import itertools
import math
from fractions import Fraction

import numpy as np


def dirichlet_moment(verts, i, j, k):
    """E[X^i Y^j Z^k] by brute-force expansion over barycentric Dirichlet(1,1,1,1) moments.

    Exact rational arithmetic when the vertices are integers.
    """
    verts = [[Fraction(c) for c in v] for v in verts]
    axes = [0] * i + [1] * j + [2] * k
    d = len(axes)
    total = Fraction(0)
    for assign in itertools.product(range(4), repeat=d):
        counts = [assign.count(r) for r in range(4)]
        weight = Fraction(6 * math.prod(math.factorial(c) for c in counts), math.factorial(3 + d))
        term = Fraction(1)
        for ax, r in zip(axes, assign):
            term *= verts[r][ax]
        total += weight * term
    return total


def quadrature_moment(tet, i, j, k, nodes=5):
    """E[X^i Y^j Z^k] by Gauss-Legendre quadrature over the unit cube.

    Integrates 6 * v * w**2 * x^i y^j z^k through the cube-to-tetrahedron map
    written out independently here. The integrand is polynomial of degree <= 6
    per variable, so 5 nodes are exact.
    """
    x, wts = np.polynomial.legendre.leggauss(nodes)
    x = 0.5 * (x + 1.0)
    wts = 0.5 * wts
    U, V, W = np.meshgrid(x, x, x, indexing="ij")
    WU, WV, WW = np.meshgrid(wts, wts, wts, indexing="ij")
    A = tet.to_array()
    coef = [1 - W, (1 - V) * W, (1 - U) * V * W, U * V * W]
    P = [sum(coef[r] * A[r, ax] for r in range(4)) for ax in range(3)]
    integrand = 6.0 * V * W**2 * P[0] ** i * P[1] ** j * P[2] ** k
    return float(np.sum(integrand * WU * WV * WW))


def vieta_coefficients(roots):
    """(e1, e2, e3, e4) of four numbers."""
    return tuple(
        math.fsum(math.prod(c) for c in itertools.combinations(roots, m)) for m in range(1, 5)
    )


def fd_jacobian_det(f, u, v, w, h=1e-6):
    cols = []
    for d in range(3):
        e = [0.0, 0.0, 0.0]
        e[d] = h
        plus = np.array(f(u + e[0], v + e[1], w + e[2]))
        minus = np.array(f(u - e[0], v - e[1], w - e[2]))
        cols.append((plus - minus) / (2 * h))
    return float(np.linalg.det(np.column_stack(cols)))
