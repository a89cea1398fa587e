"""Acceptance criteria, one test each, with the stated tolerances and time budgets."""

import math
import time

import numpy as np

from tetrafit.estimator import axis_roots, estimate_from_moments, estimate_vertices
from tetrafit.geometry import Tetrahedron
from tetrafit.harness import match_vertices, standard_error, sweep
from tetrafit.moments import (
    MOMENT_INDICES,
    cube_to_tetra_transform,
    empirical_moment_set,
    theoretical_axis_moment,
    theoretical_moment_set,
    transform_jacobian,
)
from tetrafit.quartic import lambdas_from_moments, roots_from_moments, solve_quartic_real
from tetrafit.sampler import sample

from conftest import random_tetrahedra, separated_tetrahedra
from oracles import fd_jacobian_det
from reference_values import ESTIMATES, ETA, LAMBDAS, ROOTS, SIGMA_EST

AXIS_IDX = {"x": 0, "y": 1, "z": 2}


def _axis_eta(axis):
    a = AXIS_IDX[axis]
    return [ETA[tuple(k if d == a else 0 for d in range(3))] for k in range(1, 5)]


def test_published_lambdas_and_roots(record_criterion):
    start = time.perf_counter()
    lam_err = root_err = 0.0
    for axis in "xyz":
        lam = lambdas_from_moments(*_axis_eta(axis))
        lam_err = max(lam_err, np.abs(np.array(lam) - LAMBDAS[axis]).max())
        roots = solve_quartic_real(lam).roots
        root_err = max(root_err, np.abs(np.array(roots) - ROOTS[axis]).max())
    elapsed = time.perf_counter() - start
    ok = lam_err <= 1e-9 and root_err <= 1e-6 and elapsed < 1.0
    record_criterion(1, "published lambdas and roots", ok,
                     f"max lambda err {lam_err:.2e}, max root err {root_err:.2e}, {elapsed:.3f}s")
    assert ok


def test_published_standard_errors(ref_tet, record_criterion):
    start = time.perf_counter()
    errs = [abs(standard_error(ref_tet, Tetrahedron.from_array(ESTIMATES[n])) - SIGMA_EST[n])
            for n in (1000, 10000)]
    elapsed = time.perf_counter() - start
    ok = max(errs) <= 1e-12 and elapsed < 1.0
    record_criterion(2, "published sigma_est values", ok,
                     f"errors {errs[0]:.1e}, {errs[1]:.1e}, {elapsed:.3f}s")
    assert ok


def test_exact_round_trip(record_criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(2718)
    quad_err = 0.0
    for _ in range(3):  # per axis
        for r in rng.uniform(-10, 10, (1000, 4)):
            m = [theoretical_axis_moment(r, k) for k in range(1, 5)]
            got = np.array(roots_from_moments(*m).roots)
            quad_err = max(quad_err, np.abs(got - np.sort(r)).max() / max(1.0, np.abs(r).max()))

    vert_err = worst_obj = 0.0
    for k, tet in enumerate(random_tetrahedra(100, seed=314)):
        result = estimate_from_moments(theoretical_moment_set(tet), sample(tet, 500, seed=k))
        perm, _ = match_vertices(tet, result.vertices)
        diff = result.vertices.permuted(perm).to_array() - tet.to_array()
        vert_err = max(vert_err, np.abs(diff).max() / max(1.0, np.abs(tet.to_array()).max()))
        worst_obj = max(worst_obj, result.objective)
    elapsed = time.perf_counter() - start
    ok = quad_err <= 1e-8 and vert_err <= 1e-8 and worst_obj < 1e-8 and elapsed < 10.0
    record_criterion(3, "exact moments round trip", ok,
                     f"quadruple err {quad_err:.1e}, vertex err {vert_err:.1e}, "
                     f"max objective {worst_obj:.1e}, {elapsed:.2f}s")
    assert ok


def test_jacobian_against_finite_differences(record_criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    worst = 0.0
    for tet in random_tetrahedra(10, seed=41):
        f = lambda u, v, w, tet=tet: cube_to_tetra_transform(tet, u, v, w)
        for u, v, w in rng.uniform(0.05, 0.95, (1000, 3)):
            exact = transform_jacobian(tet, u, v, w)
            worst = max(worst, abs(fd_jacobian_det(f, u, v, w) - exact) / abs(exact))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 5.0
    record_criterion(4, "transform Jacobian", ok, f"max rel err {worst:.1e}, {elapsed:.2f}s")
    assert ok


def _mean_and_se(vals):
    return float(np.mean(vals)), float(np.std(vals, ddof=1)) / math.sqrt(len(vals))


def test_sampler_moment_consistency(ref_tet, record_criterion):
    start = time.perf_counter()
    theory = theoretical_moment_set(ref_tet)
    pts = sample(ref_tet, 100_000, seed=20240501)
    emp = empirical_moment_set(pts)
    worst_z = 0.0
    for i, j, k in MOMENT_INDICES:
        _, se = _mean_and_se(pts[:, 0] ** i * pts[:, 1] ** j * pts[:, 2] ** k)
        worst_z = max(worst_z, abs(emp[i, j, k] - theory[i, j, k]) / se)

    big = sample(ref_tet, 1_000_000, seed=77)
    mean, se = _mean_and_se(big[:, 0] * big[:, 1] * big[:, 2])
    z_corrected = abs(mean - 33.8667) / se
    z_published = abs(mean - 41.3) / se
    elapsed = time.perf_counter() - start
    ok = worst_z <= 5 and z_corrected <= 3 and z_published > 10 and elapsed < 30.0
    record_criterion(5, "sampler and moment consistency", ok,
                     f"worst |z| {worst_z:.2f}, E[XYZ] {mean:.4f} z vs 33.8667 {z_corrected:.2f}, "
                     f"z vs 41.3 {z_published:.0f}, {elapsed:.1f}s")
    assert ok


def test_sample_size_sweep(ref_tet, record_criterion):
    start = time.perf_counter()
    report = sweep(ref_tet, (1000, 10000, 50000), 20, base_seed=0)
    m1, m2, m3 = report.medians()
    failures = sum(s.failures for s in report.summary())
    elapsed = time.perf_counter() - start
    ok = m1 <= 0.10 and m2 <= 0.06 and m1 > m2 > m3 and elapsed < 300.0
    record_criterion(6, "median sigma_est over sample sizes", ok,
                     f"medians {m1:.4f}, {m2:.4f}, {m3:.4f}; failures {failures}; {elapsed:.1f}s")
    assert ok


def test_equivariance(record_criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(123)
    scale_err = shift_err = 0.0
    for k, tet in enumerate(separated_tetrahedra(20, seed=55)):
        pts = sample(tet, 20_000, seed=900 + k)
        alpha = rng.uniform(0.1, 10.0, 3)
        base = estimate_vertices(pts).vertices.to_array()
        scaled = estimate_vertices(pts * alpha).vertices.to_array()
        scale_err = max(scale_err, np.abs(scaled - base * alpha).max() / np.abs(base * alpha).max())

        beta = rng.uniform(-10.0, 10.0, 3)
        r0 = axis_roots(empirical_moment_set(pts))
        r1 = axis_roots(empirical_moment_set(pts + beta))
        for a in range(3):
            expect = np.array(r0[a].roots) + beta[a]
            shift_err = max(shift_err, np.abs(np.array(r1[a].roots) - expect).max() / np.abs(expect).max())
    elapsed = time.perf_counter() - start
    ok = scale_err <= 1e-8 and shift_err <= 1e-8 and elapsed < 10.0
    record_criterion(7, "scaling and translation equivariance", ok,
                     f"scaling err {scale_err:.1e}, translation err {shift_err:.1e}, {elapsed:.2f}s")
    assert ok
