"""Monte Carlo validation: sample a known tetrahedron, estimate it, score it.

Trial seeds are ``base_seed + k`` where ``k`` counts trials in sweep order
(all trials of the first size, then the next size, ...), so every trial in a
sweep draws an independent stream and any single trial can be rerun alone.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ESTIMATION_ERRORS, InvalidConfig
from .estimator import EstimationConfig, estimate_vertices
from .geometry import Tetrahedron
from .sampler import SeededGenerator, sample_batch

PERMUTATIONS = tuple(itertools.permutations(range(4)))


def _fmt(x: float) -> str:
    return format(x, ".17g")


def match_vertices(truth: Tetrahedron, est: Tetrahedron) -> tuple[tuple[int, ...], float]:
    """Align estimated vertices with true ones.

    Returns ``(perm, cost)`` where ``est[perm[r]]`` pairs with ``truth[r]`` and
    ``cost`` is the summed squared distance. All 24 orders are tried; ties go
    to the lexicographically first permutation.
    """
    t = truth.to_array()
    e = est.to_array()
    best = None
    for perm in PERMUTATIONS:
        cost = float(np.sum((t - e[list(perm)]) ** 2))
        if best is None or cost < best[1]:
            best = (perm, cost)
    return best


def standard_error(truth: Tetrahedron, est_matched: Tetrahedron) -> float:
    """Root of the summed squared coordinate errors over 12."""
    diff = truth.to_array() - est_matched.to_array()
    return math.sqrt(math.fsum((diff**2).ravel().tolist()) / 12.0)


@dataclass
class TrialReport:
    n: int
    seed: int
    sigma_est: float
    vertex_errors: tuple[float, ...] = ()
    elapsed: float = 0.0
    diagnostics: list[str] = field(default_factory=list)
    failed: bool = False
    error: Optional[str] = None

    def comparable(self) -> tuple:
        """Everything except wall-clock time."""
        return (self.n, self.seed, self.sigma_est, self.vertex_errors,
                tuple(self.diagnostics), self.failed, self.error)


def run_trial(truth: Tetrahedron, n: int, seed: int, config: EstimationConfig | None = None) -> TrialReport:
    """Sample, estimate, align and score one trial. Estimation failures are recorded."""
    start = time.perf_counter()
    points = sample_batch(truth, n, SeededGenerator(seed))
    try:
        result = estimate_vertices(points, config)
    except ESTIMATION_ERRORS as exc:
        return TrialReport(
            n=n, seed=seed, sigma_est=math.nan, elapsed=time.perf_counter() - start,
            failed=True, error=f"{type(exc).__name__}: {exc}",
        )
    perm, _ = match_vertices(truth, result.vertices)
    matched = result.vertices.permuted(perm)
    errors = np.linalg.norm(truth.to_array() - matched.to_array(), axis=1)
    return TrialReport(
        n=n,
        seed=seed,
        sigma_est=standard_error(truth, matched),
        vertex_errors=tuple(float(e) for e in errors),
        elapsed=time.perf_counter() - start,
        diagnostics=list(result.diagnostics),
    )


@dataclass
class SizeSummary:
    n: int
    median: float
    mean: float
    min: float
    max: float
    failures: int


@dataclass
class SweepReport:
    trials: list[TrialReport]
    sizes: tuple[int, ...]
    trials_per_size: int
    base_seed: int

    def by_size(self, n: int) -> list[TrialReport]:
        return [t for t in self.trials if t.n == n]

    def summary(self) -> list[SizeSummary]:
        out = []
        for n in self.sizes:
            members = self.by_size(n)
            ok = [t.sigma_est for t in members if not t.failed]
            fails = len(members) - len(ok)
            if ok:
                out.append(SizeSummary(n, statistics.median(ok), math.fsum(ok) / len(ok),
                                       min(ok), max(ok), fails))
            else:
                out.append(SizeSummary(n, math.nan, math.nan, math.nan, math.nan, fails))
        return out

    def medians(self) -> list[float]:
        return [s.median for s in self.summary()]

    def trials_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "trial", "seed", "sigma_est", "failed"])
        counters = {}
        for t in self.trials:
            k = counters.get(t.n, 0)
            counters[t.n] = k + 1
            w.writerow([t.n, k, t.seed, _fmt(t.sigma_est), int(t.failed)])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "median", "mean", "min", "max", "failures"])
        for s in self.summary():
            w.writerow([s.n, _fmt(s.median), _fmt(s.mean), _fmt(s.min), _fmt(s.max), s.failures])
        return buf.getvalue()


def _trial_job(args):
    return run_trial(*args)


def sweep(
    truth: Tetrahedron,
    sizes: Sequence[int],
    trials: int,
    base_seed: int = 0,
    config: EstimationConfig | None = None,
    workers: int = 1,
) -> SweepReport:
    """Run ``trials`` trials at every sample size.

    With ``workers > 1`` trials run in a process pool; results are ordered by
    (size, trial index) either way, so the report does not depend on scheduling.
    """
    sizes = tuple(int(n) for n in sizes)
    if not sizes:
        raise InvalidConfig("sizes must be non-empty")
    if len(set(sizes)) != len(sizes):
        raise InvalidConfig("sample sizes must be distinct")
    if any(n < 4 for n in sizes):
        raise InvalidConfig("every sample size must be >= 4")
    if trials < 1:
        raise InvalidConfig("trials must be >= 1")
    if base_seed < 0 or base_seed + len(sizes) * trials > 2**64:
        raise InvalidConfig("seed range does not fit in 64 bits")

    jobs = [
        (truth, n, base_seed + si * trials + k, config)
        for si, n in enumerate(sizes)
        for k in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_trial_job, jobs))
    else:
        reports = [_trial_job(j) for j in jobs]
    return SweepReport(reports, sizes, trials, base_seed)
