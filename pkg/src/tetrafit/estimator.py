"""Method-of-moments estimate of a tetrahedron from points inside it.

Pipeline: optional per-axis normalisation, 13 empirical moments, one quartic
per axis whose roots are that axis's vertex coordinates, then a search over
the 24 * 24 ways of assembling the roots into four vertices. Candidates are
ranked by how well their exact ``E[XYZ]`` matches the sample and the first one
that contains (almost) every sample point wins.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Literal, NamedTuple, Optional

import numpy as np

from .errors import DegenerateTetrahedron, EmptySample, InvalidConfig, TooFewPoints
from .geometry import Tetrahedron, contains_points
from .moments import MomentSet, empirical_moment_set, mixed_moment_from_vertices
from .quartic import RootQuadruple, roots_from_moments

log = logging.getLogger(__name__)

AXES = "xyz"
SMALL_SAMPLE = 100


class PermutationPair(NamedTuple):
    """Root orderings for the y and z axes (0-based).

    Vertex ``r`` is ``(x[r], y[pi[r]], z[theta[r]])``.
    """

    pi: tuple[int, int, int, int]
    theta: tuple[int, int, int, int]

    def one_based(self) -> tuple[list[int], list[int]]:
        return [i + 1 for i in self.pi], [i + 1 for i in self.theta]


ALL_PAIRS = tuple(
    PermutationPair(pi, theta)
    for pi in itertools.permutations(range(4))
    for theta in itertools.permutations(range(4))
)


@dataclass(frozen=True)
class AxisTransform:
    """Per-axis affine normalisation ``x' = (x - shift) / scale``."""

    shift: tuple[float, float, float] = (0.0, 0.0, 0.0)
    scale: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if len(self.shift) != 3 or len(self.scale) != 3:
            raise ValueError("shift and scale need three components")
        if not all(s > 0 and math.isfinite(s) for s in self.scale):
            raise ValueError("scales must be positive and finite")

    @classmethod
    def fit(cls, points) -> "AxisTransform":
        """Zero mean, unit RMS per axis. Axes with no spread keep scale 1."""
        pts = np.asarray(points, dtype=float)
        shift = tuple(math.fsum(col) / len(col) for col in pts.T.tolist())
        centred = pts - np.array(shift)
        scale = []
        for col in centred.T.tolist():
            rms = math.sqrt(math.fsum(v * v for v in col) / len(col))
            scale.append(rms if rms > 0 and math.isfinite(rms) else 1.0)
        return cls(shift, tuple(scale))


def apply_transform(t: AxisTransform, data):
    """Normalise points, an (n, 3) array, or a `Tetrahedron`."""
    if isinstance(data, Tetrahedron):
        return Tetrahedron.from_array(apply_transform(t, data.to_array()))
    return (np.asarray(data, dtype=float) - np.array(t.shift)) / np.array(t.scale)


def invert_transform(t: AxisTransform, data):
    if isinstance(data, Tetrahedron):
        return Tetrahedron.from_array(invert_transform(t, data.to_array()))
    return np.asarray(data, dtype=float) * np.array(t.scale) + np.array(t.shift)


def assemble_vertices(xroots, yroots, zroots, pair: PermutationPair) -> np.ndarray:
    return np.array(
        [[xroots[r], yroots[pair.pi[r]], zroots[pair.theta[r]]] for r in range(4)],
        dtype=float,
    )


def matching_objective(
    xroots, yroots, zroots, pair: PermutationPair, moments: MomentSet,
    variant: Literal["corrected", "paper"] = "corrected",
) -> float:
    """Mismatch between the assembled vertices' ``E[XYZ]`` and the sample's.

    ``"corrected"`` compares the exact mixed moment of the assembled vertices
    with the empirical one. ``"paper"`` evaluates the published criterion
    ``|64 m100 m010 m001 + 2 sum_r x_r y_r z_r - 60 m111|`` verbatim.
    """
    verts = assemble_vertices(xroots, yroots, zroots, pair)
    if variant == "corrected":
        return abs(mixed_moment_from_vertices(verts) - moments.mixed)
    if variant == "paper":
        triple = math.fsum(float(np.prod(v)) for v in verts)
        return abs(
            64.0 * moments[1, 0, 0] * moments[0, 1, 0] * moments[0, 0, 1]
            + 2.0 * triple
            - 60.0 * moments.mixed
        )
    raise ValueError(f"unknown matching variant {variant!r}")


def containment_fraction(candidate: Tetrahedron, points, slack: float = 1e-9) -> float:
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptySample("no points to test for containment")
    if candidate.is_degenerate():
        raise DegenerateTetrahedron("candidate tetrahedron is degenerate")
    return float(np.count_nonzero(contains_points(candidate, pts, slack))) / len(pts)


def _count_outside(candidate: Tetrahedron, points: np.ndarray, slack: float,
                   limit: int | None, chunk: int = 4096) -> int | None:
    """Points outside ``candidate``; None as soon as the count exceeds ``limit``."""
    outside = 0
    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        outside += len(block) - int(np.count_nonzero(contains_points(candidate, block, slack)))
        if limit is not None and outside > limit:
            return None
    return outside


@dataclass(frozen=True)
class EstimationConfig:
    matching_variant: Literal["corrected", "paper"] = "corrected"
    slack: float = 1e-9
    outlier_fraction: float = 0.005
    normalize: bool = True
    imag_tol: float = 1e-6

    def __post_init__(self):
        if self.matching_variant not in ("corrected", "paper"):
            raise InvalidConfig(f"unknown matching variant {self.matching_variant!r}")
        if not self.slack >= 0:
            raise InvalidConfig("slack must be >= 0")
        if not 0 <= self.outlier_fraction < 1:
            raise InvalidConfig("outlier_fraction must be in [0, 1)")
        if not self.imag_tol > 0:
            raise InvalidConfig("imag_tol must be > 0")

    @classmethod
    def paper_exact(cls) -> "EstimationConfig":
        """Published rule: raw objective, every point inside."""
        return cls(matching_variant="paper", outlier_fraction=0.0)


@dataclass
class EstimationResult:
    vertices: Tetrahedron
    objective: float
    containment_fraction: Optional[float]
    pair: PermutationPair
    matching_variant: str
    diagnostics: list[str] = field(default_factory=list)
    roots: tuple[RootQuadruple, RootQuadruple, RootQuadruple] = ()
    n: int = 0
    config: Optional[EstimationConfig] = None

    def to_dict(self) -> dict:
        pi, theta = self.pair.one_based()
        return {
            "vertices": self.vertices.to_array().tolist(),
            "objective": self.objective,
            "containment_fraction": self.containment_fraction,
            "pair": {"pi": pi, "theta": theta},
            "matching_variant": self.matching_variant,
            "diagnostics": list(self.diagnostics),
            "n": self.n,
            "config": asdict(self.config) if self.config is not None else None,
        }


def axis_roots(moments: MomentSet, imag_tol: float = 1e-6):
    return tuple(
        roots_from_moments(*moments.axis(a), imag_tol=imag_tol, axis=AXES[a])
        for a in range(3)
    )


def estimate_from_moments(
    moments: MomentSet, points=None, config: EstimationConfig | None = None,
) -> EstimationResult:
    """Roots, matching and containment for precomputed moments.

    ``points`` (same frame as the moments) are only used for the containment
    constraint; without them the lowest-objective non-degenerate candidate is
    returned and ``containment_fraction`` is None.
    """
    config = config or EstimationConfig()
    diagnostics = []
    roots = axis_roots(moments, config.imag_tol)
    for axis, rq in zip(AXES, roots):
        if rq.ambiguous:
            diagnostics.append(f"ambiguous_axis:{axis}")

    xr, yr, zr = (rq.roots for rq in roots)
    scored = sorted(
        ((matching_objective(xr, yr, zr, pair, moments, config.matching_variant), i)
         for i, pair in enumerate(ALL_PAIRS)),
    )

    if points is not None:
        points = np.asarray(points, dtype=float)
        if points.size == 0:
            raise EmptySample("no points to test for containment")
        n = len(points)

    need = 1.0 - config.outlier_fraction
    chosen = None
    fallback = None
    for objective, i in scored:
        cand = Tetrahedron.from_array(assemble_vertices(xr, yr, zr, ALL_PAIRS[i]))
        if cand.is_degenerate():
            continue
        if points is None:
            chosen = (objective, i, cand, None)
            break
        # a candidate with more outside points than the current fallback can
        # neither be valid nor replace it, so its scan may stop early
        limit = None if fallback is None else n - round(fallback[3] * n)
        outside = _count_outside(cand, points, config.slack, limit)
        if outside is None:
            continue
        frac = (n - outside) / n
        if frac >= need:
            chosen = (objective, i, cand, frac)
            break
        # first hit wins ties: objective ascending, then pair order
        if fallback is None or frac > fallback[3]:
            fallback = (objective, i, cand, frac)

    if chosen is None:
        if fallback is None:
            raise DegenerateTetrahedron("every candidate tetrahedron is degenerate")
        chosen = fallback
        diagnostics.append("no_fully_valid_candidate")

    objective, i, cand, frac = chosen
    return EstimationResult(
        vertices=cand,
        objective=float(objective),
        containment_fraction=frac,
        pair=ALL_PAIRS[i],
        matching_variant=config.matching_variant,
        diagnostics=diagnostics,
        roots=roots,
        n=getattr(moments, "n", 0),
        config=config,
    )


def estimate_vertices(points, config: EstimationConfig | None = None) -> EstimationResult:
    """Estimate the four vertices of the tetrahedron the points were drawn from."""
    config = config or EstimationConfig()
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptySample("empty point sample")
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
    n = len(pts)
    if n < 4:
        raise TooFewPoints(f"need at least 4 points, got {n}")

    diagnostics = []
    if n < SMALL_SAMPLE:
        log.warning("only %d points; estimates will be unreliable", n)
        diagnostics.append("small_sample")

    transform = AxisTransform()
    if config.normalize:
        transform = AxisTransform.fit(pts)
        pts = apply_transform(transform, pts)
        diagnostics.append("normalization_applied")

    result = estimate_from_moments(empirical_moment_set(pts), pts, config)
    result.vertices = invert_transform(transform, result.vertices)
    result.diagnostics = diagnostics + result.diagnostics
    result.n = n
    return result
