"""Unital norm evaluation by line integration from the identity element.

For a normalized uncurling metric L the field s -> L s^{-1} is a gradient of
||1||^2 * log u, so u is recovered by integrating the field along any path
from the identity that stays inside the units:

    u(s) = exp( (1 / ||1||^2) * integral of (L s(t)^{-1}) . s'(t) dt ).

Evaluation is floating point; membership of L in the normalized family is
checked exactly before an evaluator is built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    NONUNIT_THRESHOLD,
    Algebra,
    is_unit_point,
    numeric_inverse,
    numeric_inverse_batch,
    rep_at,
    unit_norm_squared,
)
from .errors import NonUnitError, NotNormalizedError, PathThroughNonUnitError
from .quadrature import adaptive_integral
from .uncurl import SymMetric, is_normalized_member


@dataclass(frozen=True)
class QuadConfig:
    order: int = 16
    tolerance: float = 1e-10
    max_depth: int = 20


DEFAULT_QUAD = QuadConfig()


@dataclass(frozen=True)
class PathSpec:
    """Polyline of waypoints; evaluation requires it to start at the identity."""

    waypoints: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise ValueError("a path needs at least two waypoints")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if tuple(a) == tuple(b):
                raise ValueError("consecutive waypoints must be distinct")

    @classmethod
    def through(cls, *points) -> "PathSpec":
        return cls(tuple(tuple(float(x) for x in p) for p in points))


class NormEvaluator:
    """Evaluates one unital norm, fixed by an exactly verified metric."""

    def __init__(
        self,
        algebra: Algebra,
        metric: SymMetric,
        config: QuadConfig = DEFAULT_QUAD,
        threshold: float = NONUNIT_THRESHOLD,
    ):
        self.algebra = algebra
        self.metric = metric
        self.config = config
        self.threshold = threshold
        self.unit_norm_squared = unit_norm_squared(algebra)
        self._lf = metric.to_float()
        self._unit = np.array([float(x) for x in algebra.unit])

    # -- core integration ---------------------------------------------------

    def _segment_integral(self, start: np.ndarray, end: np.ndarray) -> float:
        delta = end - start

        def integrand(ts: np.ndarray) -> np.ndarray:
            pts = start[None, :] + ts[:, None] * delta[None, :]
            try:
                invs = numeric_inverse_batch(self.algebra, pts, self.threshold)
            except NonUnitError as exc:
                raise PathThroughNonUnitError(str(exc)) from exc
            return (invs @ self._lf) @ delta

        return adaptive_integral(
            integrand,
            order=self.config.order,
            tolerance=self.config.tolerance,
            max_depth=self.config.max_depth,
        )

    def log_eval(self, s, path: PathSpec | None = None) -> float:
        target = np.asarray(s, dtype=float)
        if path is None:
            if np.array_equal(target, self._unit):
                return 0.0
            points = [self._unit, target]
        else:
            points = [np.asarray(p, dtype=float) for p in path.waypoints]
            if not np.allclose(points[0], self._unit, atol=1e-12):
                raise ValueError("path must start at the identity element")
            if not np.allclose(points[-1], target, atol=1e-12):
                raise ValueError("path must end at the evaluation point")
        for p in points:
            if not is_unit_point(self.algebra, p, self.threshold):
                raise PathThroughNonUnitError(
                    f"{self.algebra.name}: waypoint {p.tolist()} is not a unit"
                )
        total = 0.0
        for a, b in zip(points, points[1:]):
            total += self._segment_integral(a, b)
        return total / self.unit_norm_squared

    def eval(self, s, path: PathSpec | None = None) -> float:
        return float(np.exp(self.log_eval(s, path)))

    # -- derived quantities ---------------------------------------------------

    def gradient(self, s, step: float = 1e-5) -> np.ndarray:
        """Central finite-difference gradient of the norm."""
        s = np.asarray(s, dtype=float)
        n = s.size
        out = np.empty(n)
        for i in range(n):
            e = np.zeros(n)
            e[i] = step
            out[i] = (self.eval(s + e) - self.eval(s - e)) / (2 * step)
        return out


def make_evaluator(
    algebra: Algebra,
    metric: SymMetric,
    config: QuadConfig = DEFAULT_QUAD,
    threshold: float = NONUNIT_THRESHOLD,
) -> NormEvaluator:
    """Build an evaluator after exact membership verification of the metric."""
    if not is_normalized_member(algebra, metric):
        raise NotNormalizedError(
            f"{algebra.name}: metric is not a normalized uncurling metric"
        )
    return NormEvaluator(algebra, metric, config, threshold)


# -- property checks ----------------------------------------------------------


def check_homogeneity(ev: NormEvaluator, s, alpha: float) -> float:
    """|u(alpha s) - alpha u(s)| for alpha > 0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    s = np.asarray(s, dtype=float)
    return abs(ev.eval(alpha * s) - alpha * ev.eval(s))


def check_inversion(ev: NormEvaluator, s) -> float:
    """|u(s) u(s^{-1}) - 1|."""
    s = np.asarray(s, dtype=float)
    s_inv = numeric_inverse(ev.algebra, s, ev.threshold)
    return abs(ev.eval(s) * ev.eval(s_inv) - 1.0)


@dataclass(frozen=True)
class GradientCheck:
    field_residual: float
    scalar_product_residual: float


def check_gradient(ev: NormEvaluator, s, step: float = 1e-5) -> GradientCheck:
    """Residuals of the gradient identity and of the scalar-product identity.

    field: || L s^{-1} - ||1||^2 grad u / u ||_inf
    scalar product: || L s - ||1||^2 u(s) grad u(s^{-1}) ||_inf
    """
    s = np.asarray(s, dtype=float)
    u = ev.eval(s)
    grad = ev.gradient(s, step)
    s_inv = numeric_inverse(ev.algebra, s, ev.threshold)
    field = ev._lf @ s_inv - ev.unit_norm_squared * grad / u
    grad_at_inv = ev.gradient(s_inv, step)
    scalar = ev._lf @ s - ev.unit_norm_squared * u * grad_at_inv
    return GradientCheck(
        field_residual=float(np.max(np.abs(field))),
        scalar_product_residual=float(np.max(np.abs(scalar))),
    )


def recover_inverse(ev: NormEvaluator, s, step: float = 1e-5) -> np.ndarray:
    """Pseudoinverse recovery of s^{-1} from the gradient identity.

    Returns L^+ (||1||^2 grad u / u); this matches the true inverse on the
    component orthogonal to the kernel of L.
    """
    s = np.asarray(s, dtype=float)
    u = ev.eval(s)
    grad = ev.gradient(s, step)
    return np.linalg.pinv(ev._lf) @ (ev.unit_norm_squared * grad / u)


def kernel_orthogonal_projector(ev: NormEvaluator) -> np.ndarray:
    """Projector onto the row space of L (the kernel-orthogonal component)."""
    lf = ev._lf
    return np.linalg.pinv(lf) @ lf


def usual_norm_root(a: Algebra, s) -> float:
    """|det R(s)|^(1/n): the unital norm the canonical metric integrates to."""
    s = np.asarray(s, dtype=float)
    det = float(np.linalg.det(rep_at(a, s)))
    return abs(det) ** (1.0 / a.dim)
