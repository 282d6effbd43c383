"""Numerical checks for the plane-geometry mechanism the algebra pipeline
generalizes: reconstruction of squared length from its gradient field, the
two length-gradient identities, quadratic-form norms, and linearity of
directional derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeFormError
from .quadrature import gauss_legendre_01


def reconstruct_length_squared(waypoints, order: int = 16) -> float:
    """Line-integrate the curl-free field 2(x, y) along a polyline from the origin.

    The endpoint value is x^2 + y^2 regardless of the path.  The integrand is
    polynomial along each segment, so a single Gauss-Legendre pass is exact to
    rounding.
    """
    pts = [np.asarray(p, dtype=float) for p in waypoints]
    if len(pts) < 1 or not np.allclose(pts[0], [0.0, 0.0], atol=1e-15):
        raise ValueError("path must start at the origin")
    nodes, weights = gauss_legendre_01(order)
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        delta = b - a
        samples = a[None, :] + nodes[:, None] * delta[None, :]
        total += float(np.sum(weights * (2.0 * samples @ delta)))
    return total


def length(x: float, y: float) -> float:
    return math.hypot(x, y)


def check_eq1_eq2(s, step: float = 1e-6) -> tuple[float, float]:
    """Residuals of s = l(s) grad l(s) and l(grad l(s)) = 1 at a point.

    The gradient is taken by central differences; the closed-form length
    plays the role of the already-derived fixed point.
    """
    x, y = float(s[0]), float(s[1])
    if x == 0.0 and y == 0.0:
        raise ValueError("the identities are checked away from the origin")
    gx = (length(x + step, y) - length(x - step, y)) / (2 * step)
    gy = (length(x, y + step) - length(x, y - step)) / (2 * step)
    l = length(x, y)
    res1 = max(abs(x - l * gx), abs(y - l * gy))
    res2 = abs(length(gx, gy) - 1.0)
    return res1, res2


@dataclass(frozen=True)
class QuadraticForm:
    """Positive semi-definite symmetric form; holds the matrix of the norm."""

    matrix: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("quadratic form needs a square matrix")
        if not np.allclose(m, m.T, atol=1e-12):
            raise ValueError("quadratic form must be symmetric")
        if float(np.min(np.linalg.eigvalsh(m))) < -1e-12:
            raise NegativeFormError("quadratic form must be positive semi-definite")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)


def quadratic_norm(q: QuadraticForm, s) -> float:
    """sqrt(s' L s); NegativeFormError if the value is negative beyond tolerance."""
    s = np.asarray(s, dtype=float)
    v = float(s @ q.as_array() @ s)
    if v < -1e-12:
        raise NegativeFormError(f"s'Ls = {v} is negative")
    return math.sqrt(max(v, 0.0))


def check_quadratic_gradient(q: QuadraticForm, s, step: float = 1e-6) -> float:
    """Residual of L s = l(s) grad l(s) for the quadratic-form norm."""
    s = np.asarray(s, dtype=float)
    n = s.size
    grad = np.empty(n)
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        grad[i] = (quadratic_norm(q, s + e) - quadratic_norm(q, s - e)) / (2 * step)
    lhs = q.as_array() @ s
    return float(np.max(np.abs(lhs - quadratic_norm(q, s) * grad)))


def directional_derivative_check(
    x: float, y: float, u: float, v: float, eps_seq=(1e-3, 1e-4, 1e-5)
) -> float:
    """Gap between the one-sided difference quotient of the length and the
    linear-functional formula (dl/dx) u + (dl/dy) v.

    The quotient is Richardson-extrapolated over the ratio-10 step sequence,
    which removes the first- and second-order error terms.
    """
    if x == 0.0 and y == 0.0:
        raise ValueError("directional derivatives are checked away from the origin")

    def quotient(eps: float) -> float:
        return (length(x + eps * u, y + eps * v) - length(x, y)) / eps

    d1, d2, d3 = (quotient(e) for e in eps_seq)
    r1a = (10.0 * d2 - d1) / 9.0
    r1b = (10.0 * d3 - d2) / 9.0
    extrapolated = (100.0 * r1b - r1a) / 99.0
    l = length(x, y)
    formula = (x / l) * u + (y / l) * v
    return abs(extrapolated - formula)


def demo_report(seed: int = 0, paths: int = 10, points: int = 100) -> dict:
    """Residual table for the whole plane-geometry demonstration."""
    rng = np.random.default_rng(seed)
    target = np.array([3.0, 4.0])

    straight = reconstruct_length_squared([[0.0, 0.0], target])
    axis_path = reconstruct_length_squared([[0.0, 0.0], [3.0, 0.0], target])
    values = [straight, axis_path]
    for _ in range(paths):
        mids = rng.uniform(-5.0, 5.0, size=(2, 2))
        values.append(reconstruct_length_squared([[0.0, 0.0], mids[0], mids[1], target]))
    reconstruction = {
        "endpoint": [3.0, 4.0],
        "value": straight,
        "max_error": max(abs(v - 25.0) for v in values),
        "max_path_spread": max(values) - min(values),
        "paths": paths + 2,
    }

    worst1 = worst2 = 0.0
    for _ in range(points):
        s = rng.uniform(-2.0, 2.0, 2)
        while math.hypot(*s) < 0.1:
            s = rng.uniform(-2.0, 2.0, 2)
        r1, r2 = check_eq1_eq2(s)
        worst1, worst2 = max(worst1, r1), max(worst2, r2)
    identities = {"points": points, "max_residual_eq1": worst1, "max_residual_eq2": worst2}

    worst_dir = 0.0
    for _ in range(points):
        s = rng.uniform(-2.0, 2.0, 2)
        while math.hypot(*s) < 0.1:
            s = rng.uniform(-2.0, 2.0, 2)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        worst_dir = max(
            worst_dir,
            directional_derivative_check(s[0], s[1], math.cos(theta), math.sin(theta)),
        )
    linearity = {"pairs": points, "max_residual": worst_dir}

    ident = QuadraticForm(((1.0, 0.0), (0.0, 1.0)))
    quad = {
        "identity_norm_at_3_4": quadratic_norm(ident, [3.0, 4.0]),
        "gradient_residual_at_3_4": check_quadratic_gradient(ident, [3.0, 4.0]),
    }

    return {
        "reconstruction": reconstruction,
        "length_identities": identities,
        "directional_linearity": linearity,
        "quadratic_form": quad,
    }
