"""Composite Gauss-Legendre quadrature with dyadic refinement.

The integrand callback is vectorized over parameter values in [0, 1]; it may
raise to veto nodes (the unital-norm evaluator uses this to reject paths
through non-units).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureNotConvergedError


@lru_cache(maxsize=None)
def gauss_legendre_01(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def composite_estimate(fn: Callable[[np.ndarray], np.ndarray], order: int, depth: int) -> float:
    """Gauss-Legendre of given order on 2^depth equal subintervals of [0, 1]."""
    nodes, weights = gauss_legendre_01(order)
    pieces = 2**depth
    width = 1.0 / pieces
    starts = np.arange(pieces) * width
    ts = (starts[:, None] + nodes[None, :] * width).ravel()
    vals = np.asarray(fn(ts), dtype=float)
    return float(np.sum(vals.reshape(pieces, order) * weights[None, :]) * width)


def adaptive_integral(
    fn: Callable[[np.ndarray], np.ndarray],
    order: int = 16,
    tolerance: float = 1e-10,
    max_depth: int = 20,
) -> float:
    """Refine dyadically until two successive composite estimates agree.

    Raises QuadratureNotConvergedError at the depth limit.  Smooth integrands
    on unit-only paths converge within a few levels.
    """
    prev = composite_estimate(fn, order, 0)
    for depth in range(1, max_depth + 1):
        cur = composite_estimate(fn, order, depth)
        if abs(cur - prev) < tolerance:
            return cur
        prev = cur
    raise QuadratureNotConvergedError(
        f"integral did not converge to {tolerance} within depth {max_depth}"
    )
