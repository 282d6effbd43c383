"""Curl and normalization constraints on symmetric metrics.

A symmetric matrix L "uncurls" an algebra when the vector field
s -> L s^{-1} is curl-free on the units.  With the symbolic inverse written
as P(s)/D(s), each mixed-partial condition clears denominators into an exact
polynomial identity that is linear in the n(n+1)/2 unknown entries of L, so
the whole space of such metrics is the nullspace of one rational matrix.
The normalization constraint s'L s^{-1} = ||1||^2 is handled the same way
and cuts out an affine family inside that space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import (
    Algebra,
    is_unit_point,
    numeric_inverse,
    symbolic_inverse,
    trace_form,
    unit_norm_squared,
)
from .errors import NonUnitError
from .linalg import affine_solve, mat_vec, nullspace, signature
from .polys import MultiPoly, grlex_key

F0 = Fraction(0)


def upper_indices(n: int) -> list[tuple[int, int]]:
    """Unknown order for the upper triangle: (0,0), (0,1), ..., (n-1,n-1)."""
    return [(a, b) for a in range(n) for b in range(a, n)]


@dataclass(frozen=True)
class SymMetric:
    """Symmetric n x n rational matrix; the unknown of the constraint systems."""

    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError("SymMetric shape mismatch")
        for i in range(self.n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("SymMetric must be exactly symmetric")

    @classmethod
    def from_rows(cls, rows) -> "SymMetric":
        fr = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return cls(len(fr), fr)

    @classmethod
    def from_upper(cls, n: int, upper) -> "SymMetric":
        vals = list(upper)
        if len(vals) != n * (n + 1) // 2:
            raise ValueError("upper triangle has wrong length")
        m = [[F0] * n for _ in range(n)]
        for (a, b), v in zip(upper_indices(n), vals):
            m[a][b] = Fraction(v)
            m[b][a] = Fraction(v)
        return cls.from_rows(m)

    def upper(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[a][b] for a, b in upper_indices(self.n))

    def scale(self, factor) -> "SymMetric":
        f = Fraction(factor)
        return SymMetric.from_rows([[x * f for x in row] for row in self.rows])

    def add(self, other: "SymMetric", factor=1) -> "SymMetric":
        f = Fraction(factor)
        return SymMetric.from_rows(
            [
                [a + f * b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def signature(self) -> tuple[int, int, int]:
        return signature([list(r) for r in self.rows])

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows])


# -- constraint assembly -----------------------------------------------------


@lru_cache(maxsize=None)
def _cleared_derivatives(a: Algebra) -> tuple[tuple[MultiPoly, ...], ...]:
    """S[k][j] = D * dP_k/ds_j - P_k * dD/ds_j, the cleared derivative of P_k/D."""
    inv = symbolic_inverse(a)
    p, d = inv.numerator, inv.denominator
    n = a.dim
    d_parts = [d.derivative(j) for j in range(n)]
    return tuple(
        tuple(d * p[k].derivative(j) - p[k] * d_parts[j] for j in range(n))
        for k in range(n)
    )


def _unknown_coefficient_polys(a: Algebra, i: int, j: int) -> list[MultiPoly]:
    """Coefficient polynomial of each unknown lambda_pq in the (i, j) curl identity."""
    s = _cleared_derivatives(a)
    n = a.dim
    zero = MultiPoly.zero(n)
    out = []
    for p, q in upper_indices(n):
        poly = zero
        if i == p:
            poly = poly + s[q][j]
        if i == q and p != q:
            poly = poly + s[p][j]
        if j == p:
            poly = poly - s[q][i]
        if j == q and p != q:
            poly = poly - s[p][i]
        out.append(poly)
    return out


@lru_cache(maxsize=None)
def curl_constraints(a: Algebra) -> tuple[tuple[Fraction, ...], ...]:
    """Exact linear system whose nullspace is the space of uncurling metrics.

    One row per (index pair, monomial) with nonzero coefficients; pairs in
    lex order, monomials in graded-lex order, so output is reproducible.
    """
    n = a.dim
    rows: list[tuple[Fraction, ...]] = []
    for i in range(n):
        for j in range(i + 1, n):
            per_unknown = _unknown_coefficient_polys(a, i, j)
            monos = sorted(
                {m for poly in per_unknown for m in poly.terms}, key=grlex_key
            )
            for m in monos:
                row = tuple(poly.coefficient(m) for poly in per_unknown)
                if any(row):
                    rows.append(row)
    return tuple(rows)


@lru_cache(maxsize=None)
def normalization_constraints(
    a: Algebra,
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[Fraction, ...]]:
    """Coefficient matching of sum_i s_i (L P)_i = ||1||^2 D as rows over lambda."""
    inv = symbolic_inverse(a)
    p, d = inv.numerator, inv.denominator
    n = a.dim
    target = d.scale(unit_norm_squared(a))
    per_unknown = []
    for i, j in upper_indices(n):
        poly = MultiPoly.variable(n, i) * p[j]
        if i != j:
            poly = poly + MultiPoly.variable(n, j) * p[i]
        per_unknown.append(poly)
    monos = sorted(
        {m for poly in per_unknown for m in poly.terms} | set(target.terms),
        key=grlex_key,
    )
    rows = []
    rhs = []
    for m in monos:
        rows.append(tuple(poly.coefficient(m) for poly in per_unknown))
        rhs.append(target.coefficient(m))
    return tuple(rows), tuple(rhs)


# -- solution spaces ---------------------------------------------------------


@dataclass(frozen=True)
class UncurlingSpace:
    algebra: Algebra
    basis: tuple[SymMetric, ...]
    dimension: int

    def contains(self, metric: SymMetric) -> bool:
        """Exact membership: solve for coordinates in this basis."""
        if not self.basis:
            return all(x == 0 for x in metric.upper())
        cols = [list(b.upper()) for b in self.basis]
        rows = [list(col) for col in zip(*cols)]
        return affine_solve(rows, list(metric.upper())) is not None


@lru_cache(maxsize=None)
def uncurling_space(a: Algebra) -> UncurlingSpace:
    n = a.dim
    ncols = n * (n + 1) // 2
    basis = nullspace([list(r) for r in curl_constraints(a)], ncols)
    return UncurlingSpace(a, tuple(SymMetric.from_upper(n, v) for v in basis), len(basis))


@dataclass(frozen=True)
class NormalizedFamily:
    """Affine family of normalized uncurling metrics, or an inconsistency marker."""

    algebra: Algebra
    particular: SymMetric | None
    directions: tuple[SymMetric, ...]
    inconsistent: bool

    @property
    def dimension(self) -> int:
        return -1 if self.inconsistent else len(self.directions)


def canonical_metric(a: Algebra) -> SymMetric:
    """The scaled trace form (||1||^2 / n) * tr(R(e_i) R(e_j)).

    Always a normalized uncurling metric: the trace functional is symmetric
    on products, which makes the cleared curl identity vanish, and the
    normalization identity reduces to the trace of the identity element.
    Its unital norm integrates to |det R(s)|^(1/n).
    """
    scale = Fraction(unit_norm_squared(a), a.dim)
    return SymMetric.from_rows(
        [[x * scale for x in row] for row in trace_form(a)]
    )


def _stacked_system(a: Algebra):
    curl_rows = curl_constraints(a)
    norm_rows, rhs = normalization_constraints(a)
    rows = [list(r) for r in curl_rows] + [list(r) for r in norm_rows]
    full_rhs = [F0] * len(curl_rows) + list(rhs)
    return rows, full_rhs


@lru_cache(maxsize=None)
def normalized_family(a: Algebra) -> NormalizedFamily:
    rows, rhs = _stacked_system(a)
    sol = affine_solve(rows, rhs)
    if sol is None:
        return NormalizedFamily(a, None, (), True)
    cand = canonical_metric(a)
    if mat_vec(rows, list(cand.upper())) != rhs:
        raise RuntimeError(
            f"{a.name}: scaled trace form fails the assembled constraints; "
            "constraint assembly is inconsistent"
        )
    n = a.dim
    directions = tuple(SymMetric.from_upper(n, v) for v in sol.homogeneous)
    return NormalizedFamily(a, cand, directions, False)


def is_normalized_member(a: Algebra, metric: SymMetric) -> bool:
    """Exact membership of L in the normalized family (curl + normalization)."""
    rows, rhs = _stacked_system(a)
    return mat_vec(rows, list(metric.upper())) == rhs


# -- exact residual polynomials (independent assembly path) ------------------


def curl_residual_polys(a: Algebra, metric: SymMetric) -> list[MultiPoly]:
    """Cleared curl polynomials for a concrete L, one per index pair i < j.

    Assembled directly from L P and D rather than from the coefficient
    matrix, so a zero result cross-checks the constraint assembly.
    """
    inv = symbolic_inverse(a)
    p, d = inv.numerator, inv.denominator
    n = a.dim
    d_parts = [d.derivative(j) for j in range(n)]
    lp = []
    for i in range(n):
        acc = MultiPoly.zero(n)
        for j in range(n):
            v = metric.rows[i][j]
            if v:
                acc = acc + p[j].scale(v)
        lp.append(acc)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(
                d * lp[i].derivative(j)
                - lp[i] * d_parts[j]
                - d * lp[j].derivative(i)
                + lp[j] * d_parts[i]
            )
    return out


def normalization_residual_poly(a: Algebra, metric: SymMetric) -> MultiPoly:
    """sum_i s_i (L P)_i - ||1||^2 D for a concrete L; zero iff normalized."""
    inv = symbolic_inverse(a)
    p, d = inv.numerator, inv.denominator
    n = a.dim
    acc = MultiPoly.zero(n)
    for i in range(n):
        si = MultiPoly.variable(n, i)
        for j in range(n):
            v = metric.rows[i][j]
            if v:
                acc = acc + si * p[j].scale(v)
    return acc - d.scale(unit_norm_squared(a))


# -- numeric cross-check ------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    trials: int
    step: float
    max_residual: float


def sample_units(
    a: Algebra,
    rng: np.random.Generator,
    count: int,
    box: float = 0.3,
    threshold: float | None = None,
) -> np.ndarray:
    """Random units with coordinates within unit +- box; rejection sampled."""
    unit = np.array([float(x) for x in a.unit])
    points = []
    budget = 100 * count
    kwargs = {} if threshold is None else {"threshold": threshold}
    while len(points) < count:
        if budget <= 0:
            raise NonUnitError(f"{a.name}: unit sampling exhausted its rejection budget")
        budget -= 1
        s = unit + rng.uniform(-box, box, a.dim)
        if is_unit_point(a, s, **kwargs):
            points.append(s)
    return np.array(points)


def verify_uncurling(
    a: Algebra,
    metric: SymMetric,
    trials: int = 50,
    seed: int = 0,
    step: float = 1e-5,
) -> VerifyReport:
    """Finite-difference curl of L s^{-1} at random units near the identity.

    This is the numeric face of the exact pipeline: solver outputs should
    come back with residuals at finite-difference noise level.
    """
    rng = np.random.default_rng(seed)
    lf = metric.to_float()
    pts = sample_units(a, rng, trials)
    n = a.dim
    worst = 0.0
    for s in pts:
        fields = np.empty((n, 2, n))  # axis, (+h, -h), component
        for k in range(n):
            e = np.zeros(n)
            e[k] = step
            fields[k, 0] = lf @ numeric_inverse(a, s + e)
            fields[k, 1] = lf @ numeric_inverse(a, s - e)
        grad = (fields[:, 0, :] - fields[:, 1, :]) / (2 * step)  # grad[j][i] = d_j f_i
        for i in range(n):
            for j in range(i + 1, n):
                worst = max(worst, abs(grad[j][i] - grad[i][j]))
    return VerifyReport(trials=trials, step=step, max_residual=worst)


# -- invariants and comparison ------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    name: str
    dim: int
    dim_uncurling: int
    dim_normalized_family: int
    unit_norm_squared: int
    particular_signature: tuple[int, int, int] | None
    signature_samples: tuple[tuple[tuple[int, ...], tuple[int, int, int]], ...]
    admits_positive_definite_normalized: str


@lru_cache(maxsize=None)
def invariant_report(a: Algebra) -> InvariantReport:
    """Computable isomorphism invariants plus a reproducible signature fingerprint.

    The signature_samples grid walks the normalized family from the canonical
    particular metric along each direction (offsets 0, +-1, +-2); it is a
    deterministic diagnostic, while the particular signature itself is the
    basis-independent quantity used for comparisons.
    """
    space = uncurling_space(a)
    family = normalized_family(a)
    uns = unit_norm_squared(a)
    if family.inconsistent:
        return InvariantReport(
            name=a.name,
            dim=a.dim,
            dim_uncurling=space.dimension,
            dim_normalized_family=-1,
            unit_norm_squared=uns,
            particular_signature=None,
            signature_samples=(),
            admits_positive_definite_normalized="no",
        )
    samples: list[tuple[tuple[int, ...], tuple[int, int, int]]] = []
    ndir = len(family.directions)
    zero_offsets = (0,) * ndir
    samples.append((zero_offsets, family.particular.signature()))
    for idx, direction in enumerate(family.directions):
        for k in (1, -1, 2, -2):
            offsets = tuple(k if t == idx else 0 for t in range(ndir))
            samples.append((offsets, family.particular.add(direction, k).signature()))
    n = a.dim
    any_pd = any(sig == (n, 0, 0) for _, sig in samples)
    if any_pd:
        admits = "yes"
    elif ndir == 0:
        admits = "no"
    else:
        admits = "unknown"
    return InvariantReport(
        name=a.name,
        dim=a.dim,
        dim_uncurling=space.dimension,
        dim_normalized_family=ndir,
        unit_norm_squared=uns,
        particular_signature=family.particular.signature(),
        signature_samples=tuple(samples),
        admits_positive_definite_normalized=admits,
    )


def comparison_signature_multiset(report: InvariantReport) -> tuple:
    """Signatures at intrinsically defined family points (currently the
    canonical particular metric); invariant under any change of basis."""
    if report.particular_signature is None:
        return ()
    return (report.particular_signature,)


@dataclass(frozen=True)
class DistinguishResult:
    distinguishable: bool
    witness: str | None


def distinguish(a: Algebra, b: Algebra) -> DistinguishResult:
    """Compare invariant by invariant; a mismatch proves non-isomorphism.

    Agreement on every invariant is reported as inconclusive, never as a
    claim of isomorphism.
    """
    ra, rb = invariant_report(a), invariant_report(b)
    checks = [
        ("dimension", ra.dim, rb.dim),
        ("unit_norm_squared", ra.unit_norm_squared, rb.unit_norm_squared),
        ("dim_uncurling", ra.dim_uncurling, rb.dim_uncurling),
        ("dim_normalized_family", ra.dim_normalized_family, rb.dim_normalized_family),
        (
            "signature sample multiset",
            sorted(comparison_signature_multiset(ra)),
            sorted(comparison_signature_multiset(rb)),
        ),
    ]
    for label, va, vb in checks:
        if va != vb:
            return DistinguishResult(True, f"{label}: {va} vs {vb}")
    return DistinguishResult(False, None)
