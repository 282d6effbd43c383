"""Finite-dimensional unital associative algebras over the rationals.

An algebra is given by its structure constants c[i][j][k] (meaning
e_i * e_j = sum_k c[i][j][k] e_k) plus the coordinates of the two-sided
identity.  Everything downstream (representations, norms, constraint
assembly) is derived from this tensor exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import AlgebraError, NonUnitError, NoUnitError
from .linalg import affine_solve, invert, mat_vec, signature
from .polys import MultiPoly, PolyMatrix, det_and_adjugate

Table = tuple[tuple[tuple[Fraction, ...], ...], ...]

NONUNIT_THRESHOLD = 1e-10


def _freeze_table(table) -> Table:
    return tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in table)


@dataclass(frozen=True)
class Algebra:
    """Validated algebra: structure tensor, dimension, unit coordinates."""

    name: str
    dim: int
    table: Table
    unit: tuple[Fraction, ...]

    def product(self, x: Sequence, y: Sequence) -> list[Fraction]:
        xf = [Fraction(v) for v in x]
        yf = [Fraction(v) for v in y]
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(xf):
            if not xi:
                continue
            for j, yj in enumerate(yf):
                if not yj:
                    continue
                c = self.table[i][j]
                s = xi * yj
                for k in range(self.dim):
                    if c[k]:
                        out[k] += s * c[k]
        return out


@dataclass(frozen=True)
class ValidationReport:
    dim: int
    associative: bool
    witness: tuple[int, int, int, int] | None
    unit: tuple[Fraction, ...] | None

    @property
    def ok(self) -> bool:
        return self.associative and self.unit is not None


def _table_product(table: Table, i: int, j: int) -> tuple[Fraction, ...]:
    return tuple(table[i][j][k] for k in range(len(table)))


def associativity_witness(table: Table) -> tuple[int, int, int, int] | None:
    """First (i, j, k, l) violating (e_i e_j) e_k = e_i (e_j e_k), or None."""
    n = len(table)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = sum(table[i][j][m] * table[m][k][l] for m in range(n))
                    rhs = sum(table[j][k][m] * table[i][m][l] for m in range(n))
                    if lhs != rhs:
                        return (i, j, k, l)
    return None


def find_unit(table) -> tuple[Fraction, ...] | None:
    """Solve the linear system for a two-sided identity; None if there is none."""
    t = _freeze_table(table)
    n = len(t)
    rows = []
    rhs = []
    # left identity rows: sum_j u_j (e_j e_i) = e_i, and right identity rows.
    for i in range(n):
        for k in range(n):
            rows.append([t[j][i][k] for j in range(n)])
            rhs.append(Fraction(1 if k == i else 0))
    for i in range(n):
        for k in range(n):
            rows.append([t[i][j][k] for j in range(n)])
            rhs.append(Fraction(1 if k == i else 0))
    sol = affine_solve(rows, rhs)
    if sol is None:
        return None
    # a two-sided identity in a finite-dimensional algebra is unique
    return sol.particular


def validate(table) -> ValidationReport:
    """Non-raising structural check: associativity witness and unit search."""
    t = _freeze_table(table)
    n = len(t)
    if n == 0 or any(len(p) != n or any(len(r) != n for r in p) for p in t):
        raise AlgebraError("structure tensor must be n x n x n with n >= 1")
    witness = associativity_witness(t)
    unit = find_unit(t)
    return ValidationReport(n, witness is None, witness, unit)


def make_algebra(name: str, table, unit=None) -> Algebra:
    """Validate and build an Algebra; raises AlgebraError on any defect.

    The unit is always recomputed from the table; a supplied unit that
    disagrees is a hard error, not a warning.
    """
    t = _freeze_table(table)
    report = validate(t)
    if not report.associative:
        raise AlgebraError(f"{name}: associativity fails at (i,j,k,l)={report.witness}")
    if report.unit is None:
        raise NoUnitError(f"{name}: multiplication table has no two-sided identity")
    if unit is not None:
        supplied = tuple(Fraction(x) for x in unit)
        if supplied != report.unit:
            raise AlgebraError(
                f"{name}: supplied unit {supplied} disagrees with computed unit {report.unit}"
            )
    return Algebra(name=name, dim=report.dim, table=t, unit=report.unit)


# -- representations -------------------------------------------------------


def rep_matrix(a: Algebra, i: int) -> list[list[Fraction]]:
    """R(e_i): the matrix of left multiplication by basis element e_i."""
    n = a.dim
    return [[a.table[i][j][k] for j in range(n)] for k in range(n)]


@lru_cache(maxsize=None)
def left_regular(a: Algebra) -> PolyMatrix:
    """Left regular representation R(s): entry [k][j] = sum_i s_i c[i][j][k]."""
    n = a.dim
    entries = []
    for k in range(n):
        row = []
        for j in range(n):
            row.append(MultiPoly.linear_form([a.table[i][j][k] for i in range(n)]))
        entries.append(row)
    return PolyMatrix(entries)


@dataclass(frozen=True)
class SymbolicInverse:
    """Numerator vector P and denominator D with R(s) P(s) = D(s) * unit."""

    numerator: tuple[MultiPoly, ...]
    denominator: MultiPoly


@lru_cache(maxsize=None)
def symbolic_inverse(a: Algebra) -> SymbolicInverse:
    r = left_regular(a)
    det, adj = det_and_adjugate(r)
    p = adj.apply(list(a.unit))
    return SymbolicInverse(tuple(p), det)


def usual_norm_poly(a: Algebra) -> MultiPoly:
    """det R(s): degree n, value 1 at the unit."""
    return symbolic_inverse(a).denominator


@lru_cache(maxsize=None)
def trace_form(a: Algebra) -> tuple[tuple[Fraction, ...], ...]:
    """Symmetric bilinear form K[i][j] = tr(R(e_i) R(e_j))."""
    n = a.dim
    reps = [rep_matrix(a, i) for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Fraction(0)
            ri, rj = reps[i], reps[j]
            for k in range(n):
                for l in range(n):
                    acc += ri[k][l] * rj[l][k]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def unit_norm_squared(a: Algebra) -> int:
    """The squared length assigned to the identity element.

    Computed as the positive inertia index of the left-regular trace form,
    which is basis-change invariant and matches the diagonal count of the
    standard presentations (componentwise algebras give dim, complex and
    dual numbers give 1).
    """
    p, _neg, _zero = signature(trace_form(a))
    if p <= 0:
        raise AlgebraError(f"{a.name}: trace form has no positive direction")
    return p


# -- numeric path ----------------------------------------------------------


def _float_tensor(a: Algebra) -> np.ndarray:
    # memoized on the instance: hashing the Fraction table on every call
    # would dominate the numeric hot path
    cached = a.__dict__.get("_float_tensor")
    if cached is not None:
        return cached
    n = a.dim
    arr = np.empty((n, n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                arr[i, j, k] = float(a.table[i][j][k])
    arr.setflags(write=False)
    object.__setattr__(a, "_float_tensor", arr)
    return arr


def _float_unit(a: Algebra) -> np.ndarray:
    cached = a.__dict__.get("_float_unit")
    if cached is not None:
        return cached
    arr = np.array([float(x) for x in a.unit])
    arr.setflags(write=False)
    object.__setattr__(a, "_float_unit", arr)
    return arr


def rep_at(a: Algebra, points: np.ndarray) -> np.ndarray:
    """R(s) for one point (n,) or a batch (m, n); returns (n, n) or (m, n, n)."""
    c = _float_tensor(a)
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        return np.einsum("i,ijk->kj", pts, c)
    return np.einsum("pi,ijk->pkj", pts, c)


def det_at(a: Algebra, points: np.ndarray) -> np.ndarray:
    return np.linalg.det(rep_at(a, points))


def is_unit_point(a: Algebra, point: np.ndarray, threshold: float = NONUNIT_THRESHOLD) -> bool:
    s = np.asarray(point, dtype=float)
    scale = max(1.0, float(np.max(np.abs(s))) ** a.dim)
    return abs(float(det_at(a, s))) >= threshold * scale


def numeric_inverse(a: Algebra, s, threshold: float = NONUNIT_THRESHOLD) -> np.ndarray:
    """Solve R(s) x = unit in floating point; NonUnitError below the threshold.

    The threshold scales with ||s||_inf^n because det R is homogeneous of
    degree n.
    """
    pt = np.asarray(s, dtype=float)
    if not is_unit_point(a, pt, threshold):
        raise NonUnitError(f"{a.name}: point {pt.tolist()} is not a unit")
    return np.linalg.solve(rep_at(a, pt), _float_unit(a))


def numeric_inverse_batch(a: Algebra, pts: np.ndarray, threshold: float = NONUNIT_THRESHOLD) -> np.ndarray:
    """Vectorized inverses for a batch of points (m, n); NonUnitError if any fails."""
    pts = np.asarray(pts, dtype=float)
    reps = rep_at(a, pts)
    dets = np.linalg.det(reps)
    scale = np.maximum(1.0, np.max(np.abs(pts), axis=1) ** a.dim)
    if np.any(np.abs(dets) < threshold * scale):
        bad = int(np.argmin(np.abs(dets) / scale))
        raise NonUnitError(f"{a.name}: point {pts[bad].tolist()} is not a unit")
    rhs = np.broadcast_to(_float_unit(a), pts.shape)
    return np.linalg.solve(reps, rhs[..., None])[..., 0]


# -- isomorphic copies -----------------------------------------------------


def change_of_basis(a: Algebra, t_matrix) -> Algebra:
    """Transport the structure tensor along x -> Tx.

    The result multiplies by x *_B y = T(T^{-1}x *_A T^{-1}y), so it is
    isomorphic to `a` by construction; SingularMatrixError if T is singular.
    """
    n = a.dim
    t = [[Fraction(x) for x in row] for row in t_matrix]
    if len(t) != n or any(len(r) != n for r in t):
        raise AlgebraError("change_of_basis matrix has wrong shape")
    tinv = invert(t)
    # products of the transported basis vectors, computed in A coordinates
    new_table = []
    for i in range(n):
        plane = []
        fi = [tinv[p][i] for p in range(n)]
        for j in range(n):
            fj = [tinv[q][j] for q in range(n)]
            prod = a.product(fi, fj)
            plane.append(tuple(mat_vec(t, prod)))
        new_table.append(tuple(plane))
    return make_algebra(f"{a.name}@basis", tuple(new_table))


# -- file format ------------------------------------------------------------


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise AlgebraError(f"invalid rational entry {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraError(f"invalid rational string {value!r}") from exc
    if isinstance(value, float):
        raise AlgebraError(f"floats are rejected in algebra files: {value!r}")
    raise AlgebraError(f"invalid rational entry {value!r}")


def algebra_from_json(obj) -> Algebra:
    """Parse {"name", "dim", "table", "unit"?}; rationals are ints or "p/q" strings."""
    if not isinstance(obj, dict):
        raise AlgebraError("algebra file must be a JSON object")
    try:
        name = obj["name"]
        dim = obj["dim"]
        table = obj["table"]
    except KeyError as exc:
        raise AlgebraError(f"algebra file missing key {exc}") from exc
    if not isinstance(name, str) or not isinstance(dim, int) or dim < 1:
        raise AlgebraError("algebra file needs a string name and integer dim >= 1")
    if (
        not isinstance(table, list)
        or len(table) != dim
        or any(not isinstance(p, list) or len(p) != dim for p in table)
        or any(not isinstance(r, list) or len(r) != dim for p in table for r in p)
    ):
        raise AlgebraError("table must be a dim x dim x dim array")
    parsed = tuple(
        tuple(tuple(_parse_rational(x) for x in row) for row in plane) for plane in table
    )
    unit = obj.get("unit")
    if unit is not None:
        if not isinstance(unit, list) or len(unit) != dim:
            raise AlgebraError("unit must be an array of length dim")
        unit = [_parse_rational(x) for x in unit]
    return make_algebra(name, parsed, unit)


def algebra_to_json(a: Algebra) -> dict:
    return {
        "name": a.name,
        "dim": a.dim,
        "table": [[[str(x) for x in row] for row in plane] for plane in a.table],
        "unit": [str(x) for x in a.unit],
    }


def load_algebra(text: str) -> Algebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"algebra file is not valid JSON: {exc}") from exc
    return algebra_from_json(obj)
