"""Exact linear algebra over Fractions: RREF, nullspaces, affine systems,
matrix inversion, and symmetric-form signatures.

Matrices are plain lists of lists of Fractions.  All outputs are canonical:
pivoting always takes the first nonzero candidate, so identical inputs give
identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import SingularMatrixError

Vec = tuple[Fraction, ...]


def _as_fractions(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = _as_fractions(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        nz = [(j, v) for j, v in enumerate(m[r]) if v]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f != 0:
                row = m[i]
                for j, v in nz:
                    row[j] -= f * v
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def primitive_leading_positive(vec) -> Vec:
    """Scale a rational vector to primitive integers with positive first nonzero entry."""
    fr = [Fraction(x) for x in vec]
    nonzero = [x for x in fr if x != 0]
    if not nonzero:
        return tuple(fr)
    den_lcm = 1
    for x in nonzero:
        den_lcm = den_lcm * x.denominator // gcd(den_lcm, x.denominator)
    ints = [x * den_lcm for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(int(x)))
    scaled = [x / g for x in ints]
    lead = next(x for x in scaled if x != 0)
    if lead < 0:
        scaled = [-x for x in scaled]
    return tuple(scaled)


def dedupe_rows(rows) -> list[list[Fraction]]:
    """Drop zero rows and scalar-multiple duplicates, preserving first-seen order.

    Rows are normalized to primitive integer form first, so elimination work
    later is on small numerators.
    """
    seen = dict.fromkeys(
        primitive_leading_positive(row) for row in rows if any(Fraction(x) for x in row)
    )
    return [list(row) for row in seen]


def _nullspace_from_rref(red, pivots, ncols: int) -> list[Vec]:
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(primitive_leading_positive(v))
    return basis


def nullspace(rows, ncols: int | None = None) -> list[Vec]:
    """Canonical basis of {x : Ax = 0}.

    Derived from the RREF: one vector per free column (free variable set
    to 1, pivots back-substituted), then scaled to primitive integers with
    positive leading entry.
    """
    if rows:
        ncols = len(rows[0])
    if ncols is None:
        raise ValueError("ncols required for an empty row set")
    red, pivots = rref(dedupe_rows(rows))
    return _nullspace_from_rref(red, pivots, ncols)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set {particular + span(homogeneous)} of Ax = b."""

    particular: Vec
    homogeneous: tuple[Vec, ...]


def affine_solve(rows, rhs) -> AffineSolution | None:
    """Exact affine solve; None means the system is inconsistent.

    The particular solution sets every free variable to zero in RREF
    coordinates; the homogeneous basis matches `nullspace`.
    """
    m = _as_fractions(rows)
    b = [Fraction(x) for x in rhs]
    if len(m) != len(b):
        raise ValueError("rhs length mismatch")
    if not m:
        raise ValueError("affine_solve needs at least one row")
    ncols = len(m[0])
    aug = dedupe_rows([row + [bv] for row, bv in zip(m, b)])
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = red[r][ncols]
    # the leading ncols columns of the augmented RREF are exactly rref(A)
    homogeneous = _nullspace_from_rref([row[:ncols] for row in red], pivots, ncols)
    return AffineSolution(tuple(particular), tuple(homogeneous))


def invert(rows) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix; raises SingularMatrixError."""
    m = _as_fractions(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("invert needs a square matrix")
    aug = [row + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red[:n]]


def mat_vec(rows, vec) -> list[Fraction]:
    return [
        sum((Fraction(a) * Fraction(x) for a, x in zip(row, vec)), Fraction(0))
        for row in rows
    ]


def mat_mul(a, b) -> list[list[Fraction]]:
    bf = _as_fractions(b)
    out = []
    for row in a:
        out.append(
            [
                sum((Fraction(row[k]) * bf[k][j] for k in range(len(bf))), Fraction(0))
                for j in range(len(bf[0]))
            ]
        )
    return out


def transpose(rows) -> list[list[Fraction]]:
    return [list(col) for col in zip(*rows)]


def signature(sym) -> tuple[int, int, int]:
    """Exact inertia (positives, negatives, zeros) of a symmetric rational matrix.

    Symmetric congruence elimination: diagonal pivots count directly; an
    all-zero diagonal with a nonzero off-diagonal entry is made pivotable by
    the congruence e_i <- e_i + e_j, which preserves inertia (Sylvester).
    """
    a = _as_fractions(sym)
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("signature needs a square matrix")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("signature needs a symmetric matrix")
    rem = list(range(n))
    pos = neg = 0
    while rem:
        k = next((i for i in rem if a[i][i] != 0), None)
        if k is None:
            off = None
            for ii in rem:
                for jj in rem:
                    if jj > ii and a[ii][jj] != 0:
                        off = (ii, jj)
                        break
                if off:
                    break
            if off is None:
                break  # remaining block is identically zero
            i, j = off
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            continue
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        rem.remove(k)
        # Schur complement on the remaining block; row k must stay intact
        # until every i has been processed.
        factors = {i: a[i][k] / piv for i in rem}
        for i in rem:
            f = factors[i]
            if f:
                for j in rem:
                    a[i][j] -= f * a[k][j]
    return pos, neg, n - pos - neg
