"""Exact multivariate polynomials over rationals, and polynomial matrices.

Coefficients are `fractions.Fraction` throughout; no floating point enters
any identity test.  Terms are kept in a dict keyed by exponent tuples and
serialized in graded-lexicographic order so that constraint assembly and
reports are bit-reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

ZERO = Fraction(0)
ONE = Fraction(1)


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    """A polynomial in `nvars` variables with Fraction coefficients.

    `terms` maps exponent tuples (length nvars) to nonzero coefficients.
    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} has wrong arity for nvars={nvars}")
                c = Fraction(coeff)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): ONE})

    @classmethod
    def linear_form(cls, coeffs: Iterable) -> "MultiPoly":
        cs = [Fraction(c) for c in coeffs]
        n = len(cs)
        terms = {}
        for i, c in enumerate(cs):
            if c != 0:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls(n, terms)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_arity(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_arity(other)
        res = dict(self.terms)
        for exps, c in other.terms.items():
            s = res.get(exps, ZERO) + c
            if s:
                res[exps] = s
            else:
                res.pop(exps, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = res
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_arity(other)
        res = dict(self.terms)
        for exps, c in other.terms.items():
            s = res.get(exps, ZERO) - c
            if s:
                res[exps] = s
            else:
                res.pop(exps, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = res
        return out

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_arity(other)
        res: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(key, ZERO) + c1 * c2
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = res
        return out

    def scale(self, factor) -> "MultiPoly":
        f = Fraction(factor)
        if f == 0:
            return MultiPoly(self.nvars)
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = {e: c * f for e, c in self.terms.items()}
        return out

    def derivative(self, var: int) -> "MultiPoly":
        """Exact formal partial derivative with respect to variable `var`."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for nvars={self.nvars}")
        res: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            k = exps[var]
            if k == 0:
                continue
            new = list(exps)
            new[var] = k - 1
            res[tuple(new)] = c * k
        out = MultiPoly.__new__(MultiPoly)
        out.nvars = self.nvars
        out.terms = res
        return out

    def eval(self, point: Iterable) -> Fraction:
        """Exact evaluation at a rational point."""
        pt = [Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point arity mismatch")
        total = ZERO
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(pt, exps):
                if e:
                    v *= x**e
            total += v
        return total

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), ZERO)

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent tuples in graded-lex order."""
        return sorted(self.terms, key=grlex_key)

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                f"s{i}^{e}" if e > 1 else f"s{i}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Dispatch add/sub/mul by name (CLI and report plumbing)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: MultiPoly, var: int) -> MultiPoly:
    return p.derivative(var)


class PolyMatrix:
    """Rectangular matrix of MultiPoly entries sharing one arity."""

    __slots__ = ("rows", "cols", "nvars", "entries")

    def __init__(self, entries: list[list[MultiPoly]]):
        if not entries or not entries[0]:
            raise ValueError("PolyMatrix must be nonempty")
        self.rows = len(entries)
        self.cols = len(entries[0])
        self.nvars = entries[0][0].nvars
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged PolyMatrix")
            for p in row:
                if p.nvars != self.nvars:
                    raise ValueError("mixed arities in PolyMatrix")
        self.entries = entries

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        return cls(
            [
                [
                    MultiPoly.constant(nvars, 1 if i == j else 0)
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MultiPoly.zero(self.nvars)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix([[p.scale(factor) for p in row] for row in self.entries])

    def add_scalar_diag(self, scalar: MultiPoly) -> "PolyMatrix":
        out = [row[:] for row in self.entries]
        for i in range(min(self.rows, self.cols)):
            out[i][i] = out[i][i] + scalar
        return PolyMatrix(out)

    def trace(self) -> MultiPoly:
        acc = MultiPoly.zero(self.nvars)
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def apply(self, vector: list) -> list[MultiPoly]:
        """Matrix times a vector of Fractions, giving MultiPoly components."""
        vec = [Fraction(v) for v in vector]
        if len(vec) != self.cols:
            raise ValueError("vector arity mismatch")
        out = []
        for i in range(self.rows):
            acc = MultiPoly.zero(self.nvars)
            for j, v in enumerate(vec):
                if v:
                    acc = acc + self.entries[i][j].scale(v)
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def eval(self, point: Iterable) -> list[list[Fraction]]:
        pt = list(point)
        return [[p.eval(pt) for p in row] for row in self.entries]


def det_and_adjugate(m: PolyMatrix) -> tuple[MultiPoly, PolyMatrix]:
    """Determinant and adjugate of a square PolyMatrix.

    Uses the Faddeev-LeVerrier recurrence: one pass over the polynomial ring
    yields both, with the exact identity M*adj = adj*M = det*I.
    """
    if m.rows != m.cols:
        raise ValueError("det_and_adjugate needs a square matrix")
    n = m.rows
    nvars = m.nvars
    b = PolyMatrix.identity(n, nvars)
    c = MultiPoly.constant(nvars, 1)
    prev_b = b
    for k in range(1, n + 1):
        ab = m @ b
        c = ab.trace().scale(Fraction(-1, k))
        prev_b = b
        b = ab.add_scalar_diag(c)
    det = c if n % 2 == 0 else -c
    adj = prev_b if (n - 1) % 2 == 0 else prev_b.scale(-1)
    return det, adj
