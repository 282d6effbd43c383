"""Builtin algebra catalog: standard structure-constant tables plus a small
parser for names like "reals(3)" or "direct_sum(complex,reals(1))".
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, make_algebra
from .errors import AlgebraError

F0 = Fraction(0)
F1 = Fraction(1)


def _empty_table(n: int):
    return [[[F0] * n for _ in range(n)] for _ in range(n)]


def reals(k: int) -> Algebra:
    """Direct sum of k copies of the reals: componentwise multiplication."""
    if k < 1:
        raise AlgebraError("reals(k) needs k >= 1")
    t = _empty_table(k)
    for i in range(k):
        t[i][i][i] = F1
    return make_algebra(f"reals({k})", t)


def complex_algebra() -> Algebra:
    """Basis (1, i) with i^2 = -1."""
    t = _empty_table(2)
    t[0][0][0] = F1
    t[0][1][1] = F1
    t[1][0][1] = F1
    t[1][1][0] = -F1
    return make_algebra("complex", t)


def dual_numbers() -> Algebra:
    """Basis (1, eps) with eps^2 = 0."""
    t = _empty_table(2)
    t[0][0][0] = F1
    t[0][1][1] = F1
    t[1][0][1] = F1
    return make_algebra("dual", t)


def quaternions() -> Algebra:
    """Basis (1, i, j, k) with the Hamilton table."""
    t = _empty_table(4)
    # e0 is the identity
    for i in range(4):
        t[0][i][i] = F1
        t[i][0][i] = F1
    t[1][1][0] = -F1
    t[2][2][0] = -F1
    t[3][3][0] = -F1
    t[1][2][3] = F1
    t[2][1][3] = -F1
    t[2][3][1] = F1
    t[3][2][1] = -F1
    t[3][1][2] = F1
    t[1][3][2] = -F1
    return make_algebra("quaternion", t)


def matrix_algebra(k: int) -> Algebra:
    """Full k x k matrix algebra; basis E_ab in row-major order."""
    if k < 1:
        raise AlgebraError("matrix(k) needs k >= 1")
    idx = {(a, b): a * k + b for a in range(k) for b in range(k)}
    n = k * k
    t = _empty_table(n)
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                t[i][j][idx[(a, d)]] = F1
    return make_algebra(f"matrix({k})", t)


def upper_triangular(k: int) -> Algebra:
    """Upper triangular k x k matrices; basis E_ab (a <= b) in lex order."""
    if k < 1:
        raise AlgebraError("upper_triangular(k) needs k >= 1")
    pairs = [(a, b) for a in range(k) for b in range(a, k)]
    idx = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    t = _empty_table(n)
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                t[i][j][idx[(a, d)]] = F1
    return make_algebra(f"upper_triangular({k})", t)


def cyclic_group_algebra(m: int) -> Algebra:
    """Group algebra of Z/m: e_i e_j = e_{(i+j) mod m}."""
    if m < 1:
        raise AlgebraError("cyclic_group_algebra(m) needs m >= 1")
    t = _empty_table(m)
    for i in range(m):
        for j in range(m):
            t[i][j][(i + j) % m] = F1
    return make_algebra(f"cyclic_group_algebra({m})", t)


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Block direct sum: components multiply independently."""
    n = a.dim + b.dim
    t = _empty_table(n)
    for i in range(a.dim):
        for j in range(a.dim):
            for k in range(a.dim):
                t[i][j][k] = a.table[i][j][k]
    for i in range(b.dim):
        for j in range(b.dim):
            for k in range(b.dim):
                t[a.dim + i][a.dim + j][a.dim + k] = b.table[i][j][k]
    return make_algebra(f"direct_sum({a.name},{b.name})", t)


def builtin_algebra(spec: str) -> Algebra:
    """Resolve a builtin name with optional arguments.

    Accepted: reals(k), complex, dual, quaternion, matrix(k),
    upper_triangular(k), cyclic_group_algebra(m), direct_sum(A,B) with
    nested builtin names as arguments.
    """
    expr, rest = _parse_expr(spec.strip())
    if rest.strip():
        raise AlgebraError(f"trailing input in builtin name: {rest!r}")
    return expr


def _parse_expr(text: str) -> tuple[Algebra, str]:
    text = text.lstrip()
    head = ""
    i = 0
    while i < len(text) and (text[i].isalnum() or text[i] == "_"):
        head += text[i]
        i += 1
    rest = text[i:].lstrip()
    args: list[str | Algebra] = []
    if rest.startswith("("):
        rest = rest[1:]
        while True:
            rest = rest.lstrip()
            if rest.startswith(")"):
                rest = rest[1:]
                break
            if rest[:1].isdigit():
                num = ""
                while rest[:1].isdigit():
                    num += rest[0]
                    rest = rest[1:]
                args.append(num)
            else:
                sub, rest = _parse_expr(rest)
                args.append(sub)
            rest = rest.lstrip()
            if rest.startswith(","):
                rest = rest[1:]
            elif not rest.startswith(")"):
                raise AlgebraError(f"malformed builtin arguments near {rest!r}")
    return _dispatch(head, args), rest


def _dispatch(head: str, args: list) -> Algebra:
    def int_arg(k: int = 0) -> int:
        if len(args) <= k or not isinstance(args[k], str):
            raise AlgebraError(f"builtin {head!r} needs an integer argument")
        return int(args[k])

    if head == "reals":
        return reals(int_arg())
    if head == "complex":
        return complex_algebra()
    if head == "dual":
        return dual_numbers()
    if head == "quaternion":
        return quaternions()
    if head == "matrix":
        return matrix_algebra(int_arg())
    if head == "upper_triangular":
        return upper_triangular(int_arg())
    if head == "cyclic_group_algebra":
        return cyclic_group_algebra(int_arg())
    if head == "direct_sum":
        if len(args) != 2 or not all(isinstance(x, Algebra) for x in args):
            raise AlgebraError("direct_sum needs two algebra arguments")
        return direct_sum(args[0], args[1])
    raise AlgebraError(f"unknown builtin algebra {head!r}")


STANDARD_NAMES = (
    "reals(1)",
    "reals(2)",
    "reals(3)",
    "reals(4)",
    "complex",
    "dual",
    "quaternion",
    "matrix(2)",
    "upper_triangular(2)",
    "cyclic_group_algebra(3)",
)
