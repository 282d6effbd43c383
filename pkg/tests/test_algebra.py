import json
from fractions import Fraction

import numpy as np
import pytest

from uncurling.algebra import (
    algebra_from_json,
    algebra_to_json,
    change_of_basis,
    find_unit,
    left_regular,
    load_algebra,
    make_algebra,
    numeric_inverse,
    symbolic_inverse,
    trace_form,
    unit_norm_squared,
    usual_norm_poly,
    validate,
)
from uncurling.catalog import (
    builtin_algebra,
    complex_algebra,
    dual_numbers,
    reals,
)
from uncurling.errors import AlgebraError, NonUnitError, NoUnitError
from uncurling.polys import MultiPoly

F = Fraction


def test_validate_componentwise():
    rep = validate(reals(2).table)
    assert rep.associative and rep.unit == (F(1), F(1))


def test_validate_complex():
    rep = validate(complex_algebra().table)
    assert rep.associative and rep.unit == (F(1), F(0))


def test_validate_broken_table_reports_witness():
    # (e0 e0) e1 = e1 e1 = 0 but e0 (e0 e1) = e0 e0 = e1: genuinely non-associative
    t = [[[F(0)] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][1] = F(1)
    t[0][1][0] = F(1)
    rep = validate(t)
    assert not rep.associative
    assert rep.witness == (0, 0, 0, 0) or rep.witness is not None
    with pytest.raises(AlgebraError):
        make_algebra("broken", t)


def test_find_unit_zero_multiplication():
    assert find_unit([[[F(0)]]]) is None
    with pytest.raises(NoUnitError):
        make_algebra("zero", [[[F(0)]]])


def test_unit_cross_check_mismatch():
    with pytest.raises(AlgebraError):
        make_algebra("reals2", reals(2).table, unit=[1, 0])


def test_left_regular_componentwise_is_diagonal():
    a = reals(2)
    r = left_regular(a)
    s0 = MultiPoly.variable(2, 0)
    s1 = MultiPoly.variable(2, 1)
    assert r.entries[0][0] == s0 and r.entries[1][1] == s1
    assert r.entries[0][1].is_zero() and r.entries[1][0].is_zero()


def test_left_regular_complex():
    r = left_regular(complex_algebra())
    s0 = MultiPoly.variable(2, 0)
    s1 = MultiPoly.variable(2, 1)
    assert r.entries[0][0] == s0 and r.entries[0][1] == -s1
    assert r.entries[1][0] == s1 and r.entries[1][1] == s0


def test_left_regular_dual():
    r = left_regular(dual_numbers())
    s0 = MultiPoly.variable(2, 0)
    s1 = MultiPoly.variable(2, 1)
    assert r.entries[0][0] == s0 and r.entries[0][1].is_zero()
    assert r.entries[1][0] == s1 and r.entries[1][1] == s0


def test_left_regular_at_unit_is_identity():
    for name in ("reals(3)", "complex", "dual", "quaternion", "matrix(2)"):
        a = builtin_algebra(name)
        r = left_regular(a)
        vals = r.eval(list(a.unit))
        for i in range(a.dim):
            for j in range(a.dim):
                assert vals[i][j] == (1 if i == j else 0)


def test_usual_norm_poly_examples():
    s0 = MultiPoly.variable(2, 0)
    s1 = MultiPoly.variable(2, 1)
    assert usual_norm_poly(reals(2)) == s0 * s1
    assert usual_norm_poly(complex_algebra()) == s0 * s0 + s1 * s1
    assert usual_norm_poly(dual_numbers()) == s0 * s0


def test_usual_norm_is_one_at_unit():
    for name in ("reals(4)", "complex", "dual", "quaternion", "matrix(2)", "upper_triangular(2)"):
        a = builtin_algebra(name)
        assert usual_norm_poly(a).eval(list(a.unit)) == 1


def test_symbolic_inverse_examples():
    s0 = MultiPoly.variable(2, 0)
    s1 = MultiPoly.variable(2, 1)
    inv = symbolic_inverse(reals(2))
    assert list(inv.numerator) == [s1, s0]
    inv = symbolic_inverse(complex_algebra())
    assert list(inv.numerator) == [s0, -s1]
    inv = symbolic_inverse(dual_numbers())
    assert list(inv.numerator) == [s0, -s1]
    assert inv.denominator == s0 * s0


def test_symbolic_inverse_identity_holds():
    for name in ("reals(3)", "complex", "dual", "quaternion", "matrix(2)", "cyclic_group_algebra(3)"):
        a = builtin_algebra(name)
        r = left_regular(a)
        inv = symbolic_inverse(a)
        prod = []
        for k in range(a.dim):
            acc = MultiPoly.zero(a.dim)
            for j in range(a.dim):
                acc = acc + r.entries[k][j] * inv.numerator[j]
            prod.append(acc)
        for k in range(a.dim):
            expected = inv.denominator.scale(a.unit[k])
            assert prod[k] == expected


def test_unit_norm_squared_values():
    assert unit_norm_squared(reals(2)) == 2
    assert unit_norm_squared(complex_algebra()) == 1
    assert unit_norm_squared(dual_numbers()) == 1
    assert unit_norm_squared(builtin_algebra("quaternion")) == 1
    assert unit_norm_squared(builtin_algebra("upper_triangular(2)")) == 2


def _random_invertible(rng, n):
    from uncurling.linalg import rank

    while True:
        t = [[int(rng.integers(-2, 3)) for _ in range(n)] for _ in range(n)]
        if rank(t) == n:
            return t


@pytest.mark.parametrize(
    "name",
    ["reals(2)", "reals(3)", "complex", "dual", "quaternion", "upper_triangular(2)"],
)
def test_unit_norm_squared_invariant_under_change_of_basis(name):
    a = builtin_algebra(name)
    base = unit_norm_squared(a)
    rng = np.random.default_rng(hash(name) % 2**32)
    for _ in range(20):
        t = _random_invertible(rng, a.dim)
        b = change_of_basis(a, t)
        assert unit_norm_squared(b) == base


def test_change_of_basis_identity_keeps_table():
    a = reals(2)
    b = change_of_basis(a, [[1, 0], [0, 1]])
    assert b.table == a.table and b.unit == a.unit


def test_change_of_basis_transports_unit():
    a = reals(2)
    b = change_of_basis(a, [[1, 1], [0, 1]])
    assert b.unit == (F(2), F(1))


def test_change_of_basis_random_validates():
    rng = np.random.default_rng(7)
    for name in ("complex", "quaternion", "matrix(2)"):
        a = builtin_algebra(name)
        t = _random_invertible(rng, a.dim)
        b = change_of_basis(a, t)  # make_algebra validates internally
        assert b.dim == a.dim


def test_numeric_inverse_componentwise():
    a = reals(2)
    np.testing.assert_allclose(numeric_inverse(a, [2.0, 4.0]), [0.5, 0.25], atol=1e-14)


def test_numeric_inverse_complex_on_circle():
    a = complex_algebra()
    np.testing.assert_allclose(
        numeric_inverse(a, [0.6, 0.8]), [0.6, -0.8], atol=1e-12
    )


def test_numeric_inverse_dual():
    a = dual_numbers()
    np.testing.assert_allclose(numeric_inverse(a, [2.0, 1.0]), [0.5, -0.25], atol=1e-12)


def test_numeric_inverse_rejects_non_unit():
    with pytest.raises(NonUnitError):
        numeric_inverse(reals(2), [1.0, 0.0])


def test_numeric_inverse_residual_bound():
    rng = np.random.default_rng(0)
    for name in ("reals(3)", "complex", "quaternion", "matrix(2)"):
        a = builtin_algebra(name)
        unit = np.array([float(x) for x in a.unit])
        from uncurling.algebra import rep_at

        for _ in range(25):
            s = unit + rng.uniform(-0.3, 0.3, a.dim)
            x = numeric_inverse(a, s)
            r = rep_at(a, s)
            resid = np.max(np.abs(r @ x - unit))
            bound = 1e-12 * np.max(np.abs(r)) * max(np.max(np.abs(x)), 1.0)
            assert resid <= max(bound, 1e-15)


def test_numeric_inverse_involution():
    rng = np.random.default_rng(3)
    for name in ("reals(2)", "complex", "dual", "quaternion"):
        a = builtin_algebra(name)
        unit = np.array([float(x) for x in a.unit])
        for _ in range(20):
            s = unit + rng.uniform(-0.3, 0.3, a.dim)
            back = numeric_inverse(a, numeric_inverse(a, s))
            assert np.max(np.abs(back - s)) < 1e-9


def test_trace_form_values():
    assert trace_form(complex_algebra()) == ((F(2), F(0)), (F(0), F(-2)))
    assert trace_form(dual_numbers()) == ((F(2), F(0)), (F(0), F(0)))


# -- file format ------------------------------------------------------------


def test_json_roundtrip():
    a = builtin_algebra("direct_sum(complex,reals(1))")
    assert a.dim == 3
    text = json.dumps(algebra_to_json(a))
    b = load_algebra(text)
    assert b.table == a.table and b.unit == a.unit


def test_json_rejects_floats():
    obj = algebra_to_json(reals(2))
    obj["table"][0][0][0] = 1.0
    with pytest.raises(AlgebraError, match="floats are rejected"):
        algebra_from_json(obj)


def test_json_parses_rational_strings():
    obj = {
        "name": "half",
        "dim": 1,
        "table": [[["2/1"]]],
        "unit": ["1/2"],
    }
    a = algebra_from_json(obj)
    assert a.unit == (F(1, 2),)


def test_json_bad_shape():
    with pytest.raises(AlgebraError):
        algebra_from_json({"name": "x", "dim": 2, "table": [[[1]]]})
