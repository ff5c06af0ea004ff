"""Structure constants, adjoint action, group transport."""

import math
from fractions import Fraction

import pytest

from lie_thomas.algebra import (
    AlgebraElement,
    AlgebraError,
    GroupDomainError,
    GroupElement,
    GroupWord,
    adjoint,
    adjoint_scaling,
    adjoint_table,
    basis_element,
    commutator,
    commutator_table,
    g_element,
    group_action,
    lie_series_adjoint,
    transform_solution,
)
from lie_thomas.determining import ThomasParams, exponential_g, v_g
from lie_thomas.expr import (
    ALPHA,
    BETA,
    GAMMA,
    R,
    UFunc,
    X,
    Y,
    differentiate,
    exp,
    mul,
    param,
    pow_,
)
from lie_thomas.normal import equal, is_zero
from lie_thomas.vectorfield import vf_bracket


def _el_equal(a: AlgebraElement, b: AlgebraElement) -> bool:
    if not all(equal(x, y) for x, y in zip(a.coords(), b.coords())):
        return False
    ga, gb = a.g, b.g
    return is_zero(ga - gb)


def test_commutator_table_golden():
    p = ThomasParams()
    g = UFunc("g", ("x", "y"))()
    gx = differentiate(g, X)
    gy = differentiate(g, Y)
    psi = -GAMMA * X * gx + GAMMA * Y * gy - GAMMA * (BETA * X - ALPHA * Y) * g
    z = AlgebraElement(0, 0, 0, 0)
    vg = g_element(g)
    expected = [
        [z, z, z, AlgebraElement(-GAMMA, 0, BETA, 0), g_element(gx)],
        [z, z, z, AlgebraElement(0, GAMMA, -ALPHA, 0), g_element(gy)],
        [z, z, z, z, g_element(-GAMMA * g)],
        [
            AlgebraElement(GAMMA, 0, -BETA, 0),
            AlgebraElement(0, -GAMMA, ALPHA, 0),
            z,
            z,
            g_element(psi),
        ],
        [
            g_element(-gx),
            g_element(-gy),
            g_element(GAMMA * g),
            g_element(-psi),  # antisymmetric partner of the v4 column
            z,
        ],
    ]
    table = commutator_table(p, g)
    assert len(table) == 5 and all(len(row) == 5 for row in table)
    for i in range(5):
        for j in range(5):
            assert _el_equal(table[i][j], expected[i][j]), (i, j)


def test_commutator_matches_field_bracket(rng):
    # dual route: structure constants vs literal vector-field bracket
    p = ThomasParams()
    from lie_thomas.determining import v1, v2, v3, v4

    fields = {1: v1(), 2: v2(), 3: v3(), 4: v4(p)}
    for _ in range(5):
        a = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        b = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        ea, eb = AlgebraElement(*a), AlgebraElement(*b)
        br = commutator(ea, eb, p).to_field(p)
        direct_a = _combine(fields, a)
        direct_b = _combine(fields, b)
        direct = vf_bracket(direct_a, direct_b)
        assert is_zero(br.xi - direct.xi)
        assert is_zero(br.eta - direct.eta)
        assert is_zero(br.phi - direct.phi)


def _combine(fields, coeffs):
    out = fields[1].scale(R(coeffs[0].numerator, coeffs[0].denominator))
    for i in (2, 3, 4):
        c = coeffs[i - 1]
        out = out + fields[i].scale(R(c.numerator, c.denominator))
    return out


def test_g_part_bracket_matches_field_bracket():
    p = ThomasParams(1, 1, 1)
    g, _ = exponential_g(R(2), p)
    vg = g_element(g)
    for i in (1, 2, 3, 4):
        br = commutator(basis_element(i), vg, p)
        field = br.to_field(p)
        direct = vf_bracket(basis_element(i).to_field(p), vg.to_field(p))
        assert is_zero(field.xi - direct.xi)
        assert is_zero(field.eta - direct.eta)
        assert is_zero(field.phi - direct.phi), i


def test_adjoint_table_golden():
    p = ThomasParams()
    eps = param("epsilon")
    table = adjoint_table(p, eps)
    v = [None] + [basis_element(i) for i in (1, 2, 3, 4)]
    # nilpotent rows
    assert _el_equal(table[0][3], AlgebraElement(eps * GAMMA, 0, -BETA * eps, 1))
    assert _el_equal(table[1][3], AlgebraElement(0, -eps * GAMMA, ALPHA * eps, 1))
    for j in range(3):
        assert _el_equal(table[0][j], v[j + 1])
        assert _el_equal(table[1][j], v[j + 1])
        assert _el_equal(table[2][j], v[j + 1])
    assert _el_equal(table[2][3], v[4])
    # scaling row: exponentials with the grow-direction coefficient
    decay = exp(-GAMMA * eps)
    grow = exp(GAMMA * eps)
    assert _el_equal(
        table[3][0],
        AlgebraElement(decay, 0, BETA * pow_(GAMMA, -1) * (R(1) - decay), 0),
    )
    assert _el_equal(
        table[3][1],
        AlgebraElement(0, grow, -ALPHA * pow_(GAMMA, -1) * (grow - R(1)), 0),
    )
    assert _el_equal(table[3][2], v[3])
    assert _el_equal(table[3][3], v[4])


def test_adjoint_nilpotent_matches_lie_series_symbolically():
    p = ThomasParams()
    eps = param("epsilon")
    for i in (1, 2, 3):
        for j in (1, 2, 3, 4):
            closed = adjoint(i, eps, basis_element(j), p)
            series = lie_series_adjoint(i, eps, basis_element(j), p, order=6)
            assert _el_equal(closed, series), (i, j)


def test_adjoint_scaling_rational_exact():
    p = ThomasParams(1, 2, 1)
    w = AlgebraElement(Fraction(3), Fraction(-1), Fraction(1, 2), Fraction(0))
    t = Fraction(1, 4)  # t = e^{-gamma eps}
    out = adjoint_scaling(t, w, p)
    a1, a2, a3, a4 = out.coords_exact()
    assert a1 == Fraction(3, 4)
    assert a2 == Fraction(-4)
    # a3 + a1 (beta/gamma)(1 - t) - a2 (alpha/gamma)(1/t - 1)
    assert a3 == Fraction(1, 2) + 3 * 2 * (1 - Fraction(1, 4)) - (-1) * (4 - 1)
    assert a4 == 0


def test_adjoint_v4_numeric_against_series():
    p = ThomasParams(1, 1, 1)
    for eps in (0.1, 1.0):
        closed = adjoint(4, R(1, 10) if eps == 0.1 else R(1), basis_element(1), p)
        series = lie_series_adjoint(4, R(1, 10) if eps == 0.1 else R(1),
                                    basis_element(1), p, order=25)
        from lie_thomas.expr import evaluate

        for c_expr, s_expr in zip(closed.coords(), series.coords()):
            c = evaluate(c_expr, {})
            s = evaluate(s_expr, {})
            assert abs(float(c) - float(s)) < 1e-12


def test_adjoint_rejects_g_part():
    p = ThomasParams(1, 1, 1)
    g, _ = exponential_g(R(1), p)
    with pytest.raises(AlgebraError):
        adjoint(1, R(1), g_element(g), p)


def test_group_one_parameter_property():
    p = ThomasParams(1, 1, 1)
    pt = (0.4, -0.7, 1.3)
    for i in (1, 2, 3, 4):
        ab = group_action(i, 0.25, group_action(i, 0.35, pt, p), p)
        once = group_action(i, 0.6, pt, p)
        assert max(abs(a - b) for a, b in zip(ab, once)) < 1e-12


def test_group_action_g_domain():
    p = ThomasParams(1, 1, 1)
    g, _ = exponential_g(R(1), p)
    pt = (0.0, 0.0, 0.0)
    moved = group_action("g", 0.5, pt, p, g)
    assert moved[0] == pt[0] and moved[1] == pt[1]
    with pytest.raises(GroupDomainError):
        group_action("g", -5.0, pt, p, g)  # gamma*g*eps + e^{gamma*u} < 0


def test_transform_solution_residuals():
    from lie_thomas.verification import residual

    p = ThomasParams(1, 1, 1)

    def base(x, y):  # single exponential mode: lambda = 1, mu = -1/2
        from lie_thomas.hyperdual import exp_, log_

        return log_(exp_(x - 0.5 * y))

    pts = [(0.3, -0.2), (-1.1, 0.7), (0.0, 0.0)]
    for i in (1, 2, 3, 4):
        for eps in (0.3, -0.3):
            u = transform_solution(i, eps, base, p)
            for x, y in pts:
                assert abs(residual(u, x, y, p)) < 1e-10, (i, eps)
    u = transform_solution("g", 0.05, base, p, g=lambda x, y: 1.0)
    for x, y in pts:
        assert abs(residual(u, x, y, p)) < 1e-10


def test_group_word_inverse_round_trip():
    p = ThomasParams(1, 1, 1)
    w = GroupWord((GroupElement(1, 0.3), GroupElement(4, -0.2), GroupElement(3, 1.0)))
    pt = (0.5, 0.25, -0.75)
    back = w.inverse().apply(w.apply(pt, p), p)
    assert max(abs(a - b) for a, b in zip(pt, back)) < 1e-12
    both = (w * w.inverse()).apply(pt, p)
    assert max(abs(a - b) for a, b in zip(pt, both)) < 1e-12
