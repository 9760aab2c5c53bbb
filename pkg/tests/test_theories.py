"""Tests for the theory models: laws, morphisms, twisting, duality."""

from fractions import Fraction

import pytest

from rrcalc import (
    CHOW,
    CHOW_Q,
    K_THEORY,
    FiltrationViolation,
    GKClass,
    NonUnitConstant,
    RingSpec,
    SpecMismatch,
    TruncatedSeries,
    diagonal_class,
    exp_deficit_series,
    factor_projection,
    gk_leading_morphism,
    k_line_class,
    linear_immersion,
    metric_check,
    morphism_in,
    point_projection,
    pullback,
    pushforward,
    ring_of,
    space_tangent,
    tangent_class,
    twist_theory,
    universal_morphism,
)
from rrcalc.rings import INTEGERS, RATIONALS


def exp_deficit_twist(order: int = 10):
    return twist_theory(CHOW_Q, exp_deficit_series(order))


# ---------------------------------------------------------------- laws


def test_chow_law_is_addition():
    spec = ring_of(CHOW, (2, 2))
    h1, h2 = spec.generator(0), spec.generator(1)
    assert CHOW.law(h1, h2) == h1 + h2


def test_ktheory_law():
    spec = ring_of(K_THEORY, (2, 2))
    t1, t2 = spec.generator(0), spec.generator(1)
    assert K_THEORY.law(t1, t2) == t1 + t2 - t1 * t2


def test_group_law_elements():
    assert str(CHOW.group_law(3)) == "u + v"
    assert str(K_THEORY.group_law(2)) == "u + v - u*v"


def test_law_rejects_mixed_rings():
    a = ring_of(CHOW, (2,)).generator(0)
    b = ring_of(CHOW, (3,)).generator(0)
    with pytest.raises(SpecMismatch):
        CHOW.law(a, b)


def test_group_law_axioms_for_twisted_theory():
    # unit, commutativity, associativity, checked on actual nilpotents
    tw = exp_deficit_twist()
    spec = RingSpec(("u", "v", "w"), (2, 2, 2), RATIONALS)
    u, v, w = (spec.generator(i) for i in range(3))
    zero = spec.zero()
    assert tw.law(u, zero) == u
    assert tw.law(zero, v) == v
    assert tw.law(u, v) == tw.law(v, u)
    assert tw.law(tw.law(u, v), w) == tw.law(u, tw.law(v, w))


def test_exp_deficit_twist_has_multiplicative_law():
    # the conjugated additive law closes up exactly, at any truncation
    tw = exp_deficit_twist(16)
    got = tw.group_law(7)
    spec = got.spec
    u, v = spec.generator(0), spec.generator(1)
    assert got == u + v - u * v


def test_identity_twist_keeps_the_base_law():
    tw = twist_theory(CHOW_Q, TruncatedSeries([1], 10))
    law = tw.group_law(4)
    spec = law.spec
    assert law == spec.generator(0) + spec.generator(1)


def test_twist_requires_unit_constant():
    with pytest.raises(NonUnitConstant):
        twist_theory(CHOW_Q, TruncatedSeries([0, 1], 4))


def test_retwist_multiplies_the_series():
    first = exp_deficit_series(8)
    other = TruncatedSeries([1, Fraction(1, 3)], 8)
    tw = twist_theory(twist_theory(CHOW_Q, first), other)
    assert tw.twist == first * other
    assert tw.base is CHOW_Q


def test_theory_validation():
    from rrcalc.theories import TheoryModel

    with pytest.raises(ValueError):
        TheoryModel("motivic", INTEGERS)
    with pytest.raises(ValueError):
        TheoryModel("twisted", RATIONALS)  # missing base and series
    with pytest.raises(ValueError):
        TheoryModel("chow", INTEGERS, twist=exp_deficit_series(4))
    with pytest.raises(ValueError):
        TheoryModel("twisted", INTEGERS, CHOW_Q, exp_deficit_series(4))


def test_repr_and_generator_symbol():
    assert repr(CHOW) == "<chow over integers>"
    assert repr(K_THEORY) == "<ktheory over integers>"
    assert "twisted chow" in repr(exp_deficit_twist(6))
    assert CHOW.generator_symbol == "h"
    assert K_THEORY.generator_symbol == "t"
    assert exp_deficit_twist(6).generator_symbol == "h"


# ---------------------------------------------------------------- rings and classes


def test_ring_of_naming():
    assert str(ring_of(CHOW, (2,))) == "Z[h]/(h^3)"
    assert str(ring_of(K_THEORY, (1, 3))) == "Z[t1, t2]/(t1^2, t2^4)"
    assert str(ring_of(CHOW_Q, 2)) == "Q[h]/(h^3)"
    assert ring_of(exp_deficit_twist(), (1, 1)).scalars == RATIONALS


def test_line_class_values():
    spec = ring_of(K_THEORY, (2,))
    t = spec.generator(0)
    one = spec.one()
    assert k_line_class(2, 1) == one + t + t * t
    assert k_line_class(2, -1) == one - t
    assert k_line_class(2, 0) == one


def test_line_classes_multiply():
    assert k_line_class(3, 2) * k_line_class(3, -2) == ring_of(K_THEORY, (3,)).one()
    assert k_line_class(3, 1) ** 2 == k_line_class(3, 2)
    assert k_line_class(4, 3) == k_line_class(4, 1) * k_line_class(4, 2)


def test_tangent_class_on_the_line():
    tk = tangent_class(K_THEORY, 1)
    spec = ring_of(K_THEORY, (1,))
    assert tk.rank == 1
    assert tk.total_chern == spec.one() + 2 * spec.generator(0)

    tc = tangent_class(CHOW, 2)
    spec = ring_of(CHOW, (2,))
    h = spec.generator(0)
    assert tc.rank == 2
    assert tc.total_chern == (spec.one() + h) ** 3


def test_space_tangent_is_a_product():
    tb = space_tangent(CHOW, (1, 2))
    spec = ring_of(CHOW, (1, 2))
    h1, h2 = spec.generator(0), spec.generator(1)
    assert tb.rank == 3
    assert tb.total_chern == (spec.one() + h1) ** 2 * (spec.one() + h2) ** 3


# ---------------------------------------------------------------- morphisms


def test_immersion_pushforward_shifts_exponents():
    f = linear_immersion(CHOW, 1, 3)
    spec = ring_of(CHOW, (1,))
    target = ring_of(CHOW, (3,))
    h = target.generator(0)
    assert pushforward(CHOW, f, spec.one() + spec.generator(0)) == h**2 + h**3


def test_point_pushforward_tables():
    p = point_projection(CHOW, 2)
    spec = ring_of(CHOW, (2,))
    h = spec.generator(0)
    point = ring_of(CHOW, ())
    assert pushforward(CHOW, p, h * h) == point.one()
    assert pushforward(CHOW, p, h) == point.zero()
    assert pushforward(CHOW, p, spec.one()) == point.zero()

    q = point_projection(K_THEORY, 2)
    kspec = ring_of(K_THEORY, (2,))
    t = kspec.generator(0)
    kpoint = ring_of(K_THEORY, ())
    for a in (kspec.one(), t, t * t):
        assert pushforward(K_THEORY, q, a) == kpoint.one()
    assert pushforward(K_THEORY, q, kspec.one() + 2 * t) == 3 * kpoint.one()


def test_k_point_table_agrees_with_euler_characteristics():
    # t^r expands as sum_j (-1)^j C(r, j) [O(-j)], and chi(P^n, O(-j))
    # vanishes for 1 <= j <= n, so only the j = 0 term survives: always 1.
    from rrcalc import euler_characteristic_pn

    for n in range(1, 5):
        p = point_projection(K_THEORY, n)
        spec = ring_of(K_THEORY, (n,))
        t = spec.generator(0)
        point_one = ring_of(K_THEORY, ()).one()
        for r in range(n + 1):
            expected = sum(
                (-1) ** j
                * _binomial(r, j)
                * euler_characteristic_pn(n, -j)
                for j in range(r + 1)
            )
            assert expected == 1
            assert pushforward(K_THEORY, p, t**r) == point_one


def _binomial(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def test_factor_projection_pushforward():
    f = factor_projection(CHOW, (1, 2), 0)
    spec = ring_of(CHOW, (1, 2))
    h1, h2 = spec.generator(0), spec.generator(1)
    target = ring_of(CHOW, (2,))
    h = target.generator(0)
    assert pushforward(CHOW, f, h1 * h2**2) == h**2
    assert pushforward(CHOW, f, h2**2) == target.zero()

    g = factor_projection(K_THEORY, (1, 2), 1)
    kspec = ring_of(K_THEORY, (1, 2))
    t1, t2 = kspec.generator(0), kspec.generator(1)
    ktarget = ring_of(K_THEORY, (1,))
    a = t1 * (kspec.one() + t2 + t2**2)
    assert pushforward(K_THEORY, g, a) == 3 * ktarget.generator(0)


def test_pullback_inserts_and_truncates():
    f = factor_projection(CHOW, (1, 2), 0)
    target = ring_of(CHOW, (2,))
    spec = ring_of(CHOW, (1, 2))
    assert pullback(CHOW, f, target.generator(0)) == spec.generator(1)

    i = linear_immersion(CHOW, 1, 3)
    big = ring_of(CHOW, (3,))
    h = big.generator(0)
    small = ring_of(CHOW, (1,))
    assert pullback(CHOW, i, h + h**2 + h**3) == small.generator(0)


def test_projection_formula_spot_check():
    # f_*(f^*(b) * a) = b * f_*(a), one concrete instance
    f = linear_immersion(CHOW, 1, 3)
    big = ring_of(CHOW, (3,))
    small = ring_of(CHOW, (1,))
    b = big.one() + 2 * big.generator(0)
    a = small.one() + small.generator(0)
    lhs = pushforward(CHOW, f, pullback(CHOW, f, b) * a)
    assert lhs == b * pushforward(CHOW, f, a)


def test_morphism_factories_validate():
    with pytest.raises(ValueError):
        linear_immersion(CHOW, 3, 1)
    with pytest.raises(ValueError):
        linear_immersion(CHOW, 1, 3, within=(1, 2), factor=2)
    with pytest.raises(ValueError):
        linear_immersion(CHOW, 1, 3, within=(2, 2), factor=0)
    with pytest.raises(ValueError):
        factor_projection(CHOW, (1, 2), 2)


def test_pushforward_and_pullback_reject_wrong_rings():
    f = linear_immersion(CHOW, 1, 3)
    wrong = ring_of(CHOW, (2,)).one()
    with pytest.raises(SpecMismatch):
        pushforward(CHOW, f, wrong)
    with pytest.raises(SpecMismatch):
        pullback(CHOW, f, wrong)


def test_morphism_in_rebuilds_for_another_theory():
    f = linear_immersion(CHOW, 2, 4)
    g = morphism_in(K_THEORY, f)
    assert (g.kind, g.source, g.target, g.factor) == (
        f.kind,
        f.source,
        f.target,
        f.factor,
    )
    assert g.virtual_tangent.total_chern.spec == ring_of(K_THEORY, (2,))

    p = morphism_in(CHOW_Q, point_projection(CHOW, 3))
    assert p.kind == "point_projection"
    assert p.virtual_tangent.total_chern.spec.scalars == RATIONALS

    q = morphism_in(CHOW, factor_projection(K_THEORY, (1, 2), 1))
    assert q.kind == "factor_projection"
    assert q.target == (1,)


def test_immersion_on_a_product_factor():
    f = linear_immersion(K_THEORY, 1, 3, within=(1, 1), factor=1)
    spec = ring_of(K_THEORY, (1, 1))
    target = ring_of(K_THEORY, (1, 3))
    t1, t2 = spec.generator(0), spec.generator(1)
    u1, u2 = target.generator(0), target.generator(1)
    assert f.target == (1, 3)
    assert pushforward(K_THEORY, f, t1 * t2) == u1 * u2**3


# ---------------------------------------------------------------- twisted pushforward


def test_twisted_immersion_pushforward_closed_form():
    # i_*(1) lands on (1 - e^(-h))^(n - m), the twisted Euler class
    from rrcalc import eval_series

    tw = exp_deficit_twist(12)
    for m, n in ((1, 3), (2, 3), (1, 4), (2, 5)):
        f = linear_immersion(tw, m, n)
        one = ring_of(tw, (m,)).one()
        got = pushforward(tw, f, one)
        target = ring_of(tw, (n,))
        h = target.generator(0)
        deficit = eval_series(exp_deficit_series(n).times_t(), h)
        assert got == deficit ** (n - m)


def test_twisted_point_pushforward_is_the_todd_integral():
    tw = exp_deficit_twist(12)
    for n in range(5):
        p = point_projection(tw, n)
        one = ring_of(tw, (n,)).one()
        assert pushforward(tw, p, one) == ring_of(tw, ()).one()


# ---------------------------------------------------------------- universal morphism


def test_universal_morphism_frozen_values():
    spec = ring_of(CHOW_Q, (3,))
    h = spec.generator(0)
    half, sixth = Fraction(1, 2), Fraction(1, 6)

    got = universal_morphism(k_line_class(3, 1))
    assert got == spec.one() + h + half * h**2 + sixth * h**3

    t = ring_of(K_THEORY, (3,)).generator(0)
    assert universal_morphism(t) == h - half * h**2 + sixth * h**3


def test_universal_morphism_on_a_product():
    spec = ring_of(K_THEORY, (1, 1))
    t1, t2 = spec.generator(0), spec.generator(1)
    image = universal_morphism(t1 * t2)
    q = ring_of(CHOW_Q, (1, 1))
    assert image == q.generator(0) * q.generator(1)


def test_universal_morphism_rejects_non_k_input():
    with pytest.raises(SpecMismatch):
        universal_morphism(ring_of(CHOW, (2,)).one())


def test_universal_morphism_is_a_ring_map_spot_check():
    a = k_line_class(4, 2)
    b = k_line_class(4, -1)
    assert universal_morphism(a * b) == universal_morphism(a) * universal_morphism(b)
    assert universal_morphism(a + b) == universal_morphism(a) + universal_morphism(b)


# ---------------------------------------------------------------- graded leading terms


def test_gk_class_requires_homogeneity():
    spec = ring_of(CHOW_Q, (3,))
    h = spec.generator(0)
    GKClass(2, h**2)  # fine
    with pytest.raises(ValueError):
        GKClass(1, h + h**2)


def test_gk_leading_morphism():
    spec = ring_of(K_THEORY, (3,))
    t = spec.generator(0)
    led = gk_leading_morphism(t**2, 2)  # image (h - h^2/2 + ...)^2
    q = ring_of(CHOW_Q, (3,))
    assert led.level == 2
    assert led.representative == q.generator(0) ** 2

    with pytest.raises(FiltrationViolation):
        gk_leading_morphism(k_line_class(3, 1), 1)


# ---------------------------------------------------------------- diagonal classes


def test_diagonal_chow_is_antidiagonal():
    for n in range(5):
        delta = diagonal_class(CHOW, n)
        assert dict(delta.terms) == {(r, n - r): 1 for r in range(n + 1)}


def test_diagonal_k_line_is_koszul():
    delta = diagonal_class(K_THEORY, 1)
    spec = delta.spec
    t1, t2 = spec.generator(0), spec.generator(1)
    assert delta == t1 + t2 - t1 * t2


def test_diagonal_k_plane_frozen_table():
    delta = diagonal_class(K_THEORY, 2)
    assert dict(delta.terms) == {
        (0, 2): 1,
        (1, 1): 1,
        (2, 0): 1,
        (1, 2): -1,
        (2, 1): -1,
    }


def test_diagonal_restricts_to_the_point_class():
    # (1 x i)^* of the diagonal, i the inclusion of a point, is the
    # class of that point: top power in chow, all-powers sum in K.
    n = 3
    delta = diagonal_class(CHOW, n)
    f = linear_immersion(CHOW, 0, n, within=(n, 0), factor=1)
    restricted = pullback(CHOW, f, delta)
    spec = ring_of(CHOW, (n, 0))
    assert restricted == spec.generator(0) ** n


def test_point_space_diagonal():
    assert diagonal_class(CHOW, 0) == ring_of(CHOW, (0, 0)).one()
    assert diagonal_class(K_THEORY, 0) == ring_of(K_THEORY, (0, 0)).one()


# ---------------------------------------------------------------- duality metric


def test_metric_matrices_frozen():
    chow2 = metric_check(CHOW, 2)
    assert chow2.matrix == ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    k1 = metric_check(K_THEORY, 1)
    assert k1.matrix == ((0, 1), (1, -1))


def test_metric_determinants():
    signs = [1, -1, -1, 1, 1, -1, -1]
    for theory in (CHOW, K_THEORY):
        for n, expected in enumerate(signs):
            report = metric_check(theory, n)
            assert report.determinant == expected
            assert report.unit


def test_metric_over_rationals_checks_nonvanishing():
    report = metric_check(CHOW_Q, 2)
    assert report.unit
    assert report.determinant == -1
