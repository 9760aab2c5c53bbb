"""Chern-class calculus on virtual bundles.

A bundle is represented by its rank and total Chern class only; Chern
roots are never materialized.  Everything either breaks the total class
into its graded pieces (the individual Chern classes, elementary
symmetric in the roots) or converts between those and the power sums via
Newton's identities, which is all a genus ever needs:

    additive extension        F_+(E) = F(a_1) + ... + F(a_r)
    multiplicative extension  F_x(E) = F(a_1) * ... * F(a_r)

The Chern character is the additive extension of e^t, the Todd class the
multiplicative extension of t/(1 - e^-t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .rings import (
    RATIONALS,
    InsufficientOrder,
    IntegerDomain,
    NonUnitConstant,
    RingElement,
    RingSpec,
    eval_series,
)
from .series import (
    TruncatedSeries,
    exponential_series,
    log_one_plus_series,
    todd_series,
)


class RankMismatch(ValueError):
    """A Chern character whose degree-0 part disagrees with the stated rank."""


@dataclass(frozen=True)
class BundleClass:
    """A virtual bundle: integer rank plus total Chern class.

    The total Chern class must have constant term exactly 1; negative
    ranks describe formal differences of bundles.
    """

    rank: int
    total_chern: RingElement

    def __post_init__(self):
        if self.total_chern.constant_term != 1:
            raise ValueError("total Chern class must have constant term 1")

    @property
    def spec(self) -> RingSpec:
        return self.total_chern.spec

    def chern_class(self, n: int) -> RingElement:
        """c_n, the degree-n graded piece of the total Chern class."""
        return self.total_chern.graded_component(n)

    def chern_classes(self) -> list[RingElement]:
        """[c_1, c_2, ...] up to the ring's total nilpotency degree."""
        m = self.spec.total_degree
        return [self.total_chern.graded_component(n) for n in range(1, m + 1)]


def whitney_sum(e: BundleClass, f: BundleClass) -> BundleClass:
    """Direct sum: ranks add, total Chern classes multiply."""
    return BundleClass(e.rank + f.rank, e.total_chern * f.total_chern)


def whitney_difference(e: BundleClass, f: BundleClass) -> BundleClass:
    """Virtual difference e - f; the total Chern class divides out."""
    return BundleClass(e.rank - f.rank, e.total_chern * f.total_chern.inverse())


def dual_bundle(e: BundleClass) -> BundleClass:
    """The dual in the additive model: roots negate, c_i picks up (-1)^i."""
    total = e.spec.zero()
    for n in range(e.spec.total_degree + 1):
        total = total + e.total_chern.graded_component(n) * ((-1) ** n)
    return BundleClass(e.rank, total)


def newton_e_to_p(elementary: Sequence[RingElement], up_to: int) -> list[RingElement]:
    """Power sums p_1..p_m from elementary symmetric functions e_1..e_k.

    Newton's identity p_n = e1*p_(n-1) - e2*p_(n-2) + ... + (-1)^(n-1)*n*e_n,
    with e_i = 0 beyond the supplied list.  Division-free, so it works
    over either scalar domain.
    """
    if not elementary:
        raise ValueError("need at least e_1 (possibly zero) to fix the ring")
    spec = elementary[0].spec

    def e(i: int) -> RingElement:
        return elementary[i - 1] if i <= len(elementary) else spec.zero()

    p: list[RingElement] = []
    for n in range(1, up_to + 1):
        acc = e(n) * ((-1) ** (n - 1) * n)
        for i in range(1, n):
            acc = acc + e(i) * p[n - i - 1] * ((-1) ** (i - 1))
        p.append(acc)
    return p


def newton_p_to_e(power_sums: Sequence[RingElement], up_to: int) -> list[RingElement]:
    """Elementary symmetric functions from power sums; needs rationals.

    Inverts the same identity: n*e_n = sum_{i=1..n} (-1)^(i-1) e_(n-i) p_i,
    so each step divides by n.
    """
    if not power_sums:
        raise ValueError("need at least p_1 (possibly zero) to fix the ring")
    spec = power_sums[0].spec
    if spec.scalars != RATIONALS:
        raise IntegerDomain("recovering e_n from power sums divides by n")

    def p(i: int) -> RingElement:
        return power_sums[i - 1] if i <= len(power_sums) else spec.zero()

    e: list[RingElement] = []
    for n in range(1, up_to + 1):
        acc = p(n) * ((-1) ** (n - 1))
        for i in range(1, n):
            acc = acc + e[n - i - 1] * p(i) * ((-1) ** (i - 1))
        e.append(acc * Fraction(1, n))
    return e


def _power_sums(e: BundleClass) -> list[RingElement]:
    if e.spec.total_degree == 0:
        return []  # a point ring has no positive-degree classes
    return newton_e_to_p(e.chern_classes(), e.spec.total_degree)


def additive_extension(series: TruncatedSeries, e: BundleClass) -> RingElement:
    """F(a_1) + ... + F(a_r) = F[0]*rank + sum F[n]*p_n."""
    result = e.spec.scalar(series[0] * e.rank)
    for n, p_n in enumerate(_power_sums(e), start=1):
        if p_n.is_zero():
            continue
        if n > series.order:
            raise InsufficientOrder(
                f"series of order {series.order} is too short: p_{n} != 0"
            )
        result = result + p_n * series[n]
    return result


def multiplicative_extension(series: TruncatedSeries, e: BundleClass) -> RingElement:
    """F(a_1) * ... * F(a_r), a unit element.

    Computed log-free in the roots but not in the coefficients: with
    F = F0*(1 + G), the product is F0^rank * exp(sum log(1+G)(a_i)), and
    both log(1+G) and exp are exact truncated series.  Negative ranks
    invert: F_x(-E) = F_x(E)^(-1).
    """
    c0 = series[0]
    if c0 == 0:
        raise NonUnitConstant("multiplicative extension needs F(0) invertible")
    if e.spec.scalars != RATIONALS:
        raise IntegerDomain("multiplicative extensions work over rational scalars")
    reduced = series * (Fraction(1) / c0)
    gap = reduced - TruncatedSeries([1], reduced.order)
    log_part = log_one_plus_series(reduced.order).compose(gap)
    exponent = e.spec.zero()
    for n, p_n in enumerate(_power_sums(e), start=1):
        if p_n.is_zero():
            continue
        if n > log_part.order:
            raise InsufficientOrder(
                f"series of order {series.order} is too short: p_{n} != 0"
            )
        exponent = exponent + p_n * log_part[n]
    value = eval_series(exponential_series(e.spec.total_degree), exponent)
    return value * (Fraction(c0) ** e.rank)


def chern_character(e: BundleClass) -> RingElement:
    """rank + p_1 + p_2/2! + p_3/3! + ..., the additive extension of e^t."""
    return additive_extension(exponential_series(e.spec.total_degree), e)


def todd_class(e: BundleClass) -> RingElement:
    """Multiplicative extension of t/(1 - e^-t)."""
    return multiplicative_extension(todd_series(e.spec.total_degree), e)


def weight_component(element: RingElement, weight: int) -> RingElement:
    """Terms of the given weighted degree, generator i carrying weight i + 1.

    Ring generators are all degree 1 to the quotient ring, so expansions
    in abstract Chern symbols c_1..c_m need their own grading.
    """
    picked = {}
    for exps, c in element.terms.items():
        if sum((i + 1) * e for i, e in enumerate(exps)) == weight:
            picked[exps] = c
    return element.spec.element(picked)


def _symbol_ring(symbols: Sequence[str], order: int) -> RingSpec:
    # Bound `order` per symbol: a monomial of weight <= order never overflows.
    return RingSpec(tuple(symbols), (order,) * len(symbols), RATIONALS)


def character_rows(rank: int, symbols: Sequence[str], order: int) -> list[RingElement]:
    """ch_0 .. ch_order in abstract Chern symbols; entry n is the weight-n row.

    Row 0 is the rank, row n is p_n/n! with p_n the Newton power sum of
    the symbols, so c_1, (c_1^2 - 2c_2)/2, ... with exact coefficients.
    """
    spec = _symbol_ring(symbols, order)
    rows = [spec.scalar(rank)]
    power_sums = (
        newton_e_to_p(list(spec.generators()), order) if symbols and order else []
    )
    for n in range(1, order + 1):
        if power_sums:
            rows.append(power_sums[n - 1] * Fraction(1, factorial(n)))
        else:
            rows.append(spec.zero())
    return rows


def todd_rows(symbols: Sequence[str], order: int) -> list[RingElement]:
    """Td_0 .. Td_order in abstract Chern symbols, weight-graded.

    Rank never enters: the Todd series has constant term 1.  The rows
    come out of the same log/exp route as multiplicative_extension, with
    the exponential taken deep enough that no alive power is dropped.
    """
    spec = _symbol_ring(symbols, order)
    if not symbols or order == 0:
        return [spec.one()] + [spec.zero()] * order
    power_sums = newton_e_to_p(list(spec.generators()), order)
    series = todd_series(order)
    gap = series - TruncatedSeries([1], order)
    log_part = log_one_plus_series(order).compose(gap)
    exponent = spec.zero()
    for n in range(1, order + 1):
        exponent = exponent + power_sums[n - 1] * log_part[n]
    value = eval_series(exponential_series(spec.total_degree), exponent)
    return [weight_component(value, n) for n in range(order + 1)]


def chern_from_character(character: RingElement, rank: int) -> BundleClass:
    """Invert the Chern character: p_n = n! * ch_n, then Newton back to e_n."""
    if character.graded_component(0) != rank:
        raise RankMismatch(
            f"degree-0 part {character.graded_component(0)} does not equal rank {rank}"
        )
    spec = character.spec
    m = spec.total_degree
    power_sums = [
        character.graded_component(n) * factorial(n) for n in range(1, m + 1)
    ]
    total = spec.one()
    if power_sums:
        for e_n in newton_p_to_e(power_sums, m):
            total = total + e_n
    return BundleClass(rank, total)
