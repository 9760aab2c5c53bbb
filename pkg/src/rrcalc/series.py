"""Truncated formal power series with exact rational coefficients.

A :class:`TruncatedSeries` stores the coefficients c0..cN of a series
modulo t^(N+1).  All arithmetic is exact (`fractions.Fraction`), so the
identities the rest of the calculator relies on hold on the nose: the
Todd series really is the reciprocal of (1 - e^-t)/t, reversion really
round-trips, and no coefficient is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

Rational = Fraction

Scalar = Union[int, Fraction]


class ZeroConstantTerm(ValueError):
    """Inversion of a series whose constant term is zero."""


class NonzeroInnerConstant(ValueError):
    """Composition with an inner series whose constant term is not zero."""


class NotReversible(ValueError):
    """Reversion of a series without c0 = 0 and c1 invertible."""


def _rational(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"series coefficients must be rational, got {value!r}")


class TruncatedSeries:
    """A series c0 + c1*t + ... + cN*t^N, unknown beyond order N.

    Values are immutable; every operation returns a fresh series.  Binary
    operations between series of different orders truncate to the smaller
    order, since nothing is known about the longer series' tail partner.
    """

    __slots__ = ("coefficients",)

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Scalar], order: int | None = None):
        coeffs = [_rational(c) for c in coefficients]
        if order is not None:
            if order < 0:
                raise ValueError("series order must be >= 0")
            del coeffs[order + 1 :]
            coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        if not coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Fraction:
        # Reading beyond the order would invent information; refuse.
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coefficients[n]

    def truncated(self, order: int) -> "TruncatedSeries":
        """The same series cut down to a smaller order."""
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coefficients[: order + 1])

    def times_t(self) -> "TruncatedSeries":
        """t * self.  Knowledge extends one order further: t*f mod t^(N+2)."""
        return TruncatedSeries((Fraction(0),) + self.coefficients)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coefficients)
        return f"TruncatedSeries([{body}])"

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coefficients[k] + other.coefficients[k] for k in range(n + 1)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coefficients])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _rational(other)
            return TruncatedSeries([c * a for a in self.coefficients])
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coefficients[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coefficients[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse: self * result = 1 up to the order."""
        c0 = self.coefficients[0]
        if c0 == 0:
            raise ZeroConstantTerm("cannot invert a series with zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / c0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coefficients[i] * out[k - i]
            out[k] = -acc / c0
        return TruncatedSeries(out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(t)), requiring inner to have zero constant term."""
        if inner.coefficients[0] != 0:
            raise NonzeroInnerConstant(
                "inner series of a composition must have zero constant term"
            )
        n = min(self.order, inner.order)
        g = inner.truncated(n)
        # Horner evaluation: ((cN*g + cN-1)*g + ...) + c0, all at order n.
        result = TruncatedSeries([self.coefficients[n]], n)
        for k in range(n - 1, -1, -1):
            result = result * g + TruncatedSeries([self.coefficients[k]], n)
        return result

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse g with self(g(t)) = g(self(t)) = t."""
        if self.coefficients[0] != 0:
            raise NotReversible("reversion needs zero constant term")
        if self.order < 1 or self.coefficients[1] == 0:
            raise NotReversible("reversion needs an invertible linear coefficient")
        c1 = self.coefficients[1]
        out = [Fraction(0), 1 / c1]
        # Successive substitution: choose g_k so that [t^k] self(g) vanishes.
        for k in range(2, self.order + 1):
            partial = TruncatedSeries(out, k)
            h = self.truncated(k).compose(partial)
            out.append(-h.coefficients[k] / c1)
        return TruncatedSeries(out)


def exponential_series(order: int) -> TruncatedSeries:
    """e^t = sum t^n / n!."""
    return TruncatedSeries([Fraction(1, factorial(n)) for n in range(order + 1)])


def exp_deficit_series(order: int) -> TruncatedSeries:
    """(1 - e^-t)/t = sum (-1)^n t^n / (n+1)!.

    This is the invertible series whose twist of the additive model
    produces the multiplicative one; its reciprocal is the Todd series.
    """
    return TruncatedSeries(
        [Fraction((-1) ** n, factorial(n + 1)) for n in range(order + 1)]
    )


def todd_series(order: int) -> TruncatedSeries:
    """t / (1 - e^-t) = 1 + t/2 + t^2/12 - t^4/720 + ..."""
    return exp_deficit_series(order).inverse()


def log_one_plus_series(order: int) -> TruncatedSeries:
    """log(1 + t) = sum (-1)^(n+1) t^n / n."""
    coeffs = [Fraction(0)]
    coeffs.extend(Fraction((-1) ** (n + 1), n) for n in range(1, order + 1))
    return TruncatedSeries(coeffs)


_STANDARD = {
    "exp_deficit": exp_deficit_series,
    "todd": todd_series,
    "exponential": exponential_series,
}


def standard_series(name: str, order: int) -> TruncatedSeries:
    """One of the named series: exp_deficit, todd, or exponential."""
    try:
        maker = _STANDARD[name]
    except KeyError:
        raise ValueError(
            f"unknown series {name!r}; expected one of {sorted(_STANDARD)}"
        ) from None
    if order < 0:
        raise ValueError("series order must be >= 0")
    return maker(order)
