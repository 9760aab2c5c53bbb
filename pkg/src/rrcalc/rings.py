"""Polynomial rings with nilpotent generators: A[x1..xk]/(x_i^(d_i+1)).

Chow rings and K-theory rings of products of projective spaces have
exactly this shape, with one degree-1 generator per factor.  Elements are
stored sparsely as {exponent vector: coefficient}; multiplication drops
any monomial whose exponent overflows its bound, which is the whole
content of the quotient.  Scalars are exact integers or exact rationals,
fixed once per ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .series import TruncatedSeries

INTEGERS = "integers"
RATIONALS = "rationals"

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]


class SpecMismatch(ValueError):
    """Mixing elements of different rings in one operation."""


class NonUnitConstant(ValueError):
    """Inverting an element whose constant term is not a unit."""


class NonNilpotentArgument(ValueError):
    """Series evaluation at an element with nonzero constant term."""


class OutOfBounds(ValueError):
    """An exponent vector that does not fit the ring's bounds."""


class IntegerDomain(ValueError):
    """A computation that needs rational scalars ran over the integers."""


class InsufficientOrder(ValueError):
    """A series argument was truncated too early for the ring at hand."""


@dataclass(frozen=True)
class RingSpec:
    """Shape of a ring A[x1..xk]/(x_i^(d_i+1)) with A = Z or Q.

    `bounds[i]` is the largest surviving exponent of variable i; k = 0
    describes the coefficient ring itself.
    """

    variables: tuple[str, ...]
    bounds: tuple[int, ...]
    scalars: str = INTEGERS

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "bounds", tuple(int(b) for b in self.bounds))
        if len(self.variables) != len(self.bounds):
            raise ValueError("one bound per variable required")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if any(b < 0 for b in self.bounds):
            raise ValueError("bounds must be >= 0")
        if self.scalars not in (INTEGERS, RATIONALS):
            raise ValueError(f"unknown scalar domain {self.scalars!r}")

    def __str__(self) -> str:
        ring = "Z" if self.scalars == INTEGERS else "Q"
        if not self.variables:
            return ring
        rels = ", ".join(f"{v}^{d + 1}" for v, d in zip(self.variables, self.bounds))
        return f"{ring}[{', '.join(self.variables)}]/({rels})"

    @property
    def total_degree(self) -> int:
        """Largest total degree of a surviving monomial, sum of the bounds."""
        return sum(self.bounds)

    def coerce(self, value: Scalar) -> Scalar:
        """Bring a scalar into this ring's coefficient domain."""
        if self.scalars == RATIONALS:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
        else:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction):
                if value.denominator == 1:
                    return value.numerator
                raise IntegerDomain(
                    f"{value} is not an integer; widen the ring to rational scalars"
                )
        raise TypeError(f"cannot use {value!r} as a scalar")

    def check_exponents(self, exponents: Exponents) -> Exponents:
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != len(self.variables):
            raise OutOfBounds(
                f"expected {len(self.variables)} exponents, got {len(exponents)}"
            )
        for e, d in zip(exponents, self.bounds):
            if e < 0 or e > d:
                raise OutOfBounds(f"exponent vector {exponents} exceeds bounds {self.bounds}")
        return exponents

    def element(self, terms: Mapping[Exponents, Scalar]) -> "RingElement":
        """Build an element from an exponent-vector -> coefficient table."""
        return RingElement(self, terms)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.scalar(1)

    def scalar(self, value: Scalar) -> "RingElement":
        return RingElement(self, {(0,) * len(self.variables): value})

    def generator(self, index: int) -> "RingElement":
        """The index-th variable as an element; zero when its bound is 0."""
        if not 0 <= index < len(self.variables):
            raise IndexError(f"no variable {index} in {self}")
        if self.bounds[index] == 0:
            return self.zero()
        exps = [0] * len(self.variables)
        exps[index] = 1
        return RingElement(self, {tuple(exps): 1})

    def generators(self) -> list["RingElement"]:
        return [self.generator(i) for i in range(len(self.variables))]

    def monomials(self) -> Iterable[Exponents]:
        """All surviving exponent vectors, in graded-lexicographic order."""
        everything = itertools.product(*(range(d + 1) for d in self.bounds))
        return sorted(everything, key=_render_key)

    def rationalized(self) -> "RingSpec":
        if self.scalars == RATIONALS:
            return self
        return RingSpec(self.variables, self.bounds, RATIONALS)


def _render_key(exponents: Exponents):
    # Graded order first; within a degree, larger leading exponents first,
    # so that e.g. x1^2 renders before x1*x2 before x2^2.
    return (sum(exponents), tuple(-e for e in exponents))


class RingElement:
    """A sparse polynomial in a :class:`RingSpec`, immutable by convention."""

    __slots__ = ("spec", "terms")

    spec: RingSpec
    terms: dict[Exponents, Scalar]

    def __init__(self, spec: RingSpec, terms: Mapping[Exponents, Scalar]):
        table: dict[Exponents, Scalar] = {}
        for exponents, coefficient in terms.items():
            exponents = spec.check_exponents(exponents)
            coefficient = spec.coerce(coefficient)
            if coefficient != 0:
                table[exponents] = coefficient
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", table)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    def _require_same_spec(self, other: "RingElement"):
        if self.spec != other.spec:
            raise SpecMismatch(f"cannot mix {self.spec} with {other.spec}")

    @property
    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.spec.variables), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.spec.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.spec.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        self._require_same_spec(other)
        out = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            acc = out.get(exponents, 0) + coefficient
            if acc == 0:
                out.pop(exponents, None)
            else:
                out[exponents] = acc
        return _raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.spec.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.spec.scalar(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.spec.coerce(other)
            if c == 0:
                return self.spec.zero()
            return _raw(self.spec, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._require_same_spec(other)
        bounds = self.spec.bounds
        out: dict[Exponents, Scalar] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exponents = tuple(a + b for a, b in zip(ea, eb))
                # Nilpotency: any overflowing monomial is zero.
                if any(e > d for e, d in zip(exponents, bounds)):
                    continue
                acc = out.get(exponents, 0) + ca * cb
                if acc == 0:
                    out.pop(exponents, None)
                else:
                    out[exponents] = acc
        return _raw(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "RingElement":
        """Multiplicative inverse via the finite geometric series.

        The constant term must be a unit: +-1 over the integers, nonzero
        over the rationals.  The nilpotent part then contributes only
        finitely many correction terms.
        """
        c0 = self.constant_term
        if self.spec.scalars == INTEGERS:
            if c0 not in (1, -1):
                raise NonUnitConstant(f"constant term {c0} is not a unit over Z")
            lead = c0  # 1/c0 = c0 for +-1
        else:
            if c0 == 0:
                raise NonUnitConstant("constant term 0 is not invertible")
            lead = 1 / c0
        # self * lead = 1 + nil with nil nilpotent, so the inverse is the
        # finite sum (1 + nil)^-1 = 1 - nil + nil^2 - ...
        nil = self.spec.one() - self * lead
        result = self.spec.one()
        power = self.spec.one()
        while True:
            power = power * nil
            if power.is_zero():
                break
            result = result + power
        return result * lead

    def graded_component(self, degree: int) -> "RingElement":
        """Sum of the terms of total degree `degree` (variables have degree 1)."""
        return _raw(
            self.spec,
            {e: c for e, c in self.terms.items() if sum(e) == degree},
        )

    def coefficient_of(self, exponents: Exponents) -> Scalar:
        """The coefficient of one monomial; 0 if absent."""
        exponents = self.spec.check_exponents(exponents)
        return self.terms.get(exponents, 0)

    def widened(self) -> "RingElement":
        """The same element over rational scalars."""
        return RingElement(self.spec.rationalized(), self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponents in sorted(self.terms, key=_render_key):
            coefficient = self.terms[exponents]
            body = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.spec.variables, exponents)
                if e
            )
            if not body:
                text = str(abs(coefficient))
            elif abs(coefficient) == 1:
                text = body
            else:
                text = f"{abs(coefficient)}*{body}"
            if not parts:
                parts.append(f"-{text}" if coefficient < 0 else text)
            else:
                parts.append(f"- {text}" if coefficient < 0 else f"+ {text}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self} in {self.spec}>"


def _raw(spec: RingSpec, terms: dict[Exponents, Scalar]) -> RingElement:
    # Internal constructor for tables that are already normalized.
    element = object.__new__(RingElement)
    object.__setattr__(element, "spec", spec)
    object.__setattr__(element, "terms", terms)
    return element


def eval_series(series: TruncatedSeries, argument: RingElement) -> RingElement:
    """sum series[n] * argument^n, a finite sum by nilpotency.

    The argument must have zero constant term.  If some power of the
    argument is still nonzero beyond the series' truncation order the
    result would be wrong, so that case raises InsufficientOrder.
    """
    if argument.constant_term != 0:
        raise NonNilpotentArgument(
            "series can only be evaluated at elements with zero constant term"
        )
    spec = argument.spec
    result = spec.scalar(series[0])
    power = spec.one()
    n = 1
    while True:
        power = power * argument
        if power.is_zero():
            break
        if n > series.order:
            raise InsufficientOrder(
                f"series of order {series.order} is too short: argument^{n} != 0"
            )
        coefficient = series[n]
        if coefficient != 0:
            result = result + power * coefficient
        n += 1
    return result
