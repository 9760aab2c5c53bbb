"""Cohomology models on products of projective spaces.

Two concrete theories are modeled on X = P^d1 x ... x P^dk:

* the additive model ("chow"): Z[h1..hk]/(h_i^(d_i+1)), h_i the
  hyperplane class of factor i, group law x + y;
* the multiplicative model ("ktheory"): generators t_i = 1 - [O(-1)],
  the K-fundamental class of a hyperplane, group law x + y - xy.

Pullbacks substitute generators, pushforwards are monomial tables along
linear immersions and projections.  Twisting a theory by an invertible
series F keeps rings and pullbacks, replaces every pushforward f_* by
a |-> f_*(F_x(T_f)^(-1) * a), and conjugates the group law by
e(x) = x*F(x).  The universal morphism t_i |-> 1 - e^(-h_i) identifies
the multiplicative model with the additive one over the rationals; its
graded leading term is exposed separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import BundleClass, multiplicative_extension
from .rings import (
    INTEGERS,
    RATIONALS,
    NonUnitConstant,
    RingElement,
    RingSpec,
    Scalar,
    SpecMismatch,
    eval_series,
)
from .series import TruncatedSeries, exp_deficit_series

Dims = tuple[int, ...]


class SolverInconsistent(ValueError):
    """The diagonal-class constraints could not be satisfied."""


class FiltrationViolation(ValueError):
    """A class claimed to lie in filtration level d has lower-degree terms."""


def _dims(dims) -> Dims:
    if isinstance(dims, int):
        dims = (dims,)
    dims = tuple(int(d) for d in dims)
    if any(d < 0 for d in dims):
        raise ValueError("factor dimensions must be >= 0")
    return dims


def _names(base: str, count: int) -> tuple[str, ...]:
    if count == 1:
        return (base,)
    return tuple(f"{base}{i + 1}" for i in range(count))


@dataclass(frozen=True)
class TheoryModel:
    """A cohomology theory: name, scalar domain, and (if twisted) its data."""

    name: str
    scalars: str
    base: "TheoryModel | None" = None
    twist: TruncatedSeries | None = None

    def __post_init__(self):
        if self.name not in ("chow", "ktheory", "twisted"):
            raise ValueError(f"unknown theory {self.name!r}")
        if self.name == "twisted":
            if self.base is None or self.twist is None:
                raise ValueError("a twisted theory needs a base and a series")
            if self.scalars != RATIONALS:
                raise ValueError("twisted theories carry rational scalars")
        elif self.base is not None or self.twist is not None:
            raise ValueError(f"{self.name} takes no twisting data")

    def __repr__(self) -> str:
        if self.name == "twisted":
            return f"<twisted {self.base.name} by order-{self.twist.order} series>"
        return f"<{self.name} over {self.scalars}>"

    @property
    def generator_symbol(self) -> str:
        if self.name == "chow":
            return "h"
        if self.name == "ktheory":
            return "t"
        return self.base.generator_symbol

    def law(self, a: RingElement, b: RingElement) -> RingElement:
        """The group law on first Chern classes: c1 of a tensor product.

        Arguments must be nilpotent classes in one ring.  The twisted law
        is the base law conjugated by e(x) = x*F(x); its reversion limits
        how deep a truncation the stored series can serve, and running
        past that raises InsufficientOrder.
        """
        if a.spec != b.spec:
            raise SpecMismatch("group law arguments must share a ring")
        if self.name == "chow":
            return a + b
        if self.name == "ktheory":
            return a + b - a * b
        conjugator = self.twist.times_t()
        inverse = conjugator.reversion()
        x = eval_series(inverse, a)
        y = eval_series(inverse, b)
        return eval_series(conjugator, self.base.law(x, y))

    def group_law(self, order: int) -> RingElement:
        """G(u, v) as an element of scalars[u, v]/(u^(order+1), v^(order+1))."""
        spec = RingSpec(("u", "v"), (order, order), self.scalars)
        return self.law(spec.generator(0), spec.generator(1))


CHOW = TheoryModel("chow", INTEGERS)
CHOW_Q = TheoryModel("chow", RATIONALS)
K_THEORY = TheoryModel("ktheory", INTEGERS)


def twist_theory(base: TheoryModel, series: TruncatedSeries) -> TheoryModel:
    """The theory with pushforwards f_*(F_x(T_f)^(-1) * -).

    Only one twist layer is kept: twisting a twisted theory multiplies
    the stored series, which composes the pushforward corrections.
    """
    if series[0] == 0:
        raise NonUnitConstant("a twisting series needs an invertible constant term")
    if base.name == "twisted":
        return TheoryModel("twisted", RATIONALS, base.base, base.twist * series)
    return TheoryModel("twisted", RATIONALS, base, series)


def ring_of(theory: TheoryModel, dims) -> RingSpec:
    """The theory's ring on P^d1 x ... x P^dk: one bound-d_i generator per factor."""
    dims = _dims(dims)
    return RingSpec(_names(theory.generator_symbol, len(dims)), dims, theory.scalars)


def k_line_class(n: int, m: int) -> RingElement:
    """[O(m)] in the K-theory ring of P^n: (1 - t)^(-m)."""
    spec = ring_of(K_THEORY, (n,))
    dual_hyperplane = spec.one() - spec.generator(0)  # [O(-1)]
    if m >= 0:
        return dual_hyperplane.inverse() ** m
    return dual_hyperplane ** (-m)


def tangent_class(theory: TheoryModel, n: int) -> BundleClass:
    """The tangent bundle of P^n: rank n, total Chern class (1 + g)^(n+1).

    The Euler sequence presents the tangent bundle as (n+1) copies of
    O(1) minus a trivial line, and g is the theory's first Chern class
    of O(1) in either model, so one formula serves both.
    """
    spec = ring_of(theory, (n,))
    return BundleClass(n, (spec.one() + spec.generator(0)) ** (n + 1))


def space_tangent(theory: TheoryModel, dims) -> BundleClass:
    """Tangent bundle of a product: factor tangents pulled back and summed."""
    dims = _dims(dims)
    spec = ring_of(theory, dims)
    total = spec.one()
    for i, d in enumerate(dims):
        total = total * (spec.one() + spec.generator(i)) ** (d + 1)
    return BundleClass(sum(dims), total)


@dataclass(frozen=True)
class Morphism:
    """A supported map f: source -> target, acting on one factor.

    `virtual_tangent` is T_f = T_Y - f*T_X in the source ring of the
    theory the descriptor was built for; the twisted pushforward is the
    only consumer.
    """

    kind: str
    source: Dims
    target: Dims
    factor: int
    virtual_tangent: BundleClass


def point_projection(theory: TheoryModel, n: int) -> Morphism:
    """p: P^n -> point."""
    return Morphism(
        "point_projection", (n,), (), 0, tangent_class(theory, n)
    )


def factor_projection(theory: TheoryModel, dims, which: int) -> Morphism:
    """Collapse factor `which` of a product; identity on the others."""
    dims = _dims(dims)
    if not 0 <= which < len(dims):
        raise ValueError(f"no factor {which} in {dims}")
    spec = ring_of(theory, dims)
    d = dims[which]
    tangent = BundleClass(d, (spec.one() + spec.generator(which)) ** (d + 1))
    target = dims[:which] + dims[which + 1 :]
    return Morphism("factor_projection", dims, target, which, tangent)


def linear_immersion(
    theory: TheoryModel, m: int, n: int, *, within=None, factor: int = 0
) -> Morphism:
    """i: P^m into P^n, linearly, on one factor of a product.

    `within` gives the source factor dimensions (default just (m,)); the
    target replaces factor `factor` by n.  The virtual tangent is minus
    the normal bundle: -(n - m) copies of O(1) on the embedded factor.
    """
    source = _dims(within) if within is not None else (m,)
    if not 0 <= factor < len(source):
        raise ValueError(f"no factor {factor} in {source}")
    if source[factor] != m:
        raise ValueError(f"factor {factor} of {source} is not {m}")
    if m > n:
        raise ValueError("an immersion cannot lower the dimension")
    spec = ring_of(theory, source)
    codim = n - m
    normal_inverse = ((spec.one() + spec.generator(factor)) ** codim).inverse()
    tangent = BundleClass(-codim, normal_inverse)
    target = source[:factor] + (n,) + source[factor + 1 :]
    return Morphism("linear_immersion", source, target, factor, tangent)


def morphism_in(theory: TheoryModel, f: Morphism) -> Morphism:
    """The same geometric map, described for another theory."""
    if f.kind == "point_projection":
        return point_projection(theory, f.source[0])
    if f.kind == "factor_projection":
        return factor_projection(theory, f.source, f.factor)
    return linear_immersion(
        theory,
        f.source[f.factor],
        f.target[f.factor],
        within=f.source,
        factor=f.factor,
    )


def pullback(theory: TheoryModel, f: Morphism, a: RingElement) -> RingElement:
    """f^*: substitution on generators, from the target ring to the source."""
    if a.spec != ring_of(theory, f.target):
        raise SpecMismatch(f"{a.spec} is not the target ring of {f.kind}")
    source_spec = ring_of(theory, f.source)
    table: dict[tuple[int, ...], Scalar] = {}
    if f.kind == "linear_immersion":
        bound = f.source[f.factor]
        for exps, c in a.terms.items():
            if exps[f.factor] <= bound:  # higher powers restrict to zero
                table[exps] = c
    else:
        j = f.factor
        for exps, c in a.terms.items():
            table[exps[:j] + (0,) + exps[j:]] = c
    return source_spec.element(table)


def pushforward(theory: TheoryModel, f: Morphism, a: RingElement) -> RingElement:
    """f_*: the theory's direct image, a monomial table on the acted factor.

    * linear immersion P^m in P^n: x^r |-> x^(r + n - m);
    * projections, additive model: top power of the collapsed generator
      maps to 1, lower powers to 0;
    * projections, multiplicative model: every power maps to 1;
    * twisted theory: base pushforward of F_x(T_f)^(-1) * a.
    """
    if a.spec != ring_of(theory, f.source):
        raise SpecMismatch(f"{a.spec} is not the source ring of {f.kind}")
    if theory.name == "twisted":
        correction = multiplicative_extension(theory.twist, f.virtual_tangent)
        carrier = TheoryModel(theory.base.name, RATIONALS)
        return pushforward(carrier, f, correction.inverse() * a)
    target_spec = ring_of(theory, f.target)
    table: dict[tuple[int, ...], Scalar] = {}
    j = f.factor
    if f.kind == "linear_immersion":
        shift = f.target[j] - f.source[j]
        for exps, c in a.terms.items():
            table[exps[:j] + (exps[j] + shift,) + exps[j + 1 :]] = c
        return target_spec.element(table)
    top = f.source[j]
    for exps, c in a.terms.items():
        if theory.name == "chow" and exps[j] != top:
            continue
        rest = exps[:j] + exps[j + 1 :]
        previous = table.get(rest, 0)
        total = previous + c
        table[rest] = total
    return target_spec.element(table)


def universal_morphism(a: RingElement) -> RingElement:
    """The ring morphism K(X) -> Chow(X) tensor Q with t_i |-> 1 - e^(-h_i).

    Well defined because (1 - e^(-h))^(n+1) = h^(n+1) * unit = 0 in the
    truncated ring; this is the Chern character on line-bundle classes.
    """
    dims = a.spec.bounds
    if a.spec.variables != _names("t", len(dims)):
        raise SpecMismatch(f"{a.spec} is not a K-theory ring")
    target = ring_of(CHOW_Q, dims)
    powers: list[list[RingElement]] = []
    for i, d in enumerate(dims):
        image = eval_series(exp_deficit_series(d).times_t(), target.generator(i))
        row = [target.one()]
        for _ in range(d):
            row.append(row[-1] * image)
        powers.append(row)
    result = target.zero()
    for exps, c in a.terms.items():
        term = target.scalar(c)
        for i, r in enumerate(exps):
            if r:
                term = term * powers[i][r]
        result = result + term
    return result


@dataclass(frozen=True)
class GKClass:
    """A graded-K class: filtration level and its homogeneous representative."""

    level: int
    representative: RingElement

    def __post_init__(self):
        if self.representative != self.representative.graded_component(self.level):
            raise ValueError("representative must be homogeneous of the stated level")


def gk_leading_morphism(a: RingElement, level: int) -> GKClass:
    """Degree-`level` part of the universal morphism, for a in filtration level.

    Raises FiltrationViolation if the image has nonzero components below
    the requested level, i.e. the class does not actually lie that deep.
    """
    image = universal_morphism(a)
    for degree in range(level):
        if not image.graded_component(degree).is_zero():
            raise FiltrationViolation(
                f"degree-{degree} component of the image is nonzero"
            )
    return GKClass(level, image.graded_component(level))


def _point_weights(theory: TheoryModel, n: int) -> list[Scalar]:
    """w_r = p_*(x^r) for the theory's point projection from P^n."""
    spec = ring_of(theory, (n,))
    p = point_projection(theory, n)
    weights = []
    for r in range(n + 1):
        monomial = spec.element({(r,): 1})
        weights.append(pushforward(theory, p, monomial).constant_term)
    return weights


def diagonal_class(theory: TheoryModel, n: int) -> RingElement:
    """The class of the diagonal of P^n x P^n, solved level by level.

    Level k is pinned by three facts: restricting the first factor to a
    hyperplane must give the level k-1 class pushed into the second
    factor; the table is symmetric; and collapsing the first factor
    yields 1.  The first fixes every row but the last, the normalization
    fixes the last row, and symmetry is verified afterwards.  Any failure
    raises SolverInconsistent, since the axioms guarantee a solution.
    """
    table: dict[tuple[int, int], Scalar] = {(0, 0): 1}
    for k in range(1, n + 1):
        prev_spec = ring_of(theory, (k - 1, k - 1))
        prev = prev_spec.element({rs: v for rs, v in table.items()})
        include = linear_immersion(theory, k - 1, k, within=(k - 1, k - 1), factor=1)
        pushed = pushforward(theory, include, prev)
        rows: dict[tuple[int, int], Scalar] = {}
        for (r, s), c in pushed.terms.items():
            rows[(r, s)] = c
        weights = _point_weights(theory, k)
        pivot = weights[k]
        for s in range(k + 1):
            wanted = 1 if s == 0 else 0
            residue = wanted - sum(
                weights[r] * rows.get((r, s), 0) for r in range(k)
            )
            value = _divide(residue, pivot, theory.scalars)
            if value != 0:
                rows[(k, s)] = value
        for (r, s), c in list(rows.items()):
            if rows.get((s, r), 0) != c:
                raise SolverInconsistent(
                    f"diagonal table for n={k} is not symmetric at {(r, s)}"
                )
        table = rows
        # Re-check the two defining constraints through the actual maps.
        spec = ring_of(theory, (k, k))
        delta = spec.element(table)
        collapse = factor_projection(theory, (k, k), 0)
        if pushforward(theory, collapse, delta) != ring_of(theory, (k,)).one():
            raise SolverInconsistent(f"(p_* x 1) normalization fails at n={k}")
        restrict = linear_immersion(theory, k - 1, k, within=(k - 1, k), factor=0)
        if pullback(theory, restrict, delta) != pushed:
            raise SolverInconsistent(f"hyperplane restriction fails at n={k}")
    return ring_of(theory, (n, n)).element(table)


def _divide(value: Scalar, unit: Scalar, scalars: str) -> Scalar:
    if unit == 0:
        raise SolverInconsistent("point pushforward of the top power is not a unit")
    quotient = Fraction(value) / Fraction(unit)
    if scalars == INTEGERS:
        if quotient.denominator != 1:
            raise SolverInconsistent(
                f"normalization needs {value}/{unit}, not an integer"
            )
        return quotient.numerator
    return quotient


@dataclass(frozen=True)
class MetricReport:
    """Diagonal coefficient matrix with its exact determinant."""

    matrix: tuple[tuple[Scalar, ...], ...]
    determinant: Scalar
    unit: bool


def metric_check(theory: TheoryModel, n: int) -> MetricReport:
    """The (n+1)x(n+1) diagonal coefficient matrix and whether it is a unit.

    Over the integers the flag asks for determinant +-1; over the
    rationals, merely nonzero.
    """
    delta = diagonal_class(theory, n)
    matrix = tuple(
        tuple(delta.coefficient_of((r, s)) for s in range(n + 1))
        for r in range(n + 1)
    )
    determinant = _determinant([list(row) for row in matrix])
    if theory.scalars == INTEGERS:
        determinant = int(determinant)
        unit = determinant in (1, -1)
    else:
        unit = determinant != 0
    return MetricReport(matrix, determinant, unit)


def _determinant(matrix: list[list[Scalar]]) -> Fraction:
    size = len(matrix)
    rows = [[Fraction(c) for c in row] for row in matrix]
    result = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            result = -result
        pivot = rows[col][col]
        result *= pivot
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                scale = rows[r][col] / pivot
                rows[r] = [a - scale * b for a, b in zip(rows[r], rows[col])]
    return result
