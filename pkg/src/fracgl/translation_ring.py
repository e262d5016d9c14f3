"""Exact ring of translation operators on a uniform step lattice.

An element is a finite linear combination ``sum_m c_m phi_1^{m_1 h_1} ... phi_n^{m_n h_n}``
with integer offsets ``m`` and rational coefficients ``c_m``; ``phi_i^h``
translates the ``i``-th argument of a function by ``h``.  Arithmetic is exact
(:class:`fractions.Fraction`); floating point only enters in :func:`apply`.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, TermCapError
from .summation import CompensatedSum

MAX_TERMS = 10**6

Offset = tuple[int, ...]


@dataclass(frozen=True)
class TranslationPolynomial:
    axis_count: int
    terms: Mapping[Offset, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.axis_count < 1:
            raise DomainError("axis_count must be positive")
        clean: dict[Offset, Fraction] = {}
        for m, c in self.terms.items():
            m = tuple(int(v) for v in m)
            if len(m) != self.axis_count:
                raise DomainError(f"offset {m} does not have {self.axis_count} axes")
            c = Fraction(c)
            if c:
                clean[m] = c
        if len(clean) > MAX_TERMS:
            raise TermCapError(f"translation polynomial exceeds {MAX_TERMS} terms")
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TranslationPolynomial):
            return NotImplemented
        return self.axis_count == other.axis_count and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.axis_count, tuple(self.terms.items())))

    def coefficient(self, offset: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(offset), Fraction(0))

    def _coerce(self, other: object) -> TranslationPolynomial:
        if isinstance(other, TranslationPolynomial):
            return other
        if isinstance(other, (int, Rational)):
            return scalar(other, self.axis_count)
        return NotImplemented

    def __add__(self, other: object) -> TranslationPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> TranslationPolynomial:
        return TranslationPolynomial(self.axis_count, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: object) -> TranslationPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_add(self, -other)

    def __rsub__(self, other: object) -> TranslationPolynomial:
        return (-self) + other

    def __mul__(self, other: object) -> TranslationPolynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TranslationPolynomial:
        return ring_pow(self, e)

    def __repr__(self) -> str:
        return f"TranslationPolynomial({self.axis_count}, {to_debug_string(self)})"


def identity(axis_count: int = 1) -> TranslationPolynomial:
    """The ring identity ``phi^0 = 1``."""
    return TranslationPolynomial(axis_count, {(0,) * axis_count: Fraction(1)})


def scalar(c: int | Rational, axis_count: int = 1) -> TranslationPolynomial:
    return TranslationPolynomial(axis_count, {(0,) * axis_count: Fraction(c)})


def translation(axis: int, steps: int, axis_count: int = 1) -> TranslationPolynomial:
    """Monomial ``phi_axis^{steps * h_axis}``; axes are numbered from 1."""
    if not 1 <= axis <= axis_count:
        raise DomainError(f"axis {axis} out of range 1..{axis_count}")
    offset = [0] * axis_count
    offset[axis - 1] = steps
    return TranslationPolynomial(axis_count, {tuple(offset): Fraction(1)})


def _check_axes(a: TranslationPolynomial, b: TranslationPolynomial) -> None:
    if a.axis_count != b.axis_count:
        raise DomainError(f"axis count mismatch: {a.axis_count} != {b.axis_count}")


def ring_add(a: TranslationPolynomial, b: TranslationPolynomial) -> TranslationPolynomial:
    _check_axes(a, b)
    out = dict(a.terms)
    for m, c in b.terms.items():
        out[m] = out.get(m, 0) + c
    return TranslationPolynomial(a.axis_count, out)


def ring_mul(a: TranslationPolynomial, b: TranslationPolynomial) -> TranslationPolynomial:
    """Product of operators: offsets add, coefficients multiply."""
    _check_axes(a, b)
    out: dict[Offset, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
        if len(out) > MAX_TERMS:
            raise TermCapError(f"product exceeds {MAX_TERMS} terms")
    return TranslationPolynomial(a.axis_count, out)


def ring_pow(a: TranslationPolynomial, e: int) -> TranslationPolynomial:
    """``a ** e`` by repeated squaring."""
    if e < 0:
        raise DomainError("only nonnegative integer powers exist in the ring")
    result = identity(a.axis_count)
    base = a
    while e:
        if e & 1:
            result = ring_mul(result, base)
        e >>= 1
        if e:
            base = ring_mul(base, base)
    return result


def shift(a: TranslationPolynomial, offset: Sequence[int]) -> TranslationPolynomial:
    """Multiply ``a`` by the monomial at ``offset`` (translate every term)."""
    if len(offset) != a.axis_count:
        raise DomainError("offset length does not match axis count")
    return TranslationPolynomial(
        a.axis_count,
        {tuple(x + y for x, y in zip(m, offset)): c for m, c in a.terms.items()},
    )


def apply(
    a: TranslationPolynomial,
    f: Callable[[tuple[float, ...]], float],
    x: Sequence[float],
    h: Sequence[float],
) -> float:
    """Evaluate ``(a f)(x) = sum_m c_m f(x + m * h)`` in floating point."""
    if len(x) != a.axis_count or len(h) != a.axis_count:
        raise DomainError("x and h must have one entry per axis")
    if any(not hi > 0 for hi in h):
        raise DomainError("base steps must be positive")
    acc = CompensatedSum()
    for m, c in a.terms.items():
        point = tuple(xi + mi * hi for xi, mi, hi in zip(x, m, h))
        acc.add_product(float(c), float(f(point)))
    return acc.value


@dataclass(frozen=True)
class DifferenceQuotientExpansion:
    """Expansion of ``prod_i ((phi_i^{h_i} - 1) / h_i)^{r_i}``.

    ``raw`` is the literal product of first differences (offsets ``r - k``),
    ``shifted`` the same operator translated by ``-r`` so that offsets read
    ``-k``.  The scalar ``prod_i h_i^{-r_i}`` is kept outside both.
    """

    orders: tuple[int, ...]
    raw: TranslationPolynomial
    shifted: TranslationPolynomial

    def prefactor(self, h: Sequence[float]) -> float:
        out = 1.0
        for hi, ri in zip(h, self.orders):
            out *= hi ** (-ri)
        return out


def difference_quotient_power(orders: Sequence[int], axis_count: int | None = None) -> DifferenceQuotientExpansion:
    n = len(orders) if axis_count is None else axis_count
    if len(orders) != n:
        raise DomainError("one order per axis is required")
    if any(int(r) != r or r < 0 for r in orders):
        raise DomainError("difference quotient powers need nonnegative integer orders")
    orders = tuple(int(r) for r in orders)
    raw = identity(n)
    for axis, r in enumerate(orders, start=1):
        raw = ring_mul(raw, ring_pow(translation(axis, 1, n) - 1, r))
    shifted = shift(raw, [-r for r in orders])
    return DifferenceQuotientExpansion(orders, raw, shifted)


def to_debug_string(a: TranslationPolynomial) -> str:
    """Sorted, human-readable term list, e.g. ``"(0,): 1; (1,): -2; (2,): 1"``."""
    if not a.terms:
        return "0"
    return "; ".join(f"{m}: {c}" for m, c in a.terms.items())
