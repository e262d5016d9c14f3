"""Grunwald-Letnikov sums in one and several variables.

The univariate sum is ``h^-r sum_{k=0}^N (-1)^k C(r,k) f(x - k h)``; the
multivariate one runs over the box ``k in [0,N_1] x ... x [0,N_n]`` with the
product of per-axis weights.  Steps are either given explicitly or linked to
the truncation through ``h_i = q_i x_i / N_i``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .errors import DomainError, NumericError, TermCapError
from .rl_principal import PowerExponents
from .special_functions import is_integer
from .summation import CompensatedSum, dd_mul

DEFAULT_TERM_CAP = 10**8


def _as_tuple(v, cast=float) -> tuple:
    if isinstance(v, (int, float)):
        return (cast(v),)
    return tuple(cast(x) for x in v)


def power(t: float, p: float) -> float:
    """``t**p`` restricted to real results: ``0**p`` is 0 for ``p > 0`` and 1 for ``p == 0``."""
    if t == 0:
        if p > 0:
            return 0.0
        if p == 0:
            return 1.0
        raise DomainError(f"0**{p!r} is undefined for a negative exponent")
    if t < 0 and not is_integer(p):
        raise DomainError(f"negative base {t!r} under non-integer power {p!r}")
    return float(t) ** p


@dataclass(frozen=True)
class SampledFunction:
    """A callable on ``R^n`` with a declared domain ``x_i >= lower[i]``.

    When ``factors`` is given the function is the separable product
    ``prod_i factors[i](x_i)``; the multivariate engine then multiplies the
    factor values itself without an intermediate rounding.
    """

    func: Callable[[tuple[float, ...]], float] | None
    lower: tuple[float, ...]
    factors: tuple[Callable[[float], float], ...] | None = None

    @property
    def axis_count(self) -> int:
        return len(self.lower)

    def check_axis(self, axis: int, t: float) -> None:
        if t < self.lower[axis]:
            raise DomainError(
                f"sample {t!r} on axis {axis + 1} is below the domain bound {self.lower[axis]!r}"
            )

    def factor(self, axis: int, t: float) -> float:
        self.check_axis(axis, t)
        v = self.factors[axis](t)
        if not math.isfinite(v):
            raise NumericError(f"non-finite factor value at {t!r} on axis {axis + 1}")
        return v

    def __call__(self, point: Sequence[float]) -> float:
        point = tuple(point)
        if len(point) != self.axis_count:
            raise DomainError(f"expected {self.axis_count} coordinates, got {len(point)}")
        for axis, t in enumerate(point):
            self.check_axis(axis, t)
        if self.func is not None:
            v = float(self.func(point))
        else:
            v = math.prod(g(t) for g, t in zip(self.factors, point))
        if not math.isfinite(v):
            raise NumericError(f"non-finite function value at {point!r}")
        return v


def separable(factors: Sequence[Callable[[float], float]], lower: Sequence[float]) -> SampledFunction:
    return SampledFunction(None, tuple(float(v) for v in lower), tuple(factors))


def power_function(p: PowerExponents | float | Sequence[float]) -> SampledFunction:
    """``x_1^{p_1} ... x_n^{p_n}``; axes with non-integer exponent live on ``[0, inf)``."""
    ps = p.p if isinstance(p, PowerExponents) else _as_tuple(p)
    factors = tuple((lambda t, pi=pi: power(t, pi)) for pi in ps)
    lower = tuple(-math.inf if is_integer(pi) and pi >= 0 else 0.0 for pi in ps)
    return separable(factors, lower)


def polynomial_function(coefficients: Sequence[float]) -> SampledFunction:
    """Univariate ``sum_j c_j x^j`` evaluated by Horner's rule."""
    cs = [float(c) for c in coefficients]

    def f(point: tuple[float, ...]) -> float:
        acc = 0.0
        for c in reversed(cs):
            acc = acc * point[0] + c
        return acc

    return SampledFunction(f, (-math.inf,))


@dataclass(frozen=True)
class GLScheme:
    """Evaluation point, orders and truncation of a GL sum.

    Exactly one of ``q`` (linkage ``h_i = q_i x_i / N_i``) or ``h`` (explicit
    steps) must be given.
    """

    x: tuple[float, ...]
    r: tuple[float, ...]
    N: tuple[int, ...]
    q: tuple[float, ...] | None = None
    h: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        set_ = object.__setattr__
        set_(self, "x", _as_tuple(self.x))
        set_(self, "r", _as_tuple(self.r))
        set_(self, "N", _as_tuple(self.N, int))
        n = len(self.x)
        if n == 0 or len(self.r) != n or len(self.N) != n:
            raise DomainError("x, r and N must be non-empty and of equal length")
        if any(not math.isfinite(v) for v in self.x + self.r):
            raise DomainError("x and r must be finite")
        if any(Ni < 1 for Ni in self.N):
            raise DomainError("truncation N_i must be a positive integer")
        if (self.q is None) == (self.h is None):
            raise DomainError("exactly one of q (linkage) or h (explicit steps) must be set")
        if self.q is not None:
            set_(self, "q", _as_tuple(self.q))
            if len(self.q) != n:
                raise DomainError("q must have one entry per axis")
            if any(not 0 < qi <= 1 for qi in self.q):
                raise DomainError("linkage parameters q_i must lie in (0, 1]")
            if any(not xi > 0 for xi in self.x):
                raise DomainError("linkage requires x_i > 0")
        else:
            set_(self, "h", _as_tuple(self.h))
            if len(self.h) != n:
                raise DomainError("h must have one entry per axis")
            if any(not (hi > 0 and math.isfinite(hi)) for hi in self.h):
                raise DomainError("explicit steps h_i must be positive")

    @property
    def axis_count(self) -> int:
        return len(self.x)

    @property
    def steps(self) -> tuple[float, ...]:
        if self.h is not None:
            return self.h
        return tuple(qi * xi / Ni for qi, xi, Ni in zip(self.q, self.x, self.N))

    @property
    def box_size(self) -> int:
        return math.prod(Ni + 1 for Ni in self.N)

    def abscissae(self, axis: int) -> list[float]:
        """Sample coordinates ``x_i - k h_i`` for ``k = 0..N_i``."""
        xi, Ni = self.x[axis], self.N[axis]
        if self.q is not None:
            # x (1 - q k / N) hits 0 exactly at k = N when q = 1
            qi = self.q[axis]
            return [xi * (1.0 - qi * k / Ni) for k in range(Ni + 1)]
        hi = self.h[axis]
        return [xi - k * hi for k in range(Ni + 1)]

    def weights(self, axis: int) -> list[float]:
        """``(-1)^k C(r_i, k)`` for ``k = 0..N_i`` via the descending recurrence."""
        ri = self.r[axis]
        w = [1.0]
        for k in range(self.N[axis]):
            w.append(w[-1] * (k - ri) / (k + 1))
        return w

    def prefactor(self) -> float:
        out = 1.0
        for hi, ri in zip(self.steps, self.r):
            out *= hi ** (-ri)
        return out


def _axis_sum(f: Callable[[float], float], scheme: GLScheme, axis: int) -> tuple[float, float]:
    acc = CompensatedSum()
    for w, t in zip(scheme.weights(axis), scheme.abscissae(axis)):
        acc.add_product(w, f(t))
    return acc.parts


def gl_univariate(f: SampledFunction, scheme: GLScheme) -> float:
    """Univariate GL sum ``h^-r sum_{k=0}^N (-1)^k C(r,k) f(x - k h)``."""
    if scheme.axis_count != 1 or f.axis_count != 1:
        raise DomainError("gl_univariate needs a one-axis scheme and function")
    hi, lo = _axis_sum(lambda t: f((t,)), scheme, 0)
    return (hi + lo) * scheme.prefactor()


def gl_multivariate(
    f: SampledFunction, scheme: GLScheme, term_cap: int = DEFAULT_TERM_CAP
) -> float:
    """Multivariate GL sum over the truncated box, in lexicographic order."""
    n = scheme.axis_count
    if f.axis_count != n:
        raise DomainError(f"function has {f.axis_count} axes, scheme has {n}")
    if scheme.box_size > term_cap:
        raise TermCapError(f"box of {scheme.box_size} terms exceeds the cap {term_cap}")
    weights = [scheme.weights(i) for i in range(n)]
    abscissae = [scheme.abscissae(i) for i in range(n)]
    acc = CompensatedSum()
    if f.factors is not None:
        values = [[f.factor(i, t) for t in abscissae[i]] for i in range(n)]
        for k in itertools.product(*(range(Ni + 1) for Ni in scheme.N)):
            acc.add_product(
                *(weights[i][ki] for i, ki in enumerate(k)),
                *(values[i][ki] for i, ki in enumerate(k)),
            )
    else:
        for k in itertools.product(*(range(Ni + 1) for Ni in scheme.N)):
            point = tuple(abscissae[i][ki] for i, ki in enumerate(k))
            acc.add_product(*(weights[i][ki] for i, ki in enumerate(k)), f(point))
    return acc.value * scheme.prefactor()


def gl_factorized(p: PowerExponents | float | Sequence[float], scheme: GLScheme) -> float:
    """GL derivative of a power product as a product of per-axis univariate sums."""
    f = power_function(p)
    if f.axis_count != scheme.axis_count:
        raise DomainError("p and the scheme must have the same number of axes")
    total = (1.0, 0.0)
    for axis in range(scheme.axis_count):
        total = dd_mul(total, _axis_sum(lambda t, a=axis: f.factor(a, t), scheme, axis))
    return (total[0] + total[1]) * scheme.prefactor()
