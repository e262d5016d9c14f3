"""Special-function kernels: log-gamma, binomials, reflection factor and 2F1.

All functions work on real arguments in double precision.  Poles raise
:class:`~fracgl.errors.PoleError`; series that cannot be summed raise
:class:`~fracgl.errors.DivergenceError` or
:class:`~fracgl.errors.ConvergenceError`.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import ConvergenceError, DivergenceError, PoleError
from .summation import CompensatedSum

SERIES_RTOL = 1e-17
SERIES_PATIENCE = 3
SERIES_MAX_TERMS = 100_000


def is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def is_integer(x: float) -> bool:
    return math.isfinite(x) and x == math.floor(x)


_EULER_GAMMA = 0.57721566490153286061
_NEAR_ZERO = 0.5
_ZETA_TERMS = 60


def _zeta_int(k: int) -> float:
    # Riemann zeta at integer k >= 2: direct sum to M plus Euler-Maclaurin tail
    m = 40
    head = math.fsum(n ** (-k) for n in range(1, m))
    tail = m ** (1 - k) / (k - 1) + 0.5 * m ** (-k)
    # Bernoulli corrections B2, B4, B6, B8
    rising = k
    power = m ** (-k - 1)
    for b2j, j in ((1 / 6, 1), (-1 / 30, 2), (1 / 42, 3), (-1 / 30, 4)):
        tail += b2j / math.factorial(2 * j) * rising * power
        rising *= (k + 2 * j - 1) * (k + 2 * j)
        power /= m * m
    return head + tail


_ZETA = [0.0, 0.0] + [_zeta_int(k) for k in range(2, _ZETA_TERMS + 2)]


def _log_gamma_one_plus(eps: float) -> float:
    # log Gamma(1 + eps) = -gamma eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k
    acc = 0.0
    for k in range(_ZETA_TERMS + 1, 1, -1):
        acc = acc * eps + (-1) ** k * _ZETA[k] / k
    return eps * (acc * eps - _EULER_GAMMA)


def log_gamma(x: float) -> tuple[float, int]:
    """Return ``(log|Gamma(x)|, sign(Gamma(x)))``.

    ``Gamma(x) == sign * exp(value)``.  Raises :class:`PoleError` at
    ``x = 0, -1, -2, ...``.  Close to the zeros of log-gamma at 1 and 2 a
    Taylor series keeps the result accurate in the relative sense.
    """
    if is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at x={x!r}")
    if abs(x - 1.0) < _NEAR_ZERO:
        return _log_gamma_one_plus(x - 1.0), 1
    if abs(x - 2.0) < _NEAR_ZERO:
        eps = x - 2.0
        return math.log1p(eps) + _log_gamma_one_plus(eps), 1
    if x > 0:
        return math.lgamma(x), 1
    # Gamma is negative on (-1, 0), (-3, -2), ...
    sign = -1 if math.floor(x) % 2 else 1
    return math.lgamma(x), sign


def _pole_residue(x: float) -> tuple[float, int]:
    # Res Gamma at -n is (-1)^n / n!
    n = int(-x)
    return -math.lgamma(n + 1), (-1 if n % 2 else 1)


def log_gamma_ratio(
    numerator: Iterable[float], denominator: Iterable[float]
) -> tuple[float, int]:
    """``prod Gamma(numerator) / prod Gamma(denominator)`` as ``(log|value|, sign)``.

    Poles are treated as a limit in which every pole argument approaches its
    integer at the same rate: each pole contributes its residue and one unit
    of pole order.  More poles in the denominator give a zero value, reported
    as sign ``0``; more in the numerator raise :class:`PoleError`; equal
    counts cancel.
    """
    log_mag = 0.0
    sign = 1
    order = 0
    for x in numerator:
        if is_nonpositive_integer(x):
            lv, s = _pole_residue(x)
            order += 1
        else:
            lv, s = log_gamma(x)
        log_mag += lv
        sign *= s
    for x in denominator:
        if is_nonpositive_integer(x):
            lv, s = _pole_residue(x)
            order -= 1
        else:
            lv, s = log_gamma(x)
        log_mag -= lv
        sign *= s
    if order < 0:
        return -math.inf, 0
    if order > 0:
        raise PoleError("Gamma ratio has an uncancelled pole in the numerator")
    return log_mag, sign


def gamma_ratio(numerator: Iterable[float], denominator: Iterable[float]) -> float:
    """Evaluate ``prod Gamma(numerator) / prod Gamma(denominator)``; see :func:`log_gamma_ratio`."""
    log_mag, sign = log_gamma_ratio(numerator, denominator)
    if sign == 0:
        return 0.0
    return sign * math.exp(log_mag)


def binomial_real(r: float, k: int) -> float:
    """Generalised binomial coefficient ``C(r, k)`` for real ``r`` and integer ``k >= 0``.

    Built from the descending product, so integer ``r < k`` gives an exact zero.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    c = 1.0
    for j in range(k):
        c = c * (r - j) / (j + 1)
    return c


def binomial_gamma(p: float, r: float) -> float:
    """``C(p, r) = Gamma(p+1) / (Gamma(r+1) Gamma(p-r+1))`` for real ``p`` and ``r``."""
    return gamma_ratio([p + 1.0], [r + 1.0, p - r + 1.0])


def reflection_factor(r: float) -> float:
    """``pi r / sin(pi r)``, equal to ``Gamma(1+r) Gamma(1-r)``; exactly 1 at ``r = 0``."""
    if r == 0:
        return 1.0
    if is_integer(r):
        raise PoleError(f"pi r / sin(pi r) has a pole at r={r!r}")
    # reduce before calling sin so integer-adjacent r keeps its accuracy
    n = round(r)
    s = math.sin(math.pi * (r - n))
    if n % 2:
        s = -s
    return math.pi * r / s


def gauss_sum_gamma_args(a: float, b: float, c: float) -> tuple[list[float], list[float]]:
    """Gamma arguments of Gauss's summation ``2F1(a,b;c;1)``: ``(numerator, denominator)``."""
    return [c, c - a - b], [c - a, c - b]


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters ``(a, b, c, z)`` of a Gauss hypergeometric series."""

    a: float
    b: float
    c: float
    z: float

    @property
    def terminating_index(self) -> int | None:
        """Index of the last nonzero term of a polynomial series, else ``None``."""
        degrees = [int(-v) for v in (self.a, self.b) if is_nonpositive_integer(v)]
        return min(degrees) if degrees else None

    def validate(self) -> None:
        m = self.terminating_index
        if is_nonpositive_integer(self.c) and (m is None or m > -self.c):
            raise PoleError(f"2F1 parameter c={self.c!r} is a pole of the series")
        if m is not None:
            return
        if abs(self.z) > 1:
            raise DivergenceError(f"2F1 series diverges for |z|={abs(self.z)!r} > 1")
        if self.z == 1 and not self.c - self.a - self.b > 0:
            raise DivergenceError("2F1 at z=1 requires c - a - b > 0")


def _series(a: float, b: float, c: float, z: float, last: int | None) -> float:
    acc = CompensatedSum()
    term = 1.0
    acc.add(term)
    quiet = 0
    j = 0
    while True:
        if last is not None and j >= last:
            return acc.value
        term = term * (a + j) * (b + j) / ((c + j) * (j + 1)) * z
        j += 1
        acc.add(term)
        if last is not None:
            continue
        if abs(term) < SERIES_RTOL * abs(acc.value):
            quiet += 1
            if quiet >= SERIES_PATIENCE:
                return acc.value
        else:
            quiet = 0
        if j >= SERIES_MAX_TERMS:
            raise ConvergenceError(
                f"2F1({a}, {b}; {c}; {z}) did not converge in {SERIES_MAX_TERMS} terms"
            )


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` for real arguments.

    Polynomial (terminating) series are summed exactly to their last term for
    any ``z``.  Otherwise ``|z| <= 1`` is required: the series is summed with
    a compensated accumulator for ``|z| < 1`` and Gauss's closed form is used
    at ``z = 1``.
    """
    params = HypergeometricParams(a, b, c, z)
    params.validate()
    if z == 0:
        return 1.0
    last = params.terminating_index
    if last is None and z == 1:
        num, den = gauss_sum_gamma_args(a, b, c)
        return gamma_ratio(num, den)
    return _series(a, b, c, z, last)


def gauss_sum_at_one(a: float, b: float, c: float) -> float:
    """Gauss's closed form ``Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))``."""
    num, den = gauss_sum_gamma_args(a, b, c)
    return gamma_ratio(num, den)
