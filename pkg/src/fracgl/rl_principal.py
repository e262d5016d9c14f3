"""Riemann-Liouville principal value of derivatives of power products."""

from __future__ import annotations

import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import DomainError
from .special_functions import is_nonpositive_integer, log_gamma_ratio


def _as_tuple(v: float | Sequence[float]) -> tuple[float, ...]:
    if isinstance(v, (int, float)):
        return (float(v),)
    return tuple(float(x) for x in v)


@dataclass(frozen=True)
class PowerExponents:
    """Exponents ``p_1..p_n`` of the power product ``x_1^{p_1} ... x_n^{p_n}``."""

    p: tuple[float, ...]

    def __init__(self, p: float | Sequence[float]) -> None:
        object.__setattr__(self, "p", _as_tuple(p))

    def __len__(self) -> int:
        return len(self.p)

    def __iter__(self):
        return iter(self.p)


def _check_axis(p: float, x: float) -> None:
    if not p > -1:
        raise DomainError(f"power exponent p={p!r} must exceed -1")
    if not x > 0:
        raise DomainError(f"evaluation point x={x!r} must be positive")


def _axis_log_value(p: float, r: float, x: float) -> tuple[float, int]:
    log_mag, sign = log_gamma_ratio([p + 1.0], [p - r + 1.0])
    if sign == 0:
        return log_mag, 0
    return log_mag + (p - r) * math.log(x), sign


def _axis_direct(p: float, r: float, x: float) -> float | None:
    if is_nonpositive_integer(p - r + 1.0):
        return 0.0
    try:
        v = math.gamma(p + 1.0) / math.gamma(p - r + 1.0) * x ** (p - r)
    except OverflowError:
        return None
    return v if math.isfinite(v) and v != 0 else None


def rl_power_value(
    p: PowerExponents | float | Sequence[float],
    r: float | Sequence[float],
    x: float | Sequence[float],
) -> float:
    """``prod_i Gamma(p_i+1) / Gamma(p_i-r_i+1) * x_i^(p_i-r_i)``.

    A pole of ``Gamma(p_i - r_i + 1)`` makes the whole value exactly zero,
    as for integer derivatives of lower-degree monomials.  Factors are
    multiplied directly while that stays finite and normal; otherwise the
    product is formed in log space with sign tracking.
    """
    ps = p.p if isinstance(p, PowerExponents) else _as_tuple(p)
    rs, xs = _as_tuple(r), _as_tuple(x)
    if not len(ps) == len(rs) == len(xs):
        raise DomainError("p, r and x must have the same length")
    for pi, xi in zip(ps, xs):
        _check_axis(pi, xi)
    direct = 1.0
    for pi, ri, xi in zip(ps, rs, xs):
        v = _axis_direct(pi, ri, xi)
        if v == 0.0:
            return 0.0
        if v is None or direct is None:
            direct = None
            continue
        direct *= v
    if direct is not None and math.isfinite(direct) and abs(direct) >= sys.float_info.min:
        return direct
    total = 0.0
    sign = 1
    for pi, ri, xi in zip(ps, rs, xs):
        lv, s = _axis_log_value(pi, ri, xi)
        sign *= s
        total += lv
    if sign == 0:
        return 0.0
    return sign * math.exp(total)
