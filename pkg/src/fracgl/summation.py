"""Error-free transformations and a compensated (doubled precision) accumulator.

Both the hypergeometric series and the Grunwald-Letnikov sums are long,
alternating and heavily cancelling, so every sum in the package goes through
:class:`CompensatedSum`.  It follows the ``Sum2``/``Dot2`` scheme of Ogita,
Rump and Oishi: the running sum is carried together with the exact rounding
error of every addition and product, which gives results as accurate as if
they had been computed in twice the working precision.
"""

from __future__ import annotations

import math

_SPLITTER = 134217729.0  # 2**27 + 1
_SPLIT_LIMIT = 2.0**996


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _split(a: float) -> tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_product(a: float, b: float) -> tuple[float, float]:
    """Return ``(p, e)`` with ``p = fl(a * b)`` and ``a * b = p + e`` exactly.

    Uses Dekker's algorithm with Veltkamp splitting; when an operand is too
    large to split safely the error term is reported as zero.
    """
    p = a * b
    if not math.isfinite(p) or abs(a) > _SPLIT_LIMIT or abs(b) > _SPLIT_LIMIT:
        return p, 0.0
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


class CompensatedSum:
    """Running sum that tracks its own rounding error.

    >>> acc = CompensatedSum()
    >>> for t in (1e16, 1.0, -1e16):
    ...     acc.add(t)
    >>> acc.value
    1.0
    """

    __slots__ = ("_sum", "_err")

    def __init__(self) -> None:
        self._sum = 0.0
        self._err = 0.0

    def add(self, value: float) -> None:
        self._sum, e = two_sum(self._sum, value)
        self._err += e

    def add_product(self, *factors: float) -> None:
        """Add the product of ``factors``, formed exactly up to second order."""
        hi = factors[0]
        lo = 0.0
        for f in factors[1:]:
            hi, e = two_product(hi, f)
            lo = lo * f + e
        self._sum, e = two_sum(self._sum, hi)
        self._err += e + lo

    def add_double(self, hi: float, lo: float) -> None:
        """Add an unevaluated double-double ``hi + lo``."""
        self._sum, e = two_sum(self._sum, hi)
        self._err += e + lo

    @property
    def value(self) -> float:
        return self._sum + self._err

    @property
    def parts(self) -> tuple[float, float]:
        """The sum as a normalised double-double ``(hi, lo)``."""
        return two_sum(self._sum, self._err)


def dd_mul(a: tuple[float, float], b: tuple[float, float]) -> tuple[float, float]:
    """Multiply two double-doubles, returning a double-double."""
    p, e = two_product(a[0], b[0])
    e += a[0] * b[1] + a[1] * b[0]
    return two_sum(p, e)
