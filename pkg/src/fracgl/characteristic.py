"""Characteristic equation of the q-linked GL scheme for power functions.

For one axis with exponent ``p`` and order ``r`` the linked scheme
``h = q x / N`` reproduces the Riemann-Liouville value exactly when

    q^-r 2F1(-p, -r; 1-r; q) = pi r / sin(pi r) * C(p, r).

Several axes factorise, so the multivariate condition is that the product of
the per-axis ratios ``rhs * q^r / 2F1`` equals one.  All quantities here use
that normalisation; the finite-sum form (integer ``p``) is converted to it by
multiplying with ``r``.
"""

from __future__ import annotations

import enum
import json
import math
import statistics
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

from .errors import CharacteristicZeroError, DomainError, PoleError
from .gl_engine import GLScheme, gl_factorized, gl_univariate, polynomial_function
from .rl_principal import PowerExponents, rl_power_value
from .special_functions import (
    binomial_gamma,
    binomial_real,
    gauss_2f1,
    is_integer,
    is_nonpositive_integer,
    log_gamma_ratio,
    reflection_factor,
)
from .summation import CompensatedSum

ROOT_AT_ONE_TOL = 1e-9
BISECTION_XTOL = 1e-12
FLAT_TOL = 1e-12


class CharForm(enum.Enum):
    HYPERGEOMETRIC = "hypergeometric"
    FINITE_SUM = "finite_sum"


def _as_tuple(v) -> tuple[float, ...]:
    if isinstance(v, (int, float)):
        return (float(v),)
    return tuple(float(x) for x in v)


def _check_axis(p: float, r: float, form: CharForm) -> None:
    if is_integer(r) and r != 0:
        raise PoleError(f"integer order r={r!r} has no characteristic equation")
    if form is CharForm.FINITE_SUM:
        if not (is_integer(p) and p >= 0):
            raise DomainError(f"finite-sum form needs a nonnegative integer p, got {p!r}")
        if r == 0:
            raise PoleError("finite-sum form has a zero denominator at r=0")


@dataclass(frozen=True)
class CharEqProblem:
    p: tuple[float, ...]
    r: tuple[float, ...]
    form: CharForm = CharForm.HYPERGEOMETRIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _as_tuple(self.p))
        object.__setattr__(self, "r", _as_tuple(self.r))
        object.__setattr__(self, "form", CharForm(self.form))
        if len(self.p) != len(self.r) or not self.p:
            raise DomainError("p and r must be non-empty and of equal length")
        for pi, ri in zip(self.p, self.r):
            _check_axis(pi, ri, self.form)

    @property
    def axis_count(self) -> int:
        return len(self.p)


def finite_sum(p: float, r: float, q: float) -> float:
    """``sum_{j=0}^p C(p,j) (-q)^j / (r - j)`` for integer ``p >= 0``."""
    acc = CompensatedSum()
    for j in range(int(p) + 1):
        acc.add(binomial_real(p, j) * (-q) ** j / (r - j))
    return acc.value


def _hypergeometric(p: float, r: float, q: float, form: CharForm) -> float:
    """``2F1(-p, -r; 1-r; q)`` in the requested form."""
    if form is CharForm.FINITE_SUM:
        return r * finite_sum(p, r, q)
    return gauss_2f1(-p, -r, 1.0 - r, q)


def _check_q(q: float) -> None:
    if not 0 < q <= 1:
        raise DomainError(f"q={q!r} must lie in (0, 1]")


def char_lhs_univariate(
    p: float, r: float, q: float, form: CharForm = CharForm.HYPERGEOMETRIC
) -> float:
    """``q^-r 2F1(-p, -r; 1-r; q)``."""
    form = CharForm(form)
    _check_axis(p, r, form)
    _check_q(q)
    return q ** (-r) * _hypergeometric(p, r, q, form)


def char_rhs_univariate(p: float, r: float) -> float:
    """``pi r / sin(pi r) * C(p, r)`` with the real-argument binomial."""
    return reflection_factor(r) * binomial_gamma(p, r)


def axis_factor(p: float, r: float, q: float, form: CharForm = CharForm.HYPERGEOMETRIC) -> float:
    """Per-axis factor ``rhs * q^r / 2F1(-p, -r; 1-r; q)``; the equation is ``prod factors = 1``.

    At ``q = 1`` with a non-polynomial 2F1 the Gauss closed form is merged into
    a single Gamma ratio with the right-hand side, so a shared Gamma pole (for
    example ``p - r`` a negative integer) cancels as a limit instead of
    producing ``0 / 0``.
    """
    form = CharForm(form)
    _check_axis(p, r, form)
    _check_q(q)
    polynomial = is_nonpositive_integer(-p)
    if q == 1 and form is CharForm.HYPERGEOMETRIC and not polynomial:
        # Gauss: 2F1(-p, -r; 1-r; 1) = Gamma(1-r) Gamma(1+p) / (Gamma(1+p-r) Gamma(1));
        # arguments are spelled out so the shared p - r + 1 is the same float
        shared = p - r + 1.0
        log_mag, sign = log_gamma_ratio(
            [p + 1.0, shared, 1.0], [r + 1.0, shared, 1.0 - r, p + 1.0]
        )
        return reflection_factor(r) * (sign * math.exp(log_mag) if sign else 0.0)
    f = _hypergeometric(p, r, q, form)
    if f == 0:
        raise CharacteristicZeroError(f"2F1(-{p}, -{r}; {1 - r}; {q}) vanished")
    return char_rhs_univariate(p, r) * q**r / f


def char_residual(problem: CharEqProblem, q: float | Sequence[float]) -> float:
    """``prod_i axis_factor(p_i, r_i, q_i) - 1``; zero exactly at the roots."""
    qs = _as_tuple(q)
    if len(qs) != problem.axis_count:
        raise DomainError("q must have one entry per axis")
    prod = 1.0
    for pi, ri, qi in zip(problem.p, problem.r, qs):
        prod *= axis_factor(pi, ri, qi, problem.form)
    return prod - 1.0


def char_difference(problem: CharEqProblem, q: float | Sequence[float]) -> float:
    """``prod_i rhs_i - prod_i lhs_i``: the same equation written as a difference."""
    qs = _as_tuple(q)
    if len(qs) != problem.axis_count:
        raise DomainError("q must have one entry per axis")
    lhs = math.prod(
        char_lhs_univariate(pi, ri, qi, problem.form)
        for pi, ri, qi in zip(problem.p, problem.r, qs)
    )
    rhs = math.prod(char_rhs_univariate(pi, ri) for pi, ri in zip(problem.p, problem.r))
    return rhs - lhs


def _axis_parts(p: float, r: float, q: float, form: CharForm) -> tuple[float, float]:
    # (numerator, denominator) of the axis factor; sign changes of the
    # denominator mark poles of the residual rather than roots
    return char_rhs_univariate(p, r) * q**r, _hypergeometric(p, r, q, form)


def _bisect(g, lo: float, hi: float, glo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0:
            return mid
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_q(
    problem: CharEqProblem,
    axis: int = 1,
    search: tuple[float, float] = (0.01, 1.0),
    grid: int = 1000,
) -> list[float]:
    """Roots in ``q`` of one axis factor minus one, sorted ascending.

    ``g(q) = axis_factor(p, r, q) - 1`` is sampled on ``grid`` equispaced
    points of ``search``; each sign change is refined by bisection to
    ``|dq| <= 1e-12``.  Samples with ``|g| <= 1e-12`` are below what the
    residual can resolve and never serve as bracket ends.  Brackets across
    which the 2F1 denominator changes sign are poles and are skipped.  ``g(1)`` is always checked to vanish and
    ``q = 1`` is reported whenever it lies in ``search``.
    """
    if not 1 <= axis <= problem.axis_count:
        raise DomainError(f"axis {axis} out of range 1..{problem.axis_count}")
    lo, hi = search
    if not 0 < lo < hi <= 1:
        raise DomainError("search interval must satisfy 0 < lo < hi <= 1")
    if grid < 2:
        raise DomainError("grid needs at least two points")
    p, r, form = problem.p[axis - 1], problem.r[axis - 1], problem.form

    g1 = axis_factor(p, r, 1.0, form) - 1.0
    if not abs(g1) <= ROOT_AT_ONE_TOL:
        raise AssertionError(f"characteristic residual at q=1 is {g1!r}, expected 0")

    def g(q: float) -> float:
        return axis_factor(p, r, q, form) - 1.0

    qs = [lo + (hi - lo) * i / (grid - 1) for i in range(grid)]
    if hi == 1:
        qs = qs[:-1]
    # keep only samples whose residual is resolved above rounding noise; near
    # q = 1 the residual vanishes to high order and its noise changes sign
    samples = []
    for q in qs:
        num, den = _axis_parts(p, r, q, form)
        if den == 0:
            continue
        gq = num / den - 1.0
        if abs(gq) > FLAT_TOL:
            samples.append((q, gq, den))
    roots: list[float] = []
    for (qa, ga, da), (qb, gb, db) in zip(samples, samples[1:]):
        if (da < 0) != (db < 0):
            continue
        if (ga < 0) != (gb < 0):
            roots.append(_bisect(g, qa, qb, ga, BISECTION_XTOL))
    if hi == 1:
        roots.append(1.0)
    return sorted(roots)


@dataclass(frozen=True)
class LinkageRow:
    N: tuple[int, ...]
    h: tuple[float, ...]
    gl_value: float
    rl_value: float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class LinkageReport:
    p: tuple[float, ...]
    r: tuple[float, ...]
    x: tuple[float, ...]
    q: tuple[float, ...]
    schedule: list[LinkageRow] = field(default_factory=list)
    slope: float | None = None
    taylor: tuple[float, ...] | None = None

    @property
    def strictly_decreasing(self) -> bool:
        errs = [row.abs_err for row in self.schedule]
        return all(b < a for a, b in zip(errs, errs[1:]))

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.taylor is None:
            del d["taylor"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def convergence_slope(Ns: Sequence[float], errors: Sequence[float]) -> float | None:
    """Least-squares slope of ``log(error)`` against ``log(N)``; zero errors are skipped."""
    pts = [(math.log(n), math.log(e)) for n, e in zip(Ns, errors) if e > 0]
    if len(pts) < 2:
        return None
    xs, ys = zip(*pts)
    return statistics.linear_regression(xs, ys).slope


def _schedule_entry(N: int | Sequence[int], n: int) -> tuple[int, ...]:
    if isinstance(N, int):
        return (N,) * n
    N = tuple(int(v) for v in N)
    if len(N) != n:
        raise DomainError("schedule entries must have one N per axis")
    return N


def verify_gl_rl_linkage(
    p: PowerExponents | float | Sequence[float],
    r: float | Sequence[float],
    x: float | Sequence[float],
    q: float | Sequence[float],
    N_schedule: Sequence[int | Sequence[int]],
) -> LinkageReport:
    """Compare the q-linked GL sum with the RL value along an increasing N schedule."""
    ps = p.p if isinstance(p, PowerExponents) else _as_tuple(p)
    rs, xs, qs = _as_tuple(r), _as_tuple(x), _as_tuple(q)
    if not N_schedule:
        raise DomainError("N schedule is empty")
    entries = [_schedule_entry(N, len(ps)) for N in N_schedule]
    if any(b <= a for a, b in zip(entries, entries[1:])):
        raise DomainError("N schedule must be increasing")
    target = rl_power_value(ps, rs, xs)
    rows = []
    for N in entries:
        scheme = GLScheme(xs, rs, N, q=qs)
        value = gl_factorized(ps, scheme)
        err = abs(value - target)
        rel = err / abs(target) if target != 0 else err
        rows.append(LinkageRow(N, scheme.steps, value, target, err, rel))
    slope = convergence_slope([math.prod(row.N) ** (1 / len(ps)) for row in rows],
                              [row.abs_err for row in rows])
    return LinkageReport(ps, rs, xs, qs, rows, slope)


def verify_polynomial_linkage(
    coefficients: Sequence[float],
    r: float,
    x: float,
    q: float,
    N_schedule: Sequence[int],
) -> LinkageReport:
    """Linked GL sum of ``sum_j c_j x^j`` against ``sum_j c_j`` times the RL power values.

    The GL side is evaluated on the polynomial itself, so agreement checks the
    linearity of the GL sum in ``f`` rather than assuming it.
    """
    cs = tuple(float(c) for c in coefficients)
    if not cs:
        raise DomainError("polynomial needs at least one coefficient")
    if not N_schedule:
        raise DomainError("N schedule is empty")
    Ns = [int(N) for N in N_schedule]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise DomainError("N schedule must be increasing")
    acc = CompensatedSum()
    for j, c in enumerate(cs):
        if c:
            acc.add_product(c, rl_power_value(j, r, x))
    target = acc.value
    f = polynomial_function(cs)
    rows = []
    for N in Ns:
        scheme = GLScheme(x, r, N, q=q)
        value = gl_univariate(f, scheme)
        err = abs(value - target)
        rel = err / abs(target) if target != 0 else err
        rows.append(LinkageRow((N,), scheme.steps, value, target, err, rel))
    slope = convergence_slope(Ns, [row.abs_err for row in rows])
    return LinkageReport((), (float(r),), (float(x),), (float(q),), rows, slope, cs)
