import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracgl import translation_ring as tr
from fracgl.errors import DomainError, TermCapError
from fracgl.translation_ring import (
    TranslationPolynomial,
    apply,
    difference_quotient_power,
    identity,
    ring_add,
    ring_mul,
    ring_pow,
    shift,
    to_debug_string,
    translation,
)

PHI = translation(1, 1)


def test_translation_examples():
    assert translation(1, 0) == identity(1)
    assert ring_mul(translation(1, 1), translation(1, 1)) == translation(1, 2)
    m = translation(2, -3, axis_count=2)
    assert m.terms == {(0, -3): 1}
    with pytest.raises(DomainError):
        translation(3, 1, axis_count=2)
    with pytest.raises(DomainError):
        translation(0, 1)


def test_square_of_first_difference():
    sq = ring_pow(PHI - 1, 2)
    assert sq.terms == {(0,): 1, (1,): -2, (2,): 1}
    assert to_debug_string(sq) == "(0,): 1; (1,): -2; (2,): 1"


def test_fifth_power_by_repeated_multiplication():
    brute = identity(1)
    for _ in range(5):
        brute = ring_mul(brute, PHI - 1)
    assert brute == ring_pow(PHI - 1, 5)
    for k in range(6):
        assert brute.coefficient((5 - k,)) == (-1) ** k * math.comb(5, k)


def test_canonical_form_drops_zeros():
    a = TranslationPolynomial(1, {(0,): Fraction(1), (1,): Fraction(0)})
    assert a.terms == {(0,): 1}
    assert len(PHI - PHI) == 0
    assert to_debug_string(PHI - PHI) == "0"


def test_axis_mismatch():
    with pytest.raises(DomainError):
        ring_add(identity(1), identity(2))
    with pytest.raises(DomainError):
        ring_mul(identity(1), identity(2))


def test_term_cap(monkeypatch):
    monkeypatch.setattr(tr, "MAX_TERMS", 50)
    a = translation(1, 1, 2) + translation(2, 1, 2) + 1
    with pytest.raises(TermCapError):
        ring_pow(a, 12)


def test_negative_power_rejected():
    with pytest.raises(DomainError):
        ring_pow(PHI, -1)


def elements(n=2):
    offsets = st.tuples(*[st.integers(-3, 3)] * n)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    return st.dictionaries(offsets, coeffs, max_size=5).map(
        lambda d: TranslationPolynomial(n, d)
    )


@given(elements(), elements())
def test_commutativity(a, b):
    assert a * b == b * a
    assert a + b == b + a


@given(elements(), elements(), elements())
def test_associativity_and_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(elements())
def test_identity_laws(a):
    one = identity(2)
    assert a * one == a
    assert a + TranslationPolynomial(2) == a


@pytest.mark.parametrize("n", range(21))
def test_binomial_theorem_on_ring(n):
    p = ring_pow(PHI - 1, n)
    assert len(p) == n + 1
    for k in range(n + 1):
        assert p.coefficient((n - k,)) == (-1) ** k * math.comb(n, k)


# --- apply -------------------------------------------------------------------

def cube(x):
    return x[0] ** 3


def test_apply_identity():
    assert apply(identity(1), cube, (2.0,), (0.1,)) == 8.0


def test_apply_second_difference_quotient():
    h = 1e-5
    value = apply(ring_pow(PHI - 1, 2), cube, (2.0,), (h,)) / h**2
    assert value == pytest.approx(12.0, abs=1e-3)


def test_apply_first_difference_quotient():
    value = apply(PHI - 1, lambda x: x[0] ** 2, (1.0,), (0.5,)) / 0.5
    assert value == 2.5


@given(elements(), elements())
def test_apply_is_linear(a, b):
    f = lambda x: math.sin(x[0]) * math.exp(0.3 * x[1]) + 2.0
    x, h = (0.4, -0.2), (0.01, 0.03)
    lhs = apply(a + b, f, x, h)
    rhs = apply(a, f, x, h) + apply(b, f, x, h)
    scale = sum(abs(float(c)) for c in (a.terms | b.terms).values()) * 4 + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * max(abs(rhs), scale)


def test_apply_rejects_bad_steps():
    with pytest.raises(DomainError):
        apply(PHI, cube, (1.0,), (0.0,))


# --- difference_quotient_power ----------------------------------------------

def test_dq_mixed_first_order():
    exp = difference_quotient_power((1, 1))
    assert exp.raw.terms == {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1}
    assert exp.shifted.terms == {(0, 0): 1, (0, -1): -1, (-1, 0): -1, (-1, -1): 1}


def test_dq_third_order():
    exp = difference_quotient_power((3,))
    assert [exp.raw.coefficient((m,)) for m in (3, 2, 1, 0)] == [1, -3, 3, -1]


def multibinomial(orders):
    out = {}
    for k in itertools.product(*(range(r + 1) for r in orders)):
        out[tuple(-ki for ki in k)] = math.prod(
            (-1) ** ki * math.comb(r, ki) for r, ki in zip(orders, k)
        )
    return out


def test_dq_two_one():
    brute = ring_mul(ring_pow(translation(1, 1, 2) - 1, 2), translation(2, 1, 2) - 1)
    exp = difference_quotient_power((2, 1))
    assert exp.raw == brute
    assert exp.shifted.terms == multibinomial((2, 1))


def test_dq_shift_is_explicit():
    exp = difference_quotient_power((2, 1))
    assert shift(exp.raw, (-2, -1)) == exp.shifted
    assert exp.raw != exp.shifted
    assert exp.prefactor((0.5, 0.25)) == 0.5**-2 * 0.25**-1


def test_dq_rejects_fractional():
    with pytest.raises(DomainError):
        difference_quotient_power((0.5,))


def test_mixed_partial_symmetry_step_halving():
    # f = x^3 y^2, d^3 f / dx^2 dy = 12 x y at (1.5, 0.7)
    f = lambda p: p[0] ** 3 * p[1] ** 2
    exact = 12 * 1.5 * 0.7
    exp = difference_quotient_power((2, 1))
    errs = []
    for h in (1e-2, 5e-3, 2.5e-3):
        value = exp.prefactor((h, h)) * apply(exp.raw, f, (1.5, 0.7), (h, h))
        errs.append(abs(value - exact))
    assert errs[0] / errs[1] >= 1.8
    assert errs[1] / errs[2] >= 1.8
