from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sfmirror.scalar import (CScalar, ContextError, I, Scalar, as_cscalar, sign,
                             squarefree_part, unit_for_trace)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**4)
surds = st.sampled_from([2, 3, 5, 21, 3 * 7, 2 * 3 * 5])

mpmath.mp.dps = 60


def _mp(x: Scalar):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + \
        (mpmath.mpf(x.b.numerator) / x.b.denominator) * mpmath.sqrt(x.D or 0)


@given(rationals, rationals, surds)
def test_sign_matches_high_precision(a, b, D):
    x = Scalar(a, b, D)
    ref = _mp(x)
    expected = 0 if ref == 0 else (1 if ref > 0 else -1)
    assert x.sign() == expected


@given(rationals, rationals, surds)
def test_inverse(a, b, D):
    x = Scalar(a, b, D)
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    assert x * x.inverse() == 1


@given(rationals, rationals, rationals, rationals, surds)
def test_field_axioms(a, b, c, d, D):
    x, y = Scalar(a, b, D), Scalar(c, d, D)
    assert x * y == y * x
    assert (x + y) - y == x
    assert x.norm() == (x * x.galois()).a


def test_near_cancellation_sign():
    # 1393^2 - 2*985^2 = -1, so 1393 - 985 sqrt 2 is about -3.6e-4
    x = Scalar(1393, -985, 2)
    assert x.sign() == -1
    assert (-x).sign() == 1
    assert Scalar(-1393, 985, 2) > 0


def test_mixed_contexts_rejected():
    with pytest.raises(ContextError):
        Scalar(0, 1, 2) + Scalar(0, 1, 3)


def test_surd_needs_context():
    with pytest.raises(ContextError):
        Scalar(1, 1)


def test_rationals_mix_with_any_context():
    assert Scalar(0, 1, 5) + Fraction(1, 2) == Scalar(Fraction(1, 2), 1, 5)


@pytest.mark.parametrize("m, D", [(3, 5), (4, 3), (5, 21), (6, 2), (7, 5)])
def test_unit_for_trace(m, D):
    u = unit_for_trace(m)
    assert u.D == D
    assert u + u.inverse() == m
    assert u * u.galois() == 1
    assert u.sign() == 1 and (u - 1).sign() == 1


def test_unit_for_trace_rejects_small_m():
    with pytest.raises(ValueError):
        unit_for_trace(2)


@pytest.mark.parametrize("N, expected", [(12, (2, 3)), (5, (1, 5)), (32, (4, 2)), (45, (3, 5))])
def test_squarefree_part(N, expected):
    assert squarefree_part(N) == expected


def test_complex_scalars():
    assert I * I == -1
    z = CScalar(1, 2)
    assert z * z.conjugate() == 5
    assert z * z.inverse() == 1
    assert as_cscalar(Fraction(1, 3)).is_real()
    assert sign(Scalar(-2)) == -1
    with pytest.raises(ValueError):
        sign(I)


def test_json_round_trip():
    x = Scalar(Fraction(3, 2), Fraction(-1, 2), 5)
    assert Scalar.from_json(x.to_json()) == x
    z = CScalar(x, Scalar(1))
    assert CScalar.from_json(z.to_json()) == z
