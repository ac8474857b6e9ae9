import pytest
from hypothesis import given, settings, strategies as st

from sfmirror.exterior import (Form, exp_truncated, indices_of, linear_substitution, mask_of,
                               monomials, operator_rank_kernel, wedge_sign)
from sfmirror.lie import LieAlgebra
from sfmirror.scalar import I

N = 6


@st.composite
def forms(draw, degree=None):
    k = draw(st.integers(0, N)) if degree is None else degree
    basis = monomials(N, k)
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    return Form(N, {m: c for m, c in zip(basis, coeffs) if c})


def test_basic_signs():
    e = lambda *ix: Form.e(N, *ix)
    assert e(2).wedge(e(1)) == -e(1, 2)
    assert e(1).wedge(e(1)).is_zero()
    assert e(3, 1) == -e(1, 3)
    assert e(1, 2).wedge(e(3, 4)) == e(1, 2, 3, 4)
    assert mask_of([3, 1]) == (0b101, -1)
    assert indices_of(0b101) == (1, 3)
    assert wedge_sign(0b10, 0b01) == -1


@settings(max_examples=50)
@given(forms(), forms())
def test_graded_commutativity(a, b):
    if not (a.is_homogeneous() and b.is_homogeneous()) or a.is_zero() or b.is_zero():
        return
    p, q = a.grade, b.grade
    assert a.wedge(b) == b.wedge(a).scale((-1) ** (p * q))


@settings(max_examples=40)
@given(forms(), forms(), forms())
def test_associativity(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=40)
@given(forms(degree=2), forms(degree=3), st.integers(1, N))
def test_contraction_is_antiderivation(a, b, v):
    lhs = a.wedge(b).contract(v)
    rhs = a.contract(v).wedge(b) + a.wedge(b.contract(v))
    assert lhs == rhs


@settings(max_examples=40)
@given(forms(degree=2), forms(degree=2))
def test_leibniz(a, b):
    g = LieAlgebra.from_salamon("(0,0,0,0,12,13)")
    assert g.d(a.wedge(b)) == g.d(a).wedge(b) + a.wedge(g.d(b))


def test_exp_and_power():
    w = Form.e(N, 1, 4) + Form.e(N, 2, 5) + Form.e(N, 3, 6)
    assert w.power(3) == Form.e(N, 1, 4, 2, 5, 3, 6).scale(6)
    ex = exp_truncated(w)
    assert ex.part(6) == Form.e(N, 1, 4, 2, 5, 3, 6)
    assert ex.part(0) == Form.one(N)


def test_conj_real_imag():
    f = Form.e(N, 1) + Form.e(N, 2, coeff=I)
    assert f.conj() == Form.e(N, 1) - Form.e(N, 2, coeff=I)
    assert f.real() == Form.e(N, 1)
    assert f.imag() == Form.e(N, 2)
    assert not f.is_real()


def test_linear_substitution():
    # e1 -> e1 + e2 sends e12 to e12
    imgs = [Form.e(N, 1) + Form.e(N, 2)] + [Form.e(N, k) for k in range(2, N + 1)]
    assert linear_substitution(Form.e(N, 1, 2), imgs) == Form.e(N, 1, 2)
    assert linear_substitution(Form.e(N, 1, 3), imgs) == Form.e(N, 1, 3) + Form.e(N, 2, 3)


def test_operator_rank_kernel():
    g = LieAlgebra.from_salamon("(0,0,12)")
    rank, kernel = operator_rank_kernel(g.d, monomials(3, 1), 3)
    assert rank == 1
    assert len(kernel) == 2


def test_json_round_trip():
    f = Form.e(N, 1, 2) + Form.e(N, 3, 4, coeff=I)
    assert Form.from_json(N, f.to_json()) == f


def test_mismatched_dimension():
    with pytest.raises(ValueError):
        Form.e(3, 1).wedge(Form.e(4, 1))
