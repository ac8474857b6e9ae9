from fractions import Fraction

import pytest
import sympy

from sfmirror.catalog import LISTINGS, TABLE1, TABLE1_PARAMS, TABLE2
from sfmirror.exterior import Form, monomials
from sfmirror.lie import LieAlgebra, ce_cohomology_dim, d_squared_check, unimodular_check


def _catalog_algebras():
    out = [(f"row{r.index}", r.lie_algebra(TABLE1_PARAMS)) for r in TABLE1]
    for name, lst in LISTINGS.items():
        a, b = lst.algebras({"lambda": Fraction(1, 2)})
        out += [(f"{name}-iia", a), (f"{name}-iib", b)]
    for row in TABLE2:
        out += [(f"{row.label}-class", LieAlgebra.from_salamon(row.iia_class)),
                (f"{row.label}-mirror", LieAlgebra.from_salamon(row.mirror_class))]
    return out


CATALOG = _catalog_algebras()


def test_convention_de_is_minus_bracket():
    g = LieAlgebra.from_salamon("(0,0,12)")
    # de3 = e12  <=>  [E1, E2] = -E3
    assert g.bracket(1, 2) == [0, 0, -1]
    assert g.bracket_table() == ["[E1,E2] = -E3"]


@pytest.mark.parametrize("name, g", CATALOG, ids=[n for n, _ in CATALOG])
def test_catalog_d_squared_and_unimodular(name, g):
    assert d_squared_check(g)
    assert unimodular_check(g)


@pytest.mark.parametrize("name, g", CATALOG, ids=[n for n, _ in CATALOG])
def test_poincare_duality(name, g):
    b = g.betti_numbers()
    assert b == b[::-1]
    assert b[0] == 1


@pytest.mark.parametrize("name, g", CATALOG, ids=[n for n, _ in CATALOG])
def test_parse_render_round_trip(name, g):
    assert LieAlgebra.from_salamon(g.salamon()) == g


def test_negative_control_fails_d_squared():
    # d(e34) = e124 != 0 in degree 2 of de4
    g = LieAlgebra.from_salamon("(0,0,12,34)")
    assert not g.is_jacobi()


def test_spec_sample_actually_jacobi():
    assert LieAlgebra.from_salamon("(0,12,13,0,0,0)").is_jacobi()


def test_non_unimodular():
    # the 2-dimensional non-abelian algebra: de2 = e12, trace ad E1 = -1
    g = LieAlgebra.from_salamon("(0,12)")
    assert g.is_jacobi()
    assert not g.is_unimodular()


def _betti_sympy(g: LieAlgebra) -> list[int]:
    """Independent oracle: matrices of d in the monomial basis through sympy."""
    n = g.n
    ranks = []
    for k in range(n + 1):
        dom, cod = monomials(n, k), monomials(n, k + 1)
        if not dom or not cod:
            ranks.append(0)
            continue
        cols = []
        for m in dom:
            img = g.d(Form._raw(n, {m: 1}))
            cols.append([sympy.Rational(str(img.terms[c].re)) if c in img.terms else 0 for c in cod])
        ranks.append(sympy.Matrix(cols).T.rank())
    return [len(monomials(n, k)) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


@pytest.mark.parametrize("spec, betti", [
    ("(0,0,0,0,12,13)", [1, 4, 9, 12, 9, 4, 1]),
    ("(0,0,0,12,13,23)", [1, 3, 8, 12, 8, 3, 1]),
    ("(0,0,12)", [1, 2, 2, 1]),
    ("(0,0,0)", [1, 3, 3, 1]),
])
def test_betti_numbers(spec, betti):
    g = LieAlgebra.from_salamon(spec)
    assert g.betti_numbers() == betti
    assert _betti_sympy(g) == betti
    assert [ce_cohomology_dim(g, k) for k in range(g.n + 1)] == betti


def test_solvable_betti_against_oracle():
    g = LieAlgebra.from_salamon("(e^{15},-e^{25},-e^{35},e^{45},0,0)")
    assert g.betti_numbers() == _betti_sympy(g)


def test_change_coframe_preserves_cohomology():
    g = LieAlgebra.from_salamon("(0,0,0,0,12,13)")
    M = [[1 if j == (i + 2) % 6 else 0 for j in range(6)] for i in range(6)]
    M[0][1] = 3
    h = g.change_coframe(M)
    assert h.is_jacobi()
    assert h.betti_numbers() == g.betti_numbers()


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        LieAlgebra.from_salamon("(0,0,17)")
