"""Embedded data: the type IIA algebras with their SU(3)-structures, the
structure equations of every constructed mirror pair, and the mirror table
with its Tseng-Yau / Bott-Chern numbers.

Text fields are kept close to the printed notation and parsed on demand, so
the parser is exercised on the same strings a reader would type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .lie import LieAlgebra
from .notation import parse_form
from .scalar import CScalar, Scalar
from .su3 import SU3Structure

__all__ = [
    "Table1Row",
    "TABLE1",
    "TABLE1_PARAMS",
    "TABLE1_CORRECTED",
    "Listing",
    "LISTINGS",
    "Table2Row",
    "TABLE2",
    "corrected_structure",
    "frame_matrix",
    "table1_row",
    "table2_row",
]


@dataclass(frozen=True)
class Table1Row:
    index: int
    algebra: str
    omega: str
    Omega: str
    completely_solvable: bool
    affine: tuple[str, ...] = ()
    constructible: bool = False
    note: str = ""

    def lie_algebra(self, params: Mapping[str, object] | None = None) -> LieAlgebra:
        return LieAlgebra.from_salamon(self.algebra, params or TABLE1_PARAMS,
                                       name=f"IIA row {self.index}")

    def structure(self, params: Mapping[str, object] | None = None) -> SU3Structure:
        params = params or TABLE1_PARAMS
        g = self.lie_algebra(params)
        return SU3Structure(g, parse_form(self.omega, g.n, params),
                            parse_form(self.Omega, g.n, params))

    @property
    def provenance(self) -> str:
        return f"type IIA list, row {self.index}"


# sampled values of the free parameters
TABLE1_PARAMS = {"lambda": Fraction(1, 2), "alpha": Fraction(1, 2)}

TABLE1 = (
    Table1Row(1, "(0,0,0,0,e^{12},e^{13})", "e^{14}+e^{26}+e^{35}",
              "(e^1+ie^4)∧(e^2+ie^6)∧(e^3+ie^5)", True,
              affine=("R3-twisted", "H3-untwisted"), constructible=True),
    Table1Row(2, "(0,0,0,e^{12},e^{13},e^{23})", "e^{61}+λe^{52}+(1-λ)e^{34}",
              "(e^6+ie^1)∧(e^5+iλe^2)∧(e^3+i(1-λ)e^4)", True,
              affine=("H3-twisted",), constructible=True,
              note="family in lambda, lambda not 0 or 1"),
    Table1Row(3, "(0,-e^{13},-e^{12},0,-e^{46},-e^{45})", "e^{14}+e^{23}+e^{56}",
              "(1+i)(e^1+ie^4)∧(e^2+ie^3)∧(e^5+ie^6)", True,
              note="E(1,1) x E(1,1); no semidirect splitting with Lagrangian fibers"),
    Table1Row(4, "(e^{15},-e^{25},-e^{35},e^{45},0,0)", "e^{31}+e^{24}+e^{56}",
              "(e^3+ie^1)∧(e^2+ie^4)∧(e^5+ie^6)", True,
              affine=("E11-untwisted",), constructible=True),
    Table1Row(5, "(αe^{15}+e^{25},-e^{15}+αe^{25},-αe^{35}+e^{45},-e^{35}-αe^{45},0,0)",
              "e^{13}+e^{24}+e^{56}", "(e^3+ie^1)∧(e^2+ie^4)∧(e^5+ie^6)", False,
              note="family in alpha"),
    Table1Row(6, "(e^{23},-e^{36},e^{26},e^{26}-e^{56},e^{36}+e^{46},0)",
              "-2e^{16}+e^{34}-e^{25}", "(-2e^1+ie^6)∧(e^3+ie^4)∧(e^5+ie^2)", False),
    Table1Row(7, "(e^{16}+e^{35},-e^{26}+e^{45},e^{36},-e^{46},0,0)", "e^{14}+e^{23}+e^{56}",
              "(e^1+ie^4)∧(e^2+ie^3)∧(e^5+ie^6)", True,
              affine=("E11-twisted",), constructible=True),
    Table1Row(8, "(-e^{16}+e^{25},-e^{15}-e^{26},e^{36}-e^{45},e^{35}+e^{46},0,0)",
              "e^{14}+e^{23}+e^{65}", "(e^1+ie^4)∧(e^2+ie^3)∧(e^6+ie^5)", False),
)

_SQRT2_HALF = Scalar(0, Fraction(1, 2), 2)

# Minimal edits under which rows 3 and 5 become SU(3)-structures of type IIA.
# Row 3: unit phase (1+i)/sqrt 2 instead of (1+i).  Row 5: first factor
# e^1 + i e^3, the one compatible with the e^{13} term of omega.
TABLE1_CORRECTED = {
    3: dict(Omega="(e^1+ie^4)∧(e^2+ie^3)∧(e^5+ie^6)",
            scale=CScalar(_SQRT2_HALF, _SQRT2_HALF)),
    5: dict(Omega="(e^1+ie^3)∧(e^2+ie^4)∧(e^5+ie^6)", scale=CScalar(1)),
}


def table1_row(index: int) -> Table1Row:
    return TABLE1[index - 1]


def corrected_structure(index: int, params: Mapping[str, object] | None = None) -> SU3Structure:
    """Row ``index`` with the corrected ``Omega`` of :data:`TABLE1_CORRECTED`."""
    params = params or TABLE1_PARAMS
    row = table1_row(index)
    fix = TABLE1_CORRECTED[index]
    g = row.lie_algebra(params)
    Omega = parse_form(fix["Omega"], g.n, params).scale(fix["scale"])
    return SU3Structure(g, parse_form(row.omega, g.n, params), Omega)


@dataclass(frozen=True)
class Listing:
    """Structure equations of a constructed pair as printed.

    ``frame`` is the coframe they are written in: ``distinguished`` or
    ``group``.  ``to_distinguished`` lists the distinguished coframe in terms
    of the printed one (``e^a = sum M[a][b] f^b``) when they differ.
    """

    affine: str
    iia: str
    iib: str
    frame: str = "distinguished"
    to_distinguished: str | None = None
    note: str = ""

    def algebras(self, params: Mapping[str, object] | None = None) -> tuple[LieAlgebra, LieAlgebra]:
        # printed coframes may be named f instead of e
        return (LieAlgebra.from_salamon(self.iia.replace("f", "e"), params),
                LieAlgebra.from_salamon(self.iib.replace("f", "e"), params))


LISTINGS = {
    "R3-twisted": Listing("R3-twisted", "(-e^{35},-e^{34},0,0,0,0)", "(0,0,e^{24}+e^{15},0,0,0)"),
    "H3-untwisted": Listing("H3-untwisted", "(0,-e^{34},0,0,0,-e^{45})", "(0,0,e^{24},0,0,-e^{45})"),
    "H3-twisted": Listing("H3-twisted", "(-f^{35},-f^{34},0,0,0,-f^{45})",
                          "(0,0,f^{24}+f^{15},0,0,-f^{45})", frame="group",
                          to_distinguished="f1,f2,f3,f4,λf5,(λ-1)f6"),
    "E11-untwisted": Listing("E11-untwisted", "(0,-e^{24},e^{34},0,-e^{45},e^{46})",
                             "(0,e^{24},-e^{34},0,-e^{45},e^{46})"),
    "E11-twisted": Listing("E11-twisted", "(0,-e^{24}-e^{16},e^{34}-e^{15},0,-e^{45},e^{46})",
                           "(-e^{35}-e^{26},e^{24},-e^{34},0,-e^{45},e^{46})",
                           note="the printed sign of de^1 on the complex side is opposite to "
                                "the one implied by the accompanying coordinate coframe"),
}


def frame_matrix(text: str, params: Mapping[str, object] | None = None) -> list[list[CScalar]]:
    """Rows of the coframe change ``f^a = sum M[a][b] e^b`` from text such as
    ``"e3,e5,-e1,..."`` (any single-letter prefix)."""
    parts = [p.strip() for p in text.split(",")]
    n = len(parts)
    rows = []
    for p in parts:
        form = parse_form(p.replace("f", "e"), n, params)
        rows.append([form.terms.get(1 << k, CScalar(0)) for k in range(n)])
    return rows


@dataclass(frozen=True)
class Table2Row:
    label: str
    affine: str
    lambdas: tuple = ()
    iia_class: str = ""
    mirror_class: str = ""
    expected: tuple = ()
    # frames realising the isomorphism with the listed classes, written in the
    # coframe named by ``frame``
    iia_frame: str = ""
    iib_frame: str = ""
    frame: str = "distinguished"

    @property
    def provenance(self) -> str:
        return f"mirror table, row {self.label}"


TABLE2 = (
    Table2Row("R3-twisted", "R3-twisted", (), "(0,0,0,0,e^{12},e^{13})",
              "(0,0,0,0,0,e^{12}+e^{34})", (1, 3, 2, 6, 3, 4, 7),
              "e3,e4,e5,e6,-e2,-e1", "e1,e5,e2,e4,e6,e3"),
    Table2Row("H3-untwisted", "H3-untwisted", (), "(0,0,0,0,e^{12},e^{13})",
              "(0,0,0,0,e^{12},e^{13})", (2, 2, 2, 6, 3, 5, 6),
              "e4,e3,e5,e1,e2,-e6", "e4,e2,e5,e1,-e3,-e6"),
    Table2Row("H3-twisted, lambda=-1", "H3-twisted", (Fraction(-1),),
              "(0,0,0,e^{12},e^{13},e^{23})", "(0,0,0,0,e^{12},e^{14}+e^{23})",
              (1, 2, 2, 6, 3, 4, 7), "e3,e4,e5,-e2,-e1,-e6", "e4,e5,e1,e2,-e6,-e3", "group"),
    Table2Row("H3-twisted, lambda=1/2,2", "H3-twisted", (Fraction(1, 2), Fraction(2)),
              "(0,0,0,e^{12},e^{13},e^{23})", "(0,0,0,0,e^{12},e^{14}+e^{23})",
              (1, 2, 2, 6, 3, 5, 6), "e3,e4,e5,-e2,-e1,-e6", "e4,e5,e1,e2,-e6,-e3", "group"),
    Table2Row("H3-twisted, generic lambda", "H3-twisted", (Fraction(3), Fraction(5, 3)),
              "(0,0,0,e^{12},e^{13},e^{23})", "(0,0,0,0,e^{12},e^{14}+e^{23})",
              (1, 2, 2, 6, 3, 4, 6), "e3,e4,e5,-e2,-e1,-e6", "e4,e5,e1,e2,-e6,-e3", "group"),
    Table2Row("E11-untwisted", "E11-untwisted", (), "(e^{15},-e^{25},-e^{35},e^{45},0,0)",
              "(e^{15},-e^{25},-e^{35},e^{45},0,0)", (1, 1, 1, 3, 1, 3, 3),
              "e2,e3,e5,e6,-e4,e1", "e2,e3,e6,e5,e4,e1"),
    Table2Row("E11-twisted", "E11-twisted", (), "(e^{16}+e^{35},-e^{26}+e^{45},e^{36},-e^{46},0,0)",
              "(e^{24}+e^{35},e^{26},e^{36},-e^{46},-e^{56},0)", (1, 1, 0, 2, 1, 2, 1),
              "e2,e3,e6,e5,e1,-e4", "e1,e2,e5,e6,-e3,e4"),
)


def table2_row(label: str) -> Table2Row:
    for row in TABLE2:
        if row.label == label:
            return row
    raise KeyError(label)
