"""SU(3)-structures ``(omega, Omega)`` on six-dimensional Lie algebras.

The almost complex structure is read off from ``Omega``: ``T^{0,1}`` is the
kernel of ``v -> iota_v Omega`` and ``J = -i`` there.  Matrices act on frame
vectors, columns being images: ``J[:, j] = J(E_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Sequence

from . import linalg
from .exterior import Form, indices_of, monomials
from .lie import LieAlgebra
from .scalar import I, CScalar, as_cscalar, sign

__all__ = [
    "StructureError",
    "SU3Structure",
    "SU3Report",
    "acs_from_three_form",
    "decomposability_check",
    "factor_three_form",
    "two_form_matrix",
    "su3_check",
    "is_type_IIA",
    "is_type_IIB",
    "integrability_check",
    "NORMALIZATION",
    "NORMALIZATION_AS_PRINTED",
]

# Omega ^ conj(Omega) = NORMALIZATION * omega^3 for omega = sum e^{k,k+3},
# Omega = prod (e^k + i e^{k+3}).  The printed constant (-2i)^n/n! misses the
# reordering sign (-1)^{n(n-1)/2}, which is -1 for n = 3.
NORMALIZATION = (2 * I) ** 3 / factorial(3)
NORMALIZATION_AS_PRINTED = (-2 * I) ** 3 / factorial(3)


class StructureError(ValueError):
    """The given forms do not define the requested structure."""


def _contraction_matrix(Omega: Form) -> list[list[CScalar]]:
    n = Omega.n
    rows = monomials(n, Omega.grade - 1)
    cols = [Omega.contract(j) for j in range(1, n + 1)]
    return [[c.terms.get(m, CScalar(0)) for c in cols] for m in rows]


def acs_from_three_form(Omega: Form) -> list[list[CScalar]]:
    """The real almost complex structure induced by a complex 3-form.

    Raises ``StructureError`` if the kernel of ``v -> iota_v Omega`` is not
    half-dimensional or meets its conjugate.
    """
    n = Omega.n
    if not Omega:
        raise StructureError("Omega vanishes")
    if Omega.degrees() != {n // 2}:
        raise StructureError("Omega must be homogeneous of degree n/2")
    kernel = linalg.nullspace(_contraction_matrix(Omega), n)
    kernel = [[as_cscalar(x) for x in v] for v in kernel]
    if len(kernel) != n // 2:
        raise StructureError(f"kernel of contraction has dimension {len(kernel)}, expected {n // 2}")
    conj = [[x.conjugate() for x in v] for v in kernel]
    P_cols = kernel + conj
    if linalg.rank(P_cols) != n:
        raise StructureError("T^{0,1} meets its conjugate")
    P = linalg.transpose(P_cols)
    diag = [[CScalar(0)] * n for _ in range(n)]
    for k in range(n):
        diag[k][k] = -I if k < n // 2 else I
    J = linalg.matmul(linalg.matmul(P, diag), linalg.inverse(P))
    J = [[as_cscalar(x) for x in row] for row in J]
    if any(x.im for row in J for x in row):
        raise StructureError("induced J is not real")
    return J


def decomposability_check(Omega: Form) -> bool:
    """True iff ``(iota_v Omega) ^ Omega = 0`` for every frame vector ``v``."""
    if not Omega:
        return True
    return all(not Omega.contract(j).wedge(Omega) for j in range(1, Omega.n + 1))


def factor_three_form(Omega: Form) -> tuple[Form, ...]:
    """Write a decomposable ``Omega`` as ``psi^1 ^ ... ^ psi^k``.

    The factors span the annihilator of the contraction kernel; the first one
    absorbs the scale.
    """
    n = Omega.n
    if not decomposability_check(Omega):
        raise StructureError("form is not decomposable")
    k = Omega.grade
    kernel = linalg.nullspace(_contraction_matrix(Omega), n)
    if len(kernel) != n - k:
        raise StructureError("unexpected kernel dimension")
    ann = linalg.nullspace(kernel, n) if kernel else linalg.identity(n)
    psis = [Form.from_vector(n, a) for a in ann]
    prod = psis[0]
    for p in psis[1:]:
        prod = prod.wedge(p)
    m, c = next(iter(prod.terms.items()))
    scale = Omega.terms.get(m, CScalar(0)) / c
    psis[0] = psis[0].scale(scale)
    return tuple(psis)


def two_form_matrix(omega: Form) -> list[list[CScalar]]:
    """``W[i][j] = omega(E_i, E_j)``."""
    n = omega.n
    W = [[CScalar(0)] * n for _ in range(n)]
    for m, c in omega.terms.items():
        idx = indices_of(m)
        if len(idx) != 2:
            raise ValueError("not a 2-form")
        i, j = idx[0] - 1, idx[1] - 1
        W[i][j] = c
        W[j][i] = -c
    return W


def pullback_one_form(alpha: Form, J) -> Form:
    """``J^* alpha = alpha o J`` for a 1-form."""
    n = alpha.n
    vec = [alpha.terms.get(1 << k, CScalar(0)) for k in range(n)]
    out = [sum((vec[k] * J[k][j] for k in range(n)), CScalar(0)) for j in range(n)]
    return Form.from_vector(n, out)


@dataclass
class SU3Structure:
    """``(omega, Omega)`` on a six-dimensional Lie algebra.

    ``psi`` optionally carries the factors of ``Omega``.
    """

    g: LieAlgebra
    omega: Form
    Omega: Form
    psi: tuple[Form, ...] | None = None
    _J: list | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_psi(cls, g: LieAlgebra, omega: Form, psi: Sequence[Form]) -> "SU3Structure":
        Omega = psi[0]
        for p in psi[1:]:
            Omega = Omega.wedge(p)
        return cls(g, omega, Omega, tuple(psi))

    @classmethod
    def standard(cls, g: LieAlgebra) -> "SU3Structure":
        """``omega = sum e^{k,k+3}``, ``Omega = prod (e^k + i e^{k+3})``."""
        n = g.n
        h = n // 2
        omega = Form.zero(n)
        psi = []
        for k in range(1, h + 1):
            omega = omega + Form.e(n, k, k + h)
            psi.append(Form.e(n, k) + Form.e(n, k + h, coeff=I))
        return cls.from_psi(g, omega, psi)

    @property
    def J(self):
        if self._J is None:
            self._J = acs_from_three_form(self.Omega)
        return self._J

    def factors(self) -> tuple[Form, ...]:
        return self.psi if self.psi is not None else factor_three_form(self.Omega)


@dataclass
class SU3Report:
    acs: bool
    omega_11: bool
    positive: bool
    normalized: bool
    decomposable: bool
    normalization_ratio: CScalar | None = None
    discrepancy: CScalar | None = None
    discrepancy_as_printed: CScalar | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.acs and self.omega_11 and self.positive and self.normalized

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)
        return {
            "acs": self.acs,
            "omega_11": self.omega_11,
            "positive": self.positive,
            "normalized": self.normalized,
            "decomposable": self.decomposable,
            "normalization_ratio": s(self.normalization_ratio),
            "discrepancy": s(self.discrepancy),
            "discrepancy_as_printed": s(self.discrepancy_as_printed),
            "reason": self.reason,
            "ok": self.ok,
        }


def _top_coeff(phi: Form) -> CScalar:
    full = (1 << phi.n) - 1
    return phi.terms.get(full, CScalar(0))


def su3_check(s: SU3Structure) -> SU3Report:
    """Run the defining checks: induced J, omega of type (1,1), positivity of
    ``g(v, w) = omega(v, Jw)`` by Sylvester minors, and normalization."""
    n = s.omega.n
    decomposable = decomposability_check(s.Omega)
    try:
        J = s.J
    except StructureError as exc:
        return SU3Report(False, False, False, False, decomposable, reason=str(exc))
    W = two_form_matrix(s.omega)
    Jt = linalg.transpose(J)
    omega_11 = linalg.matmul(linalg.matmul(Jt, W), J) == W
    G = linalg.matmul(W, J)
    symmetric = all(G[i][j] == G[j][i] for i in range(n) for j in range(n))
    positive = symmetric and all(
        sign(linalg.det([row[:k] for row in G[:k]])) > 0 for k in range(1, n + 1))
    lhs = _top_coeff(s.Omega.wedge(s.Omega.conj()))
    rhs = _top_coeff(s.omega.power(n // 2))
    ratio = lhs / rhs if rhs else None
    normalized = ratio is not None and ratio == NORMALIZATION
    report = SU3Report(
        acs=True, omega_11=omega_11, positive=positive, normalized=normalized,
        decomposable=decomposable, normalization_ratio=ratio,
        discrepancy=None if ratio is None else ratio / NORMALIZATION,
        discrepancy_as_printed=None if ratio is None else ratio / NORMALIZATION_AS_PRINTED,
    )
    reasons = []
    if not omega_11:
        reasons.append("omega is not of type (1,1)")
    if not positive:
        reasons.append("omega(., J.) is not positive definite")
    if not normalized:
        reasons.append(f"normalization off by factor {report.discrepancy}")
    report.reason = "; ".join(reasons)
    return report


def is_type_IIA(s: SU3Structure) -> bool:
    g = s.g
    return not g.d(s.omega) and not g.d(s.Omega.real())


def is_type_IIB(s: SU3Structure) -> bool:
    g = s.g
    return not g.d(s.omega.wedge(s.omega)) and not g.d(s.Omega)


def complex_coframe_matrix(psi: Sequence[Form]) -> list[list[CScalar]]:
    """Rows: coefficients of ``psi^1..psi^h, conj(psi^1)..conj(psi^h)``."""
    n = psi[0].n
    rows = [[p.terms.get(1 << k, CScalar(0)) for k in range(n)] for p in psi]
    rows += [[x.conjugate() for x in row] for row in rows]
    return rows


def complex_algebra(s: SU3Structure) -> LieAlgebra:
    """The algebra rewritten in the coframe ``(psi, conj psi)``; indices
    ``1..h`` are of type (1,0), ``h+1..n`` of type (0,1)."""
    return s.g.change_coframe(complex_coframe_matrix(s.factors()))


def integrability_check(s: SU3Structure) -> bool:
    """True iff ``d(Lambda^{1,0})`` has no (0,2) component."""
    gc = complex_algebra(s)
    h = gc.n // 2
    low = (1 << h) - 1
    for k in range(h):
        for m in gc.d_coframe[k].terms:
            if not m & low:
                return False
    return True
