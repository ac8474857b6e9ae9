"""Semi-flat mirror pairs built from left-invariant affine structures on
three-dimensional Lie groups.

Everything happens at the Lie algebra level.  An affine structure is recorded
by its linear part ``R_i = d(rho)(E_i)`` and the differential ``tau`` of the
developing map at the identity.  From it we build

* the symplectic (IIA) algebra ``g x| (R^3)^*``: fiber coframe ``phi`` with
  ``dphi_a = sum_{i,b} (R_i)_{ba} sigma^i ^ phi_b``,
* the complex (IIB) algebra ``g x| R^3``: fiber coframe ``phi`` with
  ``dphi_a = -sum_{i,b} (R_i)_{ab} sigma^i ^ phi_b``,

where ``sigma`` is the Maurer-Cartan coframe of the base group.  Indices
``1..3`` are fiber directions and ``4..6`` base directions.  In the
distinguished frame the base coframe is ``mu = tau sigma`` (the action
coordinates ``dr``); in the group frame it is ``sigma`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .exterior import Form
from .lie import LieAlgebra
from .scalar import CScalar, Scalar, as_scalar, unit_for_trace
from .su3 import SU3Structure

__all__ = [
    "AffineStructureData",
    "AffineReport",
    "MirrorPair",
    "affine_data_check",
    "build_mirror_pair",
    "verify_against_listing",
    "listing_mismatches",
    "HolonomyGenerator",
    "LatticeBasis",
    "holonomy_conjugates",
    "holonomy_preserves_lattice",
    "xi_lattice",
    "untwisted_generators",
    "twisted_generators",
    "twisted_linear_part",
    "catalog",
    "affine_structure",
    "AFFINE_NAMES",
]

Matrix = list[list]


def _unit(n: int, i: int, j: int) -> Matrix:
    """Matrix with a single 1 at (row i, column j), 1-based."""
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i - 1][j - 1] = Fraction(1)
    return m


def _zero(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def _diag(*entries) -> Matrix:
    n = len(entries)
    m = _zero(n)
    for k, x in enumerate(entries):
        m[k][k] = x
    return m


def _add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in row] for row in A]


def _sub(A: Matrix, B: Matrix) -> Matrix:
    return _add(A, _scale(-1, B))


def _is_zero(A: Matrix) -> bool:
    return not any(x for row in A for x in row)


def _mat_str(A: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in A) + "]"


@dataclass(frozen=True)
class AffineStructureData:
    """Lie-algebra shadow of a left-invariant complete affine structure."""

    name: str
    base: LieAlgebra
    rho: tuple
    tau: tuple
    params: Mapping[str, object] = field(default_factory=dict)
    label: str = ""
    note: str = ""

    @property
    def n(self) -> int:
        return self.base.n

    def rho_of(self, x: Sequence) -> Matrix:
        """``R_x = sum_i x_i R_i``."""
        acc = _zero(self.n)
        for xi, R in zip(x, self.rho):
            if xi:
                acc = _add(acc, _scale(xi, R))
        return acc

    def product(self, x: Sequence, y: Sequence) -> list:
        """The left-symmetric product ``x . y = tau^{-1} R_x tau y``."""
        tau_inv = linalg.inverse(self.tau)
        ty = [[v] for v in y]
        out = linalg.matmul(tau_inv, linalg.matmul(self.rho_of(x), linalg.matmul(self.tau, ty)))
        return [row[0] for row in out]


@dataclass
class AffineReport:
    homomorphism: bool
    left_symmetric: bool
    compatible: bool
    tau_invertible: bool

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.left_symmetric and self.compatible and self.tau_invertible

    def to_json(self) -> dict:
        return {
            "homomorphism": self.homomorphism,
            "left_symmetric": self.left_symmetric,
            "commutator_is_bracket": self.compatible,
            "tau_invertible": self.tau_invertible,
            "ok": self.ok,
        }


def affine_data_check(a: AffineStructureData) -> AffineReport:
    n = a.n
    c = a.base.structure_constants()
    basis = [[1 if k == i else 0 for k in range(n)] for i in range(n)]

    hom = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            Ri, Rj = a.rho[i - 1], a.rho[j - 1]
            comm = _sub(linalg.matmul(Ri, Rj), linalg.matmul(Rj, Ri))
            rhs = a.rho_of([c.get((k, i, j), 0) for k in range(1, n + 1)])
            if not _is_zero(_sub(comm, rhs)):
                hom = False

    if linalg.det(a.tau) == 0:
        return AffineReport(hom, False, False, False)

    prods = [[a.product(x, y) for y in basis] for x in basis]

    def mult(x, y):
        # bilinear extension from the basis table
        out = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out = [o + xi * yj * p for o, p in zip(out, prods[i][j])]
        return out

    compatible = all(
        [p - q for p, q in zip(prods[i][j], prods[j][i])]
        == [c.get((k, i + 1, j + 1), 0) for k in range(1, n + 1)]
        for i in range(n) for j in range(n))

    left_sym = True
    for x in basis:
        for y in basis:
            for z in basis:
                lhs = [p - q for p, q in zip(mult(mult(x, y), z), mult(x, mult(y, z)))]
                rhs = [p - q for p, q in zip(mult(mult(y, x), z), mult(y, mult(x, z)))]
                if lhs != rhs:
                    left_sym = False
    return AffineReport(hom, left_sym, compatible, True)


# construction -------------------------------------------------------------------

def _semidirect(a: AffineStructureData, dual: bool) -> LieAlgebra:
    """Group-frame coframe differentials: fiber 1..n, base n+1..2n."""
    n = a.n
    N = 2 * n
    shift = [Form.e(N, n + k) for k in range(1, n + 1)]
    base_d = []
    for f in a.base.d_coframe:
        acc = Form.zero(N)
        for m, coeff in f.terms.items():
            i, j = [k for k in range(n) if m >> k & 1]
            acc = acc + shift[i].wedge(shift[j]).scale(coeff)
        base_d.append(acc)
    fiber_d = []
    for p in range(n):
        acc = Form.zero(N)
        for i, R in enumerate(a.rho):
            for b in range(n):
                coeff = R[b][p] if dual else -R[p][b]
                if coeff:
                    acc = acc + shift[i].wedge(Form.e(N, b + 1)).scale(coeff)
        fiber_d.append(acc)
    return LieAlgebra(fiber_d + base_d)


def _frame_matrix(tau) -> Matrix:
    n = len(tau)
    M = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        M[k][k] = Fraction(1)
    for i in range(n):
        for j in range(n):
            M[n + i][n + j] = tau[i][j]
    return M


@dataclass
class MirrorPair:
    """The symplectic (IIA) and complex (IIB) sides over one affine base,
    in the distinguished frame."""

    affine: AffineStructureData
    iia: SU3Structure
    iib: SU3Structure
    iia_group: LieAlgebra
    iib_group: LieAlgebra
    fiber: tuple = (1, 2, 3)
    base: tuple = (4, 5, 6)

    @property
    def iia_algebra(self) -> LieAlgebra:
        return self.iia.g

    @property
    def iib_algebra(self) -> LieAlgebra:
        return self.iib.g

    def algebra(self, side: str, frame: str = "distinguished") -> LieAlgebra:
        if side not in ("iia", "iib"):
            raise ValueError(f"unknown side {side!r}")
        if frame == "distinguished":
            return self.iia.g if side == "iia" else self.iib.g
        if frame == "group":
            return self.iia_group if side == "iia" else self.iib_group
        raise ValueError(f"unknown frame {frame!r}")

    def to_json(self) -> dict:
        return {
            "affine": self.affine.name,
            "params": {k: str(v) for k, v in self.affine.params.items()},
            "fiber": list(self.fiber),
            "base": list(self.base),
            "iia": {
                "distinguished": self.iia.g.salamon(),
                "group": self.iia_group.salamon(),
                "omega": self.iia.omega.render(),
                "Omega": self.iia.Omega.render(),
            },
            "iib": {
                "distinguished": self.iib.g.salamon(),
                "group": self.iib_group.salamon(),
                "omega": self.iib.omega.render(),
                "Omega": self.iib.Omega.render(),
            },
        }


def build_mirror_pair(a: AffineStructureData, check: bool = True) -> MirrorPair:
    """Build both semidirect products with their distinguished structures
    ``omega = sum e^{k,k+3}``, ``Omega = prod (e^k + i e^{k+3})``."""
    if check:
        rep = affine_data_check(a)
        if not rep.ok:
            raise ValueError(f"affine data {a.name!r} fails its checks: {rep.to_json()}")
    iia_group = _semidirect(a, dual=True)
    iib_group = _semidirect(a, dual=False)
    M = _frame_matrix(a.tau)
    iia = iia_group.change_coframe(M, name=f"{a.name} IIA")
    iib = iib_group.change_coframe(M, name=f"{a.name} IIB")
    return MirrorPair(a, SU3Structure.standard(iia), SU3Structure.standard(iib),
                      iia_group, iib_group)


def listing_mismatches(g: LieAlgebra, expected: LieAlgebra) -> list[tuple[int, Form, Form]]:
    """Indices ``k`` (1-based) with ``de^k`` differing, with both values."""
    if g.n != expected.n:
        raise ValueError("dimension mismatch")
    return [(k, a, b) for k, (a, b) in enumerate(zip(g.d_coframe, expected.d_coframe), start=1)
            if a != b]


def verify_against_listing(p: MirrorPair, expected_iia, expected_iib,
                           frame: str = "distinguished") -> bool:
    """Coefficient-wise equality of both sides against listed coframes
    (Salamon text or ``LieAlgebra``)."""
    params = p.affine.params

    def as_alg(x):
        return x if isinstance(x, LieAlgebra) else LieAlgebra.from_salamon(x, params)

    ok_a = not listing_mismatches(p.algebra("iia", frame), as_alg(expected_iia))
    ok_b = not listing_mismatches(p.algebra("iib", frame), as_alg(expected_iib))
    return ok_a and ok_b


# holonomy and lattices ------------------------------------------------------------

@dataclass(frozen=True)
class HolonomyGenerator:
    """Affine map ``v -> M v + t``; ``t`` may be ``None`` when it has no exact
    representation in the field (e.g. ``log u``)."""

    M: tuple
    t: tuple | None = None
    label: str = ""

    def __post_init__(self):
        if linalg.det([list(r) for r in self.M]) == 0:
            raise ValueError("holonomy linear part must be invertible")


@dataclass(frozen=True)
class LatticeBasis:
    """Columns of ``P`` generate the lattice."""

    P: tuple

    def __post_init__(self):
        if linalg.det([list(r) for r in self.P]) == 0:
            raise ValueError("lattice basis is singular")

    def coordinates(self, v: Sequence) -> list:
        P_inv = linalg.inverse([list(r) for r in self.P])
        return [row[0] for row in linalg.matmul(P_inv, [[x] for x in v])]


def _is_int(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, CScalar):
        return not x.im and x.re.is_integer()
    return as_scalar(x).is_integer()


def holonomy_conjugates(gens: Sequence[HolonomyGenerator], basis: LatticeBasis) -> list[Matrix]:
    """``P^{-1} M P`` for each generator."""
    P = [list(r) for r in basis.P]
    P_inv = linalg.inverse(P)
    return [linalg.matmul(linalg.matmul(P_inv, [list(r) for r in g.M]), P) for g in gens]


def holonomy_preserves_lattice(gens: Sequence[HolonomyGenerator], basis: LatticeBasis,
                               strict: bool = False) -> bool:
    """True iff every ``P^{-1} M P`` is integral with determinant +-1.

    With ``strict`` the translation parts that are given must also be
    lattice vectors.
    """
    for C, g in zip(holonomy_conjugates(gens, basis), gens):
        if not all(_is_int(x) for row in C for x in row):
            return False
        d = linalg.det(C)
        if d != 1 and d != -1:
            return False
        if strict and g.t is not None:
            if not all(_is_int(x) for x in basis.coordinates(g.t)):
                return False
    return True


def xi_lattice(m: int) -> LatticeBasis:
    """Columns ``(1,0,0)``, ``(0,1,1)``, ``(0,u,1/u)`` with ``u + 1/u = m``."""
    u = unit_for_trace(m)
    one, zero = Scalar(1), Scalar(0)
    return LatticeBasis(((one, zero, zero), (zero, one, u), (zero, one, u.inverse())))


def untwisted_generators(m: int) -> list[HolonomyGenerator]:
    """Linear parts (and representable translations) of the lattice
    generators for the untwisted structure on E(1,1)."""
    u = unit_for_trace(m)
    v = u.inverse()
    one, zero = Scalar(1), Scalar(0)
    ident = ((one, zero, zero), (zero, one, zero), (zero, zero, one))
    return [
        HolonomyGenerator(((one, zero, zero), (zero, u, zero), (zero, zero, v)), None, "n1"),
        HolonomyGenerator(ident, (zero, one, one), "n2"),
        HolonomyGenerator(ident, (zero, u, v), "n3"),
    ]


def twisted_linear_part(m: int, n1: int, n2: int, n3: int) -> Matrix:
    """Linear part of the holonomy of ``gamma(n1, n2, n3)`` for the twisted
    structure on E(1,1)."""
    u = unit_for_trace(m)
    v = u.inverse()
    a = u ** n1 if n1 >= 0 else v ** (-n1)
    b = a.inverse()
    one, zero = Scalar(1), Scalar(0)
    return [[one, a * (n2 + v * n3), b * (n2 + u * n3)],
            [zero, a, zero],
            [zero, zero, b]]


def twisted_generators(m: int, as_listed: bool = True) -> list[HolonomyGenerator]:
    """The three generator linear parts for the twisted structure on E(1,1).

    ``as_listed`` uses the matrices of the conjugation identities, whose third
    matrix has first row ``(1, u, 1/u)``; otherwise the linear parts come from
    :func:`twisted_linear_part`, where that row is ``(1, 1/u, u)``.  Both are
    lattice automorphisms.
    """
    u = unit_for_trace(m)
    v = u.inverse()
    one, zero = Scalar(1), Scalar(0)
    if as_listed:
        mats = [
            [[one, zero, zero], [zero, u, zero], [zero, zero, v]],
            [[one, one, one], [zero, one, zero], [zero, zero, one]],
            [[one, u, v], [zero, one, zero], [zero, zero, one]],
        ]
    else:
        mats = [twisted_linear_part(m, 1, 0, 0), twisted_linear_part(m, 0, 1, 0),
                twisted_linear_part(m, 0, 0, 1)]
    # translations D(gamma) for n2, n3 are (1,1,1) and (1,u,1/u)
    trans = [None, (one, one, one), (one, u, v)]
    return [HolonomyGenerator(tuple(tuple(r) for r in M), t, f"n{k + 1}")
            for k, (M, t) in enumerate(zip(mats, trans))]


# catalog --------------------------------------------------------------------------

AFFINE_NAMES = ("R3-twisted", "H3-untwisted", "H3-twisted", "E11-untwisted", "E11-twisted")

_ALIASES = {
    "r3-twisted": "R3-twisted",
    "h3-untwisted": "H3-untwisted",
    "h3-twisted": "H3-twisted",
    "e11-untwisted": "E11-untwisted",
    "e11-twisted": "E11-twisted",
}


def affine_structure(name: str, lam=None) -> AffineStructureData:
    """One of the five affine structures; ``lam`` is needed for H3-twisted."""
    key = _ALIASES.get(name.lower(), name)
    I3 = _diag(Fraction(1), Fraction(1), Fraction(1))
    Z = _zero(3)
    if key == "R3-twisted":
        # developing map (x1, x2, x3 + x1 x2)
        return AffineStructureData(
            key, LieAlgebra.from_salamon("(0,0,0)", name="R^3"),
            (_unit(3, 3, 2), _unit(3, 3, 1), Z), I3,
            label="twisted structure on R^3",
            note="abelian base, developing map (x1, x2, x3 + x1 x2)")
    if key == "H3-untwisted":
        return AffineStructureData(
            key, LieAlgebra.from_salamon("(0,0,-12)", name="h3"),
            (_unit(3, 3, 2), Z, Z), I3,
            label="untwisted structure on the Heisenberg group",
            note="developing map the identity in exponential coordinates")
    if key == "H3-twisted":
        if lam is None:
            raise ValueError("H3-twisted needs a value of lambda")
        lam = Fraction(lam) if not isinstance(lam, (Scalar, CScalar)) else lam
        if lam == 0 or lam == 1:
            raise ValueError("lambda must differ from 0 and 1")
        return AffineStructureData(
            key, LieAlgebra.from_salamon("(0,0,-12)", name="h3"),
            (_unit(3, 3, 2), _unit(3, 3, 1), Z), _diag(Fraction(1), lam, lam - 1),
            params={"lambda": lam},
            label="twisted family on the Heisenberg group",
            note="developing map (x1, lambda x2, (lambda-1) x3 + x1 x2)")
    if key == "E11-untwisted":
        return AffineStructureData(
            key, LieAlgebra.from_salamon("(0,-12,13)", name="e(1,1)"),
            (_diag(Fraction(0), Fraction(1), Fraction(-1)), Z, Z), I3,
            label="untwisted structure on E(1,1)",
            note="linear part diag(1, e^x1, e^-x1)")
    if key == "E11-twisted":
        return AffineStructureData(
            key, LieAlgebra.from_salamon("(0,-12,13)", name="e(1,1)"),
            (_diag(Fraction(0), Fraction(1), Fraction(-1)), _unit(3, 1, 3), _unit(3, 1, 2)), I3,
            label="twisted structure on E(1,1)",
            note="developing map (x1 + x2 x3, x2, x3)")
    raise KeyError(f"unknown affine structure {name!r}; choose from {', '.join(AFFINE_NAMES)}")


def catalog(lam=Fraction(1, 2)) -> list[AffineStructureData]:
    """The five affine structures, H3-twisted instantiated at ``lam``."""
    return [affine_structure(n, lam if n == "H3-twisted" else None) for n in AFFINE_NAMES]
