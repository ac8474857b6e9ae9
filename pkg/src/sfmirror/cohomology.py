"""Bigraded invariant cohomologies of semi-flat mirror pairs.

Symplectic side: forms are bigraded by the number of fiber and base indices
(``A^{p,q}``: ``p`` fiber, ``q`` base), and the refined Tseng-Yau dimension is

    h_TY^{p,q} = dim(ker d ∩ ker d^Lambda ∩ A^{p,q}) - dim(dd^Lambda(A^{p+1,q-1})).

Complex side: forms are bigraded by type with respect to the integrable J of
``Omega``, and

    h_BC^{p,q} = dim(ker del ∩ ker delbar ∩ Lambda^{p,q}) - dim(del delbar(Lambda^{p-1,q-1})).

All computations are exact and only see left-invariant forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

from . import linalg
from .exterior import Form, monomials
from .lie import LieAlgebra
from .scalar import CScalar
from .su3 import SU3Structure, complex_algebra, integrability_check, two_form_matrix

__all__ = [
    "BidegreeError",
    "bidegree",
    "delta_project",
    "d_bidegree_check",
    "SymplecticComplex",
    "ComplexComplex",
    "tseng_yau_dim",
    "bott_chern_dim",
    "mirror_numbers_check",
    "MirrorNumbers",
    "TABLE2_COLUMNS",
    "table2_vector",
    "header_pairing",
]


class BidegreeError(ValueError):
    """An operator does not have the bidegree the computation relies on."""


def _mask(indices: Sequence[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def bidegree(mask: int, first: int) -> tuple[int, int]:
    """``(p, q)`` of a monomial: ``p`` indices inside ``first``, ``q`` outside."""
    return (mask & first).bit_count(), (mask & ~first).bit_count()


def delta_project(phi: Form, p: int, q: int, fiber: Sequence[int] = (1, 2, 3)) -> Form:
    """The ``A^{p,q}`` component of ``phi``."""
    f = _mask(fiber)
    return phi.restrict(lambda m: bidegree(m, f) == (p, q))


def _bidegrees_of(op: Callable[[Form], Form], n: int, first: int) -> set[tuple[int, int]]:
    shifts = set()
    for m in monomials(n):
        p, q = bidegree(m, first)
        for t in op(Form.e(n, *[k + 1 for k in range(n) if m >> k & 1])).terms:
            a, b = bidegree(t, first)
            shifts.add((a - p, b - q))
    return shifts


def d_bidegree_check(g: LieAlgebra, fiber: Sequence[int] = (1, 2, 3)) -> bool:
    """True iff ``d(A^{p,q}) ⊆ A^{p,q+1}`` for all ``p, q``."""
    return _bidegrees_of(g.d, g.n, _mask(fiber)) <= {(0, 1)}


def _block(n: int, first: int, p: int, q: int) -> list[int]:
    return [m for m in monomials(n) if bidegree(m, first) == (p, q)]


def _rank_of_images(images: Sequence[Form], coords: Sequence[int]) -> int:
    vecs = [img.vector(coords) for img in images]
    vecs = [v for v in vecs if any(v)]
    return linalg.rank(vecs) if vecs else 0


class _Complex:
    n: int
    first: int

    def _images(self, op, domain):
        return [op(Form.e(self.n, *[k + 1 for k in range(self.n) if m >> k & 1]))
                for m in domain]

    def block(self, p: int, q: int) -> list[int]:
        return _block(self.n, self.first, p, q)

    def _kernel_dim(self, ops, domain) -> int:
        if not domain:
            return 0
        allm = monomials(self.n)
        vecs = []
        for m in domain:
            e = Form.e(self.n, *[k + 1 for k in range(self.n) if m >> k & 1])
            v = []
            for op in ops:
                v.extend(op(e).vector(allm))
            vecs.append(v)
        vecs = [v for v in vecs if any(v)]
        return len(domain) - (linalg.rank(vecs) if vecs else 0)

    def _half(self) -> int:
        return self.n // 2

    def table(self, fn) -> list[list[int]]:
        h = self._half()
        return [[fn(p, q) for q in range(h + 1)] for p in range(h + 1)]


class SymplecticComplex(_Complex):
    """Invariant forms on the IIA side with ``d``, ``L``, ``Lambda`` and
    ``d^Lambda``, bigraded by the fiber/base split."""

    def __init__(self, g: LieAlgebra, omega: Form | None = None,
                 fiber: Sequence[int] = (1, 2, 3), check: bool = True):
        n = g.n
        if omega is None:
            h = n // 2
            omega = Form.zero(n)
            for k in range(1, h + 1):
                omega = omega + Form.e(n, k, k + h)
        self.g = g
        self.n = n
        self.omega = omega
        self.fiber = tuple(fiber)
        self.first = _mask(fiber)
        W = two_form_matrix(omega)
        # Lambda = sum_{i<j} Pi_ij iota_i iota_j with Pi = W^{-1}
        self._pi = linalg.inverse(W)
        if check and not d_bidegree_check(g, fiber):
            raise BidegreeError("d is not of pure bidegree (0,1) for this split")
        self._lcache: dict[int, Form] = {}
        self._dlcache: dict[int, Form] = {}

    def L(self, phi: Form) -> Form:
        return self.omega.wedge(phi)

    def Lambda(self, phi: Form) -> Form:
        out = Form.zero(self.n)
        for m, c in phi.terms.items():
            img = self._lcache.get(m)
            if img is None:
                e = Form._raw(self.n, {m: CScalar(1)})
                img = Form.zero(self.n)
                for i in range(self.n):
                    for j in range(i + 1, self.n):
                        pij = self._pi[i][j]
                        if pij:
                            img = img + e.contract(j + 1).contract(i + 1).scale(pij)
                self._lcache[m] = img
            if img:
                out = out + img.scale(c)
        return out

    def d(self, phi: Form) -> Form:
        return self.g.d(phi)

    def d_lambda(self, phi: Form) -> Form:
        out = Form.zero(self.n)
        for m, c in phi.terms.items():
            img = self._dlcache.get(m)
            if img is None:
                e = Form._raw(self.n, {m: CScalar(1)})
                img = self.g.d(self.Lambda(e)) - self.Lambda(self.g.d(e))
                self._dlcache[m] = img
            if img:
                out = out + img.scale(c)
        return out

    def dd_lambda(self, phi: Form) -> Form:
        return self.g.d(self.d_lambda(phi))

    def ty_dim(self, p: int, q: int) -> int:
        dom = self.block(p, q)
        ker = self._kernel_dim([self.d, self.d_lambda], dom)
        src = self.block(p + 1, q - 1) if q >= 1 else []
        im = _rank_of_images(self._images(self.dd_lambda, src), dom) if src else 0
        return ker - im

    def ty_table(self) -> list[list[int]]:
        return self.table(self.ty_dim)

    def image_intersection_check(self, p: int, q: int) -> bool:
        """``dim(Im dd^Lambda ∩ A^{p,q})`` computed from the full image of the
        same degree agrees with the rank of ``dd^Lambda`` on ``A^{p+1,q-1}``."""
        k = p + q
        allk = monomials(self.n, k)
        full = [v for v in (img.vector(allk) for img in self._images(self.dd_lambda, allk)) if any(v)]
        S = set(self.block(p, q))
        S_vecs = [[1 if m == s else 0 for m in allk] for s in allk if s in S]
        dim_im = linalg.rank(full) if full else 0
        dim_sum = linalg.rank(full + S_vecs) if (full or S_vecs) else 0
        inter = dim_im + len(S_vecs) - dim_sum
        src = self.block(p + 1, q - 1) if q >= 1 else []
        direct = _rank_of_images(self._images(self.dd_lambda, src), allk) if src else 0
        return inter == direct

    def operator_bidegrees(self) -> dict[str, set[tuple[int, int]]]:
        return {
            "d": _bidegrees_of(self.d, self.n, self.first),
            "d_lambda": _bidegrees_of(self.d_lambda, self.n, self.first),
            "dd_lambda": _bidegrees_of(self.dd_lambda, self.n, self.first),
        }


class ComplexComplex(_Complex):
    """Invariant complex forms on the IIB side in the coframe ``(psi, conj psi)``
    with ``del`` and ``delbar``."""

    def __init__(self, s: SU3Structure):
        if not integrability_check(s):
            raise BidegreeError("almost complex structure is not integrable")
        self.s = s
        self.gc = complex_algebra(s)
        self.n = self.gc.n
        self.first = (1 << (self.n // 2)) - 1
        self._cache: dict[int, tuple[Form, Form]] = {}

    def _split(self, m: int) -> tuple[Form, Form]:
        res = self._cache.get(m)
        if res is None:
            p, q = bidegree(m, self.first)
            dm = self.gc.d(Form._raw(self.n, {m: CScalar(1)}))
            first = self.first
            dl = dm.restrict(lambda t: bidegree(t, first) == (p + 1, q))
            db = dm.restrict(lambda t: bidegree(t, first) == (p, q + 1))
            if dl + db != dm:
                raise BidegreeError("d has components outside (1,0) + (0,1)")
            res = (dl, db)
            self._cache[m] = res
        return res

    def _apply(self, phi: Form, which: int) -> Form:
        out = Form.zero(self.n)
        for m, c in phi.terms.items():
            img = self._split(m)[which]
            if img:
                out = out + img.scale(c)
        return out

    def d(self, phi: Form) -> Form:
        return self.gc.d(phi)

    def del_(self, phi: Form) -> Form:
        return self._apply(phi, 0)

    def delbar(self, phi: Form) -> Form:
        return self._apply(phi, 1)

    def del_delbar(self, phi: Form) -> Form:
        return self.del_(self.delbar(phi))

    def bc_dim(self, p: int, q: int) -> int:
        dom = self.block(p, q)
        ker = self._kernel_dim([self.del_, self.delbar], dom)
        src = self.block(p - 1, q - 1) if p >= 1 and q >= 1 else []
        im = _rank_of_images(self._images(self.del_delbar, src), dom) if src else 0
        return ker - im

    def bc_table(self) -> list[list[int]]:
        return self.table(self.bc_dim)

    def block_dims(self) -> list[list[int]]:
        h = self._half()
        return [[comb(h, p) * comb(h, q) for q in range(h + 1)] for p in range(h + 1)]


def tseng_yau_dim(g: LieAlgebra, p: int, q: int, omega: Form | None = None,
                  fiber: Sequence[int] = (1, 2, 3)) -> int:
    return SymplecticComplex(g, omega, fiber).ty_dim(p, q)


def bott_chern_dim(s: SU3Structure, p: int, q: int) -> int:
    return ComplexComplex(s).bc_dim(p, q)


# mirror table ------------------------------------------------------------------

# printed column headers: (TY bidegree, BC bidegree)
TABLE2_COLUMNS = (
    ((1, 0), (2, 0)),
    ((0, 1), (3, 1)),
    ((2, 0), (1, 0)),
    ((1, 1), (2, 1)),
    ((0, 2), (3, 2)),
    ((2, 1), (1, 1)),
    ((1, 2), (3, 2)),
)


@dataclass
class MirrorNumbers:
    ty: list[list[int]]
    bc: list[list[int]]

    @property
    def cells(self) -> dict[tuple[int, int], tuple[int, int]]:
        """``(p, q) -> (h_TY^{3-p,q}, h_BC^{p,q})``."""
        h = len(self.bc) - 1
        return {(p, q): (self.ty[h - p][q], self.bc[p][q])
                for p in range(h + 1) for q in range(h + 1)}

    @property
    def ok(self) -> bool:
        return all(a == b for a, b in self.cells.values())

    def mismatches(self) -> list[tuple[int, int]]:
        return [pq for pq, (a, b) in self.cells.items() if a != b]

    def to_json(self) -> dict:
        return {
            "ty": self.ty,
            "bc": self.bc,
            "mirror_identity": self.ok,
            "mismatches": [list(pq) for pq in self.mismatches()],
        }


def mirror_numbers_check(pair) -> MirrorNumbers:
    """Full 4x4 tables on both sides of a ``MirrorPair``."""
    ty = SymplecticComplex(pair.iia.g, pair.iia.omega, pair.fiber).ty_table()
    bc = ComplexComplex(pair.iib).bc_table()
    return MirrorNumbers(ty, bc)


def table2_vector(nums: MirrorNumbers, side: str = "ty") -> tuple[int, ...]:
    """The seven tabulated numbers, read from one side using the printed
    headers."""
    if side == "ty":
        return tuple(nums.ty[p][q] for (p, q), _ in TABLE2_COLUMNS)
    if side == "bc":
        return tuple(nums.bc[p][q] for _, (p, q) in TABLE2_COLUMNS)
    raise ValueError(side)


def header_pairing(nums: MirrorNumbers, printed: Sequence[int]) -> list[dict]:
    """For each printed column report which Bott-Chern cells match: the one
    named in the header and the mirror partner ``(3-p, q)`` of its TY cell."""
    out = []
    h = len(nums.bc) - 1
    for (ty_pq, bc_pq), value in zip(TABLE2_COLUMNS, printed):
        partner = (h - ty_pq[0], ty_pq[1])
        out.append({
            "ty": list(ty_pq),
            "bc_header": list(bc_pq),
            "bc_partner": list(partner),
            "printed": value,
            "ty_value": nums.ty[ty_pq[0]][ty_pq[1]],
            "bc_header_value": nums.bc[bc_pq[0]][bc_pq[1]],
            "bc_partner_value": nums.bc[partner[0]][partner[1]],
            "header_is_partner": tuple(bc_pq) == partner,
        })
    return out
