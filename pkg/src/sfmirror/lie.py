"""Lie algebras given by coframe differentials, and their Chevalley-Eilenberg
complex.

Sign convention: ``de^k(E_i, E_j) = -c^k_ij`` where ``[E_i, E_j] = sum_k
c^k_ij E_k``.  Equivalently ``de^k = -sum_{i<j} c^k_ij e^{ij}``, which is the
Maurer-Cartan equation for left-invariant forms.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import linalg
from .exterior import Form, FormOperator, indices_of, linear_substitution, monomials
from .notation import parse_tuple, render_tuple
from .scalar import CScalar, as_cscalar

__all__ = ["LieAlgebra", "parse_salamon", "ce_d", "d_squared_check",
           "unimodular_check", "ce_cohomology_dim"]


class LieAlgebra:
    """A Lie algebra presented by ``(de^1, ..., de^n)``."""

    def __init__(self, differentials: Sequence[Form], name: str | None = None):
        diffs = tuple(differentials)
        n = len(diffs)
        for k, f in enumerate(diffs):
            if f.n != n:
                raise ValueError(f"de^{k + 1} lives in dimension {f.n}, expected {n}")
            if f and f.degrees() != {2}:
                raise ValueError(f"de^{k + 1} is not a 2-form: {f}")
        self.n = n
        self.d_coframe = diffs
        self.name = name
        self._dcache: dict[int, Form] = {0: Form.zero(n)}
        for k, f in enumerate(diffs):
            self._dcache[1 << k] = f

    @classmethod
    def from_salamon(cls, text: str, params: Mapping[str, object] | None = None,
                     name: str | None = None) -> "LieAlgebra":
        return cls(parse_tuple(text, params), name=name)

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls([Form.zero(n)] * n, name=f"R^{n}")

    # presentation ---------------------------------------------------------------
    def salamon(self, compact: bool = False) -> str:
        return render_tuple(self.d_coframe, compact=compact)

    def __str__(self):
        return self.salamon()

    def __repr__(self):
        return f"LieAlgebra({self.salamon()!r})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.d_coframe == other.d_coframe

    def __hash__(self):
        return hash(self.d_coframe)

    def is_real(self) -> bool:
        return all(f.is_real() for f in self.d_coframe)

    # brackets -------------------------------------------------------------------
    def structure_constants(self) -> dict[tuple[int, int, int], CScalar]:
        """Nonzero ``c^k_ij`` keyed by 1-based ``(k, i, j)``, both orders of i, j."""
        out = {}
        for k, f in enumerate(self.d_coframe, start=1):
            for m, c in f.terms.items():
                i, j = indices_of(m)
                out[(k, i, j)] = -c
                out[(k, j, i)] = c
        return out

    def bracket(self, i: int, j: int) -> list[CScalar]:
        """Coefficients of ``[E_i, E_j]`` in the frame."""
        c = self.structure_constants()
        return [c.get((k, i, j), CScalar(0)) for k in range(1, self.n + 1)]

    def bracket_table(self) -> list[str]:
        lines = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                v = self.bracket(i, j)
                if any(v):
                    rhs = Form(self.n, {1 << k: x for k, x in enumerate(v)}).render(prefix="E")
                    lines.append(f"[E{i},E{j}] = {rhs}")
        return lines

    # Chevalley-Eilenberg differential ---------------------------------------------
    def _d_mono(self, mask: int) -> Form:
        cached = self._dcache.get(mask)
        if cached is not None:
            return cached
        low = mask & -mask
        rest = mask ^ low
        # d(e^a ^ rest) = de^a ^ rest - e^a ^ d(rest)
        ea = Form._raw(self.n, {low: CScalar(1)})
        res = self._dcache[low].wedge(Form._raw(self.n, {rest: CScalar(1)})) \
            - ea.wedge(self._d_mono(rest))
        self._dcache[mask] = res
        return res

    def d(self, phi: Form) -> Form:
        if phi.n != self.n:
            raise ValueError(f"dimension mismatch: form on {phi.n}, algebra of dimension {self.n}")
        out = Form.zero(self.n)
        for m, c in phi.terms.items():
            dm = self._d_mono(m)
            if dm:
                out = out + dm.scale(c)
        return out

    def d_operator(self, k: int) -> FormOperator:
        return FormOperator.from_map(self.n, self.d, monomials(self.n, k), monomials(self.n, k + 1))

    # checks ---------------------------------------------------------------------
    def is_jacobi(self) -> bool:
        return all(not self.d(f) for f in self.d_coframe)

    def ad_traces(self) -> list[CScalar]:
        c = self.structure_constants()
        return [sum((c.get((j, i, j), CScalar(0)) for j in range(1, self.n + 1)), CScalar(0))
                for i in range(1, self.n + 1)]

    def is_unimodular(self) -> bool:
        return all(not t for t in self.ad_traces())

    def betti(self, k: int) -> int:
        if k < 0 or k > self.n:
            return 0
        from math import comb
        dim = comb(self.n, k)
        rk_out = self.d_operator(k).rank() if k < self.n else 0
        rk_in = self.d_operator(k - 1).rank() if k > 0 else 0
        return dim - rk_out - rk_in

    def betti_numbers(self) -> list[int]:
        return [self.betti(k) for k in range(self.n + 1)]

    # frames ---------------------------------------------------------------------
    def change_coframe(self, M: Sequence[Sequence], name: str | None = None) -> "LieAlgebra":
        """The same algebra in the coframe ``f^a = sum_b M[a][b] e^b``."""
        n = self.n
        Minv = linalg.inverse([[as_cscalar(x) for x in row] for row in M])
        # e^b = sum_k Minv[b][k] f^k
        images = [Form(n, {1 << k: Minv[b][k] for k in range(n)}) for b in range(n)]
        new = []
        for a in range(n):
            acc = Form.zero(n)
            for b in range(n):
                if M[a][b]:
                    acc = acc + self.d_coframe[b].scale(M[a][b])
            new.append(linear_substitution(acc, images))
        return LieAlgebra(new, name=name)

    def coframe_image(self, M: Sequence[Sequence], phi: Form) -> Form:
        """Express ``phi`` (written in the e-coframe) in the coframe ``f = M e``."""
        Minv = linalg.inverse([[as_cscalar(x) for x in row] for row in M])
        images = [Form(self.n, {1 << k: Minv[b][k] for k in range(self.n)}) for b in range(self.n)]
        return linear_substitution(phi, images)


def parse_salamon(spec: str, params: Mapping[str, object] | None = None) -> LieAlgebra:
    return LieAlgebra.from_salamon(spec, params)


def ce_d(g: LieAlgebra, phi: Form) -> Form:
    return g.d(phi)


def d_squared_check(g: LieAlgebra) -> bool:
    return g.is_jacobi()


def unimodular_check(g: LieAlgebra) -> bool:
    return g.is_unimodular()


def ce_cohomology_dim(g: LieAlgebra, k: int) -> int:
    return g.betti(k)
