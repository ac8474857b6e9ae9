"""Formal Fourier-Mukai transform on the invariant semi-flat model.

Three coordinate models, all with constant coefficients:

* complex side ``(dz_1, dz_2, dz_3, dzbar_1, dzbar_2, dzbar_3)``, 6 generators;
* symplectic side ``(dtheta_1, dtheta_2, dtheta_3, eta_1, eta_2, eta_3)``,
  6 generators, ``eta`` standing for the base directions;
* the fiber product ``(dthetacheck_1..3, dtheta_1..3, eta_1..3)``, 9 generators.

The transform is ``FT(phi) = p_*(P(phi) ^ exp(sum dthetacheck_k ^ dtheta_k))``
where ``P`` relabels ``dz -> dthetacheck`` and ``dzbar -> eta``.  Fiber
integration keeps the terms containing every fiber generator, written as
``beta ^ dfiber_1 ^ dfiber_2 ^ dfiber_3``, and returns ``beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .exterior import Form, exp_truncated, monomials, wedge_sign
from .scalar import I, CScalar

__all__ = [
    "FMSpace",
    "polarization_switch",
    "polarization_switch_inverse",
    "fm_transform",
    "fm_inverse",
    "fm_exponential_check",
    "fm_bijectivity",
    "FMReport",
    "fm_verify",
]

_H = 3
_CHECK = tuple(range(0, _H))           # dthetacheck, 0-based bits in the 9-model
_THETA = tuple(range(_H, 2 * _H))      # dtheta
_ETA = tuple(range(2 * _H, 3 * _H))    # eta


def _bits(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def _relabel(phi: Form, n_out: int, targets) -> Form:
    """Send generator ``k`` (0-based) of ``phi`` to generator ``targets[k]``.

    ``targets`` must be increasing so no reordering sign appears.
    """
    out = {}
    for m, c in phi.terms.items():
        new = 0
        k = 0
        mm = m
        while mm:
            if mm & 1:
                new |= 1 << targets[k]
            mm >>= 1
            k += 1
        out[new] = c
    return Form(n_out, out)


@dataclass(frozen=True)
class FMSpace:
    """Generator layout of the formal model (dimension 3 fibers)."""

    h: int = _H

    @property
    def product_dim(self) -> int:
        return 3 * self.h

    def kernel(self, sign: int = 1) -> Form:
        """``exp(sign * sum dthetacheck_k ^ dtheta_k)`` on the product."""
        F = Form.zero(self.product_dim)
        for k in range(self.h):
            F = F + Form.e(self.product_dim, _CHECK[k] + 1, _THETA[k] + 1)
        return exp_truncated(F.scale(sign))

    def curvature(self) -> Form:
        """``F = 2i sum dthetacheck_k ^ dtheta_k``."""
        F = Form.zero(self.product_dim)
        for k in range(self.h):
            F = F + Form.e(self.product_dim, _CHECK[k] + 1, _THETA[k] + 1)
        return F.scale(2 * I)


def polarization_switch(phi: Form) -> Form:
    """``a dz_I ^ dzbar_J -> a dthetacheck_I ^ eta_J`` into the product model."""
    if phi.n != 2 * _H:
        raise ValueError("expected a form in the dz/dzbar model")
    return _relabel(phi, 3 * _H, _CHECK + _ETA)


def polarization_switch_inverse(phi: Form) -> Form:
    """Product-model form in ``dthetacheck, eta`` back to ``dz, dzbar``."""
    if phi.restrict(lambda m: m & _bits(_THETA)):
        raise ValueError("form involves dtheta generators")
    out = {}
    lo = _bits(_CHECK)
    for m, c in phi.terms.items():
        out[(m & lo) | ((m >> (2 * _H)) << _H)] = c
    return Form(2 * _H, out)


def _integrate(phi: Form, fiber) -> Form:
    """Keep terms containing all ``fiber`` generators, writing each as
    ``beta ^ dfiber_1 ^ ... ^ dfiber_h`` and returning ``beta``."""
    fmask = _bits(fiber)
    out = {}
    for m, c in phi.terms.items():
        if m & fmask == fmask:
            rest = m ^ fmask
            s = wedge_sign(rest, fmask)
            out[rest] = c if s > 0 else -c
    return Form(phi.n, out)


def _to_symplectic(phi: Form) -> Form:
    """Product-model form in ``dtheta, eta`` to the 6-generator symplectic model."""
    out = {}
    for m, c in phi.terms.items():
        out[m >> _H] = c
    return Form(2 * _H, out)


def _from_symplectic(phi: Form) -> Form:
    return _relabel(phi, 3 * _H, _THETA + _ETA)


def fm_transform(phi: Form) -> Form:
    """Complex-side form (dz, dzbar) to symplectic-side form (dtheta, eta)."""
    space = FMSpace()
    lifted = polarization_switch(phi).wedge(space.kernel(+1))
    return _to_symplectic(_integrate(lifted, _CHECK))


def fm_inverse(phi: Form) -> Form:
    """Symplectic-side form (dtheta, eta) to complex-side form (dz, dzbar):
    integrate ``phi ^ exp(-F/2i)`` over the dtheta fiber, then undo the
    polarization switch."""
    space = FMSpace()
    lifted = _from_symplectic(phi).wedge(space.kernel(-1))
    return polarization_switch_inverse(_integrate(lifted, _THETA))


def fm_exponential_check() -> tuple[bool, Form, Form]:
    """``FT(exp(2 omegacheck)) == prod (dtheta_k + i eta_k)`` with
    ``omegacheck = (i/2) sum dz_k ^ dzbar_k``.  Returns (ok, lhs, rhs)."""
    n = 2 * _H
    omega_check = Form.zero(n)
    for k in range(1, _H + 1):
        omega_check = omega_check + Form.e(n, k, k + _H, coeff=I / 2)
    lhs = fm_transform(exp_truncated(omega_check.scale(2)))
    rhs = Form.one(n)
    for k in range(1, _H + 1):
        rhs = rhs.wedge(Form.e(n, k) + Form.e(n, k + _H, coeff=I))
    return lhs == rhs, lhs, rhs


def _bideg(m: int) -> tuple[int, int]:
    return (m & 0b111).bit_count(), (m >> _H).bit_count()


def fm_bijectivity() -> dict[tuple[int, int], bool]:
    """For each ``(p, q)``: FT maps ``A^{p,q}`` (complex side) onto
    ``A^{3-p,q}`` (symplectic side) bijectively."""
    n = 2 * _H
    out = {}
    for p in range(_H + 1):
        for q in range(_H + 1):
            dom = [m for m in monomials(n) if _bideg(m) == (p, q)]
            cod = [m for m in monomials(n) if _bideg(m) == (_H - p, q)]
            images = [fm_transform(Form._raw(n, {m: CScalar(1)})) for m in dom]
            lands = all(set(img.terms) <= set(cod) for img in images)
            vecs = [img.vector(cod) for img in images]
            rank = linalg.rank(vecs) if vecs else 0
            out[(p, q)] = lands and rank == len(dom) == len(cod) == comb(_H, p) * comb(_H, q)
    return out


@dataclass
class FMReport:
    exponential: bool
    bijective: dict
    round_trip: bool
    ft_of_one: Form

    @property
    def ok(self) -> bool:
        return self.exponential and all(self.bijective.values()) and self.round_trip

    def to_json(self) -> dict:
        return {
            "exponential": self.exponential,
            "bijective": {f"{p},{q}": v for (p, q), v in sorted(self.bijective.items())},
            "round_trip": self.round_trip,
            "ft_of_one": self.ft_of_one.render(),
            "ok": self.ok,
        }


def fm_verify() -> FMReport:
    n = 2 * _H
    exponential, _, _ = fm_exponential_check()
    round_trip = all(fm_inverse(fm_transform(Form._raw(n, {m: CScalar(1)}))) == Form._raw(n, {m: CScalar(1)})
                     for m in monomials(n))
    return FMReport(exponential, fm_bijectivity(), round_trip, fm_transform(Form.one(n)))
