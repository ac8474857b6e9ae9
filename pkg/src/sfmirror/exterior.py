"""The exterior algebra on an n-dimensional coframe, n <= 16.

A monomial ``e^{i1...ik}`` (i1 < ... < ik, 1-based) is stored as the bitmask
with bits ``i1-1, ..., ik-1`` set.  Reordering signs come from inversion
counts.  Forms are sparse ``{mask: CScalar}`` maps; operators are dense matrices
on a chosen list of basis monomials.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import linalg
from .scalar import CScalar, as_cscalar

__all__ = [
    "MAX_DIM",
    "Form",
    "FormOperator",
    "mask_of",
    "indices_of",
    "monomials",
    "wedge_sign",
    "wedge",
    "contract",
    "exp_truncated",
    "operator_rank_kernel",
    "linear_substitution",
]

MAX_DIM = 16

_ZERO = CScalar(0)
_ONE = CScalar(1)


def mask_of(indices: Iterable[int]) -> tuple[int, int]:
    """Bitmask of 1-based ``indices`` and the sign that sorts them.

    Returns ``(mask, sign)``; ``sign == 0`` if an index repeats.
    """
    idx = list(indices)
    mask = 0
    for i in idx:
        if i < 1 or i > MAX_DIM:
            raise IndexError(f"coframe index {i} out of range")
        bit = 1 << (i - 1)
        if mask & bit:
            return mask | bit, 0
        mask |= bit
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return mask, -1 if inv % 2 else 1


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def monomials(n: int, k: int | None = None) -> list[int]:
    """Basis masks of Lambda^k (all degrees when ``k`` is None), ordered by
    degree then lexicographically."""
    ks = range(n + 1) if k is None else [k]
    out = []
    for kk in ks:
        for combo in combinations(range(n), kk):
            m = 0
            for c in combo:
                m |= 1 << c
            out.append(m)
    return out


@lru_cache(maxsize=None)
def wedge_sign(a: int, b: int) -> int:
    """Sign of ``e^A ^ e^B`` relative to ``e^{A u B}``; 0 when A, B overlap."""
    if a & b:
        return 0
    inv = 0
    bb = b
    while bb:
        low = bb & -bb
        inv += (a & ~((low << 1) - 1)).bit_count()
        bb ^= low
    return -1 if inv & 1 else 1


class Form:
    """An element of the exterior algebra with exact complex coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension must be in 0..{MAX_DIM}")
        clean = {}
        limit = 1 << n
        if terms:
            for m, c in terms.items():
                if m >= limit or m < 0:
                    raise IndexError(f"monomial {indices_of(m)} outside dimension {n}")
                c = as_cscalar(c)
                if c:
                    clean[m] = c
        self.n = n
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Form":
        f = object.__new__(cls)
        f.n = n
        f.terms = terms
        return f

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int, coeff=1) -> "Form":
        return cls(n, {0: coeff})

    @classmethod
    def e(cls, n: int, *indices: int, coeff=1) -> "Form":
        """The monomial ``coeff * e^{i1} ^ ... ^ e^{ik}`` (any index order)."""
        mask, s = mask_of(indices)
        if s == 0:
            return cls.zero(n)
        return cls(n, {mask: as_cscalar(coeff) * s})

    @classmethod
    def from_vector(cls, n: int, coeffs: Sequence) -> "Form":
        """The 1-form ``sum_k coeffs[k] e^{k+1}``."""
        return cls(n, {1 << k: c for k, c in enumerate(coeffs)})

    # structure ----------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def grade(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop() if degs else 0

    def part(self, k: int) -> "Form":
        return Form._raw(self.n, {m: c for m, c in self.terms.items() if m.bit_count() == k})

    def coeff(self, *indices: int) -> CScalar:
        mask, s = mask_of(indices)
        return self.terms.get(mask, _ZERO) * s if s else _ZERO

    def __iter__(self) -> Iterator[tuple[int, CScalar]]:
        return iter(sorted(self.terms.items(), key=lambda t: (t[0].bit_count(), indices_of(t[0]))))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # linear structure -----------------------------------------------------------
    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            other = Form.one(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Form._raw(self.n, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Form._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return self + (-as_cscalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Form":
        c = as_cscalar(c)
        if not c:
            return Form.zero(self.n)
        return Form._raw(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.wedge(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(1 / as_cscalar(other))

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # algebra ------------------------------------------------------------------
    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        out: dict[int, CScalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                s = wedge_sign(ma, mb)
                m = ma | mb
                v = ca * cb
                if s < 0:
                    v = -v
                prev = out.get(m)
                out[m] = v if prev is None else prev + v
        return Form._raw(self.n, {m: c for m, c in out.items() if c})

    __xor__ = wedge

    def power(self, k: int) -> "Form":
        out = Form.one(self.n)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def contract(self, v) -> "Form":
        """Interior product with a frame vector.

        ``v`` is a 1-based frame index or a length-n coefficient sequence over
        the frame dual to the coframe.
        """
        if isinstance(v, int):
            vec = {v - 1: _ONE}
            if not 0 <= v - 1 < self.n:
                raise IndexError(f"frame index {v} out of range")
        else:
            if len(v) != self.n:
                raise ValueError(f"vector length {len(v)} != dimension {self.n}")
            vec = {k: as_cscalar(x) for k, x in enumerate(v) if x}
        out: dict[int, CScalar] = {}
        for m, c in self.terms.items():
            for k, vk in vec.items():
                bit = 1 << k
                if not m & bit:
                    continue
                # sign: number of indices before k in m
                below = (m & (bit - 1)).bit_count()
                val = c * vk
                if below & 1:
                    val = -val
                mm = m ^ bit
                prev = out.get(mm)
                out[mm] = val if prev is None else prev + val
        return Form._raw(self.n, {m: c for m, c in out.items() if c})

    def conj(self) -> "Form":
        return Form._raw(self.n, {m: c.conjugate() for m, c in self.terms.items()})

    def real(self) -> "Form":
        return Form(self.n, {m: c.re for m, c in self.terms.items()})

    def imag(self) -> "Form":
        return Form(self.n, {m: c.im for m, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(not c.im for c in self.terms.values())

    def restrict(self, predicate: Callable[[int], bool]) -> "Form":
        return Form._raw(self.n, {m: c for m, c in self.terms.items() if predicate(m)})

    def vector(self, basis: Sequence[int]) -> list[CScalar]:
        return [self.terms.get(m, _ZERO) for m in basis]

    # presentation ---------------------------------------------------------------
    def __str__(self):
        return self.render()

    def render(self, prefix: str = "e", sep: str = "") -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self:
            idx = indices_of(m)
            mono = prefix + sep.join(str(i) for i in idx) if idx else ""
            cs = str(c)
            if not mono:
                term = cs if (c.is_real() or not c.re) else f"({cs})"
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            elif c.is_rational() or (not c.re and c.im.is_rational()):
                term = f"{cs}*{mono}"
            else:
                term = f"({cs})*{mono}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Form({self.n}, {self.render()})"

    def to_json(self) -> list[dict]:
        return [{"indices": list(indices_of(m)), "coeff": c.to_json()} for m, c in self]

    @classmethod
    def from_json(cls, n: int, data: list[dict]) -> "Form":
        out = Form.zero(n)
        for term in data:
            out = out + Form.e(n, *term["indices"], coeff=CScalar.from_json(term["coeff"]))
        return out


def wedge(*forms: Form) -> Form:
    if not forms:
        raise ValueError("wedge of nothing")
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def contract(v, phi: Form) -> Form:
    return phi.contract(v)


def exp_truncated(phi: Form) -> Form:
    """``sum_k phi^k / k!``; ``phi`` must have only even degrees >= 2."""
    degs = phi.degrees()
    if any(d % 2 or d == 0 for d in degs):
        raise ValueError("exp_truncated needs a form of even positive degrees")
    out = Form.one(phi.n)
    term = Form.one(phi.n)
    k = 1
    while True:
        term = term.wedge(phi)
        if not term:
            break
        out = out + term.scale(CScalar(1) / factorial(k))
        k += 1
    return out


def linear_substitution(phi: Form, images: Sequence[Form]) -> Form:
    """Replace each coframe element ``e^k`` by ``images[k-1]`` (an algebra map)."""
    if len(images) != phi.n:
        raise ValueError("need one image per coframe element")
    m_out = images[0].n if images else phi.n
    out = Form.zero(m_out)
    cache: dict[int, Form] = {0: Form.one(m_out)}

    def mono(mask: int) -> Form:
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        k = low.bit_length() - 1
        res = images[k].wedge(mono(mask ^ low))
        cache[mask] = res
        return res

    for m, c in phi.terms.items():
        out = out + mono(m).scale(c)
    return out


class FormOperator:
    """A linear map given by its matrix between two lists of basis monomials.

    Column j is the image of ``domain[j]``; row i is the coefficient on
    ``codomain[i]``.
    """

    __slots__ = ("n", "domain", "codomain", "matrix")

    def __init__(self, n: int, domain: Sequence[int], codomain: Sequence[int], matrix):
        self.n = n
        self.domain = list(domain)
        self.codomain = list(codomain)
        self.matrix = matrix

    @classmethod
    def from_map(cls, n: int, fn: Callable[[Form], Form], domain: Sequence[int],
                 codomain: Sequence[int] | None = None) -> "FormOperator":
        images = [fn(Form._raw(n, {m: _ONE})) for m in domain]
        if codomain is None:
            seen = set()
            for img in images:
                seen.update(img.terms)
            codomain = sorted(seen, key=lambda m: (m.bit_count(), indices_of(m)))
        else:
            allowed = set(codomain)
            for img in images:
                stray = set(img.terms) - allowed
                if stray:
                    raise ValueError(f"image leaves the codomain: {[indices_of(s) for s in stray]}")
        rows = [[img.terms.get(m, _ZERO) for img in images] for m in codomain]
        return cls(n, domain, codomain, rows)

    def __call__(self, phi: Form) -> Form:
        vec = phi.vector(self.domain)
        out = {}
        for i, m in enumerate(self.codomain):
            s = _ZERO
            for a, x in zip(self.matrix[i], vec):
                if a and x:
                    s = s + a * x
            if s:
                out[m] = s
        return Form._raw(self.n, out)

    def compose(self, other: "FormOperator") -> "FormOperator":
        """``self o other``; other's codomain is matched to self's domain."""
        pos = {m: j for j, m in enumerate(self.domain)}
        inner = [[_ZERO] * len(other.domain) for _ in self.domain]
        for i, m in enumerate(other.codomain):
            if m in pos:
                inner[pos[m]] = other.matrix[i]
            elif any(other.matrix[i]):
                raise ValueError("composition leaves the domain")
        return FormOperator(self.n, other.domain, self.codomain,
                            linalg.matmul(self.matrix, inner) if self.matrix else [])

    def rank(self) -> int:
        if not self.codomain or not self.domain:
            return 0
        return linalg.rank(self.matrix)

    def kernel(self) -> list[Form]:
        if not self.domain:
            return []
        if not self.codomain:
            vecs = linalg.nullspace([], len(self.domain))
        else:
            vecs = linalg.nullspace(self.matrix, len(self.domain))
        return [Form(self.n, {m: x for m, x in zip(self.domain, v)}) for v in vecs]


def operator_rank_kernel(T, domain: Sequence[int], n: int | None = None):
    """Rank and kernel basis of a linear map on the span of ``domain``.

    ``T`` is a ``FormOperator`` or a callable ``Form -> Form``.
    """
    if not isinstance(T, FormOperator):
        if n is None:
            raise ValueError("dimension required for a callable operator")
        T = FormOperator.from_map(n, T, domain)
    elif list(domain) != T.domain:
        T = FormOperator.from_map(T.n, T, domain)
    ker = T.kernel()
    return T.rank(), ker
