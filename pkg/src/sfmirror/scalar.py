"""Exact scalars: rationals, one real quadratic field Q(sqrt D), and Gaussian
extensions of both.

All values are immutable.  A ``Scalar`` is ``a + b*sqrt(D)`` with rational
``a``, ``b``; ``D is None`` marks a plain rational that combines freely with any
context.  Two scalars carrying different surds cannot be combined.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "ContextError",
    "FieldContext",
    "Scalar",
    "CScalar",
    "I",
    "as_scalar",
    "as_cscalar",
    "squarefree_part",
    "unit_for_trace",
    "sign",
]


class ContextError(ValueError):
    """Raised when scalars from incompatible quadratic fields are combined."""


def _is_squarefree(D: int) -> bool:
    if D < 2:
        return False
    k = 2
    while k * k <= D:
        if D % (k * k) == 0:
            return False
        k += 1
    return True


def squarefree_part(N: int) -> tuple[int, int]:
    """Write ``N = s**2 * D`` with ``D`` squarefree; return ``(s, D)``."""
    if N <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    s, D = 1, N
    k = 2
    while k * k <= D:
        while D % (k * k) == 0:
            D //= k * k
            s *= k
        k += 1
    return s, D


class FieldContext:
    """The active scalar field: Q, or Q(sqrt D) with sqrt D > 0."""

    __slots__ = ("D", "complexified")

    def __init__(self, D: int | None = None, complexified: bool = True):
        if D is not None and not _is_squarefree(D):
            raise ValueError(f"D must be a squarefree integer >= 2, got {D}")
        self.D = D
        self.complexified = complexified

    @property
    def mode(self) -> str:
        return "RATIONAL" if self.D is None else "QUADRATIC"

    def scalar(self, a=0, b=0) -> "Scalar":
        return Scalar(a, b, self.D)

    def sqrt(self) -> "Scalar":
        if self.D is None:
            raise ContextError("rational context has no surd")
        return Scalar(0, 1, self.D)

    def __eq__(self, other):
        return (isinstance(other, FieldContext) and self.D == other.D
                and self.complexified == other.complexified)

    def __hash__(self):
        return hash((self.D, self.complexified))

    def __repr__(self):
        return f"FieldContext(D={self.D}, complexified={self.complexified})"


def _merge(D1: int | None, D2: int | None) -> int | None:
    if D1 is None:
        return D2
    if D2 is None or D1 == D2:
        return D1
    raise ContextError(f"cannot combine Q(sqrt {D1}) with Q(sqrt {D2})")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Scalar:
    """``a + b*sqrt(D)`` with exact rational parts."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int | None = None):
        a = _frac(a)
        b = _frac(b)
        if b and D is None:
            raise ContextError("nonzero surd coefficient needs a quadratic context")
        if D is not None and not _is_squarefree(D):
            raise ValueError(f"D must be a squarefree integer >= 2, got {D}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, D):
        s = object.__new__(cls)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "D", D)
        return s

    @property
    def context(self) -> FieldContext:
        return FieldContext(self.D)

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a + o.a, self.b + o.b, _merge(self.D, o.D))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a - o.a, self.b - o.b, _merge(self.D, o.D))

    def __rsub__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        D = _merge(self.D, o.D)
        if not self.b and not o.b:
            return Scalar._raw(self.a * o.a, self.b, D)
        return Scalar._raw(self.a * o.a + self.b * o.b * D,
                           self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar._raw(1 / self.a, self.b, self.D)
        norm = self.a * self.a - self.b * self.b * self.D
        return Scalar._raw(self.a / norm, -self.b / norm, self.D)

    def __truediv__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        _merge(self.D, o.D)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar._raw(Fraction(1), Fraction(0), self.D)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self) -> "Scalar":
        """The Galois conjugate ``a - b*sqrt(D)``."""
        return Scalar._raw(self.a, -self.b, self.D)

    def conjugate(self) -> "Scalar":
        return self

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * (self.D or 0)

    # comparisons --------------------------------------------------------------
    def sign(self) -> int:
        """Exact sign under the embedding with sqrt D > 0."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D (never equal for squarefree D)
        return sa if self.a * self.a > self.b * self.b * self.D else sb

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = _coerce_real(other)
        if o is NotImplemented:
            if isinstance(other, CScalar):
                return other == self
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + (float(self.b) * self.D ** 0.5 if self.b else 0.0)

    # presentation -------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        surd = f"sqrt{self.D}"
        bpart = surd if self.b == 1 else f"-{surd}" if self.b == -1 else f"{self.b}*{surd}"
        if not self.a:
            return bpart
        sep = "" if bpart.startswith("-") else "+"
        return f"{self.a}{sep}{bpart}"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "D": self.D}

    @classmethod
    def from_json(cls, data: dict) -> "Scalar":
        return cls(Fraction(data["a"]), Fraction(data.get("b", "0")), data.get("D"))


def _coerce_real(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Scalar._raw(Fraction(x), Fraction(0), None)
    return NotImplemented


_ZERO = Scalar()
_ONE = Scalar(1)


class CScalar:
    """``re + i*im`` with ``re``, ``im`` in the real scalar field."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        r = _coerce_real(re)
        m = _coerce_real(im)
        if r is NotImplemented or m is NotImplemented:
            raise TypeError(f"cannot build a complex scalar from {re!r}, {im!r}")
        _merge(r.D, m.D)
        object.__setattr__(self, "re", r)
        object.__setattr__(self, "im", m)

    def __setattr__(self, name, value):
        raise AttributeError("CScalar is immutable")

    @classmethod
    def _raw(cls, re: Scalar, im: Scalar):
        z = object.__new__(cls)
        object.__setattr__(z, "re", re)
        object.__setattr__(z, "im", im)
        return z

    @property
    def D(self):
        return self.re.D if self.re.D is not None else self.im.D

    def is_real(self) -> bool:
        return not self.im

    def is_rational(self) -> bool:
        return not self.im and not self.re.b

    def __add__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return CScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return CScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return CScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return CScalar._raw(a * c, b)
        return CScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "CScalar":
        return CScalar._raw(self.re, -self.im)

    conj = conjugate

    def abs2(self) -> Scalar:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "CScalar":
        if not self.im:
            return CScalar._raw(self.re.inverse(), self.im)
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        ninv = n.inverse()
        return CScalar._raw(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = CScalar._raw(_ONE, _ZERO)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_complex(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CScalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = str(self.im)
        if im in ("1", "-1"):
            imag = im[:-1] + "i"
        elif self.im.is_rational() or not self.im.a:
            imag = f"{im}*i"
        else:
            imag = f"({im})*i"
        if not self.re:
            return imag
        sep = "" if imag.startswith("-") else "+"
        return f"{self.re}{sep}{imag}"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "CScalar":
        if "re" not in data:
            return cls(Scalar.from_json(data))
        return cls(Scalar.from_json(data["re"]), Scalar.from_json(data["im"]))


def _coerce_complex(x):
    if isinstance(x, CScalar):
        return x
    r = _coerce_real(x)
    if r is NotImplemented:
        return NotImplemented
    return CScalar._raw(r, _ZERO)


I = CScalar(0, 1)

Number = Union[int, Fraction, Scalar, CScalar]


def as_scalar(x) -> Scalar:
    r = _coerce_real(x)
    if r is NotImplemented:
        if isinstance(x, CScalar) and not x.im:
            return x.re
        raise TypeError(f"not a real exact scalar: {x!r}")
    return r


def as_cscalar(x) -> CScalar:
    z = _coerce_complex(x)
    if z is NotImplemented:
        raise TypeError(f"not an exact scalar: {x!r}")
    return z


def sign(x) -> int:
    """Exact sign of a real scalar (ints and Fractions accepted)."""
    if isinstance(x, CScalar):
        if x.im:
            raise ValueError("sign of a non-real scalar")
        x = x.re
    return as_scalar(x).sign()


def unit_for_trace(m: int) -> Scalar:
    """The unit ``u = (m + sqrt(m^2 - 4)) / 2`` of trace ``m``, with ``u + 1/u = m``.

    ``m >= 3``; the surd is reduced to its squarefree part so that e.g. ``m = 4``
    lives in Q(sqrt 3).
    """
    if m < 3:
        raise ValueError("need an integer trace m >= 3")
    s, D = squarefree_part(m * m - 4)
    if D == 1:
        # m^2 - 4 is never a square for m >= 3
        raise ValueError("m^2 - 4 is a perfect square")
    return Scalar(Fraction(m, 2), Fraction(s, 2), D)
