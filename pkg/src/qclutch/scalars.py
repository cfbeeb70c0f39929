"""Gaussian-rational scalars and the mixed exact/float coefficient helpers."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

try:  # GMP rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _make(re, im) -> "GaussianRational":
    out = object.__new__(GaussianRational)
    out.re = re
    out.im = im
    return out


class GaussianRational:
    """Complex number a + b i with rational a, b. Arithmetic is closed and lossless."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _Q(re)
        self.im = _Q(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, float):
            return cls(_Q(x))
        if isinstance(x, complex):
            return cls(_Q(x.real), _Q(x.imag))
        if isinstance(x, str):
            return cls(_Q(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    def __add__(self, other):
        if type(other) is GaussianRational:
            return _make(self.re + other.re, self.im + other.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        o = GaussianRational.coerce(other)
        return _make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _make(a * c, b)
        return _make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        o = GaussianRational.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / d, -o.im / d)

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) == other
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


ONE = GaussianRational(1)
ZERO = GaussianRational(0)
I = GaussianRational(0, 1)


def is_exact(c) -> bool:
    return isinstance(c, GaussianRational)


def conj(c):
    return c.conjugate()


def to_exact(c) -> GaussianRational:
    """Exact binary value of a float coefficient; no rounding is applied."""
    return GaussianRational.coerce(c)


def to_float(c) -> complex:
    return complex(c)


def coerce_scalar(c, exact: bool):
    if exact:
        return GaussianRational.coerce(c)
    return complex(c)


def scalar_to_json(c) -> tuple:
    if isinstance(c, GaussianRational):
        return str(c.re), str(c.im)
    c = complex(c)
    return c.real, c.imag


def scalar_from_json(re, im):
    if isinstance(re, str) or isinstance(im, str):
        return GaussianRational(_Q(str(re)), _Q(str(im)))
    return complex(re, im)
