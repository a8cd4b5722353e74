"""Exact scalars over Q and Q(i), triangular sums and magnitude comparisons.

Real scalars are plain :class:`fractions.Fraction` values.  Complex-rational
scalars are :class:`ComplexRational`; any arithmetic result with a zero
imaginary part collapses back to a ``Fraction`` so that the two kinds compare
and hash consistently.

Magnitudes are handled through squared magnitudes (:func:`abs_sq`) so that
nothing ever leaves the rationals.  Where an actual modulus is needed (for
instance ``|1+i| = sqrt(2)``) :func:`abs_enclosure` returns a rational
enclosure instead.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "ComplexRational",
    "Scalar",
    "as_scalar",
    "is_real",
    "trisum",
    "scalar_pow",
    "abs_sq",
    "log_mag_lower_bound",
    "iroot",
    "root_enclosure",
    "abs_enclosure",
    "parse_scalar",
    "format_scalar",
    "scalar_key",
    "scalar_complexity",
]


class ComplexRational:
    """An exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def conjugate(self) -> Scalar:
        return _make(self.re, -self.im)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        p1, q1, r1 = _gauss(self)
        p2, q2, r2 = _gauss(o)
        r = r1 * r2
        return _make(Fraction(p1 * p2 - q1 * q2, r), Fraction(p1 * q2 + q1 * p2, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _div(self, o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return scalar_pow(self, e)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"ComplexRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, ComplexRational]


def _coerce(v) -> ComplexRational | None:
    if isinstance(v, ComplexRational):
        return v
    if isinstance(v, (int, Fraction)):
        return ComplexRational(v, 0)
    return None


def _make(re: Fraction, im: Fraction) -> Scalar:
    if im == 0:
        return Fraction(re)
    return ComplexRational(re, im)


def _gauss(z: ComplexRational) -> tuple[int, int, int]:
    """``z == (p + q i) / r`` with integers ``p, q`` and ``r >= 1``."""
    dr, di = z.re.denominator, z.im.denominator
    r = dr * di // math.gcd(dr, di)
    return z.re.numerator * (r // dr), z.im.numerator * (r // di), r


def _div(a: ComplexRational, b: ComplexRational) -> Scalar:
    p1, q1, r1 = _gauss(a)
    p2, q2, r2 = _gauss(b)
    n2 = p2 * p2 + q2 * q2
    if n2 == 0:
        raise ZeroDivisionError("division by zero scalar")
    # a/b = (p1 + q1 i)(p2 - q2 i) r2 / (r1 (p2^2 + q2^2))
    den = r1 * n2
    return _make(Fraction((p1 * p2 + q1 * q2) * r2, den), Fraction((q1 * p2 - p1 * q2) * r2, den))


def as_scalar(v) -> Scalar:
    """Canonicalize ints, Fractions, strings and ComplexRationals to a Scalar."""
    if isinstance(v, str):
        return parse_scalar(v)
    if isinstance(v, ComplexRational):
        return _make(v.re, v.im)
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as an exact scalar")


def is_real(s: Scalar) -> bool:
    return not isinstance(s, ComplexRational) or s.im == 0


def trisum(lo: int, hi: int) -> int:
    """Return ``lo + (lo+1) + ... + hi``; the empty sum ``hi = lo-1`` is 0.

    >>> trisum(1, 3), trisum(2, 4), trisum(5, 4)
    (6, 9, 0)
    """
    if lo < 1 or hi < lo - 1:
        raise ValueError(f"malformed triangular range ({lo}, {hi})")
    return (hi * (hi + 1) - (lo - 1) * lo) // 2


def scalar_pow(s: Scalar, e: int) -> Scalar:
    """Exact integer power with ``0**0 == 1``."""
    if e == 0:
        return Fraction(1)
    if not s:
        if e < 0:
            raise ValueError("zero scalar raised to a negative power")
        return Fraction(0)
    if not isinstance(s, ComplexRational):
        return Fraction(s) ** e
    if e < 0:
        return _div(ComplexRational(1), _coerce(scalar_pow(s, -e)))
    # (p + q i) / r with integers; square-and-multiply on Gaussian integers
    bp, bq, r = _gauss(s)
    rp, rq = 1, 0
    n = e
    while n:
        if n & 1:
            rp, rq = rp * bp - rq * bq, rp * bq + rq * bp
        n >>= 1
        if n:
            bp, bq = bp * bp - bq * bq, 2 * bp * bq
    den = r ** e
    return _make(Fraction(rp, den), Fraction(rq, den))


def abs_sq(s: Scalar) -> Fraction:
    """Squared modulus, always an exact rational."""
    if isinstance(s, ComplexRational):
        return s.re * s.re + s.im * s.im
    s = Fraction(s)
    return s * s


def log_mag_lower_bound(base_abs_sq: Fraction, exponent: int, threshold: Fraction) -> bool:
    """Decide ``|w|**exponent >= threshold`` exactly, given ``|w|**2``.

    Both sides are squared, so the comparison runs entirely in Q.
    """
    base_abs_sq = Fraction(base_abs_sq)
    threshold = Fraction(threshold)
    if base_abs_sq <= 1:
        raise ValueError("weight must satisfy |w|>1")
    if threshold <= 0:
        return True
    return base_abs_sq ** exponent >= threshold * threshold


def iroot(n: int, k: int) -> int:
    """Floor of the real ``k``-th root of a nonnegative integer."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from above; the initial guess exceeds the root.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _exact_root(r: Fraction, k: int) -> Fraction | None:
    p, q = r.numerator, r.denominator
    a, b = iroot(p, k), iroot(q, k)
    if a ** k == p and b ** k == q:
        return Fraction(a, b)
    return None


def root_enclosure(r, k: int, rel_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= r**(1/k) <= hi``.

    Exact roots come back as degenerate intervals; otherwise
    ``hi - lo <= 2**-rel_bits * hi``.
    """
    r = Fraction(r)
    if r < 0:
        raise ValueError("root of a negative rational")
    if r == 0:
        return Fraction(0), Fraction(0)
    exact = _exact_root(r, k)
    if exact is not None:
        return exact, exact
    # choose a scale so that the integer root has at least rel_bits+1 bits
    mag = (r.numerator.bit_length() - r.denominator.bit_length()) // k
    bits = max(0, rel_bits + 4 - mag)
    scale = 1 << bits
    t = iroot((r.numerator * scale ** k) // r.denominator, k)
    return Fraction(t, scale), Fraction(t + 1, scale)


def abs_enclosure(s: Scalar, rel_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ``|s|``."""
    if not isinstance(s, ComplexRational):
        a = abs(Fraction(s))
        return a, a
    return root_enclosure(abs_sq(s), 2, rel_bits)


_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_IMAG_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?i$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)?i$")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p"``, ``"p/q"``, ``"p/q+r/si"``, ``"-1i"`` (and ``"i"``)."""
    t = text.strip().replace(" ", "")
    try:
        m = _REAL_RE.match(t)
        if m:
            return Fraction(m.group(1))
        m = _IMAG_RE.match(t)
        if m:
            mag = Fraction(m.group(2) or 1)
            return _make(Fraction(0), -mag if m.group(1) == "-" else mag)
        m = _COMPLEX_RE.match(t)
        if m:
            mag = Fraction(m.group(3) or 1)
            return _make(Fraction(m.group(1)), -mag if m.group(2) == "-" else mag)
    except ZeroDivisionError:
        pass
    raise ValueError(f"not an exact scalar: {text!r}")


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Inverse of :func:`parse_scalar`; zero parts are omitted."""
    if not isinstance(s, ComplexRational) or s.im == 0:
        return _fmt_rat(Fraction(s.re if isinstance(s, ComplexRational) else s))
    im = _fmt_rat(s.im) + "i"
    if s.re == 0:
        return im
    sign = "" if s.im < 0 else "+"
    return f"{_fmt_rat(s.re)}{sign}{im}"


def _rat_key(q: Fraction) -> tuple[int, int, bool]:
    return (abs(q.numerator) + q.denominator, q.denominator, q.numerator < 0)


def scalar_complexity(s: Scalar, complex_field: bool = False) -> int:
    """Height ``|num| + den`` summed over the parts that the field carries."""
    if complex_field:
        c = _coerce(s)
        return _rat_key(c.re)[0] + _rat_key(c.im)[0]
    return _rat_key(Fraction(s))[0]


def scalar_key(s: Scalar, complex_field: bool = False) -> tuple:
    """Total, injective sort key; ``1`` sorts before ``-1``."""
    if complex_field:
        c = _coerce(s)
        re_key, im_key = _rat_key(c.re), _rat_key(c.im)
        return (re_key[0] + im_key[0], im_key, re_key)
    return _rat_key(Fraction(s))
