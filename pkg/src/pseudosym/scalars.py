"""Exact scalars in the Gaussian rationals Q(i).

Elements are sympy ``QQ_I`` values.  Beware that ``QQ_I(0) == 0`` is False in
sympy; use :func:`is_zero` (or truthiness) instead.
"""
from __future__ import annotations

import re
from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I

from .errors import ParseError

F = QQ_I
ZERO = QQ_I.zero
ONE = QQ_I.one
I = QQ_I(0, 1)

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^\s*({_RAT})?\s*(?:\|\s*({_RAT}))?\s*$")


def q(x) -> object:
    """Exact rational (gmpy2/QQ) from int, Fraction or 'a/b'."""
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def scalar(x, im=0):
    """Coerce int / Fraction / str / complex / QQ_I into QQ_I."""
    if isinstance(x, type(ONE)):
        return x
    if isinstance(x, complex):
        re_, im_ = Fraction(x.real).limit_denominator(), Fraction(x.imag).limit_denominator()
        return F(q(re_), q(im_))
    if isinstance(x, str):
        return parse_scalar(x)
    return F(q(x), q(im))


def parse_scalar(text: str, offset: int = 0):
    """Parse 're', 're|im' or '|im' with rational parts, e.g. '1/2|-3'."""
    m = _SCALAR_RE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ParseError(f"bad scalar {text!r}", offset)
    re_ = q(m.group(1) or 0)
    im_ = q(m.group(2) or 0)
    return F(re_, im_)


def _fmt_rat(x) -> str:
    x = QQ.to_sympy(QQ.convert(x))
    return str(x)


def format_scalar(z) -> str:
    """Inverse of :func:`parse_scalar` (imaginary part only when nonzero)."""
    z = scalar(z)
    if not z.y:
        return _fmt_rat(z.x)
    return f"{_fmt_rat(z.x)}|{_fmt_rat(z.y)}"


def is_zero(z) -> bool:
    return not z


def inv(z):
    if not z:
        raise ZeroDivisionError("inverse of zero")
    return ONE / z


def power(z, k: int):
    if k >= 0:
        return z ** k
    return inv(z) ** (-k)


def to_complex(z) -> complex:
    return complex(float(z.x), float(z.y))


def to_json(z):
    """[re, im] as strings, lossless."""
    return [_fmt_rat(z.x), _fmt_rat(z.y)]
