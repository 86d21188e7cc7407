"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Rationals are plain :class:`fractions.Fraction` values.  Elements of GF(p)
are :class:`Residue` instances carrying their modulus, so generic code can
use ``+ - * /`` and ``== 0`` on either kind without branching.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "FieldError",
    "FieldSpec",
    "Residue",
    "Scalar",
    "QQ",
    "GF",
    "is_prime",
    "scalar_parse",
    "scalar_format",
    "scalar_inv",
]

MAX_PRIME = 2**31


class FieldError(ValueError):
    """Raised for malformed scalars, bad field specs and division by zero."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of GF(p), stored as its canonical residue in [0, p-1]."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise FieldError("inversion of zero")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"GF(p) needs a prime modulus, got {self.p!r}")
            if self.p >= MAX_PRIME:
                raise FieldError(f"modulus {self.p} exceeds 2^31")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def tag(self) -> str:
        """Short tag used in matrix files and JSON: ``Q`` or ``F<p>``."""
        return "Q" if self.p is None else f"F{self.p}"

    @classmethod
    def from_tag(cls, tag: str) -> "FieldSpec":
        tag = tag.strip()
        if tag.upper() == "Q":
            return cls()
        m = re.fullmatch(r"[Ff](?:\(?(\d+)\)?)", tag) or re.fullmatch(r"GF\((\d+)\)", tag, re.I)
        if not m:
            raise FieldError(f"unknown field tag {tag!r}")
        return cls(int(m.group(1)))

    def __call__(self, value) -> Scalar:
        """Map an int, Fraction or Residue into this field."""
        if self.p is None:
            if isinstance(value, Residue):
                raise FieldError("cannot embed a GF(p) residue into Q")
            return Fraction(value)
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldError(f"mixing GF({value.p}) and GF({self.p})")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return Residue(value.numerator, self.p) / value.denominator
        return Residue(int(value), self.p)

    def zero(self) -> Scalar:
        return self(0)

    def one(self) -> Scalar:
        return self(1)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Residue) and x.p == self.p

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


_INT_RE = re.compile(r"[+-]?\d+")
_FRAC_RE = re.compile(r"([+-]?\d+)/([+-]?\d+)")


def scalar_parse(text: str, field: FieldSpec = QQ) -> Scalar:
    """Parse an integer, ``a/b`` fraction (rationals only) or residue.

    >>> scalar_parse("2/4")
    Fraction(1, 2)
    >>> scalar_parse("-3", GF(2))
    Residue(1, 2)
    """
    s = text.strip()
    if _INT_RE.fullmatch(s):
        return field(int(s))
    m = _FRAC_RE.fullmatch(s)
    if m:
        if not field.is_rational:
            raise FieldError(f"fraction syntax {s!r} not allowed over {field}")
        den = int(m.group(2))
        if den == 0:
            raise FieldError(f"zero denominator in {s!r}")
        return Fraction(int(m.group(1)), den)
    raise FieldError(f"malformed scalar {text!r}")


def scalar_format(x: Scalar) -> str:
    return str(x)


def scalar_inv(x: Scalar) -> Scalar:
    if isinstance(x, Residue):
        return x.inverse()
    if x == 0:
        raise FieldError("inversion of zero")
    return 1 / Fraction(x)
