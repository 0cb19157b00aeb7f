"""Exact coefficients: rationals and dense polynomials in the formal symbol ``k``.

Rationals are :class:`fractions.Fraction`, which is already arbitrary precision
and kept in lowest terms with a positive denominator.  ``KPoly`` is a small
immutable dense polynomial over those rationals.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

Scalar = Union[int, Fraction]

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def rat(x: Union[int, str, Fraction]) -> Fraction:
    """Parse ``"num/den"`` strings or ints into a canonical Fraction."""
    return Fraction(x)


def rat_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Apply ``op`` in {add, sub, mul, div}.

    Division by zero raises :class:`ZeroDivisionError`.

    >>> rat_arith(Fraction(1, 2), Fraction(1, 3), "add")
    Fraction(5, 6)
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"division of {a} by zero")
    return Fraction(fn(Fraction(a), Fraction(b)))


def rat_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class KPoly:
    """Univariate polynomial in ``k``, coefficients stored low degree first.

    Instances are immutable and hashable; the coefficient tuple never ends in
    a zero, so the zero polynomial has no coefficients at all.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("KPoly is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "KPoly":
        return cls((c,))

    @classmethod
    def k_plus(cls, offset: Scalar, scale: Scalar = 1) -> "KPoly":
        """``scale * (k + offset)``."""
        return cls((Fraction(scale) * offset, scale))

    @classmethod
    def coerce(cls, x: Union["KPoly", Scalar]) -> "KPoly":
        return x if isinstance(x, KPoly) else cls.const(x)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = KPoly.const(other)
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("KPoly", self.coeffs))

    def __add__(self, other):
        other = KPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return KPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-KPoly.coerce(other))

    def __rsub__(self, other):
        return KPoly.coerce(other) - self

    def __mul__(self, other):
        other = KPoly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return KPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return KPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "KPoly":
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return KPoly(x / c for x in self.coeffs)

    def __call__(self, x: Scalar) -> Fraction:
        return kpoly_eval(self, x)

    def __repr__(self) -> str:
        return f"KPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return render_kpoly(self)

    def to_json(self) -> list[dict]:
        return [
            {"deg": d, "coeff": rat_to_str(c)}
            for d, c in enumerate(self.coeffs)
            if c != 0
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "KPoly":
        degs = [item["deg"] for item in data]
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError("KPoly JSON degrees must be strictly increasing")
        coeffs = [Fraction(0)] * (degs[-1] + 1 if degs else 0)
        for item in data:
            coeffs[item["deg"]] = Fraction(item["coeff"])
        return cls(coeffs)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


K = KPoly((0, 1))


def kpoly_arith(p: KPoly, q: Union[KPoly, Scalar], op: str) -> KPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def kpoly_eval(p: KPoly, x: Scalar) -> Fraction:
    """Horner evaluation at an exact point."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def render_kpoly(p: KPoly) -> str:
    """Render with one common denominator, e.g. ``(36k+37)/272160``.

    Terms run from the highest power of ``k`` down; no decimals ever appear.
    """
    if p.is_zero():
        return "0"
    den = reduce(_lcm, (c.denominator for c in p.coeffs), 1)
    nums = [int(c * den) for c in p.coeffs]
    parts = []
    for d in range(len(nums) - 1, -1, -1):
        c = nums[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            var = "k" if d == 1 else f"k^{d}"
            body = var if mag == 1 else f"{mag}{var}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    if den == 1:
        return text
    if len(parts) > 1:
        return f"({text})/{den}"
    return f"{text}/{den}"
