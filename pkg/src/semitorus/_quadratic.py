"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Only used to build the tiling templates: every Archimedean tiling with unit
edges has vertex coordinates in Q(sqrt 2) or Q(sqrt 3), so edge detection
by unit distance can be decided exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction


class Quad:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 3):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other) -> Quad:
        if isinstance(other, Quad):
            if other.d != self.d and other.b and self.b:
                raise ValueError("mixing quadratic fields")
            return other
        return Quad(other, 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return Quad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Quad(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> Quad:
        return Quad(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.d)
        num = self * o.conjugate()
        return Quad(num.a / n, num.b / n, self.d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        o = self._coerce(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def substitute(self, root: Fraction) -> Fraction:
        """Rational image under the Q-linear map sending sqrt(d) to ``root``."""
        return self.a + self.b * root

    def __repr__(self):
        return "Quad(%s, %s, d=%d)" % (self.a, self.b, self.d)


def vec(x, y, d: int) -> tuple[Quad, Quad]:
    return (Quad(x, 0, d) if not isinstance(x, Quad) else x,
            Quad(y, 0, d) if not isinstance(y, Quad) else y)


def rotate(p, c: Quad, s: Quad):
    """Rotate the point ``p`` about the origin by the angle with cosine ``c`` and sine ``s``."""
    x, y = p
    return (x * c - y * s, x * s + y * c)


def add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def scale(k, p):
    return (p[0] * k, p[1] * k)


def sqnorm(p) -> Quad:
    return p[0] * p[0] + p[1] * p[1]


def solve_frame(p, A, B):
    """Coordinates ``(x, y)`` with ``p = x*A + y*B``."""
    det = A[0] * B[1] - A[1] * B[0]
    x = (p[0] * B[1] - p[1] * B[0]) / det
    y = (A[0] * p[1] - A[1] * p[0]) / det
    return x, y
