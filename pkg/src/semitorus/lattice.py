"""Exact integer arithmetic for rank-2 lattices in the (A, B) translation frame.

A lattice is given by a 2x2 integer basis whose *rows* are the generating
vectors, so ``((a, b), (c, d))`` spans ``{x(a, b) + y(c, d)}``.  The canonical
form is the upper-triangular Hermite normal form ``((p, q), (0, r))`` with
``p, r > 0`` and ``0 <= q < r``.  No floating point is used anywhere here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DegenerateBasis, NotSublattice

Vector = tuple[int, int]


@dataclass(frozen=True, order=True)
class Basis2:
    """Two integer row vectors ``(a, b)`` and ``(c, d)``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows) -> Basis2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def parse(cls, text: str) -> Basis2:
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 4:
            raise ValueError(f"basis needs four integers a,b,c,d, got {text!r}")
        return cls(*(int(p) for p in parts))

    @classmethod
    def identity(cls) -> Basis2:
        return cls(1, 0, 0, 1)

    @classmethod
    def scalar(cls, m: int) -> Basis2:
        return cls(m, 0, 0, m)

    @property
    def rows(self) -> tuple[Vector, Vector]:
        return (self.a, self.b), (self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def to_list(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]

    def __str__(self):
        return f"({self.a},{self.b}),({self.c},{self.d})"


def _require_nondegenerate(b: Basis2) -> None:
    if b.det == 0:
        raise DegenerateBasis(f"basis {b} has zero determinant")


def hnf(b: Basis2) -> Basis2:
    """Upper-triangular Hermite normal form of the lattice spanned by ``b``."""
    _require_nondegenerate(b)
    (a, bb), (c, d) = b.rows
    # column-1 gcd by extended Euclid on the first coordinates, tracking rows
    r0, r1 = [a, bb], [c, d]
    while r1[0] != 0:
        k = r0[0] // r1[0]
        r0, r1 = r1, [r0[0] - k * r1[0], r0[1] - k * r1[1]]
    if r0[0] < 0:
        r0 = [-r0[0], -r0[1]]
    p, q = r0
    r = abs(r1[1])
    q %= r
    return Basis2(p, q, 0, r)


def index(b: Basis2) -> int:
    """Index ``|ad - bc|`` of the lattice in Z^2."""
    _require_nondegenerate(b)
    return abs(b.det)


def coords(b: Basis2, v: Vector) -> tuple[Fraction, Fraction]:
    """Rational coefficients ``(x, y)`` with ``v = x*row1 + y*row2``."""
    _require_nondegenerate(b)
    det = b.det
    x = Fraction(v[0] * b.d - v[1] * b.c, det)
    y = Fraction(b.a * v[1] - b.b * v[0], det)
    return x, y


def contains(b: Basis2, v: Vector) -> bool:
    x, y = coords(b, v)
    return x.denominator == 1 and y.denominator == 1


def is_sublattice(sub: Basis2, sup: Basis2) -> bool:
    (r1, r2) = sub.rows
    return contains(sup, r1) and contains(sup, r2)


def same_lattice(b1: Basis2, b2: Basis2) -> bool:
    return hnf(b1) == hnf(b2)


def reduce(h: Basis2, v: Vector) -> Vector:
    """Canonical representative of ``v`` modulo the lattice with HNF basis ``h``.

    ``h`` must already be in Hermite normal form; the result lies in the box
    ``0 <= x < p``, ``0 <= y < r``.
    """
    p, q, r = h.a, h.b, h.d
    k = v[0] // p
    return v[0] - k * p, (v[1] - k * q) % r


def representatives(h: Basis2) -> list[Vector]:
    """Coset representatives of Z^2 modulo the HNF lattice ``h``, in canonical order."""
    return [(i, j) for i in range(h.a) for j in range(h.d)]


def transform(t: Basis2, k: Basis2) -> Basis2:
    """Lattice with rows ``t @ k``: a sub-lattice of ``k`` of index ``|det t|``."""
    return Basis2(
        t.a * k.a + t.b * k.c, t.a * k.b + t.b * k.d,
        t.c * k.a + t.d * k.c, t.c * k.b + t.d * k.d,
    )


def apply_linear(m, v: Vector) -> Vector:
    """Apply the 2x2 matrix ``m`` (nested tuples) to the column vector ``v``."""
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def image_lattice(m, b: Basis2) -> Basis2:
    """Lattice obtained by applying the linear map ``m`` to every vector of ``b``."""
    r1, r2 = b.rows
    return Basis2(*apply_linear(m, r1), *apply_linear(m, r2))


def preserves(m, b: Basis2) -> bool:
    """True iff the unimodular map ``m`` sends the lattice ``b`` onto itself."""
    return same_lattice(image_lattice(m, b), b)


@dataclass(frozen=True)
class CosetTable:
    sublattice: Basis2
    superlattice: Basis2
    representatives: tuple[Vector, ...]

    def __len__(self):
        return len(self.representatives)


def cosets(sub: Basis2, sup: Basis2) -> CosetTable:
    """Enumerate ``sup / sub``, one canonical representative per coset."""
    if not is_sublattice(sub, sup):
        raise NotSublattice(f"{sub} is not contained in {sup}")
    hs = hnf(sup)
    # sub expressed in coordinates of the sup basis is an integer matrix
    r1, r2 = sub.rows
    c1 = tuple(int(x) for x in coords(hs, r1))
    c2 = tuple(int(x) for x in coords(hs, r2))
    rel = hnf(Basis2(*c1, *c2))
    reps = []
    for i, j in representatives(rel):
        reps.append((i * hs.a + j * hs.c, i * hs.b + j * hs.d))
    return CosetTable(hnf(sub), hs, tuple(reps))


def cover_exponent(k: Basis2) -> int:
    """Least ``m > 0`` with ``m * Z^2`` contained in the lattice ``k``.

    The inverse of ``((a, b), (c, d))`` is ``(d, -c, -b, a) / (ad - bc)`` up to
    arrangement; ``m`` is the lcm of the reduced denominators of its entries.
    """
    _require_nondegenerate(k)
    det = k.det
    entries = [Fraction(k.d, det), Fraction(-k.c, det), Fraction(-k.b, det), Fraction(k.a, det)]
    m = 1
    for e in entries:
        m = math.lcm(m, e.denominator)
    return m


def sheet_count(k: Basis2) -> int:
    """Sheets of the square cover ``E/(m Z^2) -> E/k``, i.e. ``m^2 / index(k)``."""
    m = cover_exponent(k)
    n, rem = divmod(m * m, index(k))
    assert rem == 0
    return n


def hnf_bases(n: int) -> Iterator[Basis2]:
    """All HNF bases of determinant ``n`` (so every index-``n`` sub-lattice once)."""
    for p in range(1, n + 1):
        if n % p:
            continue
        r = n // p
        for q in range(r):
            yield Basis2(p, q, 0, r)


def hnf_bases_upto(max_index: int) -> Iterator[Basis2]:
    for n in range(1, max_index + 1):
        yield from hnf_bases(n)


def sublattices(k: Basis2, ratio: int) -> list[Basis2]:
    """All sub-lattices of ``k`` with index ratio ``ratio``, canonical and sorted."""
    return sorted({hnf(transform(t, k)) for t in hnf_bases(ratio)})
