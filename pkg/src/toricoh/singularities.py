"""Cyclic quotient singularities and the Riemann-Roch correction term.

A germ ``1/d(a, b)`` is the quotient of C^2 by the cyclic group of order
``d`` acting with weights ``(a, b)``.  After choosing a primitive root of
unity every such germ with ``gcd(d, a) = gcd(d, b) = 1`` is written
``1/d(1, p)``, and a local Weil-mod-Cartier class is an integer ``k`` mod
``d``.  :func:`delta` returns the correction term of that class.

The weighted projective plane helpers (:func:`g_w`, :func:`wp2_chi`,
:func:`wp2_lattice_count`) supply both the recursion that defines
:func:`delta` and an independent lattice-point oracle for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .errors import InvalidInput

__all__ = [
    "CyclicQuotientType",
    "WeightTriple",
    "normalize_type",
    "delta",
    "delta_general",
    "g_w",
    "wp2_lattice_count",
    "wp2_lattice_counts",
    "wp2_chi",
]


@dataclass(frozen=True)
class CyclicQuotientType:
    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.d <= 0:
            raise InvalidInput(f"group order must be positive, got {self.d}")

    @property
    def is_smooth(self) -> bool:
        return self.d == 1

    def standard_form(self) -> Tuple[int, int]:
        """``(d, p)`` with the germ isomorphic to ``1/d(1, p)``."""
        if self.d == 1:
            return (1, 0)
        if math.gcd(self.a, self.d) != 1:
            raise InvalidInput(f"{self} is not normalized")
        return (self.d, pow(self.a, -1, self.d) * self.b % self.d)

    def __str__(self):
        return f"1/{self.d}({self.a},{self.b})"


SMOOTH = CyclicQuotientType(1, 1, 1)


def normalize_type(t: CyclicQuotientType) -> CyclicQuotientType:
    """Return an isomorphic germ with ``gcd(d,a) = gcd(d,b) = gcd(a,b) = 1``.

    Common factors of ``(d, a, b)`` and of ``(a, b)`` are divided out, and
    pseudo-reflections (``gcd(d, a) > 1`` or ``gcd(d, b) > 1``) are absorbed
    by lowering the order.  Order 1 means the point is smooth.

    >>> normalize_type(CyclicQuotientType(12, 3, 5))
    CyclicQuotientType(d=4, a=1, b=1)
    >>> normalize_type(CyclicQuotientType(6, 2, 3)).is_smooth
    True
    """
    d, a, b = t.d, t.a % t.d, t.b % t.d
    while d > 1:
        prev = (d, a, b)
        u = math.gcd(d, math.gcd(a, b))
        d, a, b = d // u, a // u, b // u
        v = math.gcd(a, b)
        if v > 1:
            a, b = a // v, b // v
        w = math.gcd(d, a)
        d, a = d // w, a // w
        a, b = a % d, b % d
        w = math.gcd(d, b)
        d, b = d // w, b // w
        a, b = a % d, b % d
        if (d, a, b) == prev:
            break
    if d == 1:
        return SMOOTH
    return CyclicQuotientType(d, a, b)


@lru_cache(maxsize=None)
def _delta_reduced(d: int, p: int, m: int) -> Fraction:
    # 1 <= p < d, 1 <= m < d, gcd(d, p) = 1.  The weighted plane P(1, d, p)
    # has vanishing chi in degrees m - 1 - d - p, which splits the polynomial
    # part between its two singular vertices 1/d(1,p) and 1/p(1,d).
    rest = Fraction(0)
    if p > 1:
        mp = m % p
        if mp:
            rest = _delta_reduced(p, d % p, mp)
    return 1 + Fraction((m - 1 - d - p) * m, 2 * d * p) - rest


def delta(d: int, p: int, k: int) -> Fraction:
    """Correction term of the class ``k`` at a point of type ``1/d(1, p)``.

    ``p`` and ``k`` are read modulo ``d``; the value vanishes for ``d = 1``
    and for ``k = 0 (mod d)``.

    >>> delta(2, 1, 1)
    Fraction(1, 4)
    >>> delta(5, 3, 2)
    Fraction(1, 5)
    """
    if d <= 0:
        raise InvalidInput(f"group order must be positive, got {d}")
    if math.gcd(d, p) != 1:
        raise InvalidInput(f"type 1/{d}(1,{p}) is not cyclic of order {d}")
    if d == 1:
        return Fraction(0)
    m = k % d
    if m == 0:
        return Fraction(0)
    return _delta_reduced(d, p % d, m)


def delta_general(t: CyclicQuotientType, k: int) -> Fraction:
    """Correction term at ``1/d(a, b)``, rescaled to ``1/d(1, a^-1 b)``."""
    if t.d == 1:
        return Fraction(0)
    if math.gcd(t.a, t.d) != 1 or math.gcd(t.b, t.d) != 1:
        raise InvalidInput(f"{t} must be normalized before evaluating delta")
    inv = pow(t.a, -1, t.d)
    return delta(t.d, inv * t.b, inv * k)


@dataclass(frozen=True)
class WeightTriple:
    w0: int
    w1: int
    w2: int

    def __post_init__(self):
        if 0 in self.weights:
            raise InvalidInput(f"zero weight in {self.weights}")

    @property
    def weights(self) -> Tuple[int, int, int]:
        return (self.w0, self.w1, self.w2)

    @property
    def total(self) -> int:
        """``|w| = w0 + w1 + w2``."""
        return self.w0 + self.w1 + self.w2

    @property
    def product(self) -> int:
        return self.w0 * self.w1 * self.w2

    @property
    def pairwise_coprime(self) -> bool:
        w0, w1, w2 = self.weights
        return math.gcd(w0, w1) == math.gcd(w1, w2) == math.gcd(w0, w2) == 1


def _as_triple(w) -> WeightTriple:
    return w if isinstance(w, WeightTriple) else WeightTriple(*w)


def _require_positive(w: WeightTriple):
    if min(w.weights) <= 0:
        raise InvalidInput(f"weights must be positive, got {w.weights}")


def g_w(w, k: int) -> Fraction:
    """Polynomial part ``1 + k(k + |w|) / (2 w0 w1 w2)``."""
    w = _as_triple(w)
    _require_positive(w)
    return 1 + Fraction(k * (k + w.total), 2 * w.product)


def wp2_lattice_counts(w, m_max: int) -> List[int]:
    """Counts ``#{(i,j,l) >= 0 : w0 i + w1 j + w2 l = m}`` for ``0 <= m <= m_max``."""
    w = _as_triple(w)
    _require_positive(w)
    if m_max < 0:
        return []
    counts = [0] * (m_max + 1)
    counts[0] = 1
    for wi in w.weights:
        for s in range(wi, m_max + 1):
            counts[s] += counts[s - wi]
    return counts


def wp2_lattice_count(w, m: int) -> int:
    """Number of monomials of weighted degree ``m``, i.e. ``h^0(P^2_w, O(m))``."""
    if m < 0:
        _require_positive(_as_triple(w))
        return 0
    return wp2_lattice_counts(w, m)[m]


def wp2_chi(w, m: int) -> Fraction:
    """Euler characteristic of ``O(m)`` on the weighted plane ``P^2_w``.

    Equals ``g_w(w, m)`` minus the correction terms of the three vertices
    ``1/w_i(w_j, w_k)`` at the class ``m + |w|``; weight-1 vertices are smooth.
    """
    w = _as_triple(w)
    _require_positive(w)
    if not w.pairwise_coprime:
        raise InvalidInput(f"weights {w.weights} are not pairwise coprime")
    ws = w.weights
    arg = m + w.total
    total = g_w(w, m)
    for i in range(3):
        if ws[i] > 1:
            j, l = (i + 1) % 3, (i + 2) % 3
            total -= delta_general(CyclicQuotientType(ws[i], ws[j], ws[l]), arg)
    return total
