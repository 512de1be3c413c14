"""Rational ruled toric surfaces ``S(d1, d2, n1, n2, r)``.

The surface is fibred over P^1 with two marked fibres carrying the cyclic
points ``1/d_i(1, +-n_i)`` and two disjoint sections of self-intersection
``r`` and ``-r``.  Its Picard group is presented as::

    Pic(S) = < Z, F, E_X, E_Y | F = d1 E_X = d2 E_Y >  ~  Z^2 x Z/d

with ``Z`` the section of self-intersection ``-r``, ``F`` a general fibre,
``E_X``/``E_Y`` the reduced special fibres and ``d = gcd(d1, d2)``.  Every
class has a unique representative ``aZ + bF + alpha E_X + beta E_Y`` with
``0 <= alpha < d1`` and ``0 <= beta < d2``.

Note on conventions: the generator ``Z`` is the *negative* section, so
``Z.Z = -r``.  The integer ``k`` with ``n1/d1 + n2/d2 - r = 1 - k`` is put
on the first fibre: ``p1 = n1 + k d1`` and ``q2 = n2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple, Union

from .arith import RationalLike, format_rational, to_rational
from .errors import InternalInconsistency, InvalidInput

__all__ = [
    "DivisorClass",
    "QDivisor",
    "RuledToricSurface",
    "new_surface",
    "canonical_form",
    "intersect",
    "canonical_cycle",
    "canonical_divisor",
    "linearly_equivalent",
    "numerically_equivalent",
    "torsion_index",
]


@dataclass(frozen=True)
class DivisorClass:
    """Integer combination ``aZ + bF + alpha E_X + beta E_Y``.

    Arithmetic is done on coefficients; use :func:`canonical_form` (or
    :meth:`RuledToricSurface.divisor`) to get the canonical representative.
    """

    a: int
    b: int
    alpha: int
    beta: int

    def __iter__(self):
        return iter((self.a, self.b, self.alpha, self.beta))

    def __add__(self, other):
        o = as_divisor(other)
        return DivisorClass(self.a + o.a, self.b + o.b, self.alpha + o.alpha, self.beta + o.beta)

    __radd__ = __add__

    def __neg__(self):
        return DivisorClass(-self.a, -self.b, -self.alpha, -self.beta)

    def __sub__(self, other):
        return self + (-as_divisor(other))

    def __rsub__(self, other):
        return as_divisor(other) - self

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return DivisorClass(n * self.a, n * self.b, n * self.alpha, n * self.beta)

    __rmul__ = __mul__

    def as_list(self):
        return [self.a, self.b, self.alpha, self.beta]

    def __str__(self):
        return f"{self.a}Z{self.b:+d}F{self.alpha:+d}E_X{self.beta:+d}E_Y"


DivisorLike = Union[DivisorClass, Sequence[int]]


def as_divisor(D: DivisorLike) -> DivisorClass:
    if isinstance(D, DivisorClass):
        return D
    vals = tuple(D)
    if len(vals) != 4 or not all(isinstance(x, int) and not isinstance(x, bool) for x in vals):
        raise InvalidInput(f"a divisor is four integers [a, b, alpha, beta], got {D!r}")
    return DivisorClass(*vals)


@dataclass(frozen=True)
class QDivisor:
    """Rational combination on the ordered basis ``(Z, F, E_X, E_Y)``."""

    coeffs: Tuple[Fraction, Fraction, Fraction, Fraction]

    @classmethod
    def of(cls, *xs: RationalLike) -> "QDivisor":
        return cls(tuple(to_rational(x) for x in xs))

    def __add__(self, other):
        o = _qvec(other)
        return QDivisor(tuple(x + y for x, y in zip(self.coeffs, o)))

    def __neg__(self):
        return QDivisor(tuple(-x for x in self.coeffs))

    def __mul__(self, c: RationalLike):
        c = to_rational(c)
        return QDivisor(tuple(c * x for x in self.coeffs))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(format_rational(x) for x in self.coeffs) + ")"


def _qvec(D) -> Tuple[Fraction, ...]:
    if isinstance(D, QDivisor):
        return D.coeffs
    return tuple(Fraction(x) for x in as_divisor(D))


@dataclass(frozen=True)
class RuledToricSurface:
    """Validated invariants of a rational ruled toric surface.

    Use :func:`new_surface` or :meth:`biruled` to construct one.
    """

    d1: int
    d2: int
    n1: int
    n2: int
    r: Fraction

    def __post_init__(self):
        d1, d2, n1, n2 = self.d1, self.d2, self.n1, self.n2
        for name, v in (("d1", d1), ("d2", d2), ("n1", n1), ("n2", n2)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInput(f"{name} must be an integer, got {v!r}", name)
        r = to_rational(self.r)
        object.__setattr__(self, "r", r)
        if d1 < 1 or d2 < 1:
            raise InvalidInput(f"fibre multiplicities must be positive, got d1={d1}, d2={d2}")
        for i, (d, n) in enumerate(((d1, n1), (d2, n2)), start=1):
            if not 0 <= n < d:
                raise InvalidInput(f"need 0 <= n{i} < d{i}, got n{i}={n}, d{i}={d}", f"n{i}")
            if math.gcd(n, d) != 1:
                raise InvalidInput(f"gcd(n{i}, d{i}) = {math.gcd(n, d)} != 1", f"n{i}")
        if r < 0:
            raise InvalidInput(f"r must be non-negative, got {r}", "r")
        s = Fraction(n1, d1) + Fraction(n2, d2) - r
        if s.denominator != 1:
            raise InvalidInput(f"n1/d1 + n2/d2 - r = {s} is not an integer", "r")
        k = 1 - int(s)
        if k < 0:
            raise InvalidInput(f"n1/d1 + n2/d2 - r = {s} gives negative k = {k}", "r")
        object.__setattr__(self, "k", k)

    @classmethod
    def biruled(cls, d: int, p: int) -> "RuledToricSurface":
        """The ``r = 0`` surface ``S(d, p)`` with points ``1/d(1, p)``."""
        if d == 1:
            return cls(1, 1, 0, 0, Fraction(0))
        p %= d
        return cls(d, d, p, d - p, Fraction(0))

    # derived invariants ---------------------------------------------------

    @property
    def p1(self) -> int:
        return self.n1 + self.k * self.d1

    @property
    def q1(self) -> int:
        return self.d1 - self.n1

    @property
    def q2(self) -> int:
        return self.n2

    @property
    def p2(self) -> int:
        return self.d2 - self.q2

    @property
    def d(self) -> int:
        """Order of the torsion subgroup, ``gcd(d1, d2)``."""
        return math.gcd(self.d1, self.d2)

    @property
    def rd1d2(self) -> int:
        """``r d1 d2``, always an integer."""
        v = self.r * self.d1 * self.d2
        assert v.denominator == 1
        return int(v)

    @property
    def is_biruled(self) -> bool:
        return self.r == 0

    @property
    def p(self) -> int:
        """Biruled shorthand: ``p = p1 = p2``."""
        return self.p1

    @property
    def q(self) -> int:
        """Biruled shorthand: ``q = q1 = q2 = d - p``."""
        return self.q2

    @property
    def singular_points(self):
        """Types ``(d_i, p)`` of the four torus-fixed points as ``1/d_i(1, p)``.

        Listed in the order their correction terms enter the Euler
        characteristic: ``(d1, q1), (d2, p2), (d1, p1), (d2, q2)``.
        """
        return ((self.d1, self.q1 % self.d1), (self.d2, self.p2 % self.d2),
                (self.d1, self.p1 % self.d1), (self.d2, self.q2 % self.d2))

    def __str__(self):
        return f"S(d1={self.d1}, d2={self.d2}, n1={self.n1}, n2={self.n2}, r={format_rational(self.r)})"

    def to_json(self):
        return {"d1": self.d1, "d2": self.d2, "n1": self.n1, "n2": self.n2,
                "r": format_rational(self.r)}

    # Picard group -----------------------------------------------------------

    def divisor(self, *raw) -> DivisorClass:
        """Canonical class of ``aZ + bF + alpha E_X + beta E_Y``."""
        if len(raw) == 1:
            raw = raw[0]
        return canonical_form(self, raw)

    @property
    def Z(self) -> DivisorClass:
        return DivisorClass(1, 0, 0, 0)

    @property
    def F(self) -> DivisorClass:
        return DivisorClass(0, 1, 0, 0)

    @property
    def E_X(self) -> DivisorClass:
        return self.divisor(0, 0, 1, 0)

    @property
    def E_Y(self) -> DivisorClass:
        return self.divisor(0, 0, 0, 1)

    @property
    def T(self) -> DivisorClass:
        """Torsion generator ``(d1/d) E_X - (d2/d) E_Y``."""
        d = self.d
        return self.divisor(0, 0, self.d1 // d, -(self.d2 // d))

    @property
    def generators(self) -> Tuple[DivisorClass, ...]:
        return (self.Z, self.F, DivisorClass(0, 0, 1, 0), DivisorClass(0, 0, 0, 1))

    def intersection_matrix(self):
        """Intersection numbers on ``(Z, F, E_X, E_Y)``."""
        z = [-self.r, Fraction(1), Fraction(1, self.d1), Fraction(1, self.d2)]
        zero = Fraction(0)
        return [z, [z[1], zero, zero, zero], [z[2], zero, zero, zero], [z[3], zero, zero, zero]]

    @cached_property
    def K(self) -> DivisorClass:
        """Canonical divisor; see :func:`canonical_divisor`."""
        return _validated_canonical_divisor(self)


def new_surface(d1: int, d2: int, n1: int, n2: int, r: RationalLike) -> RuledToricSurface:
    return RuledToricSurface(d1, d2, n1, n2, to_rational(r))


def canonical_form(S: RuledToricSurface, raw: DivisorLike) -> DivisorClass:
    """Reduce ``alpha`` mod ``d1`` and ``beta`` mod ``d2``, carrying into ``b``.

    >>> canonical_form(RuledToricSurface.biruled(5, 3), (1, 0, 7, -1)).as_list()
    [1, 0, 2, 4]
    """
    a, b, alpha, beta = as_divisor(raw)
    c1, alpha = divmod(alpha, S.d1)
    c2, beta = divmod(beta, S.d2)
    return DivisorClass(a, b + c1 + c2, alpha, beta)


def intersect(S: RuledToricSurface, D1, D2) -> Fraction:
    x, y = _qvec(D1), _qvec(D2)
    # only Z pairs non-trivially
    zrow = (-S.r, Fraction(1), Fraction(1, S.d1), Fraction(1, S.d2))
    return (x[0] * sum(c * v for c, v in zip(zrow, y))
            + y[0] * sum(c * v for c, v in zip(zrow[1:], x[1:])))


def canonical_cycle(S: RuledToricSurface) -> QDivisor:
    """``Z_K = 2Z + rF + E_X + E_Y``, numerically equal to ``-K``."""
    return QDivisor.of(2, S.r, 1, 1)


def canonical_divisor(S: RuledToricSurface) -> DivisorClass:
    return S.K


def linearly_equivalent(S: RuledToricSurface, D1: DivisorLike, D2: DivisorLike) -> bool:
    return canonical_form(S, D1) == canonical_form(S, D2)


def numerically_equivalent(S: RuledToricSurface, D1, D2) -> bool:
    diff = QDivisor(_qvec(D1)) + -QDivisor(_qvec(D2))
    return all(intersect(S, diff, G) == 0 for G in S.generators)


def torsion_index(S: RuledToricSurface, D: DivisorLike) -> Optional[int]:
    """The ``t`` in ``[0, d)`` with ``D ~ tT``, or ``None`` if ``D`` is not torsion."""
    if not numerically_equivalent(S, D, (0, 0, 0, 0)):
        return None
    target = canonical_form(S, D)
    T = S.T
    for t in range(S.d):
        if canonical_form(S, t * T) == target:
            return t
    raise InternalInconsistency(f"numerically trivial {target} is not a multiple of T on {S}")


def _spread(n: int, size: int = 5) -> Iterable[int]:
    if n <= size:
        return range(n)
    return sorted({0, 1, n // 3, n // 2, n - 1})


def _duality_sample(S: RuledToricSurface):
    for a in range(-3, 4):
        for b in range(-3, 4):
            for alpha in _spread(S.d1):
                for beta in _spread(S.d2):
                    yield DivisorClass(a, b, alpha, beta)
    for t in range(S.d):
        yield canonical_form(S, t * S.T)
        yield canonical_form(S, S.Z + t * S.T)


def _validated_canonical_divisor(S: RuledToricSurface) -> DivisorClass:
    # The seed has the right intersection numbers; its torsion part is then
    # pinned by requiring chi(K - D) = chi(D) on a fixed sample.
    from .cohomology import chi

    seed = canonical_form(S, (-2, -(1 + S.k), S.d1 - S.n1 - 1, S.d2 - S.q2 - 1))
    sample = list(_duality_sample(S))

    def passes(K):
        return all(chi(S, canonical_form(S, K - D)) == chi(S, D) for D in sample)

    if passes(seed):
        return seed
    survivors = [K for K in (canonical_form(S, seed + t * S.T) for t in range(1, S.d)) if passes(K)]
    if len(survivors) != 1:
        raise InternalInconsistency(
            f"{len(survivors)} torsion offsets of the canonical class pass duality on {S}")
    return survivors[0]
