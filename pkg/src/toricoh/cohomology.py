"""Euler characteristic and cohomology dimensions of ``O_S(D)``.

Two independent routes are provided:

* the oracle: global sections are monomials ``X^u Y^v`` cut out by weighted
  multiplicity conditions, so ``h^0`` is a lattice-point count in a rational
  polygon; ``h^2`` follows by Serre duality and ``h^1`` from Riemann-Roch;
* closed forms: the sign table for biruled surfaces (``r = 0``), the
  two-region description for uniruled surfaces with ``k = 0``, and the
  binomial-minus-triangles formula for ``h^0`` on biruled surfaces.

With checks enabled (the default, see :func:`checks_enabled`) every closed
form is compared against the oracle and a mismatch raises
:class:`~toricoh.errors.InternalInconsistency`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, NamedTuple, Optional, Tuple

from .errors import InternalInconsistency, InvalidInput
from .singularities import delta, wp2_lattice_count
from .surface import DivisorClass, DivisorLike, RuledToricSurface, as_divisor, canonical_form

__all__ = [
    "HVector",
    "checks_enabled",
    "chi",
    "h0_enum",
    "h0_monomials",
    "h2_via_duality",
    "h_vector",
    "h0_closed_biruled",
    "main2_closed",
    "corner_triangle_count",
    "Main2Result",
    "h02_diagnostic",
    "H02Report",
]

METHODS = ("enumeration", "table1", "main2-closed", "mixed")


def checks_enabled() -> bool:
    """Whether closed forms are cross-checked against the oracle.

    Controlled by ``TORICOH_CHECKS=strict|off``; strict unless set to off.
    """
    return os.environ.get("TORICOH_CHECKS", "strict").strip().lower() != "off"


@dataclass(frozen=True)
class HVector:
    h0: int
    h1: int
    h2: int
    chi: int
    method: str
    flags: Tuple[str, ...] = field(default=())
    checked: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if min(self.h0, self.h1, self.h2) < 0:
            raise InternalInconsistency(f"negative cohomology dimension in {self}")
        if self.h0 - self.h1 + self.h2 != self.chi:
            raise InternalInconsistency(f"Euler characteristic mismatch in {self}")

    @property
    def h(self) -> Tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)


def _canonical(S: RuledToricSurface, D: DivisorLike) -> DivisorClass:
    return canonical_form(S, D)


def chi(S: RuledToricSurface, D: DivisorLike) -> Fraction:
    """Riemann-Roch value of ``chi(O_S(D))`` for a class in any representation."""
    a, b, al, be = _canonical(S, D)
    d1, d2, r = S.d1, S.d2, S.r
    q1, p1, p2, q2 = S.q1, S.p1, S.p2, S.q2
    rn, rd = r.numerator, r.denominator
    # 2 d1 d2 rd * (polynomial part), kept integral
    L = 2 * d1 * d2 * rd
    num = (L
           + a * (b * rd + rn) * d1 * d2
           + (b * d1 * d2 * rd + al * d2 * rd + be * d1 * rd - a * rn * d1 * d2) * (a + 2)
           + a * (al + 1) * d2 * rd
           + a * (be + 1) * d1 * rd)
    return (Fraction(num, L)
            - delta(d1, q1, -al - a * q1)
            - delta(d2, p2, -be - a * p2)
            - delta(d1, p1, -al)
            - delta(d2, q2, -be))


def _chi_int(S, D) -> int:
    c = chi(S, D)
    if c.denominator != 1:
        raise InternalInconsistency(f"non-integral chi {c} for {D} on {S}")
    return int(c)


def _ceil_div(x: int, y: int) -> int:
    return -((-x) // y)


def _h0_rows(S: RuledToricSurface, D: DivisorClass) -> Iterator[Tuple[int, int, int]]:
    """Yield ``(u, vmin, vmax)`` for the non-empty columns of the section polygon."""
    a, b, al, be = D
    top = a + b
    if top < 0:
        return
    p1, p2, q2 = S.p1, S.p2, S.q2
    lower_coeff = S.d1 - p1
    for u in range(top + 1):
        # (d1 - p1) u - p1 v >= -p1 b - alpha
        hi = min(top - u, (lower_coeff * u + p1 * b + al) // p1)
        # q2 u - p2 v <= q2 b + beta
        lo = max(0, b - u, _ceil_div(q2 * u - q2 * b - be, p2))
        if hi >= lo:
            yield u, lo, hi


def h0_enum(S: RuledToricSurface, D: DivisorLike) -> int:
    """``h^0(O_S(D))`` by counting admissible monomial exponents ``(u, v)``.

    The exponents satisfy ``u, v >= 0``, ``b <= u + v <= a + b`` and the two
    weighted multiplicity conditions at the singular fibres::

        (d1 - p1) u - p1 v >= -p1 b - alpha
        q2 u - p2 v <= q2 b + beta
    """
    D = _canonical(S, D)
    return sum(hi - lo + 1 for _, lo, hi in _h0_rows(S, D))


def h0_monomials(S: RuledToricSurface, D: DivisorLike) -> Iterator[Tuple[int, int]]:
    """The exponents ``(u, v)`` of a monomial basis of ``H^0(O_S(D))``."""
    D = _canonical(S, D)
    for u, lo, hi in _h0_rows(S, D):
        for v in range(lo, hi + 1):
            yield (u, v)


def h2_via_duality(S: RuledToricSurface, D: DivisorLike) -> int:
    """``h^2(O_S(D)) = h^0(O_S(K - D))``."""
    return h0_enum(S, canonical_form(S, S.K - as_divisor(D)))


def _oracle(S, D, c) -> Tuple[int, int, int]:
    h0 = h0_enum(S, D)
    h2 = h2_via_duality(S, D)
    return h0, h0 + h2 - c, h2


def _table1_degree(S: RuledToricSurface, D: DivisorClass) -> Optional[int]:
    a, b, al, be = D
    if a == -1:
        return None
    positive_row = b > -1 or (b == -1 and al + be >= S.d)
    if a > -1:
        return 0 if positive_row else 1
    return 1 if positive_row else 2


def _table1(S, D, c) -> Tuple[int, int, int]:
    deg = _table1_degree(S, D)
    h = [0, 0, 0]
    if deg is None:
        if c != 0:
            raise InternalInconsistency(f"chi = {c} on the acyclic line a = -1 for {D} on {S}")
        return (0, 0, 0)
    h[deg] = (-1) ** deg * c
    if h[deg] < 0:
        raise InternalInconsistency(f"sign table gives h^{deg} = {h[deg]} for {D} on {S}")
    return tuple(h)


def _mismatch(S, D, what, fast, oracle):
    raise InternalInconsistency(f"{what} {fast} != oracle {oracle} for {D} on {S}")


def h_vector(S: RuledToricSurface, D: DivisorLike, method: str = "auto",
             check: Optional[bool] = None) -> HVector:
    """All three cohomology dimensions of ``O_S(D)``.

    ``method`` is ``"auto"`` (closed form where one applies), ``"closed"``
    (same, never cross-checked) or ``"enum"`` (oracle only).  ``check``
    overrides :func:`checks_enabled` for ``"auto"``.

    >>> h_vector(RuledToricSurface.biruled(5, 3), (1, -1, 2, 1)).h
    (0, 1, 0)
    """
    if method not in ("auto", "closed", "enum"):
        raise InvalidInput(f"unknown method {method!r}")
    D = _canonical(S, D)
    c = _chi_int(S, D)
    if method == "enum":
        flags = () if S.is_biruled or _in_main2_domain(S, D) else ("extrapolated",)
        return HVector(*_oracle(S, D, c), chi=c, method="enumeration", flags=flags, checked=True)
    if check is None:
        check = checks_enabled() and method == "auto"

    if S.is_biruled:
        h = _table1(S, D, c)
        if check:
            o = _oracle(S, D, c)
            if o != h:
                _mismatch(S, D, "sign table", h, o)
        return HVector(*h, chi=c, method="table1", checked=check)

    m2 = main2_closed(S, D)
    if m2 is not None:
        h = (c, 0, 0) if m2.region == 1 else (c + m2.h1, m2.h1, 0)
        if check:
            o = _oracle(S, D, c)
            if o != h:
                _mismatch(S, D, f"region-{m2.region} formula", h, o)
        return HVector(*h, chi=c, method="main2-closed", checked=check)

    return HVector(*_oracle(S, D, c), chi=c, method="enumeration",
                   flags=("extrapolated",), checked=True)


def h0_closed_biruled(S: RuledToricSurface, D: DivisorLike) -> int:
    """``h^0`` on a biruled surface: binomials minus two corner triangles.

    The triangles are counted as monomials of weighted degree ``qa - beta - 1``
    on ``P(d, 1, q)`` and ``pa - alpha - 1`` on ``P(d, 1, p)``.
    """
    if not S.is_biruled:
        raise InvalidInput("h0_closed_biruled needs r = 0")
    a, b, al, be = _canonical(S, D)
    d, p, q = S.d, S.p, S.q
    if a < 0 or b < -1 or (b == -1 and al + be < d):
        return 0
    t_beta = wp2_lattice_count((d, 1, q), q * a - be - 1) if q > 0 else 0
    t_alpha = wp2_lattice_count((d, 1, p), p * a - al - 1)
    return comb(a + b + 2, 2) - comb(b + 1, 2) - t_beta - t_alpha


class Main2Result(NamedTuple):
    region: int
    h1: int
    wp2_count: Optional[int] = None  # #P(d1, d2, r d1 d2)[rho], region 2 only


def _in_main2_domain(S, D) -> bool:
    return S.r > 0 and S.k == 0 and D.a >= 0 and D.b >= -1


def corner_triangle_count(S: RuledToricSurface, D: DivisorLike) -> int:
    """Lattice points ``(u, v) >= 0`` with ``u + v <= a + b`` violating both multiplicity conditions.

    This is the triangle beyond the meeting point of the two lines
    ``q1 u - p1 v = -p1 b - alpha`` and ``q2 u - p2 v = q2 b + beta``.
    """
    a, b, al, be = _canonical(S, D)
    q1, p1, q2, p2 = S.q1, S.p1, S.q2, S.p2
    n = 0
    for u in range(max(a + b + 1, 0)):
        lo = max(0, (q1 * u + p1 * b + al) // p1 + 1)
        hi = min(a + b - u, _ceil_div(q2 * u - q2 * b - be, p2) - 1)
        if hi >= lo:
            n += hi - lo + 1
    return n


def main2_closed(S: RuledToricSurface, D: DivisorLike) -> Optional[Main2Result]:
    """Closed form for uniruled surfaces with ``k = 0``, ``a >= 0``, ``b >= -1``.

    Region 1 (``r a < b + alpha/d1 + beta/d2``) has only ``h^0``.  Otherwise
    ``h^2 = 0`` and ``h^1`` is the number of lattice points in the corner
    triangle of :func:`corner_triangle_count`.

    ``wp2_count`` carries ``#P(d1, d2, r d1 d2)[rho]`` with
    ``rho = r d1 d2 a - d1 d2 b - d1 beta - d2 alpha``.  It is not ``h^1``: the
    corner triangle corresponds to degree ``rho - d1 - d2`` on that plane, and
    only when the lattice index is one and ``b >= 0``.  Already ``D = 0`` on
    ``S(2, 3, 1, 2, 1/6)`` has ``rho = 0`` and ``wp2_count = 1 != h^1 = 0``.

    Returns ``None`` outside the domain.
    """
    D = _canonical(S, D)
    if not _in_main2_domain(S, D):
        return None
    a, b, al, be = D
    d1, d2, R = S.d1, S.d2, S.rd1d2
    rho = R * a - d1 * d2 * b - d1 * be - d2 * al
    if rho < 0:
        return Main2Result(1, 0)
    return Main2Result(2, corner_triangle_count(S, D), wp2_lattice_count((d1, d2, R), rho))


class H02Report(NamedTuple):
    status: str  # "match" or "mismatch"
    predicted: int
    enumerated: int


def h02_diagnostic(S: RuledToricSurface, D: DivisorLike) -> Optional[H02Report]:
    """Compare a two-cone lattice formula for ``h^0`` with the enumeration.

    Applies to uniruled surfaces with ``k > 0`` and ``a`` beyond the point
    where the two multiplicity lines meet.  The slope of the first line is
    governed by ``c = p1 - d1 > 0``; the prediction is::

        #P(1, p1, c)[b p1 + alpha] - #P(c, q2, r d1 d2)[q2 d1 b + q2 alpha - c beta] - C(b+1, 2)

    Never raises on disagreement; the report carries both numbers.
    """
    D = _canonical(S, D)
    a, b, al, be = D
    if S.r == 0 or S.k == 0 or b < -1:
        return None
    d1, d2, R = S.d1, S.d2, S.rd1d2
    s = b + Fraction(al, d1) + Fraction(be, d2)
    c = S.p1 - d1
    if c <= 0 or s < 0 or a * S.r < s or c * a < d1 * b + al:
        return None
    first = wp2_lattice_count((1, S.p1, c), b * S.p1 + al)
    second = wp2_lattice_count((c, S.q2, R), S.q2 * d1 * b + S.q2 * al - c * be) if S.q2 > 0 else 0
    predicted = first - second - comb(b + 1, 2)
    enumerated = h0_enum(S, D)
    return H02Report("match" if predicted == enumerated else "mismatch", predicted, enumerated)
