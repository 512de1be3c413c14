"""Cyclic branched coverings of rational ruled toric surfaces.

A cover is given by ``(S, D = sum m_i D_i, H, n)`` with ``D ~ nH``.  Since
the Picard group may have torsion, ``H`` is part of the data.  The
``k``-th eigensheaf ``L^(k) = -kH + sum floor(k m_i / n) D_i`` carries the
eigenvalue ``exp(2 pi i k / n)`` of the monodromy, and

    H^1(cover, O) = sum_k H^1(S, O_S(L^(k))),    b_1 = 2 sum_k h^1(L^(k)).

Divisors are also tracked in the three-coordinate form ``uZ + vE_X + wE_Y``
obtained from a four-coordinate representative by writing ``bF = b d1 E_X``.
This form depends on the representative given; only classes and ``h^1``
values are intrinsic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import floor_div, gcd_list, mod_inverse
from .cohomology import h_vector
from .errors import InternalInconsistency, InvalidInput
from .surface import (DivisorClass, DivisorLike, RuledToricSurface, as_divisor,
                      canonical_form, torsion_index)

__all__ = [
    "CoveringSpec",
    "EigensheafRow",
    "Splitting",
    "new_covering",
    "eigensheaf",
    "eigensheaf_table",
    "h1_Lk",
    "h1_closed",
    "betti1",
    "eigenvalue_multiset",
    "h1_spectrum",
    "splitting",
    "charpoly_factorization_check",
    "format_charpoly",
    "example_cover",
    "TABULATED_H1",
    "discrepancy_flags",
    "cover_report",
]

SPLITTING_NOTE = "splitting: v_k + w_k = 0 exactly when n/n2 divides k"


def fold(S: RuledToricSurface, D: DivisorLike) -> Tuple[int, int, int]:
    """Three-coordinate form ``(a, alpha + b d1, beta)`` of a representative."""
    a, b, al, be = as_divisor(D)
    return (a, al + b * S.d1, be)


def _weighted_ze(S, uvw) -> Fraction:
    # intersection with Z of u Z + v E_X + w E_Y, minus the u Z.Z part
    _, v, w = uvw
    return Fraction(v, S.d1) + Fraction(w, S.d2)


@dataclass(frozen=True)
class CoveringSpec:
    surface: RuledToricSurface
    components: Tuple[Tuple[int, DivisorClass], ...]
    H: DivisorClass
    n: int

    @property
    def flags(self) -> Tuple[str, ...]:
        return () if self.surface.is_biruled else ("experimental",)

    @property
    def folded_components(self) -> List[Tuple[int, Tuple[int, int, int]]]:
        return [(m, fold(self.surface, D)) for m, D in self.components]

    @property
    def folded_H(self) -> Tuple[int, int, int]:
        return fold(self.surface, self.H)

    @property
    def branch_divisor(self) -> DivisorClass:
        total = DivisorClass(0, 0, 0, 0)
        for m, D in self.components:
            total = total + m * D
        return canonical_form(self.surface, total)

    @property
    def H_torsion_index(self) -> Optional[int]:
        """Torsion index of ``H - (zZ + e E_X)`` with ``e E_X`` numerically equal to the fibre part of ``H``.

        The branch divisor fixes ``H`` only up to ``n``-torsion, so this is
        the part of the data it does not see.  ``None`` when no integral
        ``e`` exists.
        """
        S = self.surface
        z, v, w = self.folded_H
        # numerically, w E_Y = (w d1 / d2) E_X whenever that is integral
        if (w * S.d1) % S.d2:
            return None
        ref = DivisorClass(z, 0, v + w * S.d1 // S.d2, 0)
        return torsion_index(S, self.H - ref)


def _build(S, components, H, n) -> CoveringSpec:
    comps = []
    for i, item in enumerate(components):
        m, D = item
        if not isinstance(m, int) or m < 1:
            raise InvalidInput(f"multiplicity must be a positive integer, got {m!r}",
                               f"components[{i}].mult")
        comps.append((m, as_divisor(D)))
    cov = CoveringSpec(S, tuple(comps), as_divisor(H), n)
    target = canonical_form(S, n * cov.H)
    if cov.branch_divisor != target:
        diff = canonical_form(S, cov.branch_divisor - n * cov.H)
        t = torsion_index(S, diff)
        kind = (f"differs by the torsion class {t}T" if t is not None
                else f"differs by the non-torsion class {diff}")
        raise InvalidInput(f"sum m_i D_i = {cov.branch_divisor} is not equivalent to "
                           f"{n}H = {target}; it {kind}", "H")
    for i, (m, uvw) in enumerate(cov.folded_components):
        if uvw[0] < 0 or uvw[1] + uvw[2] < 0:
            raise InvalidInput(f"component {uvw} fails the effectivity test "
                               "a >= 0 and alpha + beta >= 0", f"components[{i}].class")
    _check_identities(cov)
    return cov


def _check_identities(cov: CoveringSpec):
    S, n = cov.surface, cov.n
    z, ex, ey = cov.folded_H
    if sum(m * uvw[0] for m, uvw in cov.folded_components) != n * z:
        raise InternalInconsistency("sum m_i a_i != n z for a valid cover")
    lhs = sum(m * _weighted_ze(S, uvw) for m, uvw in cov.folded_components)
    if lhs != n * _weighted_ze(S, (z, ex, ey)):
        raise InternalInconsistency("sum m_i (alpha_i/d1 + beta_i/d2) != n (e_x/d1 + e_y/d2)")


def new_covering(S: RuledToricSurface, components: Sequence[Tuple[int, DivisorLike]],
                 H: DivisorLike, n: int) -> CoveringSpec:
    """Validate covering data; ``components`` is a list of ``(m_i, D_i)``.

    >>> S = RuledToricSurface.biruled(12, 1)
    >>> new_covering(S, [(1, (0, 1, 0, 0))], (0, 0, 3, -2), 12).n
    12
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidInput(f"covering degree must be an integer >= 2, got {n!r}", "n")
    if not components:
        raise InvalidInput("at least one branch component is required", "components")
    return _build(S, components, H, n)


def eigensheaf(cov: CoveringSpec, k: int) -> Tuple[DivisorClass, Tuple[int, int, int]]:
    """Canonical class of ``L^(k)`` and its coordinates ``(u_k, v_k, w_k)``."""
    if not 0 <= k < cov.n:
        raise InvalidInput(f"k must lie in [0, {cov.n}), got {k}")
    z, ex, ey = cov.folded_H
    u, v, w = -k * z, -k * ex, -k * ey
    for m, (a, al, be) in cov.folded_components:
        c = (k * m) // cov.n
        u, v, w = u + c * a, v + c * al, w + c * be
    return canonical_form(cov.surface, (u, 0, v, w)), (u, v, w)


def h1_closed(S: RuledToricSurface, uvw: Tuple[int, int, int]) -> int:
    """``h^1`` of ``uZ + vE_X + wE_Y`` on a biruled surface, with ``u <= 0``, ``v + w <= 0``."""
    u, v, w = uvw
    d = S.d
    if u == 0 and v + w <= -2:
        return -1 - floor_div(v, d) - floor_div(w, d)
    if v + w == 0 and u <= -2:
        pinv = mod_inverse(S.p, d) if d > 1 else 1
        return -1 - floor_div(u - v * pinv, d) - floor_div(v * pinv, d)
    return 0


def h1_Lk(cov: CoveringSpec, k: int, check: Optional[bool] = None) -> int:
    """``h^1(S, O_S(L^(k)))``.

    Biruled surfaces use the closed formula in ``(u_k, v_k, w_k)``, compared
    with the full cohomology computation unless ``check`` is false.  Other
    surfaces go through :func:`~toricoh.cohomology.h_vector`.
    """
    L, uvw = eigensheaf(cov, k)
    S = cov.surface
    if not S.is_biruled:
        return h_vector(S, L).h1
    if uvw[0] > 0 or uvw[1] + uvw[2] > 0:
        raise InternalInconsistency(f"eigensheaf coordinates {uvw} violate u <= 0, v + w <= 0")
    value = h1_closed(S, uvw)
    if check is None or check:
        other = h_vector(S, L, check=check).h1
        if other != value:
            raise InternalInconsistency(
                f"h1(L^({k})) closed form {value} != cohomology {other} for {uvw} on {S}")
    return value


@dataclass(frozen=True)
class EigensheafRow:
    k: int
    L: DivisorClass
    uvw: Tuple[int, int, int]
    h1: int


def eigensheaf_table(cov: CoveringSpec, check: Optional[bool] = None) -> List[EigensheafRow]:
    rows = []
    for k in range(cov.n):
        L, uvw = eigensheaf(cov, k)
        rows.append(EigensheafRow(k, L, uvw, h1_Lk(cov, k, check=check)))
    return rows


def h1_spectrum(cov: CoveringSpec) -> Dict[int, int]:
    """``{k: h^1(L^(k))}`` for the non-zero entries: the spectrum on ``H^1(O)``."""
    return {row.k: row.h1 for row in eigensheaf_table(cov) if row.h1}


def betti1(cov: CoveringSpec) -> int:
    return 2 * sum(h1_spectrum(cov).values())


def _symmetrize(spec: Dict[int, int], n: int) -> Dict[int, int]:
    out: Counter = Counter()
    for k, h in spec.items():
        out[k] += h
        out[(n - k) % n] += h
    return dict(sorted(out.items()))


def eigenvalue_multiset(cov: CoveringSpec) -> Dict[int, int]:
    """Multiplicity of ``exp(2 pi i j / n)`` on ``H^1(cover, C)``, keyed by ``j``."""
    return _symmetrize(h1_spectrum(cov), cov.n)


@dataclass(frozen=True)
class Splitting:
    n1: int
    n2: int
    I1: Tuple[int, ...]
    I2: Tuple[int, ...]
    cover1: CoveringSpec
    cover2: CoveringSpec


def splitting(cov: CoveringSpec) -> Splitting:
    """Split by components meeting the fibre (``I1``) and the section (``I2``).

    ``n_j = gcd(n, m_i : i in I_j)`` with ``n_j = n`` for empty ``I_j``; the
    sub-cover ``j`` has ``n_j`` sheets, the same branch divisor and
    ``H_j = (n / n_j) H``.
    """
    folded = cov.folded_components
    I1 = tuple(i for i, (_, uvw) in enumerate(folded) if uvw[0] != 0)
    I2 = tuple(i for i, (_, uvw) in enumerate(folded) if uvw[1] + uvw[2] != 0)
    ns = []
    for idx in (I1, I2):
        ns.append(math.gcd(cov.n, gcd_list(cov.components[i][0] for i in idx)))
    subs = tuple(_build(cov.surface, cov.components, (cov.n // nj) * cov.H, nj) for nj in ns)
    return Splitting(ns[0], ns[1], I1, I2, *subs)


def charpoly_factorization_check(cov: CoveringSpec) -> bool:
    """Is the ``H^1(O)`` spectrum the union of those of the two sub-covers?"""
    split = splitting(cov)
    union: Counter = Counter()
    for sub in (split.cover1, split.cover2):
        for kj, h in h1_spectrum(sub).items():
            union[kj * cov.n // sub.n] += h
    whole = h1_spectrum(cov)
    return dict(union) == whole and _symmetrize(dict(union), cov.n) == eigenvalue_multiset(cov)


def format_charpoly(mult: Dict[int, int], n: int) -> str:
    """Product string ``(t - z^j)^m ...`` with ``z = exp(2 pi i / n)``."""
    if not mult:
        return "1"
    parts = []
    for j, m in sorted(mult.items()):
        base = "(t - 1)" if j == 0 else f"(t - z{n}^{j})"
        parts.append(base if m == 1 else f"{base}^{m}")
    return " ".join(parts)


def example_cover(d: int, i: int) -> CoveringSpec:
    """``n = d`` sheets over the biruled ``(d, 1)`` surface branched along ``F``, ``H = E_X + i(E_X - E_Y)``."""
    S = RuledToricSurface.biruled(d, 1)
    return new_covering(S, [(1, (0, 1, 0, 0))], (0, 0, 1 + i, -i), d)


# Tabulated h^1(L^(k)) for the example families, k = 0..d-1.  The (12, 1)
# row lists 0 at k = 7 although -1 - floor(-14/12) - floor(7/12) = 1.
TABULATED_H1 = {
    (12, 0): (0,) * 12,
    (12, 1): (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
    (12, 2): (0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1),
    (12, 3): (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1),
    (12, 4): (0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1),
    (12, 5): (0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1),
    (5, 0): (0, 0, 0, 0, 0),
    (5, 1): (0, 0, 0, 1, 1),
    (5, 2): (0, 0, 1, 0, 1),
}


def _same_cover(a: CoveringSpec, b: CoveringSpec) -> bool:
    S = a.surface
    canon = lambda cov: sorted((m, tuple(canonical_form(S, D))) for m, D in cov.components)
    return (S == b.surface and a.n == b.n and canon(a) == canon(b)
            and canonical_form(S, a.H) == canonical_form(S, b.H))


def discrepancy_flags(cov: CoveringSpec, table: Optional[List[EigensheafRow]] = None) -> List[str]:
    """Flags for cells where a tabulated example disagrees with the computed ``h^1``."""
    flags = []
    for (d, i), row in TABULATED_H1.items():
        if cov.n != d or not cov.surface.is_biruled or cov.surface.d1 != d:
            continue
        if not _same_cover(cov, example_cover(d, i)):
            continue
        table = table or eigensheaf_table(cov)
        for r in table:
            if r.h1 != row[r.k]:
                flags.append(f"documented-discrepancy: k={r.k} tabulated {row[r.k]}, computed {r.h1}")
    return flags


def cover_report(cov: CoveringSpec, check: Optional[bool] = None) -> dict:
    """Everything computed about a cover, in a JSON-friendly layout."""
    table = eigensheaf_table(cov, check=check)
    spectrum = {r.k: r.h1 for r in table if r.h1}
    mult = _symmetrize(spectrum, cov.n)
    split = splitting(cov)
    flags = list(cov.flags) + discrepancy_flags(cov, table) + [SPLITTING_NOTE]
    return {
        "table": [{"k": r.k, "L": r.L.as_list(), "uvw": list(r.uvw), "h1": r.h1} for r in table],
        "h1_total": sum(spectrum.values()),
        "betti1": 2 * sum(spectrum.values()),
        "eigenvalues": {str(j): m for j, m in mult.items()},
        "charpoly": format_charpoly(mult, cov.n),
        "splitting": {"n1": split.n1, "n2": split.n2,
                      "I1": list(split.I1), "I2": list(split.I2)},
        "factorization_check": charpoly_factorization_check(cov),
        "H_torsion_index": cov.H_torsion_index,
        "flags": flags,
    }
