import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import toricoh.cohomology as coh
from corpus import SURFACES, biruled_all, k0_uniruled
from toricoh import (DivisorClass, InternalInconsistency, RuledToricSurface, canonical_cycle,
                     canonical_form, chi, delta, h0_closed_biruled, h0_enum, h02_diagnostic,
                     h2_via_duality, h_vector, intersect, main2_closed, new_surface)
from toricoh.singularities import wp2_lattice_count

S53 = RuledToricSurface.biruled(5, 3)


def brute_h0(S, D):
    """Monomials X^u Y^v over a generous box, straight from the multiplicity conditions."""
    a, b, al, be = canonical_form(S, D)
    n = 0
    for u in range(-5, a + b + 6):
        for v in range(-5, a + b + 6):
            if (u >= 0 and v >= 0 and b <= u + v <= a + b
                    and (S.d1 - S.p1) * u - S.p1 * v >= -S.p1 * b - al
                    and S.q2 * u - S.p2 * v <= S.q2 * b + be):
                n += 1
    return n


@pytest.mark.parametrize("S", SURFACES, ids=str)
def test_chi_is_riemann_roch(S):
    ZK = canonical_cycle(S)
    for D in [(0, 0, 0, 0), (1, 0, 0, 0), (2, -1, 1, 0), (-3, 2, 0, S.d2 - 1), (4, 3, S.d1 - 1, 1)]:
        a, b, al, be = canonical_form(S, D)
        local = (delta(S.d1, S.q1, -al - a * S.q1) + delta(S.d2, S.p2, -be - a * S.p2)
                 + delta(S.d1, S.p1, -al) + delta(S.d2, S.q2, -be))
        Dq = DivisorClass(a, b, al, be)
        assert chi(S, D) == 1 + intersect(S, Dq, ZK) / 2 + intersect(S, Dq, Dq) / 2 - local


@pytest.mark.parametrize("S", SURFACES, ids=str)
def test_chi_integral(S):
    for a in range(-3, 4):
        for b in range(-2, 3):
            for al in range(S.d1):
                for be in range(S.d2):
                    assert chi(S, (a, b, al, be)).denominator == 1


def test_torsion_changes_chi():
    for S in biruled_all(9):
        if S.d > 1:
            assert chi(S, (0, 0, 1, -1)) == 0
            assert chi(S, (0, 0, 0, 0)) == 1


def test_remark_triple():
    D1, D2, D3 = (1, -1, 3, 2), (1, -1, 3, 1), (1, -1, 2, 1)
    assert [h_vector(S53, D).h for D in (D1, D2, D3)] == [(1, 0, 0), (0, 0, 0), (0, 1, 0)]
    assert [chi(S53, D) for D in (D1, D2, D3)] == [1, 0, -1]
    assert h2_via_duality(S53, D1) == 0


def test_trivial_values():
    for S in SURFACES:
        assert h_vector(S, (0, 0, 0, 0)).h == (1, 0, 0)
        assert h2_via_duality(S, S.K) == 1
        assert h2_via_duality(S, (0, 0, 0, 0)) == 0


def test_biruled_twelve_example():
    S = RuledToricSurface.biruled(12, 1)
    hv = h_vector(S, (0, 0, -14, 7))
    assert canonical_form(S, (0, 0, -14, 7)) == DivisorClass(0, -2, 10, 7)
    assert (hv.h, hv.chi, hv.method) == ((0, 1, 0), -1, "table1")


def test_figure_count():
    S = RuledToricSurface.biruled(9, 5)
    D = (6, 3, 2, 6)
    assert h0_enum(S, D) == h0_closed_biruled(S, D) == brute_h0(S, D) == 28


def test_hirzebruch_sanity():
    S = new_surface(1, 1, 0, 0, 1)
    cases = {(1, 0, 0, 0): (1, 0, 0), (0, 1, 0, 0): (2, 0, 0), (1, 1, 0, 0): (3, 0, 0),
             (1, 2, 0, 0): (5, 0, 0), tuple(S.K): (0, 0, 1)}
    for D, h in cases.items():
        assert h_vector(S, D).h == h


def test_monomials_listing():
    S = RuledToricSurface.biruled(9, 5)
    mons = list(coh.h0_monomials(S, (6, 3, 2, 6)))
    assert len(mons) == 28 and len(set(mons)) == 28


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SURFACES), st.integers(-6, 6), st.integers(-6, 6), st.integers(0, 40), st.integers(0, 40))
def test_enumeration_matches_brute_force(S, a, b, al, be):
    assert h0_enum(S, (a, b, al, be)) == brute_h0(S, (a, b, al, be))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SURFACES), st.integers(-6, 6), st.integers(-6, 6), st.integers(-30, 30), st.integers(-30, 30))
def test_euler_consistency(S, a, b, al, be):
    hv = h_vector(S, (a, b, al, be))
    assert hv.h0 - hv.h1 + hv.h2 == hv.chi
    assert h_vector(S, (a, b, al, be), method="enum").h == hv.h


@pytest.mark.parametrize("S", list(biruled_all(7)), ids=str)
def test_vanishing_and_closed_h0(S):
    d, q = S.d, S.q
    for a in range(-4, 6):
        for b in range(-4, 5):
            for al in range(d):
                for be in range(d):
                    D = (a, b, al, be)
                    h0 = h0_enum(S, D)
                    if a <= -1 or b <= -2 or (b == -1 and al + be < d):
                        assert h0 == 0
                    assert h0_closed_biruled(S, D) == h0
                    if a >= 0 and b >= -1 and q > 0:
                        tb = sum(1 for u in range(a + b + 1) for v in range(a + b + 1 - u)
                                 if q * u - S.p * v > q * b + be)
                        assert tb == wp2_lattice_count((d, 1, q), q * a - be - 1)


def test_closed_h0_needs_biruled():
    with pytest.raises(Exception):
        h0_closed_biruled(new_surface(1, 1, 0, 0, 1), (0, 0, 0, 0))


def test_sign_table_mismatch_raises(monkeypatch):
    # wrong but Euler-consistent fast path
    monkeypatch.setattr(coh, "_table1", lambda S, D, c: (c + 1, 1, 0))
    with pytest.raises(InternalInconsistency):
        h_vector(S53, (1, 0, 0, 1))
    c = chi(S53, (1, 0, 0, 1))
    assert h_vector(S53, (1, 0, 0, 1), check=False).h == (c + 1, 1, 0)


def test_checks_switch(monkeypatch):
    monkeypatch.setenv("TORICOH_CHECKS", "off")
    assert not coh.checks_enabled()
    assert not h_vector(S53, (1, 0, 0, 0)).checked
    monkeypatch.setenv("TORICOH_CHECKS", "strict")
    assert h_vector(S53, (1, 0, 0, 0)).checked


def test_methods_agree():
    S = RuledToricSurface.biruled(7, 3)
    for D in [(2, -3, 1, 4), (-3, 2, 0, 0), (0, -1, 6, 6), (-1, 4, 2, 2)]:
        assert h_vector(S, D, method="closed").h == h_vector(S, D, method="enum").h


UNIRULED_K0 = [S for pair in ((2, 3), (3, 4), (4, 4), (5, 7)) for S in k0_uniruled(*pair)]


@pytest.mark.parametrize("S", UNIRULED_K0, ids=str)
def test_two_regions(S):
    d1, d2 = S.d1, S.d2
    for a in range(0, 6):
        for b in range(-1, 3):
            for al in range(d1):
                for be in range(d2):
                    D = canonical_form(S, (a, b, al, be))
                    m = main2_closed(S, D)
                    hv = h_vector(S, D, method="enum")
                    if S.r * a < b + Fraction(al, d1) + Fraction(be, d2):
                        assert m.region == 1 and hv.h == (hv.chi, 0, 0)
                    else:
                        assert m.region == 2 and hv.h2 == 0 and hv.h1 == m.h1
                        rho = S.rd1d2 * a - d1 * d2 * D.b - d1 * be - d2 * al
                        assert rho >= 0 and m.wp2_count == wp2_lattice_count((d1, d2, S.rd1d2), rho)
                    assert h_vector(S, D).h == hv.h


def test_region_two_weighted_count_differs_from_h1():
    S = new_surface(2, 3, 1, 2, "1/6")
    m = main2_closed(S, (0, 0, 0, 0))
    assert (m.region, m.h1, m.wp2_count) == (2, 0, 1)
    m = main2_closed(S, (4, -1, 0, 0))
    assert (m.region, m.h1, m.wp2_count) == (2, 4, 14)


def test_region_two_shifted_count_when_b_nonnegative():
    for S in k0_uniruled(5, 7):
        if math.gcd(S.rd1d2, S.d1, S.d2) != 1:
            continue
        for a in range(0, 6):
            for b in range(0, 3):
                D = (a, b, 1, 2)
                m = main2_closed(S, D)
                if m.region == 2:
                    rho = S.rd1d2 * a - 35 * b - 5 * 2 - 7 * 1
                    assert m.h1 == wp2_lattice_count((5, 7, S.rd1d2), rho - 12)


def test_main2_domain():
    assert main2_closed(S53, (1, 0, 0, 0)) is None
    assert main2_closed(new_surface(1, 1, 0, 0, 1), (1, 0, 0, 0)) is None
    assert main2_closed(new_surface(2, 3, 1, 2, "1/6"), (-1, 0, 0, 0)) is None


def test_extrapolated_flag():
    hv = h_vector(new_surface(1, 1, 0, 0, 1), (-3, 1, 0, 0))
    assert hv.flags == ("extrapolated",) and hv.method == "enumeration"


def test_h02_diagnostic_reports():
    rep = h02_diagnostic(new_surface(1, 1, 0, 0, 1), (0, 0, 0, 0))
    assert rep.status == "match" and rep.predicted == rep.enumerated == 1
    rep = h02_diagnostic(new_surface(2, 2, 1, 1, 2), (0, 0, 0, 0))
    assert (rep.status, rep.predicted, rep.enumerated) == ("mismatch", 0, 1)
    assert h02_diagnostic(S53, (0, 0, 0, 0)) is None
    assert h02_diagnostic(new_surface(1, 1, 0, 0, 1), (0, -2, 0, 0)) is None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([S for S in SURFACES if S.k > 0 and S.r > 0]),
       st.integers(-3, 10), st.integers(-3, 5), st.integers(0, 12), st.integers(0, 12))
def test_h02_never_raises(S, a, b, al, be):
    rep = h02_diagnostic(S, (a, b, al, be))
    assert rep is None or rep.enumerated == h0_enum(S, (a, b, al, be))
