import pytest
from hypothesis import assume, given, settings, strategies as st

from corpus import covers, mixed_covers, uniruled_covers
from toricoh import (DivisorClass, InvalidInput, RuledToricSurface, betti1, canonical_form,
                     charpoly_factorization_check, eigensheaf, eigenvalue_multiset, example_cover,
                     h1_Lk, h_vector, new_covering, splitting)
from toricoh.coverings import (cover_report, discrepancy_flags, eigensheaf_table, format_charpoly,
                               h1_closed, h1_spectrum)

S12 = RuledToricSurface.biruled(12, 1)


def test_example_family_is_valid():
    for i in range(12):
        cov = new_covering(S12, [(1, (0, 1, 0, 0))], (0, 0, 1 + i, -i), 12)
        assert cov.H_torsion_index == i % 12
    assert new_covering(RuledToricSurface.biruled(5, 1), [(1, (0, 1, 0, 0))], (0, 0, 3, -2), 5).n == 5


def test_rejects_wrong_H():
    with pytest.raises(InvalidInput, match="non-torsion"):
        new_covering(S12, [(1, (0, 1, 0, 0))], (0, 1, 1, 0), 12)
    S4 = RuledToricSurface.biruled(4, 1)
    with pytest.raises(InvalidInput, match="torsion class"):
        new_covering(S4, [(1, (0, 1, 0, 0))], (0, 0, 1, 1), 2)


@pytest.mark.parametrize("comps,H,n,what", [
    ([(1, (0, 1, 0, 0))], (0, 0, 1, 0), 1, "degree"),
    ([], (0, 0, 0, 0), 2, "component"),
    ([(0, (0, 1, 0, 0))], (0, 0, 0, 0), 2, "multiplicity"),
    ([(1, (-1, 0, 0, 0)), (1, (1, 0, 0, 0))], (0, 0, 0, 0), 2, "effectivity"),
])
def test_rejects_bad_data(comps, H, n, what):
    with pytest.raises(InvalidInput, match=what):
        new_covering(S12, comps, H, n)


def test_eigensheaf_examples():
    cov2 = example_cover(12, 2)
    assert eigensheaf(cov2, 0) == (DivisorClass(0, 0, 0, 0), (0, 0, 0))
    assert eigensheaf(cov2, 5) == (DivisorClass(0, -2, 9, 10), (0, -15, 10))
    cov0 = example_cover(12, 0)
    for k in range(12):
        assert eigensheaf(cov0, k)[1] == (0, -k, 0)
    with pytest.raises(InvalidInput):
        eigensheaf(cov0, 12)


def test_h1_examples():
    assert h1_Lk(example_cover(12, 2), 5) == 1
    assert all(h1_Lk(example_cover(12, 0), k) == 0 for k in range(12))
    assert h1_Lk(example_cover(5, 2), 2) == 1
    assert h1_Lk(example_cover(12, 1), 7) == 1


def test_second_branch_example():
    S = RuledToricSurface.biruled(5, 3)
    assert h1_closed(S, (-6, 0, 0)) == 1
    hv = h_vector(S, (-6, 0, 0, 0))
    assert (hv.h1, hv.chi) == (1, -1)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 9), st.integers(0, 8), st.integers(-30, 0), st.integers(-40, 40),
       st.integers(-40, 0), st.integers(-4, 4))
def test_closed_h1_matches_cohomology(d, p, u, v, s, t):
    assume(d == 1 or __import__("math").gcd(p % d, d) == 1)
    S = RuledToricSurface.biruled(d, p % d if d > 1 else 0)
    w = s - v
    h = h1_closed(S, (u, v, w))
    assert h == h1_closed(S, (u, v + t * d, w - t * d))
    assert h == h_vector(S, (u, 0, v, w)).h1
    assert h == h_vector(S, (u, t, v - t * d, w)).h1


def test_betti_numbers_of_example_family():
    b = [betti1(example_cover(12, i)) for i in range(12)]
    assert (b[0], b[2], b[3], b[4], b[5]) == (0, 8, 6, 8, 6)
    assert b[1] == 10
    assert all(b[i] == b[11 - i] for i in range(12))
    assert [betti1(example_cover(5, i)) for i in range(3)] == [0, 4, 4]


def test_eigenvalues():
    assert eigenvalue_multiset(example_cover(12, 3)) == {j: 1 for j in (1, 2, 5, 7, 10, 11)}
    assert eigenvalue_multiset(example_cover(12, 0)) == {}


@pytest.mark.parametrize("cov", covers(), ids=lambda c: f"{c.surface}-n{c.n}-H{list(c.H)}")
def test_cover_invariants(cov):
    table = eigensheaf_table(cov)
    assert table[0].L == DivisorClass(0, 0, 0, 0) and table[0].h1 == 0
    mult = eigenvalue_multiset(cov)
    assert sum(mult.values()) == betti1(cov) and betti1(cov) % 2 == 0
    assert all(mult.get((cov.n - j) % cov.n) == m for j, m in mult.items())
    if cov.surface.is_biruled:
        assert all(r.uvw[0] <= 0 and r.uvw[1] + r.uvw[2] <= 0 for r in table)
    for r in table:
        assert r.h1 == h_vector(cov.surface, r.L).h1
    assert charpoly_factorization_check(cov)


def test_splitting_examples():
    sp = splitting(example_cover(12, 4))
    assert (sp.n1, sp.n2, sp.I1, sp.I2) == (12, 1, (), (0,))
    S = RuledToricSurface.biruled(6, 1)
    sp = splitting(new_covering(S, [(4, (3, 0, 0, 0)), (6, (2, 0, 0, 0))], (2, 0, 0, 0), 12))
    assert (sp.n1, sp.n2, sp.I1, sp.I2) == (2, 12, (0, 1), ())
    sp = splitting(new_covering(S, [(3, (1, 0, 0, 0))], (1, 0, 0, 0), 3))
    assert (sp.n1, sp.n2) == (3, 3)
    assert sp.cover1.H == DivisorClass(1, 0, 0, 0)


def test_subcover_H_is_scaled():
    sp = splitting(example_cover(12, 3))
    assert sp.cover2.n == 1 and sp.cover2.H == 12 * example_cover(12, 3).H


def test_per_k_spectra_distinguish_five_sheet_covers():
    assert h1_spectrum(example_cover(5, 1)) == {3: 1, 4: 1}
    assert h1_spectrum(example_cover(5, 2)) == {2: 1, 4: 1}
    assert eigenvalue_multiset(example_cover(5, 1)) == eigenvalue_multiset(example_cover(5, 2))


def test_discrepancy_flag_only_on_one_cell():
    flagged = {(d, i): discrepancy_flags(example_cover(d, i)) for d, n in ((12, 12), (5, 5)) for i in range(n)}
    assert flagged.pop((12, 1)) == ["documented-discrepancy: k=7 tabulated 0, computed 1"]
    assert not any(flagged.values())
    assert not discrepancy_flags(mixed_covers()[0])


def test_uniruled_cover_is_experimental():
    cov = uniruled_covers()[0]
    assert cov.flags == ("experimental",)
    assert "experimental" in cover_report(cov)["flags"]


def test_format_charpoly():
    assert format_charpoly({}, 5) == "1"
    assert format_charpoly({0: 1, 2: 3, 3: 1}, 5) == "(t - 1) (t - z5^2)^3 (t - z5^3)"


def test_report_layout():
    rep = cover_report(example_cover(12, 2))
    assert rep["betti1"] == 8 and rep["h1_total"] == 4
    assert rep["splitting"] == {"n1": 12, "n2": 1, "I1": [], "I2": [0]}
    assert rep["table"][5] == {"k": 5, "L": [0, -2, 9, 10], "uvw": [0, -15, 10], "h1": 1}


@st.composite
def random_covers(draw):
    d = draw(st.integers(1, 6))
    p = draw(st.sampled_from([p for p in range(d) if __import__("math").gcd(p, d) == 1]))
    S = RuledToricSurface.biruled(d, p)
    n = draw(st.integers(2, 9))
    H = draw(st.tuples(st.integers(0, 3), st.integers(-2, 2), st.integers(-d, 2 * d), st.integers(-d, 2 * d)))
    comps = []
    for _ in range(draw(st.integers(0, 2))):
        m = draw(st.integers(1, n))
        D = draw(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2 * d), st.integers(0, 2 * d)))
        comps.append((m, D))
    rest = DivisorClass(*H) * n
    for m, D in comps:
        rest = rest - m * DivisorClass(*D)
    assume(rest.a >= 0 and rest.alpha + rest.beta + rest.b * S.d1 >= 0)
    comps.append((1, tuple(rest)))
    return new_covering(S, comps, H, n)


@settings(max_examples=60, deadline=None)
@given(random_covers())
def test_random_covers(cov):
    table = eigensheaf_table(cov)
    assert all(r.uvw[0] <= 0 and r.uvw[1] + r.uvw[2] <= 0 for r in table)
    assert charpoly_factorization_check(cov)
    assert canonical_form(cov.surface, cov.branch_divisor) == canonical_form(cov.surface, cov.n * cov.H)
