"""Eigensheaf tables and first Betti numbers of cyclic covers.

Run with ``python3 demos/cyclic_covers.py``.
"""

from toricoh import betti1, splitting
from toricoh.coverings import cover_report, example_cover, h1_spectrum

for d in (12, 5):
    print(f"{d}-sheeted covers branched along a fibre, H_i = E_X + i(E_X - E_Y)")
    for i in range(6 if d == 12 else 3):
        cov = example_cover(d, i)
        rep = cover_report(cov)
        notes = [f for f in rep["flags"] if f.startswith("documented")]
        print(f"  i={i:2d} b1={betti1(cov):2d} H1(O) spectrum {h1_spectrum(cov)}", *notes)
        print(f"       charpoly {rep['charpoly']}")

sp = splitting(example_cover(12, 2))
print("splitting of the i=2 cover: n1 =", sp.n1, "n2 =", sp.n2, "I1 =", sp.I1, "I2 =", sp.I2)
