"""Walk through a biruled and a uniruled surface.

Run with ``python3 demos/surfaces_and_cohomology.py``.
"""

from toricoh import RuledToricSurface, chi, delta, h_vector, new_surface, torsion_index
from toricoh.cohomology import main2_closed

# Local correction terms at a point of type 1/5(1,3).
print("delta(5,3,k):", [str(delta(5, 3, k)) for k in range(5)])

S = RuledToricSurface.biruled(5, 3)
print(S, "K =", S.K.as_list(), "singular points:", S.singular_points)

# The three classes around a wall of the sign table: each has one non-zero h^i.
for D in [(1, -1, 3, 2), (1, -1, 3, 1), (1, -1, 2, 1)]:
    hv = h_vector(S, D)
    print(f"  D = {D}: h = {hv.h}, chi = {hv.chi}")

# E_X - E_Y is numerically trivial but not trivial: chi sees the difference.
T = (0, 0, 1, -1)
print("  chi(O) =", chi(S, (0, 0, 0, 0)), " chi(O(T)) =", chi(S, T), " torsion index", torsion_index(S, T))

U = new_surface(2, 3, 1, 2, "1/6")
print(U, "k =", U.k)
for D in [(0, 0, 0, 0), (3, 0, 1, 2), (4, -1, 0, 0)]:
    hv = h_vector(U, D)
    m = main2_closed(U, D)
    print(f"  D = {D}: h = {hv.h}, region {m.region}")
