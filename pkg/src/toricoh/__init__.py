"""Exact sheaf cohomology on rational ruled toric surfaces.

The surfaces ``S(d1, d2, n1, n2, r)`` are P^1-fibrations with two special
fibres carrying cyclic quotient points.  The package computes Riemann-Roch
correction terms, ``h^i(O_S(D))`` for Weil divisors, and the first Betti
number and monodromy spectrum of cyclic covers branched on the surface.
All arithmetic is exact.
"""

__version__ = "0.1.0"

from .arith import floor_div, format_rational, frac_part, gcd_list, mod_inverse, to_rational
from .errors import InternalInconsistency, InvalidInput
from .singularities import (CyclicQuotientType, WeightTriple, delta, delta_general, g_w,
                            normalize_type, wp2_chi, wp2_lattice_count)
from .surface import (DivisorClass, QDivisor, RuledToricSurface, canonical_cycle,
                      canonical_divisor, canonical_form, intersect, linearly_equivalent,
                      new_surface, numerically_equivalent, torsion_index)
from .cohomology import (HVector, chi, h0_closed_biruled, h0_enum, h2_via_duality, h_vector,
                         h02_diagnostic, main2_closed)
from .coverings import (CoveringSpec, betti1, charpoly_factorization_check, eigensheaf,
                        eigenvalue_multiset, example_cover, h1_Lk, new_covering, splitting)

__all__ = [name for name in dir() if not name.startswith("_")]
