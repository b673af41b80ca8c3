"""
Periods of a cubic family and the round trip back to its coefficients
=====================================================================

A point t = (t2, t3) with t2^3 - 27 t3^2 != 0 determines the smooth curve
y^2 = 4x^3 - t2 x - t3. Integrating dx/y and x dx/y over two independent
cycles gives the 2x2 period matrix. This script walks the full circle:
coefficients -> periods -> lattice -> Eisenstein sums -> coefficients.
"""

import numpy as np

from periodlab import (
    SIGMA,
    Lattice,
    discriminant,
    j_normalized,
    period_map_tau,
    period_matrix,
    weierstrass_g,
)

t = (4.0 + 1.0j, 2.0)
print("parameter point t =", t)
print("discriminant     =", discriminant(t))

# The matrix: rows are cycles, columns the two differentials. Its
# determinant is pinned to sigma * 2 pi i independently of t; that is
# the first thing worth checking at any new point.
pm = period_matrix(t)
print("\nperiod matrix:\n", pm.entries)
print("det       =", pm.det)
print("|det - sigma*2pi*i| =", abs(pm.det - SIGMA * 2j * np.pi))

# The ratio of the first-column periods lives in the upper half-plane;
# it is the point's image under the period map.
tau = period_map_tau(t)
print("\ntau =", tau, " (Im > 0:", tau.imag > 0, ")")

# Going back: the first column spans the period lattice, and weighted
# lattice sums recover the coefficients we started from.
lat = Lattice(*pm.lattice_basis())
g4, g6 = weierstrass_g(lat)
print("\nrecovered (g4, g6) =", (g4, g6))
print("round-trip error   =", max(abs(g4 - t[0]), abs(g6 - t[1])))

# The same statement, one level down: j of tau equals the rational
# invariant t2^3 / Delta, with no reference to the lattice at all.
lhs = j_normalized(tau)
rhs = t[0] ** 3 / discriminant(t)
print("\nj(tau)        =", lhs)
print("t2^3 / Delta  =", rhs)
print("agreement     =", abs(lhs - rhs))
