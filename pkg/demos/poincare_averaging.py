"""
Averaging over a group: coset sums, the slash action, and period series
=======================================================================

Invariant functions can be manufactured by summing a seed function over
group cosets, provided the seed already has the right invariance under
the stabilizer and the sum converges. The weight-k factor of automorphy
controls everything; its cocycle identity is what makes the slash an
action.
"""

import numpy as np

from periodlab import (
    Lattice,
    classical_factor,
    cocycle_check,
    eisenstein_lattice,
    enumerate_cosets_sl2,
    mean_value_diagnostic,
    period_matrix,
    period_poincare,
    poincare_series_uhp,
    slash,
)

ZETA4 = np.pi ** 4 / 90

# cocycle identity, checked on random group elements and points
print("classical factor satisfies the cocycle law:",
      cocycle_check(classical_factor, samples=100))

# the slash composes because the cocycle holds
f = lambda z: 1.0 / (z + 5j)
A = np.array([[1, 1], [0, 1]])
B = np.array([[0, 1], [-1, 0]])
z = 0.3 + 0.9j
lhs = slash(slash(f, 4, A), 4, B)(z)
rhs = slash(f, 4, A @ B)(z)
print("slash composition residual:", abs(lhs - rhs))

# coset families under the triangular stabilizer, indexed by coprime pairs
fam = enumerate_cosets_sl2("upper", height=3)
print("\ncoset representatives up to height 3:", len(fam.representatives))
fam.check_pairwise(lambda m: m[1, 0] == 0)
print("pairwise distinctness verified")

# summing j(tau, A)^{-4} over cosets rebuilds the weight-4 lattice sum
tau = 0.3 + 1.1j
rep = poincare_series_uhp(lambda w: 1.0, 4, 200, tau)
direct = eisenstein_lattice(4, Lattice.from_tau(tau))
print("\nweight-4 series, height 200:", rep.value)
print("converged:", rep.converged, " tail estimate:", rep.tail_estimate)
print("2 zeta(4) * series vs lattice sum:", abs(2 * ZETA4 * rep.value - direct))

# the same averaging applied to a functional of period matrices
pm = period_matrix((4.0, 1.0))
series = period_poincare(lambda x: x[0, 0] ** (-4), pm,
                         stabilizer="lower", height=120)
e4 = eisenstein_lattice(4, Lattice(*pm.lattice_basis()))
print("\nperiod functional series:", series.value)
print("ratio to E_4 of the period lattice:", series.value / e4,
      " (expected 1/(2 zeta(4)) =", 1 / (2 * ZETA4), ")")

# determinant is invariant under the whole group: one coset, exact value
det_series = period_poincare(np.linalg.det, pm, stabilizer="full")
print("det functional:", det_series.value, " = sigma * 2 pi i")

# a quick holomorphy diagnostic: |f|^2 never beats its disk average
diag = mean_value_diagnostic(lambda w: poincare_series_uhp(
    lambda u: 1.0, 4, 30, w).value, tau, 0.15, grid=12)
print("\nsub-mean-value check: center", f"{diag.lhs:.6f}",
      "<= average", f"{diag.rhs:.6f}", "->", diag.sub_mean)
