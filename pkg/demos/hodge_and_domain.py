"""
Polarized Hodge structures and the geometry of their classifying spaces
=======================================================================

A filtration on a lattice's complexification is a polarized Hodge
structure when two bilinear conditions hold; the second is an open
positivity condition and fails on the "wrong" half of parameter space.
The classifying space of such structures is a homogeneous domain whose
dimensions come out of plain linear algebra on the Lie algebra.
"""

import numpy as np

from periodlab import (
    HodgeType,
    base_point,
    classify_hermitian,
    decomposition_from_filtration,
    domain_dims,
    elliptic_hs,
    kodaira_spencer_count,
    verify_polarization,
    weil_operator,
)

# --- the elliptic dichotomy ----------------------------------------------
tau = 0.3 + 1.1j
for point in (tau, tau.conjugate()):
    _, filt = elliptic_hs(point)
    report = verify_polarization(decomposition_from_filtration(filt))
    print(f"tau = {point}: first relation {report.first}, "
          f"second {report.second}, min positivity {report.min_positivity:+.3f}")

# The positivity clause is exactly what the Weil operator makes visible:
# psi(x, C conj(y)) is positive definite on the good half.
_, filt = elliptic_hs(tau)
dec = decomposition_from_filtration(filt)
C = weil_operator(dec)
print("\nWeil operator squares to -1 in odd weight:",
      np.allclose(C @ C, -np.eye(2)))

# --- domain dimensions -----------------------------------------------------
print("\nprincipally polarized weight-1 domains (abelian-variety moduli):")
for g in (1, 2, 3, 4):
    psi = np.block([
        [np.zeros((g, g), dtype=int), np.eye(g, dtype=int)],
        [-np.eye(g, dtype=int), np.zeros((g, g), dtype=int)],
    ])
    report = domain_dims(HodgeType(1, (g, g), psi))
    print(f"  g={g}: dim {report.dim_D}  horizontal {report.dim_horizontal}  "
          f"case {report.hermitian_case.value}")

print("\nweight 2, h = (1, k, 1):")
for k in (1, 2, 3):
    phi = HodgeType(2, (1, k, 1), np.diag([1] * k + [-1, -1]).astype(np.int64))
    report = domain_dims(phi)
    print(f"  k={k}: dim {report.dim_D}  case {report.hermitian_case.value}")

# Weight 3 with all Hodge numbers 1: the horizontal subspace is a proper
# slice of the tangent space, the signature of non-classical domains.
phi3 = HodgeType(3, (1, 1, 1, 1),
                 np.kron(np.array([[0, 1], [-1, 0]]), np.eye(2, dtype=int)))
report = domain_dims(phi3)
print(f"\nweight 3, h=(1,1,1,1): dim {report.dim_D}, "
      f"horizontal {report.dim_horizontal}, case {report.hermitian_case.value}")
print("Lie filtration dims:", report.lie_dims)
print("base point is a valid structure:",
      verify_polarization(decomposition_from_filtration(base_point(phi3))).passed)

# classify_hermitian reads the answer off the Hodge numbers alone
print("\nclassifier on a few shapes:")
for m, h in [(1, (3, 3)), (2, (1, 19, 1)), (2, (2, 1, 2)), (3, (1, 2, 2, 1))]:
    print(f"  m={m}, h={h}: {classify_hermitian(m, h).value}")

# deformation count for smooth surfaces of degree 4 in projective 3-space
print("\neffective parameters for (n, d) = (2, 4):", kodaira_spencer_count(2, 4))
