"""Period-domain dimension counts and the Hermitian classification.

Everything is computed at a point by plain linear algebra on the Lie
algebra of the form-preserving group; closed-form dimension formulas
(Siegel g(g+1)/2, symplectic/orthogonal algebra dimensions) live in the
tests as oracles, not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UnsupportedType, ValidationError
from .hodge import HodgeFiltration, HodgeType, projector

__all__ = [
    "HermitianCase",
    "DomainReport",
    "classify_hermitian",
    "lie_filtration_dims",
    "domain_dims",
    "base_point",
    "kodaira_spencer_count",
]

_SV_TOL = 1e-8


class HermitianCase(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NO = "No"


def classify_hermitian(m, h):
    """Prop.-3 test for whether the domain is Hermitian symmetric.

    Case1: odd weight m = 2a+1 with Hodge numbers supported on p in
    {a, a+1}. Case2: even weight m = 2a with support in {a-1, a, a+1}
    and h^{a+1,a-1} at most 1. Everything else is No.
    """
    h = tuple(int(x) for x in h)
    if len(h) != m + 1 or h != h[::-1]:
        raise ValidationError(f"h = {h} is not a palindromic length-{m + 1} sequence")
    support = {m - q for q, val in enumerate(h) if val}
    if m % 2:
        a = (m - 1) // 2
        if support <= {a, a + 1}:
            return HermitianCase.CASE1
        return HermitianCase.NO
    a = m // 2
    extreme = h[a - 1] if a >= 1 else 0  # h^{a+1, a-1}
    if support <= {a - 1, a, a + 1} and extreme <= 1:
        return HermitianCase.CASE2
    return HermitianCase.NO


def _lie_algebra_rows(psi):
    """Constraint rows over vec(N) for N^T Psi + Psi N = 0."""
    mu = psi.shape[0]
    rows = np.zeros((mu * mu, mu * mu), dtype=complex)
    for a in range(mu):
        for b in range(mu):
            e = np.zeros((mu, mu))
            e[a, b] = 1.0
            rows[:, a * mu + b] = (e.T @ psi + psi @ e).flatten()
    return rows


def _containment_rows(basis_from, space_to, mu):
    """Rows forcing N * basis_from to lie inside the span of space_to."""
    comp = np.eye(mu) - projector(space_to)
    out = np.zeros((mu * basis_from.shape[1], mu * mu), dtype=complex)
    for a in range(mu):
        for b in range(mu):
            e = np.zeros((mu, mu))
            e[a, b] = 1.0
            out[:, a * mu + b] = (comp @ e @ basis_from).flatten()
    return out


def _nullity(rows, unknowns):
    if rows.shape[0] == 0:
        return unknowns
    s = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(s > _SV_TOL * (s[0] if s.size else 1.0)))
    return unknowns - rank


def lie_filtration_dims(point):
    """Dimensions of F^i(g_C) for i = 0, -1, ..., -m at a filtration point.

    F^i(g) collects the form-preserving endomorphisms N with
    N(F^p) inside F^(p+i) for every p; the result is nondecreasing as i
    drops and tops out at dim g itself.
    """
    phi = point.phi
    mu = phi.mu
    lie_rows = _lie_algebra_rows(phi.psi.astype(complex))
    dims = []
    for i in range(0, -(phi.m) - 1, -1):
        blocks = [lie_rows]
        for p in range(1, phi.m + 1):
            target = p + i
            if target < 1:
                continue
            blocks.append(_containment_rows(point.level(p), point.level(target), mu))
        dims.append(_nullity(np.vstack(blocks), mu * mu))
    return tuple(dims)


@dataclass(frozen=True)
class DomainReport:
    """Dimension data of the period domain at a base point."""

    dim_compact_dual: int
    dim_D: int
    dim_F0_lie: int
    dim_horizontal: int
    hermitian_case: HermitianCase
    lie_dims: tuple

    def __post_init__(self):
        if self.dim_D != self.dim_compact_dual:
            raise ValidationError("D and its compact dual must share a dimension")
        if not 0 <= self.dim_horizontal <= self.dim_D:
            raise ValidationError("horizontal dimension out of range")


def domain_dims(phi, point=None):
    """Assemble the DomainReport for a type, at an optional explicit point."""
    if point is None:
        point = base_point(phi)
    dims = lie_filtration_dims(point)
    total = dims[-1]
    f0 = dims[0]
    horizontal = (dims[1] if phi.m >= 1 else total) - f0
    return DomainReport(
        dim_compact_dual=total - f0,
        dim_D=total - f0,
        dim_F0_lie=f0,
        dim_horizontal=horizontal,
        hermitian_case=classify_hermitian(phi.m, phi.h),
        lie_dims=dims,
    )


def _siegel_psi(g):
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)
    return np.block([[zero, eye], [-eye, zero]])


def base_point(phi):
    """A standard polarized point for the supported types.

    Weight 1 (h = (g,g), standard symplectic form): the Siegel point
    tau = i*Id. Weight 2 (h = (1,k,1), form diag(+1 x k, -1, -1)): the
    quadric point e_{k+1} + i e_{k+2}. Weight 3, h = (1,1,1,1), standard
    symplectic: an explicit flag built from e1 + i e3 and e2 - i e4.
    Anything else must come with a caller-supplied point.
    """
    m, h = phi.m, phi.h
    if m == 1:
        g = h[0]
        if h != (g, g) or not np.array_equal(phi.psi, _siegel_psi(g)):
            raise UnsupportedType("weight-1 base point needs the standard symplectic type")
        top = np.vstack([1j * np.eye(g), np.eye(g)])
        return HodgeFiltration.from_levels(phi, (top,))
    if m == 2:
        k = h[1]
        expected = np.diag([1] * k + [-1, -1]).astype(np.int64)
        if h != (1, k, 1) or not np.array_equal(phi.psi, expected):
            raise UnsupportedType(
                "weight-2 base point needs h = (1,k,1) with the diag(+1..,-1,-1) form"
            )
        mu = phi.mu
        v = np.zeros((mu, 1), dtype=complex)
        v[k, 0] = 1.0
        v[k + 1, 0] = 1j
        middle = np.hstack([v, np.eye(mu, k, dtype=complex)])
        return HodgeFiltration.from_levels(phi, (middle, v))
    if m == 3 and h == (1, 1, 1, 1):
        if not np.array_equal(phi.psi, _siegel_psi(2)):
            raise UnsupportedType("weight-3 base point needs the standard symplectic form")
        v0 = np.array([[1.0], [0.0], [1j], [0.0]])
        v1 = np.array([[0.0], [1.0], [0.0], [-1j]])
        f2 = np.hstack([v0, v1])
        f1 = np.hstack([v0, v1, np.conj(v1)])
        return HodgeFiltration.from_levels(phi, (f1, f2, v0))
    raise UnsupportedType(f"no built-in base point for weight {m}, h = {h}")


def kodaira_spencer_count(n, d):
    """Effective parameter count for degree-d hypersurfaces in P^(n+1)."""
    if n < 1 or d < 1:
        raise ValidationError("need n >= 1 and d >= 1")
    return math.comb(n + 1 + d, d) - (n + 2) ** 2
