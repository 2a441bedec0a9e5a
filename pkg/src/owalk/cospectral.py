"""Eigenvalue supports, strong cospectrality, and quarrels.

The support of a vertex is the set of eigenvalues whose idempotent sees
it.  Two vertices a, b are strongly cospectral when every idempotent
maps their basis vectors to unimodular multiples of each other:
E_r e_a = alpha_r E_r e_b with |alpha_r| = 1.  The quarrel q_r is the
phase exponent alpha_r = exp(i*pi*q_r), normalized to (-1, 1] (so a
real negative alpha gives q = 1, not -1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateProjectionError, SupportMismatchError
from .spectral import SpectralDecomposition

__all__ = [
    "EigenvalueSupport",
    "CospectralityCertificate",
    "eigenvalue_support",
    "strong_cospectrality",
    "quarrel_power_check",
]


def default_support_threshold(n: int) -> float:
    return 1e-8 * n


@dataclass(frozen=True)
class EigenvalueSupport:
    """Indices r with ||E_r e_vertex|| above threshold."""

    vertex: int
    members: tuple[int, ...]
    threshold: float

    def __contains__(self, r: int) -> bool:
        return r in self.members


@dataclass(frozen=True)
class CospectralityCertificate:
    """Witness that two vertices are strongly cospectral.

    ``alphas`` maps each support index r to the unimodular alpha_r with
    E_r e_a = alpha_r * E_r e_b; ``quarrels`` holds q_r = arg(alpha_r)/pi
    in (-1, 1].  ``residual`` is the largest norm mismatch over the
    support.
    """

    a: int
    b: int
    support: tuple[int, ...]
    alphas: dict[int, complex]
    quarrels: dict[int, float]
    residual: float


def eigenvalue_support(
    sd: SpectralDecomposition, a: int, threshold: float | None = None
) -> EigenvalueSupport:
    """Support of vertex ``a``: eigenvalue indices whose idempotent sees it."""
    if threshold is None:
        threshold = default_support_threshold(sd.n)
    members = tuple(
        r
        for r, e_r in enumerate(sd.idempotents)
        if np.linalg.norm(e_r[:, a]) > threshold
    )
    return EigenvalueSupport(vertex=a, members=members, threshold=threshold)


def strong_cospectrality(
    sd: SpectralDecomposition,
    a: int,
    b: int,
    tol: float = 1e-7,
    threshold: float | None = None,
) -> CospectralityCertificate | None:
    """Certificate that a and b are strongly cospectral, or None.

    Returns None when the supports differ or some idempotent fails the
    unimodular-multiple relation beyond ``tol``.
    """
    if threshold is None:
        threshold = default_support_threshold(sd.n)
    support_a = eigenvalue_support(sd, a, threshold)
    support_b = eigenvalue_support(sd, b, threshold)
    if support_a.members != support_b.members:
        return None
    alphas: dict[int, complex] = {}
    quarrels: dict[int, float] = {}
    residual = 0.0
    for r in support_a.members:
        col_a = sd.idempotents[r][:, a]
        col_b = sd.idempotents[r][:, b]
        norm_a = np.linalg.norm(col_a)
        norm_b = np.linalg.norm(col_b)
        if norm_a <= threshold or norm_b <= threshold:
            raise DegenerateProjectionError(
                f"support index {r} has projection norms {norm_a:.3e}, "
                f"{norm_b:.3e} at or below threshold {threshold:.3e}"
            )
        # e_b^T E_r e_a equals <E_r e_b, E_r e_a>; its phase is alpha_r
        # whenever the two columns really are unimodular multiples.
        inner = complex(sd.idempotents[r][b, a])
        if abs(inner) <= threshold * threshold:
            return None
        alpha = inner / abs(inner)
        residual = max(residual, float(np.linalg.norm(col_a - alpha * col_b)))
        if residual > tol:
            return None
        q = cmath.phase(alpha) / math.pi
        if q <= -1.0:
            q += 2.0
        alphas[r] = alpha
        quarrels[r] = q
    return CospectralityCertificate(
        a=a,
        b=b,
        support=support_a.members,
        alphas=alphas,
        quarrels=quarrels,
        residual=residual,
    )


def quarrel_power_check(
    base: CospectralityCertificate,
    n: int,
    power: CospectralityCertificate,
    tol: float = 1e-7,
) -> bool:
    """Check exp(i*pi*q_r(a, c)) = exp(i*pi*n*q_r(a, b)) across the support.

    ``base`` certifies (a, b) and ``power`` certifies (a, c) where c is
    reached from b by applying the same symmetry n-1 more times.  The
    comparison is made on the unit circle, so quarrel branch choices
    cannot produce false mismatches.
    """
    if base.support != power.support:
        raise SupportMismatchError(
            f"supports differ: {base.support} vs {power.support}"
        )
    for r in base.support:
        expected = cmath.exp(1j * math.pi * n * base.quarrels[r])
        actual = power.alphas[r]
        if abs(expected - actual) >= tol:
            return False
    return True
