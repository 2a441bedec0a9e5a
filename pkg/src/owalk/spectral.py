"""Spectral decomposition of the walk generator and the propagator U(t).

The skew-symmetric adjacency matrix A has purely imaginary spectrum
{i*y_r} with real y_r.  We diagonalize the Hermitian matrix -iA, whose
real eigenvalues are exactly those y_r, and group repeated eigenvalues
into orthogonal projections (idempotents) E_r, giving

    A = sum_r theta_r * E_r,        theta_r = i * y_r.

Propagator sign convention: U(t) = sum_r exp(-t*theta_r) * E_r, fixed so
that a walker sitting at the tail of an oriented edge initially flows
toward the head with positive amplitude (d/dt U(t)[head, tail] at t=0 is
+1 for every edge).  U(t) is real orthogonal; the amplitude for transfer
from a to b after time t is U(t)[b, a].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AmbiguousGroupingError,
    EigensolverFailureError,
    NonRealResultError,
)
from .graph import OrientedGraph

__all__ = [
    "SpectralDecomposition",
    "decompose",
    "transition_matrix",
    "fidelity",
    "cluster_values",
]

DEFAULT_GROUPING_TOL = 1e-8
REALNESS_TOL = 1e-8


def cluster_values(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group indices of sorted ``values`` whose neighbors lie within ``tol``.

    Raises AmbiguousGroupingError when two distinct clusters end up closer
    than 10*tol, since membership would then hinge on the tolerance choice.
    """
    clusters: list[list[int]] = []
    for i, v in enumerate(values):
        if clusters and v - values[clusters[-1][-1]] < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    for left, right in zip(clusters, clusters[1:]):
        gap = values[right[0]] - values[left[-1]]
        if gap < 10 * tol:
            raise AmbiguousGroupingError(
                f"eigenvalue clusters separated by {gap:.3e} < 10*{tol:.3e}"
            )
    return clusters


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues i*y_r of A with their spectral idempotents."""

    graph: OrientedGraph
    eigenvalues: np.ndarray          # y_r, real, strictly increasing
    idempotents: tuple[np.ndarray, ...]
    grouping_tolerance: float
    multiplicities: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.graph.n

    def support_column(self, r: int, a: int) -> np.ndarray:
        """E_r applied to the standard basis vector of vertex ``a``."""
        return self.idempotents[r][:, a]


def decompose(
    g: OrientedGraph, grouping_tolerance: float = DEFAULT_GROUPING_TOL
) -> SpectralDecomposition:
    """Spectral decomposition of the graph's adjacency matrix.

    Parameters
    ----------
    g : OrientedGraph
    grouping_tolerance : float
        Relative tolerance for merging repeated eigenvalues; the absolute
        scale is grouping_tolerance * (1 + spectral radius).
    """
    a = g.adjacency.astype(np.float64)
    herm = -1j * a
    try:
        mu, vec = np.linalg.eigh(herm)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailureError(f"eigh did not converge: {exc}") from exc
    scale = 1.0 + (abs(mu).max() if mu.size else 0.0)
    tol_abs = grouping_tolerance * scale
    clusters = cluster_values(mu, tol_abs)
    eigenvalues = []
    idempotents = []
    multiplicities = []
    for cluster in clusters:
        y = float(np.mean(mu[cluster]))
        if abs(y) < tol_abs:
            y = 0.0
        cols = vec[:, cluster]
        e_r = cols @ cols.conj().T
        e_r.setflags(write=False)
        eigenvalues.append(y)
        idempotents.append(e_r)
        multiplicities.append(len(cluster))
    return SpectralDecomposition(
        graph=g,
        eigenvalues=np.array(eigenvalues),
        idempotents=tuple(idempotents),
        grouping_tolerance=grouping_tolerance,
        multiplicities=tuple(multiplicities),
    )


def _propagator_complex(sd: SpectralDecomposition, t: float) -> np.ndarray:
    y = sd.eigenvalues
    out = np.zeros((sd.n, sd.n), dtype=np.complex128)
    for phase, e_r in zip(np.exp(-1j * t * y), sd.idempotents):
        out += phase * e_r
    return out

def transition_matrix(
    sd: SpectralDecomposition, t: float, realness_tol: float = REALNESS_TOL
) -> np.ndarray:
    """Propagator U(t) as a real orthogonal matrix.

    The imaginary parts of the eigenfunction sum must vanish; anything
    above ``realness_tol`` raises NonRealResultError.
    """
    u = _propagator_complex(sd, t)
    worst = float(abs(u.imag).max()) if sd.n else 0.0
    if worst > realness_tol:
        raise NonRealResultError(
            f"propagator carries imaginary parts up to {worst:.3e}"
        )
    return u.real


def propagator_column(sd: SpectralDecomposition, a: int, t: float) -> np.ndarray:
    """Column a of U(t), i.e. the state reached from vertex ``a``, complex."""
    y = sd.eigenvalues
    cols = np.stack([e_r[:, a] for e_r in sd.idempotents], axis=1)
    return cols @ np.exp(-1j * t * y)


def amplitude_samples(
    sd: SpectralDecomposition, a: int, b: int, times: np.ndarray
) -> np.ndarray:
    """U(t)[b, a] evaluated on an array of times (vectorized)."""
    coeffs = np.array([e_r[b, a] for e_r in sd.idempotents])
    return np.exp(-1j * np.outer(times, sd.eigenvalues)) @ coeffs


def fidelity(sd: SpectralDecomposition, a: int, b: int, t: float) -> float:
    """Transfer fidelity |U(t)[b, a]| from vertex a to vertex b."""
    coeffs = np.array([e_r[b, a] for e_r in sd.idempotents])
    amp = np.exp(-1j * t * sd.eigenvalues) @ coeffs
    return float(abs(amp))
