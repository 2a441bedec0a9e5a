"""Exception types shared across the package.

Two broad families matter to callers: `InputError` covers problems with
what the user handed in (bad graphs, bad vertex indices), while
`InternalInconsistencyError` covers checks that should never fail on a
well-formed run and signal a tolerance or logic problem when they do.
"""

from __future__ import annotations

__all__ = [
    "OwalkError",
    "InputError",
    "InternalInconsistencyError",
    "DuplicateEdgeError",
    "SelfLoopError",
    "VertexOutOfRangeError",
    "UnknownExampleError",
    "GraphParseError",
    "DisconnectedGraphError",
    "EigensolverFailureError",
    "AmbiguousGroupingError",
    "NonRealResultError",
    "InconsistentExactCheckError",
    "DegenerateProjectionError",
    "SupportMismatchError",
    "VerificationFailedError",
    "SearchBudgetExceededError",
    "NotStronglyCospectralError",
    "NotCospectralError",
    "NotPeriodicError",
    "NoValidMError",
]


class OwalkError(Exception):
    """Base class for all package errors."""


class InputError(OwalkError):
    """The caller's input (graph, vertex, file) is invalid."""


class InternalInconsistencyError(OwalkError):
    """An internal cross-check failed; results cannot be trusted."""


class DuplicateEdgeError(InputError):
    """The same unordered vertex pair appears more than once."""


class SelfLoopError(InputError):
    """An edge joins a vertex to itself."""


class VertexOutOfRangeError(InputError):
    """A vertex index falls outside [0, n)."""


class UnknownExampleError(InputError):
    """No builtin example graph has the requested name."""


class GraphParseError(InputError):
    """Graph file text does not follow the expected grammar."""


class DisconnectedGraphError(InputError):
    """The operation requires a connected graph on at least two vertices."""


class EigensolverFailureError(InternalInconsistencyError):
    """The Hermitian eigensolver did not converge."""


class AmbiguousGroupingError(InternalInconsistencyError):
    """Two eigenvalue clusters sit too close to separate reliably."""


class NonRealResultError(InternalInconsistencyError):
    """A matrix that must be real carries imaginary parts above tolerance."""


class InconsistentExactCheckError(InternalInconsistencyError):
    """Float rounding and the exact integer polynomial disagree."""


class DegenerateProjectionError(InternalInconsistencyError):
    """A projection claimed in the support has norm below threshold."""


class SupportMismatchError(InternalInconsistencyError):
    """Two certificates that must share an eigenvalue support do not."""


class VerificationFailedError(InternalInconsistencyError):
    """A parity condition passed but the numeric check did not."""


class SearchBudgetExceededError(OwalkError):
    """The automorphism search exhausted its node budget."""


class NotStronglyCospectralError(OwalkError):
    """The vertex pair is not strongly cospectral."""


class NotCospectralError(OwalkError):
    """A vertex and its image are not strongly cospectral."""


class NotPeriodicError(OwalkError):
    """The vertex is not periodic."""


class NoValidMError(OwalkError):
    """No admissible power satisfies the parity condition."""
