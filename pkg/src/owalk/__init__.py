"""Continuous quantum walks on oriented graphs.

An oriented graph is encoded by its skew-symmetric adjacency matrix A
(A[u, v] = 1 when the edge runs u -> v).  The walk is the one-parameter
group U(t) = exp(-t A); this package decides periodicity, strong
cospectrality, perfect state transfer and multiple state transfer, and
produces numerically verified certificates for each.
"""

from .arithmetic import IntPolynomial, char_poly, quadratic_integer_profile, square_free_part
from .autos import (
    SwitchingAutomorphism,
    compose,
    find_switching_automorphisms,
    is_switching_automorphism,
    orbit,
)
from .cospectral import (
    CospectralityCertificate,
    EigenvalueSupport,
    eigenvalue_support,
    quarrel_power_check,
    strong_cospectrality,
)
from .errors import (
    DisconnectedGraphError,
    GraphParseError,
    InputError,
    InternalInconsistencyError,
    NotCospectralError,
    NotPeriodicError,
    NotStronglyCospectralError,
    NoValidMError,
    OwalkError,
    SearchBudgetExceededError,
    VerificationFailedError,
)
from .graph import (
    BUILTIN_NAMES,
    OrientedGraph,
    build_graph,
    builtin_example,
    is_connected,
    parse_graph,
    serialize_graph,
)
from .periodicity import PeriodicityCertificate, is_periodic, verify_period
from .spectral import (
    SpectralDecomposition,
    amplitude_samples,
    decompose,
    fidelity,
    propagator_column,
    transition_matrix,
)
from .transfer import (
    MSTCertificate,
    TransferCertificate,
    complete_char,
    first_char_check,
    mst_search,
    scan_pst,
    verify_pst,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "CospectralityCertificate",
    "DisconnectedGraphError",
    "EigenvalueSupport",
    "GraphParseError",
    "InputError",
    "IntPolynomial",
    "InternalInconsistencyError",
    "MSTCertificate",
    "NoValidMError",
    "NotCospectralError",
    "NotPeriodicError",
    "NotStronglyCospectralError",
    "OrientedGraph",
    "OwalkError",
    "PeriodicityCertificate",
    "SearchBudgetExceededError",
    "SpectralDecomposition",
    "SwitchingAutomorphism",
    "TransferCertificate",
    "VerificationFailedError",
    "amplitude_samples",
    "build_graph",
    "builtin_example",
    "char_poly",
    "complete_char",
    "compose",
    "decompose",
    "eigenvalue_support",
    "fidelity",
    "find_switching_automorphisms",
    "first_char_check",
    "is_connected",
    "is_periodic",
    "is_switching_automorphism",
    "mst_search",
    "orbit",
    "parse_graph",
    "propagator_column",
    "quadratic_integer_profile",
    "quarrel_power_check",
    "scan_pst",
    "serialize_graph",
    "square_free_part",
    "strong_cospectrality",
    "transition_matrix",
    "verify_period",
    "verify_pst",
    "__version__",
]
