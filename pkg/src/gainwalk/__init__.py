"""gainwalk: continuous-time quantum walks on complex unit gain graphs.

Phases on directed arcs make the adjacency matrix Hermitian rather than
symmetric, which changes transport: orientations on forests are gauge
trivia, while on even cycles a phase sum of pi certifies zero transfer
between antipodal vertices.  Time is dimensionless; evolution follows the
e^{+iHt} sign convention throughout.
"""

def _cap_blas_threads():
    # Honor GAINWALK_THREADS before any numpy import so BLAS pools obey the cap.
    import os

    cap = os.environ.get("GAINWALK_THREADS")
    if cap:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, cap)


_cap_blas_threads()
del _cap_blas_threads

from .gain_graph import (
    Arc,
    GainGraph,
    canonical_phase,
    complete_family,
    cycle_family,
    cycle_order,
    cycle_phase_sum,
    graph_to_json,
    parse_graph,
    random_tree,
    underlying_undirected,
)
from .hamiltonian import (
    HermitianMatrix,
    LiftedHamiltonian,
    SplitPair,
    adjacency_matrix,
    excitation_block,
    excitation_masks,
    is_normal,
    lift_full,
    split_constant_alpha,
)
from .evolution import (
    SpectralDecomposition,
    TimeSeries,
    distribution_at,
    eigendecompose,
    propagator,
    time_series,
    transfer_probability,
)
from .spectral import (
    Polynomial,
    ZeroTransferCertificate,
    charpoly,
    charpoly_faddeev,
    chebyshev_T,
    chebyshev_T_coefficients,
    chebyshev_U,
    chebyshev_U_coefficients,
    cycle_charpoly_closed_form,
    cycle_det_laplace,
    path_charpoly,
    tridiag_det_sequence,
    zero_transfer_certificate,
)
from .gauge import DiagonalUnitary, is_forest, tree_gauge, verify_gauge_invariance

__version__ = "0.1.0"
