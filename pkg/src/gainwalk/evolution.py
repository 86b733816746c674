"""Spectral decomposition, the e^{+iHt} propagator, and transfer-probability sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import HermitianMatrix

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clustered eigendecomposition H = sum_r theta_r E_r.

    eigenvalues are distinct (post clustering) and ascending; idempotents[r]
    is the orthogonal projector onto the eigenspace of eigenvalues[r], with
    multiplicities recording how many raw eigenvalues were merged into it.
    """

    dim: int
    eigenvalues: np.ndarray
    idempotents: np.ndarray
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        ev.setflags(write=False)
        idem = np.asarray(self.idempotents, dtype=complex)
        idem.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "idempotents", idem)

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0


def eigendecompose(matrix: HermitianMatrix, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix, merging near-degenerate eigenvalues.

    Eigenvalues closer than cluster_tol * max(1, spectral radius) are merged
    into a single eigenvalue (their mean) with summed projectors; this keeps
    projector entries well defined on exactly degenerate spectra, where the
    eigensolver's basis within the eigenspace is arbitrary.
    """
    if cluster_tol < 0:
        raise ValueError("cluster_tol must be nonnegative")
    h = matrix.entries
    try:
        w, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"eigensolver failed to converge: {exc}") from exc
    n = matrix.dim
    scale = max(1.0, float(np.max(np.abs(w)))) if n else 1.0
    gap = cluster_tol * scale
    starts = [0]
    for i in range(1, n):
        if w[i] - w[i - 1] > gap:
            starts.append(i)
    starts.append(n)
    thetas, idems, mults = [], [], []
    for lo, hi in zip(starts[:-1], starts[1:]):
        block = vecs[:, lo:hi]
        thetas.append(float(np.mean(w[lo:hi])))
        idems.append(block @ block.conj().T)
        mults.append(hi - lo)
    eigenvalues = np.array(thetas)
    idempotents = np.array(idems)
    # Guard against a silently broken solve: the decomposition must put H back
    # together up to the clustering allowance.
    recon = np.einsum("r,rjk->jk", eigenvalues.astype(complex), idempotents)
    allowance = max(1e-9, 4.0 * cluster_tol) * scale
    if float(np.max(np.abs(recon - h))) > allowance:
        raise ValueError("eigendecomposition failed to reconstruct its input")
    if float(np.max(np.abs(idempotents.sum(axis=0) - np.eye(n)))) > 1e-10:
        raise ValueError("eigendecomposition projectors do not resolve the identity")
    return SpectralDecomposition(n, eigenvalues, idempotents, tuple(mults))


def propagator(spec: SpectralDecomposition, t: float) -> np.ndarray:
    """Unitary walk operator U(t) = sum_r e^{+i theta_r t} E_r."""
    phases = np.exp(1j * t * spec.eigenvalues)
    return np.einsum("r,rjk->jk", phases, spec.idempotents)


def _check_vertex(spec: SpectralDecomposition, vertex: int) -> None:
    if not 0 <= vertex < spec.dim:
        raise ValueError(f"vertex {vertex} out of range for dimension {spec.dim}")


def transfer_probability(spec: SpectralDecomposition, a: int, b: int, t: float) -> float:
    """P_{a->b}(t) = |<b| U(t) |a>|^2, clamped to [0, 1]."""
    _check_vertex(spec, a)
    _check_vertex(spec, b)
    amp = np.sum(np.exp(1j * t * spec.eigenvalues) * spec.idempotents[:, b, a])
    p = float(abs(amp)) ** 2
    if p > 1.0 + 1e-10:
        raise ValueError(f"transfer probability {p} exceeds 1 beyond tolerance")
    return min(max(p, 0.0), 1.0)


def distribution_at(spec: SpectralDecomposition, a: int, t: float) -> np.ndarray:
    """Site occupation probabilities at time t for a walk started at vertex a."""
    _check_vertex(spec, a)
    col = np.einsum("r,rj->j", np.exp(1j * t * spec.eigenvalues), spec.idempotents[:, :, a])
    probs = np.abs(col) ** 2
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"distribution sums to {total}, not 1; decomposition is inconsistent")
    return probs


@dataclass(frozen=True)
class TimeSeries:
    """Sampled transfer probabilities from one source vertex over a time grid."""

    source: int
    t_grid: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        p = np.asarray(self.probabilities, dtype=float)
        t.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "probabilities", p)

    @property
    def n_vertices(self) -> int:
        return self.probabilities.shape[1]

    def validate(self) -> None:
        row_sums = self.probabilities.sum(axis=1)
        worst = float(np.max(np.abs(row_sums - 1.0)))
        if worst > 1e-10:
            raise ValueError(f"time series row sums deviate from 1 by {worst:.3e}")
        if float(self.probabilities.min()) < 0.0 or float(self.probabilities.max()) > 1.0 + 1e-12:
            raise ValueError("time series probabilities escape [0, 1]")


def time_series(spec: SpectralDecomposition, a: int, t_max: float, steps: int) -> TimeSeries:
    """Sample the full site distribution on `steps` uniform times in [0, t_max]."""
    _check_vertex(spec, a)
    if steps < 2:
        raise ValueError(f"time grid needs at least 2 samples, got {steps}")
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    grid = np.linspace(0.0, t_max, steps)
    phases = np.exp(1j * np.outer(grid, spec.eigenvalues))
    amps = phases @ spec.idempotents[:, :, a]
    series = TimeSeries(a, grid, np.abs(amps) ** 2)
    series.validate()
    return series
