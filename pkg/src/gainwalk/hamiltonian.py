"""Walk Hamiltonians: Hermitian adjacency matrices, constant-phase splits,
and the excitation-conserving two-body qubit lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .gain_graph import TWO_PI, GainGraph, canonical_phase

HERMITICITY_TOL = 1e-12
MAX_LIFT_QUBITS = 12


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense complex square matrix, exactly Hermitian after construction.

    Construction rejects inputs whose asymmetry max|M - M^dagger| exceeds
    1e-12 (arithmetic noise budget) and then stores (M + M^dagger)/2, so the
    stored entries satisfy Hermiticity exactly and the diagonal is real.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        if m.size:
            asym = float(np.max(np.abs(m - m.conj().T)))
            if asym > HERMITICITY_TOL:
                raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
        m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None):
        return np.asarray(self.entries, dtype=dtype)


def adjacency_matrix(g: GainGraph) -> HermitianMatrix:
    """Hermitian adjacency matrix: entry (u, v) = e^{i alpha} for each stored
    arc (u, v), entry (v, u) its conjugate, diagonal from the potentials."""
    n = g.n_vertices
    m = np.zeros((n, n), dtype=complex)
    for u, v, alpha in g.arcs:
        w = complex(np.cos(alpha), np.sin(alpha))
        m[u, v] = w
        m[v, u] = w.conjugate()
    if g.potentials is not None:
        m[np.diag_indices(n)] = g.potentials
    return HermitianMatrix(m)


@dataclass(frozen=True)
class SplitPair:
    """Constant-phase decomposition H = cos(alpha)*[B+B^T] + sin(alpha)*[i(B-B^T)].

    symmetric_part is the real adjacency matrix of the underlying undirected
    graph; skew_part is the Hermitian matrix for the pure-i weighting.
    """

    symmetric_part: np.ndarray
    skew_part: np.ndarray
    alpha: float

    def reconstruct(self) -> np.ndarray:
        return np.cos(self.alpha) * self.symmetric_part + np.sin(self.alpha) * self.skew_part


def _arc_matrix(g: GainGraph) -> np.ndarray:
    """0/1 matrix B with B[u, v] = 1 for each stored arc (u, v)."""
    b = np.zeros((g.n_vertices, g.n_vertices))
    for u, v, _ in g.arcs:
        b[u, v] = 1.0
    return b


def _phase_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def split_constant_alpha(g: GainGraph, alpha: float) -> SplitPair:
    """Split a constant-phase, potential-free graph into its symmetric and skew parts."""
    alpha = canonical_phase(alpha)
    for u, v, a in g.arcs:
        if _phase_distance(a, alpha) > 1e-12:
            raise ValueError(
                f"arc ({u},{v}) carries phase {a}, not the constant {alpha}"
            )
    if g.potentials is not None and any(p != 0.0 for p in g.potentials):
        raise ValueError("split requires all-zero potentials")
    b = _arc_matrix(g)
    return SplitPair(b + b.T, 1j * (b - b.T), alpha)


def is_normal(g: GainGraph, tol: float = 1e-12) -> bool:
    """Whether the 0/1 arc matrix B commutes with its transpose (max-norm test)."""
    b = _arc_matrix(g)
    comm = b @ b.T - b.T @ b
    return bool(np.max(np.abs(comm)) <= tol) if comm.size else True


@dataclass(frozen=True)
class LiftedHamiltonian:
    """Sparse 2^n-dimensional two-body Hamiltonian whose 1-excitation block
    is a prescribed Hermitian matrix.

    Basis states are n-bit masks (bit a set <=> qubit a in state 1).  Entries
    are stored as (row_mask, col_mask) -> amplitude and only connect masks of
    equal popcount, so excitation number is conserved structurally.
    """

    n_qubits: int
    entries: Mapping[tuple[int, int], complex]

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=complex)
        for (r, c), val in self.entries.items():
            m[r, c] = val
        return m


def lift_full(matrix: HermitianMatrix) -> LiftedHamiltonian:
    """Lift an n x n Hermitian matrix M to the 2^n two-body qubit Hamiltonian.

    Built directly from the hop/phase/number action rules: for masks S with
    exactly one of {a, b} occupied, the transition S -> S xor {a,b} carries
    amplitude M[entering, leaving]; each occupied vertex a adds M[a, a] to the
    diagonal.  The 1-excitation block of the result reproduces M exactly.
    """
    n = matrix.dim
    if n > MAX_LIFT_QUBITS:
        raise ValueError(f"lift capped at {MAX_LIFT_QUBITS} qubits, got {n}")
    m = matrix.entries
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if m[a, b] != 0]
    diag = m.diagonal().real
    entries: dict[tuple[int, int], complex] = {}
    for s in range(1 << n):
        d = sum(diag[a] for a in range(n) if (s >> a) & 1)
        if d != 0.0:
            entries[(s, s)] = complex(d)
        for a, b in pairs:
            in_a = (s >> a) & 1
            in_b = (s >> b) & 1
            if in_a == in_b:
                continue
            t = s ^ ((1 << a) | (1 << b))
            leaving, entering = (a, b) if in_a else (b, a)
            entries[(t, s)] = complex(m[entering, leaving])
    return LiftedHamiltonian(n, entries)


def excitation_masks(n_qubits: int, k: int) -> list[int]:
    """Masks with popcount k, in increasing value (the sector basis order)."""
    return [s for s in range(1 << n_qubits) if s.bit_count() == k]


def excitation_block(lifted: LiftedHamiltonian, k: int) -> HermitianMatrix:
    """The k-excitation block of a lifted Hamiltonian, basis ordered by mask value."""
    n = lifted.n_qubits
    if not 0 <= k <= n:
        raise ValueError(f"excitation number must be in [0, {n}], got {k}")
    masks = excitation_masks(n, k)
    index = {s: i for i, s in enumerate(masks)}
    block = np.zeros((len(masks), len(masks)), dtype=complex)
    for (r, c), val in lifted.entries.items():
        i = index.get(r)
        j = index.get(c)
        if i is not None and j is not None:
            block[i, j] = val
    return HermitianMatrix(block)
