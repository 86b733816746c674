"""Characteristic polynomials, Chebyshev recurrences, cycle determinant
closed forms, and zero-transfer certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import SpectralDecomposition, eigendecompose
from .gain_graph import GainGraph, cycle_order
from .hamiltonian import HermitianMatrix, adjacency_matrix

MAX_CHARPOLY_DIM = 64
DEFAULT_ZERO_TRANSFER_THRESHOLD = 1e-10


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with real coefficients in ascending degree order.

    Integer-exact paths keep Python ints; numeric paths use floats.  Trailing
    zero coefficients are trimmed (the zero polynomial keeps one entry).
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = self.coefficients[-1] * (x * 0 + 1) if not np.isscalar(x) else self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def _padded(self, other: "Polynomial") -> tuple[list, list]:
        a, b = list(self.coefficients), list(other.coefficients)
        size = max(len(a), len(b))
        a += [0] * (size - len(a))
        b += [0] * (size - len(b))
        return a, b

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._padded(other)
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._padded(other)
        return Polynomial(tuple(x - y for x, y in zip(a, b)))

    def max_coefficient_gap(self, other: "Polynomial") -> float:
        a, b = self._padded(other)
        return max(abs(x - y) for x, y in zip(a, b))


def _poly_from_roots(roots) -> list[float]:
    """Coefficients (ascending) of the monic polynomial with the given real roots.

    Accumulated in extended precision: the convolution suffers cancellation
    when roots of both signs are present, and coefficient-level tolerances
    downstream are tight.
    """
    coeffs = np.zeros(1, dtype=np.longdouble)
    coeffs[0] = 1.0
    for r in np.sort(np.asarray(roots, dtype=np.longdouble)):
        nxt = np.zeros(len(coeffs) + 1, dtype=np.longdouble)
        nxt[1:] = coeffs
        nxt[:-1] -= r * coeffs
        coeffs = nxt
    return [float(c) for c in coeffs]


def charpoly(matrix: HermitianMatrix) -> Polynomial:
    """Characteristic polynomial det(xI - H) via the clustered eigendecomposition."""
    if matrix.dim > MAX_CHARPOLY_DIM:
        raise ValueError(f"charpoly capped at dimension {MAX_CHARPOLY_DIM}, got {matrix.dim}")
    spec = eigendecompose(matrix)
    roots = np.repeat(spec.eigenvalues, spec.multiplicities)
    return Polynomial(tuple(_poly_from_roots(roots)))


def charpoly_faddeev(matrix: HermitianMatrix, imag_tol: float = 1e-8) -> Polynomial:
    """Independent characteristic polynomial path via the trace recursion."""
    return Polynomial(_faddeev_leverrier(matrix.entries, imag_tol))


def _faddeev_leverrier(a: np.ndarray, imag_tol: float) -> tuple[float, ...]:
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)  # descending: coeffs[k] multiplies x^(n-k)
    coeffs[0] = 1.0
    aux = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        aux = a @ aux + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ aux) / k
    residue = float(np.max(np.abs(coeffs.imag)))
    if residue > imag_tol:
        raise ValueError(
            f"characteristic polynomial has imaginary residue {residue:.3e}; "
            "input is not Hermitian enough"
        )
    return tuple(float(c) for c in coeffs.real[::-1])


def tridiag_det_sequence(diag, upper, lower) -> list:
    """Leading principal determinants f_0..f_n of a tridiagonal matrix.

    Three-term recurrence f_k = a_k f_{k-1} - c_{k-1} b_{k-1} f_{k-2} with
    f_{-1} = 0, f_0 = 1.  Integer inputs stay exact (Python integers).
    """
    a, b, c = list(diag), list(upper), list(lower)
    n = len(a)
    if len(b) != max(n - 1, 0) or len(c) != max(n - 1, 0):
        raise ValueError(
            f"off-diagonals must have length {max(n - 1, 0)}, got {len(b)} and {len(c)}"
        )
    seq = [1]
    prev2, prev1 = 0, 1
    for k in range(n):
        val = a[k] * prev1 - (c[k - 1] * b[k - 1] * prev2 if k >= 1 else 0)
        seq.append(val)
        prev2, prev1 = prev1, val
    return seq


def chebyshev_T(n: int, x):
    """First-kind Chebyshev value T_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    prev = x * 0 + 1
    if n == 0:
        return prev
    cur = x
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def chebyshev_U(n: int, x):
    """Second-kind Chebyshev value U_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    prev = x * 0 + 1
    if n == 0:
        return prev
    cur = 2 * x
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _poly_mul_int(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _cheb_coeff_recurrence(first: list, second: list, n: int) -> list:
    prev, cur = first, second
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, p in enumerate(prev):
            nxt[i] -= p
        prev, cur = cur, nxt
    return cur


def chebyshev_T_coefficients(n: int) -> Polynomial:
    """Exact integer coefficients of T_n, ascending."""
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    return Polynomial(tuple(_cheb_coeff_recurrence([1], [0, 1], n)))


def chebyshev_U_coefficients(n: int) -> Polynomial:
    """Exact integer coefficients of U_n, ascending."""
    if n < 0:
        raise ValueError("Chebyshev degree must be nonnegative")
    return Polynomial(tuple(_cheb_coeff_recurrence([1], [0, 2], n)))


def _monic_cheb_2t(m: int) -> list:
    # q_m(x) = 2 T_m(x/2) has integer coefficients: q_0 = 2, q_1 = x,
    # q_{k+1} = x q_k - q_{k-1}.
    prev, cur = [2], [0, 1]
    if m == 0:
        return prev
    for _ in range(m - 1):
        nxt = [0] + cur
        for i, p in enumerate(prev):
            nxt[i] -= p
        prev, cur = cur, nxt
    return cur


def cycle_charpoly_closed_form(m: int) -> Polynomial:
    """Closed-form characteristic polynomial (2 T_m(x/2))^2 of the length-2m
    gain cycle whose phase sum is pi.  Exact integer coefficients."""
    if m < 2:
        raise ValueError(f"half-length must be at least 2, got {m}")
    q = _monic_cheb_2t(m)
    return Polynomial(tuple(_poly_mul_int(q, q)))


def path_charpoly(n: int) -> Polynomial:
    """Characteristic polynomial of the n-vertex undirected path, U_n(x/2).

    Integer recurrence r_0 = 1, r_1 = x, r_{k+1} = x r_k - r_{k-1}.
    """
    if n < 1:
        raise ValueError(f"path needs at least 1 vertex, got {n}")
    prev, cur = [1], [0, 1]
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, p in enumerate(prev):
            nxt[i] -= p
        prev, cur = cur, nxt
    return Polynomial(tuple(cur))


def cycle_det_laplace(g: GainGraph) -> float:
    """Determinant of a cycle's adjacency matrix via the bordered-tridiagonal
    expansion.

    Relabelling the cycle in traversal order gives a tridiagonal matrix plus
    two corner entries; the expansion contributes the two interior path
    determinants and an oriented-cycle term equal to twice the real part of
    the gain product (which reduces to +/-2 when the product is +/-1).
    """
    order = cycle_order(g)
    n = len(order)
    h = adjacency_matrix(g).entries
    d = [complex(h[v, v].real) for v in order]
    upper = [h[order[j], order[j + 1]] for j in range(n - 1)]
    lower = [w.conjugate() for w in upper]
    corner = h[order[0], order[n - 1]]
    full = tridiag_det_sequence(d, upper, lower)[-1]
    inner = tridiag_det_sequence(d[1 : n - 1], upper[1 : n - 2], lower[1 : n - 2])[-1]
    gain = np.prod(upper) * h[order[n - 1], order[0]]
    sign = 1 if n % 2 else -1
    det = full - (corner * corner.conjugate()) * inner + sign * 2.0 * gain.real
    return float(det.real)


@dataclass(frozen=True)
class ZeroTransferCertificate:
    """Evidence that transfer a -> b is zero for all times (or a counterexample bound).

    certified_zero requires every spectral idempotent entry <b|E_r|a> and
    every normalized Krylov entry <b|(H/rho)^k|a>, k < n, to sit below the
    threshold; either statistic above it yields not_zero.
    """

    source: int
    target: int
    max_idempotent_entry: float
    krylov_max: float
    threshold: float
    verdict: str

    @property
    def certified(self) -> bool:
        return self.verdict == "certified_zero"


def zero_transfer_certificate(
    spec: SpectralDecomposition,
    matrix: HermitianMatrix,
    a: int,
    b: int,
    threshold: float = DEFAULT_ZERO_TRANSFER_THRESHOLD,
) -> ZeroTransferCertificate:
    """Certify zero transfer between two vertices from the spectral idempotents
    and the Krylov entries <b|H^k|a>, k = 0..n-1."""
    n = matrix.dim
    if spec.dim != n:
        raise ValueError(f"decomposition dimension {spec.dim} != matrix dimension {n}")
    for vertex in (a, b):
        if not 0 <= vertex < n:
            raise ValueError(f"vertex {vertex} out of range for dimension {n}")
    max_idem = float(np.max(np.abs(spec.idempotents[:, b, a])))
    scale = max(1.0, spec.spectral_radius)
    scaled = matrix.entries / scale
    vec = np.zeros(n, dtype=complex)
    vec[a] = 1.0
    krylov_max = 0.0
    for _ in range(n):
        krylov_max = max(krylov_max, float(abs(vec[b])))
        vec = scaled @ vec
    certified = max_idem <= threshold and krylov_max <= threshold
    return ZeroTransferCertificate(
        source=a,
        target=b,
        max_idempotent_entry=max_idem,
        krylov_max=krylov_max,
        threshold=threshold,
        verdict="certified_zero" if certified else "not_zero",
    )
