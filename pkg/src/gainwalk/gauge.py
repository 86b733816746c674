"""Diagonal gauge transformations for oriented forests.

On a forest, every choice of unit-modulus arc phases is equivalent to the
undirected graph under conjugation by a diagonal unitary, so vertex-to-vertex
transfer probabilities cannot depend on the orientation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .evolution import eigendecompose, propagator
from .gain_graph import GainGraph, underlying_undirected
from .hamiltonian import HermitianMatrix, adjacency_matrix


@dataclass(frozen=True)
class DiagonalUnitary:
    """Diagonal matrix D with unit-modulus entries (D^dagger D = I by construction)."""

    phases: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.phases, dtype=complex)
        if d.ndim != 1:
            raise ValueError("diagonal must be a vector")
        if d.size and float(np.max(np.abs(np.abs(d) - 1.0))) > 1e-12:
            raise ValueError("diagonal entries must have unit modulus")
        d.setflags(write=False)
        object.__setattr__(self, "phases", d)

    @property
    def dim(self) -> int:
        return self.phases.shape[0]

    def matrix(self) -> np.ndarray:
        return np.diag(self.phases)

    def conjugate(self, matrix: HermitianMatrix) -> HermitianMatrix:
        """D^dagger H D, computed entrywise."""
        d = self.phases
        return HermitianMatrix(d.conj()[:, None] * matrix.entries * d[None, :])


def is_forest(g: GainGraph) -> bool:
    """True iff the graph has no cycle (union-find over stored arcs)."""
    parent = list(range(g.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.arcs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _components(g: GainGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for u, v, _ in g.arcs:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * g.n_vertices
    comps = []
    for start in range(g.n_vertices):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def tree_gauge(g: GainGraph, roots: Sequence[int] | None = None) -> DiagonalUnitary:
    """Diagonal unitary D with D^dagger H_alpha D equal to the undirected Hamiltonian.

    Each component is rooted (lowest index unless overridden via `roots`) with
    entry 1, and a BFS assigns the remaining entries: stepping from parent p to
    child c multiplies by e^{-i alpha} along a stored arc (p, c) and by
    e^{+i alpha} along a stored arc (c, p).  Changing a root only rescales its
    component by a global phase.
    """
    if not is_forest(g):
        raise ValueError("gauge requires a forest; the graph contains a cycle")
    n = g.n_vertices
    adj: list[list[tuple[int, float, bool]]] = [[] for _ in range(n)]
    for u, v, alpha in g.arcs:
        adj[u].append((v, alpha, True))   # stored direction u -> v
        adj[v].append((u, alpha, False))
    root_set = set(roots) if roots is not None else set()
    phases = np.zeros(n, dtype=complex)
    for comp in _components(g):
        chosen = sorted(root_set.intersection(comp))
        root = chosen[0] if chosen else min(comp)
        phases[root] = 1.0
        queue = deque([root])
        visited = {root}
        while queue:
            p = queue.popleft()
            for c, alpha, forward in adj[p]:
                if c in visited:
                    continue
                visited.add(c)
                step = np.exp(-1j * alpha) if forward else np.exp(1j * alpha)
                phases[c] = phases[p] * step
                queue.append(c)
    return DiagonalUnitary(phases)


def verify_gauge_invariance(g: GainGraph, t_samples: Sequence[float]) -> float:
    """Max deviation of walk amplitude moduli between H_alpha and H_0 on a forest.

    Covers every vertex pair at each sampled time; valid forests must come in
    at 1e-10 or below.
    """
    if not is_forest(g):
        raise ValueError("gauge invariance check requires a forest")
    spec_alpha = eigendecompose(adjacency_matrix(g))
    spec_plain = eigendecompose(adjacency_matrix(underlying_undirected(g)))
    worst = 0.0
    for t in t_samples:
        dev = np.abs(np.abs(propagator(spec_alpha, t)) - np.abs(propagator(spec_plain, t)))
        worst = max(worst, float(dev.max()))
    return worst
