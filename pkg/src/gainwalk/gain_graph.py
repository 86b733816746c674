"""Complex unit gain graphs: data model, standard families, and JSON I/O.

A gain graph stores one arc per unordered vertex pair together with a phase
alpha in [0, 2*pi).  The reverse direction is never stored; it is implied by
Hermiticity of the adjacency matrix (the conjugate weight).  Optional real
vertex potentials become diagonal entries of the Hamiltonian.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi


def canonical_phase(alpha: float) -> float:
    """Reduce a phase to [0, 2*pi); exact multiples of 2*pi collapse to 0."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"arc phase must be finite, got {alpha!r}")
    a = math.fmod(alpha, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a -= TWO_PI
    return a


class Arc(NamedTuple):
    """One stored arc u -> v with phase alpha (the v -> u weight is the conjugate)."""

    u: int
    v: int
    alpha: float


@dataclass(frozen=True)
class GainGraph:
    """Directed graph with unit-modulus complex arc weights e^{i alpha}.

    Invariants enforced on construction: vertex indices in range, no
    self-loops, at most one arc per unordered pair, phases canonical in
    [0, 2*pi), potentials (when present) real and of length n_vertices.
    Instances are immutable and safe to share between threads.
    """

    n_vertices: int
    arcs: tuple[Arc, ...]
    potentials: tuple[float, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.n_vertices, int) or self.n_vertices < 1:
            raise ValueError(f"n_vertices must be a positive integer, got {self.n_vertices!r}")
        arcs = tuple(Arc(int(u), int(v), canonical_phase(a)) for u, v, a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.potentials is not None:
            pots = tuple(float(p) for p in self.potentials)
            object.__setattr__(self, "potentials", pots)
        self.validate()

    def validate(self) -> None:
        """Re-check all structural invariants; raises ValueError on violation."""
        n = self.n_vertices
        seen: set[tuple[int, int]] = set()
        for u, v, alpha in self.arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) references a vertex outside [0,{n})")
            if u == v:
                raise ValueError(f"self-loop arc at vertex {u}; use potentials for self-energies")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate arc for unordered vertex pair {key}")
            seen.add(key)
            if not 0.0 <= alpha < TWO_PI:
                raise ValueError(f"arc phase {alpha} outside [0, 2*pi)")
        if self.potentials is not None:
            if len(self.potentials) != n:
                raise ValueError(
                    f"potentials has length {len(self.potentials)}, expected {n}"
                )
            for p in self.potentials:
                if not math.isfinite(p):
                    raise ValueError(f"potential must be finite, got {p!r}")

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def potential_vector(self) -> np.ndarray:
        """Vertex potentials as a float vector (zeros when unset)."""
        if self.potentials is None:
            return np.zeros(self.n_vertices)
        return np.asarray(self.potentials, dtype=float)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v, _ in self.arcs:
            deg[u] += 1
            deg[v] += 1
        return deg


def parse_graph(text: str) -> GainGraph:
    """Parse the graph JSON format: {"n", "arcs": [{"from","to","alpha"}...], "potentials"?}."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("graph JSON must be an object")
    try:
        n = payload["n"]
        raw_arcs = payload["arcs"]
    except KeyError as exc:
        raise ValueError(f"graph JSON missing required key {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    if not isinstance(raw_arcs, list):
        raise ValueError('"arcs" must be a list')
    arcs = []
    for i, item in enumerate(raw_arcs):
        if not isinstance(item, dict):
            raise ValueError(f"arc #{i} must be an object")
        try:
            u, v, alpha = item["from"], item["to"], item["alpha"]
        except KeyError as exc:
            raise ValueError(f"arc #{i} missing key {exc}") from exc
        if not isinstance(u, int) or not isinstance(v, int) or isinstance(u, bool) or isinstance(v, bool):
            raise ValueError(f'arc #{i}: "from" and "to" must be integers')
        if not isinstance(alpha, (int, float)) or isinstance(alpha, bool):
            raise ValueError(f'arc #{i}: "alpha" must be a number')
        arcs.append((u, v, float(alpha)))
    potentials = payload.get("potentials")
    if potentials is not None:
        if not isinstance(potentials, list) or not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in potentials
        ):
            raise ValueError('"potentials" must be a list of numbers')
    return GainGraph(n, tuple(arcs), tuple(potentials) if potentials is not None else None)


def graph_to_json(g: GainGraph) -> str:
    """Serialize a graph to the canonical JSON file format (round-trips parse_graph)."""
    payload: dict = {
        "n": g.n_vertices,
        "arcs": [{"from": u, "to": v, "alpha": alpha} for u, v, alpha in g.arcs],
    }
    if g.potentials is not None:
        payload["potentials"] = list(g.potentials)
    return json.dumps(payload, indent=1) + "\n"


def cycle_family(n: int, weighted_arcs: int, alpha: float) -> GainGraph:
    """Even cycle with arcs (j, j+1 mod n); the first `weighted_arcs` carry phase alpha.

    All arcs follow the orientation j -> j+1, so the phase sum around the
    cycle is weighted_arcs * alpha.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError(f"cycle length must be an even integer >= 4, got {n}")
    if not 1 <= weighted_arcs <= n:
        raise ValueError(f"weighted_arcs must be in [1, {n}], got {weighted_arcs}")
    arcs = [(j, (j + 1) % n, alpha if j < weighted_arcs else 0.0) for j in range(n)]
    return GainGraph(n, tuple(arcs))


def complete_family(n: int, alpha: float) -> GainGraph:
    """Complete graph with every edge oriented i -> j for i < j, all with phase alpha."""
    if n < 2:
        raise ValueError(f"complete graph needs at least 2 vertices, got {n}")
    arcs = [(i, j, alpha) for i in range(n) for j in range(i + 1, n)]
    return GainGraph(n, tuple(arcs))


def random_tree(n: int, seed: int, phase_mode: str = "zero") -> GainGraph:
    """Uniformly random labelled tree, deterministic in `seed`.

    A random Pruefer sequence is decoded into the edge list.  phase_mode
    "zero" gives an undirected tree; "uniform" draws each arc phase
    i.i.d. uniform in [0, 2*pi).
    """
    if n < 1:
        raise ValueError(f"tree needs at least 1 vertex, got {n}")
    if phase_mode not in ("zero", "uniform"):
        raise ValueError(f"phase_mode must be 'zero' or 'uniform', got {phase_mode!r}")
    rng = np.random.Generator(np.random.PCG64(seed))
    edges = _decode_pruefer(n, rng)
    if phase_mode == "uniform":
        phases = rng.uniform(0.0, TWO_PI, size=len(edges))
    else:
        phases = np.zeros(len(edges))
    arcs = [(min(u, v), max(u, v), float(a)) for (u, v), a in zip(edges, phases)]
    return GainGraph(n, tuple(arcs))


def _decode_pruefer(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def underlying_undirected(g: GainGraph) -> GainGraph:
    """Same arc set with every phase set to 0; potentials preserved."""
    arcs = tuple((u, v, 0.0) for u, v, _ in g.arcs)
    return GainGraph(g.n_vertices, arcs, g.potentials)


def cycle_order(g: GainGraph) -> tuple[int, ...]:
    """Vertices of a single-cycle graph in traversal order.

    Starts at vertex 0 and steps to its lower-indexed neighbour, so the
    orientation is deterministic.  Raises ValueError if g is not one cycle
    covering every vertex.
    """
    n = g.n_vertices
    if n < 3 or g.n_arcs != n or any(d != 2 for d in g.degrees()):
        raise ValueError("graph is not a single cycle")
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v, _ in g.arcs:
        nbrs[u].append(v)
        nbrs[v].append(u)
    order = [0, min(nbrs[0])]
    while len(order) < n:
        prev, cur = order[-2], order[-1]
        nxt = nbrs[cur][1] if nbrs[cur][0] == prev else nbrs[cur][0]
        if nxt == 0:
            break
        order.append(nxt)
    if len(order) != n or order[0] not in nbrs[order[-1]]:
        raise ValueError("graph is not a single cycle")
    return tuple(order)


def cycle_phase_sum(g: GainGraph) -> float:
    """Total phase around a cycle, following the deterministic traversal order.

    Arcs stored against the traversal direction contribute with a minus
    sign.  The result is reported in [0, 2*pi).
    """
    order = cycle_order(g)
    n = len(order)
    stored = {}
    for u, v, alpha in g.arcs:
        stored[(u, v)] = alpha
    total = 0.0
    for j in range(n):
        a, b = order[j], order[(j + 1) % n]
        if (a, b) in stored:
            total += stored[(a, b)]
        else:
            total -= stored[(b, a)]
    return canonical_phase(total)
