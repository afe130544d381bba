"""Finite multigraphs with loops, spanning-subgraph states and edge operations.

Vertices are labelled ``1..n``; edges are addressed by their 0-based position
in the stored edge sequence, which is significant (it fixes cube signs).
States are subsets of edges encoded as bitmasks over edge positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphParseError

MAX_EDGES = 62


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.sizes = [1] * size
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.sizes[rx] < self.sizes[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.sizes[rx] += self.sizes[ry]
        self.count -= 1
        return True


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"endpoint out of range: ({i}, {j}) with n={self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_loop(self, e: int) -> bool:
        i, j = self.edges[e]
        return i == j

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise IndexError(f"invalid edge index {e} (graph has {self.m} edges)")

    def __str__(self) -> str:
        return format_graph(self)


@dataclass(frozen=True)
class LinearForm:
    """The linear form ``x_plus - x_minus``; ``zero`` marks a loop edge."""

    plus: int
    minus: int
    zero: bool = False

    def __str__(self) -> str:
        if self.zero:
            return "0"
        return f"x_{self.plus} - x_{self.minus}"


@dataclass(frozen=True)
class State:
    graph: Graph
    members: int
    partition: tuple[tuple[int, ...], ...]
    k: int
    size: int

    @property
    def reps(self) -> tuple[int, ...]:
        """Minimum vertex of every component, ascending."""
        return tuple(block[0] for block in self.partition)

    def rep_of(self) -> dict[int, int]:
        return {v: block[0] for block in self.partition for v in block}

    def edge_indices(self) -> tuple[int, ...]:
        return mask_to_edges(self.members)


def mask_to_edges(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def edges_to_mask(edges: Iterable[int]) -> int:
    mask = 0
    for e in edges:
        mask |= 1 << e
    return mask


def parse_graph(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if n is not None:
                raise GraphParseError(lineno, "duplicate `v` header")
            if len(parts) != 2:
                raise GraphParseError(lineno, "malformed line: expected `v <n>`")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(lineno, "malformed line: vertex count is not an integer") from None
            if n < 0:
                raise GraphParseError(lineno, "malformed line: negative vertex count")
        elif tag == "e":
            if n is None:
                raise GraphParseError(lineno, "missing `v` header before first edge")
            if len(parts) != 3:
                raise GraphParseError(lineno, "malformed line: expected `e <i> <j>`")
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(lineno, "malformed line: endpoint is not an integer") from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphParseError(lineno, "endpoint out of range")
            edges.append((i, j))
            if len(edges) > MAX_EDGES:
                raise GraphParseError(lineno, f"too many edges (limit {MAX_EDGES})")
        else:
            raise GraphParseError(lineno, f"malformed line: unknown record {tag!r}")
    if n is None:
        raise GraphParseError(0, "missing `v` header")
    return Graph(n, tuple(edges))


def format_graph(G: Graph) -> str:
    lines = [f"v {G.n}"]
    lines.extend(f"e {i} {j}" for i, j in G.edges)
    return "\n".join(lines) + "\n"


def delete_edge(G: Graph, e: int) -> Graph:
    G._check_edge(e)
    return Graph(G.n, G.edges[:e] + G.edges[e + 1:])


def contract_edge(G: Graph, e: int) -> Graph:
    """Identify the endpoints of ``e`` and drop it; a loop is simply deleted.

    The merged vertex keeps label ``min(i, j)`` and labels above ``max(i, j)``
    shift down by one.
    """
    G._check_edge(e)
    i, j = G.edges[e]
    if i == j:
        return delete_edge(G, e)
    lo, hi = min(i, j), max(i, j)

    def relabel(v: int) -> int:
        if v == hi:
            return lo
        return v - 1 if v > hi else v

    rest = G.edges[:e] + G.edges[e + 1:]
    return Graph(G.n - 1, tuple((relabel(a), relabel(b)) for a, b in rest))


def state_components(G: Graph, s: int | Iterable[int]) -> State:
    mask = s if isinstance(s, int) else edges_to_mask(s)
    if mask >> G.m:
        raise IndexError("state mentions edges beyond the graph")
    uf = UnionFind(G.n)
    size = 0
    for e in mask_to_edges(mask):
        i, j = G.edges[e]
        uf.union(i - 1, j - 1)
        size += 1
    blocks: dict[int, list[int]] = {}
    for v in range(G.n):
        blocks.setdefault(uf.find(v), []).append(v + 1)
    partition = tuple(sorted(tuple(b) for b in blocks.values()))
    return State(G, mask, partition, len(partition), size)


def edge_form(G: Graph, e: int) -> LinearForm:
    G._check_edge(e)
    i, j = G.edges[e]
    if i == j:
        return LinearForm(i, i, zero=True)
    return LinearForm(min(i, j), max(i, j))


def all_states(G: Graph) -> list[State]:
    return [state_components(G, mask) for mask in range(1 << G.m)]


def state_profile(G: Graph) -> dict[tuple[int, int], int]:
    """Histogram ``(|s|, k(s)) -> number of states``."""
    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << G.m):
        st = state_components(G, mask)
        key = (st.size, st.k)
        counts[key] = counts.get(key, 0) + 1
    return counts


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    return Graph(G1.n + G2.n, G1.edges + tuple((i + shift, j + shift) for i, j in G2.edges))


def relabel_vertices(G: Graph, perm: Sequence[int]) -> Graph:
    """Apply ``v -> perm[v-1]`` where ``perm`` is a permutation of ``1..n``."""
    if sorted(perm) != list(range(1, G.n + 1)):
        raise ValueError("not a permutation of the vertex labels")
    return Graph(G.n, tuple((perm[i - 1], perm[j - 1]) for i, j in G.edges))


def reorder_edges(G: Graph, order: Sequence[int]) -> Graph:
    if sorted(order) != list(range(G.m)):
        raise ValueError("not a permutation of the edge indices")
    return Graph(G.n, tuple(G.edges[e] for e in order))


def canonical_key(G: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """A relabelled copy of ``G`` (as ``(n, sorted edges)``) used as a cache key.

    Vertices are ordered by degree, then by the sorted degrees of their
    neighbours, ties broken by the original label.  The key is a genuine
    relabelling of ``G``, so equal keys always mean isomorphic graphs.
    """
    deg = [0] * (G.n + 1)
    nbrs: list[list[int]] = [[] for _ in range(G.n + 1)]
    for i, j in G.edges:
        deg[i] += 1
        deg[j] += 1
        nbrs[i].append(j)
        nbrs[j].append(i)
    order = sorted(
        range(1, G.n + 1),
        key=lambda v: (deg[v], tuple(sorted(deg[u] for u in nbrs[v])), v),
    )
    new = {v: idx + 1 for idx, v in enumerate(order)}
    edges = sorted(tuple(sorted((new[i], new[j]))) for i, j in G.edges)
    return G.n, tuple(edges)
