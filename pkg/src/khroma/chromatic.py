"""The cube complex of quotient rings ``R/I_s`` and its Koszul description.

Chain group ``i`` in q-degree ``d`` is the direct sum of ``(R/I_s)_d`` over
states with ``|s| = i``; the differential adds one edge at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, ChainMapError, DifferentialError
from .graph import Graph, State, state_components
from .koszul import KoszulComplexSlice, check_koszul_budget, koszul_state
from .linalg import (
    RatMatrix,
    Subquotient,
    block_matrix,
    induced_map,
    monomial_basis,
    quotient_slice,
    reduce_map,
    subquotient,
)
from .polynomials import chromatic_series
from .tables import HomologyTable

MAX_CUBE_EDGES = 20


def cube_sign(mask: int, e: int) -> int:
    """``-1`` iff an odd number of members of ``mask`` precede edge ``e``."""
    return -1 if bin(mask & ((1 << e) - 1)).count("1") % 2 else 1


def states_by_size(G: Graph) -> list[list[int]]:
    layers: list[list[int]] = [[] for _ in range(G.m + 1)]
    for mask in range(1 << G.m):
        layers[bin(mask).count("1")].append(mask)
    return layers


@dataclass
class CubeComplex:
    graph: Graph
    D: int
    layers: list[list[int]]
    states: dict[int, State]
    # (i, d) -> d^i_d : C^i_d -> C^{i+1}_d
    differentials: dict[tuple[int, int], RatMatrix] = field(default_factory=dict)

    def chain_dim(self, i: int, d: int) -> int:
        if not 0 <= i <= self.graph.m:
            return 0
        return sum(len(monomial_basis(self.states[s].k, d)) for s in self.layers[i])

    def offsets(self, i: int, d: int) -> dict[int, int]:
        """Position of each summand ``R_s`` inside ``C^i_d``."""
        out, pos = {}, 0
        for s in self.layers[i]:
            out[s] = pos
            pos += len(monomial_basis(self.states[s].k, d))
        return out

    def differential(self, i: int, d: int) -> RatMatrix:
        if (i, d) in self.differentials:
            return self.differentials[(i, d)]
        return RatMatrix.zero(self.chain_dim(i + 1, d), self.chain_dim(i, d))


def _check_cube_budget(G: Graph) -> None:
    if G.m > MAX_CUBE_EDGES:
        raise BudgetExceeded("m", G.m, MAX_CUBE_EDGES)


def build_cube(G: Graph, D: int) -> CubeComplex:
    _check_cube_budget(G)
    layers = states_by_size(G)
    states = {s: state_components(G, s) for layer in layers for s in layer}
    cube = CubeComplex(G, D, layers, states)
    for d in range(D + 1):
        for i in range(G.m):
            src, dst = layers[i], layers[i + 1]
            dst_pos = {s: k for k, s in enumerate(dst)}
            blocks = []
            for col, s in enumerate(src):
                for e in range(G.m):
                    if s >> e & 1:
                        continue
                    t = s | 1 << e
                    M = reduce_map(G, states[s], states[t], d)
                    blocks.append((dst_pos[t], col, M.scaled(cube_sign(s, e))))
            cube.differentials[(i, d)] = block_matrix(
                [len(monomial_basis(states[s].k, d)) for s in dst],
                [len(monomial_basis(states[s].k, d)) for s in src],
                blocks,
            )
        for i in range(G.m - 1):
            if not (cube.differential(i + 1, d) @ cube.differential(i, d)).is_zero():
                raise DifferentialError("d^2 != 0 in the cube complex", cell=(i, 0, d))
    return cube


def _homology_from_differentials(D: int, top: int, chain_dim, differential) -> tuple[dict, dict]:
    entries, chain = {}, {}
    for d in range(D + 1):
        for i in range(top + 1):
            n = chain_dim(i, d)
            chain[(i, 0, d)] = n
            if n == 0:
                continue
            incoming = differential(i - 1, d) if i > 0 else RatMatrix.zero(n, 0)
            outgoing = differential(i, d) if i < top else RatMatrix.zero(0, n)
            entries[(i, 0, d)] = subquotient(incoming, outgoing, check=False).dim
    return entries, chain


def chromatic_homology(G: Graph, D: int, cube: CubeComplex | None = None) -> HomologyTable:
    cube = cube or build_cube(G, D)
    entries, chain = _homology_from_differentials(D, G.m, cube.chain_dim, cube.differential)
    return HomologyTable(D=D, entries=entries, chain=chain, construction="cube")


@dataclass
class EulerReport:
    """Per bidegree ``(a, d)``: chain-level sum, homology-level sum, polynomial coefficient."""

    rows: list[tuple[int, int, int, int, int]]

    @property
    def passed(self) -> bool:
        return all(c == h == p for _, _, c, h, p in self.rows)

    def failures(self) -> list[tuple[int, int, int, int, int]]:
        return [r for r in self.rows if not r[2] == r[3] == r[4]]

    def render(self) -> str:
        lines = [f"{'a':>3} {'d':>3} {'chain':>8} {'homology':>9} {'poly':>8}  ok"]
        for a, d, c, h, p in self.rows:
            lines.append(f"{a:>3} {d:>3} {c:>8} {h:>9} {p:>8}  {'yes' if c == h == p else 'NO'}")
        return "\n".join(lines)


def alternating_sums(table: HomologyTable, a: int, d: int) -> tuple[int, int]:
    chain = sum((-1) ** (i % 2) * v for (i, x, y), v in table.chain.items() if (x, y) == (a, d))
    hom = sum((-1) ** (i % 2) * v for (i, x, y), v in table.entries.items() if (x, y) == (a, d))
    return chain, hom


def chromatic_euler_check(G: Graph, D: int, table: HomologyTable | None = None) -> EulerReport:
    table = table or chromatic_homology(G, D)
    series = chromatic_series(G, D)
    rows = []
    for d in range(D + 1):
        c, h = alternating_sums(table, 0, d)
        rows.append((0, d, c, h, series.coeff(0, d)))
    return EulerReport(rows)


# -- the Koszul description ---------------------------------------------------------


def _position_one_map(source: KoszulComplexSlice, target: KoszulComplexSlice, e: int) -> RatMatrix:
    """Tensor of the per-edge square on position 1: zero on factor ``e``, identity elsewhere."""
    size = source.block_size(1)
    columns = []
    for f in range(source.length):
        if f == e:
            columns.extend({} for _ in range(size))
        else:
            columns.extend({f * size + i: 1} for i in range(size))
    return RatMatrix(target.dim(1), source.dim(1), columns)


def koszul_chromatic(G: Graph, D: int) -> HomologyTable:
    """Chromatic homology rebuilt from rightmost cohomology of per-state Koszul complexes."""
    check_koszul_budget(G, vertices=False)
    layers = states_by_size(G)
    slices: dict[int, list[KoszulComplexSlice]] = {}
    groups: dict[tuple[int, int], Subquotient] = {}
    for layer in layers:
        for s in layer:
            slices[s] = koszul_state(G, s, D, vertices=False)
            for d in range(D + 1):
                sl = slices[s][d]
                groups[(s, d)] = subquotient(sl.boundary(1), RatMatrix.zero(0, sl.dim(0)))

    def chain_dim(i: int, d: int) -> int:
        if not 0 <= i <= G.m:
            return 0
        return sum(groups[(s, d)].dim for s in layers[i])

    differentials: dict[tuple[int, int], RatMatrix] = {}
    for d in range(D + 1):
        for i in range(G.m):
            src, dst = layers[i], layers[i + 1]
            dst_pos = {s: k for k, s in enumerate(dst)}
            blocks = []
            for col, s in enumerate(src):
                for e in range(G.m):
                    if s >> e & 1:
                        continue
                    t = s | 1 << e
                    a_src, a_dst = slices[s][d], slices[t][d]
                    v0 = RatMatrix.identity(a_src.dim(0))
                    v1 = _position_one_map(a_src, a_dst, e)
                    if not (a_dst.boundary(1) @ v1) == (v0 @ a_src.boundary(1)):
                        raise ChainMapError("edge square does not commute", cell=(i, 0, d))
                    sign = cube_sign(s, e)
                    M = induced_map(groups[(s, d)], groups[(t, d)], v0.scaled(sign), cell=(i, 0, d))
                    blocks.append((dst_pos[t], col, M))
            differentials[(i, d)] = block_matrix(
                [groups[(t, d)].dim for t in dst], [groups[(s, d)].dim for s in src], blocks
            )
        for i in range(G.m - 1):
            if not (differentials[(i + 1, d)] @ differentials[(i, d)]).is_zero():
                raise DifferentialError("d^2 != 0 in the Koszul cube", cell=(i, 0, d))

    def differential(i: int, d: int) -> RatMatrix:
        return differentials[(i, d)]

    entries, chain = _homology_from_differentials(D, G.m, chain_dim, differential)
    return HomologyTable(D=D, entries=entries, chain=chain, construction="koszul")
