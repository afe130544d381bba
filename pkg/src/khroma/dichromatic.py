"""The triply graded complex built from the per-state cohomologies H(s).

State ``s`` sits in cube degree ``j = -|s|`` and is shifted up by ``q^{|s|}``.
The differential from ``s`` to ``s - {e}`` is induced on cohomology by
multiplication with ``m_e`` on the left slot of the factor of ``e``.  Homology
is taken in two steps: Koszul direction first, then the cube direction.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .chromatic import EulerReport, alternating_sums, cube_sign, states_by_size
from .errors import ChainMapError, DifferentialError
from .graph import Graph, edge_form
from .koszul import StateCohomology, check_koszul_budget, slot_multiplication, state_cohomology
from .linalg import RatMatrix, block_matrix, induced_map, rank
from .polynomials import dichromatic_D_series
from .tables import TriplyGradedTable


def _state_job(args) -> StateCohomology:
    G, s, D, prime = args
    return state_cohomology(G, s, D, prime=prime)


def compute_state_cohomologies(G: Graph, D: int, workers: int = 1,
                               full_range: bool = False) -> dict[int, StateCohomology]:
    """H(s) for every state, in the q-degrees that survive the ``q^{|s|}`` shift.

    ``full_range`` keeps every degree up to ``D`` and also computes H'(s), so
    the same results can serve the per-state closed-form check.
    """
    check_koszul_budget(G)
    jobs = [(G, s, D if full_range else D - bin(s).count("1"), full_range) for s in range(1 << G.m)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_state_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_state_job(job) for job in jobs]
    return {s: coh for s, coh in zip(range(1 << G.m), results)}


def _edge_map(G: Graph, coh: dict[int, StateCohomology], s: int, e: int, a: int, d: int,
              check: bool = True) -> RatMatrix | None:
    """Matrix of the induced map ``H(s) -> H(s - {e})`` in total bidegree ``(a, d)``."""
    t = s & ~(1 << e)
    size = bin(s).count("1")
    ds, dt = d - size, d - size + 1
    src = coh[s].group(a, ds)
    dst = coh[t].group(a, dt)
    if src is None or dst is None or src.dim == 0 or dst.dim == 0:
        return None
    form = edge_form(G, e)
    ks, kt = coh[s].slices[ds], coh[t].slices[dt]
    V = slot_multiplication(ks, kt, e, form, a)
    if check:
        # chain-map identities on both squares touching position a
        for p in (a, a + 1):
            if not 1 <= p <= ks.length:
                continue
            upper = V if p == a else slot_multiplication(ks, kt, e, form, p)
            lower = V if p - 1 == a else slot_multiplication(ks, kt, e, form, p - 1)
            if not (kt.boundary(p) @ upper) == (lower @ ks.boundary(p)):
                raise ChainMapError("d(e) does not commute with the Koszul differential",
                                    cell=(-size, a, d))
    return induced_map(src, dst, V.scaled(cube_sign(t, e)), check=check, cell=(-size, a, d))


def build_D_of_G(G: Graph, D: int, workers: int = 1,
                 cohomologies: dict[int, StateCohomology] | None = None) -> TriplyGradedTable:
    coh = cohomologies or compute_state_cohomologies(G, D, workers)
    layers = states_by_size(G)
    m = G.m
    entries: dict[tuple[int, int, int], int] = {}
    chain: dict[tuple[int, int, int], int] = {}

    def group_dim(s: int, a: int, d: int) -> int:
        sq = coh[s].group(a, d - bin(s).count("1"))
        return sq.dim if sq is not None else 0

    for d in range(D + 1):
        for a in range(min(d, m + G.n) + 1):
            sizes = {size: [group_dim(s, a, d) for s in layers[size]] for size in range(m + 1)}
            # delta[size]: states of size ``size`` -> size - 1, i.e. cube degree j=-size -> j+1
            delta: dict[int, RatMatrix] = {}
            for size in range(1, m + 1):
                dst_pos = {t: k for k, t in enumerate(layers[size - 1])}
                blocks = []
                for col, s in enumerate(layers[size]):
                    if sizes[size][col] == 0:
                        continue
                    for e in range(m):
                        if not s >> e & 1:
                            continue
                        M = _edge_map(G, coh, s, e, a, d)
                        if M is not None:
                            blocks.append((dst_pos[s & ~(1 << e)], col, M))
                delta[size] = block_matrix(sizes[size - 1], sizes[size], blocks)
            for size in range(2, m + 1):
                if not (delta[size - 1] @ delta[size]).is_zero():
                    raise DifferentialError("delta^2 != 0", cell=(-size, a, d))
            ranks = {size: rank(M) for size, M in delta.items()}
            for size in range(m + 1):
                n = sum(sizes[size])
                j = -size
                chain[(j, a, d)] = n
                entries[(j, a, d)] = n - ranks.get(size, 0) - ranks.get(size + 1, 0)
    return TriplyGradedTable(D=D, entries=entries, chain=chain)


def dichromatic_euler_check(G: Graph, D: int, table: TriplyGradedTable | None = None) -> EulerReport:
    table = table or build_D_of_G(G, D)
    series = dichromatic_D_series(G, D)
    rows = []
    for d in range(D + 1):
        for a in range(min(d, G.m + G.n) + 1):
            c, h = alternating_sums(table, a, d)
            rows.append((a, d, c, h, series.coeff(a, d)))
    return EulerReport(rows)
