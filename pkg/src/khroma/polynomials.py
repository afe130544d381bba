"""Chromatic and dichromatic polynomials, each by two independent routes.

The colour-count variable of the chromatic polynomial is called ``λ`` here;
``q`` is reserved for the grading variable of the series.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import (
    BigradedSeries,
    BiPoly,
    UniPoly,
    geom_pow,
    series_add,
    series_mul,
    series_scale,
    tq_binom_pow,
)
from .errors import BudgetExceeded, ConsistencyError
from .graph import Graph, canonical_key, contract_edge, delete_edge, state_profile

MAX_STATE_SUM_EDGES = 24
COLORING_BUDGET = 10**7


@dataclass(frozen=True)
class ChromaticResult:
    classical: UniPoly
    series: BigradedSeries


@dataclass(frozen=True)
class DichromaticResult:
    poly: BiPoly
    dseries: BigradedSeries


def _check_state_budget(G: Graph) -> None:
    if G.m > MAX_STATE_SUM_EDGES:
        raise BudgetExceeded("m", G.m, MAX_STATE_SUM_EDGES)


def _last_non_loop(edges) -> int | None:
    for e in range(len(edges) - 1, -1, -1):
        i, j = edges[e]
        if i != j:
            return e
    return None


@lru_cache(maxsize=None)
def _chromatic_canon(n: int, edges: tuple[tuple[int, int], ...]) -> UniPoly:
    if any(i == j for i, j in edges):
        return UniPoly()
    e = _last_non_loop(edges)
    if e is None:
        return UniPoly.monomial(n)
    G = Graph(n, edges)
    return _chromatic_canon(*canonical_key(delete_edge(G, e))) - _chromatic_canon(
        *canonical_key(contract_edge(G, e))
    )


def chromatic_classical(G: Graph) -> UniPoly:
    """χ_G(λ) by memoised deletion-contraction."""
    return _chromatic_canon(*canonical_key(G))


def count_colorings(G: Graph, colors: int, budget: int = COLORING_BUDGET) -> int:
    if colors < 0:
        raise ValueError("colour count must be non-negative")
    if any(i == j for i, j in G.edges):
        return 0
    if colors**G.n > budget:
        raise BudgetExceeded("colors^n", colors**G.n, budget)
    edges = [(i - 1, j - 1) for i, j in G.edges]
    count = 0
    for coloring in product(range(colors), repeat=G.n):
        if all(coloring[i] != coloring[j] for i, j in edges):
            count += 1
    return count


def _chromatic_state_sum(G: Graph, D: int) -> BigradedSeries:
    total = BigradedSeries(D)
    for (size, k), count in state_profile(G).items():
        total = series_add(total, series_scale(geom_pow(k, D), (-1) ** size * count))
    return total


def _substitute_geometric(p: UniPoly, D: int) -> BigradedSeries:
    total = BigradedSeries(D)
    for i, c in enumerate(p.coeffs):
        total = series_add(total, series_scale(geom_pow(i, D), c))
    return total


def chromatic_series(G: Graph, D: int) -> BigradedSeries:
    """Expansion of χ_G(1/(1-q)), by state sum, cross-checked by substitution."""
    _check_state_budget(G)
    by_states = _chromatic_state_sum(G, D)
    by_recursion = _substitute_geometric(chromatic_classical(G), D)
    if by_states != by_recursion:
        raise ConsistencyError(
            f"chromatic series mismatch: state sum {by_states} vs substitution {by_recursion}"
        )
    return by_states


def chromatic(G: Graph, D: int) -> ChromaticResult:
    return ChromaticResult(chromatic_classical(G), chromatic_series(G, D))


@lru_cache(maxsize=None)
def _dichromatic_canon(n: int, edges: tuple[tuple[int, int], ...]) -> BiPoly:
    for e, (i, j) in enumerate(edges):
        if i == j:
            rest = _dichromatic_canon(*canonical_key(delete_edge(Graph(n, edges), e)))
            return rest - rest.times_q()
    e = _last_non_loop(edges)
    if e is None:
        return BiPoly.v_power(n)
    G = Graph(n, edges)
    deleted = _dichromatic_canon(*canonical_key(delete_edge(G, e)))
    contracted = _dichromatic_canon(*canonical_key(contract_edge(G, e)))
    return deleted - contracted.times_q()


def dichromatic_recursive(G: Graph) -> BiPoly:
    return _dichromatic_canon(*canonical_key(G))


def dichromatic_state_sum(G: Graph) -> BiPoly:
    _check_state_budget(G)
    terms: dict[tuple[int, int], int] = {}
    for (size, k), count in state_profile(G).items():
        key = (size, k)
        terms[key] = terms.get(key, 0) + (-1) ** size * count
    return BiPoly(terms)


def dichromatic_poly(G: Graph) -> BiPoly:
    by_states = dichromatic_state_sum(G)
    by_recursion = dichromatic_recursive(G)
    if by_states != by_recursion:
        raise ConsistencyError(
            f"dichromatic mismatch: state sum {by_states} vs recursion {by_recursion}"
        )
    return by_states


def dichromatic_D_series(G: Graph, D: int) -> BigradedSeries:
    """``(1 + t^{-1}q)^m · P_G(q, (1 + t^{-1}q)/(1 - q))``, truncated at ``q^D``."""
    poly = dichromatic_poly(G)
    v_series = series_mul(tq_binom_pow(1, D), geom_pow(1, D))
    powers = [BigradedSeries.one(D)]
    top = max((k for _, k in poly.terms), default=0)
    for _ in range(top):
        powers.append(series_mul(powers[-1], v_series))
    total = BigradedSeries(D)
    for (i, k), c in poly.terms.items():
        total = series_add(total, series_scale(powers[k].shift(d=i), c))
    return series_mul(tq_binom_pow(G.m, D), total)


def dichromatic(G: Graph, D: int) -> DichromaticResult:
    return DichromaticResult(dichromatic_poly(G), dichromatic_D_series(G, D))
