"""Koszul complexes of linear forms and the per-state cohomology H(s).

A Koszul complex on factors ``f_1..f_r`` (each ``R{-1,1} -> R`` with map a
linear form, possibly zero) is stored one q-degree at a time.  Position ``p``
is the span of the ``p``-subsets ``T`` of factors, each carrying the degree
``d - p`` polynomials; an element there has bidegree ``(-p, d)``, so the
t-exponent of the homology is exactly the Koszul position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .arith import BigradedSeries, geom_pow, series_mul, tq_binom_pow
from .errors import BudgetExceeded
from .graph import Graph, LinearForm, State, edge_form, state_components
from .linalg import RatMatrix, Subquotient, _times_variable, monomial_basis, subquotient

MAX_KOSZUL_FACTORS = 14

CONTRACTED = "contracted"
DELETED = "deleted"
VERTEX = "vertex"


@dataclass(frozen=True)
class KoszulFactor:
    """One two-term factor ``R{-1,1} -> R``; ``form`` is its map."""

    kind: str
    form: LinearForm
    label: int

    @property
    def is_zero(self) -> bool:
        return self.form.zero


_ZERO = LinearForm(0, 0, zero=True)


@lru_cache(maxsize=None)
def _subsets(r: int, p: int) -> tuple[tuple[tuple[int, ...], ...], dict]:
    subs = tuple(combinations(range(r), p))
    return subs, {T: i for i, T in enumerate(subs)}


class KoszulComplexSlice:
    """The q-degree ``d`` part of the Koszul complex on ``factors`` over ``nvars`` variables."""

    def __init__(self, factors: tuple[KoszulFactor, ...], nvars: int, d: int):
        self.factors = tuple(factors)
        self.nvars = nvars
        self.d = d
        self._cache: dict[int, RatMatrix] = {}

    @property
    def length(self) -> int:
        return len(self.factors)

    def block_size(self, p: int) -> int:
        return len(monomial_basis(self.nvars, self.d - p))

    def dim(self, p: int) -> int:
        if p < 0 or p > self.length:
            return 0
        return len(_subsets(self.length, p)[0]) * self.block_size(p)

    def boundary(self, p: int) -> RatMatrix:
        """Differential from position ``p`` to ``p - 1``."""
        if p in self._cache:
            return self._cache[p]
        rows, cols = self.dim(p - 1), self.dim(p)
        if rows == 0 or cols == 0:
            M = RatMatrix.zero(rows, cols)
        else:
            subs, _ = _subsets(self.length, p)
            _, target_index = _subsets(self.length, p - 1)
            nsrc = self.block_size(p)
            ndst = self.block_size(p - 1)
            deg = self.d - p
            columns = []
            for T in subs:
                pieces = []
                for pos, j in enumerate(T):
                    form = self.factors[j].form
                    if form.zero:
                        continue
                    sign = -1 if pos % 2 else 1
                    base = target_index[T[:pos] + T[pos + 1:]] * ndst
                    plus = _times_variable(self.nvars, deg, form.plus - 1)
                    minus = _times_variable(self.nvars, deg, form.minus - 1)
                    pieces.append((base, sign, plus, minus))
                # distinct j give distinct T - {j}, so entries never collide
                for mi in range(nsrc):
                    col: dict[int, int] = {}
                    for base, sign, plus, minus in pieces:
                        col[base + plus[mi]] = sign
                        col[base + minus[mi]] = -sign
                    columns.append(col)
            M = RatMatrix(rows, cols, columns, row_tag=f"K[{p - 1}]", col_tag=f"K[{p}]")
        self._cache[p] = M
        return M

    def cohomology(self, p: int) -> Subquotient:
        return subquotient(self.boundary(p + 1), self.boundary(p))


def slot_multiplication(source: KoszulComplexSlice, target: KoszulComplexSlice,
                        factor: int, form: LinearForm, p: int) -> RatMatrix:
    """Multiply by ``form`` on the left slot of ``factor``, zero on its right slot, identity elsewhere.

    Maps position ``p`` of ``source`` (q-degree ``d``) to position ``p`` of
    ``target`` (q-degree ``d + 1``).
    """
    rows, cols = target.dim(p), source.dim(p)
    if rows == 0 or cols == 0 or form.zero:
        return RatMatrix.zero(rows, cols)
    subs, _ = _subsets(source.length, p)
    nsrc = source.block_size(p)
    ndst = target.block_size(p)
    deg = source.d - p
    plus = _times_variable(source.nvars, deg, form.plus - 1)
    minus = _times_variable(source.nvars, deg, form.minus - 1)
    columns = []
    for ti, T in enumerate(subs):
        if factor in T:
            base = ti * ndst
            columns.extend({base + plus[mi]: 1, base + minus[mi]: -1} for mi in range(nsrc))
        else:
            columns.extend({} for _ in range(nsrc))
    return RatMatrix(rows, cols, columns)


def state_factors(G: Graph, s: int, vertices: bool = True) -> tuple[KoszulFactor, ...]:
    """Edges in input order (form ``m_e`` if contracted, zero otherwise), then vertices."""
    factors = []
    for e in range(G.m):
        if s >> e & 1:
            factors.append(KoszulFactor(CONTRACTED, edge_form(G, e), e))
        else:
            factors.append(KoszulFactor(DELETED, _ZERO, e))
    if vertices:
        factors.extend(KoszulFactor(VERTEX, _ZERO, v) for v in range(1, G.n + 1))
    return tuple(factors)


def check_koszul_budget(G: Graph, vertices: bool = True) -> None:
    size = G.m + (G.n if vertices else 0)
    if size > MAX_KOSZUL_FACTORS:
        raise BudgetExceeded("m+n" if vertices else "m", size, MAX_KOSZUL_FACTORS)


def koszul_state(G: Graph, s: int, D: int, vertices: bool = True) -> list[KoszulComplexSlice]:
    """Slices of the Koszul complex of state ``s`` for q-degrees ``0..D``."""
    check_koszul_budget(G, vertices)
    factors = state_factors(G, s, vertices)
    return [KoszulComplexSlice(factors, G.n, d) for d in range(D + 1)]


@dataclass
class StateCohomology:
    state: State
    D: int
    slices: list[KoszulComplexSlice]
    groups: dict[tuple[int, int], Subquotient] = field(default_factory=dict)
    series: BigradedSeries | None = None
    prime_series: BigradedSeries | None = None

    def group(self, a: int, d: int) -> Subquotient | None:
        return self.groups.get((a, d))


def _cohomology_groups(slices: list[KoszulComplexSlice]) -> dict[tuple[int, int], Subquotient]:
    groups = {}
    for sl in slices:
        for a in range(min(sl.d, sl.length) + 1):
            groups[(a, sl.d)] = sl.cohomology(a)
    return groups


def _series_of(groups: dict[tuple[int, int], Subquotient], D: int, A: int) -> BigradedSeries:
    return BigradedSeries(D, A, {key: sq.dim for key, sq in groups.items()})


def state_cohomology(G: Graph, s: int, D: int, prime: bool = True) -> StateCohomology:
    """Cohomology H(s) of the full Koszul complex (edges and vertices), degrees ``<= D``.

    With ``prime`` set, the cohomology H'(s) of the edge-only complex is
    recomputed separately and its series stored as ``prime_series``.
    """
    st = state_components(G, s)
    if D < 0:
        return StateCohomology(st, D, [], {}, None, None)
    slices = koszul_state(G, s, D)
    groups = _cohomology_groups(slices)
    result = StateCohomology(st, D, slices, groups, _series_of(groups, D, G.m + G.n))
    if prime:
        prime_groups = _cohomology_groups(koszul_state(G, s, D, vertices=False))
        result.prime_series = _series_of(prime_groups, D, G.m)
    return result


def closed_form_series(G: Graph, k: int, D: int) -> tuple[BigradedSeries, BigradedSeries]:
    """Closed forms for H'(s) and H(s) of a state with ``k`` components."""
    prime = series_mul(tq_binom_pow(k - G.n + G.m, D), geom_pow(k, D))
    full = series_mul(series_mul(tq_binom_pow(G.m, D), tq_binom_pow(k, D)), geom_pow(k, D))
    return prime, full


@dataclass
class ClosedFormReport:
    state: int
    k: int
    passed: bool
    failures: list[tuple[str, int, int, int, int]]  # (which, a, d, computed, expected)


def closed_form_check(G: Graph, s: int, D: int, coh: StateCohomology | None = None) -> ClosedFormReport:
    if coh is None or coh.prime_series is None:
        coh = state_cohomology(G, s, D, prime=True)
    k = coh.state.k
    want_prime, want_full = closed_form_series(G, k, D)
    failures = []
    for which, got, want in (("H'", coh.prime_series, want_prime), ("H", coh.series, want_full)):
        keys = set(got.coeffs) | set(want.coeffs)
        for a, d in sorted(keys):
            if got.coeff(a, d) != want.coeff(a, d):
                failures.append((which, a, d, got.coeff(a, d), want.coeff(a, d)))
    return ClosedFormReport(s, k, not failures, failures)
