"""Degreewise exact linear algebra over the rationals.

Matrices are stored sparsely by column.  Elimination is fraction-free: rows
are kept as primitive integer vectors, and a pivot is always the smallest
row index present, so every result is deterministic.  Because a vector is
only ever reduced against pivots inside its own support, block-diagonal
matrices are handled block by block without any explicit decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from heapq import heapify, heappop, heappush
from itertools import combinations_with_replacement
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .errors import ChainMapError, DifferentialError
from .graph import Graph, LinearForm, State, state_components

Vector = dict  # sparse: index -> int | Fraction


# -- monomial bases ---------------------------------------------------------------


@dataclass(frozen=True)
class MonomialBasis:
    """Degree-``d`` monomials in ``nvars`` variables, graded-lex with x_1 > x_2 > ..."""

    nvars: int
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    index: dict

    def __len__(self) -> int:
        return len(self.monomials)

    def __hash__(self):
        return hash((self.nvars, self.degree))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialBasis)
            and self.nvars == other.nvars
            and self.degree == other.degree
        )


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int) -> MonomialBasis:
    if degree < 0:
        monos: tuple = ()
    else:
        monos = []
        for combo in combinations_with_replacement(range(nvars), degree):
            exps = [0] * nvars
            for v in combo:
                exps[v] += 1
            monos.append(tuple(exps))
        monos = tuple(monos)
    return MonomialBasis(nvars, degree, monos, {m: i for i, m in enumerate(monos)})


@lru_cache(maxsize=None)
def _times_variable(nvars: int, degree: int, var: int) -> tuple[int, ...]:
    """Index in degree ``degree+1`` of ``mono * x_var`` for each ``mono`` of degree ``degree``."""
    src = monomial_basis(nvars, degree)
    dst = monomial_basis(nvars, degree + 1)
    out = []
    for mono in src.monomials:
        bumped = list(mono)
        bumped[var] += 1
        out.append(dst.index[tuple(bumped)])
    return tuple(out)


# -- matrices ---------------------------------------------------------------------


class RatMatrix:
    """Sparse exact matrix stored as a list of columns ``{row: value}``."""

    __slots__ = ("rows", "cols", "columns", "row_tag", "col_tag")

    def __init__(self, rows: int, cols: int, columns: list[Vector] | None = None,
                 row_tag: str = "", col_tag: str = ""):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count does not match matrix width")
        self.columns = columns
        self.row_tag = row_tag
        self.col_tag = col_tag

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int, scale=1) -> "RatMatrix":
        return cls(size, size, [{i: scale} for i in range(size)] if scale else None)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, row in enumerate(dense):
            for j, x in enumerate(row):
                if x:
                    columns[j][i] = x
        return cls(rows, cols, columns)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def apply(self, vec: Vector) -> Vector:
        out: dict = {}
        for j, x in vec.items():
            for i, y in self.columns[j].items():
                out[i] = out.get(i, 0) + x * y
        return {i: x for i, x in out.items() if x}

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RatMatrix(self.rows, other.cols, [self.apply(c) for c in other.columns])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            for i, x in b.items():
                c[i] = c.get(i, 0) + x
            cols.append({i: x for i, x in c.items() if x})
        return RatMatrix(self.rows, self.cols, cols)

    def __neg__(self) -> "RatMatrix":
        return self.scaled(-1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scaled(self, c) -> "RatMatrix":
        if not c:
            return RatMatrix.zero(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols, [{i: c * x for i, x in col.items()} for col in self.columns])

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {i: x for i, x in a.items() if x} == {i: x for i, x in b.items() if x}
            for a, b in zip(self.columns, other.columns)
        )

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "row_basis": self.row_tag,
            "col_basis": self.col_tag,
            "entries": [
                {"i": i, "j": j, "value": str(x)}
                for j, col in enumerate(self.columns)
                for i, x in sorted(col.items())
            ],
        }


def _integral(vec: Vector) -> tuple[dict[int, int], int]:
    """Clear denominators; returns the integer vector and the factor applied."""
    den = 1
    for x in vec.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return {i: int(x) for i, x in vec.items() if x}, 1
    return {i: int(x * den) for i, x in vec.items() if x}, den


def _content(*vecs: dict[int, int]) -> int:
    g = 0
    for v in vecs:
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _divide(vec: dict[int, int], g: int) -> dict[int, int]:
    return {i: x // g for i, x in vec.items()}


class _Echelon:
    """Row echelon basis keyed by pivot index, with optional companion tags.

    ``rows[p]`` is a primitive integer vector whose smallest index is ``p``
    and whose entry at ``p`` is positive.  ``tags[p]`` is an integer
    combination carried alongside the row (its meaning is set by the caller).
    """

    __slots__ = ("rows", "tags")

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}
        self.tags: dict[int, dict[int, int]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict[int, int], tag: dict[int, int] | None = None, tag_sign: int = -1):
        """Reduce in place; returns ``(vec, tag, scale)``.

        Each step replaces ``vec`` by ``p*vec - x*row`` and ``tag`` by
        ``p*tag + tag_sign*x*row_tag``.
        """
        rows = self.rows
        heap = list(vec)
        heapify(heap)
        scale = 1
        while heap:
            c = heappop(heap)
            x = vec.get(c)
            if x is None:
                continue
            row = rows.get(c)
            if row is None:
                continue
            p = row[c]
            g = gcd(p, x)
            pm, xm = p // g, x // g
            if pm != 1:
                for k in vec:
                    vec[k] *= pm
                if tag is not None:
                    for k in tag:
                        tag[k] *= pm
                scale *= pm
            for k, y in row.items():
                old = vec.get(k)
                if old is None:
                    vec[k] = -xm * y
                    heappush(heap, k)
                else:
                    new = old - xm * y
                    if new:
                        vec[k] = new
                    else:
                        del vec[k]
            if tag is not None:
                rtag = self.tags.get(c)
                if rtag:
                    for k, y in rtag.items():
                        new = tag.get(k, 0) + tag_sign * xm * y
                        if new:
                            tag[k] = new
                        else:
                            tag.pop(k, None)
        return vec, tag, scale

    def insert(self, vec: dict[int, int], tag: dict[int, int] | None = None) -> int:
        """Add a nonzero reduced vector as a new pivot row; returns the pivot."""
        p = min(vec)
        if vec[p] < 0:
            vec = {k: -x for k, x in vec.items()}
            if tag is not None:
                tag = {k: -x for k, x in tag.items()}
        g = _content(vec, tag) if tag is not None else _content(vec)
        if g > 1:
            vec = _divide(vec, g)
            if tag is not None:
                tag = _divide(tag, g)
        self.rows[p] = vec
        if tag is not None:
            self.tags[p] = tag
        return p


def _normalized(vec: dict[int, int]) -> dict[int, int]:
    """Primitive with first nonzero entry positive."""
    if not vec:
        return vec
    g = _content(vec)
    if vec[min(vec)] < 0:
        g = -g
    return {k: x // g for k, x in sorted(vec.items())}


def _column_elimination(A: RatMatrix, want_kernel: bool):
    ech = _Echelon()
    kernel = []
    for j, col in enumerate(A.columns):
        vec, s = _integral(col)
        tag = {j: s} if want_kernel else None
        if vec:
            # tag tracks vec = sum tag[k] * column_k
            vec, tag, _ = ech.reduce(vec, tag, tag_sign=-1)
        if vec:
            ech.insert(vec, tag)
        elif want_kernel:
            kernel.append(_normalized(tag))
    return ech, kernel


def rank(A: RatMatrix) -> int:
    ech, _ = _column_elimination(A, want_kernel=False)
    return len(ech)


def kernel_basis(A: RatMatrix) -> list[dict[int, int]]:
    """Primitive integer basis of the right kernel."""
    _, kernel = _column_elimination(A, want_kernel=True)
    return kernel


def image_basis(A: RatMatrix) -> list[dict[int, int]]:
    """Primitive integer basis of the column space, in echelon form."""
    ech, _ = _column_elimination(A, want_kernel=False)
    return [dict(sorted(ech.rows[p].items())) for p in sorted(ech.rows)]


def densify(vec: Vector, size: int) -> list:
    out = [0] * size
    for i, x in vec.items():
        out[i] = x
    return out


# -- subquotients -----------------------------------------------------------------


class Subquotient:
    """``ker(A_out) / im(A_in)`` with explicit representatives.

    ``reps`` are integer cycles independent modulo boundaries; ``project``
    returns the coordinates of any cycle in that basis.
    """

    def __init__(self, ambient: int, cycles: list, boundaries: list, reps: list, echelon: _Echelon):
        self.ambient = ambient
        self.cycles = cycles
        self.boundaries = boundaries
        self.reps = reps
        self._echelon = echelon

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, vec: Vector) -> list[Fraction]:
        u, sigma = _integral(vec)
        acc: dict[int, int] = {}
        u, acc, scale = self._echelon.reduce(u, acc, tag_sign=1)
        if u:
            raise ChainMapError("vector is not a cycle of this subquotient")
        sigma *= scale
        coords = [Fraction(0)] * self.dim
        for k, x in acc.items():
            coords[k] = Fraction(x, sigma)
        return coords

    def in_boundaries(self, vec: Vector) -> bool:
        try:
            return not any(self.project(vec))
        except ChainMapError:
            return False

    def projection_matrix(self) -> RatMatrix:
        """Coordinates of each cycle basis vector in the representative basis."""
        cols = []
        for z in self.cycles:
            cols.append({k: x for k, x in enumerate(self.project(z)) if x})
        return RatMatrix(self.dim, len(self.cycles), cols)


def subquotient(A_in: RatMatrix, A_out: RatMatrix, check: bool = True) -> Subquotient:
    if A_in.rows != A_out.cols:
        raise ValueError(f"incompatible shapes: in {A_in.shape}, out {A_out.shape}")
    if check and not (A_out @ A_in).is_zero():
        raise DifferentialError("composite of consecutive maps is nonzero")
    cycles = kernel_basis(A_out)
    ech = _Echelon()
    boundaries = []
    for col in A_in.columns:
        vec, _ = _integral(col)
        if not vec:
            continue
        vec, _, _ = ech.reduce(vec)
        if vec:
            p = ech.insert(vec, {})
            boundaries.append(dict(sorted(ech.rows[p].items())))
    reps = []
    # cycles minus boundaries counts the representatives still to be found
    missing = len(cycles) - len(boundaries)
    for z in cycles:
        if missing <= 0:
            break
        vec, _, _ = ech.reduce(dict(z))
        if vec:
            k = len(reps)
            p = ech.insert(vec)
            # the stored row itself becomes representative k
            ech.tags[p] = {k: 1}
            reps.append(dict(sorted(ech.rows[p].items())))
            missing -= 1
    return Subquotient(A_in.rows, cycles, boundaries, reps, ech)


def induced_map(sq_from: Subquotient, sq_to: Subquotient, C: RatMatrix, check: bool = True,
                cell=None) -> RatMatrix:
    if C.cols != sq_from.ambient or C.rows != sq_to.ambient:
        raise ValueError(f"map of shape {C.shape} does not fit ambient spaces")
    cols = []
    for rep in sq_from.reps:
        image = C.apply(rep)
        try:
            coords = sq_to.project(image)
        except ChainMapError:
            raise ChainMapError("map sends a cycle outside the target cycles", cell) from None
        cols.append({k: x for k, x in enumerate(coords) if x})
    if check:
        for b in sq_from.boundaries:
            if not sq_to.in_boundaries(C.apply(b)):
                raise ChainMapError("map sends a boundary outside the target boundaries", cell)
    return RatMatrix(sq_to.dim, sq_from.dim, cols)


# -- polynomial-ring slices -------------------------------------------------------


@dataclass(frozen=True)
class QuotientSlice:
    """Degree-``d`` part of ``R / I_s`` realised on one variable per component."""

    state: State
    d: int
    reps: tuple[int, ...]
    basis: MonomialBasis

    @property
    def dim(self) -> int:
        return len(self.basis)


def quotient_slice(G: Graph, s, d: int) -> QuotientSlice:
    st = s if isinstance(s, State) else state_components(G, s)
    return QuotientSlice(st, d, st.reps, monomial_basis(len(st.reps), d))


def reduce_map(G: Graph, s, s2, d: int) -> RatMatrix:
    """The quotient ``R/I_s -> R/I_s2`` in degree ``d`` for ``s ⊆ s2``."""
    src = s if isinstance(s, State) else state_components(G, s)
    dst = s2 if isinstance(s2, State) else state_components(G, s2)
    if src.members & ~dst.members:
        raise ValueError("source state is not contained in the target state")
    rep_dst = dst.rep_of()
    dst_pos = {r: i for i, r in enumerate(dst.reps)}
    # variable of src (by position) -> variable of dst
    var_map = [dst_pos[rep_dst[r]] for r in src.reps]
    src_basis = monomial_basis(len(src.reps), d)
    dst_basis = monomial_basis(len(dst.reps), d)
    cols = []
    for mono in src_basis.monomials:
        exps = [0] * len(dst.reps)
        for var, e in enumerate(mono):
            exps[var_map[var]] += e
        cols.append({dst_basis.index[tuple(exps)]: 1})
    return RatMatrix(len(dst_basis), len(src_basis), cols,
                     row_tag=f"R_{dst.members:b}[{d}]", col_tag=f"R_{src.members:b}[{d}]")


def mult_matrix(form: LinearForm, nvars: int, d: int) -> RatMatrix:
    """Multiplication by ``form`` from degree ``d-1`` to degree ``d``."""
    src = monomial_basis(nvars, d - 1)
    dst = monomial_basis(nvars, d)
    if form.zero or len(src) == 0:
        return RatMatrix.zero(len(dst), len(src))
    plus = _times_variable(nvars, d - 1, form.plus - 1)
    minus = _times_variable(nvars, d - 1, form.minus - 1)
    cols = [{plus[i]: 1, minus[i]: -1} for i in range(len(src))]
    return RatMatrix(len(dst), len(src), cols, row_tag=f"R[{d}]", col_tag=f"R[{d - 1}]")


def expected_slice_dim(k: int, d: int) -> int:
    if k == 0:
        return 1 if d == 0 else 0
    return comb(d + k - 1, k - 1)


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Iterable[tuple[int, int, RatMatrix]]) -> RatMatrix:
    """Assemble ``(row_block, col_block, matrix)`` triples into one sparse matrix."""
    row_off = [0]
    for r in row_sizes:
        row_off.append(row_off[-1] + r)
    col_off = [0]
    for c in col_sizes:
        col_off.append(col_off[-1] + c)
    columns: list[dict] = [{} for _ in range(col_off[-1])]
    for bi, bj, M in blocks:
        if M.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block ({bi}, {bj}) has shape {M.shape}")
        ro, co = row_off[bi], col_off[bj]
        for j, col in enumerate(M.columns):
            target = columns[co + j]
            for i, x in col.items():
                new = target.get(ro + i, 0) + x
                if new:
                    target[ro + i] = new
                else:
                    target.pop(ro + i, None)
    return RatMatrix(row_off[-1], col_off[-1], columns)
