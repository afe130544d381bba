"""Exact polynomials and q-truncated bigraded power series.

A :class:`BigradedSeries` stores integer coefficients ``c[a][d]`` of
``t^{-a} q^d`` for ``0 <= d <= D``; everything past ``q^D`` is discarded.
Rational numbers are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping


class TruncationMismatch(ValueError):
    pass


def _clean(coeffs: Mapping, D: int | None = None) -> dict:
    return {k: v for k, v in coeffs.items() if v and (D is None or k[1] <= D)}


@dataclass(frozen=True)
class BigradedSeries:
    D: int
    A: int = 0
    coeffs: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.D < 0:
            raise ValueError("truncation bound must be non-negative")
        cleaned = _clean(self.coeffs, self.D)
        for a, d in cleaned:
            if a < 0 or d < 0 or a > self.A:
                raise ValueError(f"term t^-{a} q^{d} outside the series support (A={self.A})")
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def one(cls, D: int) -> "BigradedSeries":
        return cls(D, 0, {(0, 0): 1})

    @classmethod
    def from_q_list(cls, values: Iterable[int], D: int | None = None) -> "BigradedSeries":
        values = list(values)
        if D is None:
            D = len(values) - 1
        return cls(D, 0, {(0, d): c for d, c in enumerate(values) if d <= D})

    def coeff(self, a: int, d: int) -> int:
        return self.coeffs.get((a, d), 0)

    def row(self, a: int = 0) -> list[int]:
        return [self.coeff(a, d) for d in range(self.D + 1)]

    def __eq__(self, other):
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return self.D == other.D and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.D, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __neg__(self):
        return series_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, BigradedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def shift(self, a: int = 0, d: int = 0) -> "BigradedSeries":
        """Multiply by ``t^{-a} q^d``."""
        return BigradedSeries(
            self.D, self.A + a, {(x + a, y + d): c for (x, y), c in self.coeffs.items()}
        )

    def truncate(self, D: int) -> "BigradedSeries":
        return BigradedSeries(D, self.A, self.coeffs)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "terms": [{"a": a, "d": d, "c": c} for (a, d), c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "BigradedSeries":
        coeffs = {(t["a"], t["d"]): t["c"] for t in obj["terms"]}
        A = max((a for a, _ in coeffs), default=0)
        return cls(obj["D"], A, coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return f"0 + O(q^{self.D + 1})"
        parts = []
        for (a, d), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            mono = "·".join(
                s for s in (
                    "" if a == 0 else ("t^-1" if a == 1 else f"t^-{a}"),
                    "" if d == 0 else ("q" if d == 1 else f"q^{d}"),
                ) if s
            )
            parts.append(_signed_term(c, mono, sep="·"))
        return _join_terms(parts) + f" + O(q^{self.D + 1})"


def _check_D(x: BigradedSeries, y: BigradedSeries) -> None:
    if x.D != y.D:
        raise TruncationMismatch(f"mismatched truncation bounds {x.D} and {y.D}")


def series_add(x: BigradedSeries, y: BigradedSeries) -> BigradedSeries:
    _check_D(x, y)
    out = dict(x.coeffs)
    for k, c in y.coeffs.items():
        out[k] = out.get(k, 0) + c
    return BigradedSeries(x.D, max(x.A, y.A), out)


def series_scale(x: BigradedSeries, c: int) -> BigradedSeries:
    return BigradedSeries(x.D, x.A, {k: c * v for k, v in x.coeffs.items()})


def series_mul(x: BigradedSeries, y: BigradedSeries) -> BigradedSeries:
    _check_D(x, y)
    D = x.D
    out: dict[tuple[int, int], int] = {}
    for (a1, d1), c1 in x.coeffs.items():
        for (a2, d2), c2 in y.coeffs.items():
            d = d1 + d2
            if d > D:
                continue
            key = (a1 + a2, d)
            out[key] = out.get(key, 0) + c1 * c2
    return BigradedSeries(D, x.A + y.A, out)


def geom_pow(k: int, D: int) -> BigradedSeries:
    """Truncation of ``(1 - q)^{-k}``."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    if k == 0:
        return BigradedSeries.one(D)
    return BigradedSeries(D, 0, {(0, d): comb(d + k - 1, k - 1) for d in range(D + 1)})


def tq_binom_pow(k: int, D: int) -> BigradedSeries:
    """Truncation of ``(1 + t^{-1} q)^k``."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return BigradedSeries(D, k, {(a, a): comb(k, a) for a in range(min(k, D) + 1)})


def one_minus_q(D: int) -> BigradedSeries:
    return BigradedSeries(D, 0, {(0, 0): 1, (0, 1): -1})


# -- univariate integer polynomials ------------------------------------------------


def _signed_term(c, mono: str, sep: str = "") -> tuple[int, str]:
    mag = abs(c)
    if not mono:
        body = str(mag)
    elif mag == 1:
        body = mono
    else:
        body = f"{mag}{sep}{mono}"
    return (-1 if c < 0 else 1, body)


def _join_terms(parts: list[tuple[int, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign < 0 else "") + body
    for sign, body in parts[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


@dataclass(frozen=True)
class UniPoly:
    """Integer polynomial in the colour-count variable, ``coeffs[i]`` of ``λ^i``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "UniPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return unipoly_eval(self, x)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(tuple(out))

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else ("λ" if i == 1 else f"λ^{i}")
                parts.append(_signed_term(c, mono))
        return _join_terms(parts)

    def to_json(self) -> dict:
        return {"variable": "lambda", "coeffs": list(self.coeffs)}


def unipoly_eval(p: UniPoly, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def unipoly_from_points(pairs: Iterable[tuple[int, int]]) -> UniPoly:
    """Lagrange interpolation; raises if the interpolant is not integral."""
    pts = [(int(x), int(y)) for x, y in pairs]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissae must be distinct")
    n = len(pts)
    total = [Fraction(0)] * max(n, 1)
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            # basis *= (λ - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        for k, c in enumerate(basis):
            total[k] += c * yi / denom
    if any(c.denominator != 1 for c in total):
        raise ValueError("non-integral interpolant")
    return UniPoly(tuple(int(c) for c in total))


# -- two-variable dichromatic polynomials -----------------------------------------


@dataclass(frozen=True)
class BiPoly:
    """Integer polynomial in ``q`` and ``v``: ``terms[(i, k)]`` is the coefficient of ``q^i v^k``."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: int(v) for k, v in self.terms.items() if v})

    @classmethod
    def v_power(cls, k: int) -> "BiPoly":
        return cls({(0, k): 1})

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], int] = {}
        for (i1, k1), c1 in self.terms.items():
            for (i2, k2), c2 in other.terms.items():
                key = (i1 + i2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    def times_q(self, power: int = 1) -> "BiPoly":
        return BiPoly({(i + power, k): c for (i, k), c in self.terms.items()})

    def __str__(self) -> str:
        parts = []
        for (i, k), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            qs = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            vs = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            mono = "·".join(s for s in (qs, vs) if s)
            parts.append(_signed_term(c, mono))
        return _join_terms(parts)

    def to_json(self) -> dict:
        return {
            "variables": ["q", "v"],
            "terms": [{"q": i, "v": k, "c": c} for (i, k), c in sorted(self.terms.items())],
        }
