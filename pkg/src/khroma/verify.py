"""Aggregate checks: dimension formulas, Euler identities, cross-construction and invariance."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chromatic import EulerReport, chromatic_euler_check, chromatic_homology, koszul_chromatic
from .dichromatic import build_D_of_G, compute_state_cohomologies, dichromatic_euler_check
from .errors import ChainMapError, ConsistencyError, DifferentialError
from .graph import Graph, relabel_vertices, reorder_edges
from .koszul import check_koszul_budget, closed_form_check
from .linalg import expected_slice_dim, quotient_slice


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    reports: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def check_quotient_dims(G: Graph, D: int) -> CheckResult:
    bad = []
    for s in range(1 << G.m):
        for d in range(D + 1):
            sl = quotient_slice(G, s, d)
            want = expected_slice_dim(sl.state.k, d)
            if sl.dim != want:
                bad.append((s, d, sl.dim, want))
    detail = f"{1 << G.m} states, d<={D}" if not bad else f"state {bad[0][0]:b} d={bad[0][1]}: {bad[0][2]} != {bad[0][3]}"
    return CheckResult("quotient dimensions", not bad, detail)


def check_state_closed_form(G: Graph, D: int, cohomologies: dict | None = None) -> CheckResult:
    name = "state cohomology closed form"
    check_koszul_budget(G)
    coh = cohomologies or {}

    def run():
        reports = [closed_form_check(G, s, D, coh.get(s)) for s in range(1 << G.m)]
        failed = [r for r in reports if not r.passed]
        if failed:
            which, a, d, got, want = failed[0].failures[0]
            detail = f"state {failed[0].state:b}: {which} at (a={a}, d={d}) is {got}, expected {want}"
        else:
            detail = f"{len(reports)} states, d<={D}"
        return CheckResult(name, not failed, detail, reports)

    return _guarded(name, run)


def _euler_result(name: str, report: EulerReport) -> CheckResult:
    bad = report.failures()
    if bad:
        a, d, c, h, p = bad[0]
        detail = f"cell (a={a}, d={d}): chain {c}, homology {h}, polynomial {p}"
    else:
        detail = f"{len(report.rows)} bidegrees"
    return CheckResult(name, not bad, detail, [report])


def _guarded(name: str, fn) -> CheckResult:
    try:
        return fn()
    except (DifferentialError, ChainMapError) as exc:
        return CheckResult(name, False, f"{exc}")
    except ConsistencyError as exc:
        return CheckResult(name, False, f"oracle mismatch: {exc}")


def check_chromatic_euler(G: Graph, D: int) -> CheckResult:
    name = "chromatic Euler characteristic"
    return _guarded(name, lambda: _euler_result(name, chromatic_euler_check(G, D)))


def check_dichromatic_euler(G: Graph, D: int, workers: int = 1, cohomologies: dict | None = None) -> CheckResult:
    name = "dichromatic Euler characteristic"

    def run():
        table = build_D_of_G(G, D, workers=workers, cohomologies=cohomologies)
        return _euler_result(name, dichromatic_euler_check(G, D, table))

    return _guarded(name, run)


def check_cube_koszul(G: Graph, D: int) -> CheckResult:
    name = "cube vs Koszul chromatic homology"

    def run():
        cube = chromatic_homology(G, D)
        kos = koszul_chromatic(G, D)
        diff = sorted(k for k in set(cube.entries) | set(kos.entries) if cube.dim(*k) != kos.dim(*k))
        detail = f"{len(cube.entries)} nonzero cells" if not diff else (
            f"cell (i, a, d)={diff[0]}: cube {cube.dim(*diff[0])}, koszul {kos.dim(*diff[0])}")
        return CheckResult(name, not diff, detail)

    return _guarded(name, run)


def random_variants(G: Graph, seed: int, count: int = 5) -> list[tuple[str, Graph]]:
    """``count`` vertex relabellings followed by ``count`` edge reorderings."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        perm = list(range(1, G.n + 1))
        rng.shuffle(perm)
        out.append((f"relabel {perm}", relabel_vertices(G, perm)))
    for _ in range(count):
        order = list(range(G.m))
        rng.shuffle(order)
        out.append((f"reorder {order}", reorder_edges(G, order)))
    return out


def check_invariance(G: Graph, D: int, seed: int = 0, workers: int = 1,
                     dichromatic_D: int | None = None) -> CheckResult:
    name = "relabeling and edge-order invariance"
    dD = D if dichromatic_D is None else dichromatic_D

    def run():
        base_c = chromatic_homology(G, D)
        base_d = build_D_of_G(G, dD, workers=workers)
        for label, H in random_variants(G, seed):
            if not chromatic_homology(H, D).same_dims(base_c):
                return CheckResult(name, False, f"chromatic table changed under {label}")
            if not build_D_of_G(H, dD, workers=workers).same_dims(base_d):
                return CheckResult(name, False, f"dichromatic table changed under {label}")
        return CheckResult(name, True, f"seed {seed}, 10 variants")

    return _guarded(name, run)


def verify_graph(G: Graph, D: int = 6, seed: int = 0, workers: int = 1) -> list[CheckResult]:
    check_koszul_budget(G)
    # one pass over the states serves both the closed-form check and D(G)
    try:
        coh = compute_state_cohomologies(G, D, workers, full_range=True)
    except (DifferentialError, ChainMapError):
        coh = None
    return [
        check_quotient_dims(G, D),
        check_state_closed_form(G, D, coh),
        check_chromatic_euler(G, D),
        check_dichromatic_euler(G, D, workers, coh),
        check_cube_koszul(G, D),
        check_invariance(G, D, seed, workers),
    ]
