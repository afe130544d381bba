import pytest
from hypothesis import given, settings

from khroma.chromatic import (
    build_cube,
    chromatic_euler_check,
    chromatic_homology,
    cube_sign,
    koszul_chromatic,
)
from khroma.errors import BudgetExceeded
from khroma.graph import Graph, disjoint_union
from khroma.polynomials import chromatic_series

from conftest import CORPUS, load, small_graphs
from test_linalg import sym


def dense_homology(G: Graph, D: int) -> dict:
    """Cube homology dims from sympy ranks of the assembled differentials."""
    cube = build_cube(G, D)
    ranks = {}
    for d in range(D + 1):
        for i in range(G.m):
            M = cube.differential(i, d)
            ranks[(i, d)] = sym(M).rank() if M.rows and M.cols else 0
    out = {}
    for d in range(D + 1):
        for i in range(G.m + 1):
            dim = cube.chain_dim(i, d) - ranks.get((i, d), 0) - ranks.get((i - 1, d), 0)
            if dim:
                out[(i, 0, d)] = dim
    return out


def test_cube_sign():
    assert cube_sign(0b000, 2) == 1
    assert cube_sign(0b001, 2) == -1
    assert cube_sign(0b011, 2) == 1
    assert cube_sign(0b100, 2) == 1  # only members before e count


def test_single_edge_differential():
    cube = build_cube(load("P2"), 2)
    assert cube.differential(0, 1).to_dense() == [[1, 1]]
    assert cube.differential(0, 0).to_dense() == [[1]]


@pytest.mark.parametrize("name", list(CORPUS))
def test_degree_zero_differential(name):
    G = load(name)
    cube = build_cube(G, 0)
    assert all(cube.chain_dim(i, 0) == sum(1 for s in range(1 << G.m) if bin(s).count("1") == i)
               for i in range(G.m + 1))
    if G.m:
        M = cube.differential(0, 0)
        assert M.cols == 1 and len(M.columns[0]) == G.m


def test_path_homology():
    t = chromatic_homology(load("P2"), 4)
    assert [t.dim(0, 0, d) for d in range(5)] == [0, 1, 2, 3, 4]
    assert all(t.dim(1, 0, d) == 0 for d in range(5))


def test_loop_homology_vanishes():
    assert chromatic_homology(load("loop"), 6).entries == {}


def test_two_points():
    t = chromatic_homology(load("N2"), 2)
    assert t.entries == {(0, 0, 0): 1, (0, 0, 1): 2, (0, 0, 2): 3}


def test_empty_graph():
    t = chromatic_homology(Graph(0, ()), 3)
    assert t.entries == {(0, 0, 0): 1}


def test_triangle_spot_check():
    report = chromatic_euler_check(load("C3"), 3)
    a, d, chain, hom, poly = report.rows[1]
    assert (a, d) == (0, 1)
    # dims in degree 1: one state with k=3, three with k=2, four with k=1
    assert chain == 3 - 3 * 2 + 3 * 1 - 1
    assert chain == hom == poly == -1


@pytest.mark.parametrize("name", ["P3", "C3", "C4", "double edge", "loop", "P2+N1", "triangle+pendant"])
def test_against_dense_ranks(name):
    G = load(name)
    assert chromatic_homology(G, 4).entries == dense_homology(G, 4)


@pytest.mark.parametrize("name", list(CORPUS))
def test_differential_squares_to_zero(name):
    G = load(name)
    cube = build_cube(G, 4)
    for d in range(5):
        for i in range(G.m - 1):
            assert (cube.differential(i + 1, d) @ cube.differential(i, d)).is_zero()


@pytest.mark.parametrize("name", list(CORPUS))
def test_euler_identity(name):
    G = load(name)
    report = chromatic_euler_check(G, 6)
    assert report.passed, report.render()
    assert [r[4] for r in report.rows] == chromatic_series(G, 6).row()


def test_triangle_cube_equals_koszul():
    G = load("C3")
    assert chromatic_homology(G, 4).same_dims(koszul_chromatic(G, 4))


@settings(max_examples=25, deadline=None)
@given(small_graphs(max_n=4, max_m=4))
def test_cube_equals_koszul_random(G):
    assert chromatic_homology(G, 3).same_dims(koszul_chromatic(G, 3))


@settings(max_examples=25, deadline=None)
@given(small_graphs(max_n=4, max_m=5))
def test_euler_identity_random(G):
    assert chromatic_euler_check(G, 4).passed


@pytest.mark.parametrize("name", ["P2", "C3", "loop", "double edge", "P3"])
def test_isolated_vertex_rule(name):
    G = load(name)
    D = 5
    base = chromatic_homology(G, D)
    plus = chromatic_homology(disjoint_union(G, Graph(1, ())), D)
    for i in range(G.m + 1):
        for d in range(D + 1):
            assert plus.dim(i, 0, d) == sum(base.dim(i, 0, e) for e in range(d + 1))


def test_cube_budget():
    G = Graph(2, ((1, 2),) * 21)
    with pytest.raises(BudgetExceeded) as info:
        build_cube(G, 1)
    assert info.value.parameter == "m"


def test_table_json_is_sorted():
    obj = chromatic_homology(load("C3"), 3).to_json()
    assert obj["construction"] == "cube" and obj["D"] == 3
    keys = [(e["i"], e["a"], e["d"]) for e in obj["entries"]]
    assert keys == sorted(keys)
