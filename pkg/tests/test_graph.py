import pytest
from hypothesis import given
from hypothesis import strategies as st

from khroma.errors import GraphParseError
from khroma.graph import (
    Graph,
    LinearForm,
    canonical_key,
    contract_edge,
    delete_edge,
    disjoint_union,
    edge_form,
    format_graph,
    parse_graph,
    relabel_vertices,
    reorder_edges,
    state_components,
    state_profile,
)

from conftest import small_graphs

P2 = Graph(2, ((1, 2),))
C3 = Graph(3, ((1, 2), (2, 3), (1, 3)))
LOOP = Graph(1, ((1, 1),))
DOUBLE = Graph(2, ((1, 2), (1, 2)))


def test_parse_edge():
    assert parse_graph("v 2\ne 1 2") == P2


def test_parse_loop():
    assert parse_graph("v 1\ne 1 1") == LOOP


def test_parse_comments_and_blank_lines():
    assert parse_graph("# a triangle\n\nv 3\ne 1 2\n# middle\ne 2 3\ne 1 3\n") == C3


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("v 2\ne 1 3", 2, "endpoint out of range"),
        ("e 1 2\nv 2", 1, "missing `v` header"),
        ("# nothing here\n", 0, "missing `v` header"),
        ("v 2\nv 3", 2, "duplicate"),
        ("v 2\ne 1", 2, "malformed"),
        ("v two", 1, "malformed"),
        ("v 2\nx 1 2", 2, "malformed"),
        ("v 2\ne 0 1", 2, "endpoint out of range"),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)


def test_too_many_edges():
    text = "v 2\n" + "e 1 2\n" * 63
    with pytest.raises(GraphParseError, match="too many edges"):
        parse_graph(text)


def test_empty_graph_is_legal():
    G = parse_graph("v 0")
    assert (G.n, G.m) == (0, 0)
    assert state_components(G, 0).k == 0


@given(small_graphs(max_n=5, max_m=8))
def test_format_round_trip(G):
    text = format_graph(G)
    assert parse_graph(text) == G
    assert format_graph(parse_graph(text)) == text


def test_deletion_examples():
    assert delete_edge(P2, 0) == Graph(2, ())
    assert delete_edge(C3, 2) == Graph(3, ((1, 2), (2, 3)))
    assert delete_edge(LOOP, 0) == Graph(1, ())


def _unoriented(G):
    return G.n, sorted(tuple(sorted(e)) for e in G.edges)


def test_contraction_examples():
    assert contract_edge(P2, 0) == Graph(1, ())
    assert _unoriented(contract_edge(C3, 2)) == _unoriented(DOUBLE)
    assert contract_edge(C3, 0) == Graph(2, ((1, 2), (1, 2)))
    assert contract_edge(DOUBLE, 0) == LOOP


def test_contracting_a_loop_deletes_it():
    G = Graph(2, ((1, 1), (1, 2)))
    assert contract_edge(G, 0) == delete_edge(G, 0)


def test_edge_index_checked():
    with pytest.raises(IndexError):
        delete_edge(P2, 1)


def test_state_components_examples():
    assert state_components(P2, 0).k == 2
    assert state_components(P2, [0]).k == 1
    st_ = state_components(C3, [0, 1])
    assert st_.k == 1
    assert st_.partition == ((1, 2, 3),)
    assert st_.reps == (1,)


def test_edge_forms():
    assert edge_form(Graph(2, ((2, 1),)), 0) == LinearForm(1, 2)
    assert edge_form(Graph(3, ((1, 3),)), 0) == LinearForm(1, 3)
    assert edge_form(Graph(2, ((2, 2),)), 0).zero
    assert str(edge_form(P2, 0)) == "x_1 - x_2"


@given(small_graphs(max_n=5, max_m=6), st.data())
def test_adding_an_edge_drops_k_by_at_most_one(G, data):
    assert state_components(G, 0).k == G.n
    if G.m == 0:
        return
    s = data.draw(st.integers(0, (1 << G.m) - 1))
    e = data.draw(st.integers(0, G.m - 1))
    base = state_components(G, s & ~(1 << e)).k
    assert base - state_components(G, s | 1 << e).k in (0, 1)


@given(small_graphs(max_n=5, max_m=6))
def test_partition_covers_vertices(G):
    for s in range(1 << G.m):
        st_ = state_components(G, s)
        flat = sorted(v for block in st_.partition for v in block)
        assert flat == list(range(1, G.n + 1))
        assert st_.size == bin(s).count("1")


@given(small_graphs(max_n=5, max_m=6), st.randoms(use_true_random=False))
def test_profile_invariant_under_relabelling(G, rnd):
    perm = list(range(1, G.n + 1))
    rnd.shuffle(perm)
    order = list(range(G.m))
    rnd.shuffle(order)
    assert state_profile(relabel_vertices(G, perm)) == state_profile(G)
    assert state_profile(reorder_edges(G, order)) == state_profile(G)


@given(small_graphs(max_n=4, max_m=5), st.randoms(use_true_random=False))
def test_canonical_key_is_a_relabelling(G, rnd):
    n, edges = canonical_key(G)
    H = Graph(n, edges)
    assert n == G.n and H.m == G.m
    assert state_profile(H) == state_profile(G)
    perm = list(range(1, G.n + 1))
    rnd.shuffle(perm)
    # degree sequences survive any relabelling
    deg = lambda K: sorted(sum((i == v) + (j == v) for i, j in K.edges) for v in range(1, K.n + 1))
    assert deg(Graph(*canonical_key(relabel_vertices(G, perm)))) == deg(G)


def test_disjoint_union_shifts_labels():
    assert disjoint_union(P2, Graph(1, ())) == Graph(3, ((1, 2),))
    assert disjoint_union(Graph(1, ()), P2) == Graph(3, ((2, 3),))


def test_relabel_rejects_non_permutation():
    with pytest.raises(ValueError):
        relabel_vertices(P2, [1, 1])
    with pytest.raises(ValueError):
        reorder_edges(C3, [0, 0, 1])
