from pathlib import Path

import pytest

from khroma.graph import Graph, parse_graph

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"

# name -> file stem; order is the order reports are printed in
CORPUS = {
    "N1": "n1",
    "N2": "n2",
    "N3": "n3",
    "P2": "p2",
    "P3": "p3",
    "P4": "p4",
    "C3": "c3",
    "C4": "c4",
    "C5": "c5",
    "K4": "k4",
    "K4-e": "k4minus",
    "double edge": "doubleedge",
    "loop": "loop",
    "triangle+pendant": "trianglependant",
    "P2+N1": "p2n1",
}


def graph_path(name: str) -> Path:
    return GRAPH_DIR / f"{CORPUS[name]}.g"


def load(name: str) -> Graph:
    return parse_graph(graph_path(name).read_text())


@pytest.fixture(scope="session")
def corpus() -> dict[str, Graph]:
    return {name: load(name) for name in CORPUS}


def small_graphs(max_n: int = 4, max_m: int = 5):
    """Hypothesis strategy for multigraphs with loops on at most ``max_n`` vertices."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        vertex = st.integers(1, n)
        edges = draw(st.lists(st.tuples(vertex, vertex), max_size=max_m))
        return Graph(n, tuple(edges))

    return build()
