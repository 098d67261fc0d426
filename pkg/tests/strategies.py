"""Hypothesis strategies for small graphs, distributions and signatures."""

from hypothesis import strategies as st

from pebbling.core import Graph, Signature


@st.composite
def graphs(draw, min_n=1, max_n=5, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        # spanning tree first, then extras
        tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
        edges = sorted(set(edges) | set(tree))
    return Graph(n, edges)


@st.composite
def trees(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return Graph(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])


def distributions(n, max_total=7, max_each=None):
    each = max_total if max_each is None else max_each
    return st.lists(st.integers(0, each), min_size=n, max_size=n).filter(lambda p: sum(p) <= max_total).map(tuple)


@st.composite
def graph_with_distribution(draw, max_n=5, max_total=7, connected=True):
    g = draw(graphs(1, max_n, connected))
    p = draw(distributions(g.n, max_total))
    return g, p


@st.composite
def signatures(draw, n=4, max_total=6):
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    picks = draw(st.lists(st.sampled_from(arcs), max_size=max_total))
    return Signature.from_moves(picks)
