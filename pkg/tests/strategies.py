"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from homclave.graph import Graph, build_graph
from homclave.walks import Walk


@st.composite
def graphs(draw, min_vertices=2, max_vertices=7, connected=False, no_isolated=True):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs), unique=True))
    if connected or no_isolated:
        # a random spanning path keeps every vertex covered
        perm = draw(st.permutations(range(n)))
        edges += list(zip(perm, perm[1:]))
    return build_graph(n, edges)


@st.composite
def walks(draw, G: Graph, min_len=0, max_len=10, start=None):
    v = draw(st.integers(0, G.vertex_count - 1)) if start is None else start
    out = [v]
    for _ in range(draw(st.integers(min_len, max_len))):
        if not G.adjacency[v]:
            break
        v = draw(st.sampled_from(G.adjacency[v]))
        out.append(v)
    return Walk(tuple(out))


@st.composite
def graph_and_walk(draw, **kw):
    G = draw(graphs())
    return G, draw(walks(G, **kw))
