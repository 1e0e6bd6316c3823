import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import walks

from homclave.common import Unknown
from homclave.errors import InvalidEdge, ParityMismatch
from homclave.graph import (
    build_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    tensor_product,
)
from homclave.homotopy import (
    equivalent_bounded,
    fundamental_cycles,
    is_elementary_step,
    join,
    lift_cycle,
    project,
    tree_walk,
)
from homclave.walks import Walk, reduce, reduce_vertices


def W(*vs):
    return Walk(tuple(vs))


def test_left_lift_of_triangle():
    G, H = complete_graph(3), complete_graph(2)
    lifted = lift_cycle(W(0, 1, 2, 0), (0, 1), "left", G, H)
    flat = [g * 2 + h for g, h in [(0, 0), (1, 1), (2, 0), (0, 1), (1, 0), (2, 1), (0, 0)]]
    assert lifted.vertices == tuple(flat) and len(lifted) == 6
    lifted.check(tensor_product(G, H))


def test_right_lift_alternates_on_g():
    G, H = complete_graph(2), complete_graph(3)
    lifted = lift_cycle(W(0, 1, 2, 0), (0, 1), "right", G, H)
    assert project(lifted, H, "G").vertices == (0, 1, 0, 1, 0, 1, 0)
    assert project(lifted, H, "H").vertices == (0, 1, 2, 0, 1, 2, 0)


def test_lift_rejects_non_edge():
    with pytest.raises(InvalidEdge):
        lift_cycle(W(0, 1, 2, 0), (0, 2), "left", complete_graph(3), path_graph(3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_lift_length_and_projections(data):
    G = data.draw(st.sampled_from([cycle_graph(5), complete_graph(4), petersen_graph()]))
    H = cycle_graph(7)
    w = data.draw(walks(G, max_len=8))
    C = w.concat(Walk(tuple(reduce_vertices(w.vertices[::-1]))))
    lifted = lift_cycle(C, (2, 3), "left", G, H)
    assert len(lifted) == 2 * len(C)
    lifted.check(tensor_product(G, H))
    assert project(lifted, H, "G").vertices == C.vertices + C.vertices[1:]


def test_join_examples():
    G, H = path_graph(3), complete_graph(2)
    j = join(W(0, 1, 2), W(0, 1, 0), G, H)
    assert j.vertices == (0 * 2 + 0, 1 * 2 + 1, 2 * 2 + 0)
    G, H = path_graph(5), complete_graph(3)
    j = join(W(0, 1, 2, 3, 4), W(0, 1, 2), G, H)
    assert project(j, H, "H").vertices == (0, 1, 2, 1, 2)
    with pytest.raises(ParityMismatch):
        join(W(0, 1), W(0, 1, 2), path_graph(3), complete_graph(3))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_join_projects_to_reductions(data):
    G, H = cycle_graph(5), petersen_graph()
    P = data.draw(walks(G, max_len=9))
    Q = data.draw(walks(H, max_len=9).filter(lambda q: (len(q) - len(P)) % 2 == 0))
    j = join(P, Q, G, H)
    j.check(tensor_product(G, H))
    assert reduce(project(j, H, "G")) == reduce(P)
    assert reduce(project(j, H, "H")) == reduce(Q)


def test_fundamental_cycle_counts():
    tree = build_graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert fundamental_cycles(tree, 0).cycles == ()
    C5 = fundamental_cycles(cycle_graph(5), 0)
    assert len(C5.cycles) == 1 and reduce(C5.cycles[0]).vertices in {(0, 1, 2, 3, 4, 0), (0, 4, 3, 2, 1, 0)}
    assert len(fundamental_cycles(complete_graph(4), 0).cycles) == 3


@pytest.mark.parametrize("G", [petersen_graph(), tensor_product(cycle_graph(3), cycle_graph(5))])
def test_fundamental_cycles_are_based_closed_walks(G):
    basis = fundamental_cycles(G, 0)
    assert len(basis.cycles) == G.edge_count - G.vertex_count + 1
    for C in basis.cycles:
        C.check(G)
        assert C.start == C.end == 0
    for v in G.vertices():
        assert tree_walk(basis, v).check(G).end == v


def test_oracle_examples():
    C4, C6 = cycle_graph(4), cycle_graph(6)
    w = W(0, 1, 2, 1, 0, 3)
    assert equivalent_bounded(C4, w, reduce(w)).related
    v = equivalent_bounded(C4, W(0, 1, 2), W(0, 3, 2))
    assert v.related and len(v.steps) == 2
    v = equivalent_bounded(C6, W(0, 1, 2, 3), W(0, 5, 4, 3))
    assert not isinstance(v, Unknown) and not v.related
    assert equivalent_bounded(C6, W(0, 1), W(0, 1, 2, 1)).related
    assert not equivalent_bounded(C6, W(0, 1), W(0, 5)).related


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_oracle_traces_replay(data):
    G = data.draw(st.sampled_from([cycle_graph(4), complete_graph(4), build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])]))
    a = data.draw(walks(G, max_len=5))
    b = data.draw(walks(G, start=a.start, max_len=5))
    v = equivalent_bounded(G, a, b, budget=5000)
    if isinstance(v, Unknown) or not v.related:
        return
    assert v.steps[0] == a and v.steps[-1] == b
    for x, y in zip(v.steps, v.steps[1:]):
        assert is_elementary_step(G, x, y)
        assert (x.start, x.end, len(x) % 2) == (y.start, y.end, len(y) % 2)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_oracle_in_square_free_graph_matches_reduction(data):
    G = cycle_graph(5)
    a = data.draw(walks(G, max_len=5))
    b = data.draw(walks(G, start=a.start, max_len=5))
    v = equivalent_bounded(G, a, b, budget=5000)
    if isinstance(v, Unknown):
        return
    assert v.related == (reduce(a) == reduce(b))


def test_oracle_functorial_under_homomorphism():
    # C_4 -> K_2 collapses square moves to backtracks
    C4, K2 = cycle_graph(4), complete_graph(2)
    v = equivalent_bounded(C4, W(0, 1, 2), W(0, 3, 2))
    image = [Walk(tuple(x % 2 for x in s.vertices)) for s in v.steps]
    assert equivalent_bounded(K2, image[0], image[-1]).related


def test_projection_of_product_trace():
    G, H = cycle_graph(4), complete_graph(3)
    P = tensor_product(G, H)
    a = W(0 * 3 + 0, 1 * 3 + 1, 2 * 3 + 2)
    b = W(0 * 3 + 0, 3 * 3 + 1, 2 * 3 + 2)
    v = equivalent_bounded(P, a, b)
    assert v.related
    for side, F in (("G", G), ("H", H)):
        pa, pb = project(a, H, side), project(b, H, side)
        assert equivalent_bounded(F, pa, pb).related
