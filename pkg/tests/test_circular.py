import itertools

import pytest

from homclave.circular import (
    RemovableEdgeSet,
    choose_side,
    extract_bipartite_hom,
    removable_edges,
    solve_circular,
    solve_into_odd_cycle,
)
from homclave.errors import InvalidColoring, InvalidRange, NotBipartiteAfterRemoval
from homclave.graph import (
    Homomorphism,
    build_graph,
    circular_clique,
    complete_graph,
    cycle_as_circular_iso,
    cycle_graph,
    is_bipartite,
    odd_closed_walk_from,
    path_graph,
    projection,
    tensor_product,
    validate_hom,
)
from homclave.oracle import find_hom, iter_homs
from homclave.winding import CircularParams

K52 = CircularParams(5, 2)


def proj_into(G, H, side, iso):
    return projection(G, H, side).then(iso)


def test_choose_side_examples():
    C5, K3 = cycle_graph(5), complete_graph(3)
    iso = cycle_as_circular_iso(5)
    mu = proj_into(C5, C5, "G", iso)
    assert choose_side(C5, C5, mu, (0, 1), (0, 1), K52).side == "G"
    mu = proj_into(C5, C5, "H", iso)
    assert choose_side(C5, C5, mu, (0, 1), (0, 1), K52).side == "H"
    mu = proj_into(K3, C5, "H", iso)
    choice = choose_side(K3, C5, mu, (0, 1), (0, 1), K52)
    assert choice.side == "H" and choice.other_half_parity == 0


def test_choose_side_is_stable_under_walk_choice():
    G, H = cycle_graph(7), build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)])
    K = circular_clique(7, 3)
    params = CircularParams(7, 3)
    P = tensor_product(G, H)
    homs = list(itertools.islice(iter_homs(P, K), 0, 400, 40))
    assert homs
    for m in homs:
        mu = Homomorphism(P.vertex_count, 7, m)
        sides = set()
        for g, h in zip(range(5), [0, 1, 2, 3, 5]):
            C, D = odd_closed_walk_from(G, g), odd_closed_walk_from(H, h)
            sides.add(choose_side(G, H, mu, (0, 1), (0, 1), params, walks=(C, D)).side)
        assert len(sides) == 1


def test_removable_edges_examples():
    C5 = cycle_graph(5)
    K = circular_clique(5, 2)
    mu = proj_into(C5, C5, "G", cycle_as_circular_iso(5))
    rem = removable_edges(C5, C5, mu, (0, 1), "G", K)
    assert len(rem) == 5
    # same color on an edge at one fiber makes that edge non-removable
    m = list(mu.map)
    m[0 * 5 + 0] = m[1 * 5 + 0]
    bad = Homomorphism(25, 5, tuple(m))
    assert (0, 1) not in removable_edges(C5, C5, bad, (0, 1), "G", K)


def test_extract_bipartite_hom_examples():
    C5 = cycle_graph(5)
    K = circular_clique(5, 2)
    iso = cycle_as_circular_iso(5)
    mu = proj_into(C5, C5, "G", iso)
    rem = removable_edges(C5, C5, mu, (0, 1), "G", K)
    gamma = extract_bipartite_hom(C5, C5, mu, rem, (0, 1), K)
    assert gamma == iso
    P3 = path_graph(3)
    mu = proj_into(P3, C5, "H", iso)
    gamma = extract_bipartite_hom(P3, C5, mu, RemovableEdgeSet("G", frozenset()), (0, 1), K)
    assert validate_hom(gamma, P3, K)
    mu = proj_into(C5, C5, "G", iso)
    with pytest.raises(NotBipartiteAfterRemoval):
        extract_bipartite_hom(C5, C5, mu, RemovableEdgeSet("G", frozenset()), (0, 1), K)


def test_solve_circular_examples():
    K3, C5, C7 = complete_graph(3), cycle_graph(5), cycle_graph(7)
    iso5 = cycle_as_circular_iso(5)
    res = solve_circular(K3, C5, 5, 2, proj_into(K3, C5, "H", iso5))
    assert res.side == "H"
    assert find_hom(K3, circular_clique(5, 2)) is None
    iso7 = cycle_as_circular_iso(7)
    res = solve_circular(C7, C7, 7, 3, proj_into(C7, C7, "G", iso7))
    assert validate_hom(res.hom, C7, circular_clique(7, 3))
    P3 = path_graph(3)
    mu = find_hom(tensor_product(P3, C5), circular_clique(5, 2))
    res = solve_circular(P3, C5, 5, 2, mu)
    assert res.side == "G" and "bipartite" in res.trace.notes[0]


def test_solve_circular_range_and_input_checks():
    C5 = cycle_graph(5)
    mu = proj_into(C5, C5, "G", cycle_as_circular_iso(5))
    with pytest.raises(InvalidRange):
        solve_circular(C5, C5, 9, 2, mu)
    with pytest.raises(InvalidColoring):
        solve_circular(C5, C5, 5, 2, Homomorphism(25, 5, (0,) * 25))


@pytest.mark.parametrize("p,q", [(5, 2), (7, 2), (7, 3), (11, 3), (8, 3), (6, 2), (10, 4)])
def test_solve_circular_on_enumerated_maps(p, q):
    factors = [cycle_graph(3), cycle_graph(5), build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (3, 5)])]
    K = circular_clique(p, q)
    for G, H in itertools.product(factors, repeat=2):
        P = tensor_product(G, H)
        for m in itertools.islice(iter_homs(P, K), 0, 300, 7):
            res = solve_circular(G, H, p, q, Homomorphism(P.vertex_count, p, m))
            F = G if res.side == "G" else H
            assert validate_hom(res.hom, F, K)


def test_removal_leaves_bipartite_graph():
    G, H = cycle_graph(5), cycle_graph(7)
    K = circular_clique(7, 3)
    P = tensor_product(G, H)
    for m in itertools.islice(iter_homs(P, K), 0, 500, 25):
        mu = Homomorphism(P.vertex_count, 7, m)
        choice = choose_side(G, H, mu, (0, 1), (0, 1), CircularParams(7, 3))
        F = G if choice.side == "G" else H
        rem = removable_edges(G, H, mu, (0, 1), choice.side, K)
        assert is_bipartite(F.without_edges(rem.edges))


def test_solve_into_odd_cycle():
    C5, C7 = cycle_graph(5), cycle_graph(7)
    gamma = Homomorphism.of([h % 5 for g in range(7) for h in range(5)], 5)
    res = solve_into_odd_cycle(C7, C5, 5, gamma)
    F = C7 if res.side == "G" else C5
    assert validate_hom(res.hom, F, C5)
