"""Named test graphs and instance generators used by the experiments and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, Homomorphism, build_graph, circular_clique, cycle_graph, petersen_graph


def triangle_with_pendant_triangle() -> Graph:
    """Two triangles joined by a bridge edge (0-1-2 and 3-4-5, bridge 2-3)."""
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


def girth(G: Graph) -> float:
    from collections import deque

    best = float("inf")
    for s in G.vertices():
        dist, parent = {s: 0}, {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.adjacency[u]:
                if v not in dist:
                    dist[v], parent[v] = dist[u] + 1, u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def random_girth5_graph(rng: random.Random, max_vertices: int = 8) -> Graph:
    """Connected, non-bipartite, girth >= 5, no isolated vertices.

    Start from C_5 or C_7 and attach pendant vertices / extra girth-preserving edges.
    """
    while True:
        base = rng.choice([5, 7])
        n = rng.randint(base, max_vertices)
        edges = {(i, (i + 1) % base) for i in range(base)}
        for v in range(base, n):
            edges.add((rng.randrange(v), v))
        G = build_graph(n, edges)
        for _ in range(rng.randint(0, 3)):
            u, v = rng.sample(range(n), 2)
            if G.has_edge(u, v):
                continue
            trial = build_graph(n, list(G.edge_list) + [(u, v)])
            if girth(trial) >= 5:
                G = trial
        if girth(G) >= 5:
            return G


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph


def acceptance_factors(seed: int = 2021, randoms: int = 3) -> list[NamedGraph]:
    rng = random.Random(seed)
    out = [
        NamedGraph("C3", cycle_graph(3)),
        NamedGraph("C5", cycle_graph(5)),
        NamedGraph("C7", cycle_graph(7)),
        NamedGraph("K3+K3", triangle_with_pendant_triangle()),
    ]
    seen = set()
    while len(out) < 4 + randoms:
        G = random_girth5_graph(rng)
        key = G.adjacency
        if key in seen:
            continue
        seen.add(key)
        out.append(NamedGraph(f"R{len(out) - 3}", G))
    return out


def squarefree_targets() -> list[NamedGraph]:
    return [
        NamedGraph("C5", cycle_graph(5)),
        NamedGraph("C7", cycle_graph(7)),
        NamedGraph("Petersen", petersen_graph()),
    ]


CIRCULAR_TARGETS = ((5, 2), (7, 2), (7, 3), (11, 3))


def circular_targets() -> list[tuple[int, int, Graph]]:
    return [(p, q, circular_clique(p, q)) for p, q in CIRCULAR_TARGETS]


def pendant_cycle(n: int) -> Graph:
    """C_n with one pendant vertex n+i attached to each i (square-free)."""
    return build_graph(2 * n, [(i, (i + 1) % n) for i in range(n)] + [(i, n + i) for i in range(n)])


def height_map(a: int, b: int, n: int, c: int) -> Homomorphism:
    """(x, y) -> x - 2*floor((x - y)/c) mod n on C_a × C_b.

    Each diagonal step changes the height by ±1, so this is a map into C_n whenever
    it is periodic; for (a, b, n, c) = (9, 9, 3, 3) both factors wind.
    """
    return Homomorphism.of([(x - 2 * ((x - y) // c)) % n for x in range(a) for y in range(b)], n)
