"""Immutable simple graphs, standard families, tensor products and homomorphisms.

Vertices are dense 0-based integers.  Product vertices are flattened
row-major: ``(g, h) -> g * |V(H)| + h``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    BipartiteComponent,
    InvalidParams,
    LoopEdge,
    NotOdd,
    SizeMismatch,
    VertexOutOfRange,
)
from .walks import Walk


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise InvalidParams("adjacency length differs from vertex_count")
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not 0 <= v < self.vertex_count:
                    raise VertexOutOfRange(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise LoopEdge(f"loop at {u}")
                if u not in self._adjsets[v]:
                    raise InvalidParams(f"asymmetric adjacency {u}-{v}")

    @cached_property
    def _adjsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    def __len__(self):
        return self.vertex_count

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    @property
    def n(self) -> int:
        return self.vertex_count

    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adjsets[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.edge_list

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def has_isolated_vertex(self) -> bool:
        return any(not a for a in self.adjacency)

    def first_edge(self) -> tuple[int, int]:
        """Smallest vertex with a neighbor, paired with its smallest neighbor."""
        for u in range(self.vertex_count):
            if self.adjacency[u]:
                return u, self.adjacency[u][0]
        raise InvalidParams("graph has no edges")

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Return the induced subgraph and the list mapping new index -> old index."""
        order = tuple(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edge_list if u in index and v in index]
        return build_graph(len(order), edges), order

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        drop = {frozenset(e) for e in removed}
        return build_graph(self.vertex_count, [e for e in self.edge_list if frozenset(e) not in drop])


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``range(n)``; duplicate edges are collapsed."""
    if n < 0:
        raise InvalidParams("vertex count must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge {u}-{v} outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParams("cycles need at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def circular_clique(p: int, q: int) -> Graph:
    """K_{p/q}: vertices Z_p, i ~ i+j for q <= j <= p-q."""
    if q < 1 or p < 2 * q:
        raise InvalidParams(f"circular clique needs p >= 2q >= 2, got {p}/{q}")
    return build_graph(p, [(i, (i + j) % p) for i in range(p) for j in range(q, p - q + 1)])


def kneser_graph(n: int, k: int) -> Graph:
    subsets = list(itertools.combinations(range(n), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return build_graph(len(subsets), edges)


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


# --- products -------------------------------------------------------------


@dataclass(frozen=True)
class ProductVertex:
    g: int
    h: int
    right_order: int

    @property
    def flat(self) -> int:
        return self.g * self.right_order + self.h

    @classmethod
    def decode(cls, flat: int, right_order: int) -> "ProductVertex":
        g, h = divmod(flat, right_order)
        return cls(g, h, right_order)


@lru_cache(maxsize=256)
def tensor_product(G: Graph, H: Graph) -> Graph:
    nH = H.vertex_count
    adj = []
    for g in range(G.vertex_count):
        for h in range(nH):
            adj.append(
                tuple(sorted(g2 * nH + h2 for g2 in G.adjacency[g] for h2 in H.adjacency[h]))
            )
    return Graph(G.vertex_count * nH, tuple(adj))


# --- homomorphisms --------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    domain_order: int
    codomain_order: int
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.domain_order:
            raise SizeMismatch(f"map has length {len(self.map)}, expected {self.domain_order}")
        for x in self.map:
            if not 0 <= x < self.codomain_order:
                raise SizeMismatch(f"value {x} outside codomain of order {self.codomain_order}")

    @classmethod
    def of(cls, values: Sequence[int], codomain_order: int) -> "Homomorphism":
        return cls(len(values), codomain_order, tuple(values))

    def __call__(self, v: int) -> int:
        return self.map[v]

    def __len__(self):
        return self.domain_order

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Composition ``other ∘ self``."""
        if other.domain_order != self.codomain_order:
            raise SizeMismatch("composition orders do not match")
        return Homomorphism(self.domain_order, other.codomain_order, tuple(other.map[x] for x in self.map))

    def image_walk(self, walk: Walk) -> Walk:
        return Walk(tuple(self.map[v] for v in walk.vertices))


def validate_hom(mu: Homomorphism, G: Graph, K: Graph) -> bool:
    if mu.domain_order != G.vertex_count or mu.codomain_order != K.vertex_count:
        raise SizeMismatch(
            f"map {mu.domain_order}->{mu.codomain_order} does not fit graphs "
            f"{G.vertex_count}->{K.vertex_count}"
        )
    m, adj = mu.map, K._adjsets
    return all(m[v] in adj[m[u]] for u, v in G.edge_list)


def projection(G: Graph, H: Graph, side: str) -> Homomorphism:
    nH = H.vertex_count
    if side == "G":
        values = tuple(f // nH for f in range(G.vertex_count * nH))
        return Homomorphism(len(values), G.vertex_count, values)
    if side == "H":
        values = tuple(f % nH for f in range(G.vertex_count * nH))
        return Homomorphism(len(values), nH, values)
    raise InvalidParams(f"side must be 'G' or 'H', got {side!r}")


def cycle_as_circular_iso(n: int) -> Homomorphism:
    """The isomorphism C_n -> K_{n/floor(n/2)}, j -> j*floor(n/2) mod n."""
    if n < 3 or n % 2 == 0:
        raise NotOdd(f"need an odd cycle length >= 3, got {n}")
    k = n // 2
    return Homomorphism(n, n, tuple(j * k % n for j in range(n)))


def inverse_permutation(mu: Homomorphism) -> Homomorphism:
    if mu.domain_order != mu.codomain_order or sorted(mu.map) != list(range(mu.domain_order)):
        raise InvalidParams("map is not a bijection")
    inv = [0] * mu.domain_order
    for i, x in enumerate(mu.map):
        inv[x] = i
    return Homomorphism(mu.domain_order, mu.domain_order, tuple(inv))


def lowest_terms(p: int, q: int) -> tuple[int, int]:
    d = gcd(p, q)
    return p // d, q // d


# --- structural predicates -------------------------------------------------


@lru_cache(maxsize=256)
def is_square_free(G: Graph) -> bool:
    """True iff no two distinct vertices share two distinct common neighbors."""
    for u in range(G.vertex_count):
        seen: dict[int, int] = {}
        for v in G.adjacency[u]:
            for w in G.adjacency[v]:
                if w == u:
                    continue
                if w in seen:
                    return False
                seen[w] = v
    return True


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]


@dataclass(frozen=True)
class NotBipartite:
    witness: Walk


def _bfs_tree(G: Graph, root: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {root: 0}
    parent = {root: root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in G.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = u
                queue.append(v)
    return dist, parent


def _tree_path(parent: dict[int, int], v: int) -> list[int]:
    """Path from v up to the BFS root."""
    path = [v]
    while parent[v] != v:
        v = parent[v]
        path.append(v)
    return path


@lru_cache(maxsize=256)
def bipartition(G: Graph) -> Bipartition | NotBipartite:
    side = [-1] * G.vertex_count
    for comp in G.components:
        root = comp[0]
        dist, _ = _bfs_tree(G, root)
        for v, d in dist.items():
            side[v] = d % 2
        for u, v in G.edge_list:
            if u in dist and side[u] == side[v]:
                return NotBipartite(odd_closed_walk_from(G, root))
    return Bipartition(tuple(side))


def is_bipartite(G: Graph) -> bool:
    return isinstance(bipartition(G), Bipartition)


def odd_closed_walk_from(G: Graph, v: int) -> Walk:
    """Shortest odd closed walk from ``v`` found via BFS layers.

    Uses the non-tree edge xy with dist(x) == dist(y) minimizing that distance;
    the result is tree-path(v, x) + xy + tree-path(y, v).
    """
    dist, parent = _bfs_tree(G, v)
    best = None
    for x in sorted(dist):
        for y in G.adjacency[x]:
            if x < y and dist[x] == dist[y]:
                if best is None or dist[x] < dist[best[0]]:
                    best = (x, y)
    if best is None:
        raise BipartiteComponent(f"component of vertex {v} is bipartite")
    x, y = best
    down = list(reversed(_tree_path(parent, x)))
    up = _tree_path(parent, y)
    return Walk(tuple(down + up))


def walk_between(G: Graph, u: int, v: int) -> Walk:
    """A shortest walk from u to v (BFS)."""
    dist, parent = _bfs_tree(G, u)
    if v not in dist:
        raise InvalidParams(f"{v} not reachable from {u}")
    return Walk(tuple(reversed(_tree_path(parent, v))))
