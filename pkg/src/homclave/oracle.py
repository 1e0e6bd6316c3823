"""Brute-force ground truth: homomorphism search/enumeration and recoloring reachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .common import UNKNOWN, Unknown
from .errors import BudgetExceeded, InvalidColoring, InvalidParams
from .graph import Graph, Homomorphism, validate_hom


@dataclass(frozen=True)
class EnumerationBudget:
    max_solutions: int = 10_000
    max_nodes: int = 10_000_000

    def __post_init__(self):
        if self.max_solutions <= 0 or self.max_nodes <= 0:
            raise InvalidParams("budgets must be positive")


def variable_order(G: Graph) -> list[int]:
    """Static order: most already-ordered neighbors first, then higher degree, then index.

    Keeping the order connected lets forward checking prune early; a pure
    degree order scatters the first choices across the graph.
    """
    remaining = set(G.vertices())
    placed_nbrs = [0] * G.vertex_count
    order = []
    while remaining:
        v = min(remaining, key=lambda u: (-placed_nbrs[u], -G.degree(u), u))
        remaining.remove(v)
        order.append(v)
        for u in G.adjacency[v]:
            placed_nbrs[u] += 1
    return order


class _Supports:
    """Memoized union of K-neighborhoods over a bitmask of colors."""

    def __init__(self, K: Graph):
        self.kmask = [sum(1 << c for c in K.adjacency[a]) for a in range(K.vertex_count)]
        self.cache: dict[int, int] = {}

    def __call__(self, d: int) -> int:
        out = self.cache.get(d)
        if out is None:
            out, c, x = 0, 0, d
            while x:
                if x & 1:
                    out |= self.kmask[c]
                x >>= 1
                c += 1
            self.cache[d] = out
        return out


def _propagate(G: Graph, domains: list[int], support: _Supports, start) -> bool:
    """Arc consistency from the vertices in ``start``; False on a wipe-out."""
    queue = deque(start)
    queued = set(queue)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        sup = support(domains[v])
        for u in G.adjacency[v]:
            nd = domains[u] & sup
            if nd != domains[u]:
                if not nd:
                    return False
                domains[u] = nd
                if u not in queued:
                    queued.add(u)
                    queue.append(u)
    return True


def iter_homs(G: Graph, K: Graph, max_nodes: int | None = None) -> Iterator[tuple[int, ...]]:
    """All homomorphisms G -> K as tuples, in a fixed deterministic order.

    Backtracking that maintains arc consistency after every assignment.
    Raises BudgetExceeded once more than ``max_nodes`` search nodes are expanded.
    """
    n = G.vertex_count
    if n == 0:
        yield ()
        return
    support = _Supports(K)
    domains = [(1 << K.vertex_count) - 1] * n
    if not _propagate(G, domains, support, G.vertices()):
        return
    order = variable_order(G)
    nodes = 0

    def search(depth: int, doms: list[int]) -> Iterator[tuple[int, ...]]:
        nonlocal nodes
        if depth == n:
            yield tuple(d.bit_length() - 1 for d in doms)
            return
        v = order[depth]
        d = doms[v]
        c = 0
        while d:
            if d & 1:
                nodes += 1
                if max_nodes is not None and nodes > max_nodes:
                    raise BudgetExceeded(f"search exceeded {max_nodes} nodes")
                new = doms.copy()
                new[v] = 1 << c
                if _propagate(G, new, support, (v,)):
                    yield from search(depth + 1, new)
            d >>= 1
            c += 1

    yield from search(0, domains)


def find_hom(G: Graph, K: Graph, max_nodes: int | None = None) -> Homomorphism | None:
    for sol in iter_homs(G, K, max_nodes):
        return Homomorphism(G.vertex_count, K.vertex_count, sol)
    return None


def enumerate_homs(G: Graph, K: Graph, budget: EnumerationBudget | None = None) -> list[Homomorphism]:
    """Every homomorphism G -> K; BudgetExceeded carries the partial list."""
    budget = budget or EnumerationBudget()
    out: list[Homomorphism] = []
    try:
        for sol in iter_homs(G, K, budget.max_nodes):
            if len(out) == budget.max_solutions:
                raise BudgetExceeded(f"more than {budget.max_solutions} homomorphisms", partial=out)
            out.append(Homomorphism(G.vertex_count, K.vertex_count, sol))
    except BudgetExceeded as exc:
        exc.partial = out
        raise
    return out


def recolor_moves(colors: tuple[int, ...], G: Graph, K: Graph) -> Iterator[tuple[int, int]]:
    """All single-vertex recolorings (vertex, new color) that keep a valid K-coloring."""
    for v in G.vertices():
        allowed = None
        for u in G.adjacency[v]:
            s = K.neighbor_set(colors[u])
            allowed = s if allowed is None else allowed & s
        candidates = range(K.vertex_count) if allowed is None else sorted(allowed)
        for c in candidates:
            if c != colors[v]:
                yield v, c


def recolor_reachable(
    mu: Homomorphism, mu2: Homomorphism, G: Graph, K: Graph, budget: int = 200_000
) -> bool | Unknown:
    """BFS in the recoloring graph of K-colorings of G."""
    for m in (mu, mu2):
        if not validate_hom(m, G, K):
            raise InvalidColoring("both maps must be K-colorings")
    start, goal = mu.map, mu2.map
    if start == goal:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for v, c in recolor_moves(cur, G, K):
            nxt = cur[:v] + (c,) + cur[v + 1 :]
            if nxt in seen:
                continue
            if nxt == goal:
                return True
            seen.add(nxt)
            if len(seen) >= budget:
                return UNKNOWN
            queue.append(nxt)
    return False
