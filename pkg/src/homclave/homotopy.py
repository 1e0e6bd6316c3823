"""Lifted cycles, the join construction, fundamental cycles and a bounded oracle for ``~``.

``~`` is the equivalence on walks generated by inserting/deleting a
backtrack ``e _ e^-1`` and by square moves ``v1 v2 _ v2 v3 -> v1 v4 _ v4 v3``.
Classes are never materialized; see :func:`equivalent_bounded`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .common import UNKNOWN, Unknown
from .errors import InvalidEdge, InvalidParams, NotClosed, ParityMismatch
from .graph import Graph, is_square_free
from .walks import Walk, reduce_vertices


def lift_cycle(C: Walk, edge: tuple[int, int], side: str, G: Graph, H: Graph) -> Walk:
    """``C ▷ h0h1`` (side="left") or ``g0g1 ◁ C`` (side="right") as a product walk.

    For side="left", ``C`` is closed in G and ``edge`` is an H-edge; the result
    projects to ``C _ C`` on G and to ``h0,h1,h0,...`` on H.  Right is symmetric.
    """
    if not C.is_closed:
        raise NotClosed("lift_cycle needs a closed walk")
    a, b = edge
    nH = H.vertex_count
    if side == "left":
        C.check(G)
        if not H.has_edge(a, b):
            raise InvalidEdge(f"{a}-{b} is not an edge of H")
        cc = C.vertices + C.vertices[1:]
        return Walk(tuple(g * nH + (a if k % 2 == 0 else b) for k, g in enumerate(cc)))
    if side == "right":
        C.check(H)
        if not G.has_edge(a, b):
            raise InvalidEdge(f"{a}-{b} is not an edge of G")
        cc = C.vertices + C.vertices[1:]
        return Walk(tuple((a if k % 2 == 0 else b) * nH + h for k, h in enumerate(cc)))
    raise InvalidParams(f"side must be 'left' or 'right', got {side!r}")


def project(W: Walk, H: Graph, side: str) -> Walk:
    nH = H.vertex_count
    if side == "G":
        return Walk(tuple(v // nH for v in W.vertices))
    return Walk(tuple(v % nH for v in W.vertices))


def _pad(vertices: tuple[int, ...], target_len: int, graph: Graph) -> tuple[int, ...]:
    extra = target_len - (len(vertices) - 1)
    if extra == 0:
        return vertices
    if len(vertices) >= 2:
        prev, last = vertices[-2], vertices[-1]
    else:
        last = vertices[-1]
        if not graph.adjacency[last]:
            raise InvalidParams(f"vertex {last} has no neighbor to pad with")
        prev = graph.adjacency[last][0]
    return vertices + (prev, last) * (extra // 2)


def join(P: Walk, Q: Walk, G: Graph, H: Graph) -> Walk:
    """Product walk projecting to P and Q, the shorter padded by back-and-forth on its last edge."""
    if (len(P) - len(Q)) % 2:
        raise ParityMismatch(f"lengths {len(P)} and {len(Q)} differ in parity")
    n = max(len(P), len(Q))
    p = _pad(P.vertices, n, G)
    q = _pad(Q.vertices, n, H)
    nH = H.vertex_count
    return Walk(tuple(g * nH + h for g, h in zip(p, q)))


@dataclass(frozen=True)
class FundamentalCycleBasis:
    base: int
    tree_parent: dict[int, int] = field(compare=False)
    cycles: tuple[Walk, ...]
    tree_edges: frozenset = field(compare=False, default=frozenset())


def fundamental_cycles(G: Graph, base: int, allowed: Iterable[int] | None = None) -> FundamentalCycleBasis:
    """BFS spanning tree of the component of ``base``; one closed walk per non-tree edge.

    ``allowed`` restricts the search to an induced vertex subset.
    """
    allow = None if allowed is None else set(allowed)
    parent = {base: base}
    order = [base]
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for v in G.adjacency[u]:
            if v not in parent and (allow is None or v in allow):
                parent[v] = u
                order.append(v)
                queue.append(v)

    def up(v):
        path = [v]
        while v != base:
            v = parent[v]
            path.append(v)
        return path

    tree = {frozenset((v, parent[v])) for v in order if v != base}
    cycles = []
    for u in sorted(parent):
        for v in G.adjacency[u]:
            if u < v and v in parent and frozenset((u, v)) not in tree:
                cycles.append(Walk(tuple(up(u)[::-1] + up(v))))
    return FundamentalCycleBasis(base, parent, tuple(cycles), frozenset(tree))


def tree_walk(basis: FundamentalCycleBasis, v: int) -> Walk:
    path = [v]
    while v != basis.base:
        v = basis.tree_parent[v]
        path.append(v)
    return Walk(tuple(path[::-1]))


# --- bounded ~-oracle -------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceVerdict:
    related: bool
    steps: tuple[Walk, ...] | None = None
    reason: str = ""


def elementary_neighbors(G: Graph, w: tuple[int, ...], max_len: int) -> Iterator[tuple[int, ...]]:
    n = len(w) - 1
    for i in range(1, n):
        if w[i - 1] == w[i + 1]:
            yield w[:i] + w[i + 2 :]
    for i in range(1, n):
        common = G.neighbor_set(w[i - 1]) & G.neighbor_set(w[i + 1])
        for x in sorted(common):
            if x != w[i]:
                yield w[:i] + (x,) + w[i + 1 :]
    if n + 2 <= max_len:
        for i in range(n + 1):
            for x in G.adjacency[w[i]]:
                yield w[: i + 1] + (x, w[i]) + w[i + 1 :]


def is_elementary_step(G: Graph, a: Walk, b: Walk) -> bool:
    cap = max(len(a), len(b))
    return b.vertices in set(elementary_neighbors(G, a.vertices, cap))


def equivalent_bounded(
    G: Graph, W: Walk, W2: Walk, budget: int = 20000, max_extra: int = 2
) -> EquivalenceVerdict | Unknown:
    """Bidirectional BFS over elementary steps.

    Intermediate walks are capped at ``max(|W|, |W2|) + max_extra`` edges and at
    most ``budget`` walks are visited.  A positive verdict carries a replayable
    trace.  Negative verdicts come only from sound invariants (endpoints, length
    parity, or, after the bounded space is exhausted, distinct reductions in a
    square-free graph); otherwise the answer is UNKNOWN.
    """
    W.check(G)
    W2.check(G)
    if W.start != W2.start or W.end != W2.end:
        return EquivalenceVerdict(False, reason="endpoints differ")
    if (len(W) - len(W2)) % 2:
        return EquivalenceVerdict(False, reason="length parity differs")
    a, b = W.vertices, W2.vertices
    if a == b:
        return EquivalenceVerdict(True, (W,), reason="identical")
    cap = max(len(W), len(W2)) + max_extra
    parents = ({a: None}, {b: None})
    frontiers = (deque([a]), deque([b]))
    visited = 2
    meet = None
    # one side running dry means the bounded space holds no connecting trace
    while meet is None and frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        frontier, mine, other = frontiers[side], parents[side], parents[1 - side]
        for _ in range(len(frontier)):
            w = frontier.popleft()
            for nxt in elementary_neighbors(G, w, cap):
                if nxt in mine:
                    continue
                mine[nxt] = w
                visited += 1
                if nxt in other:
                    meet = nxt
                    break
                frontier.append(nxt)
            if meet is not None:
                break
        if meet is None and visited >= budget:
            return UNKNOWN
    exhausted = meet is None
    if meet is not None:
        left = []
        x = meet
        while x is not None:
            left.append(x)
            x = parents[0][x]
        right = []
        x = parents[1][meet]
        while x is not None:
            right.append(x)
            x = parents[1][x]
        trace = tuple(Walk(v) for v in left[::-1] + right)
        return EquivalenceVerdict(True, trace, reason="bfs")
    if exhausted and is_square_free(G) and reduce_vertices(a) != reduce_vertices(b):
        return EquivalenceVerdict(False, reason="distinct reductions in a square-free graph")
    return UNKNOWN
