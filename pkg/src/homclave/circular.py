"""Constructive multiplicativity of circular cliques K_{p/q} with 2 <= p/q < 4.

For odd p (in lowest terms) the factor whose odd cycles have half-parity 1 is
chosen; deleting its removable edges leaves a bipartite graph, and the
bipartition selects which fiber each vertex reads its color from.
Even p falls back to brute-force search on the two factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidColoring,
    InvalidRange,
    NotBipartiteAfterRemoval,
    ParityClash,
    TheoryViolation,
)
from .graph import (
    Bipartition,
    Graph,
    Homomorphism,
    bipartition,
    circular_clique,
    cycle_as_circular_iso,
    inverse_permutation,
    lowest_terms,
    odd_closed_walk_from,
    validate_hom,
)
from .oracle import find_hom
from .split import RecolorTrace, SplitResult, check_input, checked, reduce_and_solve
from .walks import Walk
from .winding import CircularParams, half_parity


@dataclass(frozen=True)
class SideChoice:
    side: str
    walk: Walk
    half_parity: int
    other_half_parity: int


@dataclass(frozen=True)
class RemovableEdgeSet:
    side: str
    edges: frozenset[tuple[int, int]]

    def __contains__(self, e) -> bool:
        u, v = e
        return (min(u, v), max(u, v)) in self.edges

    def __len__(self):
        return len(self.edges)


def choose_side(
    G: Graph,
    H: Graph,
    mu: Homomorphism,
    g_edge: tuple[int, int],
    h_edge: tuple[int, int],
    params: CircularParams,
    walks: tuple[Walk, Walk] | None = None,
) -> SideChoice:
    """Pick the factor whose odd closed walk from the base has half-parity 1."""
    if walks is None:
        C = odd_closed_walk_from(G, g_edge[0])
        D = odd_closed_walk_from(H, h_edge[0])
    else:
        C, D = walks
    left = half_parity(C, mu, h_edge, G, H, params, side="left")
    right = half_parity(D, mu, g_edge, G, H, params, side="right")
    if left == right:
        raise ParityClash(f"both factors have half-parity {left}")
    if left == 1:
        return SideChoice("G", C, left, right)
    return SideChoice("H", D, right, left)


def removable_edges(
    G: Graph, H: Graph, mu: Homomorphism, other_edge: tuple[int, int], side: str, K: Graph
) -> RemovableEdgeSet:
    """Edges xx' of the chosen factor with both fiber images (at the two ends of other_edge) edges of K."""
    nH = H.vertex_count
    m = mu.map
    a, b = other_edge
    if side == "G":
        F = G
        at = lambda x, y: m[x * nH + y]  # noqa: E731
    else:
        F = H
        at = lambda x, y: m[y * nH + x]  # noqa: E731
    keep = frozenset(
        (u, v) for u, v in F.edge_list if K.has_edge(at(u, a), at(v, a)) and K.has_edge(at(u, b), at(v, b))
    )
    return RemovableEdgeSet(side, keep)


def extract_bipartite_hom(
    G: Graph, H: Graph, mu: Homomorphism, removable: RemovableEdgeSet, other_edge: tuple[int, int], K: Graph
) -> Homomorphism:
    """gamma(x) = mu(x, delta(x)) with delta the bipartition of F minus the removable edges."""
    F = G if removable.side == "G" else H
    rest = F.without_edges(removable.edges)
    bp = bipartition(rest)
    if not isinstance(bp, Bipartition):
        raise NotBipartiteAfterRemoval(f"odd closed walk {bp.witness} survives edge removal")
    nH = H.vertex_count
    values = []
    for x in F.vertices():
        y = other_edge[bp.side[x]]
        values.append(mu.map[x * nH + y] if removable.side == "G" else mu.map[y * nH + x])
    gamma = Homomorphism(F.vertex_count, K.vertex_count, tuple(values))
    if not validate_hom(gamma, F, K):
        raise NotBipartiteAfterRemoval("fiber-selected map is not a homomorphism")
    return gamma


def _core_odd(G: Graph, H: Graph, K: Graph, mu: Homomorphism, params: CircularParams) -> SplitResult:
    g_edge, h_edge = G.first_edge(), H.first_edge()
    choice = choose_side(G, H, mu, g_edge, h_edge, params)
    other = h_edge if choice.side == "G" else g_edge
    rem = removable_edges(G, H, mu, other, choice.side, K)
    gamma = extract_bipartite_hom(G, H, mu, rem, other, K)
    trace = RecolorTrace(
        notes=[f"half-parities {choice.half_parity}/{choice.other_half_parity}; {len(rem)} removable edges"]
    )
    return SplitResult(choice.side, gamma, trace, mu)


def _brute_force(G: Graph, H: Graph, K: Graph, mu: Homomorphism) -> SplitResult:
    trace = RecolorTrace(notes=["even p: brute-force search"])
    for side, F in (("G", G), ("H", H)):
        hom = find_hom(F, K)
        if hom is not None:
            return SplitResult(side, hom, trace, mu)
    raise TheoryViolation("neither factor maps to the circular clique")


def solve_circular(G: Graph, H: Graph, p: int, q: int, mu: Homomorphism) -> SplitResult:
    """A validated homomorphism from G or from H into K_{p/q}, given mu: G×H -> K_{p/q}."""
    if q < 1 or not 2 * q <= p < 4 * q:
        raise InvalidRange(f"need 2 <= p/q < 4, got {p}/{q}")
    K = circular_clique(p, q)
    check_input(G, H, K, mu)
    p2, q2 = lowest_terms(p, q)
    d = p // p2
    if d > 1:
        # K_{p/q} and K_{p2/q2} are homomorphically equivalent
        down = Homomorphism(p, p2, tuple(i // d for i in range(p)))
        up = Homomorphism(p2, p, tuple(j * d for j in range(p2)))
        K2 = circular_clique(p2, q2)
        if not (validate_hom(down, K, K2) and validate_hom(up, K2, K)):
            raise TheoryViolation("lowest-terms maps are not homomorphisms")
        res = solve_circular(G, H, p2, q2, mu.then(down))
        res.trace.notes.append(f"reduced {p}/{q} to {p2}/{q2}")
        return checked(SplitResult(res.side, res.hom.then(up), res.trace, mu), G, H, K)

    def core(G_, H_, K_, mu_):
        if p % 2 == 0:
            return _brute_force(G_, H_, K_, mu_)
        if p == 2 * q:
            raise InvalidColoring("two non-bipartite factors cannot map to K_2")
        return _core_odd(G_, H_, K_, mu_, CircularParams(p, q))

    return checked(reduce_and_solve(G, H, K, mu, core), G, H, K)


def solve_into_odd_cycle(G: Graph, H: Graph, n: int, gamma: Homomorphism) -> SplitResult:
    """Split gamma: G×H -> C_n (n odd) by relabeling C_n as K_{n/floor(n/2)}."""
    iso = cycle_as_circular_iso(n)
    res = solve_circular(G, H, n, n // 2, gamma.then(iso))
    back = inverse_permutation(iso)
    res.trace.notes.append(f"C_{n} relabeled as K_{n}/{n // 2} via j -> j*{n // 2}")
    return SplitResult(res.side, res.hom.then(back), res.trace, gamma)
