"""Result types and the factor reductions shared by both solvers.

A solver only has to handle connected, non-bipartite factors; everything
else (bipartite factors, disconnected factors) is reduced here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import InvalidColoring, IsolatedVertex, TheoryViolation
from .graph import Bipartition, Graph, Homomorphism, bipartition, tensor_product, validate_hom


@dataclass
class RecolorTrace:
    """Single-vertex recolorings ``(product vertex, old, new)`` in order.

    ``checkpoints`` holds the improvement measure before the first commit and
    after every committed batch.
    """

    steps: list[tuple[int, int, int]] = field(default_factory=list)
    checkpoints: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def commits(self) -> int:
        return max(0, len(self.checkpoints) - 1)

    def replay(self, mu: Homomorphism, P: Graph, K: Graph) -> Homomorphism:
        """Apply every step, checking the old color and validity after each one."""
        colors = list(mu.map)
        for v, old, new in self.steps:
            if colors[v] != old:
                raise InvalidColoring(f"trace expects color {old} at {v}, found {colors[v]}")
            colors[v] = new
            for u in P.adjacency[v]:
                if not K.has_edge(new, colors[u]):
                    raise InvalidColoring(f"step recoloring {v} to {new} clashes with {u}")
        return Homomorphism(mu.domain_order, mu.codomain_order, tuple(colors))

    def remapped(self, index: Callable[[int], int]) -> "RecolorTrace":
        return RecolorTrace([(index(v), a, b) for v, a, b in self.steps], list(self.checkpoints), list(self.notes))


@dataclass(frozen=True)
class CyclicFactorization:
    """``mu* = delta ∘ gamma`` through the cycle C_n."""

    gamma: Homomorphism
    delta: Homomorphism

    @property
    def n(self) -> int:
        return self.delta.domain_order


@dataclass
class SplitResult:
    side: str
    hom: Homomorphism
    trace: RecolorTrace
    recolored: Homomorphism
    intermediate: CyclicFactorization | None = None

    def to_dict(self) -> dict:
        out = {"side": self.side, "map": list(self.hom.map)}
        if self.trace.steps or self.trace.checkpoints:
            out["trace"] = {
                "steps": [list(s) for s in self.trace.steps],
                "measure": list(self.trace.checkpoints),
            }
        if self.trace.notes:
            out["notes"] = list(self.trace.notes)
        if self.intermediate is not None:
            out["intermediate"] = {
                "n": self.intermediate.n,
                "gamma": list(self.intermediate.gamma.map),
                "delta": list(self.intermediate.delta.map),
            }
        return out


CoreSolver = Callable[[Graph, Graph, Graph, Homomorphism], SplitResult]


def check_input(G: Graph, H: Graph, K: Graph, mu: Homomorphism) -> None:
    for name, X in (("G", G), ("H", H)):
        if X.has_isolated_vertex():
            raise IsolatedVertex(f"{name} has an isolated vertex")
    if K.edge_count == 0:
        raise InvalidColoring("K has no edges")
    if mu.domain_order != G.vertex_count * H.vertex_count or mu.codomain_order != K.vertex_count:
        raise InvalidColoring("map does not fit G×H -> K")
    if not validate_hom(mu, tensor_product(G, H), K):
        raise InvalidColoring("map is not a homomorphism G×H -> K")


def edge_map(F: Graph, K: Graph, side: Bipartition) -> Homomorphism:
    a, b = K.first_edge()
    return Homomorphism(F.vertex_count, K.vertex_count, tuple(b if s else a for s in side.side))


def _restrict(mu: Homomorphism, nH: int, gs: tuple[int, ...], hs: tuple[int, ...]) -> Homomorphism:
    values = tuple(mu.map[g * nH + h] for g in gs for h in hs)
    return Homomorphism(len(values), mu.codomain_order, values)


def reduce_and_solve(G: Graph, H: Graph, K: Graph, mu: Homomorphism, core: CoreSolver) -> SplitResult:
    """Bipartite factor -> map it onto an edge of K; disconnected factor -> per-component pairs."""
    for side, F in (("G", G), ("H", H)):
        bp = bipartition(F)
        if isinstance(bp, Bipartition):
            hom = edge_map(F, K, bp)
            trace = RecolorTrace(notes=[f"{side} is bipartite"])
            return SplitResult(side, hom, trace, mu)
    if G.is_connected() and H.is_connected():
        return core(G, H, K, mu)

    nH = H.vertex_count
    colors = list(mu.map)
    trace = RecolorTrace(notes=["disconnected factor: solved per component pair"])
    g_parts: dict[int, Homomorphism] = {}
    g_comps, h_comps = G.components, H.components

    def absorb(res: SplitResult, gs, hs):
        m = len(hs)
        sub = res.trace.remapped(lambda f: gs[f // m] * nH + hs[f % m])
        trace.steps.extend(sub.steps)
        for i, x in enumerate(res.recolored.map):
            colors[gs[i // m] * nH + hs[i % m]] = x

    for gs in g_comps:
        Gi, _ = G.induced_subgraph(gs)
        h_parts = []
        for hs in h_comps:
            Hj, _ = H.induced_subgraph(hs)
            res = reduce_and_solve(Gi, Hj, K, _restrict(mu, nH, gs, hs), core)
            absorb(res, gs, hs)
            if res.side == "G":
                g_parts[gs[0]] = res.hom
                break
            h_parts.append((hs, res.hom))
        else:
            values = [0] * nH
            for hs, hom in h_parts:
                for i, h in enumerate(hs):
                    values[h] = hom.map[i]
            hom = Homomorphism(nH, K.vertex_count, tuple(values))
            return SplitResult("H", hom, trace, Homomorphism(mu.domain_order, mu.codomain_order, tuple(colors)))
    values = [0] * G.vertex_count
    for gs in g_comps:
        for i, g in enumerate(gs):
            values[g] = g_parts[gs[0]].map[i]
    hom = Homomorphism(G.vertex_count, K.vertex_count, tuple(values))
    return SplitResult("G", hom, trace, Homomorphism(mu.domain_order, mu.codomain_order, tuple(colors)))


def checked(result: SplitResult, G: Graph, H: Graph, K: Graph) -> SplitResult:
    F = G if result.side == "G" else H
    if not validate_hom(result.hom, F, K):
        raise TheoryViolation(f"solver produced an invalid {result.side}-side map")
    return result
