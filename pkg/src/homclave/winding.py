"""Winding numbers of closed walks in circular cliques K_{p/q} with p odd and 2 < p/q < 4.

Each edge ``w -> w'`` of K_{p/q} is sent to the step ``2(w' - w) + p`` in
Z_{2p} (the relabeled graph where edges join nearby residues) and measured by
its signed distance.  Summing gives an additive, ``~``-invariant integer; on a
closed walk it is a multiple of p and the quotient is the winding number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams, NonIntegralWinding, NotAWalk, NotClosed, OddWindingHalf
from .graph import Graph, Homomorphism
from .homotopy import lift_cycle
from .walks import Walk


@dataclass(frozen=True)
class CircularParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p % 2 == 0:
            raise InvalidParams(f"winding needs odd p, got {self.p}")
        if not 2 * self.q < self.p < 4 * self.q:
            raise InvalidParams(f"need 2 < p/q < 4, got {self.p}/{self.q}")

    def is_edge(self, a: int, b: int) -> bool:
        return self.q <= (b - a) % self.p <= self.p - self.q


def signed_dist(x: int, p: int) -> int:
    """Representative of x mod 2p in {-(p-1), ..., p}."""
    r = x % (2 * p)
    return r - 2 * p if r > p else r


@dataclass(frozen=True)
class WindingValue:
    delta: int
    start: int
    length_parity: int


def delta_phi(W: Walk, params: CircularParams) -> WindingValue:
    p = params.p
    v = W.vertices
    total = 0
    for a, b in zip(v, v[1:]):
        if not params.is_edge(a, b):
            raise NotAWalk(f"{a}-{b} is not an edge of K_{p}/{params.q}")
        # the +p shift alternates with edge parity, but +p == -p mod 2p
        total += signed_dist(2 * (b - a) + p, p)
    return WindingValue(total, v[0], len(W) % 2)


def generator_O(params: CircularParams) -> Walk:
    p = params.p
    step = (p + 1) // 2
    return Walk(tuple(i * step % p for i in range(p + 1)))


def winding_number(W: Walk, params: CircularParams) -> int:
    if not W.is_closed:
        raise NotClosed("winding number needs a closed walk")
    d = delta_phi(W, params).delta
    if d % params.p:
        raise NonIntegralWinding(f"delta {d} is not a multiple of p={params.p}")
    return d // params.p


def lifted_winding(
    C: Walk,
    mu: Homomorphism,
    edge: tuple[int, int],
    side: str,
    G: Graph,
    H: Graph,
    params: CircularParams,
) -> int:
    """Winding number of ``mu(C ▷ edge)`` (left) or ``mu(edge ◁ C)`` (right)."""
    lifted = lift_cycle(C, edge, side, G, H)
    return winding_number(mu.image_walk(lifted), params)


def half_parity(
    C: Walk,
    mu: Homomorphism,
    edge: tuple[int, int],
    G: Graph,
    H: Graph,
    params: CircularParams,
    side: str = "left",
) -> int:
    """Parity of X where the lifted image of the odd closed walk C is X^2."""
    if len(C) % 2 == 0:
        raise InvalidParams("half-parity is defined for odd closed walks")
    w = lifted_winding(C, mu, edge, side, G, H, params)
    if w % 2:
        raise OddWindingHalf(f"lifted winding {w} is odd; the coloring is not valid")
    return (w // 2) % 2
