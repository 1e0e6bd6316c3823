"""Walks as vertex sequences, free reduction and the fundamental-groupoid toolkit.

A walk ``v0 -> v1 -> ... -> vn`` is stored as the tuple of its vertices; the
empty walk at ``v`` is ``(v,)``.  In a simple graph a walk backtracks exactly
when ``v[i-1] == v[i+1]``, so reduction is a single stack pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple, Sequence

from .errors import (
    BaseMismatch,
    EmptyClass,
    EndpointMismatch,
    InvalidParams,
    NotAWalk,
    NotClosed,
    NotCyclicallyReduced,
)

if TYPE_CHECKING:
    from .graph import Graph


@dataclass(frozen=True)
class Walk:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidParams("a walk has at least one vertex")
        if not isinstance(self.vertices, tuple):
            object.__setattr__(self, "vertices", tuple(self.vertices))

    @classmethod
    def empty(cls, v: int) -> "Walk":
        return cls((v,))

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self):
        return len(self.vertices) - 1

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 1

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return list(zip(v, v[1:]))

    def inverse(self) -> "Walk":
        return type(self)(self.vertices[::-1])

    def concat(self, other: "Walk") -> "Walk":
        """Concatenation without reduction."""
        if self.end != other.start:
            raise EndpointMismatch(f"walk ends at {self.end}, next starts at {other.start}")
        return Walk(self.vertices + other.vertices[1:])

    def check(self, G: "Graph") -> "Walk":
        v = self.vertices
        if not 0 <= v[0] < G.vertex_count:
            raise NotAWalk(f"vertex {v[0]} not in graph")
        for a, b in zip(v, v[1:]):
            if not G.has_edge(a, b):
                raise NotAWalk(f"{a}-{b} is not an edge")
        return self

    def is_reduced(self) -> bool:
        v = self.vertices
        return all(v[i - 1] != v[i + 1] for i in range(1, len(v) - 1))

    def __str__(self):
        return ",".join(map(str, self.vertices))


class ReducedWalk(Walk):
    """A walk that never immediately backtracks."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_reduced():
            raise InvalidParams(f"walk {self} is not reduced")


def reduce_vertices(vertices: Sequence[int]) -> list[int]:
    stack: list[int] = []
    for v in vertices:
        if len(stack) >= 2 and stack[-2] == v:
            stack.pop()
        else:
            stack.append(v)
    return stack


def reduce(W: Walk) -> ReducedWalk:
    return ReducedWalk(tuple(reduce_vertices(W.vertices)))


def product(W: Walk, W2: Walk) -> ReducedWalk:
    """Groupoid product: concatenate then reduce."""
    if W.end != W2.start:
        raise EndpointMismatch(f"walk ends at {W.end}, next starts at {W2.start}")
    return ReducedWalk(tuple(reduce_vertices(W.vertices + W2.vertices[1:])))


def power(W: Walk, k: int) -> ReducedWalk:
    """``W^k`` in the groupoid (negative k uses the inverse)."""
    if not W.is_closed:
        raise NotClosed("only closed walks have powers")
    base = W if k >= 0 else W.inverse()
    out = [W.start]
    for _ in range(abs(k)):
        out.extend(base.vertices[1:])
    return ReducedWalk(tuple(reduce_vertices(out)))


def cyclic_reduce(W: Walk) -> tuple[ReducedWalk, ReducedWalk]:
    """Split a closed walk as ``Q . core . Q^-1`` with ``core`` cyclically reduced."""
    if not W.is_closed:
        raise NotClosed(f"walk {W} is not closed")
    v = reduce_vertices(W.vertices)
    i, j = 0, len(v) - 1
    # matching first/last edges: v[i+1] == v[j-1]
    while j - i >= 2 and v[i + 1] == v[j - 1]:
        i += 1
        j -= 1
    return ReducedWalk(tuple(v[: i + 1])), ReducedWalk(tuple(v[i : j + 1]))


def is_cyclically_reduced(W: Walk) -> bool:
    v = W.vertices
    if not W.is_closed or not W.is_reduced():
        return False
    return len(v) < 3 or v[1] != v[-2]


def _smallest_period(seq: Sequence[int]) -> int:
    """Smallest d dividing len(seq) with seq invariant under rotation by d."""
    m = len(seq)
    fail = [0] * m
    k = 0
    for i in range(1, m):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    d = m - fail[-1]
    return d if m % d == 0 else m


@dataclass(frozen=True)
class RootDecomposition:
    """``W = red(Q _ core^exponent _ Q^-1)`` with ``core`` primitive and cyclically reduced.

    An empty ``core`` (length 0) stands for the trivial root; it only arises
    for the square-free solver's trivial cases and has exponent 0.
    """

    conjugator: ReducedWalk
    core: ReducedWalk
    exponent: int

    @property
    def base(self) -> int:
        return self.conjugator.start

    @property
    def is_trivial(self) -> bool:
        return self.core.is_empty

    @property
    def is_cyclically_reduced(self) -> bool:
        return self.conjugator.is_empty

    def root(self) -> ReducedWalk:
        """The primitive root as an element at ``base``."""
        return self.power(1)

    def power(self, i: int) -> ReducedWalk:
        q = self.conjugator
        if i == 0 or self.is_trivial:
            return ReducedWalk((q.start,))
        mid = power(self.core, i)
        return ReducedWalk(q.vertices + mid.vertices[1:] + q.vertices[-2::-1])


def trivial_root(v: int) -> RootDecomposition:
    e = ReducedWalk((v,))
    return RootDecomposition(e, e, 0)


def primitive_root(W: Walk) -> RootDecomposition:
    q, core = cyclic_reduce(W)
    if core.is_empty:
        raise EmptyClass("the trivial element has no primitive root")
    cyc = core.vertices[:-1]
    d = _smallest_period(cyc)
    r = ReducedWalk(cyc[:d] + (cyc[0],))
    return RootDecomposition(q, r, len(cyc) // d)


def is_power_of(X: Walk, R: RootDecomposition) -> int | None:
    """Return i with ``red(X) == root^i``, or None."""
    if X.start != R.base or not X.is_closed:
        raise BaseMismatch(f"walk based at {X.start}, root based at {R.base}")
    x = tuple(reduce_vertices(X.vertices))
    if len(x) == 1:
        return 0
    if R.is_trivial:
        return None
    m = len(R.core)
    body = len(x) - 1 - 2 * len(R.conjugator)
    if body <= 0 or body % m:
        return None
    k = body // m
    for i in (k, -k):
        if R.power(i).vertices == x:
            return i
    return None


class PrefixSplit(NamedTuple):
    position: int
    ext: ReducedWalk
    sign: int


def power_prefix_split(W: Walk, R: RootDecomposition | None) -> PrefixSplit:
    """Split ``red(W) = pre _ ext`` with ``pre`` the longest prefix of some power of R.

    ``R`` must be cyclically reduced (trivial allowed, or None for trivial).
    position is ``sign * |pre|``.
    """
    w = reduce_vertices(W.vertices)
    if R is None or R.is_trivial:
        if R is not None and w[0] != R.base:
            raise BaseMismatch(f"walk starts at {w[0]}, root based at {R.base}")
        return PrefixSplit(0, ReducedWalk(tuple(w)), 0)
    if not R.is_cyclically_reduced:
        raise NotCyclicallyReduced("root must be cyclically reduced")
    if w[0] != R.base:
        raise BaseMismatch(f"walk starts at {w[0]}, root based at {R.base}")
    cyc = R.core.vertices[:-1]
    m = len(cyc)
    best_len, best_sign = 0, 0
    for sign in (1, -1):
        k = 0
        while k + 1 < len(w) and w[k + 1] == cyc[(sign * (k + 1)) % m]:
            k += 1
        if k > best_len:
            best_len, best_sign = k, sign
    return PrefixSplit(best_sign * best_len, ReducedWalk(tuple(w[best_len:])), best_sign)


def cyclic_normal_form(W: Walk, allow_inversion: bool = False) -> tuple[int, ...]:
    """Conjugacy-class invariant of a closed walk: least rotation of its cyclic core."""
    _, core = cyclic_reduce(W)
    if core.is_empty:
        return ()
    cyc = core.vertices[:-1]
    candidates = [cyc]
    if allow_inversion:
        candidates.append(cyc[::-1])
    return min(c[i:] + c[:i] for c in candidates for i in range(len(c)))
