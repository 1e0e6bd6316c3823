"""Constructive multiplicativity of square-free graphs via recoloring.

Pipeline for connected non-bipartite G, H and mu: G×H -> K with K square-free:

1. trichotomy: either all cycles of G×h0h1 map to trivial walks (left), or all
   cycles of g0g1×H do (right), or every cycle of G×H maps to a power of a
   common primitive root R.
2. improvement loop: measure how far each vertex's image walk leaves the
   powers of R (its ``ext``); fold extremal sets inwards by recoloring until
   none remain.  Each commit strictly lowers the improvement measure.
3. extraction: constant fibers give H -> K; otherwise mu* = delta∘gamma
   through C_|R|, and the odd cycle is split by the circular solver.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from operator import ne

from .circular import solve_into_odd_cycle
from .errors import (
    CannotRebase,
    CascadeStuck,
    ExtInconsistent,
    ExtNonTrivial,
    FiberNotConstant,
    RootMismatch,
    TheoryViolation,
    UnsupportedCodomain,
)
from .graph import Graph, Homomorphism, is_square_free, odd_closed_walk_from, tensor_product, validate_hom
from .homotopy import FundamentalCycleBasis, fundamental_cycles
from .split import CyclicFactorization, RecolorTrace, SplitResult, check_input, checked, reduce_and_solve
from .walks import (
    ReducedWalk,
    RootDecomposition,
    is_power_of,
    power_prefix_split,
    primitive_root,
    reduce_vertices,
    trivial_root,
)


class Case(str, Enum):
    TRIVIAL_LEFT = "TrivialLeft"
    TRIVIAL_RIGHT = "TrivialRight"
    COMMON_ROOT = "CommonRoot"


@dataclass(frozen=True)
class TrichotomyReport:
    case: Case
    base: int  # flat product vertex
    g_edge: tuple[int, int]
    h_edge: tuple[int, int]
    root: RootDecomposition | None = None


@dataclass(frozen=True)
class ProductContext:
    """Everything about G×H that does not depend on the coloring."""

    G: Graph
    H: Graph
    P: Graph
    g_edge: tuple[int, int]
    h_edge: tuple[int, int]
    left: FundamentalCycleBasis
    right: FundamentalCycleBasis
    full: FundamentalCycleBasis
    left_domain: frozenset[int]
    g_pairs: tuple[tuple[int, int], ...]  # ordered pairs with a common G-neighbor
    g_partners: tuple[tuple[int, ...], ...]

    @property
    def nH(self) -> int:
        return self.H.vertex_count

    @property
    def base(self) -> int:
        return self.g_edge[0] * self.nH + self.h_edge[0]

    def flat(self, g: int, h: int) -> int:
        return g * self.nH + h


@lru_cache(maxsize=64)
def product_context(G: Graph, H: Graph) -> ProductContext:
    P = tensor_product(G, H)
    nH = H.vertex_count
    (g0, g1), (h0, h1) = G.first_edge(), H.first_edge()
    base = g0 * nH + h0
    left_dom = frozenset(g * nH + h for g in G.vertices() for h in (h0, h1))
    right_dom = frozenset(g * nH + h for g in (g0, g1) for h in H.vertices())
    pairs = set()
    for x in G.vertices():
        for g in G.adjacency[x]:
            for g2 in G.adjacency[x]:
                if g != g2:
                    pairs.add((g, g2))
    return ProductContext(
        G,
        H,
        P,
        (g0, g1),
        (h0, h1),
        fundamental_cycles(P, base, left_dom),
        fundamental_cycles(P, base, right_dom),
        fundamental_cycles(P, base),
        left_dom,
        tuple(sorted(pairs)),
        tuple(tuple(sorted(g2 for g1, g2 in pairs if g1 == g)) for g in G.vertices()),
    )


def _image(mu, vertices) -> list[int]:
    return reduce_vertices([mu[v] for v in vertices])


def trichotomy(ctx: ProductContext, mu) -> TrichotomyReport:
    """Classify mu by the images of fundamental cycles at the base."""
    m = mu.map if isinstance(mu, Homomorphism) else mu
    args = (ctx.base, ctx.g_edge, ctx.h_edge)
    if all(len(_image(m, c.vertices)) == 1 for c in ctx.left.cycles):
        return TrichotomyReport(Case.TRIVIAL_LEFT, *args)
    if all(len(_image(m, c.vertices)) == 1 for c in ctx.right.cycles):
        return TrichotomyReport(Case.TRIVIAL_RIGHT, *args)
    images = [ReducedWalk(tuple(_image(m, c.vertices))) for c in ctx.full.cycles]
    first = next(w for w in images if not w.is_empty)
    root = primitive_root(first)
    for w in images:
        if is_power_of(w, root) is None:
            raise RootMismatch(f"cycle image {w} is not a power of root {root.root()}")
    return TrichotomyReport(Case.COMMON_ROOT, *args, root=root)


def rebase_cyclic(ctx: ProductContext, mu, report: TrichotomyReport) -> TrichotomyReport:
    """Move the base along odd closed walks until the root is cyclically reduced."""
    if report.case is not Case.COMMON_ROOT:
        raise TheoryViolation("only a common-root report can be rebased")
    m = mu.map if isinstance(mu, Homomorphism) else mu
    base, root = report.base, report.root
    while not root.is_cyclically_reduced:
        q = root.conjugator.vertices
        edge = [q[0], q[1]]
        C = odd_closed_walk_from(ctx.P, base)
        stack: list[int] = []
        target = None
        for v in C.vertices:
            c = m[v]
            if len(stack) >= 2 and stack[-2] == c:
                stack.pop()
            else:
                stack.append(c)
            if stack == edge:
                target = v
                break
        if target is None:
            raise CannotRebase(f"no prefix of {C} maps to the edge {edge}")
        base = target
        root = RootDecomposition(ReducedWalk(q[1:]), root.core, root.exponent)
    return replace(report, base=base, root=root)


def _extend(red: tuple[int, ...], c: int) -> tuple[int, ...]:
    if len(red) >= 2 and red[-2] == c:
        return red[:-1]
    return red + (c,)


def _splitter(root: RootDecomposition):
    """Tuple-level power_prefix_split for a cyclically reduced root."""
    if root.is_trivial:
        return lambda red: (0, red)
    if not root.is_cyclically_reduced:
        raise TheoryViolation("ext needs a cyclically reduced root")
    cyc = root.core.vertices[:-1]
    m = len(cyc)

    def split(red):
        n = len(red)
        k = 0
        while k + 1 < n and red[k + 1] == cyc[(k + 1) % m]:
            k += 1
        j = 0
        while j + 1 < n and red[j + 1] == cyc[-(j + 1) % m]:
            j += 1
        if j > k:
            return -j, red[j:]
        return k, red[k:]

    return split


@dataclass
class ExtProfile:
    base: int
    root: RootDecomposition
    position: dict[int, int]
    ext: dict[int, tuple[int, ...]]
    reds: dict[int, tuple[int, ...]] = field(default_factory=dict, repr=False)
    _max: int | None = field(default=None, repr=False)

    def ext_len(self, v: int) -> int:
        return len(self.ext[v]) - 1

    @property
    def max_ext(self) -> int:
        if self._max is None:
            self._max = max(map(len, self.ext.values())) - 1
        return self._max

    def argmax(self) -> int:
        """Smallest product vertex with maximal |ext|."""
        best = self.max_ext + 1
        return min(v for v, e in self.ext.items() if len(e) == best)

    def reached(self, v: int) -> bool:
        return v in self.ext

    def _consistent(self, v, pos, ex) -> bool:
        period = 0 if self.root.is_trivial else len(self.root.core)
        if ex != self.ext[v]:
            return False
        return (pos - self.position[v]) % period == 0 if period else pos == self.position[v]

    def refresh(self, P: Graph, mu, changed) -> None:
        """Recompute ext at recolored vertices only.

        Valid when the base keeps its color: K is square-free, so a recolored
        vertex x with neighbors y, z on a walk has mu(y) == mu(z) whenever the
        color of x actually matters, and every other image walk reduces the same.
        """
        m = mu.map if isinstance(mu, Homomorphism) else mu
        changed = [v for v in changed if v in self.ext]
        if self.base in changed:
            raise TheoryViolation("cannot refresh a profile whose base was recolored")
        fixed = set(self.ext) - set(changed)
        split = _splitter(self.root)
        for v in changed:
            nbrs = [u for u in P.adjacency[v] if u in fixed]
            if not nbrs:
                raise TheoryViolation(f"recolored vertex {v} has no fixed neighbor")
            red = _extend(self.reds[nbrs[0]], m[v])
            pos, ex = split(red)
            self.reds[v], self.position[v], self.ext[v] = red, pos, ex
            for u in nbrs[1:]:
                p2, e2 = split(_extend(self.reds[u], m[v]))
                if not self._consistent(v, p2, e2):
                    raise ExtInconsistent(f"walks to {v} disagree after recoloring")
        self._max = None


def ext_profile(P: Graph, mu, base: int, root: RootDecomposition | None, allowed=None) -> ExtProfile:
    """BFS from base; split each tree-walk image into pre (powers of root) and ext.

    Every non-tree edge is checked for walk-independence of (ext, position mod |root|).
    """
    m = mu.map if isinstance(mu, Homomorphism) else mu
    root = root if root is not None else trivial_root(m[base])
    allow = None if allowed is None else allowed if isinstance(allowed, (set, frozenset)) else set(allowed)
    period = 0 if root.is_trivial else len(root.core)
    split = _splitter(root)

    reds = {base: (m[base],)}
    position, ext = {}, {}
    position[base], ext[base] = split(reds[base])
    queue = deque([base])
    while queue:
        u = queue.popleft()
        ru = reds[u]
        for v in P.adjacency[u]:
            if allow is not None and v not in allow:
                continue
            red = _extend(ru, m[v])
            pos, ex = split(red)
            if v not in reds:
                reds[v] = red
                position[v], ext[v] = pos, ex
                queue.append(v)
            elif ex != ext[v] or (period and (pos - position[v]) % period) or (not period and pos != position[v]):
                raise ExtInconsistent(f"walks to {v} disagree: ext {ex} vs {ext[v]}")
    return ExtProfile(base, root, position, ext, reds)


# --- extremal sets ----------------------------------------------------------


@dataclass(frozen=True)
class HExtremalSet:
    """S ⊆ V(G)×{h1} (stored as G-vertices) for the oriented H-edge h0 -> h1."""

    S: frozenset[int]
    edge: tuple[int, int]
    color_a: int
    color_b: int

    def vertices(self, nH: int) -> tuple[int, ...]:
        return tuple(sorted(g * nH + self.edge[1] for g in self.S))


def _nbhd(G: Graph, S) -> set[int]:
    adj = G.adjacency
    return set().union(*[adj[g] for g in S])


def extremal_shape(G: Graph, nH: int, m, S, edge) -> tuple[set[int], set[int]]:
    """(N(S), N²(S)) in G×h0h1 as G-vertex sets, N(S) in fiber h0 and N² in fiber h1."""
    N = _nbhd(G, S)
    N2 = _nbhd(G, N)
    N2.difference_update(S)
    return N, N2


def check_extremal(G: Graph, nH: int, m, S, edge) -> tuple[int, int] | None:
    """Return (a, b) if (S, edge) is H-extremal for the coloring m, else None."""
    if not S:
        return None
    h0, h1 = edge
    N, N2 = extremal_shape(G, nH, m, S, edge)
    sa = {m[g * nH + h1] for g in S}
    nb = {m[g * nH + h0] for g in N}
    if len(sa) != 1 or len(nb) != 1 or not N2:
        return None
    (a,), (b,) = sa, nb
    if any(m[g * nH + h1] == a for g in N2):
        return None
    return a, b


def restrict_to_component(G: Graph, nH: int, m, S, edge) -> tuple[frozenset[int], tuple[int, int]] | None:
    """The component of S ∪ N(S) (in G×h0h1) with the smallest S-vertex among those that are extremal.

    Returns the component (as G-vertices) and its colors (a, b).
    """
    adj = G.adjacency
    left = set(S)
    for s in sorted(S):
        if s not in left:
            continue
        left.discard(s)
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                for z in adj[y]:
                    if z in left:
                        left.discard(z)
                        comp.append(z)
                        stack.append(z)
        colors = check_extremal(G, nH, m, comp, edge)
        if colors is not None:
            return frozenset(comp), colors
    return None


def find_extremal(ctx: ProductContext, mu, profile: ExtProfile, case: Case) -> HExtremalSet | None:
    """First extremal set from (1) the ext-argmax, else (2) a constant fiber next to a non-constant one."""
    G, H, nH = ctx.G, ctx.H, ctx.nH
    m = mu.map if isinstance(mu, Homomorphism) else mu

    def finish(S, edge):
        found = restrict_to_component(G, nH, m, S, edge)
        if found is None:
            return None
        comp, (a, b) = found
        return HExtremalSet(comp, edge, a, b)

    if profile.max_ext > 0:
        star = profile.argmax()
        g_star, h_star = divmod(star, nH)
        target = profile.ext[star]
        S = frozenset(g for g in G.vertices() if profile.ext.get(g * nH + h_star) == target)
        if case is Case.TRIVIAL_LEFT:
            h0, h1 = ctx.h_edge
            partners = [h1 if h_star == h0 else h0]
        else:
            partners = list(H.adjacency[h_star])
        for h2 in partners:
            edge = (h2, h_star)
            _, N2 = extremal_shape(G, nH, m, S, edge)
            if N2:
                found = finish(S, edge)
                if found is None:
                    raise ExtInconsistent(f"ext-argmax set at fiber {h_star} is not extremal")
                return found

    fibers = [m[h::nH] for h in range(nH)]
    constant = [f.count(f[0]) == len(f) for f in fibers]
    for h0 in H.vertices():
        if not constant[h0]:
            continue
        for h1 in H.adjacency[h0]:
            if constant[h1]:
                continue
            a = min(fibers[h1])
            S = frozenset(g for g, c in enumerate(fibers[h1]) if c == a)
            found = finish(S, (h0, h1))
            if found is not None:
                return found
            raise TheoryViolation(f"constant fiber {h0} next to fiber {h1} yields no extremal set")
    return None


def improvement_measure(ctx: ProductContext, mu) -> int:
    """Ordered triples (g, g', h) with a common G-neighbor and different colors at (g,h), (g',h)."""
    m = mu.map if isinstance(mu, Homomorphism) else mu
    nH = ctx.nH
    rows = [m[g * nH : (g + 1) * nH] for g in ctx.G.vertices()]
    return sum(sum(map(ne, rows[g], rows[g2])) for g, g2 in ctx.g_pairs)


def improve(
    ctx: ProductContext, colors: list[int], ext_set: HExtremalSet, K: Graph
) -> list[tuple[int, int, int]]:
    """Recolor an extremal set in place, cascading to smaller sets on conflicts.

    Returns the single-vertex steps that were applied.
    """
    G, P, nH = ctx.G, ctx.P, ctx.nH
    kadj = [K.neighbor_set(c) for c in K.vertices()]
    S, (h0, h1), a = set(ext_set.S), ext_set.edge, ext_set.color_a
    while True:
        N, N2 = extremal_shape(G, nH, colors, S, (h0, h1))
        a2 = min(c for c in (colors[g * nH + h1] for g in N2) if c != a)
        ok = kadj[a2]
        bad = [u for g in S for u in P.adjacency[g * nH + h1] if colors[u] not in ok]
        conflict = min(bad) if bad else None
        if conflict is None:
            steps = []
            for g in sorted(S):
                v = g * nH + h1
                steps.append((v, colors[v], a2))
                colors[v] = a2
            return steps
        h2 = conflict % nH
        b2 = colors[conflict]
        S2 = {g for g in _nbhd(G, S) if colors[g * nH + h2] == b2}
        edge2 = (h1, h2)
        found = restrict_to_component(G, nH, colors, S2, edge2)
        if found is None:
            raise CascadeStuck(f"conflict set in fiber {h2} is not extremal")
        comp = found[0]
        if len(comp) + len(_nbhd(G, comp)) >= len(S) + len(N):
            raise CascadeStuck("cascade did not shrink the extremal set")
        S, h0, h1, a = set(comp), h1, h2, b2


# --- extraction -------------------------------------------------------------


def extract_constant(ctx: ProductContext, mu, K: Graph) -> Homomorphism:
    """gamma: H -> K with mu = gamma ∘ projection to H."""
    m = mu.map if isinstance(mu, Homomorphism) else mu
    nH = ctx.nH
    values = []
    for h in range(nH):
        cols = {m[g * nH + h] for g in ctx.G.vertices()}
        if len(cols) != 1:
            raise FiberNotConstant(f"fiber {h} has colors {sorted(cols)}")
        values.append(cols.pop())
    gamma = Homomorphism(nH, K.vertex_count, tuple(values))
    if not validate_hom(gamma, ctx.H, K):
        raise TheoryViolation("fiber colors do not form a homomorphism")
    return gamma


def extract_cyclic(P: Graph, mu, profile: ExtProfile, K: Graph) -> CyclicFactorization:
    """gamma(v) = signed position mod |R|, delta(i) = i-th vertex of R."""
    m = mu.map if isinstance(mu, Homomorphism) else mu
    root = profile.root
    if root.is_trivial or not root.is_cyclically_reduced:
        raise ExtNonTrivial("need a nonempty cyclically reduced root")
    if profile.max_ext > 0 or len(profile.ext) != P.vertex_count:
        raise ExtNonTrivial("some vertex has a nonempty ext")
    cyc = root.core.vertices[:-1]
    n = len(cyc)
    gamma = Homomorphism(P.vertex_count, n, tuple(profile.position[v] % n for v in range(P.vertex_count)))
    delta = Homomorphism(n, K.vertex_count, cyc)
    if any(delta.map[gamma.map[v]] != m[v] for v in range(P.vertex_count)):
        raise TheoryViolation("delta∘gamma differs from the coloring")
    return CyclicFactorization(gamma, delta)


# --- driver -----------------------------------------------------------------


@dataclass(frozen=True)
class SolverConfig:
    check_measure: bool = True
    check_case: bool = True
    max_commits: int | None = None
    # refresh ext only at recolored vertices instead of rebuilding everything
    incremental: bool = True


def _measure_delta(ctx: ProductContext, colors: list[int], steps) -> int:
    """Change in improvement_measure caused by steps (already applied to colors)."""
    nH = ctx.nH
    old = {v: a for v, a, _ in steps}
    pairs = set()
    for v in old:
        g, h = divmod(v, nH)
        for g2 in ctx.g_partners[g]:
            pairs.add((min(g, g2) * nH + h, max(g, g2) * nH + h))
    before = sum(1 for x, y in pairs if old.get(x, colors[x]) != old.get(y, colors[y]))
    after = sum(1 for x, y in pairs if colors[x] != colors[y])
    return 2 * (after - before)


def _improve_loop(ctx: ProductContext, mu: Homomorphism, K: Graph, cfg: SolverConfig, first: TrichotomyReport):
    colors = list(mu.map)
    trace = RecolorTrace()
    measure = improvement_measure(ctx, colors)
    trace.checkpoints.append(measure)
    trace.notes.append(f"base {ctx.base}, case {first.case.value}")
    bound = cfg.max_commits if cfg.max_commits is not None else measure
    report, profile = first, None
    while True:
        if profile is None:
            report = first if not trace.steps else trichotomy(ctx, colors)
            if cfg.check_case and report.case is not first.case:
                raise TheoryViolation(f"case changed from {first.case.value} to {report.case.value}")
            if report.case is Case.COMMON_ROOT:
                report = rebase_cyclic(ctx, colors, report)
                profile = ext_profile(ctx.P, colors, report.base, report.root)
            else:
                profile = ext_profile(ctx.P, colors, report.base, None, ctx.left_domain)
        found = find_extremal(ctx, colors, profile, report.case)
        if found is None:
            return colors, trace, report, profile
        if trace.commits >= bound:
            raise TheoryViolation(f"more than {bound} committed improvements")
        steps = improve(ctx, colors, found, K)
        trace.steps.extend(steps)
        new = measure + _measure_delta(ctx, colors, steps)
        if cfg.check_measure and new >= measure:
            raise CascadeStuck(f"measure did not decrease ({measure} -> {new})")
        measure = new
        trace.checkpoints.append(measure)
        changed = [v for v, _, _ in steps]
        if cfg.incremental and report.base == ctx.base and ctx.base not in changed:
            profile.refresh(ctx.P, colors, changed)
        else:
            profile = None


def _transpose(mu: Homomorphism, nG: int, nH: int) -> Homomorphism:
    return Homomorphism(mu.domain_order, mu.codomain_order, tuple(mu.map[g * nH + h] for h in range(nH) for g in range(nG)))


def _core(G: Graph, H: Graph, K: Graph, mu: Homomorphism, cfg: SolverConfig) -> SplitResult:
    ctx = product_context(G, H)
    first = trichotomy(ctx, mu)
    if first.case is Case.TRIVIAL_RIGHT:
        nG, nH = G.vertex_count, H.vertex_count
        res = _core(H, G, K, _transpose(mu, nG, nH), cfg)
        side = "G" if res.side == "H" else "H"
        trace = res.trace.remapped(lambda f: (f % nG) * nH + f // nG)
        trace.notes.append("factors swapped")
        return SplitResult(side, res.hom, trace, _transpose(res.recolored, nH, nG))

    colors, trace, report, profile = _improve_loop(ctx, mu, K, cfg, first)
    recolored = Homomorphism(mu.domain_order, mu.codomain_order, tuple(colors))
    if report.case is Case.COMMON_ROOT and profile.max_ext == 0:
        fac = extract_cyclic(ctx.P, colors, profile, K)
        sub = solve_into_odd_cycle(G, H, fac.n, fac.gamma)
        trace.notes.extend(sub.trace.notes)
        trace.notes.append(f"factored through C_{fac.n}")
        return SplitResult(sub.side, sub.hom.then(fac.delta), trace, recolored, fac)
    return SplitResult("H", extract_constant(ctx, colors, K), trace, recolored)


def solve(G: Graph, H: Graph, K: Graph, mu: Homomorphism, cfg: SolverConfig | None = None) -> SplitResult:
    """A validated homomorphism G -> K or H -> K from mu: G×H -> K, K square-free."""
    cfg = cfg or SolverConfig()
    if not is_square_free(K):
        raise UnsupportedCodomain("K is not square-free")
    check_input(G, H, K, mu)
    return checked(reduce_and_solve(G, H, K, mu, lambda G_, H_, K_, m_: _core(G_, H_, K_, m_, cfg)), G, H, K)
