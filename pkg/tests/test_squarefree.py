import itertools
import random

import pytest

from homclave.catalog import height_map, pendant_cycle
from homclave.common import Unknown
from homclave.errors import ExtInconsistent, ExtNonTrivial, FiberNotConstant, TheoryViolation, UnsupportedCodomain
from homclave.graph import (
    Homomorphism,
    complete_graph,
    cycle_graph,
    petersen_graph,
    projection,
    tensor_product,
    validate_hom,
)
from homclave.oracle import iter_homs, recolor_moves, recolor_reachable
from homclave.squarefree import (
    Case,
    SolverConfig,
    TrichotomyReport,
    _measure_delta,
    ext_profile,
    extract_constant,
    extract_cyclic,
    find_extremal,
    improve,
    improvement_measure,
    product_context,
    rebase_cyclic,
    solve,
    trichotomy,
)
from homclave.walks import ReducedWalk, cyclic_normal_form, cyclic_reduce, primitive_root, reduce_vertices

C5 = cycle_graph(5)
ROOT5 = primitive_root(ReducedWalk((0, 1, 2, 3, 4, 0)))


def c10_instance(colors_along_cycle):
    """C_5×K_2 is a 10-cycle; color it by walking around from vertex 0."""
    ctx = product_context(C5, complete_graph(2))
    order, prev = [0], None
    while len(order) < 10:
        nxt = next(u for u in ctx.P.adjacency[order[-1]] if u != prev)
        prev = order[-1]
        order.append(nxt)
    m = [0] * 10
    for i, v in enumerate(order):
        m[v] = colors_along_cycle[i]
    return ctx, order, Homomorphism(10, 5, tuple(m))


def test_trichotomy_on_projections():
    ctx = product_context(C5, C5)
    assert trichotomy(ctx, projection(C5, C5, "H")).case is Case.TRIVIAL_LEFT
    assert trichotomy(ctx, projection(C5, C5, "G")).case is Case.TRIVIAL_RIGHT
    rot = Homomorphism.of([(i + 1) % 5 for i in range(5)], 5)
    assert trichotomy(ctx, projection(C5, C5, "G").then(rot)).case is Case.TRIVIAL_RIGHT


def test_trichotomy_common_root_on_height_map():
    G = cycle_graph(9)
    ctx = product_context(G, G)
    report = trichotomy(ctx, height_map(9, 9, 3, 3))
    assert report.case is Case.COMMON_ROOT
    assert len(report.root.core) == 3 and report.root.is_cyclically_reduced


def test_rebase_strips_conjugating_edge():
    G, H, K = cycle_graph(7), C5, pendant_cycle(5)
    f = [5, 0, 1, 2, 3, 4, 0]
    mu = Homomorphism.of([f[g] for g in range(7) for h in range(5)], K.vertex_count)
    assert validate_hom(mu, tensor_product(G, H), K)
    ctx = product_context(G, H)
    assert trichotomy(ctx, mu).case is Case.TRIVIAL_RIGHT
    image = ReducedWalk(tuple(reduce_vertices([5, 0, 1, 2, 3, 4, 0, 5])))
    root = primitive_root(image)
    assert root.conjugator.vertices == (5, 0)
    report = TrichotomyReport(Case.COMMON_ROOT, ctx.base, ctx.g_edge, ctx.h_edge, root)
    out = rebase_cyclic(ctx, mu, report)
    assert out.base == ctx.flat(1, 1)
    assert out.root.conjugator.vertices == (0,) and out.root.core.vertices == (0, 1, 2, 3, 4, 0)
    assert rebase_cyclic(ctx, mu, out) == out


def test_rebase_needs_common_root():
    ctx = product_context(C5, C5)
    with pytest.raises(TheoryViolation):
        rebase_cyclic(ctx, projection(C5, C5, "H"), trichotomy(ctx, projection(C5, C5, "H")))


def test_ext_profile_winding_map_is_all_prefix():
    ctx, order, mu = c10_instance([i % 5 for i in range(10)])
    prof = ext_profile(ctx.P, mu, ctx.base, ROOT5)
    assert prof.max_ext == 0
    assert {prof.position[v] % 5 for v in order} == set(range(5))


def test_ext_profile_argmax_example():
    ctx, order, mu = c10_instance([0, 1, 2, 3, 4, 0, 4, 3, 2, 1])
    prof = ext_profile(ctx.P, mu, ctx.base, None)
    star = prof.argmax()
    assert prof.max_ext == 5 and order.index(star) == 5 and mu.map[star] == 0


def test_ext_profile_left_projection():
    ctx = product_context(C5, C5)
    mu = projection(C5, C5, "G")
    # on a spanning tree of G×h0h1 every nonbase vertex has a nonempty ext
    tree = {ctx.flat(g, h) for g, h in [(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)]}
    prof = ext_profile(ctx.P, mu, ctx.base, None, tree)
    assert all(prof.ext_len(v) >= 1 for v in tree - {ctx.base})
    # the full domain carries a winding cycle, which the profile rejects
    with pytest.raises(ExtInconsistent):
        ext_profile(ctx.P, mu, ctx.base, None, ctx.left_domain)


def test_find_extremal_and_improve_example():
    ctx, order, mu = c10_instance([0, 1, 2, 3, 4, 0, 4, 3, 2, 1])
    prof = ext_profile(ctx.P, mu, ctx.base, None)
    found = find_extremal(ctx, mu, prof, Case.TRIVIAL_LEFT)
    assert found.vertices(2) == (order[5],)
    assert (found.color_a, found.color_b) == (0, 4)
    colors = list(mu.map)
    before = improvement_measure(ctx, colors)
    steps = improve(ctx, colors, found, C5)
    assert steps == [(order[5], 0, 3)]
    assert [colors[v] for v in order] == [0, 1, 2, 3, 4, 3, 4, 3, 2, 1]
    assert improvement_measure(ctx, colors) < before


def test_find_extremal_on_projection_is_none():
    ctx = product_context(C5, C5)
    mu = projection(C5, C5, "H")
    prof = ext_profile(ctx.P, mu, ctx.base, None, ctx.left_domain)
    assert find_extremal(ctx, mu, prof, Case.TRIVIAL_LEFT) is None


# found by randomized search over enumerated maps C_3×C_7 -> C_5
CASCADE = (0, 1, 0, 4, 3, 2, 3, 2, 1, 0, 4, 3, 2, 1, 2, 1, 0, 4, 3, 2, 1)


def test_two_level_cascade():
    G, H = cycle_graph(3), cycle_graph(7)
    ctx = product_context(G, H)
    mu = Homomorphism(21, 5, CASCADE)
    assert validate_hom(mu, ctx.P, C5)
    report = trichotomy(ctx, mu)
    prof = ext_profile(ctx.P, mu, report.base, None, ctx.left_domain)
    found = find_extremal(ctx, mu, prof, report.case)
    colors = list(CASCADE)
    before = improvement_measure(ctx, colors)
    steps = improve(ctx, colors, found, C5)
    assert any(v % 7 != found.edge[1] for v, _, _ in steps)
    assert validate_hom(Homomorphism(21, 5, tuple(colors)), ctx.P, C5)
    assert improvement_measure(ctx, colors) < before
    res = solve(G, H, C5, mu)
    assert validate_hom(res.hom, G if res.side == "G" else H, C5)


def test_improve_without_conflict_touches_only_S():
    ctx, order, mu = c10_instance([0, 1, 2, 3, 4, 0, 4, 3, 2, 1])
    prof = ext_profile(ctx.P, mu, ctx.base, None)
    found = find_extremal(ctx, mu, prof, Case.TRIVIAL_LEFT)
    colors = list(mu.map)
    improve(ctx, colors, found, C5)
    assert {v for v in range(10) if colors[v] != mu.map[v]} == set(found.vertices(2))


def test_extract_constant():
    ctx = product_context(C5, C5)
    rot = Homomorphism.of([(i + 2) % 5 for i in range(5)], 5)
    assert extract_constant(ctx, projection(C5, C5, "H").then(rot), C5) == rot
    with pytest.raises(FiberNotConstant):
        extract_constant(ctx, projection(C5, C5, "G"), C5)


def test_extract_cyclic_examples():
    ctx, order, mu = c10_instance([i % 5 for i in range(10)])
    prof = ext_profile(ctx.P, mu, ctx.base, ROOT5)
    fac = extract_cyclic(ctx.P, mu, prof, C5)
    assert fac.n == 5 and fac.delta.map == (0, 1, 2, 3, 4)
    assert fac.gamma.map == mu.map
    bad = ext_profile(ctx.P, Homomorphism.of([0, 1] * 5, 5), ctx.base, None)
    with pytest.raises(ExtNonTrivial):
        extract_cyclic(ctx.P, mu, bad, C5)


@pytest.mark.parametrize("a,b,n,c", [(9, 9, 3, 3), (15, 15, 5, 3), (15, 15, 3, 5)])
def test_height_maps_exit_through_a_cycle(a, b, n, c):
    G, H = cycle_graph(a), cycle_graph(b)
    res = solve(G, H, cycle_graph(n), height_map(a, b, n, c))
    assert res.intermediate is not None and res.intermediate.n % 2 == 1
    assert all(res.intermediate.delta.map[res.intermediate.gamma.map[v]] == res.recolored.map[v] for v in range(a * b))


def test_solve_examples():
    K3, C7 = complete_graph(3), cycle_graph(7)
    res = solve(K3, C5, C5, projection(K3, C5, "H"))
    assert res.side == "H" and validate_hom(res.hom, C5, C5)
    res = solve(C7, C5, C5, projection(C7, C5, "H"))
    assert validate_hom(res.hom, C7 if res.side == "G" else C5, C5)
    with pytest.raises(UnsupportedCodomain):
        solve(C5, C5, complete_graph(4), projection(C5, C5, "G"))


def sample_instances(step=11, limit=40):
    pairs = [(cycle_graph(3), cycle_graph(5)), (cycle_graph(5), cycle_graph(3)), (cycle_graph(3), cycle_graph(7))]
    for (G, H), K in itertools.product(pairs, [C5, cycle_graph(7), petersen_graph()]):
        P = tensor_product(G, H)
        for m in itertools.islice(iter_homs(P, K), 0, step * limit, step):
            yield G, H, K, Homomorphism(P.vertex_count, K.vertex_count, m)


def test_incremental_matches_full_recompute():
    full = SolverConfig(incremental=False)
    for G, H, K, mu in sample_instances():
        a, b = solve(G, H, K, mu), solve(G, H, K, mu, full)
        assert (a.side, a.hom, a.trace.steps) == (b.side, b.hom, b.trace.steps)


def test_trace_replays_and_measure_decreases():
    for G, H, K, mu in sample_instances(step=17, limit=25):
        res = solve(G, H, K, mu)
        P = tensor_product(G, H)
        assert res.trace.replay(mu, P, K) == res.recolored
        cps = res.trace.checkpoints
        assert all(x > y for x, y in zip(cps, cps[1:]))
        assert res.trace.commits <= G.vertex_count**2 * H.vertex_count


def test_measure_delta_matches_full_count():
    rng = random.Random(5)
    for G, H, K, mu in sample_instances(step=23, limit=10):
        ctx = product_context(G, H)
        colors = list(mu.map)
        for _ in range(20):
            moves = list(recolor_moves(tuple(colors), ctx.P, K))
            if not moves:
                break
            v, c = rng.choice(moves)
            before = improvement_measure(ctx, colors)
            step = (v, colors[v], c)
            colors[v] = c
            assert improvement_measure(ctx, colors) - before == _measure_delta(ctx, colors, [step])


def test_solver_endpoint_is_reachable_by_bfs():
    G, H = cycle_graph(3), cycle_graph(5)
    P = tensor_product(G, H)
    for m in itertools.islice(iter_homs(P, C5), 0, 60, 6):
        mu = Homomorphism(15, 5, m)
        res = solve(G, H, C5, mu)
        verdict = recolor_reachable(mu, res.recolored, P, C5, budget=50_000)
        assert isinstance(verdict, Unknown) or verdict is True


def cyclic_class(m, C):
    red = ReducedWalk(tuple(reduce_vertices([m[v] for v in C.vertices])))
    return cyclic_normal_form(cyclic_reduce(red)[1], allow_inversion=True)


def test_conjugacy_invariant_along_random_recolorings():
    rng = random.Random(11)
    G, H = cycle_graph(3), cycle_graph(7)
    ctx = product_context(G, H)
    for m in itertools.islice(iter_homs(ctx.P, C5), 0, 200, 20):
        colors = list(m)
        ref = [cyclic_class(colors, C) for C in ctx.full.cycles]
        for _ in range(30):
            moves = list(recolor_moves(tuple(colors), ctx.P, C5))
            if not moves:
                break
            v, c = rng.choice(moves)
            colors[v] = c
            assert [cyclic_class(colors, C) for C in ctx.full.cycles] == ref
