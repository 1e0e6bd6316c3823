"""Command-line front end.

Graphs are given as ``cycle:n``, ``path:n``, ``clique:n``, ``circ:p/q``,
``petersen`` or ``file:PATH`` (DIMACS-style edge list, 1-based).  Results go
to stdout as JSON, diagnostics to stderr.  Exit codes: 0 ok, 1 error,
2 when a search found nothing.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from pathlib import Path

from .common import Unknown
from .errors import BudgetExceeded, HomclaveError, InvalidParams, ParseError, UnsupportedCodomain
from .graph import (
    Graph,
    Homomorphism,
    build_graph,
    circular_clique,
    complete_graph,
    cycle_graph,
    is_square_free,
    path_graph,
    petersen_graph,
    tensor_product,
    validate_hom,
)
from .oracle import EnumerationBudget, enumerate_homs, find_hom, recolor_reachable
from .walks import Walk, primitive_root, reduce

DEFAULT_SEED = 2021
EXIT_OK, EXIT_ERROR, EXIT_NOTHING = 0, 1, 2

_SPEC = re.compile(r"^(cycle|path|clique):(\d+)$|^circ:(\d+)/(\d+)$|^petersen$")


# --- graph files ------------------------------------------------------------


def read_dimacs(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second header line", lineno, 1)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("expected 'p edge <n> <m>'", lineno, 1)
            n, m = _ints(parts[2:], raw, lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno, 1)
            if len(parts) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno, 1)
            u, v = _ints(parts[1:], raw, lineno)
            for x, tok in ((u, parts[1]), (v, parts[2])):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} outside 1..{n}", lineno, raw.index(tok) + 1)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno, raw.index(parts[0]) + 1)
    if n is None:
        raise ParseError("missing 'p edge' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def _ints(tokens, raw, lineno):
    out = []
    for tok in tokens:
        if not tok.isdigit():
            raise ParseError(f"expected a non-negative integer, got {tok!r}", lineno, raw.index(tok) + 1)
        out.append(int(tok))
    return out


def write_dimacs(G: Graph) -> str:
    lines = [f"p edge {G.vertex_count} {G.edge_count}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edge_list]
    return "\n".join(lines) + "\n"


def parse_graph(spec: str) -> Graph:
    if spec.startswith("file:"):
        return read_dimacs(Path(spec[5:]).read_text())
    match = _SPEC.match(spec)
    if match is None:
        raise ParseError(f"bad graph spec {spec!r}", 1, 1)
    kind, n, p, q = match.groups()
    if spec == "petersen":
        return petersen_graph()
    if p is not None:
        return circular_clique(int(p), int(q))
    return {"cycle": cycle_graph, "path": path_graph, "clique": complete_graph}[kind](int(n))


def circular_params(spec: str) -> tuple[int, int] | None:
    m = re.match(r"^circ:(\d+)/(\d+)$", spec)
    return (int(m.group(1)), int(m.group(2))) if m else None


def read_hom(path: str) -> Homomorphism:
    data = json.loads(Path(path).read_text())
    try:
        return Homomorphism(int(data["n"]), int(data["k"]), tuple(int(x) for x in data["map"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"homomorphism file needs n, k and map: {exc}") from exc


def hom_json(h: Homomorphism) -> dict:
    return {"n": h.domain_order, "k": h.codomain_order, "map": list(h.map)}


def parse_walk(text: str) -> Walk:
    try:
        return Walk(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise ParseError(f"walk must be comma-separated integers: {text!r}") from exc


# --- commands ---------------------------------------------------------------


def cmd_hom(args) -> int:
    G, K = parse_graph(args.G), parse_graph(args.K)
    if args.action == "check":
        mu = read_hom(args.map)
        return _emit({"valid": validate_hom(mu, G, K)})
    if args.action == "find":
        hom = find_hom(G, K)
        if hom is None:
            _emit({"found": False})
            return EXIT_NOTHING
        return _emit({"found": True, **hom_json(hom)})
    budget = EnumerationBudget(max_solutions=args.budget)
    try:
        homs, complete = enumerate_homs(G, K, budget), True
    except BudgetExceeded as exc:
        homs, complete = exc.partial, False
    return _emit({"count": len(homs), "complete": complete, "maps": [list(h.map) for h in homs]})


def cmd_product(args) -> int:
    P = tensor_product(parse_graph(args.G), parse_graph(args.H))
    sys.stdout.write(write_dimacs(P))
    return EXIT_OK


def cmd_squarefree(args) -> int:
    return _emit({"square_free": is_square_free(parse_graph(args.G))})


def cmd_walk(args) -> int:
    W = parse_walk(args.walk)
    if args.graph:
        W.check(parse_graph(args.graph))
    if args.action == "reduce":
        return _emit({"reduced": list(reduce(W).vertices)})
    R = primitive_root(W)
    return _emit(
        {
            "conjugator": list(R.conjugator.vertices),
            "core": list(R.core.vertices),
            "exponent": R.exponent,
        }
    )


def cmd_winding(args) -> int:
    from .winding import CircularParams, delta_phi, winding_number

    pq = circular_params(args.K)
    if pq is None:
        raise InvalidParams("winding needs K given as circ:p/q")
    params = CircularParams(*pq)
    W = parse_walk(args.walk).check(circular_clique(*pq))
    out = {"delta": delta_phi(W, params).delta}
    if W.is_closed:
        out["winding"] = winding_number(W, params)
    return _emit(out)


def _find_mu(G: Graph, H: Graph, K: Graph, source: str) -> Homomorphism | None:
    if source == "search":
        return find_hom(tensor_product(G, H), K)
    return read_hom(source)


def run_split(G: Graph, H: Graph, K: Graph, mu: Homomorphism, k_spec: str):
    pq = circular_params(k_spec)
    if pq is not None and 2 * pq[1] <= pq[0] < 4 * pq[1]:
        from .circular import solve_circular

        return solve_circular(G, H, pq[0], pq[1], mu)
    if not is_square_free(K):
        raise UnsupportedCodomain(f"{k_spec} is neither square-free nor a circular clique with 2 <= p/q < 4")
    from .squarefree import solve

    return solve(G, H, K, mu)


def cmd_split(args) -> int:
    G, H, K = parse_graph(args.G), parse_graph(args.H), parse_graph(args.K)
    pq = circular_params(args.K)
    if not is_square_free(K) and (pq is None or not 2 * pq[1] <= pq[0] < 4 * pq[1]):
        raise UnsupportedCodomain(f"{args.K} is neither square-free nor a circular clique with 2 <= p/q < 4")
    mu = _find_mu(G, H, K, args.mu)
    if mu is None:
        _emit({"found": False})
        return EXIT_NOTHING
    return _emit(run_split(G, H, K, mu, args.K).to_dict())


def cmd_recolor(args) -> int:
    G, K = parse_graph(args.G), parse_graph(args.K)
    if args.action == "reach":
        mu, mu2 = read_hom(args.map), read_hom(args.map2)
        verdict = recolor_reachable(mu, mu2, G, K, budget=args.budget)
        return _emit({"reachable": None if isinstance(verdict, Unknown) else verdict})
    # trace: G is the left factor here, H the right one
    H = parse_graph(args.H)
    mu = _find_mu(G, H, K, args.mu)
    if mu is None:
        _emit({"found": False})
        return EXIT_NOTHING
    res = run_split(G, H, K, mu, args.K)
    final = res.trace.replay(mu, tensor_product(G, H), K)
    return _emit(
        {
            "start": list(mu.map),
            "steps": [list(s) for s in res.trace.steps],
            "measure": list(res.trace.checkpoints),
            "end": list(final.map),
        }
    )


def _emit(obj) -> int:
    json.dump(obj, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")
    return EXIT_OK


def seed() -> int:
    return int(os.environ.get("HOMCLAVE_SEED", DEFAULT_SEED))


def cmd_random(args) -> int:
    """Random walk in a graph, for feeding the walk commands."""
    rng = random.Random(seed())
    G = parse_graph(args.G)
    v = rng.randrange(G.vertex_count)
    out = [v]
    for _ in range(args.length):
        v = rng.choice(G.adjacency[v])
        out.append(v)
    return _emit({"walk": out})


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homclave", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="check, find or enumerate homomorphisms G -> K")
    p.add_argument("action", choices=["check", "find", "enum"])
    p.add_argument("G")
    p.add_argument("K")
    p.add_argument("--map", help="homomorphism JSON file (for check)")
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("product", help="tensor product G×H as a DIMACS edge list")
    p.add_argument("G")
    p.add_argument("H")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("squarefree", help="is G square-free")
    p.add_argument("G")
    p.set_defaults(func=cmd_squarefree)

    p = sub.add_parser("walk", help="reduce a walk or take its primitive root")
    p.add_argument("action", choices=["reduce", "root"])
    p.add_argument("walk", help="comma-separated vertices")
    p.add_argument("--graph", help="check the walk against this graph")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("winding", help="winding number of a walk in circ:p/q")
    p.add_argument("K")
    p.add_argument("walk")
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("split", help="turn mu: G×H -> K into G -> K or H -> K")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("K")
    p.add_argument("mu", nargs="?", default="search", help="homomorphism JSON file or 'search'")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("recolor", help="recoloring reachability or a solver trace")
    p.add_argument("action", choices=["reach", "trace"])
    p.add_argument("G")
    p.add_argument("K")
    p.add_argument("--map")
    p.add_argument("--map2")
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--H", help="right factor (for trace)")
    p.add_argument("--mu", default="search")
    p.set_defaults(func=cmd_recolor)

    p = sub.add_parser("random-walk", help="seeded random walk (HOMCLAVE_SEED)")
    p.add_argument("G")
    p.add_argument("--length", type=int, default=8)
    p.set_defaults(func=cmd_random)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "hom" and args.action == "check" and not args.map:
            raise InvalidParams("hom check needs --map")
        if args.command == "recolor" and args.action == "reach" and not (args.map and args.map2):
            raise InvalidParams("recolor reach needs --map and --map2")
        if args.command == "recolor" and args.action == "trace" and not args.H:
            raise InvalidParams("recolor trace needs --H")
        return args.func(args)
    except (HomclaveError, OSError, json.JSONDecodeError) as exc:
        print(f"homclave: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
