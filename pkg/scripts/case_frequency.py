"""How often each trichotomy case, exit route and commit count occurs on catalog maps."""

import argparse
import itertools
from collections import Counter

from homclave.catalog import acceptance_factors, squarefree_targets
from homclave.squarefree import product_context, solve, trichotomy
from homclave.sweep import maps_for


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--step", type=int, default=50)
    ap.add_argument("--budget", type=int, default=10_000)
    args = ap.parse_args()

    cases, exits, commits = Counter(), Counter(), Counter()
    factors = acceptance_factors()
    for K, (A, B) in itertools.product(squarefree_targets(), itertools.product(factors, repeat=2)):
        homs, _ = maps_for(A.graph, B.graph, K.graph, args.budget)
        for mu in homs[:: args.step]:
            G, H = A.graph, B.graph
            if G.is_connected() and H.is_connected():
                cases[trichotomy(product_context(G, H), mu).case.value] += 1
            res = solve(G, H, K.graph, mu)
            exits["cycle" if res.intermediate else f"side {res.side}"] += 1
            commits[res.trace.commits] += 1
    total = sum(exits.values())
    print(f"{total} maps")
    for name, counter in (("case", cases), ("exit", exits)):
        for key, n in counter.most_common():
            print(f"{name:5s} {key:14s} {n:7d}  {100 * n / total:5.1f}%")
    print("commits:", ", ".join(f"{k}:{v}" for k, v in sorted(commits.items())))


if __name__ == "__main__":
    main()
