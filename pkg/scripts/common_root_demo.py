"""Maps C_a × C_b -> C_n in which both factors wind, so the solver exits through a cycle.

The height map (x, y) -> x - 2*floor((x - y)/c) mod n sends every diagonal step
to a step of ±1.  For the listed parameters every fundamental cycle of the
product maps to a power of one odd cycle and neither factor alone is trivial.
"""

import argparse

from homclave.catalog import height_map
from homclave.graph import cycle_graph, tensor_product, validate_hom
from homclave.squarefree import product_context, solve, trichotomy

DEFAULT = ["9,9,3,3", "15,15,5,3", "15,15,3,5", "21,21,7,3", "25,25,5,5"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("params", nargs="*", default=DEFAULT, help="a,b,n,c")
    args = ap.parse_args()
    for spec in args.params:
        a, b, n, c = map(int, spec.split(","))
        G, H, K = cycle_graph(a), cycle_graph(b), cycle_graph(n)
        mu = height_map(a, b, n, c)
        if not validate_hom(mu, tensor_product(G, H), K):
            print(f"{spec}: not a homomorphism, skipped")
            continue
        report = trichotomy(product_context(G, H), mu)
        res = solve(G, H, K, mu)
        root = "-" if report.root is None else ",".join(map(str, report.root.root().vertices))
        via = f"C_{res.intermediate.n}" if res.intermediate else "constant fibers"
        print(
            f"{spec}: case {report.case.value}, root {root}, {res.trace.commits} commits, "
            f"side {res.side} via {via}"
        )


if __name__ == "__main__":
    main()
