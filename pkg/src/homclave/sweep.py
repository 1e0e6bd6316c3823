"""Exhaustive sweeps: solve every enumerated mu: G×H -> K over catalog pairs."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .catalog import NamedGraph, acceptance_factors, circular_targets, squarefree_targets
from .errors import BudgetExceeded, HomclaveError
from .graph import Graph, Homomorphism, tensor_product, validate_hom
from .oracle import EnumerationBudget, enumerate_homs

Solver = Callable[[Graph, Graph, Homomorphism], "object"]


@dataclass(frozen=True)
class SweepConfig:
    budget: int = 10_000
    step: int = 1  # solve every step-th enumerated map
    seed: int = 2021


@dataclass
class SweepStats:
    instances: int = 0
    validated: int = 0
    truncated: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    max_seconds: float = 0.0
    solve_seconds: float = 0.0
    wall_seconds: float = 0.0
    sides: dict[str, int] = field(default_factory=dict)

    @property
    def all_valid(self) -> bool:
        return self.instances > 0 and self.validated == self.instances

    def summary(self) -> str:
        return (
            f"{self.validated}/{self.instances} validated, max {self.max_seconds * 1000:.1f} ms/instance, "
            f"sweep {self.wall_seconds:.1f} s ({self.solve_seconds:.1f} s solving)"
        )


def catalog_pairs(cfg: SweepConfig) -> list[tuple[NamedGraph, NamedGraph]]:
    factors = acceptance_factors(seed=cfg.seed)
    return list(itertools.product(factors, repeat=2))


def maps_for(G: Graph, H: Graph, K: Graph, budget: int) -> tuple[list[Homomorphism], bool]:
    """First `budget` maps G×H -> K in enumeration order, and whether that is all of them."""
    try:
        return enumerate_homs(tensor_product(G, H), K, EnumerationBudget(max_solutions=budget)), True
    except BudgetExceeded as exc:
        return exc.partial, False


def run_sweep(
    pairs: Iterable[tuple[NamedGraph, NamedGraph]],
    targets: Iterable[tuple[str, Graph, Solver]],
    cfg: SweepConfig,
    progress: Callable[[str], None] | None = None,
) -> SweepStats:
    stats = SweepStats()
    start = time.perf_counter()
    pairs = list(pairs)
    for name, K, solver in targets:
        for A, B in pairs:
            G, H = A.graph, B.graph
            homs, complete = maps_for(G, H, K, cfg.budget)
            if not complete:
                stats.truncated.append(f"{A.name}×{B.name}->{name}")
            for mu in homs[:: cfg.step]:
                stats.instances += 1
                t = time.perf_counter()
                try:
                    res = solver(G, H, mu)
                except HomclaveError as exc:
                    stats.failures.append(f"{A.name}×{B.name}->{name} {list(mu.map)}: {exc!r}")
                    continue
                finally:
                    dt = time.perf_counter() - t
                    stats.solve_seconds += dt
                    stats.max_seconds = max(stats.max_seconds, dt)
                F = G if res.side == "G" else H
                if validate_hom(res.hom, F, K):
                    stats.validated += 1
                    stats.sides[res.side] = stats.sides.get(res.side, 0) + 1
                else:
                    stats.failures.append(f"{A.name}×{B.name}->{name} {list(mu.map)}: invalid output")
            if progress:
                progress(f"{A.name}×{B.name}->{name}: {len(homs)} maps, {stats.instances} total")
    stats.wall_seconds = time.perf_counter() - start
    return stats


def squarefree_sweep(cfg: SweepConfig = SweepConfig(), progress=None) -> SweepStats:
    from .squarefree import solve

    targets = [(t.name, t.graph, lambda G, H, mu, K=t.graph: solve(G, H, K, mu)) for t in squarefree_targets()]
    return run_sweep(catalog_pairs(cfg), targets, cfg, progress)


def circular_sweep(cfg: SweepConfig = SweepConfig(), progress=None) -> SweepStats:
    from .circular import solve_circular

    targets = [
        (f"K{p}/{q}", K, lambda G, H, mu, p=p, q=q: solve_circular(G, H, p, q, mu)) for p, q, K in circular_targets()
    ]
    return run_sweep(catalog_pairs(cfg), targets, cfg, progress)
