"""Verification runs over whole graphs and edge-budget experiments."""
import math
import time
from itertools import combinations
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.convex import build_convex, edge_budget
from chordgraph.generators import gen_convex
from chordgraph.geometry import GeomGraph
from chordgraph.models import RunReport
from chordgraph.oracle import detour, is_increasing_chord, is_theta_path, path_points
from chordgraph.routing import ThetaRouter


def select_pairs(n: int, pairs: Union[str, int] = "all", seed: int = 0) -> List[Tuple[int, int]]:
    """All unordered pairs, or a seeded sample of k of them in ascending order."""
    everything = list(combinations(range(n), 2))
    if pairs == "all":
        return everything
    k = int(pairs)
    if k < 0:
        raise ValueError(f"sample size must be non-negative, got {k}")
    if k >= len(everything):
        return everything
    chosen = np.random.default_rng(seed).choice(len(everything), size=k, replace=False)
    return [everything[i] for i in sorted(chosen.tolist())]


def verify_graph(g: GeomGraph, pairs: Union[str, int] = "all", seed: int = 0,
                 command: str = "verify graph", budget_bound: Optional[int] = None) -> RunReport:
    """
    Route every selected pair and check each witness: θ-path for its θ, increasing-chord,
    detour within the bound.
    """
    start = time.perf_counter()
    router = ThetaRouter(g)
    selected = select_pairs(g.n, pairs, seed)
    failed: List[Tuple[int, int]] = []
    max_detour = None
    for s, t in selected:
        witness = router.route(s, t)
        if witness is None:
            failed.append((s, t))
            continue
        coords = path_points(g, witness.vertices)
        ratio = detour(coords)
        max_detour = ratio if max_detour is None else max(max_detour, ratio)
        if not (is_theta_path(coords, witness.theta_deg) and is_increasing_chord(coords)
                and ratio <= Config.DETOUR_BOUND + 1e-6):
            failed.append((s, t))
    if failed:
        logger.warning(f"{len(failed)} of {len(selected)} pairs failed verification, first {failed[0]}")
    return RunReport(
        command=command,
        n=g.n,
        edge_count=g.edge_count,
        budget_bound=budget_bound,
        pairs_tested=len(selected),
        failures=len(failed),
        failed_pairs=failed,
        max_detour=max_detour,
        seed=seed,
        elapsed_seconds=time.perf_counter() - start,
    )


def budget_table(sizes: Iterable[int], seed: int = 0) -> pd.DataFrame:
    """Edge counts of build_convex on seeded convex sets against 2n + F(n)."""
    rows = []
    for n in sizes:
        g = build_convex(gen_convex(n, seed))
        bound = 2 * n + edge_budget(n)
        rows.append({
            "n": n,
            "edges": g.edge_count,
            "bound": bound,
            "within_budget": g.edge_count <= bound,
            "ratio": g.edge_count / (n * math.log2(n)) if n > 1 else float("nan"),
        })
    return pd.DataFrame(rows, columns=["n", "edges", "bound", "within_budget", "ratio"])
