"""Exhaustive small-graph checks.

Graphs are generated up to isomorphism by vertex augmentation: every graph
on ``k + 1`` vertices is some graph on ``k`` vertices plus one vertex with
an arbitrary neighbour set. Duplicates are removed with a
Weisfeiler-Lehman hash bucket followed by an exact isomorphism test.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Iterator

import networkx as nx

from .factors import (
    find_star_factor,
    isolated_toughness,
    isolated_toughness_bruteforce,
    kano_saito_max_deficiency,
    verify_star_factor,
)
from .graph import Graph, is_connected
from .report import CheckReport

ENUMERATION_CAP = 8


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h: nx.Graph) -> Graph:
    index = {v: k for k, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """One representative of every isomorphism class of graphs on ``n`` vertices."""
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"enumeration supports 1 <= n <= {ENUMERATION_CAP}")
    if n == 1:
        return (Graph(1, (0,)),)
    buckets: dict[str, list[nx.Graph]] = {}
    out: list[Graph] = []
    for base in nonisomorphic_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(base.adj) + [nbrs]
            for u in range(n - 1):
                if nbrs >> u & 1:
                    adj[u] |= 1 << (n - 1)
            g = Graph._trusted(n, tuple(adj))
            h = to_networkx(g)
            key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, other) for other in bucket):
                continue
            bucket.append(h)
            out.append(g)
    return tuple(out)


def connected_graphs(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        for g in nonisomorphic_graphs(n):
            if is_connected(g):
                yield g


def sufficiency_check(g: Graph, m: int) -> dict:
    """Deficiency, factor status and whether the sufficiency implication holds."""
    deficiency, witness = kano_saito_max_deficiency(g, m)
    factor = find_star_factor(g, m)
    if factor is not None and not verify_star_factor(g, m, factor):
        raise AssertionError("factor search returned an invalid factor")
    return {
        "deficiency": deficiency,
        "witness": witness,
        "factor": factor,
        "violation": deficiency <= 0 and factor is None,
        "exhibit": deficiency > 0 and factor is not None,
    }


def small_oracle(ms: Iterable[int] = (2, 3), n_max: int = 7, toughness_n_max: int | None = None) -> tuple[CheckReport, dict]:
    """Deficiency criterion on every connected graph up to ``n_max`` vertices, plus toughness cross-validation.

    Returns the check report and a summary with per-``m`` exhibits of
    positive deficiency alongside an existing factor.
    """
    report = CheckReport("small-oracle")
    summary: dict = {"n_max": n_max, "per_m": {}}
    graphs = list(connected_graphs(n_max))
    for m in ms:
        violations, exhibits, with_factor = 0, [], 0
        for g in graphs:
            res = sufficiency_check(g, m)
            with_factor += res["factor"] is not None
            if res["violation"]:
                violations += 1
                report.add("sufficiency_implication", {"m": m, "graph": g.to_edgelist().replace("\n", ";")}, False)
            if res["exhibit"] and len(exhibits) < 5:
                exhibits.append({"edges": g.edges(), "n": g.n, "deficiency": res["deficiency"]})
        report.add("sufficiency_implication", {"m": m, "graphs": len(graphs)}, violations == 0, violations)
        report.add("sufficiency_one_sided_exhibit", {"m": m}, bool(exhibits), len(exhibits))
        summary["per_m"][m] = {
            "graphs": len(graphs),
            "with_factor": with_factor,
            "violations": violations,
            "exhibits": exhibits,
        }
    t_max = min(n_max, 10) if toughness_n_max is None else toughness_n_max
    mismatches, checked = 0, 0
    for g in connected_graphs(t_max):
        checked += 1
        if isolated_toughness(g)[0] != isolated_toughness_bruteforce(g):
            mismatches += 1
    report.add("toughness_dual_oracle", {"n_max": t_max, "graphs": checked}, mismatches == 0, mismatches)
    summary["toughness"] = {"n_max": t_max, "graphs": checked, "mismatches": mismatches}
    return report, summary


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def toughness_cross_validation(count: int = 1000, n_max: int = 10, seed: int = 0) -> tuple[int, list[Graph]]:
    """Compare both toughness formulations on random graphs; returns (checked, mismatching graphs)."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        n = rng.randint(2, n_max)
        g = random_graph(rng, n, rng.choice((0.2, 0.4, 0.6, 0.8)))
        if isolated_toughness(g)[0] != isolated_toughness_bruteforce(g):
            bad.append(g)
    return count, bad
