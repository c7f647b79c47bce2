"""Randomised probing of the spectral sufficient conditions near the extremal graph.

Instance ``k`` draws from its own RNG seeded by ``blake2b(master seed, k)``,
so every row of the report depends only on ``(config, k)``. Searches are
bounded by a node budget by default so that timeouts, and therefore the
CSV bytes, are reproducible.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from .errors import SearchTimeout
from .factors import find_star_factor, isolated_toughness, kano_saito_max_deficiency, verify_star_factor
from .graph import ExtremalParams, Graph, extremal_g_star, is_connected
from .oracle import random_graph
from .report import fmt_value, rows_to_csv
from .spectral import adjacency_matrix, distance_matrix, signless_laplacian, spectral_radius
from .verify import theorem_threshold

GUARD_BAND = 1e-9
ER_DENSITIES = (0.5, 0.7, 0.9)
MAX_EXTRA_EDGES = 10
DEFAULT_NODE_BUDGET = 2_000_000

CSV_COLUMNS = [
    "index",
    "generator",
    "n",
    "edges",
    "connected",
    "radius",
    "radius_extremal",
    "spectral",
    "toughness",
    "tough",
    "deficiency",
    "factor",
    "verdict",
]


@dataclass(frozen=True)
class TheoremConfig:
    theorem: str
    m: int
    b: int
    n: int
    trials: int = 1000
    seed: int = 0
    budget_ms: float | None = None
    node_budget: int | None = DEFAULT_NODE_BUDGET

    @property
    def below_threshold(self) -> bool:
        return self.n < theorem_threshold(self.theorem, self.m, self.b)


def instance_seed(master: int, index: int) -> int:
    digest = hashlib.blake2b(f"{master}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _matrix(theorem: str, g: Graph):
    if theorem == "adjacency":
        return adjacency_matrix(g)
    if theorem == "signless":
        return signless_laplacian(g)
    if theorem == "distance":
        return distance_matrix(g)
    raise ValueError(f"unknown theorem {theorem!r}")


def radius(theorem: str, g: Graph) -> float:
    return spectral_radius(_matrix(theorem, g)).value


def spectral_status(theorem: str, value: float, extremal: float) -> str:
    """``met`` / ``boundary`` / ``not-met`` for the theorem's spectral hypothesis."""
    # distance: mu(G) <= mu(G*); the other two: radius(G) >= radius(G*)
    diff = extremal - value if theorem == "distance" else value - extremal
    if abs(diff) <= GUARD_BAND:
        return "boundary"
    return "met" if diff > 0 else "not-met"


def _relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def generate_instance(cfg: TheoremConfig, index: int, extremal: Graph) -> tuple[str, Graph]:
    """Instance 0 is the extremal graph itself; odd indices are G(n, p), even ones perturb the extremal graph."""
    if index == 0:
        return "extremal", extremal
    rng = random.Random(instance_seed(cfg.seed, index))
    if index % 2:
        p = ER_DENSITIES[(index // 2) % len(ER_DENSITIES)]
        for _ in range(1000):
            g = random_graph(rng, cfg.n, p)
            if is_connected(g):
                return f"gnp-{p}", g
        return f"gnp-{p}", g
    missing = extremal.non_edges()
    k = rng.randint(1, min(MAX_EXTRA_EDGES, len(missing)))
    g = extremal
    for u, v in rng.sample(missing, k):
        g = g.with_edge(u, v)
    return f"extremal+{k}", _relabel(g, rng)


def evaluate_instance(cfg: TheoremConfig, index: int, generator: str, g: Graph, extremal_radius: float) -> dict:
    row = {"index": index, "generator": generator, "n": g.n, "edges": g.num_edges, "graph": g}
    connected = is_connected(g)
    row["connected"] = connected
    row["radius_extremal"] = extremal_radius
    if not connected:
        row.update(spectral="not-met", verdict="hypothesis-not-met")
        return row
    value = radius(cfg.theorem, g)
    row["radius"] = value
    row["spectral"] = spectral_status(cfg.theorem, value, extremal_radius)
    threshold = Fraction(cfg.m * cfg.b - 1, cfg.b)
    budget = {"budget_ms": cfg.budget_ms, "node_budget": cfg.node_budget}
    try:
        tough_value, _ = isolated_toughness(g, **budget)
        row["toughness"] = tough_value
        row["tough"] = tough_value >= threshold
        row["deficiency"], _ = kano_saito_max_deficiency(g, cfg.m, **budget)
    except SearchTimeout:
        row.update(toughness="timeout", factor="timeout", verdict="timeout")
        return row
    if not row["tough"] or row["spectral"] == "not-met":
        row.update(factor="skipped", verdict="hypothesis-not-met")
        return row
    try:
        factor = find_star_factor(g, cfg.m, **budget)
    except SearchTimeout:
        row.update(factor="timeout", verdict="timeout")
        return row
    if factor is not None and not verify_star_factor(g, cfg.m, factor):
        raise AssertionError(f"instance {index}: invalid factor returned")
    row["factor"] = "yes" if factor is not None else "no"
    if row["spectral"] == "boundary":
        row["verdict"] = "boundary"
    elif factor is None:
        row["verdict"] = "COUNTEREXAMPLE"
    else:
        row["verdict"] = "ok"
    return row


def run_search(cfg: TheoremConfig) -> tuple[list[dict], dict]:
    """Evaluate every instance; returns CSV-ready rows and a JSON summary."""
    started = time.monotonic()
    extremal, _ = extremal_g_star(ExtremalParams(cfg.n, cfg.m, cfg.b))
    extremal_radius = radius(cfg.theorem, extremal)
    rows = []
    for index in range(cfg.trials):
        generator, g = generate_instance(cfg, index, extremal)
        rows.append(evaluate_instance(cfg, index, generator, g, extremal_radius))
    rows.sort(key=lambda r: r["index"])

    verdicts: dict[str, int] = {}
    factors: dict[str, int] = {}
    for r in rows:
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
        status = r.get("factor", "skipped")
        factors[status] = factors.get(status, 0) + 1
    timeouts = verdicts.get("timeout", 0)
    counterexamples = [r["index"] for r in rows if r["verdict"] == "COUNTEREXAMPLE"]
    summary = {
        "config": {k: v for k, v in asdict(cfg).items()},
        "threshold": theorem_threshold(cfg.theorem, cfg.m, cfg.b),
        "below_threshold": cfg.below_threshold,
        "radius_extremal": extremal_radius,
        "instances": len(rows),
        "verdicts": verdicts,
        "factor_status": factors,
        "timeouts": timeouts,
        "timeout_rate": timeouts / len(rows) if rows else 0.0,
        "counterexamples": counterexamples,
        "hypothesis_met": sum(1 for r in rows if r["verdict"] in ("ok", "COUNTEREXAMPLE")),
        "extremal_factor": rows[0].get("factor") if rows else None,
        "wall_seconds": round(time.monotonic() - started, 3),
    }
    return rows, summary


def rows_csv(rows: list[dict]) -> str:
    return rows_to_csv([{k: fmt_value(r.get(k)) for k in CSV_COLUMNS} for r in rows], CSV_COLUMNS)


def write_counterexamples(rows: list[dict], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    written = []
    for r in rows:
        if r["verdict"] == "COUNTEREXAMPLE":
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"counterexample_{r['index']:05d}.txt"
            path.write_text(r["graph"].to_edgelist())
            written.append(path)
    return written


def replay(cfg: TheoremConfig, g: Graph) -> dict:
    """Re-run the hypothesis and factor checks on a stored graph."""
    extremal, _ = extremal_g_star(ExtremalParams(cfg.n, cfg.m, cfg.b))
    return evaluate_instance(cfg, -1, "replay", g, radius(cfg.theorem, extremal))
