"""Star factors, the Kano-Saito deficiency and isolated toughness.

All searches are exhaustive over bitsets and bounded by a :class:`Budget`.
A budget overrun raises :class:`SearchTimeout`, which callers must keep
apart from a negative answer.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .errors import CapExceeded, GraphError, SearchTimeout
from .graph import Graph, bits_to_list, component_masks, iter_bits

FACTOR_CAP = 32
TOUGHNESS_CAP = 28


class Budget:
    """Wall-clock and/or node-count limit shared by one search."""

    def __init__(self, budget_ms: float | None = None, nodes: int | None = None):
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
        self.max_nodes = nodes
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchTimeout(f"node budget of {self.max_nodes} exhausted")
        if self.deadline is not None and not self.nodes & 255 and time.monotonic() > self.deadline:
            raise SearchTimeout("time budget exhausted")


def _cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise CapExceeded(f"{what} is capped at {cap} vertices, got {g.n}")


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]


@dataclass(frozen=True)
class StarFactor:
    stars: tuple[Star, ...]

    def to_json(self) -> str:
        return json.dumps([{"center": s.center, "leaves": list(s.leaves)} for s in self.stars])

    @classmethod
    def from_json(cls, text: str) -> StarFactor:
        return cls(tuple(Star(d["center"], tuple(d["leaves"])) for d in json.loads(text)))


def verify_star_factor(g: Graph, m: int, f: StarFactor) -> bool:
    covered = 0
    for star in f.stars:
        if not m <= len(star.leaves) <= 2 * m:
            return False
        for v in (star.center, *star.leaves):
            if not 0 <= v < g.n or covered >> v & 1:
                return False
            covered |= 1 << v
        if any(not g.has_edge(star.center, leaf) for leaf in star.leaves):
            return False
    return covered == g.vertex_mask


def _ordered(adj, mask: int, within: int) -> list[int]:
    # Low residual degree first: pendant-like vertices get absorbed early.
    return sorted(iter_bits(mask), key=lambda u: ((adj[u] & within).bit_count(), u))


def _stars_through(adj, v: int, unassigned: int, m: int) -> Iterator[tuple[int, int]]:
    """Every admissible star inside ``unassigned`` that contains ``v``, as (center, vertex mask)."""
    vbit = 1 << v
    nbrs = adj[v] & unassigned
    cands = _ordered(adj, nbrs, unassigned)
    for size in range(min(2 * m, len(cands)), m - 1, -1):
        for leaves in combinations(cands, size):
            mask = vbit
            for u in leaves:
                mask |= 1 << u
            yield v, mask
    for u in cands:
        others = _ordered(adj, adj[u] & unassigned & ~vbit, unassigned)
        for size in range(min(2 * m - 1, len(others)), m - 2, -1):
            for leaves in combinations(others, size):
                mask = vbit | 1 << u
                for w in leaves:
                    mask |= 1 << w
                yield u, mask


def find_star_factor(
    g: Graph,
    m: int,
    budget_ms: float | None = None,
    node_budget: int | None = None,
    cap: int = FACTOR_CAP,
) -> StarFactor | None:
    """Exhaustive backtracking search for a {K_{1,j}: m <= j <= 2m}-factor.

    Branches on the lowest-indexed unassigned vertex over every star that
    could cover it. Dead unassigned sets are memoised, and any component of
    the unassigned subgraph with fewer than ``m + 1`` vertices prunes the
    branch. Returns ``None`` only when no factor exists.
    """
    if m < 2:
        raise GraphError("star factors need m >= 2")
    _cap(g, cap, "factor search")
    adj = g.adj
    budget = Budget(budget_ms, node_budget)
    dead: set[int] = set()

    def solve(unassigned: int) -> list[tuple[int, int]] | None:
        if not unassigned:
            return []
        if unassigned in dead:
            return None
        budget.tick()
        comps = component_masks(adj, unassigned)
        if any(c.bit_count() < m + 1 for c in comps):
            dead.add(unassigned)
            return None
        if len(comps) > 1:
            found = []
            for comp in comps:
                part = solve(comp)
                if part is None:
                    dead.add(unassigned)
                    return None
                found.extend(part)
            return found
        v = (unassigned & -unassigned).bit_length() - 1
        for center, mask in _stars_through(adj, v, unassigned, m):
            rest = solve(unassigned & ~mask)
            if rest is not None:
                return [(center, mask), *rest]
            budget.tick()
        dead.add(unassigned)
        return None

    found = solve(g.vertex_mask)
    if found is None:
        return None
    stars = (Star(c, tuple(bits_to_list(mask & ~(1 << c)))) for c, mask in found)
    return StarFactor(tuple(sorted(stars, key=lambda s: s.center)))


def independent_sets(adj, n: int, budget: Budget | None = None) -> Iterator[tuple[int, int, int]]:
    """Yield ``(T, N(T), |T|)`` as bitsets for every nonempty independent set ``T``."""
    stack = [(0, 0, 0, (1 << n) - 1)]
    while stack:
        t_mask, n_mask, size, cands = stack.pop()
        while cands:
            low = cands & -cands
            v = low.bit_length() - 1
            cands ^= low
            if budget is not None:
                budget.tick()
            new_t, new_n = t_mask | low, n_mask | adj[v]
            yield new_t, new_n, size + 1
            # candidates must be above v and non-adjacent to it
            rest = cands & ~adj[v]
            if rest:
                stack.append((new_t, new_n, size + 1, rest))


@dataclass(frozen=True)
class DeficiencyWitness:
    t_set: tuple[int, ...]
    neighborhood: tuple[int, ...]
    deficiency: int


def kano_saito_max_deficiency(
    g: Graph,
    m: int,
    budget_ms: float | None = None,
    node_budget: int | None = None,
    cap: int = TOUGHNESS_CAP,
) -> tuple[int, DeficiencyWitness | None]:
    """Max of ``m|T| - |N(T)|`` over independent sets ``T`` (the empty set gives 0).

    A value ``<= 0`` is exactly the hypothesis ``i(G - S) <= |S|/m`` for all ``S``.
    """
    _cap(g, cap, "deficiency search")
    best, best_t, best_n = 0, 0, 0
    for t_mask, n_mask, size in independent_sets(g.adj, g.n, Budget(budget_ms, node_budget)):
        d = m * size - n_mask.bit_count()
        if d > best or (best_t == 0 and d == best):
            best, best_t, best_n = d, t_mask, n_mask
    if not best_t:
        return best, None
    return best, DeficiencyWitness(tuple(bits_to_list(best_t)), tuple(bits_to_list(best_n)), best)


@dataclass(frozen=True)
class ToughnessWitness:
    t_set: tuple[int, ...]
    neighborhood: tuple[int, ...]
    ratio: Fraction

    def to_json(self) -> str:
        return json.dumps(
            {
                "t_set": list(self.t_set),
                "neighborhood": list(self.neighborhood),
                "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            }
        )


def isolated_toughness(
    g: Graph,
    budget_ms: float | None = None,
    node_budget: int | None = None,
    cap: int = TOUGHNESS_CAP,
) -> tuple[Fraction | float, ToughnessWitness | None]:
    """Isolated toughness ``I(G)`` with a minimising witness.

    ``I(G) = min |N(T)| / |T|`` over independent ``T`` with ``|T| >= 2``;
    complete graphs return ``(math.inf, None)``.
    """
    _cap(g, cap, "toughness search")
    if g.is_complete():
        return math.inf, None
    best = None
    for t_mask, n_mask, size in independent_sets(g.adj, g.n, Budget(budget_ms, node_budget)):
        if size < 2:
            continue
        nsize = n_mask.bit_count()
        if best is None or nsize * best[2] < best[1] * size:
            best = (t_mask, nsize, size, n_mask)
    t_mask, nsize, size, n_mask = best
    witness = ToughnessWitness(tuple(bits_to_list(t_mask)), tuple(bits_to_list(n_mask)), Fraction(nsize, size))
    return witness.ratio, witness


def is_isolated_tough(
    g: Graph,
    p: int,
    q: int,
    budget_ms: float | None = None,
    node_budget: int | None = None,
    cap: int = TOUGHNESS_CAP,
) -> bool:
    """``I(G) >= p/q``, stopping at the first independent set that refutes it."""
    if q < 1:
        raise ValueError("q must be positive")
    _cap(g, cap, "toughness search")
    if g.is_complete():
        return True
    for _, n_mask, size in independent_sets(g.adj, g.n, Budget(budget_ms, node_budget)):
        if size >= 2 and q * n_mask.bit_count() < p * size:
            return False
    return True


def isolated_toughness_bruteforce(g: Graph, cap: int = 16) -> Fraction | float:
    """``min |S| / i(G - S)`` over all vertex subsets with ``i(G - S) >= 2``."""
    _cap(g, cap, "subset enumeration")
    full = g.vertex_mask
    best = math.inf
    for s in range(full):
        rest = full & ~s
        isolated = sum(1 for v in iter_bits(rest) if not g.adj[v] & rest)
        if isolated >= 2:
            ratio = Fraction(s.bit_count(), isolated)
            if ratio < best:
                best = ratio
    return best
