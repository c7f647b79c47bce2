"""Simple undirected graphs stored as per-vertex neighbour bitsets.

Vertices are ``0..n-1``. ``adj[v]`` is a Python int whose bit ``u`` is set
when ``uv`` is an edge. Graph values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, GraphError

DEFAULT_CAP = 512

S_BLOCK = "S-block"
CLIQUE_BLOCK = "clique-block"
INDEPENDENT_BLOCK = "independent-block"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def list_to_bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"graph order {n} exceeds cap {cap}")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        self.validate()

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # Builders whose output is valid by construction skip the O(e) check.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    def validate(self) -> None:
        """Raise :class:`GraphError` unless adjacency is symmetric and loop-free."""
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            missing = self.vertex_mask & ~self.adj[u]
            out.extend((u, v) for v in iter_bits(missing >> (u + 1) << (u + 1)))
        return out

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def with_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise GraphError("cannot add a loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def to_edgelist(self) -> str:
        edges = self.edges()
        lines = [f"{self.n} {len(edges)}"]
        lines.extend(f"{u} {v}" for u, v in edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> Graph:
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise GraphError("edge list must start with a 'n m' header line")
        n, m = int(rows[0][0]), int(rows[0][1])
        pairs = []
        for row in rows[1:]:
            if len(row) != 2:
                raise GraphError(f"malformed edge line: {' '.join(row)!r}")
            pairs.append((int(row[0]), int(row[1])))
        if len(pairs) != m:
            raise GraphError(f"header announces {m} edges, found {len(pairs)}")
        g = cls.from_edges(n, pairs)
        if g.num_edges != m:
            raise GraphError("edge list contains duplicate edges")
        return g


@dataclass(frozen=True)
class BlockLabeling:
    """Ordered, named vertex blocks that partition ``0..n-1``."""

    blocks: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.names):
            raise GraphError("every block needs a name")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block(self, name: str) -> tuple[int, ...]:
        return self.blocks[self.names.index(name)]

    @classmethod
    def consecutive(cls, sizes: Sequence[int], names: Sequence[str]) -> BlockLabeling:
        blocks, start = [], 0
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return cls(tuple(blocks), tuple(names))


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters ``(n, m, b)`` of ``K_{mb-1} v (K_{n-(m+1)b+1} u bK_1)``."""

    n: int
    m: int
    b: int

    def __post_init__(self):
        if self.m < 2 or self.b < 1:
            raise GraphError(f"need m >= 2 and b >= 1, got m={self.m}, b={self.b}")
        if self.m * self.b - 1 < 1 or self.clique_size < 1:
            raise GraphError(f"degenerate blocks for (n={self.n}, m={self.m}, b={self.b})")

    @property
    def s_size(self) -> int:
        return self.m * self.b - 1

    @property
    def clique_size(self) -> int:
        return self.n - (self.m + 1) * self.b + 1


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("n must be at least 1")
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("n must be at least 1")
    return Graph._trusted(n, (0,) * n)


def build_basic(kind: str, n: int, cap: int = DEFAULT_CAP) -> Graph:
    """Build a complete, star, path, cycle or empty graph of order ``n``.

    The star centre is vertex 0; paths and cycles follow ``0-1-...-(n-1)``.
    """
    if n < 1:
        raise GraphError("n must be at least 1")
    _check_cap(n, cap)
    if kind == "complete":
        return complete_graph(n)
    if kind == "empty":
        return empty_graph(n)
    if kind == "star":
        return Graph.from_edges(n, [(0, v) for v in range(1, n)])
    if kind == "path":
        return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])
    raise GraphError(f"unknown graph kind {kind!r}")


def disjoint_union(gs: Sequence[Graph], cap: int = DEFAULT_CAP) -> Graph:
    if not gs:
        raise GraphError("disjoint_union needs at least one graph")
    total = sum(g.n for g in gs)
    _check_cap(total, cap)
    adj, offset = [], 0
    for g in gs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph._trusted(total, tuple(adj))


def join(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> Graph:
    """``g1 v g2``: vertices of ``g1`` first, then those of ``g2`` shifted by ``g1.n``."""
    total = g1.n + g2.n
    _check_cap(total, cap)
    left = g1.vertex_mask
    right = g2.vertex_mask << g1.n
    adj = [row | right for row in g1.adj]
    adj.extend((row << g1.n) | left for row in g2.adj)
    return Graph._trusted(total, tuple(adj))


def _three_block(n: int, m: int, t: int, cap: int) -> tuple[Graph, BlockLabeling]:
    s, c = m * t - 1, n - (m + 1) * t + 1
    if s < 1 or c < 1 or t < 1:
        raise GraphError(f"degenerate blocks for (n={n}, m={m}, t={t}): sizes ({s}, {c}, {t})")
    g = join(complete_graph(s), disjoint_union([complete_graph(c), empty_graph(t)], cap), cap)
    return g, BlockLabeling.consecutive((s, c, t), (S_BLOCK, CLIQUE_BLOCK, INDEPENDENT_BLOCK))


def extremal_g_star(p: ExtremalParams, cap: int = DEFAULT_CAP) -> tuple[Graph, BlockLabeling]:
    """The extremal graph ``K_{mb-1} v (K_{n-(m+1)b+1} u bK_1)`` with its three blocks."""
    return _three_block(p.n, p.m, p.b, cap)


def extremal_g1(n: int, m: int, i: int, cap: int = DEFAULT_CAP) -> tuple[Graph, BlockLabeling]:
    """``K_{mi-1} v (K_{n-(m+1)i+1} u iK_1)``; equals the extremal graph at ``i = b``."""
    return _three_block(n, m, i, cap)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def g2_independent_size(n: int, m: int) -> int:
    """``ceil((n+1)/(m+1))``, the independent block size of ``G_2``."""
    return ceil_div(n + 1, m + 1)


def extremal_g2(n: int, m: int, cap: int = DEFAULT_CAP) -> tuple[Graph, BlockLabeling]:
    """``K_{n-c} v cK_1`` with ``c = ceil((n+1)/(m+1))``."""
    if m < 1 or n < m + 2:
        raise GraphError(f"G2 needs n >= m + 2, got n={n}, m={m}")
    c = g2_independent_size(n, m)
    g = join(complete_graph(n - c), empty_graph(c), cap)
    return g, BlockLabeling.consecutive((n - c, c), (CLIQUE_BLOCK, INDEPENDENT_BLOCK))


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V(g) - s`` plus the old-to-new vertex index map."""
    s_mask = list_to_bits(s)
    if s_mask & ~g.vertex_mask:
        raise GraphError("vertex set is not contained in V(g)")
    keep = [v for v in range(g.n) if not s_mask >> v & 1]
    if not keep:
        raise GraphError("removing every vertex leaves the empty graph")
    index = {old: new for new, old in enumerate(keep)}
    adj = []
    for old in keep:
        row = 0
        for u in iter_bits(g.adj[old] & ~s_mask):
            row |= 1 << index[u]
        adj.append(row)
    return Graph(len(keep), tuple(adj)), index


def isolated_count(g: Graph) -> int:
    return sum(1 for row in g.adj if row == 0)


def component_masks(adj: Sequence[int], within: int) -> list[int]:
    """Connected components of the subgraph induced by the bitset ``within``."""
    comps = []
    rest = within
    while rest:
        seed = rest & -rest
        comp, frontier = seed, seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= adj[v]
            frontier = reach & within & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph) -> list[list[int]]:
    return [bits_to_list(c) for c in component_masks(g.adj, g.vertex_mask)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g.adj, g.vertex_mask)) == 1
