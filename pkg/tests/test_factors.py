import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starfactor.errors import CapExceeded, GraphError, SearchTimeout
from starfactor.graph import ExtremalParams, Graph, build_basic, disjoint_union, extremal_g_star
from starfactor.factors import (
    Star,
    StarFactor,
    find_star_factor,
    independent_sets,
    is_isolated_tough,
    isolated_toughness,
    isolated_toughness_bruteforce,
    kano_saito_max_deficiency,
    verify_star_factor,
)
from starfactor.oracle import random_graph


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first], *part]
        for k in range(len(part)):
            yield part[:k] + [[first, *part[k]]] + part[k + 1:]


def has_factor_by_partition(g: Graph, m: int) -> bool:
    """Oracle: some vertex partition has every block spanned by a star with m..2m leaves."""
    def block_ok(block):
        if not m + 1 <= len(block) <= 2 * m + 1:
            return False
        return any(all(g.has_edge(c, u) for u in block if u != c) for c in block)

    return any(all(block_ok(b) for b in part) for part in set_partitions(list(range(g.n))))


def deficiency_bruteforce(g: Graph, m: int) -> int:
    best = 0
    for size in range(1, g.n + 1):
        for t in itertools.combinations(range(g.n), size):
            if any(g.has_edge(u, v) for u, v in itertools.combinations(t, 2)):
                continue
            nbrs = set().union(*(g.neighbors(v) for v in t))
            best = max(best, m * size - len(nbrs))
    return best


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


class TestFactor:
    def test_k13(self):
        g = build_basic("star", 4)
        f = find_star_factor(g, 2)
        assert f is not None and verify_star_factor(g, 2, f)
        assert f.stars == (Star(0, (1, 2, 3)),)

    def test_k14_too_many_leaves_for_m2(self):
        g = build_basic("star", 6)
        assert find_star_factor(g, 2) is None

    def test_path2(self):
        assert find_star_factor(build_basic("path", 2), 2) is None

    def test_c6(self):
        g = build_basic("cycle", 6)
        f = find_star_factor(g, 2)
        assert f is not None and verify_star_factor(g, 2, f)
        assert len(f.stars) == 2

    def test_disjoint_components(self):
        g = disjoint_union([build_basic("star", 3), build_basic("star", 4), build_basic("complete", 5)])
        f = find_star_factor(g, 2)
        assert f is not None and verify_star_factor(g, 2, f)

    def test_gstar_examples(self):
        for p in (ExtremalParams(14, 2, 2), ExtremalParams(27, 2, 1)):
            g, _ = extremal_g_star(p)
            f = find_star_factor(g, p.m)
            assert f is not None and verify_star_factor(g, p.m, f)

    def test_m_validation(self):
        with pytest.raises(GraphError):
            find_star_factor(build_basic("star", 3), 1)
        with pytest.raises(CapExceeded):
            find_star_factor(build_basic("complete", 40), 2)

    def test_timeout(self):
        g = build_basic("path", 31)
        with pytest.raises(SearchTimeout):
            find_star_factor(g, 2, node_budget=5)

    @settings(max_examples=150, deadline=None)
    @given(small_graphs(8), st.sampled_from([2, 3]))
    def test_matches_partition_oracle(self, g, m):
        f = find_star_factor(g, m)
        assert (f is not None) == has_factor_by_partition(g, m)
        if f is not None:
            assert verify_star_factor(g, m, f)


class TestVerify:
    g = build_basic("star", 4)

    def test_rejects_wrong_size(self):
        assert not verify_star_factor(self.g, 2, StarFactor((Star(0, (1,)), Star(2, (3,)))))

    def test_rejects_missing_edge(self):
        assert not verify_star_factor(self.g, 2, StarFactor((Star(1, (0, 2, 3)),)))

    def test_rejects_overlap_and_gap(self):
        g = build_basic("complete", 6)
        assert not verify_star_factor(g, 2, StarFactor((Star(0, (1, 2)), Star(2, (3, 4)))))
        assert not verify_star_factor(g, 2, StarFactor((Star(0, (1, 2)),)))
        assert not verify_star_factor(g, 2, StarFactor((Star(0, (1, 9)),)))

    def test_json_roundtrip(self):
        f = StarFactor((Star(0, (1, 2)), Star(3, (4, 5))))
        assert StarFactor.from_json(f.to_json()) == f


class TestDeficiency:
    def test_examples(self):
        assert kano_saito_max_deficiency(build_basic("complete", 5), 2)[0] == 0
        d, w = kano_saito_max_deficiency(build_basic("star", 4), 2)
        assert d == 5 and w.t_set == (1, 2, 3) and w.neighborhood == (0,)
        assert kano_saito_max_deficiency(build_basic("cycle", 6), 2)[0] == 3

    def test_extremal_boundary(self):
        # In G* the independent block T has |N(T)| = mb - 1, so m|T| - |N(T)| = 1
        for n, m, b in [(10, 2, 1), (14, 2, 2), (20, 3, 2)]:
            g, lab = extremal_g_star(ExtremalParams(n, m, b))
            d, _ = kano_saito_max_deficiency(g, m)
            assert d >= 1

    @settings(max_examples=100, deadline=None)
    @given(small_graphs(9), st.sampled_from([2, 3]))
    def test_matches_bruteforce(self, g, m):
        d, w = kano_saito_max_deficiency(g, m)
        assert d == deficiency_bruteforce(g, m)
        if w is not None:
            assert m * len(w.t_set) - len(w.neighborhood) == d

    def test_independent_sets_count(self):
        # C_5 has 5 singletons and 5 independent pairs
        assert sum(1 for _ in independent_sets(build_basic("cycle", 5).adj, 5)) == 10


class TestToughness:
    def test_examples(self):
        assert isolated_toughness(build_basic("star", 5))[0] == Fraction(1, 4)
        assert isolated_toughness(build_basic("cycle", 6))[0] == 1
        assert isolated_toughness(build_basic("complete", 4)) == (math.inf, None)
        value, w = isolated_toughness(extremal_g_star(ExtremalParams(14, 2, 2))[0])
        assert value == Fraction(3, 2)
        assert len(w.neighborhood) == 3 and len(w.t_set) == 2
        assert isolated_toughness(extremal_g_star(ExtremalParams(20, 2, 3))[0])[0] == Fraction(5, 3)

    def test_witness_json(self):
        _, w = isolated_toughness(build_basic("star", 5))
        assert '"ratio": "1/4"' in w.to_json()

    def test_is_tough(self):
        g = build_basic("cycle", 6)
        assert is_isolated_tough(g, 1, 1)
        assert not is_isolated_tough(g, 3, 2)
        assert is_isolated_tough(build_basic("complete", 3), 100, 1)
        with pytest.raises(ValueError):
            is_isolated_tough(g, 1, 0)

    def test_extremal_meets_threshold(self):
        for n, m, b in [(10, 2, 1), (14, 2, 2), (20, 3, 2), (27, 2, 3)]:
            g, _ = extremal_g_star(ExtremalParams(n, m, b))
            value = isolated_toughness(g)[0]
            # with b >= 2 the independent block itself attains (mb - 1)/b
            assert value == Fraction(m * b - 1, b) if b >= 2 else value >= m * b - 1

    def test_budget(self):
        g = build_basic("empty", 20)
        with pytest.raises(SearchTimeout):
            isolated_toughness(g, node_budget=100)

    @settings(max_examples=150, deadline=None)
    @given(small_graphs(9))
    def test_duality(self, g):
        assert isolated_toughness(g)[0] == isolated_toughness_bruteforce(g)

    @settings(max_examples=60, deadline=None)
    @given(small_graphs(9), st.integers(0, 6), st.integers(1, 4))
    def test_is_tough_consistent(self, g, p, q):
        assert is_isolated_tough(g, p, q) == (isolated_toughness(g)[0] >= Fraction(p, q))

    def test_bruteforce_cap(self):
        with pytest.raises(CapExceeded):
            isolated_toughness_bruteforce(build_basic("complete", 17))


def test_random_graph_reproducible():
    a = random_graph(random.Random(1), 12, 0.5)
    b = random_graph(random.Random(1), 12, 0.5)
    assert a == b
