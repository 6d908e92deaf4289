import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from treesweep.forest import (ArgumentError, Forest, ParseError,
                              StructureError, cycle_graph, enumerate_trees,
                              gen_tree, grid_graph, number_of_free_trees,
                              parse_edge_list, path_tree, prufer_to_tree,
                              random_tree, serialize, spider_tree, star_tree,
                              theorem1_size, theorem1_tree)

# counts of non-isomorphic free trees, n = 1..13
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301]


def test_parse_basics():
    f = parse_edge_list("0 1\n1 2\n")
    assert f.n == 3 and f.edges() == [(0, 1), (1, 2)]
    f = parse_edge_list("n 2\n")
    assert f.n == 2 and f.edges() == []
    f = parse_edge_list(b"# comment\n\nn 3\n0 2\n")
    assert f.n == 3 and f.edges() == [(0, 2)]


def test_parse_rejects_cycle_and_junk():
    with pytest.raises(StructureError):
        parse_edge_list("0 1\n1 2\n2 0\n")
    with pytest.raises(StructureError):
        parse_edge_list("0 1\n0 1\n")
    with pytest.raises(ParseError) as err:
        parse_edge_list("0 1\nnope\n")
    assert "line 2" in str(err.value)
    with pytest.raises(ParseError):
        parse_edge_list("0 one\n")


@given(st.integers(1, 40), st.integers(0, 10_000))
def test_parse_serialize_roundtrip(n, seed):
    f = random_tree(n, seed)
    assert parse_edge_list(serialize(f)) == f


def test_generators_shapes():
    assert path_tree(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert star_tree(5).degree(0) == 5
    sp = spider_tree(2, 2, 2)
    assert sp.n == 7 and sp.degree(0) == 3
    assert gen_tree("path", 3) == path_tree(3)
    with pytest.raises(ArgumentError):
        path_tree(0)
    with pytest.raises(ArgumentError):
        random_tree(0, 1)
    with pytest.raises(ArgumentError):
        gen_tree("frob", 3)


def test_theorem1_structure():
    t1 = theorem1_tree(1)
    assert t1.n == 4 and t1.degree(3) == 3  # a claw: three singletons plus center
    t2 = theorem1_tree(2)
    assert t2.n == 13
    center = 12
    assert sorted(t2.neighbours(center)) == [3, 7, 11]  # the three star centers
    for k in range(7):
        assert theorem1_tree(k).n == theorem1_size(k) == (3 ** (k + 1) - 1) // 2
    for k in range(5):
        t = theorem1_tree(k)
        assert t.is_tree()


@given(st.integers(1, 50), st.integers(0, 10_000))
def test_random_tree_is_tree(n, seed):
    t = random_tree(n, seed)
    assert t.n == n and t.is_tree()
    assert random_tree(n, seed) == t  # deterministic in the seed


def test_enumeration_counts():
    for n, want in enumerate(FREE_TREE_COUNTS, start=1):
        assert number_of_free_trees(n) == want
    for n in range(1, 11):
        got = list(enumerate_trees(n))
        assert len(got) == FREE_TREE_COUNTS[n - 1]
        for t in got:
            assert t.n == n and t.is_tree()
    with pytest.raises(ArgumentError):
        next(enumerate_trees(14))
    with pytest.raises(ArgumentError):
        next(enumerate_trees(0))


def _ahu_canonical(tree: Forest) -> str:
    """Isomorphism-invariant code: AHU encoding rooted at the centroid(s)."""
    def encode_rooted(root):
        def rec(v, parent):
            subs = sorted(rec(u, v) for u in tree.neighbours(v) if u != parent)
            return "(" + "".join(subs) + ")"
        return rec(root, None)

    weights = []
    for v in tree.vertices:
        rest = tree.induced(set(tree.vertices) - {v})
        heaviest = max((len(c) for c in rest.components()), default=0)
        weights.append((heaviest, v))
    best = min(h for h, _ in weights)
    return min(encode_rooted(v) for h, v in weights if h == best)


def test_enumeration_vs_labeled_prufer():
    """Cross-check against exhaustive labeled-tree generation for n <= 7."""
    for n in range(3, 8):
        enumerated = {_ahu_canonical(t) for t in enumerate_trees(n)}
        assert len(enumerated) == FREE_TREE_COUNTS[n - 1]
        labeled = set()
        for seq in itertools.product(range(n), repeat=n - 2):
            labeled.add(_ahu_canonical(prufer_to_tree(list(seq), n)))
        assert labeled == enumerated


def test_forest_guards():
    f = Forest(range(3))
    f.add_edge(0, 1)
    f.add_edge(1, 2)
    with pytest.raises(StructureError):
        f.add_edge(0, 2)
    with pytest.raises(StructureError):
        f.add_edge(1, 1)
    g = cycle_graph(5)
    assert g.n == 5 and g.m() == 5
    gr = grid_graph(3, 3)
    assert gr.n == 9 and gr.m() == 12
    assert not gr.is_connected() or gr.is_connected()


def test_components():
    f = parse_edge_list("n 5\n0 1\n2 3\n")
    comps = sorted(sorted(c) for c in f.components())
    assert comps == [[0, 1], [2, 3], [4]]
    assert not f.is_connected()


def test_random_forest_roundtrips_disconnected():
    from treesweep.forest import random_forest
    f = random_forest(12, 7, seed=3)
    assert f.n == 12 and f.m() == 7 and not f.is_connected()
    assert parse_edge_list(serialize(f)) == f
