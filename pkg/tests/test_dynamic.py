import random

import pytest

from treesweep.dynamic import DynamicForest, inc_build, run_script
from treesweep.forest import (Forest, StructureError, enumerate_trees,
                              path_tree, random_tree, theorem1_tree)
from treesweep.hd import ParamVariant
from treesweep.protocol import run_static

PN = ParamVariant.PROCESS_NUMBER
NS = ParamVariant.NODE_SEARCH


def _dist(tree, a, b):
    from collections import deque
    seen = {a: 0}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            return seen[v]
        for u in tree.neighbours(v):
            if u not in seen:
                seen[u] = seen[v] + 1
                q.append(u)
    raise AssertionError("disconnected")


def test_change_root_identity():
    t = path_tree(5)
    df = DynamicForest.from_tree(t)
    r = df.root_of(0)
    df.change_root(r)
    assert df.counters.messages == 0


def test_change_root_preserves_value_exhaustive():
    for n in range(1, 9):
        for t in enumerate_trees(n):
            want = run_static(t).value
            for target in t.vertices:
                df = DynamicForest.from_tree(t)
                r1 = df.root_of(target)
                df.change_root(target)
                df.check_invariants()
                assert df.root_of(target) == target
                assert df.value_of(target) == want
                assert df.counters.messages <= 2 * _dist(t, r1, target) + 1


def test_change_root_path_bound():
    t = path_tree(5)
    df = DynamicForest.from_tree(t)
    far = 0 if df.root_of(0) != 0 else 4
    df.change_root(far)
    assert df.counters.messages <= 8  # two messages per hop, four hops at most


def test_delete_edge_matches_static_reruns():
    for n in range(2, 9):
        for t in enumerate_trees(n):
            for u, v in t.edges():
                df = DynamicForest.from_tree(t)
                df.delete_edge(u, v)
                df.check_invariants()
                rest = t.copy()
                rest.remove_edge(u, v)
                for comp in rest.components():
                    sub = Forest(comp, rest.induced(comp).edges())
                    assert df.value_of(next(iter(comp))) == run_static(sub).value


def test_delete_leaf_edge_gives_zero():
    t = path_tree(4)
    df = DynamicForest.from_tree(t)
    df.delete_edge(0, 1)
    assert df.value_of(0) == 0


def test_delete_then_readd_restores_value():
    t = theorem1_tree(2)
    want = run_static(t).value
    for u, v in list(t.edges())[:6]:
        df = DynamicForest.from_tree(t)
        df.delete_edge(u, v)
        df.add_edge(u, v)
        df.check_invariants()
        assert df.value_of(u) == want


def test_add_edge_examples():
    df = DynamicForest.isolated(2)
    df.add_edge(0, 1)
    assert df.value_of(0) == 1  # a 2-path processes with one agent
    df = DynamicForest.isolated(2, NS)
    df.add_edge(0, 1)
    assert df.value_of(0) == 2

    # joining two 2-paths end to end gives a 4-path
    df = DynamicForest.isolated(4)
    df.add_edge(0, 1)
    df.add_edge(2, 3)
    df.add_edge(1, 2)
    assert df.value_of(0) == 2


def test_add_edge_rejects_cycles():
    df = DynamicForest.isolated(3)
    df.add_edge(0, 1)
    df.add_edge(1, 2)
    with pytest.raises(StructureError):
        df.add_edge(0, 2)
    df.check_invariants()
    assert df.value_of(0) == 1  # state unchanged by the rejected edge


def test_bad_arguments():
    from treesweep.forest import ArgumentError
    df = DynamicForest.isolated(3)
    df.add_edge(0, 1)
    with pytest.raises(ArgumentError):
        df.delete_edge(1, 2)
    with pytest.raises(ArgumentError):
        df.change_root(9)
    with pytest.raises(ArgumentError):
        df.add_edge(0, 9)


def test_growth_by_joining_stars():
    # claws process with one agent; hanging two of them on a junction vertex
    # already forces a second agent, and the third keeps the level-2 shape
    df = DynamicForest.isolated(13)
    for c in (0, 4, 8):
        for leaf in range(c + 1, c + 4):
            df.add_edge(c, leaf)
    assert df.value_of(0) == df.value_of(4) == 1
    df.add_edge(12, 0)
    df.add_edge(12, 4)
    assert df.value_of(12) == 2
    df.add_edge(12, 8)
    assert df.value_of(12) == 2
    want = run_static(df.forest).value
    assert df.value_of(12) == want


def test_inc_build_random_orders():
    t = random_tree(50, 11)
    want = run_static(t).value
    edges = t.edges()
    for seed in range(100):
        rng = random.Random(seed)
        order = edges[:]
        rng.shuffle(order)
        df = inc_build(order, 50)
        assert len(df.roots) == 1 and set(df.roots.values()) == {want}
    df.check_invariants()


def test_inc_build_variants_agree_with_static():
    t = random_tree(25, 3)
    for variant in (PN, NS, ParamVariant.EDGE_SEARCH):
        df = inc_build(t.edges(), 25, variant)
        assert set(df.roots.values()) == {run_static(t, variant).value}


def test_early_stop_matches_default():
    t = random_tree(30, 4)
    edges = t.edges()
    want = run_static(t).value
    for seed in range(20):
        rng = random.Random(seed)
        order = edges[:]
        rng.shuffle(order)
        plain = inc_build(order, 30)
        short = inc_build(order, 30, early_stop=True)
        short.check_invariants()
        assert set(short.roots.values()) == set(plain.roots.values()) == {want}
        assert short.counters.messages <= plain.counters.messages


def test_dynamic_message_sizes():
    from treesweep.hd import ceil_log3
    t = random_tree(20, 8)
    df = DynamicForest.from_tree(t)
    df.wire_log = []
    df.change_root(min(t.vertices))
    per = ceil_log3(20) + 3
    assert df.wire_log and all(len(w.bits) == per for _, _, w in df.wire_log)

    df = DynamicForest.from_tree(t, encoding="unknown")
    df.wire_log = []
    df.change_root(min(t.vertices))
    for kind, hd, wire in df.wire_log:
        if kind == "replace":
            assert len(wire.bits) == 2 * hd.length + 4 + 1
        else:
            assert len(wire.bits) == 5


def test_unknown_encoding_dynamic_values():
    t = random_tree(18, 5)
    df = inc_build(t.edges(), 18, encoding="unknown")
    assert set(df.roots.values()) == {run_static(t).value}


def test_script_runner():
    out, df = run_script(
        "add 0 1\nadd 1 2\nadd 2 3\nquery 0\ndel 1 2\nquery 0\nquery 3\n"
        "add 1 2\nquery 2\nreroot 0\nquery 2\n", 4)
    assert out == ["query 0 value=2", "query 0 value=1", "query 3 value=1",
                   "query 2 value=2", "query 2 value=2"]
    df.check_invariants()
