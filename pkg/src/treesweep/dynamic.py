"""Dynamic forest maintenance: change-root, edge addition/deletion, and the
incremental builder that grows a forest edge by edge from isolated vertices.

Each node permanently stores the descriptor received from every neighbour
except its father plus the running sum of those tables, which is exactly
the state the change-root walk needs: the old root drops the entry toward
the new root, re-merges, and the corrected descriptors ripple down the path
while father pointers flip.  Every dynamic message carries the leading flag
bit (0 replace-entry, 1 change-root notification), costing one extra bit
per frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codec import (REPLACE_FLAG, KnownSize, Scheme, UnknownSize, decode,
                    encode, notification)
from .forest import ArgumentError, Forest, StructureError
from .hd import HDescriptor, ParamVariant, evaluate, merge
from .protocol import CostCounters, NodeState, Schedule, elect_root, run_static


@dataclass
class DynamicForest:
    forest: Forest
    variant: ParamVariant
    scheme: Scheme
    states: dict[int, NodeState]
    roots: dict[int, int] = field(default_factory=dict)
    counters: CostCounters = field(default_factory=CostCounters)
    early_stop: bool = False
    wire_log: list | None = None  # optional (kind, hd, wire) triples for tests

    # -- construction ------------------------------------------------------

    @classmethod
    def isolated(cls, n: int, variant: ParamVariant = ParamVariant.PROCESS_NUMBER,
                 encoding: str = "known", early_stop: bool = False) -> "DynamicForest":
        if n < 1:
            raise ArgumentError("need at least one vertex")
        scheme = KnownSize.for_tree(n, variant) if encoding == "known" else UnknownSize()
        forest = Forest(range(n))
        states = {v: NodeState(set()) for v in range(n)}
        df = cls(forest, variant, scheme, states, early_stop=early_stop)
        base = evaluate(merge([], variant)).value
        for v in range(n):
            df.roots[v] = base
        return df

    @classmethod
    def from_tree(cls, tree: Forest, variant: ParamVariant = ParamVariant.PROCESS_NUMBER,
                  encoding: str = "known", early_stop: bool = False) -> "DynamicForest":
        """Adopt the per-node state left behind by a static run."""
        run = run_static(tree, variant, schedule=Schedule(0))
        scheme = KnownSize.for_tree(tree.n, variant) if encoding == "known" else UnknownSize()
        df = cls(tree.copy(), variant, scheme, run.states, early_stop=early_stop)
        df.roots[run.root] = run.value
        return df

    # -- queries -----------------------------------------------------------

    def root_of(self, v: int) -> int:
        if v not in self.states:
            raise ArgumentError(f"vertex {v} not in forest")
        while self.states[v].father is not None:
            v = self.states[v].father
        return v

    def value_of(self, v: int) -> int:
        return self.roots[self.root_of(v)]

    # -- messaging helpers ---------------------------------------------------

    def _notify(self, hops: int) -> None:
        frame = notification(self.scheme)
        for _ in range(hops):
            self.counters.add_message(frame)
            if self.wire_log is not None:
                self.wire_log.append(("notify", None, frame))

    def _send(self, sender: int, receiver: int, hd: HDescriptor,
              replace: bool) -> None:
        wire = encode(hd, self.scheme, dyn_flag=REPLACE_FLAG)
        self.counters.add_message(wire)
        if self.wire_log is not None:
            self.wire_log.append(("replace", hd, wire))
        st = self.states[receiver]
        if replace and sender in st.received:
            st.drop(sender)
        st.store(sender, decode(wire))

    def _local_hd(self, v: int) -> HDescriptor:
        children = list(self.states[v].received.values())
        hd = merge(children, self.variant)
        self.counters.merged(children, hd)
        return hd

    # -- operations ----------------------------------------------------------

    def change_root(self, r2: int) -> None:
        """Move the component root to r2 along the father chain; 2*dist
        messages (the notification walk up, the corrected wave down)."""
        r1 = self.root_of(r2)
        if r1 == r2:
            return
        path = [r2]
        while path[-1] != r1:
            path.append(self.states[path[-1]].father)
        self._notify(len(path) - 1)

        for idx in range(len(path) - 1, 0, -1):
            node, new_father = path[idx], path[idx - 1]
            st = self.states[node]
            st.drop(new_father)
            hd = self._local_hd(node)
            self._send(node, new_father, hd, replace=False)
            st.father = new_father
        st2 = self.states[r2]
        st2.father = None
        value = evaluate(merge(list(st2.received.values()), self.variant)).value
        self.counters.steps += 1
        del self.roots[r1]
        self.roots[r2] = value

    def add_edge(self, w1: int, w2: int) -> None:
        if w1 not in self.states or w2 not in self.states:
            raise ArgumentError(f"unknown vertex in edge ({w1}, {w2})")
        if self.root_of(w1) == self.root_of(w2):
            raise StructureError(f"edge ({w1}, {w2}) would create a cycle")
        if self.early_stop:
            self._add_edge_early_stop(w1, w2)
            return
        self.change_root(w1)
        self.change_root(w2)
        self.forest.add_edge(w1, w2)
        winner = elect_root(w1, w2)
        loser = w1 if winner == w2 else w2
        self.states[w1].neighbours.add(w2)
        self.states[w2].neighbours.add(w1)
        hd = self._local_hd(loser)
        self._send(loser, winner, hd, replace=False)
        self.states[loser].father = winner
        st = self.states[winner]
        value = evaluate(merge(list(st.received.values()), self.variant)).value
        self.counters.steps += 1
        del self.roots[loser]
        self.roots[winner] = value

    def _add_edge_early_stop(self, w1: int, w2: int) -> None:
        """Reroot only the first component, then push replacement entries
        toward the second root, stopping once a descriptor is unchanged."""
        self.change_root(w1)
        r2 = self.root_of(w2)
        self.forest.add_edge(w1, w2)
        self.states[w1].neighbours.add(w2)
        self.states[w2].neighbours.add(w1)
        hd = self._local_hd(w1)
        self._send(w1, w2, hd, replace=False)
        self.states[w1].father = w2
        del self.roots[w1]
        node = w2
        while True:
            father = self.states[node].father
            if father is None:
                value = evaluate(merge(list(self.states[node].received.values()),
                                       self.variant)).value
                self.counters.steps += 1
                self.roots[node] = value
                break
            new_hd = self._local_hd(node)
            if self.states[father].received.get(node) == new_hd:
                break  # nothing upstream can change
            self._send(node, father, new_hd, replace=True)
            node = father

    def delete_edge(self, w1: int, w2: int) -> None:
        if not self.forest.has_edge(w1, w2):
            raise ArgumentError(f"edge ({w1}, {w2}) does not exist")
        if self.states[w1].father == w2:
            child, father = w1, w2
        elif self.states[w2].father == w1:
            child, father = w2, w1
        else:
            raise ArgumentError(f"edge ({w1}, {w2}) is not a father link")
        self.forest.remove_edge(child, father)
        self.states[child].neighbours.discard(father)
        self.states[father].neighbours.discard(child)
        self.states[father].drop(child)
        self.states[child].father = None

        hd = self._local_hd(child)
        self.roots[child] = evaluate(hd).value

        old_root = self.root_of(father)
        if old_root == father:
            value = evaluate(merge(list(self.states[father].received.values()),
                                   self.variant)).value
            self.counters.steps += 1
            self.roots[father] = value
        else:
            self.change_root(father)

    # -- consistency ---------------------------------------------------------

    def check_invariants(self) -> None:
        root_count = 0
        for v, st in self.states.items():
            if st.neighbours != set(self.forest.neighbours(v)):
                raise AssertionError(f"neighbour set drift at {v}")
            expect = st.neighbours - ({st.father} if st.father is not None else set())
            if set(st.received) != expect:
                raise AssertionError(f"received set drift at {v}")
            if not st.sum_table_consistent():
                raise AssertionError(f"sum table drift at {v}")
            if st.father is None:
                root_count += 1
                if v not in self.roots:
                    raise AssertionError(f"untracked root {v}")
                fresh = evaluate(merge(list(st.received.values()), self.variant)).value
                if self.roots[v] != fresh:
                    raise AssertionError(f"stale value at root {v}")
        if root_count != len(self.roots):
            raise AssertionError("root bookkeeping drift")


def inc_build(edges: list[tuple[int, int]], n: int,
              variant: ParamVariant = ParamVariant.PROCESS_NUMBER,
              encoding: str = "known", early_stop: bool = False) -> DynamicForest:
    """Insert tree edges one by one starting from n isolated vertices."""
    df = DynamicForest.isolated(n, variant, encoding, early_stop)
    for u, v in edges:
        df.add_edge(u, v)
    return df


def run_script(text: str, n: int,
               variant: ParamVariant = ParamVariant.PROCESS_NUMBER,
               encoding: str = "known") -> tuple[list[str], DynamicForest]:
    """Execute a dynamic script: lines "add u v", "del u v", "query u",
    "reroot u".  Returns the printed query lines and the final forest."""
    df = DynamicForest.isolated(n, variant, encoding)
    out: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "add" and len(parts) == 3:
                df.add_edge(int(parts[1]), int(parts[2]))
            elif parts[0] == "del" and len(parts) == 3:
                df.delete_edge(int(parts[1]), int(parts[2]))
            elif parts[0] == "query" and len(parts) == 2:
                u = int(parts[1])
                out.append(f"query {u} value={df.value_of(u)}")
            elif parts[0] == "reroot" and len(parts) == 2:
                df.change_root(int(parts[1]))
            else:
                raise ArgumentError(f"line {lineno}: bad command {raw!r}")
        except ValueError:
            raise ArgumentError(f"line {lineno}: bad integer in {raw!r}") from None
    return out, df
