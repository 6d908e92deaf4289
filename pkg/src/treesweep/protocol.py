"""Deterministic simulation of the asynchronous leaf-to-root convergecast.

Execution is organized in peel rounds: every node that currently misses a
message from exactly one neighbour fires during the round, sending its
merged descriptor to that neighbour (its father).  The seeded schedule
permutes firing order inside a round, which reorders transcripts without
affecting results; the round snapshot keeps the emergent root, hence every
per-node descriptor, schedule-independent.  When the final two unvisited
nodes each miss only the other, both are root candidates and the larger
identifier wins the election; the loser fires, so exactly n - 1 messages
cross the wire in every run.

Every message is genuinely bit-encoded and decoded by the receiver, so the
codec sits on the hot path and the bit counters measure real frames.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .codec import KnownSize, Scheme, UnknownSize, WireMessage, decode, encode
from .forest import ArgumentError, Forest
from .hd import (ContractError, EvalResult, HDescriptor, ParamVariant,
                 ceil_log3, evaluate, merge)


def elect_root(u: int, v: int) -> int:
    """Tie break between two root candidates: the largest identifier wins."""
    return u if u > v else v


@dataclass
class CostCounters:
    messages: int = 0
    bits: int = 0
    steps: int = 0
    cell_ops: int = 0  # table-cell touches, a proxy for merge work; reported only

    def add_message(self, wire: WireMessage) -> None:
        self.messages += 1
        self.bits += len(wire)

    def merged(self, children: list[HDescriptor], out: HDescriptor) -> None:
        self.steps += 1
        self.cell_ops += sum(c.length for c in children) + out.length


@dataclass
class NodeState:
    neighbours: set[int]
    received: dict[int, HDescriptor] = field(default_factory=dict)
    father: int | None = None
    visited: bool = False
    sum_table: list[int] = field(default_factory=list)

    def unheard(self) -> set[int]:
        return set(self.neighbours) - set(self.received)

    def store(self, sender: int, hd: HDescriptor) -> None:
        self.received[sender] = hd
        self._add_table(hd, +1)

    def drop(self, sender: int) -> HDescriptor:
        hd = self.received.pop(sender)
        self._add_table(hd, -1)
        return hd

    def _add_table(self, hd: HDescriptor, sign: int) -> None:
        if len(self.sum_table) < hd.length:
            self.sum_table.extend([0] * (hd.length - len(self.sum_table)))
        for i, c in enumerate(hd.table):
            self.sum_table[i] += sign * c

    def sum_table_consistent(self) -> bool:
        fresh: list[int] = []
        for hd in self.received.values():
            if len(fresh) < hd.length:
                fresh.extend([0] * (hd.length - len(fresh)))
            for i, c in enumerate(hd.table):
                fresh[i] += c
        mine = list(self.sum_table)
        while mine and mine[-1] == 0:
            mine.pop()
        while fresh and fresh[-1] == 0:
            fresh.pop()
        return mine == fresh


@dataclass(frozen=True)
class Schedule:
    seed: int = 0
    policy: str = "fifo"  # "fifo" orders rounds by id, "shuffle" permutes per round

    def order(self, ready: list[int], rng: random.Random) -> list[int]:
        ready = sorted(ready)
        if self.policy == "shuffle":
            rng.shuffle(ready)
        elif self.policy != "fifo":
            raise ArgumentError(f"unknown schedule policy {self.policy!r}")
        return ready


@dataclass
class RunResult:
    value: int
    root: int
    states: dict[int, NodeState]
    counters: CostCounters
    evaluation: EvalResult
    root_hd: HDescriptor
    events: list[tuple]            # ("SEND", u, v, bits) / ("VISIT", u)
    wires: list[tuple[int, int, HDescriptor, WireMessage]]

    def transcript(self) -> str:
        lines = []
        for ev in self.events:
            if ev[0] == "SEND":
                lines.append(f"SEND {ev[1]}→{ev[2]} {ev[3]}")
            else:
                lines.append(f"VISIT {ev[1]}")
        return "\n".join(lines) + "\n"


def default_scheme(n: int, variant: ParamVariant, encoding: str = "known") -> Scheme:
    if encoding == "known":
        return KnownSize.for_tree(n, variant)
    if encoding == "unknown":
        return UnknownSize()
    raise ArgumentError(f"unknown encoding {encoding!r}")


def run_static(tree: Forest, variant: ParamVariant = ParamVariant.PROCESS_NUMBER,
               scheme: Scheme | None = None,
               schedule: Schedule = Schedule()) -> RunResult:
    """Run the convergecast on a single tree and evaluate at the root."""
    if tree.n < 1:
        raise ArgumentError("empty tree")
    if not tree.is_connected():
        raise ArgumentError("tree is disconnected; use the dynamic module for forests")
    n = tree.n
    if scheme is None:
        scheme = default_scheme(n, variant)
    max_cells = ceil_log3(n) + (1 if variant is ParamVariant.NODE_SEARCH else 0)

    states = {v: NodeState(set(tree.neighbours(v))) for v in tree.vertices}
    counters = CostCounters()
    events: list[tuple] = []
    wires: list[tuple[int, int, HDescriptor, WireMessage]] = []
    rng = random.Random(schedule.seed)
    root: int | None = None

    while True:
        ready = [v for v, st in states.items()
                 if not st.visited and v != root and len(st.unheard()) == 1]
        if not ready:
            break
        if root is None:
            pairs = [(v, next(iter(states[v].unheard()))) for v in ready]
            targets = dict(pairs)
            for v, f in pairs:
                if targets.get(f) == v:
                    root = elect_root(v, f)
                    ready = [u for u in ready if u != root]
                    break
        for v in schedule.order(ready, rng):
            st = states[v]
            father = next(iter(st.unheard()))
            children = list(st.received.values())
            hd = merge(children, variant)
            counters.merged(children, hd)
            if hd.length > max_cells:
                raise ContractError(
                    f"table length {hd.length} breaks the log3 bound at node {v}")
            wire = encode(hd, scheme)
            counters.add_message(wire)
            decoded = decode(wire)
            if decoded != hd:
                raise ContractError(f"codec roundtrip broke for {hd}")
            states[father].store(v, decoded)
            st.father = father
            st.visited = True
            events.append(("SEND", v, father, wire.bits))
            events.append(("VISIT", v))
            wires.append((v, father, hd, wire))

    unvisited = [v for v, st in states.items() if not st.visited]
    if len(unvisited) != 1 or (root is not None and unvisited != [root]):
        raise ContractError(f"peeling left {unvisited} unvisited")
    root = unvisited[0]
    st = states[root]
    children = list(st.received.values())
    root_hd = merge(children, variant)
    counters.merged(children, root_hd)
    if root_hd.length > max_cells:
        raise ContractError("root table length breaks the log3 bound")
    events.append(("VISIT", root))
    result = evaluate(root_hd)
    return RunResult(result.value, root, states, counters, result, root_hd,
                     events, wires)
