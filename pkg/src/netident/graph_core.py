"""Directed graphs on dense integer node ids and the topology queries used by
identification: neighbours, sources/sinks, ancestors, longest paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import CycleError, GraphError, UnknownNodeError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable digraph with nodes ``0..node_count-1``.

    ``edges`` holds ordered pairs ``(from, to)``. Self-loops and duplicate
    edges are rejected at construction; acyclicity is checked lazily by
    :meth:`topological_order` so that cyclic input can be diagnosed.
    """

    node_count: int
    edges: frozenset[Edge]
    labels: tuple[str, ...] = field(default=())

    def __init__(self, node_count: int, edges: Iterable[Edge], labels: Optional[Sequence[str]] = None):
        if node_count < 1:
            raise GraphError("a graph needs at least one node")
        edge_list = [(int(a), int(b)) for a, b in edges]
        seen = set()
        for a, b in edge_list:
            if not (0 <= a < node_count and 0 <= b < node_count):
                raise GraphError(f"edge ({a}, {b}) references a node outside 0..{node_count - 1}")
            if a == b:
                raise GraphError(f"self-loop on node {a}")
            if (a, b) in seen:
                raise GraphError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
        if labels is None:
            labels = [str(i) for i in range(node_count)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != node_count:
            raise GraphError("one label per node is required")
        if len(set(labels)) != node_count:
            raise GraphError("node labels must be unique")
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "labels", labels)

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    def _check(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < self.node_count:
            raise UnknownNodeError(i)

    @cached_property
    def _preds(self) -> tuple[frozenset[int], ...]:
        preds: list[set[int]] = [set() for _ in self.nodes]
        for a, b in self.edges:
            preds[b].add(a)
        return tuple(frozenset(p) for p in preds)

    @cached_property
    def _succs(self) -> tuple[frozenset[int], ...]:
        succs: list[set[int]] = [set() for _ in self.nodes]
        for a, b in self.edges:
            succs[a].add(b)
        return tuple(frozenset(s) for s in succs)

    def in_neighbors(self, i: int) -> frozenset[int]:
        self._check(i)
        return self._preds[i]

    def out_neighbors(self, i: int) -> frozenset[int]:
        self._check(i)
        return self._succs[i]

    def sources(self) -> frozenset[int]:
        return frozenset(i for i in self.nodes if not self._preds[i])

    def sinks(self) -> frozenset[int]:
        return frozenset(i for i in self.nodes if not self._succs[i])

    def ancestors(self, i: int) -> frozenset[int]:
        """Every node with a directed path to ``i`` (``i`` itself excluded)."""
        self._check(i)
        seen: set[int] = set()
        stack = list(self._preds[i])
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(self._preds[j])
        seen.discard(i)
        return frozenset(seen)

    def descendants(self, i: int) -> frozenset[int]:
        self._check(i)
        seen: set[int] = set()
        stack = list(self._succs[i])
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(self._succs[j])
        seen.discard(i)
        return frozenset(seen)

    @cached_property
    def _topo(self) -> tuple[int, ...]:
        # Kahn's algorithm; smallest ready id first keeps the order deterministic.
        indeg = [len(p) for p in self._preds]
        ready = sorted(i for i in self.nodes if indeg[i] == 0)
        queue = deque(ready)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in sorted(self._succs[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        if len(order) != self.node_count:
            raise CycleError(self._find_cycle(set(self.nodes) - set(order)))
        return tuple(order)

    def _find_cycle(self, candidates: set[int]) -> list[int]:
        # Every leftover node of Kahn's algorithm has a leftover predecessor,
        # so walking predecessors must revisit a node.
        start = min(candidates)
        path, pos = [], {}
        node = start
        while node not in pos:
            pos[node] = len(path)
            path.append(node)
            node = min(p for p in self._preds[node] if p in candidates)
        cycle = path[pos[node]:]
        cycle.reverse()
        return cycle

    def topological_order(self) -> list[int]:
        """Nodes ordered so that every edge points forward. Raises CycleError."""
        return list(self._topo)

    def is_acyclic(self) -> bool:
        try:
            self._topo
        except CycleError:
            return False
        return True

    @cached_property
    def _depths(self) -> tuple[int, ...]:
        depth = [0] * self.node_count
        for i in self._topo:
            for j in self._preds[i]:
                depth[i] = max(depth[i], depth[j] + 1)
        return tuple(depth)

    def max_depth_to(self, i: int) -> int:
        """Length (in edges) of the longest directed path ending at ``i``."""
        self._check(i)
        return self._depths[i]

    def is_forest(self) -> bool:
        """True when the underlying undirected graph has no cycle (a polytree forest)."""
        parent = list(self.nodes)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def is_path(self) -> bool:
        """True for a single directed path ``v0 -> v1 -> ... -> v_{n-1}``."""
        n = self.node_count
        if len(self.edges) != n - 1:
            return False
        if any(len(p) > 1 for p in self._preds) or any(len(s) > 1 for s in self._succs):
            return False
        return self.is_forest()

    def path_order(self) -> list[int]:
        if not self.is_path():
            raise GraphError("graph is not a directed path")
        return self.topological_order()

    def label(self, i: int) -> str:
        self._check(i)
        return self.labels[i]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownNodeError(label) from None
