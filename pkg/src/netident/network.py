"""Static nonlinear networks: a DAG plus one polynomial per edge."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .errors import GraphError, InvalidEdgeFunction
from .graph_core import Edge, Graph
from .polyfun import FunctionClass, Poly, classify


@dataclass(frozen=True, eq=False)
class Network:
    """``edge_fn[(j, i)]`` is the function carried by the edge ``j -> i``.

    The graph must be acyclic and every edge function nonzero.
    """

    graph: Graph
    edge_fn: Mapping[Edge, Poly]

    def __post_init__(self):
        fns = {(int(a), int(b)): p for (a, b), p in self.edge_fn.items()}
        if set(fns) != set(self.graph.edges):
            missing = set(self.graph.edges) - set(fns)
            extra = set(fns) - set(self.graph.edges)
            raise GraphError(f"edge functions do not match edges (missing {sorted(missing)}, extra {sorted(extra)})")
        for edge, p in fns.items():
            if not isinstance(p, Poly):
                raise TypeError(f"edge {edge}: expected Poly, got {type(p).__name__}")
            if p.is_zero():
                raise InvalidEdgeFunction(f"edge {edge} carries the zero function")
        self.graph.topological_order()
        object.__setattr__(self, "edge_fn", MappingProxyType(dict(sorted(fns.items()))))

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edge_fn: Mapping[Edge, Poly],
        labels: Optional[Sequence[str]] = None,
    ) -> Network:
        return cls(Graph(node_count, edge_fn.keys(), labels), edge_fn)

    def fn(self, frm: int, to: int) -> Poly:
        return self.edge_fn[(frm, to)]

    def replace(self, updates: Mapping[Edge, Poly]) -> Network:
        fns = dict(self.edge_fn)
        for edge, p in updates.items():
            if edge not in fns:
                raise GraphError(f"no edge {edge} in the network")
            fns[edge] = p
        return Network(self.graph, fns)

    def function_class(self) -> FunctionClass:
        """The tightest class containing every edge function."""
        tags = [classify(p) for p in self.edge_fn.values()]
        if all(t.in_fznl for t in tags):
            return FunctionClass.FZNL
        if all(t.in_fz for t in tags):
            return FunctionClass.FZ
        return FunctionClass.GENERAL

    def max_degree(self) -> int:
        return max((p.degree() for p in self.edge_fn.values()), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.graph == other.graph and dict(self.edge_fn) == dict(other.edge_fn)

    def __hash__(self) -> int:
        return hash((self.graph, tuple(self.edge_fn.items())))
