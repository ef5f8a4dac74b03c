"""JSON network files and Graphviz export.

File layout::

    {"nodes": ["a", "b"],
     "edges": [{"from": "a", "to": "b", "coeffs": ["1", "-1/2"], "a0": "3"}]}

``coeffs`` lists the coefficients of ``x, x^2, ...`` as ``"p/q"`` strings;
``a0`` is optional and only written when nonzero.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .errors import GraphError
from .graph_core import Graph
from .network import Network
from .polyfun import Poly, format_rational, to_rational


class NetworkFileError(GraphError):
    pass


def network_from_dict(doc: dict[str, Any]) -> Network:
    try:
        labels = [str(s) for s in doc["nodes"]]
        raw_edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise NetworkFileError(f"network file needs 'nodes' and 'edges': {exc}") from None
    if len(set(labels)) != len(labels):
        raise NetworkFileError("duplicate node labels")
    index = {s: k for k, s in enumerate(labels)}
    fns = {}
    for item in raw_edges:
        try:
            a, b = index[str(item["from"])], index[str(item["to"])]
            coeffs = [to_rational(str(c)) for c in item.get("coeffs", [])]
            a0 = to_rational(str(item.get("a0", "0")))
        except KeyError as exc:
            raise NetworkFileError(f"bad edge entry {item!r}: unknown key or label {exc}") from None
        except (ValueError, ZeroDivisionError) as exc:
            raise NetworkFileError(f"bad coefficient in edge {item!r}: {exc}") from None
        if (a, b) in fns:
            raise NetworkFileError(f"duplicate edge {item['from']} -> {item['to']}")
        fns[(a, b)] = Poly([a0] + coeffs)
    return Network(Graph(len(labels), fns.keys(), labels), fns)


def network_to_dict(net: Network) -> dict[str, Any]:
    labels = net.graph.labels
    edges = []
    for (a, b), p in net.edge_fn.items():
        entry: dict[str, Any] = {"from": labels[a], "to": labels[b], "coeffs": [format_rational(c) for c in p.coeffs[1:]]}
        if p.coeff(0):
            entry["a0"] = format_rational(p.coeff(0))
        edges.append(entry)
    return {"nodes": list(labels), "edges": edges}


def load_network(path: Union[str, Path]) -> Network:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise NetworkFileError(f"{path}: invalid JSON ({exc})") from None
    return network_from_dict(doc)


def dump_network(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=2) + "\n"


def save_network(net: Network, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_network(net))


def to_dot(net: Network, name: str = "network") -> str:
    labels = net.graph.labels
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;"]
    for i in net.graph.nodes:
        lines.append(f"  {json.dumps(labels[i])};")
    for (a, b), p in net.edge_fn.items():
        lines.append(f"  {json.dumps(labels[a])} -> {json.dumps(labels[b])} [label={json.dumps(str(p))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
