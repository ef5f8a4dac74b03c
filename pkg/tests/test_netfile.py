import json

import pytest
from hypothesis import given, strategies as st
import random

from netident import CycleError, InvalidEdgeFunction, Poly
from netident.generators import random_dag, random_general_poly, random_network
from netident.netfile import NetworkFileError, dump_network, load_network, network_from_dict, network_to_dict, to_dot

DOC = {
    "nodes": ["a", "b", "c"],
    "edges": [
        {"from": "a", "to": "b", "coeffs": ["0", "1"]},
        {"from": "b", "to": "c", "coeffs": ["1/2", "0", "-3"], "a0": "2"},
    ],
}


def test_parse():
    net = network_from_dict(DOC)
    assert net.graph.labels == ("a", "b", "c")
    assert net.fn(0, 1) == Poly([0, 0, 1])
    assert net.fn(1, 2) == Poly([2, "1/2", 0, -3])


def test_round_trip_identity():
    assert network_to_dict(network_from_dict(DOC)) == DOC


@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    net = random_network(rng, random_dag(rng, 8, 12), lambda r: random_general_poly(r, 3) if r.random() < 0.3 else Poly([0, 1, r.randint(1, 3)]))
    assert network_from_dict(json.loads(dump_network(net))) == net


@pytest.mark.parametrize(
    "doc, err",
    [
        ({"nodes": ["a"]}, NetworkFileError),
        ({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "z", "coeffs": ["1"]}]}, NetworkFileError),
        ({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "coeffs": ["x"]}]}, NetworkFileError),
        ({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "coeffs": ["0"]}]}, InvalidEdgeFunction),
        (
            {"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "coeffs": ["1"]}, {"from": "a", "to": "b", "coeffs": ["2"]}]},
            NetworkFileError,
        ),
        (
            {"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "coeffs": ["1"]}, {"from": "b", "to": "a", "coeffs": ["2"]}]},
            CycleError,
        ),
    ],
)
def test_invalid_files(doc, err):
    with pytest.raises(err):
        network_from_dict(doc)


def test_load_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(NetworkFileError):
        load_network(p)


def test_dot_export():
    dot = to_dot(network_from_dict(DOC), "demo")
    assert dot.startswith('digraph "demo" {')
    assert '"a" -> "b" [label="x^2"];' in dot
    assert '"b" -> "c" [label="2 + 1/2*x - 3*x^3"];' in dot
