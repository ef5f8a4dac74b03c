"""Random networks, edge functions and excitations for sweeps and tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from .graph_core import Graph
from .network import Network
from .polyfun import Poly

PolySampler = Callable[[random.Random], Poly]


def random_coefficient(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2, 3)))
        if c or not nonzero:
            return c


def random_fznl_poly(rng: random.Random, min_degree: int = 2, max_degree: int = 4) -> Poly:
    """Zero at the origin with a nonzero coefficient of order >= 2."""
    d = rng.randint(max(2, min_degree), max_degree)
    cs = [Fraction(0)] + [random_coefficient(rng) for _ in range(d - 1)] + [random_coefficient(rng, nonzero=True)]
    return Poly(cs)


def random_fz_poly(rng: random.Random, max_degree: int = 4, linear_share: float = 0.35) -> Poly:
    """Zero at the origin; purely linear with probability ``linear_share``."""
    if max_degree < 2 or rng.random() < linear_share:
        return Poly([0, random_coefficient(rng, nonzero=True)])
    return random_fznl_poly(rng, 2, max_degree)


def random_general_poly(rng: random.Random, max_degree: int = 3) -> Poly:
    """Nonzero constant term plus a random zero-at-origin part."""
    return random_fz_poly(rng, max_degree) + random_coefficient(rng, nonzero=True)


def random_path(rng: random.Random, n: int) -> Graph:
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, list(zip(perm, perm[1:])))


def random_tree(rng: random.Random, n: int, max_depth: Optional[int] = None) -> Graph:
    """Random polytree: a random recursive tree with random edge orientations.

    Re-drawn until the longest directed path is at most ``max_depth``.
    """
    while True:
        edges = []
        for v in range(1, n):
            u = rng.randrange(v)
            edges.append((u, v) if rng.random() < 0.5 else (v, u))
        g = Graph(n, edges)
        if max_depth is None or max(g.max_depth_to(i) for i in g.nodes) <= max_depth:
            return g


def random_dag(
    rng: random.Random,
    max_nodes: int = 12,
    max_edges: int = 20,
    max_depth: Optional[int] = None,
    min_nodes: int = 2,
) -> Graph:
    """Layered random DAG; every non-first-layer node gets at least one parent.

    Layers bound the longest path by ``max_depth`` (default ``n - 1``).
    """
    n = rng.randint(min_nodes, max_nodes)
    if max_depth is None:
        max_depth = n - 1
    layers = [0] + [rng.randint(0, max_depth) for _ in range(n - 1)]
    if max(layers) == 0:
        layers[-1] = 1
    order = list(range(n))
    rng.shuffle(order)
    layer_of = dict(zip(order, layers))
    edges = set()
    for v in range(n):
        lower = [u for u in range(n) if layer_of[u] < layer_of[v]]
        if lower:
            edges.add((rng.choice(lower), v))
    candidates = [(u, v) for u in range(n) for v in range(n) if layer_of[u] < layer_of[v] and (u, v) not in edges]
    rng.shuffle(candidates)
    room = max(0, max_edges - len(edges))
    extra = rng.randint(0, min(room, len(candidates)))
    edges.update(candidates[:extra])
    return Graph(n, sorted(edges))


def random_network(rng: random.Random, g: Graph, sampler: PolySampler) -> Network:
    return Network(g, {e: sampler(rng) for e in sorted(g.edges)})


def random_excitation(rng: random.Random, n: int, horizon: int, span: int = 3) -> list[list[Fraction]]:
    return [[Fraction(rng.randint(-span, span), rng.choice((1, 2))) for _ in range(horizon)] for _ in range(n)]
