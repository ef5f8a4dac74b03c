"""Time-domain execution of the static network model and its consistency with
the symbolic responses.

``y_i[k] = sum_{j in N_i} f_{i,j}(y_j[k-1]) + u_i[k-1]`` with ``y[0] = 0`` and
``u[t] = 0`` for ``t < 0``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .network import Network
from .polyfun import RationalLike, format_rational, to_rational
from .response import DelayedInput, MPoly, build_response, eval_response

__all__ = [
    "Network",
    "Trajectory",
    "run",
    "run_float",
    "consistency_check",
    "excitation_assignment",
    "superposition_holds",
    "impulse",
    "read_excitation_csv",
]


@dataclass(frozen=True)
class Trajectory:
    """``u[i][t]`` and ``y[i][t]`` for ``t = 0..horizon``.

    ``u`` is zero-padded to ``horizon + 1`` columns; the last column never
    influences ``y`` inside the horizon.
    """

    horizon: int
    u: tuple[tuple[Fraction, ...], ...]
    y: tuple[tuple[Fraction, ...], ...]

    def to_csv(self, out: Optional[TextIO] = None, labels: Optional[Sequence[str]] = None) -> str:
        buf = out if out is not None else io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "node", "u", "y"])
        for t in range(self.horizon + 1):
            for i in range(len(self.y)):
                name = labels[i] if labels is not None else i
                writer.writerow([t, name, format_rational(self.u[i][t]), format_rational(self.y[i][t])])
        return buf.getvalue() if out is None else ""


def _pad_excitation(u: Sequence[Sequence[RationalLike]], n: int, horizon: int) -> list[list[Fraction]]:
    if len(u) != n:
        raise ValueError(f"excitation has {len(u)} rows, network has {n} nodes")
    rows = []
    for row in u:
        vals = [to_rational(x) for x in row][: horizon + 1]
        if len(vals) < horizon:
            raise ValueError(f"excitation must cover times 0..{horizon - 1}")
        rows.append(vals + [Fraction(0)] * (horizon + 1 - len(vals)))
    return rows


def run(net: Network, u: Sequence[Sequence[RationalLike]], horizon: int) -> Trajectory:
    """Exact simulation for ``k = 1..horizon``."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    g = net.graph
    n = g.node_count
    uu = _pad_excitation(u, n, horizon)
    y = [[Fraction(0)] * (horizon + 1) for _ in range(n)]
    preds = [sorted(g.in_neighbors(i)) for i in range(n)]
    for k in range(1, horizon + 1):
        for i in range(n):
            acc = uu[i][k - 1]
            for j in preds[i]:
                acc += net.fn(j, i)(y[j][k - 1])
            y[i][k] = acc
    return Trajectory(horizon, tuple(map(tuple, uu)), tuple(map(tuple, y)))


def run_float(net: Network, u: Sequence[Sequence[float]], horizon: int) -> list[list[float]]:
    """Floating-point simulation. Approximate: never use it as an equality oracle."""
    g = net.graph
    n = g.node_count
    coeffs = {e: [float(c) for c in p.coeffs] for e, p in net.edge_fn.items()}

    def horner(cs, x):
        acc = 0.0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    y = [[0.0] * (horizon + 1) for _ in range(n)]
    for k in range(1, horizon + 1):
        for i in range(n):
            acc = float(u[i][k - 1]) if k - 1 < len(u[i]) else 0.0
            for j in g.in_neighbors(i):
                acc += horner(coeffs[(j, i)], y[j][k - 1])
            y[i][k] = acc
    return y


def excitation_assignment(F: MPoly, u: Sequence[Sequence[Fraction]], k: int) -> dict[DelayedInput, Fraction]:
    """Map each variable ``u_j[k-d]`` of ``F`` to the excitation value at time ``k-d``."""
    out = {}
    for v in F.variables():
        t = k - v.delay
        out[v] = u[v.node][t] if 0 <= t < len(u[v.node]) else Fraction(0)
    return out


def consistency_check(
    net: Network,
    i: int,
    u: Sequence[Sequence[RationalLike]],
    horizon: int,
    F: Optional[MPoly] = None,
) -> bool:
    """Does the simulated ``y_i[k]`` equal ``u_i[k-1] + F_i(...)`` after warm-up?

    Times ``k >= max_depth_to(i) + 1`` are checked; earlier outputs still
    carry the zero initial state.
    """
    depth = net.graph.max_depth_to(i)
    if horizon < depth + 2:
        raise ValueError(f"horizon must be at least {depth + 2} for node {i}")
    traj = run(net, u, horizon)
    F = F if F is not None else build_response(net, i)
    for k in range(depth + 1, horizon + 1):
        predicted = traj.u[i][k - 1] + eval_response(F, excitation_assignment(F, traj.u, k))
        if predicted != traj.y[i][k]:
            return False
    return True


def superposition_holds(net: Network, u1, u2, horizon: int) -> bool:
    """Whether ``run(u1 + u2) == run(u1) + run(u2)`` on every output sample."""
    n = net.graph.node_count
    a = run(net, u1, horizon)
    b = run(net, u2, horizon)
    summed = [[to_rational(x) + to_rational(y) for x, y in zip(r1, r2)] for r1, r2 in zip(u1, u2)]
    c = run(net, summed, horizon)
    return all(c.y[i][t] == a.y[i][t] + b.y[i][t] for i in range(n) for t in range(horizon + 1))


def impulse(net: Network, node: int, horizon: int, amplitude: RationalLike = 1) -> list[list[Fraction]]:
    net.graph._check(node)
    u = [[Fraction(0)] * horizon for _ in net.graph.nodes]
    u[node][0] = to_rational(amplitude)
    return u


def read_excitation_csv(text: str, net: Network, horizon: int) -> list[list[Fraction]]:
    """Parse ``t,node,u`` rows (node given by label); missing entries are zero."""
    u = [[Fraction(0)] * horizon for _ in net.graph.nodes]
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"t", "node", "u"} <= set(reader.fieldnames):
        raise ValueError("excitation CSV needs columns t,node,u")
    for row in reader:
        t = int(row["t"])
        if not 0 <= t < horizon:
            continue
        u[net.graph.index(row["node"])][t] = to_rational(row["u"])
    return u
