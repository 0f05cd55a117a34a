"""Small Edmonds-Karp max-flow for bipartite transport problems.

Node order is fixed by the caller and BFS scans neighbours in insertion
order, so the returned flow is deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

# residual capacities at or below this count as saturated
_TINY = 1e-15


class Transport(NamedTuple):
    value: float
    flows: dict[tuple[int, int], float]
    # min cut: supply / demand nodes still reachable from the source
    reached_supply: frozenset[int]
    reached_demand: frozenset[int]


def transport(
    supply: list[float],
    demand: list[float],
    edges: list[tuple[int, int]],
) -> Transport:
    """Max flow from ``supply`` nodes to ``demand`` nodes over ``edges``.

    Middle edges are uncapacitated; ``supply[i]`` and ``demand[j]`` cap the
    source and sink arcs.  Returns the flow value, the flow on each
    ``(i, j)`` edge that carries any, and the source side of a minimum cut.
    """
    ns, nd = len(supply), len(demand)
    src, snk = ns + nd, ns + nd + 1
    nodes = ns + nd + 2
    cap: list[dict[int, float]] = [dict() for _ in range(nodes)]
    adj: list[list[int]] = [[] for _ in range(nodes)]

    def arc(u: int, v: int, c: float) -> None:
        if v not in cap[u]:
            adj[u].append(v)
            cap[u][v] = 0.0
        if u not in cap[v]:
            adj[v].append(u)
            cap[v][u] = 0.0
        cap[u][v] += c

    unbounded = sum(supply) + 1.0
    for i, s in enumerate(supply):
        arc(src, i, s)
    for i, j in edges:
        arc(i, ns + j, unbounded)
    for j, d in enumerate(demand):
        arc(ns + j, snk, d)

    flow = 0.0
    while True:
        parent = [-1] * nodes
        parent[src] = src
        queue = deque([src])
        while queue and parent[snk] < 0:
            u = queue.popleft()
            for v in adj[u]:
                if parent[v] < 0 and cap[u][v] > _TINY:
                    parent[v] = u
                    queue.append(v)
        if parent[snk] < 0:
            reached = {v for v in range(nodes) if parent[v] >= 0}
            break
        bottleneck = float("inf")
        v = snk
        while v != src:
            u = parent[v]
            bottleneck = min(bottleneck, cap[u][v])
            v = u
        v = snk
        while v != src:
            u = parent[v]
            cap[u][v] -= bottleneck
            cap[v][u] += bottleneck
            v = u
        flow += bottleneck

    edge_flow = {}
    for i, j in edges:
        # flow on a middle arc equals the residual capacity of its reverse arc
        f = cap[ns + j][i]
        if f > _TINY:
            edge_flow[(i, j)] = f
    return Transport(
        flow,
        edge_flow,
        frozenset(i for i in range(ns) if i in reached),
        frozenset(j for j in range(nd) if ns + j in reached),
    )
