"""Small exact max-flow (Edmonds-Karp) used for assignment feasibility.

Capacities may be ints or Fractions; arithmetic stays exact. Graphs here
have a few hundred arcs at most, so no attempt is made at speed.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

INF = None  # marker for uncapacitated arcs


class FlowNetwork:
    def __init__(self):
        self._adj = {}
        self._cap = {}

    def add_edge(self, u, v, capacity=INF):
        self._adj.setdefault(u, []).append(v)
        self._adj.setdefault(v, []).append(u)
        self._cap[(u, v)] = capacity
        self._cap.setdefault((v, u), 0)

    def max_flow(self, source, sink):
        """Return ``(value, flow)`` where ``flow[(u, v)]`` is net flow on arc u->v."""
        flow = {}
        residual = dict(self._cap)
        value = Fraction(0)

        def res(u, v):
            return residual[(u, v)]  # None means infinite

        while True:
            parent = {source: None}
            queue = deque([source])
            while queue and sink not in parent:
                u = queue.popleft()
                for v in self._adj.get(u, ()):
                    if v in parent:
                        continue
                    r = res(u, v)
                    if r is None or r > 0:
                        parent[v] = u
                        queue.append(v)
            if sink not in parent:
                break
            bottleneck = None
            v = sink
            while parent[v] is not None:
                u = parent[v]
                r = res(u, v)
                if r is not None and (bottleneck is None or r < bottleneck):
                    bottleneck = r
                v = u
            if bottleneck is None:
                raise ValueError("unbounded flow: path of uncapacitated arcs")
            v = sink
            while parent[v] is not None:
                u = parent[v]
                if residual[(u, v)] is not None:
                    residual[(u, v)] -= bottleneck
                if residual[(v, u)] is not None:
                    residual[(v, u)] += bottleneck
                flow[(u, v)] = flow.get((u, v), 0) + bottleneck
                flow[(v, u)] = flow.get((v, u), 0) - bottleneck
                v = u
            value += bottleneck
        return value, {arc: f for arc, f in flow.items() if f > 0}
