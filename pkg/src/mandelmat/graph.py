"""The digraphs ``G_n`` and the connectivity facts that make Perron-Frobenius apply."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import DomainError
from .matrices import SparseIntMatrix, _check_order


@dataclass(frozen=True)
class DigraphEdgeList:
    """Directed graph on vertices ``1..vertex_count``; loops allowed."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        for u, v in self.edges:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")

    @classmethod
    def from_matrix(cls, m: SparseIntMatrix) -> "DigraphEdgeList":
        """Edge ``i -> j`` for every nonzero ``m[i, j]``."""
        return cls(m.dim, tuple(zip(m.rows.tolist(), m.cols.tolist())))

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def successors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.vertex_count + 1)]
        for u, v in self.edges:
            adj[u].append(v)
        return adj


def digraph(n: int) -> DigraphEdgeList:
    """Build ``G_n`` by the copy-renumber-and-link construction.

    The second copy of ``G_{n-1}`` is shifted by ``2**(n-1)``; the new vertex
    ``2**(n-1)`` sits between the copies, and three edges are added:
    ``1 -> 2**n - 1``, ``2**(n-1) + 1 -> 2**(n-1)`` and
    ``2**(n-1) -> 2**(n-1) - 1``.
    """
    n = _check_order(n)
    edges = [(1, 1)]
    for k in range(2, n + 1):
        half = 1 << (k - 1)
        shifted = [(u + half, v + half) for u, v in edges]
        edges = edges + shifted + [(1, (1 << k) - 1), (half + 1, half), (half, half - 1)]
    return DigraphEdgeList((1 << n) - 1, tuple(sorted(edges)))


def strongly_connected_components(g: DigraphEdgeList) -> list[list[int]]:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    adj = g.successors()
    index = [0] * (g.vertex_count + 1)  # 0 = unvisited; otherwise preorder + 1
    low = [0] * (g.vertex_count + 1)
    on_stack = [False] * (g.vertex_count + 1)
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 1
    for root in range(1, g.vertex_count + 1):
        if index[root]:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(adj[v]):
                work[-1] = (v, pos + 1)
                w = adj[v][pos]
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(sorted(comp))
    return components


def is_strongly_connected(g: DigraphEdgeList) -> bool:
    comps = strongly_connected_components(g)
    return len(comps) == 1 and len(comps[0]) == g.vertex_count


def period(g: DigraphEdgeList) -> int:
    """Gcd of all cycle lengths of a strongly connected digraph.

    Uses breadth-first levels from vertex 1: the period is the gcd of
    ``level[u] + 1 - level[v]`` over every edge ``u -> v``.
    """
    if not is_strongly_connected(g):
        raise DomainError("period is only defined here for strongly connected digraphs")
    adj = g.successors()
    level = [-1] * (g.vertex_count + 1)
    level[1] = 0
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    h = 0
    for u, v in g.edges:
        h = gcd(h, abs(level[u] + 1 - level[v]))
    return h


def adjacency_pattern(g: DigraphEdgeList) -> SparseIntMatrix:
    """0/1 matrix with a one for every edge."""
    if not g.edges:
        return SparseIntMatrix(g.vertex_count, np.zeros(0), np.zeros(0), np.zeros(0))
    u, v = zip(*sorted(set(g.edges)))
    return SparseIntMatrix.from_triplets(g.vertex_count, u, v)
