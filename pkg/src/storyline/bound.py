"""Crossing lower bound for pairwise storylines via minimum linear arrangement.

Label characters by their order in the first column. An edge between labels
``i`` and ``j`` starts with ``|i - j| - 1`` characters in the way, and every
crossing of curves ``u`` and ``v`` shortens at most ``deg(u) + deg(v) <= 2Δ``
of those gaps by one. So any visualization has at least
``ceil((L* - m) / (2Δ))`` crossings, ``L*`` being the minimum total edge
length over all labelings.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .eventgraph import EventGraph

DEFAULT_BUDGET = 12


@dataclass(frozen=True)
class ArrangementCost:
    labeling: tuple[int, ...]  # labeling[node] = position in 1..n
    total_length: int
    c0_total: int


class Arrangement(NamedTuple):
    l_star: int
    exact: bool
    labeling: tuple[int, ...] | None


@dataclass(frozen=True)
class LowerBoundResult:
    l_star: int
    delta: int
    m: int
    bound: int
    exact: bool


def arrangement_cost(g: EventGraph, labeling: Sequence[int]) -> ArrangementCost:
    labeling = tuple(labeling)
    if len(labeling) != g.n or sorted(labeling) != list(range(1, g.n + 1)):
        raise ValueError(f"labeling must be a bijection onto 1..{g.n}")
    total = sum(abs(labeling[u] - labeling[v]) for u, v, _ in g.edges)
    return ArrangementCost(labeling, total, total - g.m)


def _order_to_labeling(order: Sequence[int]) -> tuple[int, ...]:
    labeling = [0] * len(order)
    for pos, v in enumerate(order, 1):
        labeling[v] = pos
    return tuple(labeling)


def _bfs_order(g: EventGraph, start: int) -> list[int]:
    seen = [False] * g.n
    order = []
    for root in [start, *range(g.n)]:
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _degree_completion(d: int) -> int:
    # least total distance from one node to d others at distinct positions
    return sum((j + 1) // 2 for j in range(1, d + 1))


class _Search:
    """Depth-first placement of nodes left to right.

    The cost is accumulated as the sum of cut sizes between each prefix and
    the rest, so the remaining cost depends only on the set already placed;
    a set reached again at no lower cost is pruned.
    """

    def __init__(self, g: EventGraph):
        self.n = g.n
        self.deg = [0] * g.n
        self.nbr = [0] * g.n
        self.mult: dict[tuple[int, int], int] = {}
        for u, v, _ in g.edges:
            self.deg[u] += 1
            self.deg[v] += 1
            self.nbr[u] |= 1 << v
            self.nbr[v] |= 1 << u
            key = (min(u, v), max(u, v))
            self.mult[key] = self.mult.get(key, 0) + 1
        self.adj_mult = [[0] * g.n for _ in range(g.n)]
        for (u, v), c in self.mult.items():
            self.adj_mult[u][v] = self.adj_mult[v][u] = c
        self.full = (1 << g.n) - 1
        self.best = math.inf
        self.best_order: list[int] = []
        self.seen: dict[int, int] = {}

    def links(self, v: int, mask: int) -> int:
        row = self.adj_mult[v]
        total = 0
        m = self.nbr[v] & mask
        while m:
            low = m & -m
            total += row[low.bit_length() - 1]
            m ^= low
        return total

    def remaining_bound(self, placed: int) -> int:
        free = self.full & ~placed
        to_placed = []
        uu_edges2 = 0
        uu_degree = 0
        m = free
        while m:
            low = m & -m
            w = low.bit_length() - 1
            m ^= low
            a = self.links(w, placed)
            d = self.deg[w] - a
            if a:
                to_placed.append(a)
            distinct = bin(self.nbr[w] & free).count("1")
            uu_edges2 += d
            # parallel edges to one neighbor add at least 1 each
            uu_degree += _degree_completion(distinct) + (d - distinct)
        to_placed.sort(reverse=True)
        # unplaced node at offset x beyond the current cut adds a*x more
        cross = sum(a * x for x, a in enumerate(to_placed))
        return cross + max(uu_edges2 // 2, (uu_degree + 1) // 2)

    def run(self, order: list[int], placed: int, cut: int, cost: int) -> None:
        if placed == self.full:
            if cost < self.best:
                self.best = cost
                self.best_order = list(order)
            return
        prev = self.seen.get(placed)
        if prev is not None and prev <= cost:
            return
        self.seen[placed] = cost
        if cost + self.remaining_bound(placed) >= self.best:
            return
        candidates = []
        m = self.full & ~placed
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            # reversal symmetry: node 0 precedes node 1
            if v == 1 and self.n > 1 and not placed & 1:
                continue
            new_cut = cut + self.deg[v] - 2 * self.links(v, placed)
            candidates.append((new_cut, v))
        candidates.sort()
        for new_cut, v in candidates:
            bit = 1 << v
            step = new_cut if placed | bit != self.full else 0
            order.append(v)
            self.run(order, placed | bit, new_cut, cost + step)
            order.pop()


def min_linear_arrangement(g: EventGraph, budget: int = DEFAULT_BUDGET) -> Arrangement:
    """Exact minimum total edge length over all labelings, by branch and bound.

    Above ``budget`` nodes the search is skipped and the certified estimate
    ``m`` (every edge has length at least 1) is returned with ``exact=False``.
    """
    if g.n > budget:
        return Arrangement(g.m, False, None)
    if g.n <= 1:
        return Arrangement(0, True, tuple(range(1, g.n + 1)))
    search = _Search(g)
    for start in range(g.n):
        order = _bfs_order(g, start)
        cost = arrangement_cost(g, _order_to_labeling(order)).total_length
        if cost < search.best:
            search.best, search.best_order = cost, order
    # the search only reports strictly better labelings
    search.best += 1
    incumbent = search.best_order
    search.run([], 0, 0, 0)
    order = search.best_order or incumbent
    labeling = _order_to_labeling(order)
    return Arrangement(arrangement_cost(g, labeling).total_length, True, labeling)


def lower_bound(g: EventGraph, budget: int = DEFAULT_BUDGET) -> LowerBoundResult:
    delta = g.max_degree()
    if delta == 0:
        return LowerBoundResult(0, 0, g.m, 0, True)
    l_star, exact, _ = min_linear_arrangement(g, budget)
    bound = -(-(l_star - g.m) // (2 * delta))
    return LowerBoundResult(l_star, delta, g.m, bound, exact)
