"""Event graphs of pairwise storylines: characters as nodes, meetings as edges."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .model import Storyline, StorylineValidationError


class NotPairwiseError(StorylineValidationError):
    pass


class Edge(NamedTuple):
    u: int
    v: int
    event: int


@dataclass(frozen=True)
class EventGraph:
    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        edges = tuple(Edge(*e) for e in self.edges)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise ValueError(f"bad edge ({u}, {v}) for {self.n} nodes")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> EventGraph:
        return cls(n, tuple(Edge(u, v, i) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n


class GraphClass(NamedTuple):
    is_single_meeting: bool
    is_tree: bool
    max_degree: int


def build_event_graph(s: Storyline) -> EventGraph:
    edges = []
    for i, e in enumerate(s.events):
        if len(e.members) != 2:
            raise NotPairwiseError(f"event {i} has {len(e.members)} members; event graphs need pairwise meetings")
        u, v = sorted(e.members)
        edges.append(Edge(u, v, i))
    return EventGraph(s.k, tuple(edges))


def classify(g: EventGraph) -> GraphClass:
    pairs = {frozenset((u, v)) for u, v, _ in g.edges}
    single = len(pairs) == len(g.edges)
    tree = single and g.m == g.n - 1 and g.is_connected()
    return GraphClass(single, tree, g.max_degree())
