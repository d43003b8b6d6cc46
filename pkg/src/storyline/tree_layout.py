"""O(n log n)-crossing layouts for pairwise single-meeting tree storylines.

The tree is split into heavy paths. Every node ``v`` on a heavy path owns a
rectangle made of ``v`` itself and the layouts of its light subtrees, stacked
in order of their meeting time with ``v``; the rectangles of one heavy path
are stacked top to bottom in path order. Blocks never interleave: the only
curve that ever moves relative to a light block is the rectangle's own node,
which always sits between two blocks. It meets a light child at the child
block's top or bottom edge (the block is mirrored for the latter), its heavy
child at the bottom of the rectangle, and its parent at the top. The path
root is thereby always on top of its whole layout while meeting its parent.

Each node crosses each curve of its light subtrees at most five times: once
walking down the staircase and twice for each of the two detours. Summed
over one heavy path that is at most ``5n``, and nesting depth is bounded by
the number of light edges on a root-leaf path, at most ``log2 n``.
"""

from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass

from .eventgraph import EventGraph, build_event_graph, classify
from .model import SolverTag, Solution, Storyline, StorylineValidationError, WiringDiagram, verify_solution


class NotATreeError(StorylineValidationError):
    pass


def crossing_bound(n: int) -> int:
    """Guaranteed ceiling ``5 n (ceil(log2 n) + 1)`` on the layout's crossings."""
    if n <= 1:
        return 0
    return 5 * n * (math.ceil(math.log2(n)) + 1)


@dataclass(frozen=True)
class HeavyPathDecomposition:
    root: int
    parent: tuple[int, ...]  # -1 at the root
    heavy_child: tuple[int | None, ...]
    heavy_paths: tuple[tuple[int, ...], ...]
    light_edges: tuple[tuple[int, int], ...]
    subtree_size: tuple[int, ...]

    def light_depth(self, v: int) -> int:
        """Light edges on the path from the root to ``v``."""
        count = 0
        while v != self.root:
            p = self.parent[v]
            if self.heavy_child[p] != v:
                count += 1
            v = p
        return count


def heavy_path_decompose(g: EventGraph, root: int = 0) -> HeavyPathDecomposition:
    """Heavy path decomposition of tree ``g``; size ties go to the lowest-index child."""
    if not classify(g).is_tree:
        raise NotATreeError("event graph is not a tree")
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} not in 0..{g.n - 1}")
    parent = [-1] * g.n
    order = [root]
    for u in order:
        for w in g.adjacency[u]:
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    size = [1] * g.n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    heavy: list[int | None] = [None] * g.n
    for u in order:
        for w in g.adjacency[u]:
            if w != parent[u] and (heavy[u] is None or size[w] > size[heavy[u]]):
                heavy[u] = w
    paths = []
    light = []
    heads = [root]
    for h in heads:
        path = [h]
        while heavy[path[-1]] is not None:
            path.append(heavy[path[-1]])
        paths.append(tuple(path))
        for u in path:
            for w in g.adjacency[u]:
                if w != parent[u] and w != heavy[u]:
                    light.append((u, w))
                    heads.append(w)
    return HeavyPathDecomposition(root, tuple(parent), tuple(heavy), tuple(paths), tuple(light), tuple(size))


@dataclass(frozen=True)
class LayoutRect:
    """One heavy-path node with its light subtree layouts.

    ``schedule`` lists ``(first column, blocks above node)`` steps; ``ranks``
    is the rectangle's fixed rank range inside its heavy path's layout.
    """

    node: int
    blocks: tuple[int, ...]
    flipped: tuple[bool, ...]
    ranks: range
    schedule: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_starts", [c for c, _ in self.schedule])

    def blocks_above(self, t: int) -> int:
        i = bisect.bisect_right(self._starts, t) - 1
        return self.schedule[max(i, 0)][1]


def _choose_positions(requirements, sizes):
    """Pick a node position per meeting minimizing total curves crossed.

    ``requirements`` are ``(start, end, options)`` in time order, each option
    a ``(blocks_above, flip)`` pair. Returns the chosen option per meeting;
    ties go to the earlier option.
    """
    prefix = [0]
    for sz in sizes:
        prefix.append(prefix[-1] + sz)
    best = [(0, -1)] * len(requirements[0][2])
    history = []
    prev_options = None
    for _, _, options in requirements:
        if prev_options is None:
            cur = [(0, -1) for _ in options]
        else:
            cur = []
            for b, _ in options:
                choice = min(
                    range(len(prev_options)),
                    key=lambda i: (best[i][0] + abs(prefix[b] - prefix[prev_options[i][0]]), i),
                )
                cur.append((best[choice][0] + abs(prefix[b] - prefix[prev_options[choice][0]]), choice))
        history.append(cur)
        best = cur
        prev_options = options
    pick = min(range(len(best)), key=lambda i: (best[i][0], i))
    chosen = []
    for step in reversed(range(len(requirements))):
        chosen.append(requirements[step][2][pick])
        pick = history[step][pick][1]
    chosen.reverse()
    return chosen


class TreeLayout:
    """The recursive rectangle structure for one rooted tree storyline."""

    def __init__(self, s: Storyline, root: int = 0):
        g = build_event_graph(s)
        if not classify(g).is_tree:
            raise NotATreeError("event graph is not a single-meeting tree")
        self.storyline = s
        self.hpd = heavy_path_decompose(g, root)
        self.interval = {}
        for u, v, ei in g.edges:
            e = s.events[ei]
            self.interval[(u, v)] = self.interval[(v, u)] = (e.start, e.end)
        self.first_column = s.span()[0]
        self.children = [[w for w in g.adjacency[v] if self.hpd.parent[w] == v] for v in range(g.n)]
        self.paths: dict[int, tuple[LayoutRect, ...]] = {}
        for path in reversed(self.hpd.heavy_paths):
            self.paths[path[0]] = self._build_path(path)

    def _build_path(self, path: tuple[int, ...]) -> tuple[LayoutRect, ...]:
        hpd = self.hpd
        rects = []
        offset = 0
        for v in path:
            heavy = hpd.heavy_child[v]
            lights = [w for w in self.children[v] if w != heavy]
            lights.sort(key=lambda w: (self.interval[(v, w)][0], w))
            sizes = [hpd.subtree_size[w] for w in lights]
            # (start, end, options, light block index or None)
            reqs = []
            if hpd.parent[v] >= 0:
                reqs.append((*self.interval[(v, hpd.parent[v])], [(0, False)], None))
            if heavy is not None:
                reqs.append((*self.interval[(v, heavy)], [(len(lights), False)], None))
            for j, w in enumerate(lights):
                reqs.append((*self.interval[(v, w)], [(j, False), (j + 1, True)], j))
            reqs.sort(key=lambda r: r[0])
            flipped = [False] * len(lights)
            schedule = [(self.first_column, 0)]
            if reqs:
                chosen = _choose_positions([r[:3] for r in reqs], sizes)
                schedule = [(self.first_column, chosen[0][0])]
                # move right after the previous meeting ends
                schedule += [(prev[1] + 1, b) for prev, (b, _) in zip(reqs, chosen[1:])]
                for req, (_, flip) in zip(reqs, chosen):
                    if req[3] is not None:
                        flipped[req[3]] = flip
            span = 1 + sum(sizes)
            rects.append(LayoutRect(v, tuple(lights), tuple(flipped), range(offset, offset + span), tuple(schedule)))
            offset += span
        return tuple(rects)

    def order_at(self, t: int, head: int | None = None) -> list[int]:
        """Top-to-bottom order of the subtree layout headed by ``head`` at column ``t``."""
        head = self.hpd.root if head is None else head
        out: list[int] = []
        for rect in self.paths[head]:
            above = rect.blocks_above(t)
            for j, child in enumerate(rect.blocks):
                if j == above:
                    out.append(rect.node)
                sub = self.order_at(t, child)
                if rect.flipped[j]:
                    sub.reverse()
                out.extend(sub)
            if above == len(rect.blocks):
                out.append(rect.node)
        return out

    def diagram(self) -> WiringDiagram:
        times = tuple(self.storyline.columns())
        return WiringDiagram(times, tuple(tuple(self.order_at(t)) for t in times))


def layout_tree(s: Storyline, root: int = 0) -> Solution:
    """Wiring diagram with at most :func:`crossing_bound` crossings for a tree storyline.

    Raises:
        NotATreeError: the storyline is not a pairwise single-meeting tree.
    """
    layout = TreeLayout(s, root)
    d = layout.diagram()
    check = verify_solution(s, d)
    if not check.valid:
        raise AssertionError(f"tree layout broke events {check.violations[:3]}")
    return Solution(d, check.crossings, SolverTag.TREE_HEURISTIC, {"bound": crossing_bound(s.k), "root": root})


def pair_crossings(d: WiringDiagram) -> Counter[tuple[int, int]]:
    """How often each unordered character pair crosses in ``d``."""
    counts: Counter[tuple[int, int]] = Counter()
    for a, b in zip(d.orders, d.orders[1:]):
        lo, hi = 0, len(a)
        while lo < hi and a[lo] == b[lo]:
            lo += 1
        while hi > lo and a[hi - 1] == b[hi - 1]:
            hi -= 1
        rank_b = {c: r for r, c in enumerate(b[lo:hi])}
        mid = a[lo:hi]
        for i in range(len(mid)):
            for j in range(i + 1, len(mid)):
                if rank_b[mid[i]] > rank_b[mid[j]]:
                    x, y = mid[i], mid[j]
                    counts[(min(x, y), max(x, y))] += 1
    return counts
