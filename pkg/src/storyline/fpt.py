"""Exact crossing minimization as a shortest path through layers of orderings.

One level per distinct event start time. A level's vertices are the
orderings that keep every event active at that time contiguous; consecutive
levels are joined by edges weighted with the inversion distance. The
cheapest level-by-level path is an optimal storyline: columns between two
levels repeat the earlier level's ordering and all swaps happen on entering
the next level, which is always legal because no event starts in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import SolverTag, Solution, Storyline, WiringDiagram, verify_solution
from .perm import ContiguityConstraint, Ordering, count_inversions, count_valid, enumerate_valid, rank, unrank

DEFAULT_MAX_K = 9
DEFAULT_MAX_EVALUATIONS = 10**8
_CHUNK = 1 << 22


class BudgetExceededError(RuntimeError):
    pass


class InfeasibleTransitionError(AssertionError):
    pass


@dataclass(frozen=True)
class Level:
    time: int
    constraint: ContiguityConstraint
    states: tuple[Ordering, ...]  # ascending Lehmer rank
    ranks: tuple[int, ...]


def level_constraints(s: Storyline) -> list[tuple[int, ContiguityConstraint]]:
    """``(time, constraint)`` per distinct start time, counting every active event."""
    out = []
    for t in sorted({e.start for e in s.events}):
        groups = tuple(e.members for e in s.events if e.start <= t <= e.end)
        out.append((t, ContiguityConstraint(groups)))
    return out


def build_levels(s: Storyline) -> list[Level]:
    levels = []
    for t, c in level_constraints(s):
        ranked = sorted((rank(o), o) for o in enumerate_valid(s.k, c))
        levels.append(Level(t, c, tuple(o for _, o in ranked), tuple(r for r, _ in ranked)))
    return levels


def _pair_signs(states: Sequence[Ordering], k: int) -> np.ndarray:
    """Row per state, column per character pair ``i < j``: 1.0 if ``i`` is above ``j``."""
    inv = np.array([o.inverse for o in states], dtype=np.int16).reshape(len(states), k)
    first, second = np.triu_indices(k, 1)
    return (inv[:, first] < inv[:, second]).astype(np.float64)


def full_weight_table(k: int) -> np.ndarray:
    """Inversion distance between every pair of the ``k!`` orderings, indexed by rank.

    This is the all-pairs precomputation with merge-sort counting; it costs
    ``k!**2 / 2`` calls to :func:`count_inversions`.
    """
    n = math.factorial(k)
    orders = [unrank(r, k) for r in range(n)]
    table = np.zeros((n, n), dtype=np.int16)
    for a in range(n):
        oa = orders[a]
        row = [count_inversions(oa, orders[b]) for b in range(a + 1, n)]
        table[a, a + 1 :] = row
        table[a + 1 :, a] = row
    return table


class LayeredGraph:
    """Levels plus edge weights between consecutive levels.

    Weights are evaluated per level pair on demand. With ``table`` set they
    are looked up in a precomputed all-pairs table instead.
    """

    def __init__(self, levels: Sequence[Level], k: int, table: np.ndarray | None = None):
        self.levels = list(levels)
        self.k = k
        self.table = table
        self._signs: dict[int, np.ndarray] = {}

    def signs(self, i: int) -> np.ndarray:
        if i not in self._signs:
            self._signs[i] = _pair_signs(self.levels[i].states, self.k)
        return self._signs[i]

    def weights(self, i: int, cols: slice = slice(None)) -> np.ndarray:
        """Weight matrix from level ``i`` (rows) to level ``i + 1`` (columns)."""
        if self.table is not None:
            rows = np.asarray(self.levels[i].ranks)
            targets = np.asarray(self.levels[i + 1].ranks)[cols]
            return self.table[np.ix_(rows, targets)].astype(np.float64)
        a = self.signs(i)
        b = self.signs(i + 1)[cols]
        return a @ (1.0 - b).T + (1.0 - a) @ b.T


def estimate_evaluations(s: Storyline) -> int:
    sizes = [count_valid(s.k, c) for _, c in level_constraints(s)]
    return sum(a * b for a, b in zip(sizes, sizes[1:]))


def _check_budget(s: Storyline, max_k: int, max_evaluations: int, full_table: bool) -> None:
    if s.k > max_k:
        raise BudgetExceededError(f"k={s.k} exceeds the limit of {max_k} characters")
    work = estimate_evaluations(s)
    if full_table:
        work += math.factorial(s.k) ** 2 // 2
    if work > max_evaluations:
        raise BudgetExceededError(f"{work} weight evaluations exceed the budget of {max_evaluations}")


def shortest_path(graph: LayeredGraph) -> tuple[int, list[Ordering]]:
    """Minimum path weight and the chosen ordering per level.

    Ties go to the predecessor, and final state, of lowest Lehmer rank.
    """
    levels = graph.levels
    cost = np.zeros(len(levels[0].states))
    back: list[np.ndarray] = []
    for i in range(len(levels) - 1):
        nb = len(levels[i + 1].states)
        step = max(1, _CHUNK // max(1, len(cost)))
        new_cost = np.empty(nb)
        pred = np.empty(nb, dtype=np.int64)
        for lo in range(0, nb, step):
            cols = slice(lo, min(nb, lo + step))
            total = cost[:, None] + graph.weights(i, cols)
            arg = np.argmin(total, axis=0)
            pred[cols] = arg
            new_cost[cols] = total[arg, np.arange(total.shape[1])]
        back.append(pred)
        cost = new_cost
    j = int(np.argmin(cost))
    best = int(round(cost[j]))
    path = [j]
    for pred in reversed(back):
        j = int(pred[j])
        path.append(j)
    path.reverse()
    return best, [lvl.states[p] for lvl, p in zip(levels, path)]


def expand_to_diagram(s: Storyline, level_orders: Sequence[Ordering | Sequence[int]]) -> WiringDiagram:
    """Fill every column from one chosen ordering per level.

    A level's ordering holds from its time until the next level; the swaps
    leading into a level are all placed between that level's column and the
    one before it.
    """
    constraints = level_constraints(s)
    if len(level_orders) != len(constraints):
        raise ValueError(f"expected {len(constraints)} level orderings, got {len(level_orders)}")
    orders = [tuple(o) for o in level_orders]
    for (t, c), o in zip(constraints, orders):
        if not c.satisfied_by(o):
            raise InfeasibleTransitionError(f"ordering {o} breaks an event active at time {t}")
    times = list(s.columns())
    if not orders:
        return WiringDiagram(tuple(times), tuple(tuple(range(s.k)) for _ in times))
    starts = [t for t, _ in constraints]
    columns = []
    i = 0
    for t in times:
        while i + 1 < len(starts) and starts[i + 1] <= t:
            i += 1
        columns.append(orders[i])
    d = WiringDiagram(tuple(times), tuple(columns))
    check = verify_solution(s, d)
    if not check.valid:
        raise InfeasibleTransitionError(f"expanded diagram violates {check.violations[:3]}")
    return d


def solve_exact(
    s: Storyline,
    max_k: int = DEFAULT_MAX_K,
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS,
    full_table: bool = False,
) -> Solution:
    """Minimum-crossing wiring diagram for ``s``.

    Args:
        s: the storyline.
        max_k: refuse instances with more characters than this.
        max_evaluations: refuse when the number of edge weights to evaluate
            exceeds this.
        full_table: precompute all ``k!**2`` pairwise distances up front
            instead of evaluating level pairs on demand.

    Raises:
        BudgetExceededError: the state space is over budget.
    """
    _check_budget(s, max_k, max_evaluations, full_table)
    levels = build_levels(s)
    if not levels:
        d = expand_to_diagram(s, [])
        return Solution(d, 0, SolverTag.EXACT, {"levels": 0, "states": 0})
    table = full_weight_table(s.k) if full_table else None
    graph = LayeredGraph(levels, s.k, table)
    best, path = shortest_path(graph)
    d = expand_to_diagram(s, path)
    info = {"levels": len(levels), "states": sum(len(lvl.states) for lvl in levels)}
    return Solution(d, best, SolverTag.EXACT, info)


__all__ = [
    "BudgetExceededError",
    "InfeasibleTransitionError",
    "LayeredGraph",
    "Level",
    "build_levels",
    "estimate_evaluations",
    "expand_to_diagram",
    "full_weight_table",
    "level_constraints",
    "shortest_path",
    "solve_exact",
]

