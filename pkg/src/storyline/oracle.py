"""Brute-force exact crossing minimization, used as ground truth in tests.

Deliberately naive: every column is a layer holding every permutation that
passes a direct contiguity check, and edge weights come from pairwise
comparison rather than merge sort. Shares nothing with the level
construction of :mod:`storyline.fpt`.
"""

from __future__ import annotations

import itertools

from .model import Storyline


class OracleBudgetError(RuntimeError):
    pass


def _pair_distance(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    pos_b = {c: r for r, c in enumerate(b)}
    return sum(1 for i, j in itertools.combinations(range(len(a)), 2) if pos_b[a[i]] > pos_b[a[j]])


def _column_states(s: Storyline, t: int, perms: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    groups = [e.members for e in s.events if e.start <= t <= e.end]
    out = []
    for p in perms:
        ok = True
        for g in groups:
            idx = [r for r, c in enumerate(p) if c in g]
            if idx[-1] - idx[0] + 1 != len(idx):
                ok = False
                break
        if ok:
            out.append(p)
    return out


def brute_force_min_crossings(s: Storyline, max_states: int = 10**6, max_k: int = 5, max_columns: int = 12) -> int:
    """Minimum crossings over all column-by-column order sequences.

    Raises:
        OracleBudgetError: if ``k``, the column span or the number of
            transitions examined exceeds the configured limits.
    """
    columns = list(s.columns())
    if s.k > max_k:
        raise OracleBudgetError(f"k={s.k} exceeds oracle limit {max_k}")
    if len(columns) > max_columns:
        raise OracleBudgetError(f"{len(columns)} columns exceed oracle limit {max_columns}")
    perms = list(itertools.permutations(range(s.k)))
    layers = [_column_states(s, t, perms) for t in columns]
    work = sum(len(a) * len(b) for a, b in zip(layers, layers[1:]))
    if work > max_states:
        raise OracleBudgetError(f"{work} transitions exceed oracle budget {max_states}")
    cost = {p: 0 for p in layers[0]}
    for layer in layers[1:]:
        cost = {q: min(c + _pair_distance(p, q) for p, c in cost.items()) for q in layer}
    return min(cost.values())
