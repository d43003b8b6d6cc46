"""Seed-deterministic benchmark storylines."""

from __future__ import annotations

import random
from collections import deque

from .model import Event, Storyline

KINDS = ("path", "star", "complete-binary-tree", "random-tree", "random-general")


def _names(n: int) -> tuple[str, ...]:
    width = len(str(n - 1))
    return tuple(f"c{i:0{width}d}" for i in range(n))


def tree_storyline(n: int, parent: list[int]) -> Storyline:
    """Pairwise tree storyline; edges get unit meetings ``[j, j]`` in BFS order from node 0."""
    children: list[list[int]] = [[] for _ in range(n)]
    for child in range(1, n):
        children[parent[child]].append(child)
    events = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in children[u]:
            events.append(Event(frozenset((u, w)), len(events), len(events)))
            queue.append(w)
    return Storyline(_names(n), tuple(events))


def path(n: int) -> Storyline:
    return tree_storyline(n, [0] + [i - 1 for i in range(1, n)])


def star(n: int) -> Storyline:
    return tree_storyline(n, [0] * n)


def complete_binary_tree(n: int) -> Storyline:
    return tree_storyline(n, [0] + [(i - 1) // 2 for i in range(1, n)])


def random_tree(n: int, seed: int) -> Storyline:
    rng = random.Random(seed)
    return tree_storyline(n, [0] + [rng.randrange(i) for i in range(1, n)])


def random_general(
    n: int,
    seed: int,
    events: int | None = None,
    max_size: int = 4,
    max_length: int = 2,
    horizon: int | None = None,
    max_attempts: int = 100_000,
) -> Storyline:
    """Random events of 2..``max_size`` members, rejection-sampled to keep members free.

    Intervals start in ``[0, horizon)`` and last ``0..max_length`` extra
    columns.
    """
    if n < 2:
        raise ValueError("random-general needs at least 2 characters")
    m = n if events is None else events
    horizon = 3 * m + 1 if horizon is None else horizon
    rng = random.Random(seed)
    busy: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    out: list[Event] = []
    attempts = 0
    while len(out) < m:
        attempts += 1
        if attempts > max_attempts:
            raise ValueError(f"could not place {m} events within horizon {horizon}")
        size = rng.randint(2, min(max_size, n))
        members = rng.sample(range(n), size)
        start = rng.randrange(horizon)
        end = start + rng.randint(0, max_length)
        if any(s <= end and start <= e for c in members for s, e in busy[c]):
            continue
        for c in members:
            busy[c].append((start, end))
        out.append(Event(frozenset(members), start, end))
    out.sort(key=lambda e: (e.start, e.end, sorted(e.members)))
    return Storyline(_names(n), tuple(out))


def generate(kind: str, n: int, seed: int = 0, events: int | None = None) -> Storyline:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if kind == "path":
        return path(n)
    if kind == "star":
        return star(n)
    if kind == "complete-binary-tree":
        return complete_binary_tree(n)
    if kind == "random-tree":
        return random_tree(n, seed)
    if kind == "random-general":
        return random_general(n, seed, events)
    raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
