"""Storyline instances, wiring diagrams, and their JSON interchange formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from .perm import count_inversions


class StorylineError(ValueError):
    """Base class for invalid input files and instances."""


class StorylineSyntaxError(StorylineError):
    pass


class StorylineValidationError(StorylineError):
    pass


class DiagramMismatchError(StorylineError):
    """A diagram does not fit the storyline it is checked against."""


@dataclass(frozen=True)
class Event:
    members: frozenset[int]
    start: int
    end: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if len(self.members) < 2:
            raise StorylineValidationError(f"event needs at least 2 members, got {sorted(self.members)}")
        if self.start < 0 or self.end < 0:
            raise StorylineValidationError(f"negative time in interval [{self.start}, {self.end}]")
        if self.start > self.end:
            raise StorylineValidationError(f"start {self.start} > end {self.end}")

    def active(self, t: int) -> bool:
        return self.start <= t <= self.end


@dataclass(frozen=True)
class Storyline:
    """Characters ``0..k-1`` meeting in events over closed integer intervals."""

    characters: tuple[str, ...]
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "characters", tuple(self.characters))
        object.__setattr__(self, "events", tuple(self.events))
        if len(set(self.characters)) != len(self.characters):
            raise StorylineValidationError("duplicate character name")
        k = len(self.characters)
        busy: dict[int, list[Event]] = {}
        for i, e in enumerate(self.events):
            for c in e.members:
                if not 0 <= c < k:
                    raise StorylineValidationError(f"event {i}: unknown character index {c}")
                for other in busy.get(c, ()):
                    if e.start <= other.end and other.start <= e.end:
                        raise StorylineValidationError(
                            f"overlapping events for character {self.characters[c]!r}: "
                            f"[{other.start}, {other.end}] and [{e.start}, {e.end}]"
                        )
                busy.setdefault(c, []).append(e)

    @property
    def k(self) -> int:
        return len(self.characters)

    @property
    def m(self) -> int:
        return len(self.events)

    def span(self) -> tuple[int, int]:
        """First and last diagram column: event range padded by one on each side."""
        if not self.events:
            return -1, 1
        lo = min(e.start for e in self.events)
        hi = max(e.end for e in self.events)
        return lo - 1, hi + 1

    def columns(self) -> range:
        lo, hi = self.span()
        return range(lo, hi + 1)

    def active_events(self, t: int) -> list[int]:
        return [i for i, e in enumerate(self.events) if e.active(t)]

    def relabel(self, mapping: Sequence[int]) -> Storyline:
        """Move character ``c`` to index ``mapping[c]``, keeping names attached."""
        names = [""] * self.k
        for c, new in enumerate(mapping):
            names[new] = self.characters[c]
        events = [Event(frozenset(mapping[c] for c in e.members), e.start, e.end) for e in self.events]
        return Storyline(tuple(names), tuple(events))


class SolverTag(str, Enum):
    EXACT = "exact"
    TREE_HEURISTIC = "tree_heuristic"
    EXTERNAL = "external"


@dataclass(frozen=True)
class WiringDiagram:
    """One top-to-bottom order of all characters per integer time column."""

    times: tuple[int, ...]
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        times = tuple(self.times)
        orders = tuple(tuple(o) for o in self.orders)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "orders", orders)
        if len(times) != len(orders):
            raise ValueError(f"{len(times)} times but {len(orders)} orders")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing")
        if orders:
            k = len(orders[0])
            ref = set(range(k))
            for t, o in zip(times, orders):
                if len(o) != k or set(o) != ref:
                    raise ValueError(f"order at time {t} is not a permutation of 0..{k - 1}")

    @property
    def k(self) -> int:
        return len(self.orders[0]) if self.orders else 0

    def order_at(self, t: int) -> tuple[int, ...]:
        return self.orders[self.times.index(t)]

    def crossings(self) -> int:
        return sum(count_inversions(a, b) for a, b in zip(self.orders, self.orders[1:]))


@dataclass(frozen=True)
class Solution:
    diagram: WiringDiagram
    crossings: int
    solver_tag: SolverTag
    info: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "solver_tag", SolverTag(self.solver_tag))
        recount = self.diagram.crossings()
        if recount != self.crossings:
            raise ValueError(f"reported {self.crossings} crossings but diagram has {recount}")


@dataclass(frozen=True)
class Violation:
    event: int
    time: int


@dataclass(frozen=True)
class Verification:
    valid: bool
    crossings: int
    violations: tuple[Violation, ...]


def verify_solution(s: Storyline, d: WiringDiagram) -> Verification:
    """Check every event's contiguity at every column of its interval and count crossings."""
    if d.k != s.k:
        raise DiagramMismatchError(f"diagram has {d.k} characters, storyline has {s.k}")
    index = {t: i for i, t in enumerate(d.times)}
    missing = [t for t in s.columns() if t not in index]
    if missing:
        raise DiagramMismatchError(f"diagram lacks time columns {missing[:5]}")
    inverses: dict[int, list[int]] = {}
    violations = []
    for ei, e in enumerate(s.events):
        for t in range(e.start, e.end + 1):
            inv = inverses.get(t)
            if inv is None:
                inv = inverses[t] = [0] * s.k
                for r, c in enumerate(d.orders[index[t]]):
                    inv[c] = r
            ranks = [inv[c] for c in e.members]
            if max(ranks) - min(ranks) + 1 != len(ranks):
                violations.append(Violation(ei, t))
    violations.sort(key=lambda v: (v.time, v.event))
    return Verification(not violations, d.crossings(), tuple(violations))


# --- JSON interchange -------------------------------------------------------


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(text: bytes | str) -> Any:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise StorylineSyntaxError(f"malformed JSON: {exc}") from exc


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise StorylineSyntaxError(f"{what} must be an integer, got {value!r}")
    return value


def parse_storyline(text: bytes | str) -> Storyline:
    data = _load(text)
    if not isinstance(data, dict) or not isinstance(data.get("characters"), list):
        raise StorylineSyntaxError('expected an object with a "characters" array')
    raw_events = data.get("events", [])
    if not isinstance(raw_events, list):
        raise StorylineSyntaxError('"events" must be an array')
    names = data["characters"]
    if not all(isinstance(n, str) for n in names):
        raise StorylineSyntaxError("character names must be strings")
    if len(set(names)) != len(names):
        raise StorylineValidationError("duplicate character name")
    index = {name: i for i, name in enumerate(names)}
    events = []
    for i, raw in enumerate(raw_events):
        if not isinstance(raw, dict) or not isinstance(raw.get("members"), list):
            raise StorylineSyntaxError(f'event {i}: expected an object with a "members" array')
        start = _int(raw.get("start"), f"event {i} start")
        end = _int(raw.get("end"), f"event {i} end")
        members = raw["members"]
        for name in members:
            if name not in index:
                raise StorylineValidationError(f"event {i}: unknown character {name!r}")
        if len(set(members)) != len(members):
            raise StorylineValidationError(f"event {i}: repeated member")
        try:
            events.append(Event(frozenset(index[n] for n in members), start, end))
        except StorylineValidationError as exc:
            raise StorylineValidationError(f"event {i}: {exc}") from None
    return Storyline(tuple(names), tuple(events))


def storyline_to_dict(s: Storyline) -> dict[str, Any]:
    return {
        "characters": list(s.characters),
        "events": [
            {"members": [s.characters[c] for c in sorted(e.members)], "start": e.start, "end": e.end}
            for e in s.events
        ],
    }


def serialize_storyline(s: Storyline) -> str:
    return _dumps(storyline_to_dict(s))


def diagram_to_dict(d: WiringDiagram, s: Storyline) -> dict[str, Any]:
    return {
        "times": list(d.times),
        "orders": [[s.characters[c] for c in o] for o in d.orders],
    }


def serialize_diagram(d: WiringDiagram, s: Storyline) -> str:
    return _dumps(diagram_to_dict(d, s))


def parse_diagram(text: bytes | str, s: Storyline) -> WiringDiagram:
    data = _load(text)
    if not isinstance(data, dict) or not isinstance(data.get("times"), list) or not isinstance(data.get("orders"), list):
        raise StorylineSyntaxError('expected an object with "times" and "orders" arrays')
    index = {name: i for i, name in enumerate(s.characters)}
    times = [_int(t, "time") for t in data["times"]]
    if len(times) != len(data["orders"]):
        raise StorylineValidationError(f"{len(times)} times but {len(data['orders'])} orders")
    orders = []
    for t, row in zip(times, data["orders"]):
        if not isinstance(row, list):
            raise StorylineSyntaxError(f"order at time {t} must be an array")
        try:
            orders.append(tuple(index[name] for name in row))
        except (KeyError, TypeError):
            raise StorylineValidationError(f"order at time {t} names an unknown character") from None
    try:
        return WiringDiagram(tuple(times), tuple(orders))
    except ValueError as exc:
        raise StorylineValidationError(str(exc)) from None
