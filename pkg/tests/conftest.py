from __future__ import annotations

from pathlib import Path

import pytest

from storyline.model import Event, Storyline

DATA = Path(__file__).parent / "data"


def story(names: str, *events: tuple[str, int, int]) -> Storyline:
    """``story("abc", ("ab", 0, 0))``: one-letter names, events as member strings."""
    index = {c: i for i, c in enumerate(names)}
    return Storyline(tuple(names), tuple(Event(frozenset(index[c] for c in m), s, t) for m, s, t in events))


def tree_story(n: int, edges: list[tuple[int, int, int, int]]) -> Storyline:
    """Pairwise storyline from ``(u, v, start, end)`` edges over characters ``0..n-1``."""
    return Storyline(tuple(f"v{i}" for i in range(n)), tuple(Event(frozenset((u, v)), s, t) for u, v, s, t in edges))


@pytest.fixture
def three_cycle() -> Storyline:
    return story("abc", ("ab", 0, 0), ("bc", 1, 1), ("ac", 2, 2))


@pytest.fixture
def fig1() -> Storyline:
    return story("abcd", ("ab", 0, 0), ("bc", 1, 1), ("cd", 2, 2), ("ad", 3, 3))


@pytest.fixture
def parallel() -> Storyline:
    return story("abcd", ("ab", 0, 5), ("cd", 0, 5))


SVG_NS = "{http://www.w3.org/2000/svg}"


def svg_curves(svg: str) -> dict[str, list[tuple[float, float]]]:
    """Polyline points keyed by element id, read back from emitted SVG."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg.encode())
    return {
        p.get("id"): [tuple(map(float, pt.split(","))) for pt in p.get("points").split()]
        for p in root.iter(f"{SVG_NS}polyline")
    }


def svg_orders_and_gaps(svg: str, s: Storyline) -> tuple[list[tuple[int, ...]], list[list[float]]]:
    """Per column: character order by ascending y, and the consecutive y gaps."""
    curves = svg_curves(svg)
    index = {name: i for i, name in enumerate(s.characters)}
    columns = len(next(iter(curves.values())))
    orders, gaps = [], []
    for j in range(columns):
        ys = sorted((curves[name][j][1], index[name]) for name in curves)
        orders.append(tuple(c for _, c in ys))
        gaps.append([b[0] - a[0] for a, b in zip(ys, ys[1:])])
    return orders, gaps


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
