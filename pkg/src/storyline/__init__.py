"""Storyline visualizations with few crossings."""

from .model import (
    Event,
    SolverTag,
    Solution,
    Storyline,
    StorylineError,
    WiringDiagram,
    parse_storyline,
    serialize_storyline,
    verify_solution,
)

__all__ = [
    "Event",
    "SolverTag",
    "Solution",
    "Storyline",
    "StorylineError",
    "WiringDiagram",
    "parse_storyline",
    "serialize_storyline",
    "verify_solution",
]
