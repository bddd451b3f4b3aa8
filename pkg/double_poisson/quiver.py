"""
Quivers, their doubles and beads.

A bead is one letter of a word in the double quiver: either a plain arrow ``a``
(degree 0, running tail(a) -> head(a)) or its star ``*a`` standing for the double
derivation d/da (degree 1, running head(a) -> tail(a)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from .exceptions import QuiverError, UnknownArrowError

logger = logging.getLogger(__name__)

STAR_PREFIX = "*"
SINGLE_VERTEX = "v"


class BeadKind(Enum):
    PLAIN = "plain"
    STAR = "star"


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str

    def to_dict(self) -> Dict[str, str]:
        return {"name": self.name, "tail": self.tail, "head": self.head}


@dataclass(frozen=True, order=True)
class Bead:
    """A letter of the double quiver.

    ``rank`` is the position in the total bead order (plain arrows in declaration
    order, then their stars in the same order); ordering and hashing go through it
    first so words compare lexicographically in that order.
    """

    rank: int
    kind: BeadKind = field(compare=False)
    arrow: str = field(compare=False)
    tail: str = field(compare=False)
    head: str = field(compare=False)

    @property
    def degree(self) -> int:
        return 1 if self.kind is BeadKind.STAR else 0

    @property
    def is_star(self) -> bool:
        return self.kind is BeadKind.STAR

    @property
    def label(self) -> str:
        return f"{STAR_PREFIX}{self.arrow}" if self.is_star else self.arrow

    def __repr__(self) -> str:
        return f"Bead({self.label})"


@dataclass(frozen=True)
class Quiver:
    """A finite quiver. Values are immutable and hashable."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[Tuple[str, str, str]]) -> "Quiver":
        quiver = cls(tuple(vertices), tuple(Arrow(*spec) for spec in arrows))
        problems = validate(quiver)
        if problems:
            raise QuiverError("; ".join(problems))
        return quiver

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Quiver":
        try:
            arrows = [(a["name"], a["tail"], a["head"]) for a in data.get("arrows", [])]
            return cls.build(data["vertices"], arrows)
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"Malformed quiver description: {exc}") from exc

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [arrow.to_dict() for arrow in self.arrows],
        }

    @property
    def arrow_names(self) -> Tuple[str, ...]:
        return tuple(arrow.name for arrow in self.arrows)

    @property
    def is_single_vertex(self) -> bool:
        return len(self.vertices) == 1

    def arrow(self, name: str) -> Arrow:
        for arrow in self.arrows:
            if arrow.name == name:
                return arrow
        raise UnknownArrowError(f"Unknown arrow {name!r}")

    @cached_property
    def _beads(self) -> Tuple[Bead, ...]:
        count = len(self.arrows)
        plain = [
            Bead(index, BeadKind.PLAIN, arrow.name, arrow.tail, arrow.head)
            for index, arrow in enumerate(self.arrows)
        ]
        star = [
            Bead(count + index, BeadKind.STAR, arrow.name, arrow.head, arrow.tail)
            for index, arrow in enumerate(self.arrows)
        ]
        return tuple(plain + star)

    @cached_property
    def _beads_by_label(self) -> Dict[str, Bead]:
        return {bead.label: bead for bead in self._beads}

    def beads(self) -> Tuple[Bead, ...]:
        """All beads of the double quiver in total order."""
        return self._beads

    def bead(self, label: str) -> Bead:
        try:
            return self._beads_by_label[label]
        except KeyError:
            raise UnknownArrowError(f"Unknown bead {label!r}") from None

    def plain_bead(self, name: str) -> Bead:
        bead = self.bead(name)
        if bead.is_star:
            raise UnknownArrowError(f"{name!r} is not a plain arrow")
        return bead

    def star_bead(self, name: str) -> Bead:
        return self.bead(f"{STAR_PREFIX}{name}")

    def owns(self, bead: Bead) -> bool:
        known = self._beads_by_label.get(bead.label)
        return (
            known is not None
            and known.rank == bead.rank
            and (known.tail, known.head) == (bead.tail, bead.head)
        )

    def words(self, labels: Sequence[str]) -> Tuple[Bead, ...]:
        return tuple(self.bead(label) for label in labels)


def free_quiver(names: Sequence[str] = ("x", "y")) -> Quiver:
    """One vertex with one loop per name: the path algebra is the free algebra."""
    return Quiver.build([SINGLE_VERTEX], [(name, SINGLE_VERTEX, SINGLE_VERTEX) for name in names])


def validate(q: Quiver) -> List[str]:
    """Return human-readable invariant violations (empty when ``q`` is well formed)."""
    problems: List[str] = []
    seen_vertices = set()
    for vertex in q.vertices:
        if vertex in seen_vertices:
            problems.append(f"duplicate vertex {vertex!r}")
        seen_vertices.add(vertex)

    seen_arrows = set()
    for arrow in q.arrows:
        if arrow.name in seen_arrows:
            problems.append(f"duplicate arrow name {arrow.name!r}")
        seen_arrows.add(arrow.name)
        if not arrow.name:
            problems.append("empty arrow name")
        elif arrow.name.startswith(STAR_PREFIX):
            problems.append(f"arrow name {arrow.name!r} uses the reserved prefix {STAR_PREFIX!r}")
        if arrow.tail not in seen_vertices:
            problems.append(f"arrow {arrow.name!r} has undeclared tail vertex {arrow.tail!r}")
        if arrow.head not in seen_vertices:
            problems.append(f"arrow {arrow.name!r} has undeclared head vertex {arrow.head!r}")
    return problems


def double_quiver(q: Quiver) -> Quiver:
    """Add a reversed, star-named arrow for every arrow of ``q``.

    The result is a plain description of the double quiver; its star arrows carry
    reserved names, so it cannot be doubled again.
    """
    problems = validate(q)
    if problems:
        raise QuiverError(f"Cannot double an invalid quiver: {'; '.join(problems)}")
    starred = tuple(Arrow(f"{STAR_PREFIX}{a.name}", a.head, a.tail) for a in q.arrows)
    logger.debug(f"Doubled quiver with {len(q.arrows)} arrows")
    return Quiver(q.vertices, q.arrows + starred)


def composable(b1: Bead, b2: Bead, q: Quiver) -> bool:
    """True iff ``b1`` followed by ``b2`` is a path in the double quiver of ``q``."""
    for bead in (b1, b2):
        if not q.owns(bead):
            raise UnknownArrowError(f"Bead {bead.label!r} does not belong to the quiver")
    return b1.head == b2.tail
