"""
The graded necklace space: closed words in the double quiver modulo graded
cyclic rotation.

Rotating a word ``u·v`` to ``v·u`` costs the Koszul sign (-1)^(|u||v|), where a
star bead has degree 1 and a plain bead degree 0. The canonical representative
of a class is its lexicographically least rotation (bead total order); a word
that rotates onto itself with sign -1 is the zero class and is never stored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import Settings, resolve_settings
from .exceptions import CapExceededError, InputFormatError, NotClosedError
from .ncalg import Coefficient, FormalSum, NCPoly, Path, format_fraction, format_labels
from .quiver import Bead, Quiver

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Necklace:
    """Canonical closed word; the length-0 necklace sits at ``vertex``."""

    vertex: str
    word: Tuple[Bead, ...] = ()

    @property
    def stars(self) -> int:
        return sum(bead.degree for bead in self.word)

    @property
    def weight(self) -> int:
        return len(self.word) - self.stars

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.stars, self.weight)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(bead.label for bead in self.word)

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return (self.stars, self.weight, tuple(bead.rank for bead in self.word), self.vertex)

    def to_dict(self) -> Dict[str, Any]:
        return {"word": list(self.labels), "vertex": self.vertex}


def rotation_sign(word: Sequence[Bead], r: int) -> int:
    """Koszul sign of moving ``word[:r]`` behind ``word[r:]``."""
    head = sum(bead.degree for bead in word[:r])
    tail = sum(bead.degree for bead in word[r:])
    return -1 if (head * tail) % 2 else 1


def _check_closed(word: Sequence[Bead]) -> None:
    for left, right in zip(word, word[1:]):
        if left.head != right.tail:
            raise NotClosedError(f"Beads {left.label!r} and {right.label!r} are not composable")
    if word[-1].head != word[0].tail:
        raise NotClosedError(f"Word {[b.label for b in word]} is not closed")


def canonicalize(
    word: Sequence[Bead], vertex: Optional[str] = None
) -> Tuple[Optional[Necklace], int]:
    """Return (canonical necklace, sign) with word = sign·necklace, or (None, 0) for zero."""
    word = tuple(word)
    if not word:
        if vertex is None:
            raise NotClosedError("The empty word needs a vertex")
        return Necklace(vertex), 1
    _check_closed(word)

    degrees = [bead.degree for bead in word]
    total = sum(degrees)
    best_key: Optional[Tuple[int, ...]] = None
    best_rotation = 0
    best_sign = 1
    prefix = 0
    for r in range(len(word)):
        sign = -1 if (prefix * (total - prefix)) % 2 else 1
        rotated = word[r:] + word[:r]
        if r and sign == -1 and rotated == word:
            return None, 0
        key = tuple(bead.rank for bead in rotated)
        if best_key is None or key < best_key:
            best_key, best_rotation, best_sign = key, r, sign
        prefix += degrees[r]

    canonical = word[best_rotation:] + word[:best_rotation]
    return Necklace(canonical[0].tail, canonical), best_sign


def from_path(p: Path) -> Tuple[Optional[Necklace], int]:
    if not p.is_closed:
        raise NotClosedError(f"Path {list(p.labels)} from {p.vertex!r} is open")
    return canonicalize(p.beads, p.vertex)


def necklace_from_labels(
    quiver: Quiver, labels: Sequence[str], vertex: Optional[str] = None
) -> Tuple[Optional[Necklace], int]:
    """Canonical necklace and sign of a word given by bead labels (``"x"``, ``"*x"``)."""
    return canonicalize(quiver.words(labels), vertex)


def format_necklace(necklace: Necklace, quiver: Quiver) -> str:
    if not necklace.word:
        return "1" if quiver.is_single_vertex else f"e_{necklace.vertex}"
    return format_labels(necklace.labels)


class PolyField(FormalSum[Necklace]):
    """Rational combination of necklaces, an element of the necklace Lie algebra."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: Necklace) -> Any:
        return key.sort_key

    def format_key(self, key: Necklace) -> str:
        return format_necklace(key, self.quiver)

    @classmethod
    def from_word(
        cls,
        quiver: Quiver,
        labels: Sequence[str],
        coeff: Coefficient = 1,
        vertex: Optional[str] = None,
    ) -> "PolyField":
        if not labels and vertex is None:
            if not quiver.is_single_vertex:
                raise InputFormatError("A length-0 necklace on a multi-vertex quiver needs a vertex")
            vertex = quiver.vertices[0]
        necklace, sign = canonicalize(quiver.words(labels), vertex)
        if necklace is None:
            return cls(quiver)
        return cls(quiver, [(necklace, sign)]).scale(coeff)

    @classmethod
    def from_words(
        cls, quiver: Quiver, terms: Iterable[Tuple[Coefficient, Sequence[str]]]
    ) -> "PolyField":
        out: List[Tuple[Necklace, Any]] = []
        for coeff, labels in terms:
            out.extend(cls.from_word(quiver, labels, coeff)._terms.items())
        return cls(quiver, out)

    @classmethod
    def from_terms(cls, quiver: Quiver, terms: Iterable[Mapping[str, Any]]) -> "PolyField":
        """Inverse of ``to_terms``: ``[{"coeff": "-1/2", "word": ["x", "*x"]}, ...]``."""
        out = []
        for term in terms:
            try:
                labels = term["word"]
            except (KeyError, TypeError) as exc:
                raise InputFormatError(f"Necklace term without a word: {term!r}") from exc
            piece = cls.from_word(quiver, labels, term.get("coeff", 1), term.get("vertex"))
            out.extend(piece._terms.items())
        return cls(quiver, out)

    @classmethod
    def from_ncpoly(cls, f: NCPoly) -> "PolyField":
        """Image of a combination of closed paths in the necklace space."""
        out = []
        for path, coeff in f.items():
            necklace, sign = from_path(path)
            if necklace is not None:
                out.append((necklace, coeff * sign))
        return cls(f.quiver, out)

    @classmethod
    def of_necklace(cls, quiver: Quiver, necklace: Necklace, coeff: Coefficient = 1) -> "PolyField":
        return cls(quiver, [(necklace, coeff)])

    def star_degrees(self) -> List[int]:
        return sorted({necklace.stars for necklace in self._terms})

    def weights(self) -> List[int]:
        return sorted({necklace.weight for necklace in self._terms})

    def to_terms(self) -> List[Dict[str, Any]]:
        terms = []
        for necklace, coeff in self.items():
            entry: Dict[str, Any] = {"coeff": format_fraction(coeff), "word": list(necklace.labels)}
            if not self.quiver.is_single_vertex:
                entry["vertex"] = necklace.vertex
            terms.append(entry)
        return terms


@lru_cache(maxsize=256)
def _enumerate(quiver: Quiver, stars: int, weight: int) -> Tuple[Necklace, ...]:
    if stars == 0 and weight == 0:
        return tuple(Necklace(vertex) for vertex in quiver.vertices)

    beads = quiver.beads()
    found: List[Necklace] = []

    def extend(word: Tuple[Bead, ...], stars_left: int, plains_left: int, floor: int) -> None:
        if stars_left == 0 and plains_left == 0:
            if word[-1].head != word[0].tail:
                return
            necklace, sign = canonicalize(word)
            if necklace is not None and sign == 1 and necklace.word == word:
                found.append(necklace)
            return
        last = word[-1]
        for bead in beads[floor:]:
            if bead.tail != last.head:
                continue
            if bead.is_star:
                if stars_left:
                    extend(word + (bead,), stars_left - 1, plains_left, floor)
            elif plains_left:
                extend(word + (bead,), stars_left, plains_left - 1, floor)

    # the first bead of a canonical word is its least bead
    for first in beads:
        if first.is_star and stars:
            extend((first,), stars - 1, weight, first.rank)
        elif not first.is_star and weight:
            extend((first,), stars, weight - 1, first.rank)

    found.sort(key=lambda necklace: necklace.sort_key)
    logger.debug(f"Enumerated {len(found)} necklaces of bidegree ({stars}, {weight})")
    return tuple(found)


def enumerate_basis(
    q: Quiver, stars: int, weight: int, settings: Optional[Settings] = None
) -> Tuple[Necklace, ...]:
    """All nonzero canonical necklaces with ``stars`` star beads and ``weight`` plain beads."""
    if stars < 0 or weight < 0:
        return ()
    settings = resolve_settings(settings)
    settings.check_cap("max_necklace_length", stars + weight, "necklace length (stars + weight)")
    basis = _enumerate(q, stars, weight)
    if len(basis) > settings.max_chain_dim:
        raise CapExceededError(
            f"chain dimension {len(basis)} at bidegree ({stars}, {weight}) exceeds "
            f"max_chain_dim = {settings.max_chain_dim}"
        )
    return basis
