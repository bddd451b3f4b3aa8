"""
The graded Kontsevich bracket on necklaces and the double brackets it induces.

Sign rule. For necklaces w1, w2 the bracket is A(w1, w2) - B(w1, w2):

* A sums over every star bead *a of w1 and every plain bead a of w2. Rotate w1 to
  ``e·(u *a)`` and w2 to ``h·(a v)``; contribute ``e·h·[u v]``.
* B sums over every plain bead a of w1 and every star bead *a of w2. Rotate w1 to
  ``e·(u a)`` and w2 to ``h·(*a v)``; contribute ``-e·h·[u v]``.

Here e and h are the Koszul rotation signs. This rule reproduces the four-term
bracket of linear tensors, the closed formulas for the differentials of the
linear and quadratic tensors on C<x,y>, and is graded antisymmetric for the
shifted degree (stars - 1).
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, DefaultDict, Dict, List, Tuple

from .exceptions import InputFormatError, MixedQuiverError, NonHomogeneousError, NotATensorError
from .ncalg import FormalSum, NCPoly, Path, TensorElem, format_path, path_concat
from .necklace import Necklace, PolyField, canonicalize, rotation_sign
from .quiver import Bead

logger = logging.getLogger(__name__)

GeneratorTable = Dict[Tuple[str, str], TensorElem]


def _to_end(word: Tuple[Bead, ...], index: int) -> Tuple[int, Tuple[Bead, ...]]:
    """Rotate ``word[index]`` to the last slot; return (sign, the other beads)."""
    r = index + 1
    return rotation_sign(word, r), word[r:] + word[:index]


def _to_front(word: Tuple[Bead, ...], index: int) -> Tuple[int, Tuple[Bead, ...]]:
    """Rotate ``word[index]`` to the first slot; return (sign, the other beads)."""
    return rotation_sign(word, index), word[index + 1 :] + word[:index]


@lru_cache(maxsize=1 << 16)
def _splice(n1: Necklace, n2: Necklace) -> Tuple[Tuple[Necklace, int], ...]:
    out: DefaultDict[Necklace, int] = defaultdict(int)
    for i, b1 in enumerate(n1.word):
        for j, b2 in enumerate(n2.word):
            if b1.arrow != b2.arrow or b1.kind is b2.kind:
                continue
            e, u = _to_end(n1.word, i)
            h, v = _to_front(n2.word, j)
            sign = e * h if b1.is_star else -e * h
            # u·v closes at the head of b1 (tail of a for A, head of a for B)
            necklace, s = canonicalize(u + v, b1.head)
            if necklace is not None:
                out[necklace] += sign * s
    return tuple((necklace, c) for necklace, c in out.items() if c)


def kontsevich_bracket(w1: PolyField, w2: PolyField) -> PolyField:
    """Bilinear extension of the necklace splice."""
    if w1.quiver != w2.quiver:
        raise MixedQuiverError("Cannot bracket necklaces of different quivers")
    acc: DefaultDict[Necklace, Fraction] = defaultdict(Fraction)
    for n1, c1 in w1.items():
        for n2, c2 in w2.items():
            for necklace, sign in _splice(n1, n2):
                acc[necklace] += c1 * c2 * sign
    return PolyField(w1.quiver, acc)


def differential_dP(P: PolyField, v: PolyField) -> PolyField:
    """d_P = {P, -}."""
    return kontsevich_bracket(P, v)


def _require_tensor(P: PolyField) -> None:
    degrees = P.star_degrees()
    if degrees and degrees != [2]:
        raise NotATensorError(f"Expected a star-degree 2 PolyField, found star degrees {degrees}")


def generator_brackets(P: PolyField) -> GeneratorTable:
    """Double brackets of pairs of arrows.

    Each term ``c·w`` of P is read from each of its two star beads: rotated to
    ``s·(*a U *b V)`` it contributes ``c·s·V⊗U`` to <<a, b>>.
    """
    _require_tensor(P)
    pieces: DefaultDict[Tuple[str, str], List[Tuple[Tuple[Path, Path], Fraction]]] = defaultdict(list)
    for necklace, coeff in P.items():
        word = necklace.word
        for i, bead in enumerate(word):
            if not bead.is_star:
                continue
            sigma = rotation_sign(word, i)
            rotated = word[i:] + word[:i]
            j = next(k for k in range(1, len(rotated)) if rotated[k].is_star)
            first, second = rotated[0], rotated[j]
            u = Path(first.head, rotated[1:j])
            v = Path(second.head, rotated[j + 1 :])
            pieces[(first.arrow, second.arrow)].append(((v, u), coeff * sigma))
    return {key: TensorElem(P.quiver, terms) for key, terms in pieces.items()}


def _bracket_paths(table: GeneratorTable, f: Path, g: Path) -> List[Tuple[Tuple[Path, Path], Fraction]]:
    """<<f, g>> for paths f = f1 a f2, g = g1 b g2: Σ g1 <<a,b>>' f2 ⊗ f1 <<a,b>>'' g2."""
    out = []
    for i, fa in enumerate(f.beads):
        f1 = Path(f.vertex, f.beads[:i])
        f2 = Path(fa.head, f.beads[i + 1 :])
        for j, gb in enumerate(g.beads):
            piece = table.get((fa.arrow, gb.arrow))
            if piece is None:
                continue
            g1 = Path(g.vertex, g.beads[:j])
            g2 = Path(gb.head, g.beads[j + 1 :])
            for (u, v), coeff in piece.items():
                head = path_concat(g1, u)
                left = path_concat(head, f2) if head is not None else None
                tail = path_concat(f1, v)
                right = path_concat(tail, g2) if tail is not None else None
                if left is not None and right is not None:
                    out.append(((left, right), coeff))
    return out


def _check_base(element: NCPoly) -> None:
    for path, _ in element.items():
        if any(bead.is_star for bead in path.beads):
            raise InputFormatError("Double brackets are evaluated on the base path algebra only")


def double_bracket_of_pair(P: PolyField, a: NCPoly, b: NCPoly) -> TensorElem:
    """The double Poisson bracket <<a, b>>_P, extended from arrows by the Leibniz rules."""
    if not (P.quiver == a.quiver == b.quiver):
        raise MixedQuiverError("Tensor and arguments live over different quivers")
    _check_base(a)
    _check_base(b)
    table = generator_brackets(P)
    out = []
    for f, fc in a.items():
        for g, gc in b.items():
            for key, coeff in _bracket_paths(table, f, g):
                out.append((key, fc * gc * coeff))
    return TensorElem(P.quiver, out)


@dataclass
class PoissonCheck:
    is_poisson: bool
    obstruction: PolyField

    def to_dict(self) -> Dict[str, Any]:
        return {"is_poisson": self.is_poisson, "obstruction": self.obstruction.to_terms()}


def is_poisson_tensor(P: PolyField) -> PoissonCheck:
    """{P, P} = 0; on failure the nonzero bracket is the witness."""
    _require_tensor(P)
    obstruction = kontsevich_bracket(P, P)
    if obstruction:
        logger.info(f"Tensor is not Poisson: obstruction has {len(obstruction)} terms")
    return PoissonCheck(is_poisson=not obstruction, obstruction=obstruction)


def evaluate_vector_field(v: PolyField, f: NCPoly) -> NCPoly:
    """Act by a star-degree 1 necklace combination as a derivation of the path algebra.

    The necklace ``*c U`` replaces each occurrence of the arrow c in f by U.
    """
    if v.quiver != f.quiver:
        raise MixedQuiverError("Vector field and polynomial live over different quivers")
    if v and v.star_degrees() != [1]:
        raise NonHomogeneousError(f"Expected star degree 1, found {v.star_degrees()}")
    out = []
    for necklace, coeff in v.items():
        word = necklace.word
        i = next(k for k, bead in enumerate(word) if bead.is_star)
        star = word[i]
        replacement = Path(star.head, word[i + 1 :] + word[:i])
        for path, pc in f.items():
            for j, bead in enumerate(path.beads):
                if bead.is_star or bead.arrow != star.arrow:
                    continue
                prefix = Path(path.vertex, path.beads[:j])
                suffix = Path(bead.head, path.beads[j + 1 :])
                middle = path_concat(prefix, replacement)
                joined = path_concat(middle, suffix) if middle is not None else None
                if joined is not None:
                    out.append((joined, coeff * pc))
    return NCPoly(f.quiver, out)


def is_double_antisymmetric(P: PolyField, a: NCPoly, b: NCPoly) -> bool:
    """<<a, b>> = -<<b, a>>° (the flip of the reversed bracket)."""
    forward = double_bracket_of_pair(P, a, b)
    backward = double_bracket_of_pair(P, b, a)
    flipped = TensorElem(P.quiver, [((r, l), c) for (l, r), c in backward.items()])
    return forward == -flipped


class TripleTensor(FormalSum[Tuple[Path, Path, Path]]):
    """Element of the third tensor power of the path algebra."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: Tuple[Path, Path, Path]) -> Any:
        return tuple(path.sort_key for path in key)

    def format_key(self, key: Tuple[Path, Path, Path]) -> str:
        return "(" + " (x) ".join(format_path(path, self.quiver) for path in key) + ")"

    def cyclic(self, times: int = 1) -> "TripleTensor":
        """Apply u⊗v⊗w -> w⊗u⊗v ``times`` times."""
        out = []
        for key, coeff in self.items():
            for _ in range(times % 3):
                key = (key[2], key[0], key[1])
            out.append((key, coeff))
        return TripleTensor(self.quiver, out)


def _left_bracket(table: GeneratorTable, a: NCPoly, t: TensorElem) -> TripleTensor:
    """<<a, t'⊗t''>>_L = <<a, t'>>⊗t''."""
    out = []
    for f, fc in a.items():
        for (t1, t2), tc in t.items():
            for (u, v), coeff in _bracket_paths(table, f, t1):
                out.append(((u, v, t2), fc * tc * coeff))
    return TripleTensor(a.quiver, out)


def double_jacobiator(P: PolyField, a: NCPoly, b: NCPoly, c: NCPoly) -> TripleTensor:
    """<<a,<<b,c>>>>_L + τ<<b,<<c,a>>>>_L + τ²<<c,<<a,b>>>>_L; zero for double Poisson brackets."""
    for element in (a, b, c):
        _check_base(element)
    table = generator_brackets(P)
    first = _left_bracket(table, a, double_bracket_of_pair(P, b, c))
    second = _left_bracket(table, b, double_bracket_of_pair(P, c, a)).cyclic(1)
    third = _left_bracket(table, c, double_bracket_of_pair(P, a, b)).cyclic(2)
    return first + second + third
