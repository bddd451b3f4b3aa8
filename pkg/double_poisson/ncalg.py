"""
Exact noncommutative polynomial arithmetic on the double quiver.

Formal sums of paths (NCPoly), of ordered path pairs (TensorElem, Sweedler sums
u'⊗u''), double derivations d/da, and the identities built on them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from numbers import Rational
from typing import (
    Any,
    Callable,
    Dict,
    Generic,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from sympy import Add, Mul, Symbol, expand
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .exceptions import (
    InputFormatError,
    MixedQuiverError,
    NotClosedError,
    QuiverError,
    UnknownArrowError,
)
from .quiver import STAR_PREFIX, Bead, Quiver

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction, str]
K = TypeVar("K", bound=Hashable)
S = TypeVar("S", bound="FormalSum[Any]")


def to_fraction(value: Any) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputFormatError(f"Boolean is not a coefficient: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"Invalid rational coefficient {value!r}") from exc
    raise InputFormatError(f"Unsupported coefficient type {type(value).__name__}")


def format_fraction(value: Fraction) -> str:
    return str(value)


class FormalSum(Generic[K]):
    """Finite exact-rational linear combination over a quiver.

    Zero coefficients are never stored; the empty sum is zero.
    """

    __slots__ = ("quiver", "_terms")

    def __init__(
        self,
        quiver: Quiver,
        terms: Union[Mapping[K, Any], Iterable[Tuple[K, Any]]] = (),
    ) -> None:
        self.quiver = quiver
        accumulated: Dict[K, Fraction] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in pairs:
            value = to_fraction(coeff)
            if value:
                accumulated[key] = accumulated.get(key, Fraction(0)) + value
        self._terms: Dict[K, Fraction] = {k: v for k, v in accumulated.items() if v}

    @staticmethod
    def sort_key(key: Any) -> Any:
        raise NotImplementedError

    @classmethod
    def zero(cls: type[S], quiver: Quiver) -> S:
        return cls(quiver)

    def items(self) -> List[Tuple[K, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: self.sort_key(item[0]))

    def keys(self) -> List[K]:
        return [key for key, _ in self.items()]

    def coefficient(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Tuple[K, Fraction]]:
        return iter(self.items())

    def _check_compatible(self, other: Any) -> None:
        if type(other) is not type(self):
            raise TypeError(f"Cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.quiver != self.quiver:
            raise MixedQuiverError("Operands live over different quivers")

    def _new(self: S, terms: Iterable[Tuple[K, Any]]) -> S:
        return type(self)(self.quiver, terms)

    def __add__(self: S, other: S) -> S:
        self._check_compatible(other)
        return self._new(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self: S, other: S) -> S:
        self._check_compatible(other)
        return self._new(list(self._terms.items()) + [(k, -v) for k, v in other._terms.items()])

    def __neg__(self: S) -> S:
        return self._new((k, -v) for k, v in self._terms.items())

    def scale(self: S, factor: Coefficient) -> S:
        value = to_fraction(factor)
        return self._new((k, v * value) for k, v in self._terms.items())

    def __mul__(self: S, factor: Any) -> S:
        return self.scale(factor)

    def __rmul__(self: S, factor: Any) -> S:
        return self.scale(factor)

    def map_keys(self: S, fn: Callable[[K], Optional[Tuple[K, int]]]) -> S:
        """Apply ``fn`` to every key; ``fn`` returns (new key, sign) or None for zero."""
        out: List[Tuple[K, Fraction]] = []
        for key, coeff in self._terms.items():
            mapped = fn(key)
            if mapped is not None:
                out.append((mapped[0], coeff * mapped[1]))
        return self._new(out)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.quiver == other.quiver and self._terms == other._terms  # type: ignore[attr-defined]

    __hash__ = None  # type: ignore[assignment]

    def format_key(self, key: K) -> str:
        return str(key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, coeff in self.items():
            word = self.format_key(key)
            if coeff == 1:
                parts.append(word)
            elif coeff == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{coeff}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


@dataclass(frozen=True)
class Path:
    """A path in the double quiver; the length-0 path records its vertex."""

    vertex: str
    beads: Tuple[Bead, ...] = ()

    @classmethod
    def of(cls, beads: Sequence[Bead], vertex: Optional[str] = None) -> "Path":
        beads = tuple(beads)
        if not beads:
            if vertex is None:
                raise InputFormatError("A length-0 path needs its vertex")
            return cls(vertex, ())
        for left, right in zip(beads, beads[1:]):
            if left.head != right.tail:
                raise NotClosedError(f"Beads {left.label!r} and {right.label!r} are not composable")
        return cls(beads[0].tail, beads)

    @property
    def end(self) -> str:
        return self.beads[-1].head if self.beads else self.vertex

    @property
    def length(self) -> int:
        return len(self.beads)

    @property
    def degree(self) -> int:
        return sum(bead.degree for bead in self.beads)

    @property
    def is_closed(self) -> bool:
        return self.end == self.vertex

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(bead.label for bead in self.beads)

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return (len(self.beads), tuple(bead.rank for bead in self.beads), self.vertex)

    def count(self, bead: Bead) -> int:
        return sum(1 for b in self.beads if b.rank == bead.rank)


def path_concat(p: Path, q: Path) -> Optional[Path]:
    """Concatenate two paths, or None when they do not compose."""
    if p.end != q.vertex:
        return None
    if not p.beads:
        return q
    if not q.beads:
        return p
    return Path(p.vertex, p.beads + q.beads)


def format_labels(labels: Sequence[str]) -> str:
    """``x^2*y`` for plain words; space-separated labels once star beads appear."""
    if any(label.startswith(STAR_PREFIX) for label in labels):
        return " ".join(labels)
    parts = []
    for label, run in groupby(labels):
        power = len(list(run))
        parts.append(label if power == 1 else f"{label}^{power}")
    return "*".join(parts)


def format_path(path: Path, quiver: Quiver) -> str:
    if not path.beads:
        return "1" if quiver.is_single_vertex else f"e_{path.vertex}"
    return format_labels(path.labels)


class NCPoly(FormalSum[Path]):
    """Element of the path algebra of the double quiver."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: Path) -> Any:
        return key.sort_key

    def format_key(self, key: Path) -> str:
        return format_path(key, self.quiver)

    @classmethod
    def idempotent(cls, quiver: Quiver, vertex: str) -> "NCPoly":
        if vertex not in quiver.vertices:
            raise QuiverError(f"Unknown vertex {vertex!r}")
        return cls(quiver, [(Path(vertex), 1)])

    @classmethod
    def constant(cls, quiver: Quiver, value: Coefficient = 1) -> "NCPoly":
        """``value`` times the unit, the sum of all vertex idempotents."""
        return cls(quiver, [(Path(vertex), value) for vertex in quiver.vertices])

    @classmethod
    def generator(cls, quiver: Quiver, label: str) -> "NCPoly":
        return cls(quiver, [(Path.of((quiver.bead(label),)), 1)])

    @classmethod
    def monomial(cls, quiver: Quiver, labels: Sequence[str], coeff: Coefficient = 1) -> "NCPoly":
        """A single path; a non-composable word is the zero element."""
        if not labels:
            return cls.constant(quiver, coeff)
        beads = quiver.words(labels)
        if any(left.head != right.tail for left, right in zip(beads, beads[1:])):
            return cls(quiver)
        return cls(quiver, [(Path.of(beads), coeff)])

    def __mul__(self, other: Any) -> "NCPoly":
        if isinstance(other, NCPoly):
            return mul(self, other)
        return self.scale(other)

    def to_terms(self) -> List[Dict[str, Any]]:
        return [
            {"coeff": format_fraction(coeff), "word": list(path.labels), "vertex": path.vertex}
            for path, coeff in self.items()
        ]


class TensorElem(FormalSum[Tuple[Path, Path]]):
    """Sweedler sum Σ c u'⊗u'' in the tensor square of the path algebra."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: Tuple[Path, Path]) -> Any:
        return (key[0].sort_key, key[1].sort_key)

    def format_key(self, key: Tuple[Path, Path]) -> str:
        left, right = key
        return f"({format_path(left, self.quiver)} (x) {format_path(right, self.quiver)})"

    @classmethod
    def pure(cls, left: NCPoly, right: NCPoly) -> "TensorElem":
        if left.quiver != right.quiver:
            raise MixedQuiverError("Tensor factors live over different quivers")
        return cls(
            left.quiver,
            [((p, q), a * b) for p, a in left.items() for q, b in right.items()],
        )

    def outer(self, left: Path, right: Path) -> "TensorElem":
        """Outer bimodule action: left·(u⊗v)·right = left u ⊗ v right."""
        out = []
        for (u, v), coeff in self._terms.items():
            lu = path_concat(left, u)
            vr = path_concat(v, right)
            if lu is not None and vr is not None:
                out.append(((lu, vr), coeff))
        return self._new(out)

    def inner(self, left: Path, right: Path) -> "TensorElem":
        """Inner bimodule action: left·(u⊗v)·right = u right ⊗ left v."""
        out = []
        for (u, v), coeff in self._terms.items():
            ur = path_concat(u, right)
            lv = path_concat(left, v)
            if ur is not None and lv is not None:
                out.append(((ur, lv), coeff))
        return self._new(out)

    def to_terms(self) -> List[Dict[str, Any]]:
        return [
            {
                "coeff": format_fraction(coeff),
                "left": list(left.labels),
                "right": list(right.labels),
            }
            for (left, right), coeff in self.items()
        ]


def mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Bilinear extension of path concatenation."""
    if p.quiver != q.quiver:
        raise MixedQuiverError("Cannot multiply elements of different path algebras")
    out = []
    for left, a in p.items():
        for right, b in q.items():
            joined = path_concat(left, right)
            if joined is not None:
                out.append((joined, a * b))
    return NCPoly(p.quiver, out)


def double_deriv(a: str, f: NCPoly) -> TensorElem:
    """The double derivation d/da (outer bimodule Leibniz rule)."""
    if a.startswith(STAR_PREFIX):
        raise UnknownArrowError(f"Double derivations are taken along plain arrows, got {a!r}")
    target = f.quiver.plain_bead(a)
    out = []
    for path, coeff in f.items():
        for index, bead in enumerate(path.beads):
            if bead.rank != target.rank:
                continue
            left = Path(path.vertex, path.beads[:index])
            right = Path(bead.head, path.beads[index + 1 :])
            out.append(((left, right), coeff))
    return TensorElem(f.quiver, out)


def tensor_mu(t: TensorElem) -> NCPoly:
    """Multiplication map u'⊗u'' -> u'u''."""
    out = []
    for (left, right), coeff in t.items():
        joined = path_concat(left, right)
        if joined is not None:
            out.append((joined, coeff))
    return NCPoly(t.quiver, out)


def tensor_flip(t: TensorElem) -> TensorElem:
    return TensorElem(t.quiver, [((right, left), coeff) for (left, right), coeff in t.items()])


def euler_apply(a: str, f: NCPoly) -> NCPoly:
    """μ∘(a d/da): inner left multiplication by ``a`` then μ; equals deg_a(p)·p."""
    bead = f.quiver.plain_bead(a)
    generator = Path.of((bead,))
    derived = double_deriv(a, f)
    out = []
    for (left, right), coeff in derived.items():
        # a·(u⊗v) = u ⊗ a v for the inner structure
        av = path_concat(generator, right)
        if av is None:
            continue
        joined = path_concat(left, av)
        if joined is not None:
            out.append((joined, coeff))
    return NCPoly(f.quiver, out)


def gauge_apply(f: NCPoly) -> TensorElem:
    """Σ_i ((df/dx_i)' x_i ⊗ (df/dx_i)'' − (df/dx_i)' ⊗ x_i (df/dx_i)'').

    Equals f⊗1 − 1⊗f on free algebras.
    """
    if not f.quiver.is_single_vertex:
        raise QuiverError("The gauge identity is only provided for one-vertex quivers")
    out: List[Tuple[Tuple[Path, Path], Fraction]] = []
    for name in f.quiver.arrow_names:
        generator = Path.of((f.quiver.plain_bead(name),))
        for (left, right), coeff in double_deriv(name, f).items():
            left_x = path_concat(left, generator)
            x_right = path_concat(generator, right)
            if left_x is not None:
                out.append(((left_x, right), coeff))
            if x_right is not None:
                out.append(((left, x_right), -coeff))
    return TensorElem(f.quiver, out)


_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_ncpoly(quiver: Quiver, text: str) -> NCPoly:
    """Parse ``"x^2*y - 1/2*y*x + 3"``; ``*`` is juxtaposition, ``^`` a power."""
    names = quiver.arrow_names
    symbols = {name: Symbol(name, commutative=False) for name in names}
    try:
        expr = expand(parse_expr(text, local_dict=symbols, transformations=_TRANSFORMATIONS))
    except Exception as exc:  # sympy raises a variety of tokenizer/syntax errors
        raise InputFormatError(f"Cannot parse polynomial {text!r}: {exc}") from exc

    result = NCPoly(quiver)
    for term in Add.make_args(expr):
        if term == 0:
            continue
        commutative, noncommutative = term.args_cnc()
        coeff = Mul(*commutative)
        if not coeff.is_Rational:
            raise InputFormatError(f"Term {term} of {text!r} has a non-rational coefficient or an unknown symbol")
        labels: List[str] = []
        for factor in noncommutative:
            base, exponent = factor.as_base_exp()
            if not isinstance(base, Symbol) or base.name not in symbols:
                raise InputFormatError(f"Unknown factor {factor} in {text!r}")
            if not exponent.is_Integer or exponent < 1:
                raise InputFormatError(f"Exponent of {base} in {text!r} must be a positive integer")
            labels.extend([base.name] * int(exponent))
        result = result + NCPoly.monomial(quiver, labels, Fraction(int(coeff.p), int(coeff.q)))
    return result
