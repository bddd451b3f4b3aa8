"""
Classical Poisson cohomology of the plane and the trace map at representation
dimension one.

A bivector ψ·∂x∧∂y on C[x, y] has differentials

    d0(h)      = (-ψ h_y, ψ h_x)
    d1(f, g)   = ψ (f_x + g_y) - f ψ_x - g ψ_y

and for homogeneous ψ of degree m they shift polynomial degree by m - 1, so the
cohomology is computed degree by degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Rational, symbols
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ

from .bracket import double_bracket_of_pair
from .config import Settings, resolve_settings
from .exceptions import InputFormatError, NonHomogeneousError, QuiverError
from .linalg import RatMatrix, in_span, nullspace_basis, rank
from .ncalg import NCPoly, tensor_mu
from .necklace import PolyField

logger = logging.getLogger(__name__)

X, Y = symbols("x y")
GENS = (X, Y)
PLANE_ARROWS = ("x", "y")


def comm_poly(value: Any = 0) -> Poly:
    """Build a polynomial in x, y over QQ from an expression, a number or a string."""
    if isinstance(value, Poly):
        return Poly(value.as_expr(), *GENS, domain=QQ)
    if isinstance(value, str):
        try:
            expr = parse_expr(
                value,
                local_dict={"x": X, "y": Y},
                transformations=standard_transformations + (convert_xor,),
            )
        except Exception as exc:  # sympy raises a variety of tokenizer/syntax errors
            raise InputFormatError(f"Cannot parse polynomial {value!r}: {exc}") from exc
        value = expr
    try:
        poly = Poly(value, *GENS, domain=QQ)
    except Exception as exc:
        raise InputFormatError(f"{value!r} is not a polynomial in x, y with rational coefficients") from exc
    return poly


def coefficients(p: Poly) -> Dict[Tuple[int, int], Fraction]:
    """Mapping (deg_x, deg_y) -> nonzero rational coefficient."""
    out = {}
    for monom, coeff in p.terms():
        if coeff:
            out[(int(monom[0]), int(monom[1]))] = Fraction(int(coeff.p), int(coeff.q))
    return out


def degree(p: Poly) -> Optional[int]:
    """Total degree of a homogeneous polynomial (None for zero)."""
    if p.is_zero:
        return None
    if not p.is_homogeneous:
        raise NonHomogeneousError(f"{p.as_expr()} is not homogeneous")
    return int(p.total_degree())


@dataclass
class PlaneField:
    """Polyvector field on the plane: h, f∂x + g∂y, or ψ∂x∧∂y by grade."""

    grade: int
    components: Tuple[Poly, ...] = ()

    def __post_init__(self) -> None:
        expected = {0: 1, 1: 2, 2: 1}.get(self.grade, 0)
        if self.grade < 0:
            raise InputFormatError("Polyvector grades are non-negative")
        if not self.components:
            self.components = tuple(comm_poly(0) for _ in range(expected))
        else:
            self.components = tuple(comm_poly(c) for c in self.components)
        if len(self.components) != expected:
            raise InputFormatError(f"Grade {self.grade} needs {expected} components")

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: "PlaneField") -> "PlaneField":
        if other.grade != self.grade:
            raise InputFormatError("Cannot add polyvector fields of different grades")
        return PlaneField(self.grade, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "PlaneField":
        return PlaneField(self.grade, tuple(-c for c in self.components))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneField):
            return NotImplemented
        return self.grade == other.grade and all(
            (a - b).is_zero for a, b in zip(self.components, other.components)
        )

    def degree(self) -> Optional[int]:
        degrees = {degree(c) for c in self.components if not c.is_zero}
        if len(degrees) > 1:
            raise NonHomogeneousError(f"Components of mixed degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def to_dict(self) -> Dict[str, Any]:
        return {"grade": self.grade, "components": [str(c.as_expr()) for c in self.components]}


def d0_pi(psi: Poly, h: Poly) -> PlaneField:
    psi, h = comm_poly(psi), comm_poly(h)
    return PlaneField(1, (-psi * h.diff(Y), psi * h.diff(X)))


def d1_pi(psi: Poly, v: PlaneField) -> PlaneField:
    if v.grade != 1:
        raise InputFormatError("d1 acts on grade-1 fields")
    psi = comm_poly(psi)
    f, g = v.components
    value = psi * (f.diff(X) + g.diff(Y)) - f * psi.diff(X) - g * psi.diff(Y)
    return PlaneField(2, (value,))


def monomials(d: int) -> List[Tuple[int, int]]:
    """Exponents of the degree-d monomials, x^d first."""
    if d < 0:
        return []
    return [(d - i, i) for i in range(d + 1)]


def _monomial(exponents: Tuple[int, int]) -> Poly:
    return comm_poly(X ** exponents[0] * Y ** exponents[1])


def _grade1_basis(d: int) -> List[PlaneField]:
    zero = comm_poly(0)
    basis = [PlaneField(1, (_monomial(e), zero)) for e in monomials(d)]
    basis += [PlaneField(1, (zero, _monomial(e))) for e in monomials(d)]
    return basis


def _coordinates(field_: PlaneField, d: int) -> Dict[int, Fraction]:
    index = {e: i for i, e in enumerate(monomials(d))}
    out: Dict[int, Fraction] = {}
    for slot, component in enumerate(field_.components):
        for exponents, coeff in coefficients(component).items():
            if exponents not in index:
                raise NonHomogeneousError(f"Term of degree {sum(exponents)} outside degree {d}")
            out[slot * len(index) + index[exponents]] = coeff
    return out


def _psi_degree(psi: Poly) -> int:
    m = degree(psi)
    return 1 if m is None else m


def d0_matrix(psi: Poly, e: int) -> RatMatrix:
    """d0 from degree-e functions to degree-(e + m - 1) vector fields."""
    target = e + _psi_degree(psi) - 1
    rows = 2 * len(monomials(target))
    if not rows:
        return RatMatrix.zeros(0, len(monomials(e)))
    return RatMatrix.from_columns(rows, [_coordinates(d0_pi(psi, _monomial(x)), target) for x in monomials(e)])


def d1_matrix(psi: Poly, d: int) -> RatMatrix:
    target = d + _psi_degree(psi) - 1
    rows = len(monomials(target))
    if not rows:
        return RatMatrix.zeros(0, 2 * len(monomials(d)))
    return RatMatrix.from_columns(rows, [_coordinates(d1_pi(psi, v), target) for v in _grade1_basis(d)])


@dataclass
class ClassicalReport:
    psi: str
    rows: List[Dict[str, int]] = field(default_factory=list)

    def totals(self) -> Dict[str, int]:
        return {key: sum(row[key] for row in self.rows) for key in ("h0", "h1", "h2")}

    def column(self, key: str) -> List[int]:
        return [row[key] for row in self.rows]

    def to_dict(self) -> Dict[str, Any]:
        return {"psi": self.psi, "degrees": self.rows, "totals": self.totals()}


def classical_cohomology(
    psi: Poly, max_degree: int, settings: Optional[Settings] = None
) -> ClassicalReport:
    """Dimensions of H^0, H^1, H^2 of ψ∂x∧∂y in each polynomial degree 0..max_degree."""
    settings = resolve_settings(settings)
    settings.check_cap("max_degree", max_degree, "polynomial degree")
    psi = comm_poly(psi)
    m = _psi_degree(psi)
    report = ClassicalReport(str(psi.as_expr()))
    for d in range(max_degree + 1):
        h0 = len(monomials(d)) - rank(d0_matrix(psi, d))
        source = d - m + 1
        image1 = rank(d0_matrix(psi, source)) if source >= 0 else 0
        kernel1 = 2 * len(monomials(d)) - rank(d1_matrix(psi, d))
        image2 = rank(d1_matrix(psi, source)) if source >= 0 else 0
        report.rows.append(
            {"degree": d, "h0": h0, "h1": kernel1 - image1, "h2": len(monomials(d)) - image2}
        )
    logger.info(f"Classical cohomology of {report.psi}: totals {report.totals()}")
    return report


def classical_coboundaries(psi: Poly, d: int) -> RatMatrix:
    """Columns spanning d0(degree d - m + 1) inside degree-d vector fields."""
    source = d - _psi_degree(psi) + 1
    if source < 0:
        return RatMatrix.zeros(2 * len(monomials(d)), 0)
    return d0_matrix(psi, source)


def is_cohomologous_to_span(psi: Poly, target: PlaneField, generators: Sequence[PlaneField]) -> bool:
    """target ∈ span(generators of the same degree) + d0(functions), degree-wise exact."""
    d = target.degree()
    if d is None:
        return True
    same_degree = [g for g in generators if not g.is_zero() and g.degree() == d]
    rows = 2 * len(monomials(d))
    span = classical_coboundaries(psi, d).hstack(
        RatMatrix.from_columns(rows, [_coordinates(g, d) for g in same_degree])
    )
    vector = [Fraction(0)] * rows
    for i, value in _coordinates(target, d).items():
        vector[i] = value
    return in_span(vector, span)


def grade1_cocycles(psi: Poly, d: int) -> List[PlaneField]:
    """Kernel of d1 in degree d as explicit vector fields."""
    basis = _grade1_basis(d)
    out = []
    for vector in nullspace_basis(d1_matrix(psi, d)):
        total = PlaneField(1)
        for coeff, element in zip(vector, basis):
            if coeff:
                total = total + PlaneField(1, tuple(c * Rational(coeff.numerator, coeff.denominator) for c in element.components))
        out.append(total)
    return out


def _require_plane(quiver_names: Sequence[str], single_vertex: bool) -> None:
    if not single_vertex or tuple(quiver_names) != PLANE_ARROWS:
        raise QuiverError("The plane trace is defined on the one-vertex quiver with loops x, y")


def abelianize(f: NCPoly) -> Poly:
    """Image of a path-algebra element in C[x, y] (representations of dimension one)."""
    _require_plane(f.quiver.arrow_names, f.quiver.is_single_vertex)
    total = comm_poly(0)
    for path, coeff in f.items():
        if any(bead.is_star for bead in path.beads):
            raise InputFormatError("Only plain paths abelianize to functions")
        term = comm_poly(Rational(coeff.numerator, coeff.denominator))
        for bead in path.beads:
            term = term * comm_poly(X if bead.arrow == "x" else Y)
        total = total + term
    return total


def _wedge_sign(star_arrows: Sequence[str]) -> Tuple[int, Tuple[str, ...]]:
    """Sort the star factors into (x, y) order; repeated factors give sign 0."""
    if len(set(star_arrows)) != len(star_arrows):
        return 0, ()
    order = sorted(range(len(star_arrows)), key=lambda i: PLANE_ARROWS.index(star_arrows[i]))
    inversions = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return (-1 if inversions % 2 else 1), tuple(star_arrows[i] for i in order)


def trace_map(v: PolyField, grade: Optional[int] = None) -> PlaneField:
    """Abelianize plain beads and wedge the star beads in word order (n = 1)."""
    _require_plane(v.quiver.arrow_names, v.quiver.is_single_vertex)
    degrees = v.star_degrees()
    if len(degrees) > 1:
        raise NonHomogeneousError(f"Trace of a field with mixed star degrees {degrees}")
    grade = degrees[0] if degrees else (grade or 0)
    if grade > 2:
        return PlaneField(grade)
    components = [comm_poly(0) for _ in range({0: 1, 1: 2, 2: 1}[grade])]
    for necklace, coeff in v.items():
        stars = [bead.arrow for bead in necklace.word if bead.is_star]
        sign, ordered = _wedge_sign(stars)
        if not sign:
            continue
        monomial = comm_poly(Rational(coeff.numerator * sign, coeff.denominator))
        for bead in necklace.word:
            if not bead.is_star:
                monomial = monomial * comm_poly(X if bead.arrow == "x" else Y)
        slot = 1 if ordered == ("y",) else 0
        components[slot] = components[slot] + monomial
    return PlaneField(grade, tuple(components))


def rep1_bracket(P: PolyField, f: NCPoly, g: NCPoly) -> Poly:
    """Poisson bracket on C[x, y] induced by P on one-dimensional representations."""
    return abelianize(tensor_mu(double_bracket_of_pair(P, f, g)))


def trace_commuting_sign(stars: int) -> int:
    """Sign s with tr∘d_P = s·d_tr(P)∘tr in star degree ``stars``."""
    return -1 if stars == 0 else 1
