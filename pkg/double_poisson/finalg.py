"""
Finite-dimensional algebras and linear double Poisson tensors.

Structure constants c[i][j][k] (coefficient of x_k in x_i·x_j) correspond to the
linear tensor P = Σ c[i][j][k]·x_k *x_i *x_j on the free algebra C<x_1..x_n>.
The tensor is Poisson exactly when the product is associative, and its weight-1
cohomology is the Hochschild cohomology of the algebra.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .bracket import differential_dP, is_poisson_tensor
from .cohomology import cohomology_summary
from .config import Settings, resolve_settings
from .exceptions import InputFormatError, NonLinearTensorError
from .linalg import RatMatrix, determinant, inverse, rank
from .ncalg import to_fraction
from .necklace import Necklace, PolyField, enumerate_basis
from .quiver import STAR_PREFIX, Quiver, free_quiver

logger = logging.getLogger(__name__)

Cube = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
Chain = Dict[Tuple[int, ...], Fraction]

DEFAULT_NAMES = ("x", "y", "z")


def _zero_cube(n: int) -> List[List[List[Fraction]]]:
    return [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]


def _freeze(cube: Sequence[Sequence[Sequence[Any]]]) -> Cube:
    return tuple(tuple(tuple(to_fraction(v) for v in row) for row in plane) for plane in cube)


@dataclass(frozen=True)
class StructureConstants:
    """Multiplication table x_i·x_j = Σ_k c[i][j][k]·x_k."""

    n: int
    c: Cube
    names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.names:
            names = DEFAULT_NAMES[: self.n] if self.n <= len(DEFAULT_NAMES) else tuple(f"x{i + 1}" for i in range(self.n))
            object.__setattr__(self, "names", tuple(names))
        if len(self.names) != self.n:
            raise InputFormatError(f"{self.n} basis names expected, got {len(self.names)}")
        if len(self.c) != self.n or any(len(p) != self.n or any(len(r) != self.n for r in p) for p in self.c):
            raise InputFormatError(f"Structure constants must be an {self.n}x{self.n}x{self.n} array")

    @classmethod
    def from_array(cls, cube: Sequence[Sequence[Sequence[Any]]], names: Sequence[str] = ()) -> "StructureConstants":
        return cls(len(cube), _freeze(cube), tuple(names))

    @classmethod
    def zero(cls, n: int, names: Sequence[str] = ()) -> "StructureConstants":
        return cls(n, _freeze(_zero_cube(n)), tuple(names))

    @classmethod
    def from_products(
        cls, n: int, products: Sequence[Mapping[str, Any]], names: Sequence[str] = ()
    ) -> "StructureConstants":
        """``products``: ``[{"i": "x", "j": "y", "out": {"y": "1"}}, ...]``; missing products are 0."""
        base = cls.zero(n, names)
        position = {name: index for index, name in enumerate(base.names)}
        cube = _zero_cube(n)
        for entry in products:
            try:
                i, j = position[entry["i"]], position[entry["j"]]
                for name, value in entry.get("out", {}).items():
                    cube[i][j][position[name]] += to_fraction(value)
            except KeyError as exc:
                raise InputFormatError(f"Unknown basis element in product {entry!r}: {exc}") from exc
        return cls(n, _freeze(cube), base.names)

    def multiply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, value in enumerate(self.c[i][j]):
                    if value:
                        out[k] += a * b * value
        return out

    def basis_vector(self, i: int) -> List[Fraction]:
        return [Fraction(1 if k == i else 0) for k in range(self.n)]

    def is_zero(self) -> bool:
        return not any(v for plane in self.c for row in plane for v in row)

    def to_dict(self) -> Dict[str, Any]:
        products = []
        for i, j in product(range(self.n), repeat=2):
            out = {self.names[k]: str(v) for k, v in enumerate(self.c[i][j]) if v}
            if out:
                products.append({"i": self.names[i], "j": self.names[j], "out": out})
        return {"n": self.n, "names": list(self.names), "products": products}


def _quiver_for(c: StructureConstants, quiver: Optional[Quiver]) -> Quiver:
    q = quiver if quiver is not None else free_quiver(c.names)
    if not q.is_single_vertex or len(q.arrows) != c.n:
        raise InputFormatError(f"Structure constants of dimension {c.n} need a one-vertex quiver with {c.n} loops")
    return q


def tensor_from_constants(c: StructureConstants, quiver: Optional[Quiver] = None) -> PolyField:
    """P = Σ c[i][j][k]·x_k *x_i *x_j."""
    q = _quiver_for(c, quiver)
    names = q.arrow_names
    terms = []
    for i, j, k in product(range(c.n), repeat=3):
        value = c.c[i][j][k]
        if value:
            terms.append((value, (names[k], f"{STAR_PREFIX}{names[i]}", f"{STAR_PREFIX}{names[j]}")))
    return PolyField.from_words(q, terms)


def constants_from_tensor(P: PolyField) -> StructureConstants:
    """Inverse of ``tensor_from_constants`` on linear one-vertex tensors."""
    q = P.quiver
    if not q.is_single_vertex:
        raise NonLinearTensorError("Linear tensors are read on one-vertex quivers only")
    names = q.arrow_names
    position = {name: index for index, name in enumerate(names)}
    n = len(names)
    cube = _zero_cube(n)
    for necklace, coeff in P.items():
        if necklace.bidegree != (2, 1):
            raise NonLinearTensorError(
                f"Necklace {necklace.labels} has bidegree {necklace.bidegree}; linear tensors have (2, 1)"
            )
        word = necklace.word
        start = next(index for index, bead in enumerate(word) if not bead.is_star)
        # rotating the plain bead to the front costs no sign
        plain, first, second = (word[(start + offset) % 3] for offset in range(3))
        cube[position[first.arrow]][position[second.arrow]][position[plain.arrow]] += coeff
    return StructureConstants(n, _freeze(cube), names)


@dataclass
class AssociativityCheck:
    is_associative: bool
    witness: Optional[Tuple[str, str, str]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"is_associative": self.is_associative, "witness": list(self.witness) if self.witness else None}


def is_associative(c: StructureConstants) -> AssociativityCheck:
    for i, j, k in product(range(c.n), repeat=3):
        xi, xj, xk = c.basis_vector(i), c.basis_vector(j), c.basis_vector(k)
        if c.multiply(c.multiply(xi, xj), xk) != c.multiply(xi, c.multiply(xj, xk)):
            return AssociativityCheck(False, (c.names[i], c.names[j], c.names[k]))
    return AssociativityCheck(True)


@dataclass
class CatalogueEntry:
    name: str
    constants: StructureConstants
    tensor: PolyField

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "constants": self.constants.to_dict(),
            "tensor": self.tensor.to_terms(),
        }


def _table(entries: Mapping[Tuple[str, str], Mapping[str, int]]) -> StructureConstants:
    products = [{"i": i, "j": j, "out": out} for (i, j), out in entries.items()]
    return StructureConstants.from_products(2, products, ("x", "y"))


# the seven associative products on a two-dimensional space, up to isomorphism
CATALOGUE_TABLES: Tuple[Tuple[str, Mapping[Tuple[str, str], Mapping[str, int]]], ...] = (
    ("CxC", {("x", "x"): {"x": 1}, ("y", "y"): {"y": 1}}),
    ("CxCe2", {("x", "x"): {"x": 1}}),
    ("C+Ce2", {("x", "x"): {"x": 1}, ("x", "y"): {"y": 1}, ("y", "x"): {"y": 1}}),
    ("Ce+Ce2", {("x", "x"): {"y": 1}}),
    ("B2^1", {("x", "x"): {"x": 1}, ("x", "y"): {"y": 1}}),
    ("B2^2", {("x", "y"): {"x": 1}, ("y", "y"): {"y": 1}}),
    ("Ce2+Ce2", {}),
)


def catalogue_2dim() -> List[CatalogueEntry]:
    entries = []
    for name, table in CATALOGUE_TABLES:
        constants = _table(table)
        entries.append(CatalogueEntry(name, constants, tensor_from_constants(constants)))
    return entries


def catalogue_entry(name: str) -> CatalogueEntry:
    for entry in catalogue_2dim():
        if entry.name == name:
            return entry
    known = ", ".join(name for name, _ in CATALOGUE_TABLES)
    raise InputFormatError(f"Unknown catalogue algebra {name!r}; known: {known}")


def _chain_basis(n: int, i: int) -> List[Tuple[int, ...]]:
    """Index tuples (k_1..k_i, l) for x*_{k_1}⊗…⊗x*_{k_i}⊗x_l."""
    return list(product(range(n), repeat=i + 1))


def hochschild_d(c: StructureConstants, element: Mapping[Tuple[int, ...], Any]) -> Chain:
    """Bar-type Hochschild differential (A*)^{⊗i}⊗A -> (A*)^{⊗(i+1)}⊗A.

    On x*_{k_1}⊗…⊗x*_{k_i}⊗x_l:
      Σ c[s][l][t] x*_s⊗x*_{k_1}…⊗x_t
      + Σ_m (-1)^m Σ c[s][t][k_m] …⊗x*_s⊗x*_t⊗…⊗x_l   (m = 1..i)
      + (-1)^(i+1) Σ c[l][s][t] x*_{k_1}…⊗x*_s⊗x_t
    """
    out: Chain = {}

    def add(key: Tuple[int, ...], value: Fraction) -> None:
        out[key] = out.get(key, Fraction(0)) + value

    n = c.n
    for key, raw in element.items():
        coeff = to_fraction(raw)
        if not coeff:
            continue
        ks, l = key[:-1], key[-1]
        i = len(ks)
        for s, t in product(range(n), repeat=2):
            first = c.c[s][l][t]
            if first:
                add((s,) + ks + (t,), coeff * first)
            last = c.c[l][s][t]
            if last:
                add(ks + (s, t), coeff * last * (-1) ** (i + 1))
            for m, km in enumerate(ks, start=1):
                inner = c.c[s][t][km]
                if inner:
                    add(ks[: m - 1] + (s, t) + ks[m:] + (l,), coeff * inner * (-1) ** m)
    return {key: value for key, value in out.items() if value}


def hochschild_matrix(c: StructureConstants, i: int) -> RatMatrix:
    source = _chain_basis(c.n, i)
    target_index = {key: row for row, key in enumerate(_chain_basis(c.n, i + 1))}
    columns = [
        {target_index[key]: value for key, value in hochschild_d(c, {basis: 1}).items()}
        for basis in source
    ]
    return RatMatrix.from_columns(len(target_index), columns)


@dataclass
class HochschildReport:
    n: int
    degrees: List[Dict[str, int]] = field(default_factory=list)

    def dims(self) -> List[int]:
        return [row["dim_HH"] for row in self.degrees]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "degrees": self.degrees}


def hochschild_dims(
    c: StructureConstants, max_degree: int, settings: Optional[Settings] = None
) -> HochschildReport:
    settings = resolve_settings(settings)
    settings.check_cap("max_degree", max_degree, "Hochschild degree")
    settings.check_cap("max_chain_dim", c.n ** (max_degree + 2), "Hochschild cochain dimension")
    ranks = [rank(hochschild_matrix(c, i)) for i in range(max_degree + 1)]
    report = HochschildReport(c.n)
    for i in range(max_degree + 1):
        dim = c.n ** (i + 1)
        incoming = ranks[i - 1] if i else 0
        report.degrees.append(
            {"i": i, "dim_C": dim, "rank_d": ranks[i], "dim_HH": dim - ranks[i] - incoming}
        )
    logger.info(f"Hochschild dims up to degree {max_degree}: {report.dims()}")
    return report


def phi_chain(quiver: Quiver, key: Tuple[int, ...]) -> PolyField:
    """x*_{k_1}⊗…⊗x*_{k_i}⊗x_l -> necklace x_l *x_{k_1} … *x_{k_i}."""
    names = quiver.arrow_names
    labels = [names[key[-1]]] + [f"{STAR_PREFIX}{names[k]}" for k in key[:-1]]
    return PolyField.from_word(quiver, labels)


def phi_image(quiver: Quiver, chain: Mapping[Tuple[int, ...], Fraction]) -> PolyField:
    out: List[Tuple[Necklace, Fraction]] = []
    for key, coeff in chain.items():
        out.extend((necklace, coeff * value) for necklace, value in phi_chain(quiver, key).items())
    return PolyField(quiver, out)


@dataclass
class Weight1Row:
    i: int
    dim_HH: int
    dim_H: int
    dims_match: bool
    intertwines: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "dim_HH": self.dim_HH,
            "dim_H": self.dim_H,
            "dims_match": self.dims_match,
            "intertwines": self.intertwines,
        }


def compare_weight1(
    c: StructureConstants, max_degree: int, settings: Optional[Settings] = None
) -> List[Weight1Row]:
    """Compare HH^i(A) with the weight-1 double Poisson cohomology of its linear tensor."""
    settings = resolve_settings(settings)
    q = free_quiver(c.names)
    P = tensor_from_constants(c, q)
    hh = hochschild_dims(c, max_degree, settings).dims()
    reports = cohomology_summary(
        P,
        range(max_degree + 1),
        [1],
        settings.with_overrides(max_stars=max(settings.max_stars, max_degree)),
        representatives=False,
        check_poisson=False,
        weight=1,
    )
    rows = []
    for report in reports:
        i = report.k
        intertwines = all(
            differential_dP(P, phi_chain(q, key)) == phi_image(q, hochschild_d(c, {key: 1}))
            for key in _chain_basis(c.n, i)
        )
        rows.append(Weight1Row(i, hh[i], report.dim_H, hh[i] == report.dim_H, intertwines))
    return rows


def _tensor_power_basis(n: int, k: int) -> List[Tuple[int, ...]]:
    return list(product(range(n), repeat=k))


def phi0(quiver: Quiver, necklace: Necklace) -> Chain:
    """Cyclic symmetrisation of a plain necklace into A^{⊗k}."""
    position = {name: index for index, name in enumerate(quiver.arrow_names)}
    word = tuple(position[bead.arrow] for bead in necklace.word)
    out: Chain = {}
    for shift in range(len(word)):
        key = word[shift:] + word[:shift]
        out[key] = out.get(key, Fraction(0)) + 1
    return out


def phi1(quiver: Quiver, field_: PolyField) -> Chain:
    """*x_s U -> x*_s ⊗ U, with U read after the star bead (keys are (s,) + U)."""
    position = {name: index for index, name in enumerate(quiver.arrow_names)}
    out: Chain = {}
    for necklace, coeff in field_.items():
        word = necklace.word
        i = next(index for index, bead in enumerate(word) if bead.is_star)
        rest = word[i + 1 :] + word[:i]
        key = (position[word[i].arrow],) + tuple(position[bead.arrow] for bead in rest)
        out[key] = out.get(key, Fraction(0)) + coeff
    return {key: value for key, value in out.items() if value}


def casimir_d(c: StructureConstants, chain: Mapping[Tuple[int, ...], Fraction]) -> Chain:
    """Hochschild d^0 on A^{⊗k} with the inner action on the two outermost copies.

    (dm)(x_s) = x_s·m - m·x_s where x_s acts on the left of the last factor and on
    the right of the first factor.
    """
    out: Chain = {}
    n = c.n
    for key, coeff in chain.items():
        for s, t in product(range(n), repeat=2):
            left = c.c[s][key[-1]][t]
            if left:
                target = (s,) + key[:-1] + (t,)
                out[target] = out.get(target, Fraction(0)) + coeff * left
            right = c.c[key[0]][s][t]
            if right:
                target = (s, t) + key[1:]
                out[target] = out.get(target, Fraction(0)) - coeff * right
    return {key: value for key, value in out.items() if value}


@dataclass
class EmbeddingCheck:
    k: int
    checked: int
    square_commutes: bool
    phi0_injective: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "checked": self.checked,
            "square_commutes": self.square_commutes,
            "phi0_injective": self.phi0_injective,
        }

    @property
    def ok(self) -> bool:
        return self.square_commutes and self.phi0_injective


def casimir_embedding_check(
    c: StructureConstants,
    k: int,
    samples: Optional[int] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> EmbeddingCheck:
    """Check d∘φ0 = φ1∘d_P on weight-k plain necklaces and injectivity of φ0 on chains."""
    if k < 1:
        raise InputFormatError("The embedding is checked in weight k >= 1")
    q = free_quiver(c.names)
    P = tensor_from_constants(c, q)
    basis = list(enumerate_basis(q, 0, k, settings))
    chosen = basis
    if samples is not None and samples < len(basis):
        chosen = random.Random(seed).sample(basis, samples)

    commutes = all(
        casimir_d(c, phi0(q, necklace)) == phi1(q, differential_dP(P, PolyField.of_necklace(q, necklace)))
        for necklace in chosen
    )
    index = {key: row for row, key in enumerate(_tensor_power_basis(c.n, k))}
    matrix = RatMatrix.from_columns(
        len(index), [{index[key]: v for key, v in phi0(q, necklace).items()} for necklace in basis]
    )
    injective = rank(matrix) == len(basis)
    return EmbeddingCheck(k=k, checked=len(chosen), square_commutes=commutes, phi0_injective=injective)


def random_constants(n: int, rng: random.Random, span: int = 1, density: float = 0.35) -> StructureConstants:
    """Sparse random table with entries in [-span, span]."""
    cube = _zero_cube(n)
    for i, j, k in product(range(n), repeat=3):
        if rng.random() < density:
            cube[i][j][k] = Fraction(rng.randint(-span, span))
    return StructureConstants(n, _freeze(cube))


def _random_invertible(n: int, rng: random.Random) -> List[List[Fraction]]:
    while True:
        matrix = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if determinant(RatMatrix.from_rows(matrix)):
            return matrix


def transport(c: StructureConstants, g: List[List[Fraction]]) -> StructureConstants:
    """Constants of the same algebra in the basis y_a = Σ_i g[i][a] x_i."""
    n = c.n
    g_inv = inverse(RatMatrix.from_rows(g)).to_dense()
    cube = _zero_cube(n)
    for a, b in product(range(n), repeat=2):
        product_in_x = c.multiply([g[i][a] for i in range(n)], [g[j][b] for j in range(n)])
        for d in range(n):
            cube[a][b][d] = sum((g_inv[d][k] * product_in_x[k] for k in range(n)), Fraction(0))
    return StructureConstants(n, _freeze(cube))


def _direct_sum(c: StructureConstants, unit_square: bool) -> StructureConstants:
    """Append a one-dimensional summand (C if ``unit_square`` else Ce2)."""
    n = c.n + 1
    cube = _zero_cube(n)
    for i, j, k in product(range(c.n), repeat=3):
        cube[i][j][k] = c.c[i][j][k]
    if unit_square:
        cube[c.n][c.n][c.n] = Fraction(1)
    return StructureConstants(n, _freeze(cube))


def random_associative_constants(n: int, rng: random.Random) -> StructureConstants:
    """A catalogue algebra (plus a 1-dim summand when n = 3) in a random basis."""
    if n not in (2, 3):
        raise InputFormatError("Random associative algebras are drawn for n in {2, 3}")
    base = catalogue_2dim()[rng.randrange(len(CATALOGUE_TABLES))].constants
    if n == 3:
        base = _direct_sum(base, rng.random() < 0.5)
    return transport(base, _random_invertible(n, rng))


@dataclass
class EquivalenceReport:
    n: int
    trials: int
    seed: int
    associative: int = 0
    equivalence_holds: bool = True
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "associative": self.associative,
            "equivalence_holds": self.equivalence_holds,
            "failures": self.failures,
        }


def equivalence_trials(n: int, trials: int, seed: int = 0) -> EquivalenceReport:
    """is_associative(c) ⇔ is_poisson_tensor(tensor_from_constants(c)) on random tables.

    Even trials draw associative tables in random bases, odd trials raw random tables.
    """
    rng = random.Random(seed)
    report = EquivalenceReport(n=n, trials=trials, seed=seed)
    for trial in range(trials):
        c = random_associative_constants(n, rng) if trial % 2 == 0 else random_constants(n, rng)
        associative = is_associative(c).is_associative
        poisson = is_poisson_tensor(tensor_from_constants(c)).is_poisson
        report.associative += int(associative)
        if associative != poisson:
            report.equivalence_holds = False
            report.failures.append({"trial": trial, "constants": c.to_dict(), "associative": associative})
    logger.info(f"Equivalence trials n={n}: {trials} run, {report.associative} associative, holds={report.equivalence_holds}")
    return report
