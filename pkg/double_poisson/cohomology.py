"""
Double Poisson-Lichnerowicz cohomology in bidegrees (stars k, weight w).

For a weight-homogeneous tensor P of weight m, d_P maps the chain space of
bidegree (k, w) to (k + 1, w + m - 1), so every bidegree is computed exactly from
two finite matrices: the outgoing one and the incoming one from (k - 1, w - m + 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .bracket import differential_dP, is_poisson_tensor, kontsevich_bracket
from .config import Settings, resolve_settings
from .exceptions import DoublePoissonError, NonHomogeneousError, NotATensorError
from .linalg import RatMatrix, independent_columns, nullspace_basis, rank
from .necklace import Necklace, PolyField, enumerate_basis
from .quiver import Quiver

logger = logging.getLogger(__name__)

# degrees with independent reference values; H^k beyond is reported unverified
VERIFIED_MAX_STARS = 1


@dataclass
class BidegreeReport:
    k: int
    w: int
    dim_chain: int
    dim_kernel: int
    dim_image_in: int
    dim_H: int
    representatives: List[PolyField] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.k <= VERIFIED_MAX_STARS

    def to_dict(self, include_representatives: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "k": self.k,
            "w": self.w,
            "dim_chain": self.dim_chain,
            "dim_kernel": self.dim_kernel,
            "dim_image_in": self.dim_image_in,
            "dim_H": self.dim_H,
        }
        if not self.verified:
            data["note"] = "unverified: no published reference values in this degree"
        if include_representatives:
            data["representatives"] = [rep.to_terms() for rep in self.representatives]
        return data


def tensor_weight(P: PolyField, default: int = 1) -> int:
    """Common weight of all necklaces of P; the zero tensor gets ``default``."""
    if P.star_degrees() not in ([], [2]):
        raise NotATensorError(f"Expected star degree 2, found {P.star_degrees()}")
    weights = P.weights()
    if not weights:
        return default
    if len(weights) > 1:
        raise NonHomogeneousError(f"Tensor mixes weights {weights}; only weight-homogeneous tensors are supported")
    return weights[0]


def chain_dim(q: Quiver, k: int, w: int, settings: Optional[Settings] = None) -> int:
    return len(enumerate_basis(q, k, w, settings))


def _coordinates(element: PolyField, index: Dict[Necklace, int]) -> Dict[int, Fraction]:
    column = {}
    for necklace, coeff in element.items():
        try:
            column[index[necklace]] = coeff
        except KeyError:
            raise DoublePoissonError(
                f"Necklace {necklace.labels} of bidegree {necklace.bidegree} is outside the target basis"
            ) from None
    return column


def boundary_matrix(
    P: PolyField, k: int, w: int, settings: Optional[Settings] = None, weight: Optional[int] = None
) -> RatMatrix:
    """Matrix of d_P from bidegree (k, w) to (k + 1, w + m - 1) in the enumerated bases."""
    m = tensor_weight(P) if weight is None else weight
    source = enumerate_basis(P.quiver, k, w, settings)
    target_weight = w + m - 1
    target = enumerate_basis(P.quiver, k + 1, target_weight, settings) if target_weight >= 0 else ()
    index = {necklace: i for i, necklace in enumerate(target)}
    columns = []
    for necklace in source:
        image = differential_dP(P, PolyField.of_necklace(P.quiver, necklace))
        columns.append(_coordinates(image, index))
    logger.debug(f"Assembled d_P: ({k},{w}) -> ({k + 1},{target_weight}), {len(target)}x{len(source)}")
    return RatMatrix.from_columns(len(target), columns)


def _clear_denominators(vector: Sequence[Fraction]) -> List[Fraction]:
    factor = lcm(*(value.denominator for value in vector)) if vector else 1
    return [value * factor for value in vector]


def _to_field(quiver: Quiver, basis: Sequence[Necklace], vector: Sequence[Fraction]) -> PolyField:
    return PolyField(quiver, [(necklace, c) for necklace, c in zip(basis, vector) if c])


class _BoundaryCache:
    def __init__(self, P: PolyField, m: int, settings: Settings) -> None:
        self.P = P
        self.m = m
        self.settings = settings
        self._matrices: Dict[Tuple[int, int], RatMatrix] = {}

    def get(self, k: int, w: int) -> RatMatrix:
        key = (k, w)
        if key not in self._matrices:
            self._matrices[key] = boundary_matrix(self.P, k, w, self.settings, self.m)
        return self._matrices[key]


def _report(
    cache: _BoundaryCache, k: int, w: int, with_representatives: bool
) -> BidegreeReport:
    P, m = cache.P, cache.m
    basis = enumerate_basis(P.quiver, k, w, cache.settings)
    outgoing = cache.get(k, w)
    source_w = w - m + 1
    if k >= 1 and source_w >= 0:
        incoming = cache.get(k - 1, source_w)
    else:
        incoming = RatMatrix.zeros(len(basis), 0)

    kernel = nullspace_basis(outgoing)
    dim_image = rank(incoming)
    dim_h = len(kernel) - dim_image
    if dim_h < 0:
        raise DoublePoissonError(f"Negative cohomology at ({k}, {w}): is P a Poisson tensor?")

    representatives: List[PolyField] = []
    if with_representatives and dim_h:
        kernel_columns = RatMatrix.from_columns(
            len(basis), [{i: v for i, v in enumerate(vec) if v} for vec in kernel]
        )
        combined = incoming.hstack(kernel_columns)
        for column in independent_columns(combined):
            if column >= incoming.cols:
                vector = _clear_denominators(kernel[column - incoming.cols])
                representatives.append(_to_field(P.quiver, basis, vector))
    return BidegreeReport(
        k=k,
        w=w,
        dim_chain=len(basis),
        dim_kernel=len(kernel),
        dim_image_in=dim_image,
        dim_H=dim_h,
        representatives=representatives,
    )


def cohomology_summary(
    P: PolyField,
    k_range: Iterable[int],
    w_range: Iterable[int],
    settings: Optional[Settings] = None,
    representatives: bool = True,
    check_poisson: bool = True,
    weight: Optional[int] = None,
) -> List[BidegreeReport]:
    """Exact cohomology dimensions (and representatives) for every requested bidegree."""
    settings = resolve_settings(settings)
    ks = list(k_range)
    ws = list(w_range)
    if not ks or not ws:
        raise DoublePoissonError("Empty star or weight range")
    for k in ks:
        settings.check_cap("max_stars", k, "star degree k")
    for w in ws:
        settings.check_cap("max_weight", w, "weight w")
    m = tensor_weight(P) if weight is None else weight
    if check_poisson and not is_poisson_tensor(P).is_poisson:
        raise NotATensorError("Cohomology requires a double Poisson tensor ({P, P} != 0)")

    cache = _BoundaryCache(P, m, settings)
    reports = []
    for k in ks:
        for w in ws:
            report = _report(cache, k, w, representatives)
            logger.info(f"H^{k} at weight {w}: dim {report.dim_H} (chain dim {report.dim_chain})")
            reports.append(report)
    return reports


def dims_by_weight(reports: Iterable[BidegreeReport], k: int) -> List[int]:
    return [report.dim_H for report in sorted(reports, key=lambda r: r.w) if report.k == k]


def is_double_casimir(P: PolyField, f: PolyField) -> bool:
    """f (star degree 0) is killed by d_P."""
    return not differential_dP(P, f)


def is_poisson_vector_field(P: PolyField, v: PolyField) -> bool:
    """v (star degree 1) commutes with P."""
    return not kontsevich_bracket(P, v)
