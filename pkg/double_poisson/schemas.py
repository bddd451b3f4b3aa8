"""
Input documents accepted by the command line front-end.

Every file is validated by a pydantic model before it is turned into a domain
object, so malformed documents fail with a ``ValidationError`` naming the field.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from .finalg import StructureConstants
from .necklace import PolyField
from .quiver import Quiver, free_quiver

Coefficient = Union[int, str]


class ArrowSchema(BaseModel):
    name: str
    tail: str
    head: str


class QuiverSchema(BaseModel):
    vertices: List[str]
    arrows: List[ArrowSchema] = []

    @field_validator("vertices")
    @classmethod
    def _nonempty(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("a quiver needs at least one vertex")
        return value

    def to_quiver(self) -> Quiver:
        return Quiver.build(self.vertices, [(a.name, a.tail, a.head) for a in self.arrows])


class TermSchema(BaseModel):
    coeff: Coefficient = 1
    word: List[str]
    vertex: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"coeff": self.coeff, "word": self.word}
        if self.vertex is not None:
            data["vertex"] = self.vertex
        return data


class PolyFieldDocument(BaseModel):
    """``{"quiver": {...}, "terms": [{"coeff": "1", "word": ["x", "*x", "*x"]}]}``.

    Without a quiver the free algebra on x and y is assumed.
    """

    quiver: Optional[QuiverSchema] = None
    terms: List[TermSchema] = []

    def to_quiver(self) -> Quiver:
        return self.quiver.to_quiver() if self.quiver is not None else free_quiver()

    def to_polyfield(self, quiver: Optional[Quiver] = None) -> PolyField:
        q = quiver if quiver is not None else self.to_quiver()
        return PolyField.from_terms(q, [term.to_dict() for term in self.terms])


class ProductSchema(BaseModel):
    i: str
    j: str
    out: Dict[str, Coefficient] = {}


class AlgebraDocument(BaseModel):
    """``{"n": 2, "names": ["x", "y"], "products": [{"i": "x", "j": "x", "out": {"x": 1}}]}``."""

    n: int = Field(ge=1)
    names: Optional[List[str]] = None
    products: List[ProductSchema] = []

    def to_constants(self) -> StructureConstants:
        products = [product.model_dump() for product in self.products]
        return StructureConstants.from_products(self.n, products, self.names or ())
