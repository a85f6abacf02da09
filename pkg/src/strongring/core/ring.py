"""Product terms, cell bases and elements of the strong ring.

A ring element is an integer combination of product terms; a product term is
an ordered tuple of non-empty complexes whose cells are tuples of simplices,
one per factor.  Addition is disjoint union, multiplication is the Cartesian
product.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from ..errors import EmptyTerm, NotASingleTerm
from .complex import POINT, SimplicialComplex

ProductCell = tuple[tuple[int, ...], ...]


def describe_cell(cell: ProductCell) -> str:
    return "x".join("{" + ",".join(map(str, s)) + "}" for s in cell)


@dataclass(frozen=True)
class CellBasis:
    """Graded ordering of the cells of a product term.

    Cells are sorted by total dimension, ties broken by position in the
    Kronecker (row-major over factors) order.  ``kron_index[i]`` is the
    Kronecker position of basis cell ``i``.
    """

    cells: tuple[ProductCell, ...]
    dims: np.ndarray
    kron_index: np.ndarray

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, CellBasis) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def dim_of(self, i: int) -> int:
        return int(self.dims[i])

    @cached_property
    def omega(self) -> np.ndarray:
        return np.where(self.dims % 2 == 0, 1, -1).astype(np.int64)

    @cached_property
    def grading_offsets(self) -> tuple[int, ...]:
        """``offsets[k]:offsets[k+1]`` is the block of k-cells."""
        top = int(self.dims.max()) if len(self.dims) else -1
        return tuple(int(x) for x in np.searchsorted(self.dims, np.arange(top + 2)))

    @cached_property
    def position(self) -> dict[ProductCell, int]:
        return {c: i for i, c in enumerate(self.cells)}

    def block(self, k: int) -> slice:
        off = self.grading_offsets
        if k < 0 or k + 1 >= len(off):
            return slice(0, 0)
        return slice(off[k], off[k + 1])

    def descriptors(self) -> list[str]:
        return [describe_cell(c) for c in self.cells]


@dataclass(frozen=True)
class ProductTerm:
    factors: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        if not self.factors:
            raise EmptyTerm("a product term needs at least one factor")
        if any(f.is_empty for f in self.factors):
            raise EmptyTerm("a product term cannot contain the empty complex")

    @classmethod
    def of(cls, *factors: SimplicialComplex) -> ProductTerm:
        return cls(tuple(factors))

    def __repr__(self) -> str:
        return " x ".join(f"C(f={list(f.f_vector)})" for f in self.factors)

    @property
    def size(self) -> int:
        n = 1
        for f in self.factors:
            n *= len(f)
        return n

    def __len__(self) -> int:
        return self.size

    @cached_property
    def kron_cells(self) -> tuple[ProductCell, ...]:
        return tuple(product(*(f.cells for f in self.factors)))

    @cached_property
    def kron_dims(self) -> np.ndarray:
        d = np.zeros(1, dtype=np.int64)
        for f in self.factors:
            d = np.add.outer(d, f.dims).ravel()
        return d

    @cached_property
    def basis(self) -> CellBasis:
        kd = self.kron_dims
        order = np.argsort(kd, kind="stable")
        cells = self.kron_cells
        return CellBasis(tuple(cells[i] for i in order), kd[order], order)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @cached_property
    def vertex_cells(self) -> tuple[tuple[int, ...], ...]:
        """Zero-dimensional product cells as vertex tuples, in Kronecker order."""
        return tuple(product(*(f.vertices for f in self.factors)))


def _factor_key(f: SimplicialComplex):
    return (len(f.cells), f.cells)


def _canonical(coef: int, factors: Iterable[SimplicialComplex]) -> tuple[int, ProductTerm] | None:
    kept = []
    for f in factors:
        if f.is_empty:
            return None
        if f.is_zero_dimensional:
            # P_n inside a product is n disjoint copies of the rest
            coef *= f.vertex_count
        else:
            kept.append(f)
    if coef == 0:
        return None
    if not kept:
        kept = [POINT]
    kept.sort(key=_factor_key)
    return coef, ProductTerm(tuple(kept))


@dataclass(frozen=True, eq=False)
class RingElement:
    """Normalized integer combination of product terms.

    Instances are always normalized: zero-dimensional factors are absorbed
    into the coefficient, factors are sorted canonically, identical terms are
    merged in order of first appearance and zero coefficients are dropped.
    Equality is structural on labeled complexes.
    """

    terms: tuple[tuple[int, ProductTerm], ...] = ()

    @classmethod
    def from_terms(cls, raw: Iterable[tuple[int, ProductTerm | Iterable[SimplicialComplex]]]) -> RingElement:
        merged: dict[ProductTerm, int] = {}
        for coef, term in raw:
            factors = term.factors if isinstance(term, ProductTerm) else tuple(term)
            canon = _canonical(int(coef), factors)
            if canon is None:
                continue
            c, t = canon
            merged[t] = merged.get(t, 0) + c
        return cls(tuple((c, t) for t, c in merged.items() if c != 0))

    @classmethod
    def of(cls, g: SimplicialComplex, coef: int = 1) -> RingElement:
        return cls.from_terms([(coef, (g,))])

    @classmethod
    def zero(cls) -> RingElement:
        return cls(())

    @classmethod
    def one(cls) -> RingElement:
        return cls.of(POINT)

    @classmethod
    def integer(cls, n: int) -> RingElement:
        return cls.of(POINT, n)

    def normalize(self) -> RingElement:
        return RingElement.from_terms(self.terms)

    def __eq__(self, other) -> bool:
        # term order records first appearance only; equality ignores it
        if not isinstance(other, RingElement):
            return NotImplemented
        return dict(self._as_map()) == dict(other._as_map())

    def __hash__(self) -> int:
        return hash(frozenset(self._as_map().items()))

    def _as_map(self) -> dict[ProductTerm, int]:
        out: dict[ProductTerm, int] = {}
        for c, t in self.terms:
            out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __neg__(self) -> RingElement:
        return ring_neg(self)

    def __add__(self, other) -> RingElement:
        return ring_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> RingElement:
        return ring_add(self, ring_neg(_coerce(other)))

    def __rsub__(self, other) -> RingElement:
        return ring_add(_coerce(other), ring_neg(self))

    def __mul__(self, other) -> RingElement:
        return ring_mul(self, _coerce(other))

    def __rmul__(self, other) -> RingElement:
        return ring_mul(_coerce(other), self)

    def __pow__(self, k: int) -> RingElement:
        out = RingElement.one()
        for _ in range(k):
            out = out * self
        return out

    def single_term(self) -> ProductTerm:
        """The only term, which must carry coefficient +1."""
        if len(self.terms) != 1 or self.terms[0][0] != 1:
            raise NotASingleTerm(f"expected a single term with coefficient 1, got {self!r}")
        return self.terms[0][1]

    def summands(self) -> list[tuple[int, ProductTerm]]:
        """Expanded direct-sum summands: ``(sign, term)`` repeated ``|coef|`` times."""
        out = []
        for c, t in self.terms:
            s = 1 if c > 0 else -1
            out.extend([(s, t)] * abs(c))
        return out

    @property
    def cell_count(self) -> int:
        """Signed number of cells (the trace of the connection operator)."""
        return sum(c * t.size for c, t in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "RingElement(0)"
        parts = [f"{c:+d}*[{t!r}]" for c, t in self.terms]
        return "RingElement(" + " ".join(parts) + ")"


def _coerce(x) -> RingElement:
    if isinstance(x, RingElement):
        return x
    if isinstance(x, SimplicialComplex):
        return RingElement.of(x)
    if isinstance(x, ProductTerm):
        return RingElement.from_terms([(1, x)])
    if isinstance(x, int):
        return RingElement.integer(x)
    raise TypeError(f"cannot use {type(x).__name__} as a ring element")


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return RingElement.from_terms(a.terms + b.terms)


def ring_neg(a: RingElement) -> RingElement:
    return RingElement(tuple((-c, t) for c, t in a.terms))


def expand_product(a: RingElement, b: RingElement) -> list[tuple[int, tuple[SimplicialComplex, ...]]]:
    """Distributed product before merging: one summand per pair of terms."""
    return [(ca * cb, ta.factors + tb.factors) for ca, ta in a.terms for cb, tb in b.terms]


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return RingElement.from_terms(expand_product(a, b))
