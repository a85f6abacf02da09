"""Simplicial complexes, the strong ring and its polynomial picture."""

from .complex import EMPTY, POINT, Simplex, SimplicialComplex, validate_complex
from .factorization import (
    FactorizationDemo,
    PrimalityCertificate,
    demo_factors,
    is_multiplicative_prime,
    nonunique_factorization_demo,
)
from .generators import (
    complete,
    cycle,
    cylinder,
    generate,
    join,
    mobius,
    octahedron,
    octahedron_graph,
    path,
    points,
    primes_complex,
    random_er,
    random_facets,
    suspension,
    whitney_complex,
)
from .parser import parse_ring_expression
from .ring import (
    CellBasis,
    ProductCell,
    ProductTerm,
    RingElement,
    describe_cell,
    expand_product,
    ring_add,
    ring_mul,
    ring_neg,
)
from .stanley_reisner import StanleyReisnerPoly, stanley_reisner

__all__ = [
    "EMPTY",
    "POINT",
    "CellBasis",
    "FactorizationDemo",
    "PrimalityCertificate",
    "ProductCell",
    "ProductTerm",
    "RingElement",
    "Simplex",
    "SimplicialComplex",
    "StanleyReisnerPoly",
    "complete",
    "cycle",
    "cylinder",
    "demo_factors",
    "describe_cell",
    "expand_product",
    "generate",
    "is_multiplicative_prime",
    "join",
    "mobius",
    "nonunique_factorization_demo",
    "octahedron",
    "octahedron_graph",
    "parse_ring_expression",
    "path",
    "points",
    "primes_complex",
    "random_er",
    "random_facets",
    "ring_add",
    "ring_mul",
    "ring_neg",
    "stanley_reisner",
    "suspension",
    "validate_complex",
    "whitney_complex",
]
