"""Inductive dimension: ``dim(G) = average over v of 1 + dim(S(v))``, ``dim(empty) = -1``."""

from __future__ import annotations

from fractions import Fraction

from ..core.complex import SimplicialComplex
from ..errors import EmptyTerm
from ..graph import Graph
from ..graph_ops import barycentric_graph
from .characteristics import as_element


def graph_inductive_dimension(g: Graph) -> Fraction:
    adj = g.adjacency
    memo: dict[frozenset[int], Fraction] = {}

    def dim(s: frozenset[int]) -> Fraction:
        if not s:
            return Fraction(-1)
        hit = memo.get(s)
        if hit is None:
            hit = sum((1 + dim(adj[v] & s) for v in s), Fraction(0)) / len(s)
            memo[s] = hit
        return hit

    return dim(frozenset(range(g.vertex_count)))


def complex_dimension(g: SimplicialComplex) -> Fraction:
    """Inductive dimension of the Barycentric refinement graph of ``g``."""
    if g.is_empty:
        raise EmptyTerm("the empty complex has no dimension")
    return graph_inductive_dimension(barycentric_graph(g))


def dimension(e) -> list[Fraction]:
    """Per-term dimension, the sum of the factor dimensions."""
    terms = as_element(e).terms
    if not terms:
        raise EmptyTerm("the zero element has no dimension")
    return [sum((complex_dimension(f) for f in t.factors), Fraction(0)) for _, t in terms]
