"""Graph constructions on cells: connection graphs, strong products,
Barycentric refinements, Zykov arithmetic, unit spheres and sphere recognition."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Mapping, Sequence
from fractions import Fraction
from functools import reduce

import numpy as np
import scipy.sparse as sps

from .core.complex import EMPTY, SimplicialComplex
from .core.generators import whitney_complex
from .core.ring import ProductTerm, RingElement
from .errors import BadParameter, EmptyTerm, ValueInRange
from .graph import Graph


def as_term(x: ProductTerm | SimplicialComplex | RingElement) -> ProductTerm:
    """Coerce a complex or a single-term ring element to a product term."""
    if isinstance(x, ProductTerm):
        return x
    if isinstance(x, SimplicialComplex):
        if x.is_empty:
            raise EmptyTerm("the empty complex has no cells")
        return ProductTerm((x,))
    if isinstance(x, RingElement):
        if x.is_zero:
            raise EmptyTerm("the zero element has no cells")
        return x.single_term()
    raise TypeError(f"expected a complex or product term, got {type(x).__name__}")


def incidence_matrix(g: SimplicialComplex) -> sps.csr_array:
    """Cells x vertices 0/1 matrix (columns follow ``g.vertices``)."""
    col = {v: i for i, v in enumerate(g.vertices)}
    rows = np.repeat(np.arange(len(g)), [len(c) for c in g.cells])
    cols = np.fromiter((col[v] for c in g.cells for v in c), dtype=np.int64, count=len(rows))
    return sps.csr_array((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(len(g), len(col)))


def intersection_matrix(g: SimplicialComplex) -> sps.csr_array:
    """``M[x, y] = 1`` iff cells x and y share a vertex (diagonal included)."""
    inc = incidence_matrix(g)
    m = (inc @ inc.T).astype(bool).astype(np.int64)
    m.sort_indices()
    return sps.csr_array(m)


def containment_matrix(g: SimplicialComplex) -> sps.csr_array:
    """``C[x, y] = 1`` iff cell x is a subset of cell y (diagonal included)."""
    inc = incidence_matrix(g)
    shared = (inc @ inc.T).tocoo()
    sizes = np.array([len(c) for c in g.cells])
    keep = shared.data == sizes[shared.row]
    m = sps.csr_array(
        (np.ones(int(keep.sum()), dtype=np.int64), (shared.row[keep], shared.col[keep])), shape=shared.shape
    )
    m.sort_indices()
    return m


def _product_relation(t: ProductTerm, per_factor: Callable[[SimplicialComplex], sps.csr_array]) -> sps.csr_array:
    """Coordinatewise relation on product cells, in CellBasis order."""
    m = reduce(lambda a, b: sps.kron(a, b, format="csr"), (per_factor(f) for f in t.factors))
    p = t.basis.kron_index
    return sps.csr_array(m)[p][:, p]


def _graph_from_relation(m: sps.csr_array, labels: Sequence[Hashable]) -> Graph:
    m = sps.csr_array(m)
    m = ((m + m.T) > 0).astype(np.int64)
    return Graph.from_matrix(m, labels)


def connection_graph(x: ProductTerm | SimplicialComplex | RingElement) -> Graph:
    """Cells adjacent iff every coordinate pair of simplices intersects."""
    t = as_term(x)
    return _graph_from_relation(_product_relation(t, intersection_matrix), t.basis.cells)


def strong_product(a: Graph, b: Graph) -> Graph:
    """Vertices ``(u, v)`` in row-major order; labels are pairs of labels (or indices)."""
    ia = a.adjacency_matrix() + sps.eye_array(a.vertex_count, dtype=np.int64)
    ib = b.adjacency_matrix() + sps.eye_array(b.vertex_count, dtype=np.int64)
    la = a.labels if a.labels is not None else tuple(range(a.vertex_count))
    lb = b.labels if b.labels is not None else tuple(range(b.vertex_count))
    return Graph.from_matrix(sps.kron(ia, ib, format="csr"), [(u, v) for u in la for v in lb])


def flatten_label(label) -> tuple:
    """Nested product labels ``((x, y), z)`` become flat simplex tuples ``(x, y, z)``."""
    if isinstance(label, tuple) and label and isinstance(label[0], tuple) and isinstance(label[0][0], tuple):
        return sum((flatten_label(part) for part in label), ())
    if isinstance(label, tuple) and label and isinstance(label[0], int):
        return (label,)
    return tuple(label)


def labeled_edges(g: Graph, key: Callable[[Hashable], Hashable] = lambda x: x) -> frozenset:
    if g.labels is None:
        raise BadParameter("graph has no labels")
    lab = [key(x) for x in g.labels]
    return frozenset(frozenset((lab[i], lab[j])) for i, j in g.edges)


def same_labeled_graph(a: Graph, b: Graph, key: Callable[[Hashable], Hashable] = lambda x: x) -> bool:
    """Equal vertex label sets and equal edge sets under the label bijection."""
    if a.labels is None or b.labels is None:
        return a.adjacency == b.adjacency
    la, lb = [key(x) for x in a.labels], [key(x) for x in b.labels]
    if len(set(la)) != len(la) or set(la) != set(lb):
        return False
    return labeled_edges(a, key) == labeled_edges(b, key)


def barycentric_graph(x: ProductTerm | SimplicialComplex | RingElement) -> Graph:
    """Cells joined when one is contained in the other in every coordinate."""
    t = as_term(x)
    m = _product_relation(t, containment_matrix)
    m.setdiag(0)
    m.eliminate_zeros()
    return _graph_from_relation(m, t.basis.cells)


def barycentric_refinement(x: ProductTerm | SimplicialComplex | RingElement) -> tuple[Graph, SimplicialComplex]:
    g = barycentric_graph(x)
    return g, whitney_complex(g)


def refine(g: SimplicialComplex, times: int = 1) -> SimplicialComplex:
    for _ in range(times):
        g = barycentric_refinement(g)[1]
    return g


def disjoint_union(a: Graph, b: Graph) -> Graph:
    n = a.vertex_count
    return Graph(a.adjacency + tuple(frozenset(u + n for u in nb) for nb in b.adjacency))


def complement(a: Graph) -> Graph:
    n = a.vertex_count
    everyone = frozenset(range(n))
    return Graph(tuple(everyone - nb - {i} for i, nb in enumerate(a.adjacency)), a.labels)


def zykov_join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    n, m = a.vertex_count, b.vertex_count
    right = frozenset(range(n, n + m))
    left = frozenset(range(n))
    return Graph(
        tuple(nb | right for nb in a.adjacency) + tuple(frozenset(u + n for u in nb) | left for nb in b.adjacency)
    )


def zykov_product(a: Graph, b: Graph) -> Graph:
    return complement(strong_product(complement(a), complement(b)))


def unit_sphere(g: Graph, v: int) -> Graph:
    g.check_vertex(v)
    return g.induced(g.adjacency[v])


def _value(f: Mapping[int, Fraction] | Sequence | Callable, v: int):
    return f(v) if callable(f) else f[v]


def sublevel_sphere(g: Graph, f, v: int) -> Graph:
    """Neighbors of ``v`` with strictly smaller ``f``."""
    g.check_vertex(v)
    fv = _value(f, v)
    return g.induced(u for u in g.adjacency[v] if _value(f, u) < fv)


def skeleton_graph(g: SimplicialComplex) -> Graph:
    """1-skeleton on the vertices of ``g`` (relabeled to 0..n-1, labels = vertex ids)."""
    pos = {v: i for i, v in enumerate(g.vertices)}
    return Graph.from_edges(len(pos), [(pos[a], pos[b]) for a, b in g.edges], labels=g.vertices)


class _SphereOracle:
    """Contractibility and Evako-sphere tests on induced subgraphs of one graph.

    Subgraphs are identified by their vertex sets, which serve as memo keys.
    """

    def __init__(self, g: Graph):
        self.adj = g.adjacency
        self._contractible: dict[frozenset[int], bool] = {}
        self._sphere: dict[tuple[frozenset[int], int], bool] = {}

    def contractible(self, s: frozenset[int]) -> bool:
        if len(s) <= 1:
            return len(s) == 1
        hit = self._contractible.get(s)
        if hit is not None:
            return hit
        ok = any(self.contractible(self.adj[v] & s) and self.contractible(s - {v}) for v in sorted(s))
        self._contractible[s] = ok
        return ok

    def sphere(self, s: frozenset[int], d: int) -> bool:
        if d == -1:
            return not s
        if not s or d < -1:
            return False
        key = (s, d)
        hit = self._sphere.get(key)
        if hit is not None:
            return hit
        ok = all(self.sphere(self.adj[v] & s, d - 1) for v in s) and all(
            self.contractible(s - {v}) for v in sorted(s)
        )
        self._sphere[key] = ok
        return ok


def is_contractible(g: Graph) -> bool:
    return _SphereOracle(g).contractible(frozenset(range(g.vertex_count)))


def is_evako_sphere(g: Graph, d: int) -> bool:
    if d < -1:
        raise BadParameter("sphere dimension must be >= -1")
    return _SphereOracle(g).sphere(frozenset(range(g.vertex_count)), d)


def level_set(g: SimplicialComplex, f, c) -> SimplicialComplex:
    """Cells of ``g`` on which ``f - c`` changes sign, as a subcomplex of the refinement.

    The result's vertices index the cells of ``g`` (``g.cells[i]``).
    """
    values = {v: _value(f, v) for v in g.vertices}
    if any(val == c for val in values.values()):
        raise ValueInRange(f"level {c} is a value of f")
    crossing = [i for i, x in enumerate(g.cells) if min(values[v] for v in x) < c < max(values[v] for v in x)]
    if not crossing:
        return EMPTY
    bary = barycentric_graph(g)
    sub = bary.induced(crossing)
    cliques = sub.cliques()
    return SimplicialComplex.from_facets([crossing[i] for i in q] for q in cliques)


def export_edge_list(g: Graph) -> str:
    return g.to_edge_list()


def export_facets(g: Graph) -> str:
    return whitney_complex(g).to_json()

