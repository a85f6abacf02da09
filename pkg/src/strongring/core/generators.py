"""Named complexes: complete, cycle, path, point sets, octahedron, suspension,
random Whitney complexes, the square-free integer complex and two bands."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import BadParameter, UnknownGenerator
from ..graph import Graph
from .complex import EMPTY, SimplicialComplex


def whitney_complex(graph: Graph) -> SimplicialComplex:
    """Complex whose cells are the vertex sets of complete subgraphs."""
    return SimplicialComplex.from_facets(graph.cliques()) if graph.vertex_count else EMPTY


def complete(n: int) -> SimplicialComplex:
    _need(n >= 1, f"K{n}: need n >= 1")
    return SimplicialComplex.from_facets([range(n)])


def cycle(n: int) -> SimplicialComplex:
    # C3 is the Whitney complex of the triangle graph, i.e. K3
    _need(n >= 3, f"C{n}: need n >= 3")
    return whitney_complex(Graph.cycle(n))


def path(n: int) -> SimplicialComplex:
    _need(n >= 1, f"L{n}: need n >= 1")
    if n == 1:
        return complete(1)
    return SimplicialComplex.from_facets([(i, i + 1) for i in range(n - 1)])


def points(n: int) -> SimplicialComplex:
    _need(n >= 0, f"P{n}: need n >= 0")
    return SimplicialComplex.from_facets((i,) for i in range(n)) if n else EMPTY


def octahedron_graph() -> Graph:
    return Graph.from_edges(6, [(i, j) for i, j in combinations(range(6), 2) if j - i != 3])


def octahedron() -> SimplicialComplex:
    return whitney_complex(octahedron_graph())


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Zykov join; the vertices of ``b`` are shifted past those of ``a``."""
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    shift = max(a.vertices) + 1
    bf = [tuple(v + shift for v in f) for f in b.facets]
    return SimplicialComplex.from_facets(fa + fb for fa in a.facets for fb in bf)


def suspension(g: SimplicialComplex) -> SimplicialComplex:
    return join(g, points(2))


def random_er(n: int, p: float, seed: int) -> SimplicialComplex:
    """Whitney complex of an Erdos-Renyi graph G(n, p); PCG64 stream from ``seed``."""
    _need(n >= 1, "RandomER: need n >= 1")
    _need(0.0 <= p <= 1.0, "RandomER: need 0 <= p <= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return whitney_complex(Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k]))


def random_facets(n: int, count: int, max_size: int, seed: int) -> SimplicialComplex:
    """Closure of ``count`` random facets on ``n`` vertices (not Whitney in general)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    facets = []
    for _ in range(count):
        k = int(rng.integers(1, max_size + 1))
        facets.append(tuple(rng.choice(n, size=min(k, n), replace=False).tolist()))
    return SimplicialComplex.from_facets(facets)


def prime_factors(k: int) -> list[int]:
    out, d = [], 2
    while d * d <= k:
        while k % d == 0:
            out.append(d)
            k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


def primes_complex(n: int) -> SimplicialComplex:
    """Square-free integers 2..n as simplices (their prime-factor sets)."""
    _need(n >= 2, "Primes: need n >= 2")
    cells = []
    for k in range(2, n + 1):
        f = prime_factors(k)
        if len(set(f)) == len(f):
            cells.append(f)
    return SimplicialComplex.from_facets(cells)


def _band(n: int, twist: bool) -> SimplicialComplex:
    _need(n >= 3, "band triangulations need n >= 3")

    def vid(i: int, s: int) -> int:
        if i == n:
            i, s = 0, (1 - s if twist else s)
        return 2 * i + s

    tris = []
    for i in range(n):
        a0, a1, b0, b1 = vid(i, 0), vid(i, 1), vid(i + 1, 0), vid(i + 1, 1)
        tris += [(a0, b0, b1), (a0, a1, b1)]
    return SimplicialComplex.from_facets(tris)


def cylinder(n: int = 4) -> SimplicialComplex:
    """Annulus: n squares around a circle, each cut along a diagonal."""
    return _band(n, twist=False)


def mobius(n: int = 4) -> SimplicialComplex:
    """Moebius band with the same f-vector (2n, 4n, 2n) as :func:`cylinder`."""
    return _band(n, twist=True)


_FIXED = {
    "octahedron": octahedron,
    "oct": octahedron,
}


def generate(name: str, *params) -> SimplicialComplex:
    """Build a named complex, e.g. ``generate("K", 3)`` or ``generate("Suspension", G)``."""
    key = name.strip()
    low = key.lower()
    if low in _FIXED:
        _need(not params, f"{name} takes no parameters")
        return _FIXED[low]()
    table = {
        "k": complete,
        "c": cycle,
        "l": path,
        "p": points,
        "suspension": suspension,
        "susp": suspension,
        "randomer": random_er,
        "er": random_er,
        "primes": primes_complex,
        "cylinder": cylinder,
        "cyl": cylinder,
        "mobius": mobius,
        "mob": mobius,
    }
    if low not in table:
        raise UnknownGenerator(f"unknown generator {name!r}")
    try:
        return table[low](*params)
    except TypeError as exc:
        raise BadParameter(f"{name}: {exc}") from None


def _need(ok: bool, msg: str) -> None:
    if not ok:
        raise BadParameter(msg)
