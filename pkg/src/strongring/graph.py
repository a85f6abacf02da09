"""Finite simple graphs with optional vertex labels."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sps

from .errors import BadParameter, VertexOutOfRange


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` (when present) is a tuple with one hashable descriptor per
    vertex; derived graphs carry labels so that matrices built on different
    graphs can be cross-indexed without isomorphism search.
    """

    adjacency: tuple[frozenset[int], ...]
    labels: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.adjacency):
            raise BadParameter("one label per vertex is required")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[Hashable] | None = None
    ) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise BadParameter(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise VertexOutOfRange(f"edge ({a}, {b}) outside 0..{n - 1}")
            nbrs[a].add(b)
            nbrs[b].add(a)
        return cls(tuple(frozenset(s) for s in nbrs), None if labels is None else tuple(labels))

    @classmethod
    def from_matrix(cls, adj, labels: Sequence[Hashable] | None = None) -> Graph:
        """Graph from a symmetric 0/1 matrix (dense or sparse); the diagonal is ignored."""
        m = sps.csr_array(adj)
        m.setdiag(0)
        m.eliminate_zeros()
        n = m.shape[0]
        indptr, indices = m.indptr, m.indices
        rows = tuple(frozenset(indices[indptr[i]:indptr[i + 1]].tolist()) for i in range(n))
        return cls(rows, None if labels is None else tuple(labels))

    @classmethod
    def empty(cls, n: int = 0) -> Graph:
        return cls(tuple(frozenset() for _ in range(n)))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(tuple(frozenset(j for j in range(n) if j != i) for i in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def __len__(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, nb in enumerate(self.adjacency) for j in nb if i < j)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.adjacency):
            raise VertexOutOfRange(f"vertex {v} not in 0..{len(self.adjacency) - 1}")

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        rows = tuple(frozenset(pos[u] for u in self.adjacency[v] if u in pos) for v in keep)
        labels = None if self.labels is None else tuple(self.labels[v] for v in keep)
        return Graph(rows, labels)

    def adjacency_matrix(self, dtype=np.int64) -> sps.csr_array:
        n = len(self.adjacency)
        rows = np.fromiter((i for i, nb in enumerate(self.adjacency) for _ in nb), dtype=np.int64)
        cols = np.fromiter((j for nb in self.adjacency for j in nb), dtype=np.int64)
        data = np.ones(len(rows), dtype=dtype)
        m = sps.csr_array((data, (rows, cols)), shape=(n, n))
        m.sort_indices()
        return m

    def kirchhoff(self) -> np.ndarray:
        """Kirchhoff (graph) Laplacian ``deg - A`` as a dense integer array."""
        a = self.adjacency_matrix().toarray()
        return np.diag(a.sum(axis=1)) - a

    def cliques(self) -> list[tuple[int, ...]]:
        """All non-empty complete subgraphs, as sorted vertex tuples."""
        out: list[tuple[int, ...]] = []
        higher = [frozenset(u for u in nb if u > v) for v, nb in enumerate(self.adjacency)]

        def extend(clique: tuple[int, ...], cand: frozenset[int]) -> None:
            out.append(clique)
            for u in sorted(cand):
                extend(clique + (u,), cand & higher[u])

        for v in range(len(self.adjacency)):
            extend((v,), higher[v])
        return out

    def clique_number(self) -> int:
        if not self.adjacency:
            return 0
        best = 1
        higher = [frozenset(u for u in nb if u > v) for v, nb in enumerate(self.adjacency)]

        def grow(size: int, cand: frozenset[int]) -> None:
            nonlocal best
            if size > best:
                best = size
            if size + len(cand) <= best:
                return
            for u in sorted(cand):
                grow(size + 1, cand & higher[u])

        for v in range(len(self.adjacency)):
            grow(1, higher[v])
        return best

    def components(self) -> list[list[int]]:
        seen = [False] * len(self.adjacency)
        comps = []
        for s in range(len(self.adjacency)):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def to_edge_list(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in sorted(self.edges))

    def relabel_by(self, labels: Sequence[Hashable]) -> Graph:
        return Graph(self.adjacency, tuple(labels))
