"""Finite abstract simplicial complexes with a canonical cell order."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np

from ..errors import BadParameter, ClosureViolation, EmptySetMember

Simplex = tuple[int, ...]


def cell_key(cell: Simplex) -> tuple[int, Simplex]:
    return (len(cell), cell)


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of non-empty vertex sets.

    ``cells`` holds sorted vertex tuples ordered by dimension and then
    lexicographically.  Build instances through :func:`validate_complex`,
    :meth:`from_facets` or the generators; the constructor trusts its input.
    """

    cells: tuple[Simplex, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
        found: set[Simplex] = set()
        for facet in facets:
            f = tuple(sorted(set(int(v) for v in facet)))
            if not f:
                raise EmptySetMember()
            if any(v < 0 for v in f):
                raise BadParameter(f"vertices must be non-negative integers, got {f}")
            if f in found:
                continue
            for k in range(1, len(f) + 1):
                found.update(combinations(f, k))
        return cls(tuple(sorted(found, key=cell_key)))

    @classmethod
    def load_json(cls, path: str | Path) -> SimplicialComplex:
        data = json.loads(Path(path).read_text())
        if not isinstance(data, Mapping) or "facets" not in data:
            raise BadParameter(f"{path}: expected an object with a 'facets' list")
        return cls.from_facets(data["facets"])

    def to_json(self) -> str:
        return json.dumps({"facets": [list(f) for f in self.facets]})

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(sorted(cell)) in self.index

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={list(self.f_vector)}, facets={[list(f) for f in self.facets]})"

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {c: i for i, c in enumerate(self.cells)}

    @cached_property
    def dims(self) -> np.ndarray:
        return np.fromiter((len(c) - 1 for c in self.cells), dtype=np.int64, count=len(self.cells))

    @cached_property
    def omega(self) -> np.ndarray:
        """(-1)^dim for every cell, in cell order."""
        return np.where(self.dims % 2 == 0, 1, -1).astype(np.int64)

    @property
    def dim(self) -> int:
        return len(self.cells[-1]) - 1 if self.cells else -1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cells if len(c) == 1)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        if not self.cells:
            return ()
        counts = np.bincount(self.dims)
        return tuple(int(c) for c in counts)

    @cached_property
    def facets(self) -> tuple[Simplex, ...]:
        covered: set[Simplex] = set()
        for c in self.cells:
            if len(c) > 1:
                covered.update(combinations(c, len(c) - 1))
        return tuple(c for c in self.cells if c not in covered)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(c for c in self.cells if len(c) == 2)  # type: ignore[misc]

    @property
    def euler_characteristic(self) -> int:
        return int(self.omega.sum())

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @property
    def is_zero_dimensional(self) -> bool:
        return self.dim == 0

    def components(self) -> list[tuple[int, ...]]:
        """Vertex sets of the connected components, smallest vertex first."""
        parent = {v: v for v in self.vertices}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [tuple(g) for _, g in sorted(groups.items())]

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[int, int]) -> SimplicialComplex:
        return SimplicialComplex.from_facets([mapping[v] for v in f] for f in self.facets) if self.cells else self

    def star_counts(self) -> dict[int, list[int]]:
        """For each vertex v, the list ``n[k]`` = number of k-cells containing v."""
        out = {v: [0] * (self.dim + 1) for v in self.vertices}
        for c in self.cells:
            for v in c:
                out[v][len(c) - 1] += 1
        return out


def validate_complex(sets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Check downward closure of ``sets`` and return the complex.

    Raises :class:`EmptySetMember` for an empty member and
    :class:`ClosureViolation` naming the first missing subset.
    """
    found: set[Simplex] = set()
    for s in sets:
        cell = tuple(sorted(set(int(v) for v in s)))
        if not cell:
            raise EmptySetMember()
        if cell[0] < 0:
            raise BadParameter(f"vertices must be non-negative integers, got {cell}")
        found.add(cell)
    ordered = sorted(found, key=cell_key)
    for cell in ordered:
        if len(cell) > 1:
            for face in combinations(cell, len(cell) - 1):
                if face not in found:
                    raise ClosureViolation(face, cell)
    return SimplicialComplex(tuple(ordered))


EMPTY = SimplicialComplex(())
POINT = SimplicialComplex(((0,),))
