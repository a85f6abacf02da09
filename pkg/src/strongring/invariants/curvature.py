"""Curvature, Poincare-Hopf indices and their expectation over random orderings.

Zero-dimensional cells of a term are vertex tuples ``(v_1, ..., v_m)``; maps
below are keyed by ``(term index, vertex tuple)``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Literal

import numpy as np

from ..core.ring import ProductTerm
from ..errors import BadParameter, NotLocallyInjective, TooLargeForExact
from .characteristics import as_element

VertexKey = tuple[int, tuple[int, ...]]

EXACT_LIMIT = 8
MC_CHUNK = 10_000


@dataclass(frozen=True)
class CurvatureMap:
    values: dict[VertexKey, Fraction | float]

    @property
    def total(self):
        return sum(self.values.values(), Fraction(0))

    def max_deviation(self, other: CurvatureMap) -> float:
        keys = set(self.values) | set(other.values)
        return max((abs(float(self.values.get(k, 0)) - float(other.values.get(k, 0))) for k in keys), default=0.0)


@dataclass(frozen=True)
class IndexMap:
    f: dict[VertexKey, object]
    indices: dict[VertexKey, int]

    @property
    def total(self) -> int:
        return sum(self.indices.values())


def term_curvature(t: ProductTerm) -> dict[tuple[int, ...], Fraction]:
    """Every cell spreads ``omega(x)`` evenly over its vertex tuples."""
    out: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for cell, w in zip(t.basis.cells, t.basis.omega):
        share = Fraction(int(w), math.prod(len(s) for s in cell))
        for v in product(*cell):
            out[v] += share
    return dict(out)


def curvature(e) -> CurvatureMap:
    """``K(v) = sum_{x containing v} omega(x) / |x|``; sums to the Euler characteristic."""
    values: dict[VertexKey, Fraction] = {}
    for i, (c, t) in enumerate(as_element(e).terms):
        for v, k in term_curvature(t).items():
            values[(i, v)] = c * k
    return CurvatureMap(values)


FunctionSpec = Mapping | Sequence[Mapping] | Callable


def term_function(t: ProductTerm, f: FunctionSpec) -> dict[tuple[int, ...], object]:
    """Values on the vertex tuples of ``t``.

    ``f`` may map vertex tuples directly, map plain vertices (single factor),
    be a per-factor sequence of maps (combined additively) or be callable on
    vertex tuples.
    """
    verts = t.vertex_cells
    if callable(f) and not isinstance(f, Mapping):
        return {v: f(v) for v in verts}
    if isinstance(f, Mapping):
        if verts and verts[0] in f:
            return {v: f[v] for v in verts}
        if len(t.factors) != 1:
            raise NotLocallyInjective("per-vertex function given for a product; pass one map per factor")
        return {v: f[v[0]] for v in verts}
    maps = list(f)
    if len(maps) != len(t.factors):
        raise NotLocallyInjective(f"expected {len(t.factors)} factor functions, got {len(maps)}")
    return {v: sum(m[x] for m, x in zip(maps, v)) for v in verts}


def _cell_tops(t: ProductTerm, values: Mapping[tuple[int, ...], object]) -> list[tuple[int, ...]]:
    """Vertex tuple carrying the maximum of ``f`` on each cell (must be unique)."""
    tops = []
    for cell in t.basis.cells:
        best, best_v, tie = None, None, False
        for v in product(*cell):
            val = values[v]
            if best is None or val > best:
                best, best_v, tie = val, v, False
            elif val == best:
                tie = True
        if tie:
            raise NotLocallyInjective(f"f is not injective on the cell {cell}")
        tops.append(best_v)
    return tops


def term_indices(t: ProductTerm, f: FunctionSpec) -> dict[tuple[int, ...], int]:
    """``i_f(v) = 1 - chi(S^-_f(v))``: each cell contributes ``omega`` to its top vertex."""
    values = term_function(t, f)
    out = {v: 0 for v in t.vertex_cells}
    for top, w in zip(_cell_tops(t, values), t.basis.omega):
        out[top] += int(w)
    return out


def poincare_hopf(e, f) -> IndexMap:
    """Indices of a locally injective ``f``; their sum is the Euler characteristic.

    For elements with several terms ``f`` is a sequence with one entry per term.
    """
    el = as_element(e)
    specs = [f] if len(el.terms) == 1 else list(f)
    fvals: dict[VertexKey, object] = {}
    idx: dict[VertexKey, int] = {}
    for i, ((c, t), spec) in enumerate(zip(el.terms, specs)):
        vals = term_function(t, spec)
        for v, k in term_indices(t, vals).items():
            fvals[(i, v)] = vals[v]
            idx[(i, v)] = c * k
    return IndexMap(fvals, idx)


def _components(t: ProductTerm) -> list[list[int]]:
    verts = t.vertex_cells
    pos = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for cell in t.basis.cells:
        ids = [pos[v] for v in product(*cell)]
        for j in ids[1:]:
            a, b = find(ids[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(len(verts)):
        groups[find(i)].append(i)
    return list(groups.values())


def _accumulate(t: ProductTerm, ranks: np.ndarray, cell_ids: list[int], totals: np.ndarray) -> None:
    """Add the indices induced by each row of ``ranks`` (one value per vertex) into ``totals``."""
    pos = {v: i for i, v in enumerate(t.vertex_cells)}
    om = t.basis.omega
    by_size: dict[int, list[tuple[list[int], int]]] = defaultdict(list)
    for ci in cell_ids:
        cell = t.basis.cells[ci]
        vs = [pos[v] for v in product(*cell)]
        by_size[len(vs)].append((vs, int(om[ci])))
    for group in by_size.values():
        idx = np.array([g[0] for g in group])
        w = np.array([g[1] for g in group])
        winners = idx[np.arange(len(group)), np.argmax(ranks[:, idx], axis=2)]
        np.add.at(totals, winners.ravel(), np.broadcast_to(w, winners.shape).ravel())


def _cells_by_component(t: ProductTerm, comps: list[list[int]]) -> list[list[int]]:
    pos = {v: i for i, v in enumerate(t.vertex_cells)}
    owner = {}
    for k, comp in enumerate(comps):
        for i in comp:
            owner[i] = k
    out: list[list[int]] = [[] for _ in comps]
    for ci, cell in enumerate(t.basis.cells):
        out[owner[pos[tuple(s[0] for s in cell)]]].append(ci)
    return out


def term_index_expectation_exact(t: ProductTerm, limit: int = EXACT_LIMIT) -> dict[tuple[int, ...], Fraction]:
    comps = _components(t)
    if max(len(c) for c in comps) > limit:
        raise TooLargeForExact(f"exact averaging enumerates orderings of at most {limit} vertices per component")
    n = len(t.vertex_cells)
    result = np.zeros(n, dtype=np.int64)
    denom = {}
    for comp, cells in zip(comps, _cells_by_component(t, comps)):
        perms = np.array(list(permutations(range(len(comp)))), dtype=np.int64)
        totals = np.zeros(n, dtype=np.int64)
        for lo in range(0, len(perms), MC_CHUNK):
            block = perms[lo:lo + MC_CHUNK]
            ranks = np.zeros((len(block), n), dtype=np.int64)
            ranks[:, comp] = block
            _accumulate(t, ranks, cells, totals)
        for i in comp:
            result[i] = totals[i]
            denom[i] = len(perms)
    return {v: Fraction(int(result[i]), denom[i]) for i, v in enumerate(t.vertex_cells)}


def term_index_expectation_mc(t: ProductTerm, seed: int, samples: int) -> dict[tuple[int, ...], float]:
    n = len(t.vertex_cells)
    cells = list(range(t.size))
    totals = np.zeros(n, dtype=np.int64)
    done, chunk = 0, 0
    while done < samples:
        m = min(MC_CHUNK, samples - done)
        rng = np.random.default_rng([seed, chunk])
        _accumulate(t, rng.random((m, n)), cells, totals)
        done += m
        chunk += 1
    return {v: totals[i] / samples for i, v in enumerate(t.vertex_cells)}


def index_expectation(
    e, mode: Literal["exact", "monte_carlo"] = "exact", seed: int = 0, samples: int = 100_000
) -> CurvatureMap:
    """Average Poincare-Hopf index over uniformly random vertex orderings.

    ``exact`` enumerates all orderings of each connected component;
    ``monte_carlo`` draws ``samples`` orderings from chunks seeded by ``(seed, chunk)``.
    """
    values: dict[VertexKey, Fraction | float] = {}
    for i, (c, t) in enumerate(as_element(e).terms):
        if mode == "exact":
            part = term_index_expectation_exact(t)
        elif mode == "monte_carlo":
            part = term_index_expectation_mc(t, seed, samples)
        else:
            raise BadParameter(f"unknown mode {mode!r}")
        for v, k in part.items():
            values[(i, v)] = c * k
    return CurvatureMap(values)
