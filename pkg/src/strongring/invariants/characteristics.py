"""Counting invariants: Euler, Fermi and Wu characteristics, f-vectors,
f-matrices and their generating polynomials."""

from __future__ import annotations

from typing import Literal

import numpy as np
import scipy.sparse as sps

from ..core.complex import SimplicialComplex
from ..core.ring import ProductTerm, RingElement
from ..errors import BadOrder
from ..operators import connection_laplacian
from . import _poly
from ._poly import Poly

WuSemantics = Literal["pairwise", "common"]


def as_element(x) -> RingElement:
    if isinstance(x, RingElement):
        return x
    if isinstance(x, SimplicialComplex):
        return RingElement.of(x)
    if isinstance(x, ProductTerm):
        return RingElement(((1, x),))
    raise TypeError(f"expected a ring element, got {type(x).__name__}")


def term_euler(t: ProductTerm) -> int:
    return int(t.basis.omega.sum())


def euler_characteristic(e) -> int:
    """Signed cell count weighted by ``(-1)^dim``, linear over terms."""
    return sum(c * term_euler(t) for c, t in as_element(e).terms)


def fermi_characteristic(e) -> int:
    """Product of ``(-1)^dim`` over all cells of a single positive term."""
    t = as_element(e).single_term()
    odd = int(np.count_nonzero(t.kron_dims % 2))
    return -1 if odd % 2 else 1


def term_f_vector(t: ProductTerm) -> tuple[int, ...]:
    return tuple(int(x) for x in np.bincount(t.kron_dims))


def f_vector(e) -> tuple[int, ...]:
    """``v_k`` = signed number of k-dimensional cells."""
    acc: Poly = ()
    for c, t in as_element(e).terms:
        acc = _poly.add(acc, _poly.scale(c, term_f_vector(t)))
    return acc


def euler_polynomial(e) -> Poly:
    """``e(t) = sum_k v_k t^k`` as ascending coefficients; ``e(-1) = chi``."""
    return f_vector(e)


def term_f_matrix(t: ProductTerm) -> np.ndarray:
    """``V[i, j]`` = ordered pairs (i-cell, j-cell) meeting in every coordinate."""
    m = connection_laplacian(t)
    dims = t.basis.dims
    top = int(dims.max()) + 1
    onehot = sps.csr_array((np.ones(len(dims), dtype=np.int64), (np.arange(len(dims)), dims)), shape=(len(dims), top))
    return (onehot.T @ m @ onehot).toarray().astype(np.int64)


def f_matrix(e) -> np.ndarray:
    terms = as_element(e).terms
    if not terms:
        return np.zeros((0, 0), dtype=np.int64)
    mats = [(c, term_f_matrix(t)) for c, t in terms]
    n = max(m.shape[0] for _, m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    for c, m in mats:
        out[: m.shape[0], : m.shape[1]] += c * m
    return out


def _tuples_weighted(
    t: ProductTerm, k: int, semantics: WuSemantics
) -> dict[tuple[int, ...], int]:
    """Sum over admissible ordered k-tuples of cells of ``prod omega``, split by dimension tuple."""
    cells = t.basis.cells
    dims = t.basis.dims
    om = t.basis.omega
    out: dict[tuple[int, ...], int] = {}
    if semantics == "pairwise":
        m = connection_laplacian(t)
        nbrs = [frozenset(m.indices[m.indptr[i]:m.indptr[i + 1]].tolist()) for i in range(m.shape[0])]

        def grow(chosen: list[int], cand: frozenset[int]) -> None:
            if len(chosen) == k:
                key = tuple(int(dims[i]) for i in chosen)
                w = 1
                for i in chosen:
                    w *= int(om[i])
                out[key] = out.get(key, 0) + w
                return
            for j in cand:
                chosen.append(j)
                grow(chosen, cand & nbrs[j])
                chosen.pop()

        grow([], frozenset(range(len(cells))))
    else:
        sets = [tuple(frozenset(s) for s in c) for c in cells]

        def grow_common(chosen: list[int], inter: tuple[frozenset, ...] | None) -> None:
            if len(chosen) == k:
                key = tuple(int(dims[i]) for i in chosen)
                w = 1
                for i in chosen:
                    w *= int(om[i])
                out[key] = out.get(key, 0) + w
                return
            for j, s in enumerate(sets):
                new = s if inter is None else tuple(a & b for a, b in zip(inter, s))
                if all(new):
                    chosen.append(j)
                    grow_common(chosen, new)
                    chosen.pop()

        grow_common([], None)
    return {key: v for key, v in out.items() if v}


def term_wu(t: ProductTerm, k: int = 2, semantics: WuSemantics = "pairwise") -> int:
    if k < 1:
        raise BadOrder(f"Wu order must be >= 1, got {k}")
    om = t.basis.omega
    if k == 1:
        return int(om.sum())
    if k == 2:
        return int(om @ (connection_laplacian(t) @ om))
    if k == 3 and semantics == "pairwise":
        m = connection_laplacian(t)
        mw = m @ sps.diags_array(om) @ m
        return int((m.multiply(mw).multiply(np.outer(om, om))).sum())
    return sum(_tuples_weighted(t, k, semantics).values())


def wu_characteristic(e, k: int = 2, semantics: WuSemantics = "pairwise") -> int:
    """``omega_k``: sum over k-tuples of mutually intersecting cells of the product of signs.

    ``semantics="pairwise"`` asks every pair in the tuple to intersect (in
    every coordinate); ``"common"`` asks the whole tuple to share a vertex.
    The two agree for ``k <= 2``.
    """
    if k < 2:
        raise BadOrder(f"Wu characteristics start at order 2, got {k}")
    if semantics not in ("pairwise", "common"):
        raise BadOrder(f"unknown semantics {semantics!r}")
    return sum(c * term_wu(t, k, semantics) for c, t in as_element(e).terms)


def f_polynomial(e, k: int = 2) -> dict[tuple[int, ...], int]:
    """Multivariate generating function ``sum V_{i_1..i_k} t_1^i_1 ... t_k^i_k`` (pairwise tuples).

    Keys are exponent tuples.  ``k=1`` recovers the f-vector, ``k=2`` the f-matrix.
    """
    if k < 1:
        raise BadOrder(f"order must be >= 1, got {k}")
    acc: dict[tuple[int, ...], int] = {}
    for c, t in as_element(e).terms:
        if k == 1:
            part = {(i,): v for i, v in enumerate(term_f_vector(t)) if v}
        elif k == 2:
            V = term_f_matrix(t)
            part = {(i, j): int(V[i, j]) for i, j in zip(*np.nonzero(V))}
        else:
            part = _count_tuples(t, k)
        acc = _poly.multi_add(acc, {key: c * v for key, v in part.items()})
    return acc


def _count_tuples(t: ProductTerm, k: int) -> dict[tuple[int, ...], int]:
    m = connection_laplacian(t)
    dims = t.basis.dims
    nbrs = [frozenset(m.indices[m.indptr[i]:m.indptr[i + 1]].tolist()) for i in range(m.shape[0])]
    out: dict[tuple[int, ...], int] = {}

    def grow(chosen: list[int], cand: frozenset[int]) -> None:
        if len(chosen) == k:
            key = tuple(int(dims[i]) for i in chosen)
            out[key] = out.get(key, 0) + 1
            return
        for j in cand:
            chosen.append(j)
            grow(chosen, cand & nbrs[j])
            chosen.pop()

    grow([], frozenset(range(m.shape[0])))
    return out


def term_clique_number(t: ProductTerm) -> int:
    """Largest product of coordinate cell sizes, i.e. the product of factor clique numbers."""
    out = 1
    for f in t.factors:
        out *= f.dim + 1
    return out


def clique_number(e) -> int:
    """``c`` with ``c(a + b) = max``, ``c(a * b) = c(a) c(b)`` and ``c(-G) = -c(G)``."""
    terms = as_element(e).terms
    if not terms:
        return 0
    return max((1 if c > 0 else -1) * term_clique_number(t) for c, t in terms)

