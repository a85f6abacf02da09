"""Betti numbers, interaction Betti numbers and Lefschetz numbers, all exact."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np
import scipy.sparse as sps

from ..core.complex import SimplicialComplex
from ..core.ring import ProductCell, ProductTerm
from ..errors import TooLarge
from ..exact_linalg import kernel_basis, rank_rational
from ..graph_ops import as_term
from ..operators import (
    Automorphism,
    boundary_operators,
    cell_permutation,
    interaction_derivative,
    koopman_matrix,
    operator_bundle,
)
from . import _poly
from ._poly import Poly
from .characteristics import as_element

BettiMethod = Literal["rank", "hodge", "kunneth"]

INTERACTION_CAP = 60


def _betti_from_ranks(sizes: list[int], ranks: list[int]) -> tuple[int, ...]:
    """``b_k = n_k - rank d_k - rank d_{k-1}`` with ``d_k : C^k -> C^{k+1}``."""
    out = []
    for k, n in enumerate(sizes):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(n - r_out - r_in)
    return tuple(out)


def term_betti(t: ProductTerm, method: BettiMethod = "rank") -> tuple[int, ...]:
    if method == "kunneth":
        acc: Poly = (1,)
        for f in t.factors:
            acc = _poly.mul(acc, term_betti(ProductTerm((f,)), "rank"))
        return acc
    sizes = list(np.bincount(t.kron_dims).tolist())
    if method == "hodge":
        bundle = operator_bundle(t, check=False)
        return tuple(n - rank_rational(h) for n, h in zip(sizes, bundle.blocks))
    ranks = [rank_rational(d) for d in boundary_operators(t)]
    return _betti_from_ranks(sizes, ranks)


def betti_numbers(e, method: BettiMethod = "rank") -> tuple[int, ...]:
    """Signed Betti vector, linear over the terms of ``e``.

    ``rank`` uses exact ranks of the derivative blocks, ``hodge`` exact ranks
    of the Hodge blocks ``H_k`` and ``kunneth`` multiplies the factor Poincare
    polynomials.
    """
    acc: Poly = ()
    for c, t in as_element(e).terms:
        acc = _poly.add(acc, _poly.scale(c, term_betti(t, method)))
    return acc


def poincare_polynomial(e, method: BettiMethod = "rank") -> Poly:
    """``p(t) = sum_k b_k t^k`` as ascending coefficients."""
    return betti_numbers(e, method)


def interaction_betti(g: SimplicialComplex, cap: int | None = INTERACTION_CAP) -> tuple[int, ...]:
    """Betti numbers of the cochain complex on intersecting ordered cell pairs."""
    if cap is not None and len(g) > cap:
        raise TooLarge(f"interaction cohomology capped at {cap} cells, complex has {len(g)}")
    ic = interaction_derivative(g)
    sizes = [ic.block(k).stop - ic.block(k).start for k in range(ic.top + 1)]
    ranks = [rank_rational(d) for d in ic.d_blocks]
    return _betti_from_ranks(sizes, ranks)


def _solve_square(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    """``a^{-1} b`` over the rationals for an invertible square ``a``."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for k in range(n):
        p = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[p] = aug[p], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]


def harmonic_basis(t: ProductTerm, k: int) -> list[list[Fraction]]:
    """Rational basis of harmonic k-cochains ``ker d_k  &  ker d_{k-1}^T``."""
    ds = boundary_operators(t)
    n = int(np.count_nonzero(t.basis.dims == k))
    parts = []
    if k < len(ds):
        parts.append(ds[k].toarray())
    if k >= 1:
        parts.append(ds[k - 1].toarray().T)
    if not parts:
        return kernel_basis(np.zeros((0, n), dtype=np.int64))
    return kernel_basis(np.vstack(parts))


def induced_trace(t: ProductTerm, T: Automorphism, k: int) -> Fraction:
    """Trace of the Koopman operator restricted to harmonic k-cochains.

    The Koopman matrix is a signed permutation commuting with ``d``, hence
    also with ``d^T``; it maps harmonic cochains to harmonic cochains, so
    ``U B = B M`` is solved exactly for the induced matrix ``M``.
    """
    basis = harmonic_basis(t, k)
    if not basis:
        return Fraction(0)
    blk = t.basis.block(k)
    U = koopman_matrix(t, T).toarray()[blk, blk]
    B = [list(col) for col in zip(*basis)]  # n_k x b
    UB = [[sum((Fraction(int(U[i, j])) * B[j][c] for j in range(len(B)) if U[i, j]), Fraction(0))
           for c in range(len(basis))] for i in range(len(B))]
    pivots = _independent_rows(B)
    M = _solve_square([B[i] for i in pivots], [UB[i] for i in pivots])
    return sum((M[i][i] for i in range(len(M))), Fraction(0))


def _independent_rows(B: list[list[Fraction]]) -> list[int]:
    """Indices of rows forming a basis of the row space of full-column-rank ``B``."""
    cols = len(B[0]) if B else 0
    chosen: list[int] = []
    echelon: list[list[Fraction]] = []
    leads: list[int] = []
    for i, row in enumerate(B):
        r = list(row)
        for e, lead in zip(echelon, leads):
            if r[lead] != 0:
                f = r[lead] / e[lead]
                r = [x - f * y for x, y in zip(r, e)]
        nz = next((j for j, x in enumerate(r) if x != 0), None)
        if nz is not None:
            echelon.append(r)
            leads.append(nz)
            chosen.append(i)
            if len(chosen) == cols:
                break
    return chosen


@dataclass(frozen=True)
class LefschetzReport:
    chi_T: int
    traces: tuple[Fraction, ...]
    fixed_indices: dict[ProductCell, int]

    @property
    def index_sum(self) -> int:
        return sum(self.fixed_indices.values())

    @property
    def consistent(self) -> bool:
        return self.index_sum == self.chi_T


def lefschetz(x, T: Automorphism, strict: bool = True) -> LefschetzReport:
    """Fixed-point indices ``omega(x) sign(T|x)`` and the cohomological Lefschetz number."""
    t = as_term(x)
    cp = cell_permutation(t, T)
    om = t.basis.omega
    fixed = {t.basis.cells[i]: int(om[i] * cp.sign[i]) for i in cp.fixed}
    top = int(t.basis.dims[-1])
    traces = tuple(induced_trace(t, T, k) for k in range(top + 1))
    chi = sum(((-1) ** k) * tr for k, tr in enumerate(traces))
    if chi.denominator != 1:
        raise ArithmeticError(f"non-integral Lefschetz number {chi}")
    report = LefschetzReport(int(chi), traces, fixed)
    if strict and not report.consistent:
        raise AssertionError(f"fixed-point sum {report.index_sum} != Lefschetz number {report.chi_T}")
    return report


def hodge_kernel_dims(t: ProductTerm) -> tuple[int, ...]:
    """Floating cross-check: numerical nullity of each Hodge block."""
    bundle = operator_bundle(t, check=False)
    out = []
    for h in bundle.blocks:
        w = np.linalg.eigvalsh(sps.csr_array(h).toarray().astype(float)) if h.shape[0] else np.zeros(0)
        out.append(int(np.count_nonzero(np.abs(w) < 1e-8)))
    return tuple(out)
