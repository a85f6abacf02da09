"""Linear operators on the cells of ring elements.

Orientation: each simplex is oriented by ascending vertex order and each
product cell by the ordered tensor of its factor simplices.  Derivatives use
the coboundary convention: ``d`` raises dimension by one, with
``d[y, x] = (-1)^i`` when ``x`` is ``y`` with its i-th vertex removed.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations

import numpy as np
import scipy.sparse as sps

from .core.complex import SimplicialComplex
from .core.ring import CellBasis, ProductCell, ProductTerm, RingElement, describe_cell
from .errors import BadParameter, NotAnAutomorphism
from .graph_ops import as_term, intersection_matrix


def coboundary_matrix(g: SimplicialComplex) -> sps.csr_array:
    """Full signed incidence ``d`` of one complex, in its cell order."""
    idx = g.index
    rows, cols, vals = [], [], []
    for j, y in enumerate(g.cells):
        if len(y) < 2:
            continue
        for i in range(len(y)):
            rows.append(j)
            cols.append(idx[y[:i] + y[i + 1:]])
            vals.append(-1 if i % 2 else 1)
    n = len(g)
    return sps.csr_array((np.array(vals, dtype=np.int64), (rows, cols)), shape=(n, n))


def _permute(m: sps.csr_array, p: np.ndarray) -> sps.csr_array:
    out = sps.csr_array(m)[p][:, p]
    out.sort_indices()
    return out


def exterior_derivative(x: ProductTerm | SimplicialComplex | RingElement) -> sps.csr_array:
    """``d`` on a product term, in CellBasis order.

    Factors are folded left to right with
    ``d(f (x) g) = df (x) g + (-1)^dim(f) f (x) dg``.
    """
    t = as_term(x)
    first = t.factors[0]
    d = coboundary_matrix(first)
    omega = first.omega
    for f in t.factors[1:]:
        n = len(f)
        d = sps.kron(d, sps.eye_array(n, dtype=np.int64), format="csr") + sps.kron(
            sps.diags_array(omega), coboundary_matrix(f), format="csr"
        )
        omega = np.kron(omega, f.omega)
    d = sps.csr_array(d, dtype=np.int64)
    d.eliminate_zeros()
    return _permute(d, t.basis.kron_index)


def boundary_operators(x) -> list[sps.csr_array]:
    """Graded pieces ``d_k``: k-cells -> (k+1)-cells, for k = 0 .. dim-1."""
    t = as_term(x)
    d, b = exterior_derivative(t), t.basis
    top = int(b.dims[-1])
    return [sps.csr_array(d[b.block(k + 1)][:, b.block(k)]) for k in range(top)]


@dataclass(frozen=True, eq=False)
class OperatorBundle:
    """``d``, Dirac ``D = d + d^T`` and Hodge ``H = D^2`` on one cell basis."""

    basis: CellBasis
    d: sps.csr_array
    D: sps.csr_array
    H: sps.csr_array

    @property
    def size(self) -> int:
        return len(self.basis)

    @cached_property
    def blocks(self) -> list[sps.csr_array]:
        """Hodge blocks ``H_k`` on the k-cells."""
        top = int(self.basis.dims[-1]) if self.size else -1
        return [sps.csr_array(self.H[self.basis.block(k)][:, self.basis.block(k)]) for k in range(top + 1)]

    @cached_property
    def d_blocks(self) -> list[sps.csr_array]:
        b = self.basis
        top = int(b.dims[-1]) if self.size else -1
        return [sps.csr_array(self.d[b.block(k + 1)][:, b.block(k)]) for k in range(top)]

    def check(self) -> None:
        """Assert d^2 = 0, symmetry of D and H, and block-diagonality of H."""
        if (self.d @ self.d).count_nonzero():
            raise AssertionError("d^2 != 0")
        if (self.D - self.D.T).count_nonzero() or (self.H - self.H.T).count_nonzero():
            raise AssertionError("D or H is not symmetric")
        coo = self.H.tocoo()
        if np.any(self.basis.dims[coo.row] != self.basis.dims[coo.col]):
            raise AssertionError("H mixes degrees")


def operator_bundle(x, check: bool = True) -> OperatorBundle:
    t = as_term(x)
    d = exterior_derivative(t)
    D = sps.csr_array(d + d.T)
    H = sps.csr_array(D @ D)
    H.eliminate_zeros()
    bundle = OperatorBundle(t.basis, d, D, H)
    if check:
        bundle.check()
    return bundle


def connection_laplacian(x) -> sps.csr_array:
    """``1 + A`` of the connection graph: Kronecker product of the factor Laplacians."""
    t = as_term(x)
    m = reduce(lambda a, b: sps.kron(a, b, format="csr"), (intersection_matrix(f) for f in t.factors))
    return _permute(m, t.basis.kron_index)


@dataclass(frozen=True, eq=False)
class ConnectionOperator:
    """Direct sum of ``+-L(term)`` over the expanded summands of a ring element.

    ``offsets[s]:offsets[s+1]`` indexes summand ``s``; ``signs[s]`` is its sign.
    """

    L: sps.csr_array
    terms: tuple[ProductTerm, ...]
    signs: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.L.shape[0]

    @cached_property
    def omega(self) -> np.ndarray:
        """``(-1)^dim`` of the cell behind every row."""
        if not self.terms:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([t.basis.omega for t in self.terms])

    @cached_property
    def row_sign(self) -> np.ndarray:
        if not self.terms:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([np.full(t.size, s, dtype=np.int64) for s, t in zip(self.signs, self.terms)])

    @property
    def basis(self) -> list[tuple[int, ProductCell]]:
        return [(s, c) for s, t in enumerate(self.terms) for c in t.basis.cells]

    def descriptors(self) -> list[str]:
        multi = len(self.terms) > 1
        return [(f"{s}:" if multi else "") + describe_cell(c) for s, c in self.basis]

    def dense(self) -> np.ndarray:
        return self.L.toarray()


def connection_operator(e: RingElement | ProductTerm | SimplicialComplex) -> ConnectionOperator:
    if isinstance(e, RingElement):
        summands = e.summands()
    else:
        summands = [(1, as_term(e))]
    blocks = [s * connection_laplacian(t) for s, t in summands]
    L = sps.block_diag(blocks, format="csr") if blocks else sps.csr_array((0, 0), dtype=np.int64)
    L = sps.csr_array(L, dtype=np.int64)
    sizes = [t.size for _, t in summands]
    offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(sizes, dtype=np.int64)]))
    return ConnectionOperator(L, tuple(t for _, t in summands), tuple(s for s, _ in summands), offsets)


@dataclass(frozen=True, eq=False)
class InteractionComplex:
    """Cochains on ordered pairs of intersecting cells of one complex."""

    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    dims: np.ndarray
    d: sps.csr_array

    @property
    def size(self) -> int:
        return len(self.pairs)

    def block(self, k: int) -> slice:
        lo, hi = np.searchsorted(self.dims, [k, k + 1])
        return slice(int(lo), int(hi))

    @property
    def top(self) -> int:
        return int(self.dims[-1]) if len(self.dims) else -1

    @cached_property
    def d_blocks(self) -> list[sps.csr_array]:
        return [sps.csr_array(self.d[self.block(k + 1)][:, self.block(k)]) for k in range(self.top)]

    def hodge_blocks(self) -> list[sps.csr_array]:
        D = self.d + self.d.T
        H = sps.csr_array(D @ D)
        return [sps.csr_array(H[self.block(k)][:, self.block(k)]) for k in range(self.top + 1)]


def interaction_derivative(g: SimplicialComplex) -> InteractionComplex:
    """Product derivative on ``G x G`` restricted to pairs ``(x, y)`` with ``x & y`` non-empty.

    Enlarging a cell keeps the intersection non-empty, so the restriction is
    again a cochain complex.
    """
    t = ProductTerm((g, g))
    full = exterior_derivative(t)
    keep = np.array([bool(set(x) & set(y)) for x, y in t.basis.cells])
    idx = np.nonzero(keep)[0]
    d = sps.csr_array(full[idx][:, idx])
    d.eliminate_zeros()
    return InteractionComplex(tuple(t.basis.cells[i] for i in idx), t.basis.dims[idx], d)


def _sort_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    s = 1
    for a, b in combinations(seq, 2):
        if a > b:
            s = -s
    return s


@dataclass(frozen=True)
class Automorphism:
    """Cell map given by vertex bijections per factor and an optional factor permutation.

    The image of ``(x_1, ..., x_m)`` has coordinate ``j`` equal to
    ``vertex_maps[p[j]]`` applied to ``x_{p[j]}`` where ``p = factor_perm``.
    """

    vertex_maps: tuple[Mapping[int, int], ...]
    factor_perm: tuple[int, ...] | None = None

    @classmethod
    def identity(cls, t: ProductTerm) -> Automorphism:
        return cls(tuple({v: v for v in f.vertices} for f in t.factors))

    @classmethod
    def of_vertex_map(cls, mapping: Mapping[int, int]) -> Automorphism:
        return cls((dict(mapping),))

    @classmethod
    def rotation(cls, n: int, steps: int = 1) -> Automorphism:
        return cls.of_vertex_map({v: (v + steps) % n for v in range(n)})

    @classmethod
    def swap(cls, t: ProductTerm, i: int = 0, j: int = 1) -> Automorphism:
        perm = list(range(len(t.factors)))
        perm[i], perm[j] = perm[j], perm[i]
        return cls(tuple({v: v for v in f.vertices} for f in t.factors), tuple(perm))

    def perm(self, m: int) -> tuple[int, ...]:
        return self.factor_perm if self.factor_perm is not None else tuple(range(m))

    def image(self, cell: ProductCell) -> tuple[ProductCell, int]:
        """Image cell and orientation sign ``sign(T|x)``."""
        p = self.perm(len(cell))
        sign = 1
        out = []
        for j in range(len(cell)):
            src = p[j]
            mapped = [self.vertex_maps[src][v] for v in cell[src]]
            sign *= _sort_sign(mapped)
            out.append(tuple(sorted(mapped)))
        # Koszul sign for reordering graded factors
        for a, b in combinations(range(len(cell)), 2):
            if p[a] > p[b] and (len(cell[p[a]]) - 1) * (len(cell[p[b]]) - 1) % 2:
                sign = -sign
        return tuple(out), sign


@dataclass(frozen=True, eq=False)
class CellPermutation:
    """``target[i]`` is the basis index of ``T(cell_i)``; ``sign[i]`` its orientation sign."""

    target: np.ndarray
    sign: np.ndarray

    @property
    def fixed(self) -> np.ndarray:
        return np.nonzero(self.target == np.arange(len(self.target)))[0]


def cell_permutation(t: ProductTerm, T: Automorphism) -> CellPermutation:
    m = len(t.factors)
    if len(T.vertex_maps) != m:
        raise NotAnAutomorphism(f"expected {m} vertex maps, got {len(T.vertex_maps)}")
    if sorted(T.perm(m)) != list(range(m)):
        raise NotAnAutomorphism("factor permutation is not a permutation")
    pos = t.basis.position
    target = np.empty(t.size, dtype=np.int64)
    sign = np.empty(t.size, dtype=np.int64)
    for i, cell in enumerate(t.basis.cells):
        try:
            img, s = T.image(cell)
        except KeyError as exc:
            raise NotAnAutomorphism(f"vertex {exc.args[0]} has no image") from None
        if any(len(set(c)) != len(c) for c in img):
            raise NotAnAutomorphism(f"cell {describe_cell(cell)} collapses")
        j = pos.get(img)
        if j is None:
            raise NotAnAutomorphism(f"image of {describe_cell(cell)} is not a cell")
        target[i], sign[i] = j, s
    if len(np.unique(target)) != len(target):
        raise NotAnAutomorphism("cell map is not injective")
    return CellPermutation(target, sign)


def koopman_matrix(t: ProductTerm | SimplicialComplex | RingElement, T: Automorphism) -> sps.csr_array:
    """Signed permutation ``(U f)(x) = sign(T|x) f(T x)``."""
    t = as_term(t)
    cp = cell_permutation(t, T)
    n = t.size
    return sps.csr_array((cp.sign, (np.arange(n), cp.target)), shape=(n, n))


@dataclass(frozen=True)
class OperatorExport:
    matrix: sps.csr_array
    descriptors: list[str] = field(default_factory=list)


def operator_for_tag(e: RingElement, tag: str) -> OperatorExport:
    """Matrix named by ``tag`` (L, H, D, d, kirchhoff) with row descriptors."""
    key = tag.lower()
    if key == "l":
        op = connection_operator(e)
        return OperatorExport(op.L, op.descriptors())
    t = as_term(e)
    descr = t.basis.descriptors()
    if key == "kirchhoff":
        b = operator_bundle(t, check=False)
        return OperatorExport(b.blocks[0], descr[b.basis.block(0)])
    b = operator_bundle(t)
    mats = {"h": b.H, "d": b.D}
    if tag == "d":
        return OperatorExport(b.d, descr)
    if key not in mats:
        raise BadParameter(f"unknown operator {tag!r}")
    return OperatorExport(mats[key], descr)
