"""Exact integer and rational linear algebra.

Integer matrices are plain numpy arrays (``int64`` when entries fit, ``object``
holding Python ints otherwise) or ``scipy.sparse`` arrays; rational results use
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse as sps

from .errors import NotSquare, NotUnimodular

_I64_SAFE = 2**62
BAREISS_LIMIT = 120


def as_dense(m) -> np.ndarray:
    """Dense integer array; ``object`` dtype is kept, other dtypes become int64."""
    if sps.issparse(m):
        m = m.toarray()
    a = np.asarray(m)
    if a.dtype == object:
        return a
    if a.dtype.kind == "f":
        if not np.all(a == np.round(a)):
            raise ValueError("matrix has non-integer entries")
    return a.astype(np.int64)


def _square(a: np.ndarray) -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return a.shape[0]


def det_bareiss(m) -> int:
    """Fraction-free Gaussian elimination on Python integers."""
    a = as_dense(m).astype(object)
    n = _square(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k, k] == 0:
            nz = np.nonzero(a[k + 1:, k])[0]
            if len(nz) == 0:
                return 0
            i = k + 1 + int(nz[0])
            a[[k, i]] = a[[i, k]]
            sign = -sign
        piv = a[k, k]
        a[k + 1:, k + 1:] = (a[k + 1:, k + 1:] * piv - np.outer(a[k + 1:, k], a[k, k + 1:])) // prev
        a[k + 1:, k] = 0
        prev = piv
    return sign * int(a[n - 1, n - 1])


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes_below_2_31(count: int) -> tuple[int, ...]:
    out, p = [], 2**31 - 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return tuple(out)


def det_mod(m, p: int) -> int:
    """Determinant modulo a prime ``p < 2**31`` by vectorized elimination."""
    a = as_dense(m)
    a = np.mod(a, p).astype(np.int64)
    n = _square(a)
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if len(nz) == 0:
            return 0
        i = k + int(nz[0])
        if i != k:
            a[[k, i]] = a[[i, k]]
            det = -det
        piv = int(a[k, k])
        det = det * piv % p
        inv = pow(piv, -1, p)
        rows = k + 1 + np.nonzero(a[k + 1:, k])[0]
        if len(rows):
            factors = a[rows, k] * inv % p
            a[rows, k:] = (a[rows, k:] - np.outer(factors, a[k, k:]) % p) % p
    return det % p


def hadamard_log2(m) -> float:
    a = as_dense(m).astype(float)
    norms = np.sqrt((a * a).sum(axis=1))
    if np.any(norms == 0):
        return 0.0
    return float(np.log2(norms).sum())


def det_multimodular(m) -> int:
    """Determinant by CRT over enough primes to exceed twice the Hadamard bound."""
    a = as_dense(m)
    _square(a)
    need = hadamard_log2(a) + 2
    primes = _primes_below_2_31(max(1, math.ceil(need / 30.9)))
    residue, modulus = 0, 1
    for p in primes:
        r = det_mod(a, p)
        # combine x = residue (mod modulus), x = r (mod p)
        t = (r - residue) * pow(modulus, -1, p) % p
        residue += modulus * t
        modulus *= p
    return residue - modulus if residue > modulus // 2 else residue


def det_exact(m) -> int:
    a = as_dense(m)
    n = _square(a)
    return det_bareiss(a) if n <= BAREISS_LIMIT else det_multimodular(a)


def matmul_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer product, in int64 when a bound proves it cannot overflow."""
    a, b = as_dense(a), as_dense(b)
    if a.dtype != object and b.dtype != object:
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * max(a.shape[1], 1)
        if bound < _I64_SAFE:
            return a @ b
    return a.astype(object) @ b.astype(object)


def _narrow(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and a.size and max(abs(int(x)) for x in a.flat) < _I64_SAFE:
        return a.astype(np.int64)
    return a


def _gauss_jordan_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.empty((n, 2 * n), dtype=object)
    aug[:, :n] = [[Fraction(int(x)) for x in row] for row in a]
    aug[:, n:] = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        nz = np.nonzero(aug[k:, k])[0]
        i = k + int(nz[0])
        if i != k:
            aug[[k, i]] = aug[[i, k]]
        aug[k] = aug[k] / aug[k, k]
        col = aug[:, k].copy()
        col[k] = 0
        aug -= np.outer(col, aug[k])
    inv = aug[:, n:]
    return np.vectorize(lambda f: int(f), otypes=[object])(inv)


def inverse_unimodular(m) -> np.ndarray:
    """Exact integer inverse of a determinant +-1 matrix, verified by multiplication.

    A rounded floating inverse is tried first and accepted only if the exact
    product with ``m`` is the identity; otherwise the determinant is checked
    and the inverse comes from exact Gauss-Jordan elimination.
    """
    a = as_dense(m)
    n = _square(a)
    eye = np.eye(n, dtype=np.int64)
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    try:
        with np.errstate(all="ignore"):
            approx = np.linalg.inv(a.astype(float))
        if np.all(np.isfinite(approx)) and np.abs(approx).max() < 2**52:
            cand = np.rint(approx).astype(np.int64)
            if np.array_equal(matmul_exact(a, cand), eye):
                return cand
    except np.linalg.LinAlgError:
        pass
    det = det_exact(a)
    if det not in (1, -1):
        raise NotUnimodular(det)
    inv = _narrow(_gauss_jordan_inverse(a))
    if not np.array_equal(matmul_exact(a, inv), eye):
        raise ArithmeticError("exact inverse failed verification")
    return inv


def _sparse_rows(m) -> list[dict[int, int]]:
    s = sps.csr_array(m)
    s.eliminate_zeros()
    rows = []
    for i in range(s.shape[0]):
        lo, hi = s.indptr[i], s.indptr[i + 1]
        if hi > lo:
            rows.append({int(c): int(v) for c, v in zip(s.indices[lo:hi], s.data[lo:hi])})
    return rows


def _row_gcd(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def echelon_pivots(m) -> dict[int, dict[int, int]]:
    """Fraction-free sparse row echelon form keyed by pivot column.

    Each incoming row is reduced against existing pivots until its leading
    column is free; rows are kept primitive by dividing out content.
    """
    pivots: dict[int, dict[int, int]] = {}
    rows = _sparse_rows(m) if not isinstance(m, list) else m
    rows.sort(key=len)
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _row_gcd(row)
                break
            a, b = p[lead], row[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {c: a * v for c, v in row.items()}
            for c, v in p.items():
                x = new.get(c, 0) - b * v
                if x:
                    new[c] = x
                else:
                    new.pop(c, None)
            row = _row_gcd(new) if new else new
    return pivots


def rank_rational(m) -> int:
    """Exact rank over the rationals (sparse fraction-free elimination)."""
    if sps.issparse(m):
        return len(echelon_pivots(m))
    a = as_dense(m)
    if a.size == 0:
        return 0
    if a.dtype == object:
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in a]
        return len(echelon_pivots([r for r in rows if r]))
    return len(echelon_pivots(sps.csr_array(a)))


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    a = as_dense(m)
    return _rref_rows([[Fraction(int(x)) for x in r] for r in a], a.shape[1])


def kernel_basis(m) -> list[list[Fraction]]:
    """Basis of the rational null space, one vector per free column."""
    a = as_dense(m)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_rational(a, b) -> list[Fraction]:
    """One solution of ``a x = b`` over the rationals (``a`` must be consistent)."""
    a = as_dense(a)
    aug = np.concatenate([a.astype(object), np.asarray(b, dtype=object).reshape(-1, 1)], axis=1)
    rows = [[Fraction(x) for x in r] for r in aug]
    reduced, pivots = _rref_rows(rows, a.shape[1])
    x = [Fraction(0)] * a.shape[1]
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return x


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots, r = [], 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def kronecker(a, b):
    """Kronecker product; row ``i*rows(b)+k`` pairs row i of ``a`` with row k of ``b``."""
    if sps.issparse(a) or sps.issparse(b):
        return sps.kron(sps.csr_array(a), sps.csr_array(b), format="csr")
    return np.kron(as_dense(a), as_dense(b))


def kron_position(i: int, j: int, size_b: int) -> int:
    return i * size_b + j


def direct_sum(*blocks):
    """Block diagonal matrix; block ``k`` starts at ``direct_sum_offsets(...)[k]``."""
    if any(sps.issparse(b) for b in blocks):
        return sps.block_diag([sps.csr_array(b) for b in blocks], format="csr")
    dense = [as_dense(b) for b in blocks]
    n = sum(b.shape[0] for b in dense)
    mcols = sum(b.shape[1] for b in dense)
    dtype = object if any(b.dtype == object for b in dense) else np.int64
    out = np.zeros((n, mcols), dtype=dtype)
    r = c = 0
    for b in dense:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def direct_sum_offsets(sizes: Sequence[int]) -> list[int]:
    return [0, *np.cumsum(sizes).tolist()]


def write_matrix_market(path: str | Path, m, descriptors: Sequence[str] | None = None, comment: str = "") -> None:
    """Coordinate Matrix Market file plus an optional ``<path>.json`` index -> cell map."""
    path = Path(path)
    s = sps.coo_array(m)
    if s.dtype.kind in "iub":
        s = s.astype(np.int64)
        field = "integer"
    else:
        field = "real"
    scipy.io.mmwrite(str(path), s, comment=comment, field=field)
    if descriptors is not None:
        sidecar = path.with_suffix(path.suffix + ".json")
        sidecar.write_text(json.dumps({str(i): d for i, d in enumerate(descriptors)}, indent=0))


def read_matrix_market(path: str | Path) -> sps.csr_array:
    return sps.csr_array(scipy.io.mmread(str(path)))
