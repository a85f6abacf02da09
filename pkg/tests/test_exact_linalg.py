from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from strongring import NotSquare, NotUnimodular, complete, cycle
from strongring.exact_linalg import (
    det_bareiss,
    det_exact,
    det_mod,
    det_multimodular,
    direct_sum,
    direct_sum_offsets,
    inverse_unimodular,
    kernel_basis,
    kronecker,
    matmul_exact,
    rank_rational,
    read_matrix_market,
    rref,
    solve_rational,
    write_matrix_market,
)
from strongring.operators import boundary_operators, connection_laplacian


def cofactor_det(m) -> int:
    m = [list(map(int, r)) for r in m]
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)) if m[0][j]
    )


def fraction_rank(m) -> int:
    rows = [[Fraction(int(x)) for x in r] for r in m]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] / rows[rank][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_cofactor_oracle_agrees_on_1200_random_matrices():
    rng = np.random.default_rng(1234)
    for _ in range(1200):
        n = int(rng.integers(1, 7))
        m = rng.integers(-3, 4, size=(n, n))
        expected = cofactor_det(m)
        assert det_bareiss(m) == expected
        assert det_exact(m) == expected
        assert det_multimodular(m) == expected


small_square = st.integers(1, 6).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(-3, 3)))


@given(small_square)
def test_det_matches_cofactor(m):
    assert det_exact(m) == cofactor_det(m)


@given(small_square, st.sampled_from([2, 3, 5, 2_147_483_647]))
def test_det_mod_is_residue(m, p):
    assert det_mod(m, p) == cofactor_det(m) % p


def test_two_by_two_and_trivia():
    assert det_exact([[3, 5], [7, 11]]) == 3 * 11 - 5 * 7
    assert det_exact([[1]]) == 1
    assert det_exact(connection_laplacian(complete(3))) == -1
    assert cofactor_det(connection_laplacian(complete(3)).toarray()) == -1


def test_not_square():
    with pytest.raises(NotSquare):
        det_exact(np.zeros((2, 3), dtype=int))


def test_large_determinant_is_exact():
    # entries of size 10^6 on 30x30 overflow float and int64 products
    rng = np.random.default_rng(7)
    m = rng.integers(-(10**6), 10**6, size=(30, 30))
    assert det_multimodular(m) == det_bareiss(m)
    big = connection_laplacian(cycle(130))
    assert det_exact(big) == 1


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_and_kernel(rows, cols, data):
    m = data.draw(arrays(np.int64, (rows, cols), elements=st.integers(-2, 2)))
    r = rank_rational(m)
    assert r == fraction_rank(m)
    ker = kernel_basis(m)
    assert r + len(ker) == cols
    for v in ker:
        assert all(sum(Fraction(int(a)) * x for a, x in zip(row, v)) == 0 for row in m)


def test_rank_examples():
    assert rank_rational(np.zeros((4, 4), dtype=int)) == 0
    assert len(kernel_basis(np.zeros((4, 4), dtype=int))) == 4
    k = np.array([[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]])
    (v,) = kernel_basis(k)
    assert len(set(v)) == 1
    (d0,) = boundary_operators(cycle(4))
    assert rank_rational(d0) == 3


def test_rref_and_solve():
    m = np.array([[1, 2, 3], [2, 4, 7]])
    reduced, pivots = rref(m)
    assert pivots == [0, 2]
    x = solve_rational(m, [1, 3])
    assert [sum(Fraction(int(a)) * b for a, b in zip(row, x)) for row in m] == [1, 3]


class TestInverse:
    def test_identity(self):
        assert np.array_equal(inverse_unimodular(np.eye(4, dtype=int)), np.eye(4, dtype=int))

    def test_edge_energy(self):
        g = inverse_unimodular(connection_laplacian(complete(2)))
        assert g.sum() == 1
        assert np.array_equal(matmul_exact(connection_laplacian(complete(2)).toarray(), g), np.eye(3, dtype=int))

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodular) as err:
            inverse_unimodular([[2, 0], [0, 1]])
        assert err.value.det == 2

    @given(st.integers(2, 6), st.integers(0, 2**31))
    @settings(max_examples=25)
    def test_random_unimodular(self, n, seed):
        # product of random unit triangular matrices
        rng = np.random.default_rng(seed)
        lo = np.tril(rng.integers(-2, 3, size=(n, n)), -1) + np.eye(n, dtype=int)
        up = np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.eye(n, dtype=int)
        m = lo @ up
        inv = inverse_unimodular(m)
        assert np.array_equal(matmul_exact(m, inv), np.eye(n, dtype=int))


class TestKronecker:
    def test_identity_blocks(self):
        m = np.array([[1, 2], [3, 4]])
        assert np.array_equal(kronecker(np.eye(2, dtype=int), m), direct_sum(m, m))

    @given(small_square, small_square)
    @settings(max_examples=30)
    def test_det_of_kronecker(self, a, b):
        if len(a) * len(b) > 16:
            return
        lhs = det_exact(kronecker(a, b))
        assert lhs == det_exact(a) ** len(b) * det_exact(b) ** len(a)

    def test_direct_sum_trace(self):
        a, b = np.arange(4).reshape(2, 2), np.arange(9).reshape(3, 3)
        s = direct_sum(a, b)
        assert np.trace(s) == np.trace(a) + np.trace(b)
        assert direct_sum_offsets([2, 3]) == [0, 2, 5]


def test_matrix_market_roundtrip(tmp_path):
    m = connection_laplacian(cycle(5))
    path = tmp_path / "l.mtx"
    write_matrix_market(path, m, [f"cell{i}" for i in range(10)])
    back = read_matrix_market(path)
    assert (back != m).nnz == 0
    assert (tmp_path / "l.mtx.json").exists()
