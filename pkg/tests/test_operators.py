from itertools import permutations

import numpy as np
import pytest
from hypothesis import given

from strongring import (
    NotAnAutomorphism,
    ProductTerm,
    RingElement,
    complete,
    cycle,
    octahedron,
    parse_ring_expression,
    path,
)
from strongring.exact_linalg import det_exact, kronecker
from strongring.graph_ops import connection_graph
from strongring.invariants import fermi_characteristic, f_matrix
from strongring.operators import (
    Automorphism,
    boundary_operators,
    connection_laplacian,
    connection_operator,
    exterior_derivative,
    interaction_derivative,
    koopman_matrix,
    operator_bundle,
    operator_for_tag,
)

from .conftest import complexes


def term(*factors) -> ProductTerm:
    e = RingElement.one()
    for f in factors:
        e = e * RingElement.of(f)
    return e.single_term()


def coboundary_oracle(g):
    """Signed incidence by definition: d[y, x] = (-1)^i when x is y without its i-th vertex."""
    cells = list(g.cells)
    idx = {c: i for i, c in enumerate(cells)}
    d = np.zeros((len(cells), len(cells)), dtype=int)
    for y in cells:
        for i in range(len(y)):
            x = y[:i] + y[i + 1:]
            if x:
                d[idx[y], idx[x]] = (-1) ** i
    return d


class TestDerivative:
    @given(complexes(max_cells=25))
    def test_single_complex_matches_definition(self, g):
        assert np.array_equal(exterior_derivative(g).toarray(), coboundary_oracle(g))

    @given(complexes(max_cells=10), complexes(max_cells=10))
    def test_product_d_squared_zero(self, a, b):
        b_ = operator_bundle(term(a, b))
        assert (b_.d @ b_.d).count_nonzero() == 0

    def test_grid_has_fifteen_cells(self):
        b = operator_bundle(term(path(2), path(3)))
        assert b.size == 15
        assert b.d.shape == (15, 15)

    def test_edge_derivative(self):
        (d0,) = boundary_operators(complete(2))
        assert d0.toarray().tolist() == [[-1, 1]]

    def test_three_factor_fold_is_associative(self):
        a, b, c = complete(2), cycle(4), path(3)
        t = term(a, b, c)
        b3 = operator_bundle(t)
        assert (b3.d @ b3.d).count_nonzero() == 0
        # Hodge spectrum is additive, independent of how the fold is bracketed
        lhs = np.sort(np.linalg.eigvalsh(b3.H.toarray().astype(float)))
        parts = [np.linalg.eigvalsh(operator_bundle(f).H.toarray().astype(float)) for f in t.factors]
        rhs = np.sort(np.add.outer(np.add.outer(parts[0], parts[1]).ravel(), parts[2]).ravel())
        assert np.allclose(lhs, rhs)


class TestBundle:
    def test_square_kirchhoff(self):
        b = operator_bundle(cycle(4))
        h0 = b.blocks[0].toarray()
        assert np.array_equal(h0, 2 * np.eye(4, dtype=int) - (np.roll(np.eye(4), 1, 1) + np.roll(np.eye(4), -1, 1)))
        assert np.allclose(np.linalg.eigvalsh(h0.astype(float)), [0, 2, 2, 4])

    def test_sphere_product_size(self):
        e = parse_ring_expression("Oct * Susp(Oct)")
        b = operator_bundle(e.single_term())
        assert b.H.shape == (2080, 2080)
        assert len(b.blocks) == 6

    def test_point(self):
        b = operator_bundle(complete(1))
        assert b.D.toarray().tolist() == [[0]]
        assert b.H.toarray().tolist() == [[0]]

    @given(complexes(max_cells=12), complexes(max_cells=8))
    def test_bundle_invariants(self, a, b):
        operator_bundle(term(a, b), check=True)


class TestConnectionOperator:
    def test_worked_example(self):
        op = connection_operator(parse_ring_expression("C4 - 2*K3 + L2*L3"))
        assert op.size == 8 + 7 + 7 + 15
        assert op.signs == (1, -1, -1, 1)
        dense = op.dense()
        assert np.array_equal(dense[8:15, 8:15], -connection_laplacian(complete(3)).toarray())
        assert np.array_equal(np.diag(dense), op.row_sign)

    def test_is_one_plus_adjacency(self):
        g = octahedron()
        conn = connection_graph(g)
        assert np.array_equal(
            connection_laplacian(g).toarray(), np.eye(26, dtype=int) + conn.adjacency_matrix().toarray()
        )

    @given(complexes(max_cells=25))
    def test_trace_and_negation(self, g):
        e = RingElement.of(g)
        assert connection_operator(e).L.trace() == len(g)
        assert np.array_equal(connection_operator(-e).dense(), -connection_operator(e).dense())

    @given(complexes(max_cells=10), complexes(max_cells=10))
    def test_kronecker_identity(self, a, b):
        t = term(a, b)
        k = kronecker(connection_laplacian(t.factors[0]).toarray(), connection_laplacian(t.factors[1]).toarray())
        p = t.basis.kron_index
        assert np.array_equal(connection_laplacian(t).toarray(), k[np.ix_(p, p)])

    @given(complexes(max_cells=40))
    def test_unimodular(self, g):
        assert det_exact(connection_laplacian(g)) == fermi_characteristic(RingElement.of(g))

    def test_empty(self):
        assert connection_operator(RingElement.zero()).size == 0


class TestInteraction:
    def test_edge_pairs(self):
        ic = interaction_derivative(complete(2))
        assert ic.size == 7
        assert ic.size == int(f_matrix(RingElement.of(complete(2))).sum())

    @given(complexes(max_cells=20))
    def test_d_squared_and_size(self, g):
        ic = interaction_derivative(g)
        assert (ic.d @ ic.d).count_nonzero() == 0
        assert ic.size == int(f_matrix(RingElement.of(g)).sum())


class TestKoopman:
    def test_identity(self):
        t = term(cycle(5))
        u = koopman_matrix(t, Automorphism.identity(t))
        assert np.array_equal(u.toarray(), np.eye(10, dtype=int))

    def test_rotation_has_no_fixed_cells(self):
        u = koopman_matrix(cycle(4), Automorphism.rotation(4))
        assert not u.diagonal().any()

    def test_swap_fixes_the_square(self):
        t = term(complete(2), complete(2))
        u = koopman_matrix(t, Automorphism.swap(t)).toarray()
        fixed = [t.basis.cells[i] for i in np.nonzero(np.diag(u))[0]]
        assert ((0, 1), (0, 1)) in fixed
        assert [c for c in fixed if sum(len(x) - 1 for x in c) == 2] == [((0, 1), (0, 1))]

    @pytest.mark.parametrize("perm", list(permutations(range(3))))
    def test_factor_permutations_commute_with_d(self, perm):
        t = term(complete(2), complete(2), complete(2))
        T = Automorphism(tuple({0: 0, 1: 1} for _ in range(3)), perm)
        u = koopman_matrix(t, T)
        d = exterior_derivative(t)
        assert (u @ d - d @ u).count_nonzero() == 0

    @pytest.mark.parametrize("n,k", [(4, 1), (5, 2), (6, 3)])
    def test_rotations_and_reflections_commute_with_d(self, n, k):
        d = exterior_derivative(cycle(n))
        for T in (Automorphism.rotation(n, k), Automorphism.of_vertex_map({v: (-v) % n for v in range(n)})):
            u = koopman_matrix(cycle(n), T)
            assert (u @ d - d @ u).count_nonzero() == 0

    def test_not_an_automorphism(self):
        with pytest.raises(NotAnAutomorphism):
            koopman_matrix(path(3), Automorphism.of_vertex_map({0: 1, 1: 0, 2: 2}))


def test_operator_tags():
    e = parse_ring_expression("K2*K2")
    assert operator_for_tag(e, "L").matrix.shape == (9, 9)
    assert operator_for_tag(e, "kirchhoff").matrix.shape == (4, 4)
    assert operator_for_tag(e, "d").matrix.shape == (9, 9)
    assert len(operator_for_tag(e, "H").descriptors) == 9
