from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongring import (
    BadOrder,
    EmptyTerm,
    NotASingleTerm,
    NotLocallyInjective,
    ProductTerm,
    RingElement,
    TooLarge,
    TooLargeForExact,
    complete,
    cycle,
    cylinder,
    mobius,
    octahedron,
    parse_ring_expression,
    path,
    whitney_complex,
)
from strongring.graph import Graph
from strongring.graph_ops import barycentric_graph, skeleton_graph, sublevel_sphere, unit_sphere
from strongring.invariants import (
    FIELDS,
    betti_numbers,
    clique_number,
    curvature,
    dimension,
    euler_characteristic,
    euler_polynomial,
    f_matrix,
    f_polynomial,
    f_vector,
    fermi_characteristic,
    green_functions,
    hodge_kernel_dims,
    index_expectation,
    interaction_betti,
    invariant_report,
    lefschetz,
    mckean_singer,
    poincare_hopf,
    poincare_polynomial,
    term_curvature,
    term_indices,
    wu_characteristic,
)
from strongring.invariants import _poly
from strongring.operators import Automorphism

from .conftest import complexes, elements


def el(*factors) -> RingElement:
    e = RingElement.one()
    for f in factors:
        e = e * RingElement.of(f)
    return e


def brute_wu(g) -> int:
    cells = list(g.cells)
    return sum((-1) ** (len(x) + len(y)) for x in cells for y in cells if set(x) & set(y))


def alternating(v) -> int:
    return sum((-1) ** k * b for k, b in enumerate(v))


class TestCharacteristics:
    def test_examples(self):
        assert euler_characteristic(cycle(4)) == 0
        assert euler_characteristic(parse_ring_expression("C4 - 2*K3 + L2*L3")) == -1
        assert fermi_characteristic(RingElement.one()) == 1
        assert fermi_characteristic(RingElement.of(complete(3))) == -1

    def test_fermi_needs_single_term(self):
        with pytest.raises(NotASingleTerm):
            fermi_characteristic(-RingElement.of(complete(3)))

    @given(elements(), elements())
    def test_homomorphisms(self, a, b):
        for inv in (euler_characteristic, wu_characteristic):
            assert inv(a * b) == inv(a) * inv(b)
            assert inv(a + b) == inv(a) + inv(b)
        assert euler_polynomial(a * b) == _poly.mul(euler_polynomial(a), euler_polynomial(b))
        assert euler_polynomial(a + b) == _poly.add(euler_polynomial(a), euler_polynomial(b))

    @given(elements(max_terms=2, max_cells=8), elements(max_terms=2, max_cells=8))
    @settings(max_examples=15)
    def test_cubic_wu_and_f_polynomial_homomorphisms(self, a, b):
        assert wu_characteristic(a * b, 3) == wu_characteristic(a, 3) * wu_characteristic(b, 3)
        fa, fb, fab = f_polynomial(a), f_polynomial(b), f_polynomial(a * b)
        assert fab == _poly.multi_mul(fa, fb)
        assert f_polynomial(a + b) == _poly.multi_add(fa, fb)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_wu_of_simplex(self, n):
        assert wu_characteristic(RingElement.of(complete(n))) == (-1) ** (n - 1)

    @pytest.mark.parametrize("n", [4, 5, 9])
    def test_wu_of_circle(self, n):
        assert wu_characteristic(RingElement.of(cycle(n))) == 0 == brute_wu(cycle(n))

    @given(complexes(max_cells=25))
    def test_wu_brute_force(self, g):
        assert wu_characteristic(RingElement.of(g)) == brute_wu(g)

    def test_wu_order(self):
        with pytest.raises(BadOrder):
            wu_characteristic(RingElement.of(cycle(4)), 1)

    def test_octahedron_polynomial(self):
        e = RingElement.of(octahedron())
        assert euler_polynomial(e) == (6, 12, 8)
        assert _poly.evaluate(euler_polynomial(e), -1) == 2

    def test_f_matrix_edge(self):
        assert int(f_matrix(RingElement.of(complete(2))).sum()) == 7

    @given(complexes(max_cells=20))
    def test_f_matrix_brute_force(self, g):
        m = f_matrix(RingElement.of(g))
        for i, j in [(0, 0), (0, 1), (1, 1)]:
            count = sum(
                1 for x in g.cells for y in g.cells if len(x) == i + 1 and len(y) == j + 1 and set(x) & set(y)
            )
            assert (m[i, j] if i < m.shape[0] and j < m.shape[1] else 0) == count

    def test_negated_f_vector(self):
        assert f_vector(-RingElement.of(complete(2))) == (-2, -1)


class TestBetti:
    def test_examples(self):
        assert betti_numbers(cycle(4)) == (1, 1)
        e = parse_ring_expression("Oct * Susp(Oct)")
        assert betti_numbers(e) == (1, 0, 1, 1, 0, 1)
        assert poincare_polynomial(e) == _poly.mul((1, 0, 1), (1, 0, 0, 1))

    @given(complexes(max_cells=30))
    def test_rank_equals_hodge_kernel(self, g):
        t = ProductTerm.of(g)
        assert betti_numbers(g) == _poly.trim(hodge_kernel_dims(t))
        assert alternating(betti_numbers(g)) == g.euler_characteristic

    @given(complexes(max_cells=12), complexes(max_cells=12))
    @settings(max_examples=25)
    def test_kuenneth(self, a, b):
        assert poincare_polynomial(el(a, b)) == _poly.mul(poincare_polynomial(a), poincare_polynomial(b))

    def test_negation(self):
        assert betti_numbers(-RingElement.of(cycle(4))) == (-1, -1)


class TestInteractionCohomology:
    @given(complexes(max_cells=25))
    @settings(max_examples=20)
    def test_alternating_sum_is_wu(self, g):
        assert alternating(interaction_betti(g, cap=None)) == wu_characteristic(RingElement.of(g))

    def test_point(self):
        assert interaction_betti(complete(1)) == (1,)

    def test_cylinder_and_moebius_differ(self):
        cyl, mob = cylinder(), mobius()
        assert cyl.f_vector == mob.f_vector
        assert interaction_betti(cyl, cap=None) != interaction_betti(mob, cap=None)
        assert interaction_betti(cyl, cap=None) == (0, 0, 1, 1, 0)
        assert interaction_betti(mob, cap=None) == (0, 0, 0, 0, 0)

    def test_cap(self):
        with pytest.raises(TooLarge):
            interaction_betti(octahedron(), cap=10)


class TestCurvature:
    def test_octahedron(self):
        k = curvature(octahedron())
        assert set(k.values.values()) == {Fraction(1, 3)}
        assert k.total == 2

    def test_circle_is_flat(self):
        assert set(curvature(cycle(7)).values.values()) == {0}

    @given(elements())
    def test_gauss_bonnet(self, e):
        assert curvature(e).total == euler_characteristic(e)

    @given(complexes(max_cells=12), complexes(max_cells=12))
    @settings(max_examples=20)
    def test_product_rule(self, a, b):
        t = el(a, b).single_term()
        ka, kb = term_curvature(ProductTerm.of(t.factors[0])), term_curvature(ProductTerm.of(t.factors[1]))
        for (u, v), k in term_curvature(t).items():
            assert k == ka[(u,)] * kb[(v,)]

    def test_point(self):
        assert curvature(complete(1)).total == 1


def sublevel_index_oracle(g, f) -> dict:
    """1 - chi(S^-(v)) on the Whitney complex of the 1-skeleton."""
    s = skeleton_graph(g)
    vals = [f[v] for v in s.labels]
    out = {}
    for i, v in enumerate(s.labels):
        out[v] = 1 - whitney_complex(sublevel_sphere(s, vals, i)).euler_characteristic
    return out


class TestPoincareHopf:
    @given(complexes(max_cells=30), st.randoms(use_true_random=False))
    def test_random_orders(self, g, rnd):
        vals = list(range(g.vertex_count))
        rnd.shuffle(vals)
        f = dict(zip(g.vertices, vals))
        idx = poincare_hopf(g, f)
        assert idx.total == g.euler_characteristic
        assert {v[0]: i for (_, v), i in idx.indices.items()} == sublevel_index_oracle(g, f)

    def test_dimension_function_on_refinement(self):
        # on the refinement every cell is a vertex; ranking by dimension gives index omega
        g = octahedron()
        bary = barycentric_graph(g)
        refined = whitney_complex(bary)
        f = {i: len(g.cells[i]) for i in range(len(g.cells))}
        idx = term_indices(ProductTerm.of(refined), f)
        assert all(idx[(i,)] == (-1) ** (len(g.cells[i]) - 1) for i in range(len(g.cells)))
        assert sum(idx.values()) == 2

    def test_height_on_square(self):
        idx = poincare_hopf(cycle(4), {0: 0, 1: 1, 2: 3, 3: 2})
        assert sorted(idx.indices.values()) == [-1, 0, 0, 1]

    @given(complexes(max_cells=10), complexes(max_cells=10), st.randoms(use_true_random=False))
    @settings(max_examples=20)
    def test_product_indices(self, a, b, rnd):
        t = el(a, b).single_term()
        fs = []
        for f in t.factors:
            vals = list(range(f.vertex_count))
            rnd.shuffle(vals)
            fs.append(dict(zip(f.vertices, vals)))
        # lexicographic product ordering is locally injective on product cells
        n = max(fs[1].values()) + 1
        joint = {(u, v): fs[0][u] * n + fs[1][v] for u in t.factors[0].vertices for v in t.factors[1].vertices}
        idx = term_indices(t, joint)
        ia, ib = term_indices(ProductTerm.of(t.factors[0]), fs[0]), term_indices(ProductTerm.of(t.factors[1]), fs[1])
        assert all(idx[(u, v)] == ia[(u,)] * ib[(v,)] for u, v in idx)

    def test_not_locally_injective(self):
        with pytest.raises(NotLocallyInjective):
            poincare_hopf(cycle(4), {0: 0, 1: 0, 2: 1, 3: 2})


class TestIndexExpectation:
    @given(complexes(max_vertices=7, max_cells=60))
    @settings(max_examples=15)
    def test_exact_equals_curvature(self, g):
        assert index_expectation(g, mode="exact").values == curvature(g).values

    def test_square(self):
        assert set(index_expectation(cycle(4)).values.values()) == {0}

    def test_point(self):
        assert index_expectation(complete(1)).total == 1

    def test_monte_carlo_octahedron(self):
        mc = index_expectation(octahedron(), mode="monte_carlo", seed=3, samples=100_000)
        assert mc.max_deviation(curvature(octahedron())) < 0.01

    def test_exact_limit(self):
        with pytest.raises(TooLargeForExact):
            index_expectation(cycle(9), mode="exact")


class TestGreen:
    def test_point(self):
        g = green_functions(complete(1))
        assert g.g.tolist() == [[1]]
        assert g.total == 1

    def test_worked_example(self):
        assert green_functions(parse_ring_expression("C4 - 2*K3 + L2*L3")).total == -1

    @given(elements())
    def test_energy_theorem(self, e):
        g = green_functions(e)
        assert g.total == euler_characteristic(e)
        assert g.super_trace == euler_characteristic(e)
        assert g.diagonal_identity_holds()

    @given(complexes(max_cells=30))
    def test_factor_route_agrees(self, g):
        e = el(g, path(2))
        assert np.array_equal(green_functions(e, method="factor").g, green_functions(e, method="direct").g)

    @given(complexes(max_cells=25))
    def test_diagonal_is_one_minus_sphere_euler(self, g):
        # diagonal Green entries against unit spheres in the refinement (probe, see notes)
        bary = barycentric_graph(g)
        diag = green_functions(g).diagonal
        for i in range(len(g.cells)):
            sphere = whitney_complex(unit_sphere(bary, i))
            assert diag[i] == 1 - sphere.euler_characteristic


class TestLefschetz:
    @given(complexes(max_cells=25))
    def test_identity(self, g):
        t = ProductTerm.of(g)
        r = lefschetz(t, Automorphism.identity(t))
        assert r.chi_T == g.euler_characteristic == r.index_sum

    def test_square_swap(self):
        t = el(complete(2), complete(2)).single_term()
        r = lefschetz(t, Automorphism.swap(t))
        assert r.chi_T == 1 == r.index_sum
        assert r.fixed_indices[((0, 1), (0, 1))] == -1

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_rotations(self, n):
        for k in range(1, n):
            r = lefschetz(cycle(n), Automorphism.rotation(n, k))
            assert r.chi_T == 0 and not r.fixed_indices

    def test_reflection(self):
        r = lefschetz(cycle(6), Automorphism.of_vertex_map({v: (-v) % 6 for v in range(6)}))
        assert r.consistent
        assert r.chi_T == 2


class TestMcKeanSinger:
    def test_contractible(self):
        r = mckean_singer(complete(4))
        assert r.ok and r.chi == 1

    def test_sphere_product(self):
        r = mckean_singer(parse_ring_expression("Oct * Susp(Oct)"))
        assert r.ok and r.chi == 0 and r.green_super_trace == 0

    @given(elements())
    @settings(max_examples=20)
    def test_random(self, e):
        assert mckean_singer(e).ok


class TestDimension:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_simplex(self, n):
        assert dimension(complete(n)) == [n - 1]

    def test_product_adds(self):
        assert dimension(el(path(2), path(3))) == [2]
        assert dimension(el(cycle(4), complete(3))) == [3]

    def test_zero_excluded(self):
        with pytest.raises(EmptyTerm):
            dimension(RingElement.zero())

    def test_graph_dimension(self):
        from strongring.invariants import graph_inductive_dimension

        assert graph_inductive_dimension(Graph.cycle(5)) == 1
        assert graph_inductive_dimension(Graph.complete(4)) == 3
        assert graph_inductive_dimension(Graph.path(3)) == Fraction(1)


class TestCliqueNumber:
    def test_rules(self):
        k3, k2 = RingElement.of(complete(3)), RingElement.of(complete(2))
        assert clique_number(k3) == 3
        assert clique_number(k3 * k2) == 6
        assert clique_number(-k3) == -3
        assert clique_number(k3 + k2) == 3


class TestReport:
    def test_schema(self):
        r = invariant_report(parse_ring_expression("C4 - 2*K3 + L2*L3")).to_dict()
        assert tuple(r) == FIELDS
        assert r["chi"] == -1

    def test_euler_poincare(self):
        r = invariant_report(RingElement.of(octahedron()), betti=True)
        assert _poly.evaluate(r.euler_polynomial, -1) == r.chi == _poly.evaluate(r.poincare_polynomial, -1)
        assert r.fermi in (-1, 1)

    def test_curvature_extra(self):
        r = invariant_report(RingElement.of(cycle(4)), with_curvature=True).to_dict()
        assert set(r["curvature"].values()) == {"0"}
