import numpy as np
import pytest
from hypothesis import given, settings

from strongring import (
    BadSignature,
    NotSymmetric,
    RingElement,
    TooLarge,
    complete,
    cycle,
    path,
)
from strongring.operators import connection_laplacian, operator_bundle
from strongring.spectral import (
    SpectralMeasure,
    barycentric_limit_experiment,
    check_spectral_multiplicativity,
    check_spectral_pythagoras,
    connection_spectrum,
    eigenvalues,
    hodge_spectrum,
    kirchhoff_cycle_spectrum,
    limit_law_cdf,
    limit_law_samples,
    lorentz_closed_form,
    lorentz_hodge_spectrum,
    mass_gap,
    multiset_deviation,
    refinement_f_vector,
    spectrum_for_tag,
    torus,
)

from .conftest import complexes, elements


def bloch_cycle_spectrum(n: int) -> np.ndarray:
    """Connection spectrum of C_n from the 2x2 Bloch matrices of its vertex/edge unit cell."""
    out = []
    for k in range(n):
        th = 2 * np.pi * k / n
        tr = 2 + 2 * np.cos(th)
        # determinant of [[1, 1 + e^{-i th}], [1 + e^{i th}, 1 + 2 cos th]] is -1
        root = np.sqrt(tr * tr + 4)
        out += [(tr - root) / 2, (tr + root) / 2]
    return np.sort(out)


class TestEigenvalues:
    @pytest.mark.parametrize("n", [3, 4, 7, 12])
    def test_cycle_kirchhoff(self, n):
        h0 = operator_bundle(cycle(n)).blocks[0]
        spec = eigenvalues(h0)
        assert len(spec) == n
        expected = np.sort(4 * np.sin(np.pi * np.arange(n) / n) ** 2)
        assert multiset_deviation(spec.values, expected) < 1e-12
        assert np.allclose(kirchhoff_cycle_spectrum(n), expected)

    def test_point(self):
        assert eigenvalues(connection_laplacian(complete(1))).values.tolist() == [1.0]

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_reproducible(self):
        m = connection_laplacian(cycle(30))
        assert np.array_equal(eigenvalues(m).values, eigenvalues(m).values)

    @pytest.mark.parametrize("n", [5, 8, 40])
    def test_bloch_oracle(self, n):
        assert multiset_deviation(connection_spectrum(cycle(n)).values, bloch_cycle_spectrum(n)) < 1e-10

    def test_csv(self):
        text = spectrum_for_tag(RingElement.of(cycle(4)), "H").to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "index,eigenvalue"
        assert len(lines) == 9


class TestProperties:
    @given(elements())
    def test_traces(self, e):
        s = connection_spectrum(e)
        assert abs(s.values.sum() - e.cell_count) < 1e-8 * max(1, abs(e.cell_count))

    @given(complexes(max_cells=30))
    def test_hodge_nonnegative_and_trace(self, g):
        s = hodge_spectrum(g)
        assert s.values.min() > -1e-9
        assert abs(s.values.sum() - operator_bundle(g).H.trace()) < 1e-8 * max(1, operator_bundle(g).H.trace())

    @given(elements())
    def test_negation(self, e):
        # the operator is negated exactly; LAPACK may differ in the last ulp
        assert multiset_deviation(connection_spectrum(-e).values, -connection_spectrum(e).values) < 1e-12

    @given(complexes(max_cells=30))
    def test_supersymmetry(self, g):
        b = operator_bundle(g)
        spectra = [np.linalg.eigvalsh(h.toarray().astype(float)) for h in b.blocks]
        even = np.concatenate(spectra[0::2])
        odd = np.concatenate(spectra[1::2]) if len(spectra) > 1 else np.zeros(0)
        even, odd = np.sort(even[even > 1e-6]), np.sort(odd[odd > 1e-6])
        assert multiset_deviation(even, odd) < 1e-8


class TestArithmetic:
    def test_point_factor(self):
        r = check_spectral_multiplicativity(complete(1), cycle(5))
        assert r.ok and r.deviation < 1e-12

    def test_square_times_triangle(self):
        r = check_spectral_multiplicativity(cycle(4), complete(3))
        assert r.deviation < 1e-8
        assert abs(r.details["trace_product"] - 8 * 7) < 1e-8
        assert abs(r.details["trace_factors"] - 8 * 7) < 1e-8

    def test_pythagoras_examples(self):
        assert check_spectral_pythagoras(complete(1), cycle(4)).deviation < 1e-12
        r = check_spectral_pythagoras(path(2), path(2))
        assert r.ok
        assert r.details["hodge"] < 1e-8

    @given(complexes(max_cells=12), complexes(max_cells=12))
    @settings(max_examples=15)
    def test_random_pairs(self, a, b):
        assert check_spectral_multiplicativity(a, b).ok
        assert check_spectral_pythagoras(a, b).ok


class TestMassGap:
    @pytest.mark.parametrize("n", [4, 10, 100])
    def test_cycles(self, n):
        gap = mass_gap(cycle(n))
        assert gap >= 0.2
        assert abs(gap - np.abs(bloch_cycle_spectrum(n)).min()) < 1e-10

    def test_golden_value(self):
        assert abs(mass_gap(cycle(60)) - (np.sqrt(5) - 2)) < 1e-12

    def test_two_torus(self):
        direct = mass_gap(torus(6, 2), method="direct")
        assert abs(direct - mass_gap(torus(6, 2), method="factor")) < 1e-10
        assert direct >= 1 / 25

    def test_three_torus(self):
        assert mass_gap(torus(5, 3)) >= 5**-3

    def test_cap(self):
        with pytest.raises(TooLarge):
            connection_spectrum(torus(30, 2), cap=1000)
        # the factor route stays available beyond the cap
        assert mass_gap(torus(30, 2), cap=1000) >= 1 / 25


class TestLimit:
    def test_square_refinements(self):
        ex = barycentric_limit_experiment(cycle(4), 3)
        assert ex.cell_counts == [8, 16, 32, 64]
        assert ex.ks_limit[-1] < 0.05
        ks = ex.ks_consecutive
        assert all(a > b for a, b in zip(ks, ks[1:]))

    def test_f_vectors_follow_recursion(self):
        ex = barycentric_limit_experiment(complete(3), 2, "L")
        for f, g in zip(ex.f_vectors, ex.f_vectors[1:]):
            assert refinement_f_vector(f) == g

    def test_law_samples_match_closed_form(self):
        s = limit_law_samples(10_000)
        grid = np.linspace(0, 4, 41)
        assert np.abs(SpectralMeasure(s).cdf(grid) - limit_law_cdf(grid)).max() < 2e-4

    def test_cdf_monotone(self):
        m = SpectralMeasure(np.sort(kirchhoff_cycle_spectrum(16)))
        vals = m.cdf(np.linspace(-1, 5, 50))
        assert vals[0] == 0 and vals[-1] == 1 and np.all(np.diff(vals) >= 0)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            barycentric_limit_experiment(complete(4), 3)


class TestLorentz:
    def test_one_dimensional(self):
        minus = lorentz_hodge_spectrum(8, 1, [-1]).values
        plus = lorentz_hodge_spectrum(8, 1, [1]).values
        assert multiset_deviation(minus, plus - 4) < 1e-12

    def test_four_dimensional(self):
        mixed = lorentz_hodge_spectrum(4, 4, [1, 1, 1, -1]).values
        euclid = lorentz_hodge_spectrum(4, 4, [1, 1, 1, 1]).values
        assert multiset_deviation(mixed, euclid - 4) < 1e-10
        assert multiset_deviation(mixed, lorentz_closed_form(4, 4, [1, 1, 1, -1])) < 1e-10

    def test_all_plus_nonnegative(self):
        assert lorentz_hodge_spectrum(6, 2, [1, 1]).values.min() > -1e-12

    def test_bad_signature(self):
        with pytest.raises(BadSignature):
            lorentz_hodge_spectrum(8, 2, [1])
        with pytest.raises(BadSignature):
            lorentz_hodge_spectrum(8, 2, [1, 2])
