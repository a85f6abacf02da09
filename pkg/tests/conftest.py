import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from strongring import RingElement, random_er

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("repo")


@st.composite
def complexes(draw, max_vertices: int = 6, max_cells: int = 30, min_dim: int = 1):
    """Whitney complex of a seeded Erdos-Renyi graph with at least one edge."""
    n = draw(st.integers(2, max_vertices))
    p = draw(st.sampled_from([0.3, 0.5, 0.7, 0.9]))
    seed = draw(st.integers(0, 2**32 - 1))
    g = random_er(n, p, seed)
    assume(g.dim >= min_dim and len(g) <= max_cells)
    return g


@st.composite
def elements(draw, max_terms: int = 3, max_cells: int = 12):
    terms = draw(st.integers(1, max_terms))
    out = RingElement.zero()
    for _ in range(terms):
        coef = draw(st.sampled_from([-2, -1, 1, 2]))
        factor_count = draw(st.integers(1, 2))
        t = RingElement.one()
        for _ in range(factor_count):
            t = t * RingElement.of(draw(complexes(max_vertices=4, max_cells=max_cells)))
        out = out + coef * t
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, when that module ran."""
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {n:>2}. {title}: {detail}")
