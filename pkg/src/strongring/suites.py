"""Seeded verification suites behind ``strongring verify``.

Every random object is produced from an ``ER(n, p, seed)`` expression, so the
expression text recorded with a check is an exact reproducer.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterator
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .core.generators import complete, cycle, cylinder, mobius
from .core.parser import parse_ring_expression
from .core.ring import ProductTerm, RingElement
from .dynamics import lax_flow
from .errors import UnknownSuite
from .exact_linalg import det_exact
from .invariants import (
    betti_numbers,
    curvature,
    euler_characteristic,
    euler_polynomial,
    fermi_characteristic,
    green_functions,
    index_expectation,
    interaction_betti,
    lefschetz,
    mckean_singer,
    poincare_hopf,
    poincare_polynomial,
    wu_characteristic,
)
from .invariants import _poly
from .operators import Automorphism, connection_laplacian, operator_bundle
from .spectral import (
    barycentric_limit_experiment,
    check_spectral_multiplicativity,
    check_spectral_pythagoras,
    mass_gap,
    parallel_map,
    torus,
)


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)
    seed: int | None = None
    reproducer: str = ""
    runtime_ms: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": len(self.checks),
            "checks": [asdict(c) for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status} {c.name}"
            if c.witness:
                line += " " + " ".join(f"{k}={v}" for k, v in c.witness.items())
            if not c.passed:
                line += f"  [reproduce: {c.reproducer!r} seed={c.seed}]"
            out.append(line)
        out.append(f"{self.suite}: {self.passed}/{len(self.checks)} pass")
        return out


@dataclass(frozen=True)
class SuiteOptions:
    seed: int = 0
    count: int = 10
    tol: float = 1e-8
    n: int = 60
    d: int = 2
    max_cells: int = 50


def random_complex_expr(rng: np.random.Generator, max_cells: int, max_vertices: int = 7) -> tuple[str, RingElement]:
    """Expression ``ER(n,p,s)`` whose complex has at most ``max_cells`` cells."""
    while True:
        n = int(rng.integers(2, max_vertices + 1))
        p = float(rng.choice([0.3, 0.4, 0.5, 0.6, 0.7]))
        s = int(rng.integers(0, 2**31))
        text = f"ER({n},{p},{s})"
        e = parse_ring_expression(text)
        # edgeless draws collapse to an integer; skip them
        if len(e.terms) == 1 and e.terms[0][0] == 1 and e.terms[0][1].factors and e.cell_count <= max_cells:
            return text, e


def random_pair_expr(rng: np.random.Generator, max_cells: int) -> tuple[str, str, RingElement, RingElement]:
    ta, a = random_complex_expr(rng, max_cells, 6)
    tb, b = random_complex_expr(rng, max_cells, 6)
    return ta, tb, a, b


def _timed(name: str, seed: int | None, reproducer: str, fn: Callable[[], tuple[bool, dict]]) -> Check:
    t0 = time.perf_counter()
    ok, witness = fn()
    return Check(name, bool(ok), witness, seed, reproducer, round((time.perf_counter() - t0) * 1000, 3))


def _corpus(opts: SuiteOptions, products: bool = True) -> Iterator[tuple[str, RingElement]]:
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.count):
        yield random_complex_expr(rng, opts.max_cells)
    if products:
        for _ in range(max(1, opts.count // 4)):
            ta, tb, a, b = random_pair_expr(rng, 20)
            yield f"{ta}*{tb}", a * b


def suite_unimodularity(opts: SuiteOptions) -> list[Check]:
    def check(item):
        text, e = item

        def run():
            det = det_exact(connection_laplacian(e.single_term()))
            fermi = fermi_characteristic(e)
            return det in (1, -1) and det == fermi, {"det": det, "fermi": fermi}

        return _timed(f"det(L) {text}", opts.seed, text, run)

    return parallel_map(check, _corpus(opts))


def suite_energy(opts: SuiteOptions) -> list[Check]:
    def check(item):
        text, e = item

        def run():
            total, chi = green_functions(e).total, euler_characteristic(e)
            return total == chi, {"sum_g": total, "chi": chi}

        return _timed(f"energy {text}", opts.seed, text, run)

    items = list(_corpus(opts)) + [("C4 - 2*K3 + L2*L3", parse_ring_expression("C4 - 2*K3 + L2*L3"))]
    return parallel_map(check, items)


def suite_kuenneth(opts: SuiteOptions) -> list[Check]:
    rng = np.random.default_rng(opts.seed)

    def run_pair(a: RingElement, b: RingElement) -> tuple[bool, dict]:
        ab = a * b
        s = a + b
        checks = {
            "p_mul": poincare_polynomial(ab) == _poly.mul(poincare_polynomial(a), poincare_polynomial(b)),
            "p_add": poincare_polynomial(s) == _poly.add(poincare_polynomial(a), poincare_polynomial(b)),
            "e_mul": euler_polynomial(ab) == _poly.mul(euler_polynomial(a), euler_polynomial(b)),
            "e_add": euler_polynomial(s) == _poly.add(euler_polynomial(a), euler_polynomial(b)),
            "chi_mul": euler_characteristic(ab) == euler_characteristic(a) * euler_characteristic(b),
            "wu_mul": wu_characteristic(ab) == wu_characteristic(a) * wu_characteristic(b),
            "wu_add": wu_characteristic(s) == wu_characteristic(a) + wu_characteristic(b),
        }
        return all(checks.values()), {k: v for k, v in checks.items() if not v}

    out = []
    for _ in range(opts.count):
        ta, tb, a, b = random_pair_expr(rng, 20)
        out.append(_timed(f"kuenneth {ta} x {tb}", opts.seed, f"{ta}*{tb}", lambda: run_pair(a, b)))
    text = "Oct*Susp(Oct)"
    e = parse_ring_expression(text)

    def sphere_product():
        b = betti_numbers(e)
        return b == (1, 0, 1, 1, 0, 1) and e.cell_count == 2080, {"betti": list(b), "cells": e.cell_count}

    out.append(_timed("betti S2 x S3", None, text, sphere_product))
    return out


def suite_spectral(opts: SuiteOptions) -> list[Check]:
    rng = np.random.default_rng(opts.seed)
    out = []
    for _ in range(opts.count):
        ta, tb, a, b = random_pair_expr(rng, 20)

        def run(a=a, b=b):
            m = check_spectral_multiplicativity(a, b, opts.tol)
            p = check_spectral_pythagoras(a, b, opts.tol)
            return m.ok and p.ok, {"mult_dev": m.deviation, "pyth_dev": p.deviation}

        out.append(_timed(f"spectra {ta} x {tb}", opts.seed, f"{ta}*{tb}", run))
    return out


def suite_gaussbonnet(opts: SuiteOptions) -> list[Check]:
    def check(item):
        text, e = item

        def run():
            total, chi = curvature(e).total, euler_characteristic(e)
            ok = total == chi
            witness = {"curvature": str(total), "chi": chi}
            t = e.single_term()
            if len(t.factors) == 1 and t.factors[0].vertex_count <= 7:
                expect = index_expectation(e, mode="exact")
                ok = ok and expect.values == curvature(e).values
                witness["expectation_matches"] = ok
            return ok, witness

        return _timed(f"gauss-bonnet {text}", opts.seed, text, run)

    return parallel_map(check, _corpus(opts))


def suite_poincarehopf(opts: SuiteOptions) -> list[Check]:
    out = []
    for text, e in _corpus(opts):
        t = e.single_term()
        chi = euler_characteristic(e)
        rng = np.random.default_rng([opts.seed, len(out)])
        for j in range(10):
            perm = rng.permutation(len(t.vertex_cells))
            f = {v: int(r) for v, r in zip(t.vertex_cells, perm)}

            def run(f=f):
                total = poincare_hopf(e, f).total
                return total == chi, {"index_sum": total, "chi": chi}

            out.append(_timed(f"poincare-hopf {text} f#{j}", opts.seed, text, run))
    return out


def lefschetz_cases() -> list[tuple[str, ProductTerm, Automorphism]]:
    cases = []
    for n in range(4, 9):
        t = ProductTerm.of(cycle(n))
        cases.append((f"C{n} identity", t, Automorphism.identity(t)))
        for k in range(1, n):
            cases.append((f"C{n} rotation {k}", t, Automorphism.rotation(n, k)))
    k2 = ProductTerm.of(complete(2), complete(2))
    cases.append(("K2xK2 swap", k2, Automorphism.swap(k2)))
    return cases


def suite_lefschetz(opts: SuiteOptions) -> list[Check]:
    out = []
    for name, t, T in lefschetz_cases():

        def run(t=t, T=T):
            r = lefschetz(t, T, strict=False)
            return r.consistent, {"chi_T": r.chi_T, "index_sum": r.index_sum, "fixed": len(r.fixed_indices)}

        out.append(_timed(f"lefschetz {name}", None, name, run))
    for text, e in _corpus(opts, products=False):
        t = e.single_term()

        def run(t=t):
            r = lefschetz(t, Automorphism.identity(t), strict=False)
            return r.consistent and r.chi_T == euler_characteristic(t), {"chi_T": r.chi_T}

        out.append(_timed(f"lefschetz identity {text}", opts.seed, text, run))
    return out


def _alternating(v) -> int:
    return sum((-1) ** k * b for k, b in enumerate(v))


def suite_wu(opts: SuiteOptions) -> list[Check]:
    out = []
    for n in range(1, 7):

        def run(n=n):
            w = wu_characteristic(RingElement.of(complete(n)))
            return w == (-1) ** (n - 1), {"wu": w}

        out.append(_timed(f"wu K{n}", None, f"K{n}", run))
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.count):
        text, e = random_complex_expr(rng, 25)
        g = e.single_term().factors[0]

        def run(e=e, g=g):
            b = interaction_betti(g, cap=None)
            w = wu_characteristic(e)
            return _alternating(b) == w, {"interaction_betti": list(b), "wu": w}

        out.append(_timed(f"interaction betti {text}", opts.seed, text, run))

    def bands():
        cyl, mob = interaction_betti(cylinder(), cap=None), interaction_betti(mobius(), cap=None)
        return cyl != mob, {"cylinder": list(cyl), "mobius": list(mob)}

    out.append(_timed("cylinder vs moebius", None, "Cyl(4), Mob(4)", bands))
    return out


def suite_mckeansinger(opts: SuiteOptions) -> list[Check]:
    def check(item):
        text, e = item

        def run():
            r = mckean_singer(e, tol=opts.tol)
            return r.ok, {"chi": r.chi, "str_g": r.green_super_trace, "susy_dev": r.susy_deviation}

        return _timed(f"mckean-singer {text}", opts.seed, text, run)

    return parallel_map(check, _corpus(opts))


def suite_massgap(opts: SuiteOptions) -> list[Check]:
    text = "*".join([f"C{opts.n}"] * opts.d)
    bound = Fraction(1, 5**opts.d)

    def run():
        gap = mass_gap(torus(opts.n, opts.d))
        return gap >= bound, {"gap": gap, "bound": str(bound)}

    return [_timed(f"mass gap {text}", None, text, run)]


def suite_limit(opts: SuiteOptions) -> list[Check]:
    def run():
        ex = barycentric_limit_experiment(cycle(4), 3)
        ks = ex.ks_consecutive
        ok = ex.ks_limit[-1] < 0.05 and all(x > y for x, y in zip(ks, ks[1:]))
        return ok, {"ks_limit": ex.ks_limit[-1], "ks_consecutive": ks}

    return [_timed("barycentric limit C4", None, "C4", run)]


def suite_lax(opts: SuiteOptions) -> list[Check]:
    rng = np.random.default_rng(opts.seed)
    text, e = random_complex_expr(rng, 30)
    out = []
    for name, term in (("C4", ProductTerm.of(cycle(4))), (text, e.single_term())):
        bundle = operator_bundle(term)

        def run(bundle=bundle):
            tr = lax_flow(bundle, 0.0, 5.0, 1e-3, drift_bound=None)
            coarse = lax_flow(bundle, 0.0, 5.0, 0.1, drift_bound=None).max_drift
            fine = lax_flow(bundle, 0.0, 5.0, 0.05, drift_bound=None).max_drift
            ok = tr.max_drift < 1e-6 and (coarse < 1e-12 or coarse >= 8 * fine)
            return ok, {"drift": tr.max_drift, "order_ratio": coarse / fine if fine else float("inf")}

        out.append(_timed(f"lax flow {name}", opts.seed, name, run))
    return out


SUITES: dict[str, Callable[[SuiteOptions], list[Check]]] = {
    "unimodularity": suite_unimodularity,
    "energy": suite_energy,
    "kuenneth": suite_kuenneth,
    "spectral": suite_spectral,
    "gaussbonnet": suite_gaussbonnet,
    "poincarehopf": suite_poincarehopf,
    "lefschetz": suite_lefschetz,
    "wu": suite_wu,
    "mckeansinger": suite_mckeansinger,
    "massgap": suite_massgap,
    "limit": suite_limit,
    "lax": suite_lax,
}


def run_suite(name: str, opts: SuiteOptions) -> VerificationReport:
    if name == "all":
        return VerificationReport("all", [c for fn in SUITES.values() for c in fn(opts)])
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    return VerificationReport(name, SUITES[name](opts))
