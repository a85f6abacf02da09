"""Floating-point spectra and the spectral theorem checks built on them."""

from __future__ import annotations

import math
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sps
from scipy.stats import ks_2samp

from .core.complex import SimplicialComplex
from .core.generators import cycle
from .core.ring import ProductTerm, RingElement
from .errors import BadParameter, BadSignature, NotSymmetric, TooLarge
from .graph_ops import as_term, barycentric_refinement
from .invariants.characteristics import as_element
from .operators import connection_laplacian, connection_operator, operator_bundle

SPECTRUM_CAP = 4000


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("STRONGRING_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Map in a thread pool bounded by ``STRONGRING_THREADS``; order follows ``items``."""
    items = list(items)
    n = worker_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    operator_tag: str = ""
    source: str = ""

    def __len__(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        return "index,eigenvalue\n" + "".join(f"{i},{v:.17g}\n" for i, v in enumerate(self.values))


def _dense(m) -> np.ndarray:
    if sps.issparse(m):
        m = m.toarray()
    return np.asarray(m, dtype=float)


def eigenvalues(m, tol: float = 1e-12, tag: str = "", source: str = "") -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending (dense LAPACK solver)."""
    a = _dense(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.abs(a - a.T).max() > tol:
        raise NotSymmetric("matrix is not symmetric")
    w = np.linalg.eigvalsh(a) if a.size else np.zeros(0)
    return Spectrum(np.sort(w), tag, source)


def multiset_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Max difference of sorted multisets (``inf`` when the sizes differ)."""
    if len(a) != len(b):
        return math.inf
    if not len(a):
        return 0.0
    return float(np.abs(np.sort(a) - np.sort(b)).max())


def _check_cap(size: int, cap: int | None) -> None:
    if cap is not None and size > cap:
        raise TooLarge(f"spectra are capped at {cap} cells, operator has {size}")


def connection_spectrum(e, cap: int | None = SPECTRUM_CAP) -> Spectrum:
    op = connection_operator(as_element(e))
    _check_cap(op.size, cap)
    return eigenvalues(op.L, tag="L")


def hodge_spectrum(x, cap: int | None = SPECTRUM_CAP, degree: int | None = None) -> Spectrum:
    b = operator_bundle(as_term(x), check=False)
    _check_cap(b.size, cap)
    if degree is None:
        return eigenvalues(b.H, tag="H")
    return eigenvalues(b.blocks[degree], tag=f"H{degree}")


def dirac_spectrum(x, cap: int | None = SPECTRUM_CAP) -> Spectrum:
    b = operator_bundle(as_term(x), check=False)
    _check_cap(b.size, cap)
    return eigenvalues(b.D, tag="D")


def spectrum_for_tag(e: RingElement, tag: str, cap: int | None = SPECTRUM_CAP) -> Spectrum:
    key = tag.lower()
    if key == "l":
        return connection_spectrum(e, cap)
    if key == "h":
        return hodge_spectrum(e, cap)
    if key == "d":
        return dirac_spectrum(e, cap)
    if key == "kirchhoff":
        return hodge_spectrum(e, cap, degree=0)
    if key.startswith("h") and key[1:].isdigit():
        return hodge_spectrum(e, cap, degree=int(key[1:]))
    raise BadParameter(f"unknown operator tag {tag!r}")


@dataclass(frozen=True)
class SpectralCheck:
    name: str
    deviation: float
    tol: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.deviation < self.tol


def _product_term(a, b) -> ProductTerm:
    return (as_element(a) * as_element(b)).single_term()


def check_spectral_multiplicativity(a, b, tol: float = 1e-8) -> SpectralCheck:
    """``sigma(L(a x b))`` against all products ``lambda mu``."""
    la = eigenvalues(connection_laplacian(as_term(a))).values
    lb = eigenvalues(connection_laplacian(as_term(b))).values
    lab = eigenvalues(connection_laplacian(_product_term(a, b))).values
    dev = multiset_deviation(np.outer(la, lb).ravel(), lab)
    trace = {"trace_product": float(lab.sum()), "trace_factors": float(la.sum() * lb.sum())}
    return SpectralCheck("multiplicativity", dev, tol, trace)


def check_spectral_pythagoras(a, b, tol: float = 1e-8) -> SpectralCheck:
    """``sigma(|D(a x b)|) = sqrt(lambda^2 + mu^2)`` and ``sigma(H(a x b)) = lambda + mu``."""
    da = dirac_spectrum(a).values
    db = dirac_spectrum(b).values
    t = _product_term(a, b)
    dab = np.abs(dirac_spectrum(t).values)
    pyth = multiset_deviation(np.hypot.outer(da, db).ravel(), dab)
    ha = hodge_spectrum(a).values
    hb = hodge_spectrum(b).values
    hodge = multiset_deviation(np.add.outer(ha, hb).ravel(), hodge_spectrum(t).values)
    return SpectralCheck("pythagoras", max(pyth, hodge), tol, {"dirac": pyth, "hodge": hodge})


def _term_gap(t: ProductTerm, cap: int | None, method: str) -> float:
    direct = method == "direct" or (method == "auto" and (cap is None or t.size <= cap))
    if direct:
        _check_cap(t.size, cap if method != "direct" else None)
        return float(np.abs(eigenvalues(connection_laplacian(t)).values).min())
    # sigma(L(A x B)) = sigma(L(A)) sigma(L(B))
    out = 1.0
    for f in t.factors:
        _check_cap(len(f), cap)
        out *= float(np.abs(eigenvalues(connection_laplacian(f)).values).min())
    return out


def mass_gap(e, cap: int | None = SPECTRUM_CAP, method: str = "auto") -> float:
    """``min |lambda|`` over the connection spectrum.

    ``direct`` diagonalizes each term's connection Laplacian; ``factor`` uses
    spectral multiplicativity (the gap of a product is the product of the
    factor gaps); ``auto`` is direct up to ``cap`` cells.
    """
    el = as_element(e)
    if el.is_zero:
        return math.inf
    return min(_term_gap(t, cap, method) for _, t in el.terms)


def torus(n: int, d: int) -> RingElement:
    return RingElement.of(cycle(n)) ** d


@dataclass(frozen=True)
class SpectralMeasure:
    """Empirical distribution of a spectrum."""

    samples: np.ndarray

    def cdf(self, x) -> np.ndarray:
        return np.searchsorted(self.samples, np.asarray(x, dtype=float), side="right") / len(self.samples)


def limit_law_samples(size: int = 20_000) -> np.ndarray:
    """Deterministic samples of ``F(U)``, ``F(x) = 4 sin^2(pi x / 2)``, on a midpoint grid of [0, 1]."""
    x = (np.arange(size) + 0.5) / size
    return np.sort(4 * np.sin(np.pi * x / 2) ** 2)


def limit_law_cdf(y) -> np.ndarray:
    """Closed-form CDF of ``F(U)``: ``(2 / pi) arcsin(sqrt(y) / 2)`` on [0, 4]."""
    y = np.clip(np.asarray(y, dtype=float), 0, 4)
    return 2 / np.pi * np.arcsin(np.sqrt(y) / 2)


@dataclass(frozen=True)
class LimitExperiment:
    operator_tag: str
    measures: list[SpectralMeasure]
    cell_counts: list[int]
    f_vectors: list[tuple[int, ...]]
    ks_consecutive: list[float]
    ks_limit: list[float] | None

    def to_dict(self) -> dict:
        return {
            "operator": self.operator_tag,
            "levels": len(self.measures) - 1,
            "cell_counts": self.cell_counts,
            "f_vectors": [list(f) for f in self.f_vectors],
            "ks_consecutive": self.ks_consecutive,
            "ks_limit": self.ks_limit,
        }


def _level_operator(g: SimplicialComplex, tag: str):
    key = tag.lower()
    if key == "kirchhoff":
        return operator_bundle(g, check=False).blocks[0]
    if key == "l":
        return connection_laplacian(g)
    if key == "h":
        return operator_bundle(g, check=False).H
    if key.startswith("h") and key[1:].isdigit():
        return operator_bundle(g, check=False).blocks[int(key[1:])]
    raise BadParameter(f"unknown operator tag {tag!r}")


def barycentric_limit_experiment(
    g: SimplicialComplex, levels: int, operator_tag: str = "kirchhoff", cap: int = SPECTRUM_CAP
) -> LimitExperiment:
    """Density of states of ``A(G_k)`` for refinement levels ``k = 0..levels``."""
    complexes = [g]
    for _ in range(levels):
        nxt = barycentric_refinement(complexes[-1])[1]
        if len(nxt) > cap:
            raise TooLarge(f"level {len(complexes)} has {len(nxt)} cells, cap is {cap}")
        complexes.append(nxt)
    spectra = parallel_map(lambda c: eigenvalues(_level_operator(c, operator_tag)).values, complexes)
    measures = [SpectralMeasure(np.sort(w)) for w in spectra]
    ks_cons = [float(ks_2samp(a.samples, b.samples).statistic) for a, b in zip(measures, measures[1:])]
    ks_lim = None
    if g.dim == 1 and operator_tag.lower() == "kirchhoff":
        law = limit_law_samples()
        ks_lim = [float(ks_2samp(m.samples, law).statistic) for m in measures]
    return LimitExperiment(
        operator_tag, measures, [len(c) for c in complexes], [c.f_vector for c in complexes], ks_cons, ks_lim
    )


def refinement_f_vector(f: Sequence[int]) -> tuple[int, ...]:
    """f-vector of the Barycentric refinement: ``v'_k = sum_j (k+1)! S(j+1, k+1) v_j``."""
    top = len(f)

    def stirling2(n: int, k: int) -> int:
        return sum((-1) ** i * math.comb(k, i) * (k - i) ** n for i in range(k + 1)) // math.factorial(k)

    return tuple(
        sum(math.factorial(k + 1) * stirling2(j + 1, k + 1) * f[j] for j in range(k, top)) for k in range(top)
    )


def kirchhoff_cycle_spectrum(n: int) -> np.ndarray:
    return np.sort(4 * np.sin(np.pi * np.arange(n) / n) ** 2)


def lorentz_hodge_spectrum(n: int, nu: int, signature: Sequence[int]) -> Spectrum:
    """Spectrum of ``sum_i s_i K_i`` on the torus ``C_n^nu`` (``K_i``: Kirchhoff in direction i)."""
    sig = list(signature)
    if len(sig) != nu or any(s not in (1, -1) for s in sig):
        raise BadSignature(f"signature must be {nu} entries of +-1, got {sig}")
    if n < 3:
        raise BadParameter("torus side must be >= 3")
    _check_cap(n**nu, SPECTRUM_CAP)
    k = sps.csr_array(cycle_kirchhoff(n))
    eye = sps.eye_array(n, dtype=np.int64, format="csr")
    total = sps.csr_array((n**nu, n**nu), dtype=np.int64)
    for i, s in enumerate(sig):
        parts = [k if j == i else eye for j in range(nu)]
        total = total + s * reduce(lambda a, b: sps.kron(a, b, format="csr"), parts)
    return eigenvalues(total, tag="H0", source=f"C{n}^{nu} signature {sig}")


def lorentz_closed_form(n: int, nu: int, signature: Sequence[int]) -> np.ndarray:
    lam = kirchhoff_cycle_spectrum(n)
    out = np.zeros(1)
    for s in signature:
        out = np.add.outer(out, s * lam).ravel()
    return np.sort(out)


def cycle_kirchhoff(n: int) -> np.ndarray:
    return operator_bundle(cycle(n), check=False).blocks[0].toarray()
