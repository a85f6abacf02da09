"""Isospectral Lax deformation of the Dirac operator and Newton continuation."""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sps

from .errors import BadParameter, ContractionBoundViolated, NoConvergence, NotUnimodular, StepTooLarge
from .exact_linalg import as_dense, inverse_unimodular
from .operators import ConnectionOperator, OperatorBundle


@dataclass(frozen=True, eq=False)
class LaxState:
    """``D_t = d_t + d_t^* + b_t`` with ``d_t`` the degree-raising part."""

    t: float
    D: np.ndarray
    d: np.ndarray
    b: np.ndarray


@dataclass(eq=False)
class LaxTrajectory:
    states: list[LaxState]
    times: list[float] = field(default_factory=list)
    spectral_drift: list[float] = field(default_factory=list)
    d_norm: list[float] = field(default_factory=list)
    d2_residual: list[float] = field(default_factory=list)
    hodge_drift: list[float] = field(default_factory=list)

    @property
    def final(self) -> LaxState:
        return self.states[-1]

    @property
    def max_drift(self) -> float:
        return max(self.spectral_drift, default=0.0)

    def d_norm_nonincreasing(self, slack: float = 1e-12) -> bool:
        return bool(np.all(np.diff(self.d_norm) <= slack))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "spectral_drift", "d_norm", "d2_residual"])
        for row in zip(self.times, self.spectral_drift, self.d_norm, self.d2_residual):
            w.writerow([f"{x:.17g}" for x in row])
        return buf.getvalue()


def _split(D: np.ndarray, raising: np.ndarray, diagonal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.where(raising, D, 0), np.where(diagonal, D, 0)


def lax_flow(
    bundle: OperatorBundle,
    beta: float = 0.0,
    t_end: float = 5.0,
    dt: float = 1e-3,
    drift_bound: float | None = 1e-6,
    record_every: int = 0,
) -> LaxTrajectory:
    """Integrate ``D' = [B, D]``, ``B = d - d^* + i beta b``, with classical RK4.

    The split of ``D_t`` into ``d_t`` and ``b_t`` is positional: ``d_t`` is the
    block from degree k to k + 1, ``b_t`` the degree-preserving blocks.
    Diagnostics are recorded every step; states every ``record_every`` steps
    (start and end always). Relative spectral drift above ``drift_bound``
    raises ``StepTooLarge``.
    """
    if not dt > 0 or not math.isfinite(dt):
        raise BadParameter("dt must be positive")
    if t_end < 0:
        raise BadParameter("t_end must be nonnegative")
    dims = bundle.basis.dims
    raising = dims[:, None] == dims[None, :] + 1
    diagonal = dims[:, None] == dims[None, :]
    dtype = complex if beta else float
    D = bundle.D.toarray().astype(dtype)
    sigma0 = np.linalg.eigvalsh(D) if len(D) else np.zeros(0)
    scale = max(1.0, float(np.abs(sigma0).max(initial=0.0)))
    H0 = D @ D

    def rhs(X: np.ndarray) -> np.ndarray:
        d, b = _split(X, raising, diagonal)
        B = d - d.conj().T
        if beta:
            B = B + 1j * beta * b
        return B @ X - X @ B

    steps = int(round(t_end / dt))
    traj = LaxTrajectory([])

    def record(t: float, X: np.ndarray, keep: bool) -> None:
        d, b = _split(X, raising, diagonal)
        sigma = np.linalg.eigvalsh(X) if len(X) else sigma0
        drift = float(np.abs(sigma - sigma0).max(initial=0.0)) / scale
        traj.times.append(t)
        traj.spectral_drift.append(drift)
        traj.d_norm.append(float(np.linalg.norm(d)))
        traj.d2_residual.append(float(np.abs(d @ d).max(initial=0.0)))
        traj.hodge_drift.append(float(np.abs(X @ X - H0).max(initial=0.0)))
        if keep:
            traj.states.append(LaxState(t, X.copy(), d, b))
        if drift_bound is not None and drift > drift_bound:
            raise StepTooLarge(f"spectral drift {drift:.3e} exceeds {drift_bound:.1e} at t={t:.6g}")

    record(0.0, D, True)
    for i in range(1, steps + 1):
        k1 = rhs(D)
        k2 = rhs(D + dt / 2 * k1)
        k3 = rhs(D + dt / 2 * k2)
        k4 = rhs(D + dt * k3)
        D = D + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        D = (D + D.conj().T) / 2
        keep = i == steps or (record_every > 0 and i % record_every == 0)
        record(i * dt, D, keep)
    return traj


@dataclass(frozen=True)
class Nonlinearity:
    """Scalar map applied entrywise, with its derivative and a Lipschitz constant."""

    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    lipschitz: float


SIN = Nonlinearity(np.sin, np.cos, 1.0)


@dataclass(frozen=True)
class ContinuationResult:
    u: np.ndarray
    residual: float
    steps: int
    contraction: float


def _kinetic_matrix(op) -> np.ndarray:
    if isinstance(op, ConnectionOperator):
        return op.dense()
    if sps.issparse(op):
        return op.toarray()
    return np.asarray(op)


def contraction_constant(L: np.ndarray, eps: float, V: Nonlinearity) -> tuple[float, np.ndarray]:
    """``eps Lip(V) min(||L^-1||_inf, ||L^-1||_2)`` and the inverse used to bound it."""
    try:
        if np.issubdtype(L.dtype, np.integer):
            inv = inverse_unimodular(L).astype(float)
        else:
            inv = np.linalg.inv(L)
    except (NotUnimodular, np.linalg.LinAlgError) as exc:
        raise ContractionBoundViolated("kinetic operator is singular") from exc
    norm = min(np.abs(inv).sum(axis=1).max(), np.linalg.norm(inv, 2))
    return abs(eps) * V.lipschitz * float(norm), inv


def newton_continuation(
    Lop,
    V: Nonlinearity,
    rhs,
    eps: float,
    tol: float = 1e-10,
    maxiter: int = 50,
) -> ContinuationResult:
    """Solve ``L u + eps V(u) = rhs`` by Newton's method from ``u0 = L^-1 rhs``."""
    L = _kinetic_matrix(Lop)
    if np.all(L == np.round(L)):
        L = as_dense(L)
    q, inv = contraction_constant(L, eps, V)
    if q >= 1:
        raise ContractionBoundViolated(f"eps Lip(V) ||L^-1|| = {q:.3g} >= 1")
    Lf = L.astype(float)
    r = np.asarray(rhs, dtype=float)
    u = inv @ r

    def residual(v: np.ndarray) -> np.ndarray:
        return Lf @ v + eps * V.f(v) - r

    res = residual(u)
    err = float(np.abs(res).max(initial=0.0))
    steps = 0
    while err >= tol:
        if steps == maxiter:
            raise NoConvergence(f"no convergence after {maxiter} Newton steps, residual {err:.3e}")
        J = Lf + eps * np.diag(V.df(u))
        u = u - np.linalg.solve(J, res)
        res = residual(u)
        err = float(np.abs(res).max(initial=0.0))
        steps += 1
    return ContinuationResult(u, err, steps, q)
