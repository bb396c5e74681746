"""Two-stage recovery: SDP relaxation by low-rank mixing, rounding, dual certificate, sign selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import DisconnectedGraphError, InvalidArgumentError, InvalidSizeError, TooLargeError
from .graph import is_connected
from .observe import check_support
from .spectral import check_labeling, symmetric_eigen

BRUTE_FORCE_MAX_N = 20
MIXING_TOL = 1e-7
MIXING_MAX_SWEEPS = 2000
CERT_REL_TOL = 1e-7


@dataclass(frozen=True)
class GramSolution:
    """Unit-row factor Z of the SDP variable Y = Z Z^T."""

    factor: np.ndarray
    objective: float
    sweeps: int
    converged: bool
    max_row_move: float
    trace: tuple = ()  # objective after each sweep, when requested


@dataclass(frozen=True)
class CertificateReport:
    lambda1: float
    lambda2: float
    certified: bool
    tolerance: float
    v_diagonal: np.ndarray
    spectrum: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class PipelineResult:
    labels: np.ndarray
    certified: bool
    stage2_flipped: bool
    objective: float
    hamming: int | None = None
    stage1_labels: np.ndarray = field(repr=False, default=None)
    certificate: CertificateReport = field(repr=False, default=None)
    converged: bool = True


def sdp_rank(n):
    return math.ceil(math.sqrt(2 * n)) + 1


def gram_objective(obs, Z):
    """<X, Z Z^T> summed over observed edges."""
    if not obs.x_edges:
        return 0.0
    ij = np.array(list(obs.x_edges.keys()))
    s = np.array(list(obs.x_edges.values()), dtype=np.float64)
    return 2.0 * float(s @ np.einsum("ek,ek->e", Z[ij[:, 0]], Z[ij[:, 1]]))


def solve_sdp(obs, n=None, seed=0, rank=None, tol=MIXING_TOL, max_sweeps=MIXING_MAX_SWEEPS,
              record_trace=False):
    """Maximize <X, Y> over Y >= 0 with unit diagonal via the factorization Y = Z Z^T.

    Rows are updated cyclically to their exact maximizer z_i = g_i / |g_i|,
    g_i = sum_j X_ij z_j, so the objective never decreases. Stops once the
    largest row movement in a sweep is below ``tol`` or after ``max_sweeps``.
    """
    n = obs.n if n is None else n
    if n != obs.n:
        raise InvalidArgumentError(f"n={n} does not match observations (n={obs.n})")
    if n < 2:
        raise InvalidSizeError("SDP needs n >= 2")
    k = rank or sdp_rank(n)
    Z = np.random.default_rng(seed).standard_normal((n, k))
    Z /= np.linalg.norm(Z, axis=1, keepdims=True)
    Z = np.ascontiguousarray(Z)
    indptr, indices, data = obs.csr()
    trace = []
    move = math.inf
    sweeps = 0
    while sweeps < max_sweeps:
        move = kernels.mixing_sweep(indptr, indices, data, Z)
        sweeps += 1
        if record_trace:
            trace.append(gram_objective(obs, Z))
        if move < tol:
            break
    return GramSolution(Z, gram_objective(obs, Z), sweeps, move < tol, move, tuple(trace))


def round_to_labels(sol):
    """Signs of the rows projected on the leading right-singular direction of Z."""
    Z = sol.factor
    v = symmetric_eigen(Z.T @ Z).vectors[:, -1]
    return np.where(Z @ v >= 0.0, 1, -1).astype(np.int64)


def build_certificate(obs, y, rel_tol=CERT_REL_TOL):
    """Dual certificate V = diag(y_i (Xy)_i); certify when V - X is PSD with a simple null space.

    When certified, y y^T is the unique optimum of the relaxation.
    """
    y = check_labeling(y, obs.n)
    if obs.n < 2:
        raise InvalidSizeError("certificate needs n >= 2")
    X = obs.dense()
    v = y * (X @ y)
    eig = symmetric_eigen(np.diag(v) - X)
    tau = rel_tol * max(1, obs.max_degree())
    lam1, lam2 = float(eig.values[0]), float(eig.values[1])
    return CertificateReport(lam1, lam2, lam1 >= -tau and lam2 >= tau, tau, v.astype(np.float64),
                             eig.values)


def brute_force_max(obs, n=None):
    """Exact maximizer of y'Xy / 2 over y in {+-1}^n with y_0 = +1 (n <= 20).

    Ties go to the lexicographically smallest labeling, ordering -1 before +1.
    """
    n = obs.n if n is None else n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLargeError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    indptr, indices, data = obs.csr()
    mask, value = kernels.brute_force_search(n, indptr, indices, data)
    labels = np.array([-1 if mask >> i & 1 else 1 for i in range(n)], dtype=np.int64)
    return labels, value / 2.0


def stage2_select(y, obs):
    """Pick y or -y by the node score c'y; ties go to the sign agreeing with c at vertex 0."""
    y = check_labeling(y, obs.n)
    score = int(obs.c @ y)
    flip = score < 0 or (score == 0 and y[0] != obs.c[0])
    return (-y if flip else y.copy()), flip


def recover(g, obs, truth=None, seed=0, **sdp_opts):
    """SDP solve, round, certify, then choose the global sign from node observations."""
    if not is_connected(g):
        raise DisconnectedGraphError("recovery requires a connected graph")
    check_support(obs, g)
    sol = solve_sdp(obs, seed=seed, **sdp_opts)
    stage1 = round_to_labels(sol)
    cert = build_certificate(obs, stage1)
    labels, flipped = stage2_select(stage1, obs)
    hamming = None
    if truth is not None:
        truth = check_labeling(truth, g.n)
        hamming = int(np.sum(labels != truth))
    return PipelineResult(labels, cert.certified, flipped, sol.objective, hamming, stage1, cert,
                          sol.converged)
