"""Brute-force numerical optima used to cross-check the closed forms.

None of these routines use the r-vector formulas. They evaluate the
definition directly, apply each channel to a trial input, and take the
Helstrom error of the two outputs, then minimize over inputs by grid or
random search followed by Nelder-Mead refinement. Trace norms are computed
with LAPACK (``numpy.linalg.eigvalsh``) rather than the package's Jacobi
solver, so the two routes share no numerical code.

Random numbers come from ``numpy.random.default_rng(seed)`` (PCG64), so
every estimate is reproducible from its :class:`SearchConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from . import qmat
from .channels import PriorPair
from .discrim import BlochAngles, DiscriminationProblem
from .exceptions import DimensionError, ValidationError

MAX_ASSISTED_DIM = 5
# cap on simplex restarts during assisted refinement
_MAX_ROUNDS = 20


@dataclass(frozen=True)
class SearchConfig:
    grid_theta: int = 181
    grid_phi: int = 360
    restarts: int = 200
    refine_iters: int = 500
    seed: int = 0
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.grid_theta < 2 or self.grid_phi < 2:
            raise ValidationError("grid sizes must be >= 2")
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if self.refine_iters < 0:
            raise ValidationError("refine_iters must be >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")


def _batched_trace_norm(ops: np.ndarray) -> np.ndarray:
    if ops.shape[-1] == 2:
        # |l1| + |l2| = max(|a + c|, l1 - l2) for a Hermitian [[a, b], [b*, c]]
        a = ops[..., 0, 0].real
        c = ops[..., 1, 1].real
        gap = 2.0 * np.sqrt(0.25 * (a - c) ** 2 + np.abs(ops[..., 0, 1]) ** 2)
        return np.maximum(np.abs(a + c), gap)
    return np.sum(np.abs(np.linalg.eigvalsh(ops)), axis=-1)


def _liouville(unitaries, probs) -> np.ndarray:
    """Matrix of ``rho -> sum_n q_n U rho U^dagger`` acting on row-major vec(rho)."""
    return sum(q * np.kron(u, u.conj()) for q, u in zip(probs, unitaries))


def _refine(fun, x0, step, cfg: SearchConfig, normalize=None):
    """Nelder-Mead restarted with a halved simplex while it keeps improving."""
    x, best = np.asarray(x0, dtype=float), float(fun(x0))
    for _ in range(_MAX_ROUNDS):
        x_new, fx = _nelder_mead(fun, x, step, cfg.refine_iters)
        if fx < best:
            x = x_new if normalize is None else normalize(x_new)
        gain = best - fx
        best = min(best, fx)
        if gain < cfg.tolerance:
            break
        step = max(step / 2, 1e-3)
    return x, best


def _nelder_mead(fun, x0, step, iters):
    x0 = np.asarray(x0, dtype=float)
    simplex = np.vstack([x0] + [x0 + step * e for e in np.eye(x0.size)])
    res = minimize(
        fun,
        x0,
        method="Nelder-Mead",
        options=dict(
            initial_simplex=simplex,
            maxiter=iters,
            maxfev=4 * iters,
            xatol=1e-12,
            fatol=1e-15,
            adaptive=x0.size > 4,
        ),
    )
    return res.x, float(res.fun)


# ---------------------------------------------------------------------------
# no ancilla (qubits)
# ---------------------------------------------------------------------------


def _qubit_states(theta, phi) -> np.ndarray:
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    return np.stack([np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def _unassisted_objective(problem: DiscriminationProblem):
    """Return a function mapping qubit inputs ``psi[..., 2]`` to Helstrom errors."""
    pr = problem.priors
    us = problem.unitaries()
    diff_t = (
        pr.p1 * _liouville(us, problem.channel1.probs)
        - pr.p2 * _liouville(us, problem.channel2.probs)
    ).T

    def errors(psi: np.ndarray) -> np.ndarray:
        rho = (psi[..., :, None] * psi[..., None, :].conj()).reshape(psi.shape[:-1] + (4,))
        out = (rho @ diff_t).reshape(psi.shape[:-1] + (2, 2))
        return 0.5 * (1.0 - _batched_trace_norm(out))

    return errors


def unassisted_grid(problem: DiscriminationProblem, cfg: SearchConfig):
    """Grid values over ``theta in [0, pi]`` (endpoints included) and ``phi in [0, 2 pi)``."""
    theta = np.linspace(0.0, math.pi, cfg.grid_theta)
    phi = np.arange(cfg.grid_phi) * (2 * math.pi / cfg.grid_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt, pp, _unassisted_objective(problem)(_qubit_states(tt, pp))


def oracle_unassisted(problem: DiscriminationProblem, cfg: SearchConfig = SearchConfig()):
    """Minimize the unassisted error over pure qubit inputs.

    Returns
    -------
    pe : float
        Best error probability found.
    angles : BlochAngles
        Input state attaining it.
    """
    if problem.d != 2:
        raise DimensionError("the unassisted oracle handles qubit channels only")
    errors = _unassisted_objective(problem)
    tt, pp, vals = unassisted_grid(problem, cfg)
    k = int(np.argmin(vals))  # first index wins ties
    best = float(vals.flat[k])
    x_best = np.array([tt.flat[k], pp.flat[k]])
    if cfg.refine_iters > 0:

        def f(x):
            return float(errors(_qubit_states(x[0], x[1])))

        step = math.pi / max(cfg.grid_theta - 1, 1)
        x, fx = _nelder_mead(f, x_best, step, cfg.refine_iters)
        if fx < best:
            best, x_best = fx, x
    return best, BlochAngles.wrap(float(x_best[0]), float(x_best[1]))


# ---------------------------------------------------------------------------
# with ancilla
# ---------------------------------------------------------------------------


def _assisted_objective(problem: DiscriminationProblem):
    """Return a function mapping inputs ``psi[..., d*d]`` to Helstrom errors of
    ``(E_i (x) id)(|psi><psi|)``."""
    d = problem.d
    us = np.stack(problem.unitaries())
    q1 = problem.channel1.probs
    q2 = problem.channel2.probs
    pr = problem.priors

    def errors(psi: np.ndarray) -> np.ndarray:
        coeffs = psi.reshape(psi.shape[:-1] + (1, d, d))
        # (U (x) I) vec(C) = vec(U C)
        images = (us @ coeffs).reshape(psi.shape[:-1] + (d * d, d * d))
        proj = images[..., :, :, None] * images[..., :, None, :].conj()
        out1 = np.einsum("n,...nij->...ij", q1, proj)
        out2 = np.einsum("n,...nij->...ij", q2, proj)
        return 0.5 * (1.0 - _batched_trace_norm(pr.p1 * out1 - pr.p2 * out2))

    return errors


def _real_to_state(x: np.ndarray) -> np.ndarray:
    half = x.size // 2
    v = x[:half] + 1j * x[half:]
    return v / np.linalg.norm(v)


def random_states(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Haar-random pure states: complex Gaussian vectors, normalized."""
    v = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def oracle_assisted(problem: DiscriminationProblem, cfg: SearchConfig = SearchConfig()) -> float:
    """Minimize the error over bipartite pure inputs of dimension ``d**2``.

    `cfg.restarts` random inputs are scored; the best is refined by
    Nelder-Mead over its real and imaginary parts, restarting the simplex
    while it keeps improving.
    """
    d = problem.d
    if d > MAX_ASSISTED_DIM:
        raise DimensionError(f"assisted oracle supports d <= {MAX_ASSISTED_DIM}, got {d}")
    rng = np.random.default_rng(cfg.seed)
    starts = random_states(rng, cfg.restarts, d * d)
    errors = _assisted_objective(problem)
    vals = errors(starts)
    k = int(np.argmin(vals))
    best = float(vals[k])
    if cfg.refine_iters == 0:
        return best

    def f(x):
        return float(errors(_real_to_state(x)))

    def renormalize(x):
        v = _real_to_state(x)
        return np.concatenate([v.real, v.imag])

    _, fx = _refine(f, renormalize(np.concatenate([starts[k].real, starts[k].imag])), 0.25, cfg, renormalize)
    return min(best, fx)


# ---------------------------------------------------------------------------
# two states
# ---------------------------------------------------------------------------


def _unitary_from_params(x: np.ndarray, dim: int) -> np.ndarray:
    h = np.zeros((dim, dim), dtype=complex)
    iu = np.triu_indices(dim, 1)
    n_off = len(iu[0])
    h[np.diag_indices(dim)] = x[:dim]
    h[iu] = x[dim : dim + n_off] + 1j * x[dim + n_off :]
    h = h + np.triu(h, 1).conj().T
    return expm(1j * h)


def _rank_splits(dim: int) -> np.ndarray:
    masks = [[(s >> k) & 1 for k in range(dim)] for s in range(1, 2 ** dim - 1)]
    return np.array(masks, dtype=float)


def oracle_state_discrimination(rho1, rho2, priors, cfg: SearchConfig = SearchConfig()) -> float:
    """Best error over random projective two-outcome measurements.

    Candidates are ``P1 = W diag(s) W^dagger`` for `cfg.restarts` Haar-random
    unitaries ``W`` and every non-trivial 0/1 pattern ``s``, plus the two
    trivial measurements. The best candidate is refined by Nelder-Mead over
    the generator of ``W``.
    """
    pr = priors if isinstance(priors, PriorPair) else PriorPair(priors)
    rho1 = qmat.as_density_matrix(rho1)
    rho2 = qmat.as_density_matrix(rho2)
    if rho1.shape != rho2.shape:
        raise DimensionError("states have different dimensions")
    dim = rho1.shape[0]
    # error of P1 is p1 - Tr[(p1 rho1 - p2 rho2) P1]
    gamma = pr.p1 * rho1 - pr.p2 * rho2
    best = min(pr.p2, pr.p1)  # P1 = I errs with p2, P1 = 0 errs with p1
    if dim == 1:
        return best
    masks = _rank_splits(dim)
    rng = np.random.default_rng(cfg.seed)
    z = rng.standard_normal((cfg.restarts, dim, dim)) + 1j * rng.standard_normal((cfg.restarts, dim, dim))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r, axis1=1, axis2=2)
    w = q * (ph / np.abs(ph))[:, None, :]
    # diag(W^dagger gamma W) gives the weight of each column projector
    diag = np.einsum("kia,ij,kja->ka", w.conj(), gamma, w).real
    errs = pr.p1 - diag @ masks.T
    ranks = masks.sum(axis=1)
    for rank in range(1, dim):
        cols = np.flatnonzero(ranks == rank)
        k, j = np.unravel_index(int(np.argmin(errs[:, cols])), (errs.shape[0], cols.size))
        s_idx = cols[j]
        best = min(best, float(errs[k, s_idx]))
        if cfg.refine_iters == 0:
            continue
        mask = masks[s_idx]
        w_k = w[k]

        def f(x, w_k=w_k, mask=mask):
            u = w_k @ _unitary_from_params(x, dim)
            return pr.p1 - float(np.einsum("ia,ij,ja,a->", u.conj(), gamma, u, mask).real)

        _, fx = _refine(f, np.zeros(dim * dim), 0.1, cfg)
        best = min(best, fx)
    return best
