"""Minimum-error discrimination of two known quantum states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmat
from .channels import PriorPair
from .exceptions import DimensionError, PauliDiscrimError, ValidationError

POVM_TOL = 1e-10
# eigenvalues of p1*rho1 - p2*rho2 at or below this go to the second outcome
SIGN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TwoOutcomePovm:
    """Measurement ``{P1, P2}``; outcome ``i`` means "guess hypothesis i"."""

    P1: np.ndarray
    P2: np.ndarray

    def __post_init__(self):
        p1 = qmat.as_hermitian(self.P1)
        p2 = qmat.as_hermitian(self.P2)
        if p1.shape != p2.shape:
            raise DimensionError("POVM elements have different dimensions")
        if np.max(np.abs(p1 + p2 - np.eye(p1.shape[0]))) > POVM_TOL:
            raise ValidationError("POVM elements do not sum to the identity")
        for name, el in (("P1", p1), ("P2", p2)):
            if qmat.hermitian_eigvals(el)[-1] < -POVM_TOL:
                raise ValidationError(f"POVM element {name} is not positive")
        object.__setattr__(self, "P1", p1)
        object.__setattr__(self, "P2", p2)

    @property
    def dim(self) -> int:
        return self.P1.shape[0]


def _as_priors(priors) -> PriorPair:
    return priors if isinstance(priors, PriorPair) else PriorPair(priors)


def _check_dims(*mats):
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def error_probability(povm: TwoOutcomePovm, rho1, rho2, priors) -> float:
    """Average error ``p1 Tr[rho1 P2] + p2 Tr[rho2 P1]`` of a given measurement."""
    pr = _as_priors(priors)
    rho1 = qmat.as_density_matrix(rho1)
    rho2 = qmat.as_density_matrix(rho2)
    _check_dims(povm.P1, rho1, rho2)
    pe = pr.p1 * np.trace(rho1 @ povm.P2).real + pr.p2 * np.trace(rho2 @ povm.P1).real
    return float(pe)


def helstrom_operator(rho1, rho2, priors) -> np.ndarray:
    pr = _as_priors(priors)
    rho1 = qmat.as_density_matrix(rho1)
    rho2 = qmat.as_density_matrix(rho2)
    _check_dims(rho1, rho2)
    return qmat.as_hermitian(pr.p1 * rho1 - pr.p2 * rho2)


def min_error_probability(rho1, rho2, priors) -> float:
    """Helstrom bound ``(1 - ||p1 rho1 - p2 rho2||_1) / 2``.

    Parameters
    ----------
    rho1, rho2 : array_like
        Density matrices of equal dimension.
    priors : PriorPair or float
        Prior of the first hypothesis (or a full :class:`PriorPair`).

    Returns
    -------
    float
        Minimal average error probability, in ``[0, min(p1, p2)]``.
    """
    return 0.5 * (1.0 - qmat.trace_norm(helstrom_operator(rho1, rho2, priors)))


def sign_split_povm(h) -> TwoOutcomePovm:
    """POVM projecting onto the positive part of `h` versus the rest.

    Eigenvalues with ``|lambda| <= 1e-12`` are assigned to ``P2``.
    """
    p1 = qmat.positive_projector(h, SIGN_TOL)
    p2 = np.eye(p1.shape[0]) - p1
    try:
        return TwoOutcomePovm(p1, p2)
    except ValidationError as exc:
        raise PauliDiscrimError(f"internal error building projective POVM: {exc}") from exc


def optimal_measurement(rho1, rho2, priors) -> TwoOutcomePovm:
    """Projective measurement attaining :func:`min_error_probability`."""
    return sign_split_povm(helstrom_operator(rho1, rho2, priors))
