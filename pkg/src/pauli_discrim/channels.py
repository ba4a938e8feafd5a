"""Qubit Pauli channels and generalized Pauli (Weyl) channels.

A channel is a probability vector over a fixed orthogonal unitary basis,
acting as ``rho -> sum_n q_n U_n rho U_n^dagger``. Qubit channels use the
Hermitian Pauli basis ``(I, X, Y, Z)``; dimension-``d`` channels use the
shift/clock products ``X^m Z^n`` indexed ``m * d + n``.

For ``d = 2`` the two bases are related by ``X Z = -i Y``, so the Weyl
index ``(m, n)`` maps to the Pauli index through :data:`WEYL_TO_PAULI`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import qmat
from .exceptions import DimensionError, ValidationError

PROB_TOL = 1e-12

# flattened Weyl index m*2 + n  ->  Pauli index (I, X, Y, Z)
WEYL_TO_PAULI = (0, 3, 1, 2)

_PAULIS = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def pauli_matrix(n: int) -> np.ndarray:
    """Return sigma_n for n in 0..3, i.e. I, X, Y, Z."""
    if not 0 <= n <= 3:
        raise ValidationError(f"Pauli index must be in 0..3, got {n}")
    return qmat.as_matrix(_PAULIS[n])


@lru_cache(maxsize=None)
def _weyl(d: int, m: int, n: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return qmat.as_matrix(np.linalg.matrix_power(shift, m) @ np.linalg.matrix_power(clock, n))


def weyl_operator(d: int, m: int, n: int) -> np.ndarray:
    """Generalized Pauli operator ``X^m Z^n`` in dimension `d`.

    ``X|k> = |k+1 mod d>`` and ``Z|k> = omega^k |k>`` with
    ``omega = exp(2 pi i / d)``. No extra phase is applied.
    """
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    if not (0 <= m < d and 0 <= n < d):
        raise ValidationError(f"Weyl indices ({m}, {n}) out of range for d={d}")
    return _weyl(int(d), int(m), int(n))


def weyl_basis(d: int) -> tuple[np.ndarray, ...]:
    return tuple(weyl_operator(d, m, n) for m in range(d) for n in range(d))


def pauli_basis() -> tuple[np.ndarray, ...]:
    return tuple(pauli_matrix(n) for n in range(4))


def _check_probs(probs, size: int, label: str) -> np.ndarray:
    q = np.asarray(probs, dtype=float)
    if q.shape != (size,):
        raise DimensionError(f"{label} must have {size} entries, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValidationError(f"{label} has non-finite entries")
    if np.any(q < -PROB_TOL) or np.any(q > 1 + PROB_TOL):
        raise ValidationError(f"{label} entries must lie in [0, 1]")
    total = q.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"{label} does not sum to 1 (sum = {total!r})")
    q = np.clip(q, 0.0, None)
    q = q / q.sum()
    q.flags.writeable = False
    return q


@dataclass(frozen=True, eq=False)
class PauliChannel:
    """Qubit channel ``rho -> sum_n q_n sigma_n rho sigma_n``.

    `probs` are the weights of (I, X, Y, Z).
    """

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _check_probs(self.probs, 4, "probs"))

    @property
    def d(self) -> int:
        return 2

    def unitaries(self) -> tuple[np.ndarray, ...]:
        return pauli_basis()

    @classmethod
    def identity(cls) -> "PauliChannel":
        return cls([1.0, 0.0, 0.0, 0.0])

    @classmethod
    def depolarizing(cls, p: float) -> "PauliChannel":
        """Weight ``1 - p`` on the identity and ``p / 3`` on each flip."""
        return cls([1 - p, p / 3, p / 3, p / 3])

    def __repr__(self):
        return f"PauliChannel(probs={self.probs.tolist()})"


@dataclass(frozen=True, eq=False)
class GeneralizedPauliChannel:
    """Dimension-`d` channel over the Weyl operators ``X^m Z^n``.

    `probs` has ``d**2`` entries, entry ``m * d + n`` weighting ``X^m Z^n``.
    """

    d: int
    probs: np.ndarray

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValidationError(f"dimension must be an integer >= 2, got {self.d}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "probs", _check_probs(self.probs, self.d ** 2, "probs"))

    def unitaries(self) -> tuple[np.ndarray, ...]:
        return weyl_basis(self.d)

    def to_pauli(self) -> PauliChannel:
        """Re-express a ``d = 2`` channel over the Hermitian Pauli basis."""
        if self.d != 2:
            raise DimensionError("only d = 2 channels have a Pauli-basis form")
        q = np.zeros(4)
        for w, p in enumerate(WEYL_TO_PAULI):
            q[p] = self.probs[w]
        return PauliChannel(q)

    def __repr__(self):
        return f"GeneralizedPauliChannel(d={self.d}, probs={self.probs.tolist()})"


Channel = Union[PauliChannel, GeneralizedPauliChannel]


@dataclass(frozen=True)
class PriorPair:
    """A priori probabilities ``(p1, 1 - p1)`` of the two hypotheses."""

    p1: float

    def __post_init__(self):
        p1 = float(self.p1)
        if not 0.0 <= p1 <= 1.0:
            raise ValidationError(f"p1 must lie in [0, 1], got {self.p1}")
        object.__setattr__(self, "p1", p1)

    @property
    def p2(self) -> float:
        return 1.0 - self.p1


def apply(ch: Channel, rho) -> np.ndarray:
    """Apply the channel to a density matrix of dimension ``ch.d``."""
    rho = qmat.as_density_matrix(rho)
    if rho.shape[0] != ch.d:
        raise DimensionError(f"state has dimension {rho.shape[0]}, channel acts on {ch.d}")
    out = sum(q * u @ rho @ u.conj().T for q, u in zip(ch.probs, ch.unitaries()) if q)
    return qmat.as_density_matrix(out)


def apply_extended(ch: Channel, xi) -> np.ndarray:
    """Apply ``ch (x) id`` to a bipartite state of dimension ``d**2``.

    The channel acts on the first tensor factor.
    """
    xi = qmat.as_density_matrix(xi)
    d = ch.d
    if xi.shape[0] != d * d:
        raise DimensionError(f"state has dimension {xi.shape[0]}, expected {d * d}")
    eye = np.eye(d)
    out = np.zeros_like(xi)
    for q, u in zip(ch.probs, ch.unitaries()):
        if q:
            ue = np.kron(u, eye)
            out = out + q * ue @ xi @ ue.conj().T
    return qmat.as_density_matrix(out)
