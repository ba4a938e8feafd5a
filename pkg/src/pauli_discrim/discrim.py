"""Closed-form discrimination of two (generalized) Pauli channels.

Everything here is driven by the signed weight vector
``r_n = p1 q_n^(1) - p2 q_n^(2)``:

* with an entangled ancilla the optimal error is ``(1 - sum |r_n|) / 2``,
  reached by any maximally entangled input and a degenerate Bell measurement;
* without an ancilla (qubits only) the optimal error is ``(1 - M) / 2`` where
  ``M`` is the best of three pairings of the ``r_n``, one per Pauli axis;
* the ancilla helps exactly when all four ``r_n`` are non-zero and one of
  them has the sign opposite to the other three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import qmat
from .channels import Channel, PauliChannel, PriorPair, pauli_basis, weyl_basis
from .exceptions import DimensionError, ValidationError
from .helstrom import TwoOutcomePovm, sign_split_povm

# |r_n| at or below this counts as zero
ZERO_TOL = 1e-12
# candidates within this of the maximum are treated as tied
TIE_TOL = 1e-12

AXES = ("z", "x", "y")


@dataclass(frozen=True, eq=False)
class DiscriminationProblem:
    """Two channels of the same kind and dimension, with priors."""

    channel1: Channel
    channel2: Channel
    priors: PriorPair

    def __post_init__(self):
        if not isinstance(self.priors, PriorPair):
            object.__setattr__(self, "priors", PriorPair(self.priors))
        if type(self.channel1) is not type(self.channel2):
            raise ValidationError("channels must be of the same kind")
        if self.channel1.d != self.channel2.d:
            raise DimensionError(
                f"channels act on different dimensions ({self.channel1.d} vs {self.channel2.d})"
            )

    @property
    def d(self) -> int:
        return self.channel1.d

    @property
    def is_qubit(self) -> bool:
        return self.d == 2

    def unitaries(self) -> tuple[np.ndarray, ...]:
        return self.channel1.unitaries()

    def as_pauli(self) -> "DiscriminationProblem":
        """The same problem over the Hermitian Pauli basis (qubits only)."""
        if isinstance(self.channel1, PauliChannel):
            return self
        return DiscriminationProblem(
            self.channel1.to_pauli(), self.channel2.to_pauli(), self.priors
        )


@dataclass(frozen=True)
class BlochAngles:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValidationError(f"phi must lie in [0, 2 pi), got {self.phi}")

    @classmethod
    def wrap(cls, theta: float, phi: float) -> "BlochAngles":
        """Map arbitrary real angles onto the canonical ranges (same state up to phase)."""
        theta = math.fmod(theta, 2 * math.pi)
        if theta < 0:
            theta += 2 * math.pi
        if theta > math.pi:
            theta = 2 * math.pi - theta
            phi += math.pi
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0:
            phi += 2 * math.pi
        if phi >= 2 * math.pi:
            phi = 0.0
        return cls(theta, phi)

    def state(self) -> np.ndarray:
        """``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``."""
        return np.array(
            [math.cos(self.theta / 2), np.exp(1j * self.phi) * math.sin(self.theta / 2)]
        )


# +1 eigenstates of Z, X, Y
AXIS_ANGLES = {
    "z": BlochAngles(0.0, 0.0),
    "x": BlochAngles(math.pi / 2, 0.0),
    "y": BlochAngles(math.pi / 2, math.pi / 2),
}


@dataclass(frozen=True, eq=False)
class DiscriminationResult:
    """Output of :func:`solve`.

    The unassisted fields (and ``entanglement_required``) are ``None`` for
    channels in dimension ``d > 2``.
    """

    r: np.ndarray
    priors: PriorPair
    pe_assisted: float
    assisted_povm: TwoOutcomePovm
    pe_unassisted: Optional[float] = None
    optimal_axis: Optional[str] = None
    entanglement_required: Optional[bool] = None
    unassisted_povm: Optional[TwoOutcomePovm] = None


def r_vector(problem: DiscriminationProblem) -> np.ndarray:
    """Signed weights ``p1 q^(1) - p2 q^(2)``; they sum to ``p1 - p2``."""
    pr = problem.priors
    r = pr.p1 * problem.channel1.probs - pr.p2 * problem.channel2.probs
    r.flags.writeable = False
    return r


def _as_r(r, size: Optional[int] = None) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.ndim != 1:
        raise DimensionError("r must be a vector")
    if size is not None and r.size != size:
        raise DimensionError(f"r must have {size} entries, got {r.size}")
    return r


def assisted_pe(r) -> float:
    """Optimal error with an entangled ancilla, ``(1 - sum |r_n|) / 2``."""
    return 0.5 * (1.0 - math.fsum(np.abs(_as_r(r))))


def max_entangled(d: int, local_unitary=None) -> np.ndarray:
    """``(I (x) V) sum_n |n>|n> / sqrt(d)``, with ``V = I`` by default."""
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    coeffs = np.eye(d, dtype=complex)
    if local_unitary is not None:
        v = qmat.as_unitary(local_unitary)
        if v.shape != (d, d):
            raise DimensionError(f"local unitary must be {d}x{d}")
        # amplitude of |i>|j> is V[j, i] / sqrt(d)
        coeffs = v.T
    return qmat.as_pure_state(coeffs.reshape(-1) / math.sqrt(d))


def _bell_projectors(unitaries: Sequence[np.ndarray], psi: np.ndarray) -> list[np.ndarray]:
    d = unitaries[0].shape[0]
    eye = np.eye(d)
    out = []
    for u in unitaries:
        phi = np.kron(u, eye) @ psi
        out.append(np.outer(phi, phi.conj()))
    return out


def _weighted_operator(r: np.ndarray, unitaries, psi) -> np.ndarray:
    projs = _bell_projectors(unitaries, psi)
    return qmat.as_hermitian(sum(w * p for w, p in zip(r, projs)))


def discrimination_operator(problem: DiscriminationProblem, local_unitary=None) -> np.ndarray:
    """``sum_n r_n (U_n (x) I)|Psi><Psi|(U_n (x) I)^dagger`` for a maximally entangled Psi.

    Its eigenvalues are exactly the ``r_n``, since the vectors
    ``(U_n (x) I)|Psi>`` are orthonormal.
    """
    psi = max_entangled(problem.d, local_unitary)
    return _weighted_operator(r_vector(problem), problem.unitaries(), psi)


def _default_unitaries(d: int, size: int):
    if d == 2 and size == 4:
        return pauli_basis()
    return weyl_basis(d)


def bell_povm(r, d: int, unitaries=None) -> TwoOutcomePovm:
    """Degenerate Bell measurement for the weights `r`.

    ``P1`` sums the Bell projectors ``(U_n (x) I)|Psi><Psi|(U_n (x) I)^dagger``
    with ``r_n > 1e-12``; ``P2`` sums the rest. `unitaries` defaults to the
    Pauli basis for ``d = 2`` and to the Weyl basis otherwise, and must be in
    the same order as `r`.
    """
    r = _as_r(r)
    if r.size != d * d:
        raise DimensionError(f"r must have d**2 = {d * d} entries, got {r.size}")
    if unitaries is None:
        unitaries = _default_unitaries(d, r.size)
    projs = _bell_projectors(unitaries, max_entangled(d))
    dim = d * d
    p1 = np.zeros((dim, dim), dtype=complex)
    p2 = np.zeros((dim, dim), dtype=complex)
    for w, p in zip(r, projs):
        if w > ZERO_TOL:
            p1 += p
        else:
            p2 += p
    return TwoOutcomePovm(p1, p2)


def xi_operator(r, angles: BlochAngles) -> np.ndarray:
    """``sum_n r_n sigma_n |psi><psi| sigma_n`` for the qubit state at `angles`."""
    r0, r1, r2, r3 = _as_r(r, 4)
    c2 = math.cos(angles.theta / 2) ** 2
    s2 = math.sin(angles.theta / 2) ** 2
    off = 0.5 * math.sin(angles.theta) * (
        (r0 - r3) * np.exp(-1j * angles.phi) + (r1 - r2) * np.exp(1j * angles.phi)
    )
    return qmat.as_hermitian(
        [
            [(r0 + r3) * c2 + (r1 + r2) * s2, off],
            [np.conj(off), (r0 + r3) * s2 + (r1 + r2) * c2],
        ]
    )


def xi_eigenvalues(r, angles: BlochAngles) -> tuple[float, float]:
    """The two eigenvalues of :func:`xi_operator`, larger first."""
    r0, r1, r2, r3 = _as_r(r, 4)
    ct2 = math.cos(angles.theta) ** 2
    st2 = math.sin(angles.theta) ** 2
    b, c = r0 - r3, r1 - r2
    rad = ct2 * (r0 + r3 - r1 - r2) ** 2 + st2 * (b * b + c * c + 2 * math.cos(2 * angles.phi) * b * c)
    root = math.sqrt(max(rad, 0.0))
    total = r0 + r1 + r2 + r3
    return 0.5 * (total + root), 0.5 * (total - root)


def axis_candidates(r) -> tuple[float, float, float]:
    """Values of ``|lambda_1| + |lambda_2|`` for Z, X and Y eigenstate inputs."""
    r0, r1, r2, r3 = _as_r(r, 4)
    return (
        abs(r0 + r3) + abs(r1 + r2),
        abs(r0 + r1) + abs(r2 + r3),
        abs(r0 + r2) + abs(r1 + r3),
    )


def unassisted_pe(r) -> tuple[float, str]:
    """Optimal qubit error without ancilla and the axis whose eigenstate attains it.

    Ties between axes resolve in the order z, x, y.
    """
    cands = axis_candidates(r)
    best = max(cands)
    k = next(i for i, v in enumerate(cands) if v >= best - TIE_TOL)
    return 0.5 * (1.0 - best), AXES[k]


def unassisted_input(axis: str) -> np.ndarray:
    """The +1 eigenstate of the Pauli matrix along `axis`."""
    return AXIS_ANGLES[axis].state()


def unassisted_povm(r) -> TwoOutcomePovm:
    """Helstrom measurement for the optimal unentangled qubit input.

    Both eigenstates of the winning axis give the same stationary value, so
    the +1 eigenstate is used. The measurement projects onto the positive part
    of ``p1 E1(rho) - p2 E2(rho)``, which equals :func:`xi_operator`.
    """
    _, axis = unassisted_pe(r)
    return sign_split_povm(xi_operator(r, AXIS_ANGLES[axis]))


def _nonzero_signs(r) -> Optional[np.ndarray]:
    r = _as_r(r, 4)
    if np.any(np.abs(r) <= ZERO_TOL):
        return None
    return np.sign(r)


def entanglement_needed(r, form: str = "sign") -> bool:
    """Whether an entangled ancilla strictly lowers the optimal qubit error.

    ``form="sign"`` tests for four non-zero weights split three against one;
    ``form="product"`` tests that the product of the zero-thresholded weights
    is negative. The two are equivalent.
    """
    if form == "sign":
        signs = _nonzero_signs(r)
        if signs is None:
            return False
        return int(np.sum(signs > 0)) in (1, 3)
    if form == "product":
        r = _as_r(r, 4)
        rz = np.where(np.abs(r) <= ZERO_TOL, 0.0, r)
        return bool(np.prod(rz) < 0)
    raise ValueError(f"unknown form {form!r}")


def nonorthogonal_bounds(unitaries, r) -> tuple[float, float]:
    """Bounds on the assisted error for a mixture of arbitrary unitaries.

    The lower bound ``(1 - sum |r_n|) / 2`` holds for any input; the upper
    bound is the error reached with the maximally entangled input. They meet
    when the unitaries are orthogonal under the trace inner product.
    """
    us = [qmat.as_unitary(u) for u in unitaries]
    r = _as_r(r)
    if not us:
        raise ValidationError("need at least one unitary")
    if len(us) != r.size:
        raise DimensionError(f"{len(us)} unitaries but {r.size} weights")
    d = us[0].shape[0]
    if any(u.shape != (d, d) for u in us):
        raise DimensionError("unitaries have different dimensions")
    a = _weighted_operator(r, us, max_entangled(d))
    lower = assisted_pe(r)
    upper = 0.5 * (1.0 - qmat.trace_norm(a))
    return lower, upper


def solve(problem: DiscriminationProblem) -> DiscriminationResult:
    """Closed-form solution of a discrimination problem."""
    r = r_vector(problem)
    result = dict(
        r=r,
        priors=problem.priors,
        pe_assisted=assisted_pe(r),
        assisted_povm=bell_povm(r, problem.d, problem.unitaries()),
    )
    if problem.is_qubit:
        rq = r_vector(problem.as_pauli())
        pe, axis = unassisted_pe(rq)
        result.update(
            pe_unassisted=pe,
            optimal_axis=axis,
            entanglement_required=entanglement_needed(rq),
            unassisted_povm=unassisted_povm(rq),
        )
    return DiscriminationResult(**result)


__all__ = [
    "AXES",
    "BlochAngles",
    "DiscriminationProblem",
    "DiscriminationResult",
    "assisted_pe",
    "axis_candidates",
    "bell_povm",
    "discrimination_operator",
    "entanglement_needed",
    "max_entangled",
    "nonorthogonal_bounds",
    "r_vector",
    "solve",
    "unassisted_input",
    "unassisted_pe",
    "unassisted_povm",
    "xi_eigenvalues",
    "xi_operator",
]
