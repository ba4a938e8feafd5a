import math

import numpy as np
import pytest

from conftest import random_density, random_probs
from pauli_discrim import channels, qmat
from pauli_discrim.channels import (
    GeneralizedPauliChannel,
    PauliChannel,
    PriorPair,
    apply,
    apply_extended,
    pauli_matrix,
    weyl_operator,
)
from pauli_discrim.exceptions import DimensionError, ValidationError

BELL = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def test_pauli_matrices():
    np.testing.assert_array_equal(pauli_matrix(0), np.eye(2))
    np.testing.assert_array_equal(pauli_matrix(1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli_matrix(3), np.diag([1, -1]))
    for m in range(4):
        s = pauli_matrix(m)
        assert qmat.is_unitary(s)
        np.testing.assert_array_equal(s, s.conj().T)
        for n in range(4):
            assert np.trace(s @ pauli_matrix(n)) == pytest.approx(2.0 * (m == n))
    with pytest.raises(ValidationError):
        pauli_matrix(4)


def test_weyl_examples():
    np.testing.assert_array_equal(weyl_operator(2, 0, 0), np.eye(2))
    np.testing.assert_array_equal(weyl_operator(2, 1, 0), pauli_matrix(1))
    x3 = weyl_operator(3, 1, 0)
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1
        np.testing.assert_array_equal(x3 @ e, np.roll(e, 1))
    with pytest.raises(ValidationError):
        weyl_operator(3, 3, 0)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_weyl_orthogonality(d):
    basis = channels.weyl_basis(d)
    for a, ua in enumerate(basis):
        for b, ub in enumerate(basis):
            assert abs(np.trace(ua.conj().T @ ub) - d * (a == b)) < 1e-12


def test_weyl_pauli_index_map():
    # X Z = -i Y, so conjugation by either gives the same map
    for w, p in enumerate(channels.WEYL_TO_PAULI):
        u = channels.weyl_basis(2)[w]
        s = pauli_matrix(p)
        overlap = np.trace(s.conj().T @ u) / 2
        assert abs(abs(overlap) - 1) < 1e-12


def test_generalized_d2_matches_pauli_action():
    rng = np.random.default_rng(4)
    for _ in range(20):
        g = GeneralizedPauliChannel(2, random_probs(rng, 4))
        rho = random_density(rng, 2)
        np.testing.assert_allclose(apply(g, rho), apply(g.to_pauli(), rho), atol=1e-12)


def test_apply_examples():
    rng = np.random.default_rng(0)
    rho = random_density(rng, 2)
    np.testing.assert_allclose(apply(PauliChannel.identity(), rho), rho, atol=1e-15)
    ket0 = np.diag([1.0, 0.0])
    np.testing.assert_allclose(apply(PauliChannel([0.25] * 4), ket0), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(
        apply(PauliChannel([0.8, 0.2, 0, 0]), ket0), np.diag([0.8, 0.2]), atol=1e-15
    )


def test_apply_extended_examples():
    bell = qmat.outer(BELL)
    np.testing.assert_allclose(apply_extended(PauliChannel.identity(), bell), bell, atol=1e-15)
    np.testing.assert_allclose(
        apply_extended(PauliChannel([0.25] * 4), bell), np.eye(4) / 4, atol=1e-15
    )
    # term-by-term expansion
    zi = np.kron(np.diag([1.0, -1.0]), np.eye(2))
    expected = 0.7 * bell + 0.3 * zi @ bell @ zi
    np.testing.assert_allclose(
        apply_extended(PauliChannel([0.7, 0, 0, 0.3]), bell), expected, atol=1e-15
    )


def test_apply_preserves_trace_and_positivity():
    rng = np.random.default_rng(1)
    for i in range(1000):
        d = 2 if i % 2 else 3
        ch = PauliChannel(random_probs(rng, 4)) if d == 2 else GeneralizedPauliChannel(3, random_probs(rng, 9))
        out = apply(ch, random_density(rng, d, rank=int(rng.integers(1, d + 1))))
        assert abs(np.trace(out).real - 1) < 1e-12
        assert np.linalg.eigvalsh(out)[0] > -1e-10


def test_apply_extended_on_product_states():
    rng = np.random.default_rng(2)
    for d in (2, 3):
        for _ in range(10):
            ch = (
                PauliChannel(random_probs(rng, 4))
                if d == 2
                else GeneralizedPauliChannel(d, random_probs(rng, d * d))
            )
            rho, tau = random_density(rng, d), random_density(rng, d)
            np.testing.assert_allclose(
                apply_extended(ch, np.kron(rho, tau)), np.kron(apply(ch, rho), tau), atol=1e-12
            )


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply(PauliChannel.identity(), np.eye(3) / 3)
    with pytest.raises(DimensionError):
        apply_extended(PauliChannel.identity(), np.eye(2) / 2)


def test_probability_validation():
    PauliChannel([0.5, 0.5 + 5e-13, 0, 0])  # drift below 1e-12 is renormalized
    with pytest.raises(ValidationError, match="does not sum to 1"):
        PauliChannel([0.5, 0.4, 0, 0])
    with pytest.raises(ValidationError):
        PauliChannel([1.5, -0.5, 0, 0])
    with pytest.raises(DimensionError):
        PauliChannel([1, 0, 0])
    with pytest.raises(DimensionError):
        GeneralizedPauliChannel(3, [1, 0, 0, 0])
    with pytest.raises(ValidationError):
        PriorPair(1.2)
    assert PriorPair(0.3).p2 == pytest.approx(0.7)
