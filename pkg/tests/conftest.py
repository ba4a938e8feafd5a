import numpy as np
import pytest

from pauli_discrim.channels import GeneralizedPauliChannel, PauliChannel, PriorPair
from pauli_discrim.discrim import DiscriminationProblem

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(rng, n, rank=None):
    rank = n if rank is None else rank
    a = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_probs(rng, size, sparse=False):
    q = rng.dirichlet(np.ones(size))
    if sparse:
        # zero out a random subset, keeping at least one entry
        keep = rng.random(size) < 0.5
        keep[rng.integers(size)] = True
        q = np.where(keep, q, 0.0)
        q = q / q.sum()
    return q


def random_problem(rng, d=2, sparse=False):
    p1 = rng.uniform()
    if d == 2:
        ch = [PauliChannel(random_probs(rng, 4, sparse)) for _ in range(2)]
    else:
        ch = [GeneralizedPauliChannel(d, random_probs(rng, d * d, sparse)) for _ in range(2)]
    return DiscriminationProblem(ch[0], ch[1], PriorPair(p1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
