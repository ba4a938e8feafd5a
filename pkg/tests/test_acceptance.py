"""Acceptance criteria, one test each. Every test logs a PASS/FAIL line."""

import json
import time
from pathlib import Path

import numpy as np

from conftest import random_problem, random_unitary
from pauli_discrim import cli
from pauli_discrim.channels import PauliChannel, PriorPair, apply_extended, weyl_operator
from pauli_discrim.discrim import (
    BlochAngles,
    DiscriminationProblem,
    assisted_pe,
    bell_povm,
    discrimination_operator,
    entanglement_needed,
    max_entangled,
    nonorthogonal_bounds,
    r_vector,
    solve,
    unassisted_pe,
    xi_eigenvalues,
)
from pauli_discrim.helstrom import error_probability, min_error_probability
from pauli_discrim.oracle import oracle_assisted, oracle_unassisted

DATA = Path(__file__).parent / "data"


def record(log, n, ok, detail, started):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({time.perf_counter() - started:.1f}s)"
    log.append(line)
    print(line)
    assert ok, line


def psi_outputs(problem, psi):
    proj = np.outer(psi, psi.conj())
    return apply_extended(problem.channel1, proj), apply_extended(problem.channel2, proj)


def test_criterion_01_unassisted_oracle(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 0.0
    for i in range(1000):
        p = random_problem(rng, sparse=i % 4 == 0)
        est, _ = oracle_unassisted(p)
        worst = max(worst, abs(unassisted_pe(r_vector(p))[0] - est))
    record(acceptance_log, 1, worst <= 1e-9, f"1000 qubit problems, max |closed - oracle| = {worst:.2e}", t0)


def test_criterion_02_assisted_oracle(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = {2: 0.0, 3: 0.0}
    for d, count in ((2, 200), (3, 50)):
        for i in range(count):
            p = random_problem(rng, d=d, sparse=i % 4 == 0)
            worst[d] = max(worst[d], abs(assisted_pe(r_vector(p)) - oracle_assisted(p)))
    ok = max(worst.values()) <= 1e-4
    record(acceptance_log, 2, ok, f"assisted gap d=2 {worst[2]:.2e}, d=3 {worst[3]:.2e}", t0)


def test_criterion_03_any_max_entangled_input(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for i in range(500):
        d = 2 + i % 2
        p = random_problem(rng, d=d)
        psi = max_entangled(d, random_unitary(rng, d))
        rho1, rho2 = psi_outputs(p, psi)
        worst = max(worst, abs(min_error_probability(rho1, rho2, p.priors) - assisted_pe(r_vector(p))))
    record(acceptance_log, 3, worst <= 1e-10, f"500 cases, max Helstrom gap = {worst:.2e}", t0)


def test_criterion_04_operator_eigenvalues(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    for i in range(500):
        d = 2 + i % 2
        p = random_problem(rng, d=d, sparse=i % 5 == 0)
        v = random_unitary(rng, d) if i % 3 == 0 else None
        lam = np.linalg.eigvalsh(discrimination_operator(p, v))
        worst = max(worst, np.max(np.abs(np.sort(lam) - np.sort(r_vector(p)))))
    record(acceptance_log, 4, worst <= 1e-10, f"500 problems, max eigenvalue error = {worst:.2e}", t0)


def test_criterion_05_bell_povm(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    worst_pe = worst_complete = 0.0
    min_eig = np.inf
    for i in range(500):
        d = 2 + i % 2
        p = random_problem(rng, d=d, sparse=i % 5 == 0)
        r = r_vector(p)
        povm = bell_povm(r, d, p.unitaries())
        rho1, rho2 = psi_outputs(p, max_entangled(d))
        worst_pe = max(worst_pe, abs(error_probability(povm, rho1, rho2, p.priors) - assisted_pe(r)))
        worst_complete = max(worst_complete, np.max(np.abs(povm.P1 + povm.P2 - np.eye(d * d))))
        min_eig = min(min_eig, np.linalg.eigvalsh(povm.P1)[0], np.linalg.eigvalsh(povm.P2)[0])
    ok = worst_pe <= 1e-10 and worst_complete <= 1e-14 and min_eig >= -1e-14
    detail = (
        f"500 problems, error gap {worst_pe:.2e}, completeness {worst_complete:.1e}, "
        f"min eigenvalue {min_eig:.1e}"
    )
    record(acceptance_log, 5, ok, detail, t0)


def test_criterion_06_golden_example(acceptance_log):
    t0 = time.perf_counter()
    p = DiscriminationProblem(PauliChannel([0, 1 / 3, 1 / 3, 1 / 3]), PauliChannel.identity(), PriorPair(0.5))
    res = solve(p)
    est, _ = oracle_unassisted(p)
    ok = (
        res.pe_assisted == 0.0
        and abs(res.pe_unassisted - 1 / 6) <= 1e-12
        and abs(est - 1 / 6) <= 1e-12
        and res.entanglement_required is True
    )
    detail = (
        f"pe_assisted={res.pe_assisted!r}, pe_unassisted={res.pe_unassisted:.15f}, "
        f"oracle={est:.15f}, entanglement_required={res.entanglement_required}"
    )
    record(acceptance_log, 6, ok, detail, t0)


def test_criterion_07_necessity(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    mismatch = disagree = needed = 0
    for i in range(10_000):
        r = r_vector(random_problem(rng, sparse=i % 10 == 0))
        pred = entanglement_needed(r)
        needed += pred
        gap = assisted_pe(r) < unassisted_pe(r)[0] - 1e-9
        mismatch += pred != gap
        disagree += pred != entanglement_needed(r, form="product")
    ok = mismatch == 0 and disagree == 0
    detail = f"10^4 problems ({needed} need entanglement), {mismatch} mismatches, {disagree} form disagreements"
    record(acceptance_log, 7, ok, detail, t0)


def test_criterion_08_single_unitaries(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        i, j = rng.integers(4, size=2)
        p = DiscriminationProblem(
            PauliChannel(np.eye(4)[i]), PauliChannel(np.eye(4)[j]), PriorPair(rng.uniform())
        )
        res = solve(p)
        worst = max(worst, abs(res.pe_assisted - res.pe_unassisted))
    record(acceptance_log, 8, worst <= 1e-12, f"100 unitary pairs, max |p_E - p'_E| = {worst:.2e}", t0)


def test_criterion_09_stationary_points(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    thetas = np.linspace(0, np.pi, 37)
    phis = np.arange(72) * 2 * np.pi / 72
    stationary = [BlochAngles(t, f) for t in (0.0, np.pi / 2) for f in (0.0, np.pi / 2)]
    over = attain = 0.0
    for i in range(200):
        r = r_vector(random_problem(rng, sparse=i % 5 == 0))
        m = 1 - 2 * unassisted_pe(r)[0]
        grid = max(
            sum(map(abs, xi_eigenvalues(r, BlochAngles(t, f)))) for t in thetas for f in phis
        )
        at_stat = max(sum(map(abs, xi_eigenvalues(r, a))) for a in stationary)
        over = max(over, grid - m)
        attain = max(attain, abs(at_stat - m))
    ok = over <= 1e-10 and attain <= 1e-12
    detail = f"200 r-vectors, max(grid - M) = {over:.2e}, stationary |max - M| = {attain:.2e}"
    record(acceptance_log, 9, ok, detail, t0)


def _mixture_outputs(unitaries, q1, q2, psi):
    eye = np.eye(unitaries[0].shape[0])
    projs = []
    for u in unitaries:
        phi = np.kron(u, eye) @ psi
        projs.append(np.outer(phi, phi.conj()))
    return sum(a * x for a, x in zip(q1, projs)), sum(b * x for b, x in zip(q2, projs))


def test_criterion_10_nonorthogonal_bounds(acceptance_log):
    t0 = time.perf_counter()
    rng = np.random.default_rng(10)
    order = helstrom_gap = ortho_gap = 0.0
    for i in range(100):
        d = 2 + i % 2
        u0, u1 = random_unitary(rng, d), random_unitary(rng, d)
        q1, q2, p1 = rng.dirichlet([1, 1]), rng.dirichlet([1, 1]), rng.uniform()
        r = p1 * q1 - (1 - p1) * q2
        lower, upper = nonorthogonal_bounds([u0, u1], r)
        rho1, rho2 = _mixture_outputs([u0, u1], q1, q2, max_entangled(d))
        order = max(order, lower - upper)
        helstrom_gap = max(helstrom_gap, abs(min_error_probability(rho1, rho2, p1) - upper))
        # U0 Z is trace-orthogonal to U0
        lo, up = nonorthogonal_bounds([u0, u0 @ weyl_operator(d, 0, 1)], r)
        ortho_gap = max(ortho_gap, abs(lo - up))
    ok = order <= 1e-10 and helstrom_gap <= 1e-10 and ortho_gap <= 1e-10
    detail = (
        f"100 sets, max(lower - upper) = {order:.2e}, |Helstrom - upper| = {helstrom_gap:.2e}, "
        f"orthogonalized |lower - upper| = {ortho_gap:.2e}"
    )
    record(acceptance_log, 10, ok, detail, t0)


CLI_EXPECTED = {
    "identical.json": dict(pe_assisted=0.3, pe_unassisted=0.3, optimal_axis="z", entanglement_required="false"),
    "xyz_vs_identity.json": dict(
        pe_assisted=0.0, pe_unassisted=1 / 6, optimal_axis="z", entanglement_required="true"
    ),
    # r = (-0.1, 0.1, 0, 0): z and y tie at 0.2, z wins the tie
    "bitflip.json": dict(pe_assisted=0.4, pe_unassisted=0.4, optimal_axis="z", entanglement_required="false"),
}


def test_criterion_11_cli_contract(acceptance_log, capsys, tmp_path):
    t0 = time.perf_counter()
    problems = []

    def check(cond, what):
        if not cond:
            problems.append(what)

    for name, want in CLI_EXPECTED.items():
        code = cli.main(["solve", str(DATA / name)])
        out = capsys.readouterr().out
        rep = dict(line.split("=", 1) for line in out.splitlines())
        check(code == 0, f"{name} exit {code}")
        for key in ("pe_assisted", "pe_unassisted"):
            check(abs(float(rep[key]) - want[key]) <= 5e-10, f"{name} {key}={rep[key]}")
        check(rep["optimal_axis"] == want["optimal_axis"], f"{name} axis")
        check(rep["entanglement_required"] == want["entanglement_required"], f"{name} entanglement")
    check(cli.main(["verify", str(DATA / "xyz_vs_identity.json"), "--seed", "42"]) == 0, "verify exit")
    check(cli.main(["verify", str(DATA / "bitflip.json"), "--perturb", "0.01"]) == 3, "verify failure exit")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 1, "kind": "pauli", "q1": [0.25, 0.25, 0, 0], "q2": [1, 0, 0, 0], "p1": 0.5}))
    check(cli.main(["solve", str(bad)]) == 2, "bad-sum exit")
    check("q1 does not sum to 1" in capsys.readouterr().err, "bad-sum message")
    bad.write_text("{")
    check(cli.main(["solve", str(bad)]) == 1, "malformed exit")
    capsys.readouterr()
    record(acceptance_log, 11, not problems, "CLI reports and exit codes" + (f": {problems}" if problems else ""), t0)

