"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every criterion runs at its stated tolerance and within its runtime
budget; the ``criterion`` fixture records the line for the terminal
summary.
"""

import itertools

import numpy as np

from sparsecert import cert, coherence, generators, linalg, lp, width
from sparsecert.rng import SplitMix64
from test_lp import random_feasible_lp


def test_criterion_1_analytic_widths(criterion):
    cases = [
        ([[1.0, 1.0]], 2.0),
        ([[1.0, 1.0, 1.0]], 2.0),
        ([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], 1.0),
    ]
    with criterion("criterion 1: analytic widths", 1.0):
        for A, expected in cases:
            report = width.gamma_width(linalg.null_space_basis(A))
            assert abs(report.gamma - expected) <= 1e-8, (A, report.gamma)
            assert report.k1 == 0, (A, report.k1)


def test_criterion_2_formulation_cross_check(criterion):
    with criterion("criterion 2: face vs reciprocal formulations", 60.0):
        for seed in range(1, 21):
            m = 4 if seed <= 10 else 6
            A = generators.gen_gaussian(m, 2 * m, seed)
            basis = linalg.null_space_basis(A)
            g_faces = width.gamma_width(basis).gamma
            g_recip = width.gamma_reciprocal(basis)
            assert abs(g_faces - g_recip) <= 1e-6, f"seed {seed}"
            permuted = width.gamma_width(linalg.null_space_basis(A[::-1])).gamma
            assert abs(g_faces - permuted) <= 1e-7, f"seed {seed}"


def test_criterion_3_width_dominates_coherence(criterion):
    sizes = (6, 8, 10)
    with criterion("criterion 3: width bound dominates coherence bound", 180.0):
        for seed in range(1, 51):
            m = sizes[(seed - 1) % 3]
            A = generators.gen_gaussian(m, 2 * m, seed, normalize=True)
            result = coherence.compare_bounds(A)
            assert 1.0 + 1.0 / result.M <= result.gamma + 1e-8, f"seed {seed}"
            assert result.k1 >= result.k2, f"seed {seed}"


def test_criterion_4_identity_hadamard(criterion):
    with criterion("criterion 4: identity+Hadamard m=4", 30.0):
        A = generators.gen_id_hadamard(4)
        coh = coherence.coherence(A)
        assert abs(coh.M - 0.5) <= 1e-12
        assert coh.k2 == 1
        basis = linalg.null_space_basis(A)
        w = width.gamma_width(basis)
        assert w.gamma >= 3.0 - 1e-8
        assert w.k1 >= 1
        balance = cert.max_certified_k(basis, 3)
        assert balance.k_star >= 1
        # 8 supports x 2 signs x 3 magnitudes = 48 trials, all exact
        rate = cert.recovery_experiment(A, 1, "exhaustive", 3, 1)
        assert rate == 1.0


def test_criterion_5_certificate_ordering(criterion):
    sizes = (3, 4, 5)
    with criterion("criterion 5: certificate ordering and witnesses", 180.0):
        for seed in range(1, 21):
            m = sizes[(seed - 1) % 3]
            A = generators.gen_gaussian(m, 2 * m, seed, normalize=True)
            basis = linalg.null_space_basis(A)
            k1 = width.gamma_width(basis).k1
            k2 = coherence.coherence(A).k2
            balance = cert.max_certified_k(basis, m)
            k_star = balance.k_star
            assert k2 <= k1 <= k_star, f"seed {seed}: k2={k2} k1={k1} k*={k_star}"

            rate = cert.recovery_experiment(A, k_star, "exhaustive", 2, seed)
            assert rate == 1.0, f"seed {seed}: rate {rate} at k*={k_star}"

            if k_star < m:
                worst, worst_mu = balance.worst_partition, balance.worst_mu
            else:
                _, worst, worst_mu = cert.strict_k_balanced(basis, k_star + 1)
            failure = cert.counterexample_from_witness(basis, worst, worst_mu)
            assert not failure.success, f"seed {seed}"


def test_criterion_6_oracle_agreement(criterion):
    with criterion("criterion 6: l0 oracle vs l1 decoder", 120.0):
        for seed in range(1, 11):
            A = generators.gen_gaussian(4, 8, seed)
            basis = linalg.null_space_basis(A)
            k_star = cert.max_certified_k(basis, 4).k_star
            stream = SplitMix64(seed + 1000)
            for size in range(k_star + 1):
                for combo in itertools.combinations(range(8), size):
                    planted = np.zeros(8)
                    for pos in combo:
                        planted[pos] = stream.pick_sign() * stream.uniform_in(0.5, 1.5)
                    y = A @ planted
                    solutions = cert.l0_oracle(A, y, size)
                    assert len(solutions) == 1, f"seed {seed} support {combo}"
                    decoded = cert.basis_pursuit(A, y)
                    gap = np.abs(solutions[0][1] - decoded).max()
                    assert gap <= 1e-6, f"seed {seed} support {combo}: {gap}"


def test_criterion_7_lp_kernel(criterion):
    with criterion("criterion 7: LP kernel suite", 30.0):
        optimal = lp.solve(
            lp.LpProblem([-1.0, -1.0], [[1.0, 1.0]], [1.0], [0.0, 0.0], [np.inf, np.inf])
        )
        assert optimal.status is lp.LpStatus.OPTIMAL
        assert abs(optimal.objective_value + 1.0) <= 1e-9
        unbounded = lp.solve(
            lp.LpProblem([-1.0], np.zeros((0, 1)), np.zeros(0), [0.0], [np.inf])
        )
        assert unbounded.status is lp.LpStatus.UNBOUNDED
        infeasible = lp.solve(lp.LpProblem([1.0], [[1.0]], [-1.0], [0.0], [np.inf]))
        assert infeasible.status is lp.LpStatus.INFEASIBLE

        for seed in range(1, 101):
            prob = random_feasible_lp(seed)
            sol = lp.solve(prob)
            assert sol.status is lp.LpStatus.OPTIMAL, f"seed {seed}"
            assert lp.check_solution(prob, sol, 1e-8), f"seed {seed}"
            assert lp.verify_dual_certificate(prob, sol, 1e-7), f"seed {seed}"
