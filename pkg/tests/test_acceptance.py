"""End-to-end acceptance checks, one test per contract item.

Each test is self-contained, uses pinned seeds, and states its tolerance
inline. Run with -v to get one pass/fail line per item.
"""

import math
import time

import numpy as np
import pytest

from eub import (
    BirkhoffPoint,
    RngSeed,
    SubspacePair,
    apply_transform,
    beat_rate,
    birkhoff_matrix,
    bound_deutsch,
    bound_ladder,
    bound_mu,
    classical_bound,
    cross_gram,
    cross_section_scan,
    deutsch_max_product,
    eur_lhs,
    fourier_matrix,
    haar_unitary,
    ladder_from_coefficients,
    lemma_max_value,
    lift_residual,
    majorization_fuzz,
    maximizing_state,
    pair_objective,
    permutation_power,
    random_transform,
    renyi_entropy,
    rotation_matrix,
    s_coefficients,
    slomczynski_check,
    unistochastic_lift_3,
)

ALPHA_GRID = (0.0, 0.5, 1.0, 2.0, math.inf)


def test_ac01_fourier_sharpness():
    "bound_mu on the n-point Fourier matrix equals ln n within 1e-12."
    for n in range(2, 9):
        assert abs(bound_mu(fourier_matrix(n)) - math.log(n)) <= 1e-12


def test_ac02_beat_rates():
    """Win rate of the top ladder rung over the max-entry bound on Haar
    samples matches the reference values within 0.012, in under 10 minutes."""
    anchors = {2: 0.814, 3: 0.971, 4: 0.972, 5: 0.984, 6: 0.991}
    t0 = time.monotonic()
    for n, anchor in anchors.items():
        res = beat_rate(n, 100_000, RngSeed(20240202))
        assert abs(res.rate - anchor) <= 0.012, f"n={n}: {res.rate} vs {anchor}"
    assert time.monotonic() - t0 < 600.0


def test_ac03_product_majorization_fuzz():
    "10^4 Haar (U, psi) pairs per dimension: p x q never escapes Q."
    for n in range(2, 7):
        rep = majorization_fuzz(n, 10_000, RngSeed(30303 + n))
        assert rep.violations == 0, f"n={n}: {rep.violations} violations"
        assert rep.worst_slack >= -1e-10


def test_ac04_ladder_chain_and_lhs():
    """Ladder rungs ascend within 1e-12 at every order, and the entropy sum
    of random states stays above the top rung within 1e-10."""
    rng = np.random.default_rng(40404)
    for n in range(2, 7):
        for i in range(1000):
            u = haar_unitary(n, RngSeed(40404 + i, stream=n))
            sc = s_coefficients(u)
            states = rng.standard_normal((10, n)) + 1j * rng.standard_normal((10, n))
            states /= np.linalg.norm(states, axis=1, keepdims=True)
            for alpha in ALPHA_GRID:
                ladder = ladder_from_coefficients(sc, alpha).ladder
                assert np.all(np.diff(ladder) >= -1e-12)
                for psi in states:
                    assert eur_lhs(u, psi, alpha) >= ladder[-1] - 1e-10


def test_ac05_deutsch_relation():
    """The (1+c)/2 closed form never exceeds the -2 ln c form, and its
    underlying max product is attained by the two-subspace maximizer."""
    for n in range(2, 7):
        for i in range(200):
            u = haar_unitary(n, RngSeed(50505 + i, stream=n))
            assert bound_deutsch(u) <= bound_mu(u) + 1e-12
        for theta in np.linspace(0.0, math.pi / 2, 11):
            r = rotation_matrix(float(theta))
            assert bound_deutsch(r) <= bound_mu(r) + 1e-12
    # cross-validation against the extremal construction
    for n in range(2, 7):
        for i in range(40):
            u = haar_unitary(n, RngSeed(51515 + i, stream=n))
            j_star, i_star = np.unravel_index(int(np.abs(u).argmax()), u.shape)
            first = np.zeros((1, n), dtype=complex)
            first[0, i_star] = 1.0
            second = u[j_star : j_star + 1, :].conj()
            psi = maximizing_state(SubspacePair(first, second))
            prod = (abs(psi[i_star]) ** 2) * (abs((u @ psi)[j_star]) ** 2)
            assert abs(prod - deutsch_max_product(u)) <= 1e-10


def test_ac06_two_subspace_extremal_suite():
    """100 random subspace pairs per dimension: the 1 + sigma_1 value is an
    upper bound (1e-10), is attained (1e-10) with equal subspace weights
    (1e-10), and matches the block-matrix top eigenvalue (1e-12)."""
    rng = np.random.default_rng(60606)
    for n in range(2, 7):
        for i in range(100):
            m1 = int(rng.integers(1, n + 1))
            m2 = int(rng.integers(1, n + 1))
            u1 = haar_unitary(n, RngSeed(60606 + 2 * i, stream=n))
            u2 = haar_unitary(n, RngSeed(60606 + 2 * i + 1, stream=n))
            sp = SubspacePair(u1[:m1], u2[:m2])
            top = lemma_max_value(sp)

            states = rng.standard_normal((1000, n)) + 1j * rng.standard_normal((1000, n))
            states /= np.linalg.norm(states, axis=1, keepdims=True)
            w1 = (np.abs(sp.first_set.conj() @ states.T) ** 2).sum(axis=0)
            w2 = (np.abs(sp.second_set.conj() @ states.T) ** 2).sum(axis=0)
            assert float((w1 + w2).max()) <= top + 1e-10

            psi = maximizing_state(sp)
            assert abs(pair_objective(sp, psi) - top) <= 1e-10
            p1 = float((np.abs(sp.first_set.conj() @ psi) ** 2).sum())
            p2 = float((np.abs(sp.second_set.conj() @ psi) ** 2).sum())
            assert abs(p1 - p2) <= 1e-10

            a = cross_gram(sp)
            block = np.block([[np.eye(m1), a.conj().T], [a, np.eye(m2)]])
            lam = float(np.linalg.eigvalsh(block)[-1])
            assert abs(lam - top) <= 1e-12


def test_ac07_equivalence_invariance():
    """10^3 random (U, transform) pairs per dimension: coefficients and all
    bounds agree before and after within 1e-10."""
    rng = np.random.default_rng(70707)
    for n in range(2, 6):
        for i in range(1000):
            u = haar_unitary(n, RngSeed(70707 + i, stream=n))
            v = apply_transform(u, random_transform(n, rng))
            sc_u = s_coefficients(u)
            sc_v = s_coefficients(v)
            assert np.max(np.abs(sc_u.s - sc_v.s)) <= 1e-10
            for alpha in ALPHA_GRID:
                rep_u = ladder_from_coefficients(sc_u, alpha)
                rep_v = ladder_from_coefficients(sc_v, alpha)
                assert abs(rep_u.b_deutsch - rep_v.b_deutsch) <= 1e-10
                assert abs(rep_u.b_mu - rep_v.b_mu) <= 1e-10
                assert np.max(np.abs(rep_u.ladder - rep_v.ladder)) <= 1e-10


def test_ac08_classical_analogue():
    """10^4 random column-stochastic (T, P) instances satisfy the mixture
    inequalities and H(P) + H(TP) >= -ln(max entry) within 1e-10; the
    identity and flat matrices give 0 and ln n exactly."""
    rng = np.random.default_rng(80808)
    for i in range(10_000):
        n = 2 + i % 5
        t = rng.exponential(size=(n, n))
        t /= t.sum(axis=0, keepdims=True)
        p = rng.exponential(size=n)
        p /= p.sum()
        assert slomczynski_check(t, p)
        total = renyi_entropy(p, 1.0) + renyi_entropy(t @ p, 1.0)
        assert total >= classical_bound(t) - 1e-10
    for n in range(2, 7):
        assert classical_bound(np.eye(n)) == 0.0
        assert classical_bound(np.full((n, n), 1.0 / n)) == math.log(n)


def test_ac09_cross_section_scan():
    """At grid step 0.01 the feasible set matches an independent link-cri-
    terion recomputation; every feasible lift reproduces its matrix within
    1e-9; the flat center keeps a strictly positive bound improvement."""
    records = cross_section_scan(0.01, 1.0)
    assert len(records) == 5151
    n_feasible = 0
    for rec in records:
        mat = birkhoff_matrix(BirkhoffPoint(min(rec.a, 1.0), min(rec.b, 1.0)))
        links = np.sqrt(np.clip(mat[0, :] * mat[1, :], 0.0, None))
        feasible = 2.0 * float(links.max()) <= float(links.sum()) + 1e-12
        assert feasible == rec.feasible, f"flag mismatch at ({rec.a}, {rec.b})"
        if rec.feasible:
            n_feasible += 1
            u = unistochastic_lift_3(mat)
            assert lift_residual(u, mat) <= 1e-9
            assert rec.diff == pytest.approx(rec.b_mu - rec.b_ladder_2, abs=1e-15)
        else:
            assert rec.b_mu is None and rec.b_ladder_2 is None and rec.diff is None
    assert 0 < n_feasible < len(records)

    center = birkhoff_matrix(BirkhoffPoint(1.0 / 3.0, 1.0 / 3.0))
    u = unistochastic_lift_3(center)
    assert bound_mu(u) - bound_ladder(u, 1.0).ladder[1] > 0.0


def test_ac10_family_sweeps():
    """Rotation curves are symmetric about the quarter turn, cyclic-power
    curves vanish at integer powers, and ladders ascend pointwise."""
    thetas = np.linspace(0.0, math.pi / 2, 21)
    reports = [bound_ladder(rotation_matrix(float(t)), 1.0) for t in thetas]
    for rep, mirror in zip(reports, reversed(reports)):
        assert abs(rep.b_mu - mirror.b_mu) <= 1e-10
        assert abs(rep.b_deutsch - mirror.b_deutsch) <= 1e-10
        assert np.max(np.abs(rep.ladder - mirror.ladder)) <= 1e-10
    for rep in (reports[0], reports[-1]):
        assert rep.b_mu <= 1e-12 and rep.ladder[-1] <= 1e-12

    for n in (3, 4, 5):
        for beta in np.linspace(0.0, 1.0, 21):
            u = permutation_power(n, float(beta))
            sc = s_coefficients(u)
            for alpha in (1.0, math.inf):
                rep = ladder_from_coefficients(sc, alpha)
                assert np.all(np.diff(rep.ladder) >= -1e-12)
                if beta in (0.0, 1.0):
                    assert rep.b_mu <= 1e-12
                    assert rep.ladder[-1] <= 1e-12
