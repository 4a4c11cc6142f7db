import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from unruh_discord import (
    AccelParam,
    ConvergenceError,
    JointState,
    MeasurementDirection,
    MinimizerConfig,
    OutOfRangeError,
    TruncationPolicy,
    build_rho_ar,
    conditional_ensemble,
    conditional_entropy,
    discord_at_theta,
    entropy_of_operator,
    mutual_information,
    quantum_discord,
    reduce_to_alice,
    reduce_to_rob,
)
from unruh_discord.discord import _tridiagonal_pieces, conditional_spectra, discord_theta_profile, golden_section
from unruh_discord.states import MBlockKind, m_block

from conftest import T_GRID

# frozen from tests/mp_oracle.py (40-digit purification + eigsy)
MI_HALF = 1.5290961868878638
COND_HALF_PI = 1.2259662852738237
COND_PI_3 = 1.2558445881252748
DISCORD_HALF = 0.84972370184546491


def printed_conditional(t, cutoff, d, sign):
    """Conditional state in the closed form with outcome probability 1/2."""
    p = AccelParam(t)
    m = {k: m_block(k, p, cutoff).matrix for k in MBlockKind}
    x1, x2, x3 = d.bloch
    return (1 - t * t) / 2 * ((1 + sign * x3) * m[MBlockKind.M00] + (1 - sign * x3) * m[MBlockKind.M11]
                              + sign * complex(x1, x2) * m[MBlockKind.M10]
                              + sign * complex(x1, -x2) * m[MBlockKind.M01])


class TestDirection:
    def test_unit_norm(self, rng):
        for th, ph in zip(rng.uniform(0, math.pi, 20), rng.uniform(0, 2 * math.pi, 20)):
            assert abs(np.linalg.norm(MeasurementDirection(th, ph).bloch) - 1) < 1e-14

    def test_projectors(self):
        plus, minus = MeasurementDirection(1.1, 0.4).projectors()
        assert_allclose(plus @ plus, plus, atol=1e-15)
        assert_allclose(plus + minus, np.eye(2), atol=1e-15)
        assert abs(np.trace(plus @ minus)) < 1e-15

    def test_range(self):
        with pytest.raises(OutOfRangeError):
            MeasurementDirection(4.0)


class TestMutualInformation:
    def test_bell(self, policy):
        assert mutual_information(build_rho_ar(AccelParam(0.0), policy)) == pytest.approx(2.0, abs=1e-12)

    def test_product(self):
        rob = np.diag([0.6, 0.3, 0.1])
        assert mutual_information(JointState(np.kron(np.eye(2) / 2, rob), cutoff=1)) == pytest.approx(0, abs=1e-12)

    def test_half(self, half, policy):
        rho = build_rho_ar(half, policy)
        assembled = (entropy_of_operator(reduce_to_alice(rho)) + entropy_of_operator(reduce_to_rob(rho).matrix)
                     - entropy_of_operator(rho.matrix))
        assert mutual_information(rho) == pytest.approx(assembled, abs=1e-14)
        assert mutual_information(rho) == pytest.approx(MI_HALF, abs=1e-9)


class TestConditionalEnsemble:
    def test_probabilities_half(self, rng, policy):
        for t, th, ph in zip(rng.uniform(0, 0.95, 10), rng.uniform(0, math.pi, 10), rng.uniform(0, 6.28, 10)):
            ens = conditional_ensemble(build_rho_ar(AccelParam(t), policy), MeasurementDirection(th, ph))
            assert_allclose(ens.probabilities, [0.5, 0.5], atol=1e-12)
            for s in ens.states:
                assert abs(np.trace(s.matrix) - 1) < 1e-10

    def test_z_measurement_on_bell(self, policy):
        ens = conditional_ensemble(build_rho_ar(AccelParam(0.0), policy), MeasurementDirection(0.0))
        assert_allclose(ens.states[0].matrix, np.diag([1.0, 0.0]), atol=1e-15)
        assert_allclose(ens.states[1].matrix, np.diag([0.0, 1.0]), atol=1e-15)

    def test_phi_independent_spectra(self, half, policy):
        rho = build_rho_ar(half, policy)
        a = conditional_ensemble(rho, MeasurementDirection(math.pi / 3, 0.0))
        b = conditional_ensemble(rho, MeasurementDirection(math.pi / 3, 1.7))
        for sa, sb in zip(a.states, b.states):
            assert_allclose(np.linalg.eigvalsh(sa.matrix), np.linalg.eigvalsh(sb.matrix), atol=1e-12)

    @pytest.mark.parametrize("theta,phi", [(0.4, 0.0), (math.pi / 2, 2.5), (2.9, 5.0)])
    def test_matches_closed_form(self, theta, phi, policy):
        # the closed form carries (x1 + i x2) on M10; with sigma_y = [[0, -i], [i, 0]]
        # the literal partial trace carries its conjugate, so states agree up to conjugation
        t = 0.6
        rho = build_rho_ar(AccelParam(t), policy)
        d = MeasurementDirection(theta, phi)
        ens = conditional_ensemble(rho, d)
        for k, sign in enumerate((1, -1)):
            printed = printed_conditional(t, rho.cutoff, d, sign)
            assert_allclose(ens.states[k].matrix, printed.conj(), atol=1e-12)

    def test_tridiagonal_pieces_match_dense(self, policy):
        t = 0.7
        rho = build_rho_ar(AccelParam(t), policy)
        d = MeasurementDirection(1.0, 0.8)
        ens = conditional_ensemble(rho, d)
        pieces = _tridiagonal_pieces(np.diagonal(rho.block(0, 0)), np.diagonal(rho.block(1, 1)),
                                     np.diagonal(rho.block(0, 1), offset=1), d)
        for (p, dg, sup), prob, state in zip(pieces, ens.probabilities, ens.states):
            assert p == pytest.approx(prob, abs=1e-15)
            assert_allclose(np.diagonal(state.matrix), dg, atol=1e-15)
            assert_allclose(np.diagonal(state.matrix, offset=1), sup, atol=1e-15)


class TestConditionalEntropy:
    @pytest.mark.parametrize("theta", [0.0, math.pi / 2])
    def test_bell_pure_conditionals(self, theta, policy):
        assert conditional_entropy(build_rho_ar(AccelParam(0.0), policy),
                                   MeasurementDirection(theta)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("theta,expected", [(math.pi / 2, COND_HALF_PI), (math.pi / 3, COND_PI_3)])
    def test_half_vs_dense(self, theta, expected, half, policy):
        rho = build_rho_ar(half, policy)
        d = MeasurementDirection(theta)
        ens = conditional_ensemble(rho, d)
        dense = sum(p * entropy_of_operator(s.matrix) for p, s in zip(ens.probabilities, ens.states))
        fast = conditional_entropy(rho, d)
        assert fast == pytest.approx(dense, abs=1e-11)
        assert fast == pytest.approx(expected, abs=1e-10)

    def test_phi_invariance(self, policy):
        for t in (0.3, 0.8):
            rho = build_rho_ar(AccelParam(t), policy)
            vals = [conditional_entropy(rho, MeasurementDirection(1.2, ph))
                    for ph in np.linspace(0, 2 * math.pi, 17, endpoint=False)]
            assert np.ptp(vals) < 1e-10

    def test_dense_fallback_for_generic_state(self, rng):
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        rho = a @ a.conj().T
        rho = JointState(rho / np.trace(rho).real, cutoff=1)
        d = MeasurementDirection(0.7, 1.3)
        ens = conditional_ensemble(rho, d)
        expected = sum(p * entropy_of_operator(s.matrix) for p, s in zip(ens.probabilities, ens.states))
        assert conditional_entropy(rho, d) == pytest.approx(expected, abs=1e-12)


class TestDiscordAtTheta:
    @pytest.mark.parametrize("theta", [0.0, 0.7, math.pi / 2, math.pi])
    def test_bell(self, theta, policy):
        assert discord_at_theta(AccelParam(0.0), theta, policy) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("t", [0.1, 0.5, 0.9])
    def test_minimum_at_half_pi(self, t, policy):
        thetas = np.linspace(0, math.pi, 33)
        vals = discord_theta_profile(AccelParam(t), thetas, policy)
        assert int(np.argmin(vals)) == 16
        assert np.all(vals[16] <= vals + 1e-9)

    def test_profile_matches_pointwise(self, half, policy):
        thetas = [0.0, 0.3, 2.0]
        assert_allclose(discord_theta_profile(half, thetas, policy),
                        [discord_at_theta(half, th, policy) for th in thetas], atol=1e-15)

    def test_brute_force_pipeline(self, half, policy):
        rho = build_rho_ar(half, policy)
        mi = mutual_information(rho)
        h_r = entropy_of_operator(reduce_to_rob(rho).matrix)
        for theta in np.linspace(0, math.pi, 9):
            d = MeasurementDirection(theta)
            ens = conditional_ensemble(rho, d)
            h_cond = sum(p * entropy_of_operator(s.matrix) for p, s in zip(ens.probabilities, ens.states))
            assert discord_at_theta(half, theta, policy) == pytest.approx(mi - (h_r - h_cond), abs=1e-9)


class TestQuantumDiscord:
    def test_bell_degenerate(self, policy):
        res = quantum_discord(AccelParam(0.0), policy)
        assert res.degenerate and math.isnan(res.theta_star)
        assert res.discord == pytest.approx(1.0, abs=1e-12)

    def test_half(self, half, policy):
        res = quantum_discord(half, policy)
        assert abs(res.theta_star - math.pi / 2) < 1e-6
        assert res.discord == pytest.approx(DISCORD_HALF, abs=1e-10)
        assert res.mutual_information == pytest.approx(MI_HALF, abs=1e-10)
        assert res.phi_deviation < 1e-10
        assert res.half_pi_excess <= 1e-12

    @pytest.mark.parametrize("t", T_GRID)
    def test_consistency(self, t, policy):
        res = quantum_discord(AccelParam(t), policy)
        assert abs(res.discord + res.classical_correlation - res.mutual_information) < 1e-9
        assert -1e-12 <= res.discord <= min(res.mutual_information, 1.0) + 1e-12
        assert res.classical_correlation >= -1e-12

    def test_iteration_cap(self, half):
        with pytest.raises(ConvergenceError):
            quantum_discord(half, strategy=MinimizerConfig(max_iter=3))

    def test_fixed_cutoff_convergence(self, half):
        coarse = quantum_discord(half, TruncationPolicy.fixed(15)).discord
        fine = quantum_discord(half, TruncationPolicy.fixed(40)).discord
        assert abs(coarse - fine) < 1e-6

    def test_spectra_phi_free(self, half):
        a = conditional_spectra(half, MeasurementDirection(0.9, 0.0), 20)
        b = conditional_spectra(half, MeasurementDirection(0.9, 4.0), 20)
        for sa, sb in zip(a, b):
            assert_allclose(sa.values, sb.values, atol=1e-14)


def test_golden_section_parabola():
    x, fx, it = golden_section(lambda x: (x - 0.3) ** 2 + 1, 0.0, 1.0, 1e-9, 100)
    assert x == pytest.approx(0.3, abs=1e-6)
    assert fx == pytest.approx(1.0, abs=1e-12)
    assert it > 0
