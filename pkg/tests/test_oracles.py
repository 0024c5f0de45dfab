import numpy as np
import pytest
from scipy import signal, special

from photon_slh import PhotonSlhException, SingularLoop
from photon_slh.entities.pulse_entities import TimeGrid
from photon_slh.entities.transfer_entities import PhotonTransfer
from photon_slh.network import feedback_reduce, two_channel_model, two_level_model
from photon_slh.oracles import (TwoLevelParams, feedback_G, feedback_case, inverting_pulse, kummer_1f1,
                                memory_G_chain, memory_GN, memory_kernel_1f1, two_channel_G,
                                two_channel_reflection, two_channel_transmission, two_level_G)
from photon_slh.pulses import make_pulse, normalize
from photon_slh.shapers import shape_fft
from photon_slh.transfer import frequency_response, from_model, response_values

BEAMSPLITTER = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
SWAP = np.array([[0, 1], [1, 0]])
ROTATION = np.array([[0.6, 0.8], [0.8, -0.6]])


class TestTwoLevel:

    def test_params(self):
        params = TwoLevelParams(kappa=2.0, omega_c=3.0)
        assert params.pole == -3j - 1
        with pytest.raises(PhotonSlhException):
            TwoLevelParams(kappa=0.0)

    def test_resonance_reflects_with_a_sign(self):
        params = TwoLevelParams(kappa=1.0, omega_c=2.0)
        assert two_level_G(params, -2.0) == pytest.approx(-1, abs=1e-15)

    def test_far_detuned_passes_through(self):
        params = TwoLevelParams(kappa=1.0, omega_c=2.0)
        assert abs(two_level_G(params, 1e6) - 1) < 1e-5
        assert abs(two_level_G(params, -1e6) - 1) < 1e-5

    def test_all_pass(self, rng):
        params = TwoLevelParams(kappa=0.7, omega_c=-1.3)
        omegas = rng.uniform(-50, 50, 1000)
        np.testing.assert_allclose(np.abs(two_level_G(params, omegas)), 1, atol=1e-14)

    def test_matches_model(self, atom):
        omegas = np.linspace(-10, 10, 201)
        response = frequency_response(from_model(atom), omegas)
        np.testing.assert_allclose(response.element(1, 1), two_level_G(TwoLevelParams(1.0, 2.0), omegas),
                                   atol=1e-13)


class TestTwoChannel:

    def test_flux_is_conserved(self, rng):
        omegas = rng.uniform(-20, 20, 500)
        for kappa1, kappa2, omega_c in rng.uniform(0.1, 5, size=(10, 3)):
            total = two_channel_transmission(kappa1, kappa2, omega_c, omegas) + \
                two_channel_reflection(kappa1, kappa2, omega_c, omegas)
            np.testing.assert_allclose(total, 1, atol=1e-12)

    def test_closed_forms_match_amplitudes(self, rng):
        omegas = rng.uniform(-20, 20, 100)
        G1, G2 = two_channel_G(1.0, 0.5, 2.0, omegas)
        np.testing.assert_allclose(np.abs(G1) ** 2, two_channel_transmission(1.0, 0.5, 2.0, omegas), rtol=1e-12)
        np.testing.assert_allclose(np.abs(G2) ** 2, two_channel_reflection(1.0, 0.5, 2.0, omegas), rtol=1e-12)

    def test_matches_model(self, two_channel_atom):
        omegas = np.linspace(-10, 10, 201)
        response = frequency_response(from_model(two_channel_atom), omegas)
        G1, G2 = two_channel_G(1.0, 0.5, 2.0, omegas)
        np.testing.assert_allclose(response.element(1, 1), G1, atol=1e-13)
        np.testing.assert_allclose(response.element(2, 1), -G2, atol=1e-13)

    def test_perfect_reflection_only_for_equal_rates(self):
        assert two_channel_reflection(0.8, 0.8, 1.0, -1.0) == pytest.approx(1, abs=1e-15)
        assert two_channel_transmission(0.8, 0.8, 1.0, -1.0) == pytest.approx(0, abs=1e-15)
        assert two_channel_reflection(0.8, 0.4, 1.0, -1.0) < 1

    def test_far_detuned(self):
        G1, G2 = two_channel_G(1.0, 0.5, 2.0, 1e6)
        assert abs(G1 - 1) < 1e-5
        assert abs(G2) < 1e-5

    def test_rates_must_be_positive(self):
        with pytest.raises(PhotonSlhException):
            two_channel_G(1.0, -0.5, 0.0, 0.0)


class TestMemory:

    def test_single_atom(self, rng):
        params = TwoLevelParams(kappa=1.2, omega_c=0.4)
        omegas = rng.uniform(-10, 10, 100)
        np.testing.assert_allclose(memory_GN(1, params, omegas), two_level_G(params, omegas), atol=0)

    @pytest.mark.parametrize('n_atoms', [1, 2, 3, 4, 7])
    def test_resonance(self, n_atoms):
        params = TwoLevelParams(kappa=1.0, omega_c=2.0)
        assert memory_GN(n_atoms, params, -2.0) == pytest.approx((-1) ** n_atoms, abs=1e-14)

    def test_chain_of_identical_atoms(self, rng):
        params = TwoLevelParams(kappa=1.0, omega_c=2.0)
        omegas = rng.uniform(-10, 10, 100)
        np.testing.assert_allclose(memory_G_chain([params] * 4, omegas), memory_GN(4, params, omegas), atol=1e-14)

    def test_chain_stays_all_pass(self, rng):
        chain = [TwoLevelParams(kappa, omega_c) for kappa, omega_c in rng.uniform(0.2, 3, size=(5, 2))]
        omegas = rng.uniform(-10, 10, 100)
        np.testing.assert_allclose(np.abs(memory_G_chain(chain, omegas)), 1, atol=1e-13)

    def test_bad_atom_counts(self):
        params = TwoLevelParams(kappa=1.0)
        with pytest.raises(PhotonSlhException):
            memory_GN(0, params, 0.0)
        with pytest.raises(PhotonSlhException):
            memory_GN(1.5, params, 0.0)
        with pytest.raises(PhotonSlhException):
            memory_G_chain([], 0.0)


class TestKummer:

    def test_at_zero(self):
        assert kummer_1f1(-3, 2, 0.0) == 1
        assert kummer_1f1(0.5, 1.5, 0.0) == 1

    @pytest.mark.parametrize('n_atoms', range(1, 9))
    def test_polynomial_cases_match_scipy(self, n_atoms):
        # compare e^{-z/2} 1F1(1 - N; 2; z): the polynomial alone has roots where a relative check fails
        zs = np.linspace(0, 40, 161)
        ours = np.array([kummer_1f1(1 - n_atoms, 2, z) for z in zs]) * np.exp(-zs / 2)
        theirs = special.hyp1f1(1 - n_atoms, 2, zs) * np.exp(-zs / 2)
        np.testing.assert_allclose(ours, theirs, rtol=0, atol=1e-10)

    @pytest.mark.parametrize('a, b, z', [(0.5, 1.5, -2.0), (0.3, 2.5, 5.0), (1.5, 2.0, -30.0), (2.0, 3.0, 12.0)])
    def test_general_arguments_match_scipy(self, a, b, z):
        assert kummer_1f1(a, b, z) == pytest.approx(special.hyp1f1(a, b, z), rel=1e-10)

    def test_large_negative_argument_is_stable(self):
        # 1F1(1; 2; z) = (e^z - 1) / z
        assert kummer_1f1(1, 2, -50.0) == pytest.approx((np.exp(-50.0) - 1) / -50.0, rel=1e-12)

    def test_b_must_not_be_a_pole(self):
        with pytest.raises(PhotonSlhException):
            kummer_1f1(1, -2, 1.0)


class TestMemoryKernel:

    @pytest.mark.parametrize('n_atoms', [1, 2, 5])
    def test_value_at_zero(self, n_atoms):
        params = TwoLevelParams(kappa=1.5, omega_c=2.0)
        assert memory_kernel_1f1(n_atoms, params, 0.0) == pytest.approx(-1.5 * n_atoms)

    def test_single_atom_is_an_exponential(self):
        params = TwoLevelParams(kappa=1.5, omega_c=2.0)
        ts = np.linspace(0, 20, 201)
        np.testing.assert_allclose(memory_kernel_1f1(1, params, ts), -1.5 * np.exp(params.pole * ts), atol=1e-14)

    def test_scalar_in_scalar_out(self):
        assert isinstance(memory_kernel_1f1(2, TwoLevelParams(1.0), 1.0), complex)

    def test_causal(self):
        with pytest.raises(PhotonSlhException):
            memory_kernel_1f1(2, TwoLevelParams(1.0), [-0.1, 0.0])

    def test_two_atoms_match_inverse_transform(self):
        # G^2 - 1 = (G - 1)^2 + 2(G - 1); the square falls off like 1/omega^2 and transforms cleanly on a band
        params = TwoLevelParams(kappa=1.0, omega_c=0.5)
        n_samples, dt = 2 ** 16, 2.0 ** -7
        omegas = 2 * np.pi * np.fft.fftfreq(n_samples, dt)
        smooth = memory_GN(2, params, omegas) - 1 - 2 * (two_level_G(params, omegas) - 1)
        expected = np.fft.ifft(smooth)[128] / dt + 2 * memory_kernel_1f1(1, params, 1.0)
        assert abs(memory_kernel_1f1(2, params, 1.0) - expected) < 1e-4

    @pytest.mark.parametrize('n_atoms', [1, 2, 3, 5])
    def test_convolution_matches_fft_shaping(self, n_atoms):
        params = TwoLevelParams(kappa=1.0, omega_c=1.0)
        grid = TimeGrid(-20.0, 80.0 / 2 ** 15, 2 ** 15)
        pulse = normalize(make_pulse('gaussian', grid, t0=0.0, sigma=1.0, omega=-1.0))
        stage = from_model(two_level_model(params.kappa, params.omega_c)).stages[0]
        shaped = shape_fft(pulse, PhotonTransfer([stage] * n_atoms))

        u = pulse.samples[:, 0]
        dt = grid.dt
        kernel = memory_kernel_1f1(n_atoms, params, dt * np.arange(grid.n_samples))
        # trapezoid rule over [0, t]; the far end sits where u has long vanished
        convolved = u + dt * signal.fftconvolve(kernel, u)[:grid.n_samples] - 0.5 * dt * kernel[0] * u
        distance = np.sqrt(np.sum(np.abs(shaped.samples[:, 0] - convolved) ** 2) * dt)
        assert distance < 1e-4


class TestInvertingPulse:

    def test_shape(self):
        params = TwoLevelParams(kappa=1.0, omega_c=2.0)
        pulse = inverting_pulse(params)
        assert pulse.kind == 'rising_exp'
        assert pulse.grid == TimeGrid.centered(span=80.0, log2_n=14)
        assert pulse.norm() == pytest.approx(1, abs=1e-12)

        times = pulse.grid.times
        zero = int(np.flatnonzero(times == 0)[0])
        samples = pulse.samples[:, 0]
        assert np.all(samples[times > 0] == 0)
        assert abs(samples[zero]) == pytest.approx(0.5 * abs(samples[zero - 1]), rel=1e-2)

    def test_custom_grid(self):
        grid = TimeGrid.centered(span=40.0, log2_n=12)
        pulse = inverting_pulse(TwoLevelParams(kappa=2.0), grid)
        assert pulse.grid == grid
        assert pulse.norm() == pytest.approx(1, abs=1e-12)


class TestFeedback:

    def test_case(self):
        assert feedback_case(SWAP) == 'real-S'
        assert feedback_case(ROTATION) == 'real-S'
        assert feedback_case(BEAMSPLITTER) == 'complex-S'

    @pytest.mark.parametrize('S', [SWAP, BEAMSPLITTER, ROTATION], ids=['swap', 'beamsplitter', 'rotation'])
    def test_matches_reduced_model(self, S):
        kappa1, kappa2, omega_c = 1.0, 0.5, 2.0
        omegas = np.linspace(-20, 20, 401)
        reduced = feedback_reduce(two_channel_model(kappa1, kappa2, omega_c, S=S))
        expected = response_values(from_model(reduced), omegas)[:, 0, 0]
        np.testing.assert_allclose(feedback_G(S, kappa1, kappa2, omega_c, omegas), expected, atol=1e-10)

    def test_swap_is_a_faster_atom(self, rng):
        kappa1, kappa2, omega_c = 1.0, 0.5, 2.0
        omegas = rng.uniform(-20, 20, 100)
        faster = TwoLevelParams(kappa=(np.sqrt(kappa1) + np.sqrt(kappa2)) ** 2, omega_c=omega_c)
        np.testing.assert_allclose(feedback_G(SWAP, kappa1, kappa2, omega_c, omegas), two_level_G(faster, omegas),
                                   atol=1e-14)

    def test_beamsplitter_moves_the_resonance(self):
        kappa1, kappa2, omega_c = 1.0, 0.5, 2.0
        delta = np.sqrt(kappa1 * kappa2) / (np.sqrt(2) - 1)
        # S' = -1, so the shifted resonance passes with +1
        assert feedback_G(BEAMSPLITTER, kappa1, kappa2, omega_c, -omega_c - delta) == pytest.approx(1, abs=1e-14)
        assert abs(feedback_G(BEAMSPLITTER, kappa1, kappa2, omega_c, 50.0)) == pytest.approx(1, abs=1e-14)

    def test_open_loop_is_singular(self):
        with pytest.raises(SingularLoop):
            feedback_G(np.eye(2), 1.0, 0.5, 2.0, 0.0)

    def test_explicit_case(self):
        omegas = np.linspace(-5, 5, 11)
        np.testing.assert_allclose(feedback_G(ROTATION, 1.0, 0.5, 2.0, omegas, case='complex-S'),
                                   feedback_G(ROTATION, 1.0, 0.5, 2.0, omegas, case='real-S'), atol=0)
        with pytest.raises(PhotonSlhException):
            feedback_G(BEAMSPLITTER, 1.0, 0.5, 2.0, omegas, case='real-S')
        with pytest.raises(PhotonSlhException):
            feedback_G(SWAP, 1.0, 0.5, 2.0, omegas, case='case-3')
