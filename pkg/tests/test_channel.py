import cmath
import math

import numpy as np
import pytest

from wptsim.channel import (
    ChannelVector,
    NoiseSpec,
    ReceivePhasor,
    TransmitSignal,
    receive_phasor,
    rx_scatter_matrix,
    rx_scatter_vector,
    scatter_channel_vector,
    smc_channel_matrix,
    smc_channel_vector,
    tx_scatter_matrix,
)
from wptsim.geometry import ImageSource
from wptsim.stochastic import RngSeed, ScattererField

WAVELENGTH = 299792458.0 / 2.4e9
MINUS_3_DB = 10.0 ** (-3.0 / 20.0)


def single_element_source(position, gain=1.0 + 0.0j, is_los=None):
    los = gain == 1.0 if is_los is None else is_los
    return ImageSource(0, np.array([position], dtype=float), gain, is_los=los)


def one_scatterer_field(position, rcs, phase):
    return ScattererField(np.array([position], dtype=float), np.array([rcs]), np.array([phase]))


class TestSmcChannelVector:
    def test_friis_magnitude(self):
        source = single_element_source([0.0, 0.0, 0.0])
        h = smc_channel_vector(source, [0.0, 8.125, 0.0], WAVELENGTH)
        expected = WAVELENGTH / (4.0 * math.pi * 8.125)
        assert abs(h.entries[0]) == pytest.approx(expected, rel=1e-12)
        assert abs(h.entries[0]) == pytest.approx(1.2233e-3, rel=1e-4)
        assert 20.0 * math.log10(abs(h.entries[0])) == pytest.approx(-58.25, abs=0.01)

    def test_reflection_gain_scales_magnitude(self):
        source = single_element_source([0.0, 0.0, 0.0], gain=MINUS_3_DB, is_los=False)
        h = smc_channel_vector(source, [0.0, 8.125, 0.0], WAVELENGTH)
        assert abs(h.entries[0]) == pytest.approx(1.2233e-3 * MINUS_3_DB, rel=1e-4)
        assert abs(h.entries[0]) == pytest.approx(8.660e-4, rel=1e-3)

    def test_full_wavelength_phase_wrap(self):
        source = single_element_source([0.0, 0.0, 0.0])
        h = smc_channel_vector(source, [WAVELENGTH, 0.0, 0.0], WAVELENGTH)
        assert cmath.phase(h.entries[0]) == pytest.approx(0.0, abs=1e-9)

    def test_magnitude_law(self):
        # |h_l| * 4*pi*d / lambda recovers |gain| for every element
        rng = np.random.default_rng(4)
        positions = rng.uniform(-2, 2, size=(6, 3))
        gain = 0.4 * np.exp(1j * 1.1)
        source = ImageSource(2, positions, gain, is_los=False)
        target = np.array([0.5, 7.0, 1.0])
        h = smc_channel_vector(source, target, WAVELENGTH)
        d = np.linalg.norm(positions - target, axis=1)
        assert np.allclose(np.abs(h.entries) * 4.0 * np.pi * d / WAVELENGTH, abs(gain), rtol=1e-12)

    def test_rejects_zero_distance(self):
        source = single_element_source([1.0, 2.0, 3.0])
        with pytest.raises(ValueError, match="zero propagation distance"):
            smc_channel_vector(source, [1.0, 2.0, 3.0], WAVELENGTH)

    def test_matrix_rows_match_vector(self):
        rng = np.random.default_rng(5)
        positions = rng.uniform(-2, 2, size=(4, 3))
        source = ImageSource(1, positions, 0.7, is_los=False)
        points = rng.uniform(3, 9, size=(5, 3))
        block = smc_channel_matrix(source, points, WAVELENGTH)
        for row, p in zip(block, points):
            assert np.allclose(row, smc_channel_vector(source, p, WAVELENGTH).entries, rtol=1e-15)


class TestScatterFactors:
    def test_tx_scatter_unit_distance(self):
        source = single_element_source([0.0, 0.0, 0.0])
        field = one_scatterer_field([1.0, 0.0, 0.0], rcs=0.05, phase=0.3)
        block = tx_scatter_matrix(source, field, WAVELENGTH)
        assert block.shape == (1, 1)
        assert abs(block[0, 0]) == pytest.approx(1.0 / math.sqrt(4.0 * math.pi), rel=1e-12)
        assert abs(block[0, 0]) == pytest.approx(0.28209, rel=1e-4)

    def test_tx_scatter_inverse_distance(self):
        source = single_element_source([0.0, 0.0, 0.0])
        near = one_scatterer_field([2.0, 0.0, 0.0], 0.05, 0.0)
        far = one_scatterer_field([4.0, 0.0, 0.0], 0.05, 0.0)
        m_near = abs(tx_scatter_matrix(source, near, WAVELENGTH)[0, 0])
        m_far = abs(tx_scatter_matrix(source, far, WAVELENGTH)[0, 0])
        assert m_far == pytest.approx(m_near / 2.0, rel=1e-12)

    def test_blocked_reflection_zeroes_matrix(self):
        source = single_element_source([0.0, 0.0, 0.0], gain=0.0, is_los=False)
        field = one_scatterer_field([1.0, 1.0, 0.0], 0.05, 0.0)
        assert np.all(tx_scatter_matrix(source, field, WAVELENGTH) == 0.0)

    def test_rx_scatter_unit_distance(self):
        field = one_scatterer_field([0.0, 1.0, 0.0], 0.05, 0.0)
        vec = rx_scatter_vector(field, [0.0, 0.0, 0.0], WAVELENGTH)
        assert abs(vec[0]) == pytest.approx(WAVELENGTH / (4.0 * math.pi), rel=1e-12)
        assert abs(vec[0]) == pytest.approx(9.9398e-3, rel=1e-4)

    def test_rx_scatter_fig_distance(self):
        field = one_scatterer_field([5.0, 8.75, 1.0], 0.05, 0.0)
        vec = rx_scatter_vector(field, [5.0, 8.125, 1.0], WAVELENGTH)
        assert abs(vec[0]) == pytest.approx(WAVELENGTH / (4.0 * math.pi * 0.625), rel=1e-12)
        assert abs(vec[0]) == pytest.approx(1.5904e-2, rel=1e-4)

    def test_empty_field(self):
        source = single_element_source([0.0, 0.0, 0.0])
        empty = ScattererField.empty()
        assert rx_scatter_vector(empty, [1.0, 1.0, 1.0], WAVELENGTH).size == 0
        assert tx_scatter_matrix(source, empty, WAVELENGTH).shape == (0, 1)
        assert rx_scatter_matrix(empty, np.ones((4, 3)), WAVELENGTH).shape == (4, 0)


class TestScatterChannelVector:
    def test_empty_field_zero_vector(self):
        source = single_element_source([0.0, 0.0, 0.0])
        h = scatter_channel_vector(source, ScattererField.empty(), [1.0, 5.0, 0.0], WAVELENGTH)
        assert np.all(h.entries == 0.0)

    def test_single_scatterer_scalar_chain(self):
        # hand-computed product of the three factors of the bistatic link
        element = np.array([0.0, 0.0, 0.0])
        scatterer = np.array([0.0, 5.0, 0.0])
        device = np.array([3.0, 5.0, 0.0])
        gain = 0.6 * cmath.exp(1j * 0.4)
        rcs, phase = 0.031, 1.2
        source = single_element_source(element, gain=gain, is_los=False)
        field = one_scatterer_field(scatterer, rcs, phase)

        d_tx = 5.0
        d_rx = 3.0
        tx = 1.0 / (math.sqrt(4 * math.pi) * d_tx) * gain * cmath.exp(-2j * math.pi * d_tx / WAVELENGTH)
        mid = math.sqrt(rcs) * cmath.exp(1j * phase)
        rx = WAVELENGTH / (4 * math.pi * d_rx) * cmath.exp(-2j * math.pi * d_rx / WAVELENGTH)
        expected = rx * mid * tx

        h = scatter_channel_vector(source, field, device, WAVELENGTH)
        assert h.entries[0] == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("trial", range(100))
    def test_matrix_form_equals_brute_force_path_sum(self, trial):
        rng = np.random.default_rng(1000 + trial)
        n_elements = int(rng.integers(1, 6))
        n_scatterers = int(rng.integers(1, 5))
        elements = rng.uniform(-1, 1, size=(n_elements, 3))
        scatterers = rng.uniform(2, 4, size=(n_scatterers, 3))
        device = rng.uniform(5, 7, size=3)
        gain = complex(rng.uniform(0.1, 0.9) * cmath.exp(1j * rng.uniform(0, 2 * math.pi)))
        rcs = rng.uniform(0.001, 0.1, size=n_scatterers)
        phases = rng.uniform(0, 2 * math.pi, size=n_scatterers)

        source = ImageSource(1, elements, gain, is_los=False)
        field = ScattererField(scatterers, rcs, phases)
        h = scatter_channel_vector(source, field, device, WAVELENGTH)

        # independent oracle: explicit double sum over every scatter path
        for ell in range(n_elements):
            total = 0.0 + 0.0j
            for m in range(n_scatterers):
                d_tx = math.dist(scatterers[m], elements[ell])
                d_rx = math.dist(scatterers[m], device)
                leg_tx = gain / (math.sqrt(4 * math.pi) * d_tx) * cmath.exp(-2j * math.pi * d_tx / WAVELENGTH)
                leg_rx = WAVELENGTH / (4 * math.pi * d_rx) * cmath.exp(-2j * math.pi * d_rx / WAVELENGTH)
                total += leg_rx * math.sqrt(rcs[m]) * cmath.exp(1j * phases[m]) * leg_tx
            assert abs(h.entries[ell] - total) <= 1e-12 * max(abs(total), 1e-300)


class TestReceivePhasor:
    def test_scalar_friis_link(self):
        source = single_element_source([0.0, 0.0, 0.0])
        h = smc_channel_vector(source, [0.0, 8.125, 0.0], WAVELENGTH)
        p_tx = 4.0
        signal = TransmitSignal([math.sqrt(p_tx)])
        y = receive_phasor([h], [], signal)
        assert y.power == pytest.approx(p_tx * abs(h.entries[0]) ** 2, rel=1e-12)

    def test_zero_signal(self):
        h = ChannelVector([1e-3 + 1e-3j])
        y = receive_phasor([h], [], TransmitSignal([0.0]))
        assert y.value == 0.0

    def test_opposite_channels_cancel(self):
        base = np.array([1e-3 + 2e-3j, -4e-4j])
        remaining = ChannelVector([5e-4, 1e-4j])
        signal = TransmitSignal([1.0, 1.0])
        y = receive_phasor([ChannelVector(base), ChannelVector(-base), remaining], [], signal)
        expected = np.dot(remaining.entries, signal.entries)
        assert y.value == pytest.approx(expected, rel=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="lengths differ"):
            receive_phasor([ChannelVector([1.0, 2.0])], [], TransmitSignal([1.0]))

    def test_linearity_in_signal(self):
        rng = np.random.default_rng(8)
        h = ChannelVector(rng.normal(size=4) + 1j * rng.normal(size=4))
        s1 = rng.normal(size=4) + 1j * rng.normal(size=4)
        s2 = rng.normal(size=4) + 1j * rng.normal(size=4)
        y1 = receive_phasor([h], [], TransmitSignal(s1)).value
        y2 = receive_phasor([h], [], TransmitSignal(s2)).value
        y12 = receive_phasor([h], [], TransmitSignal(s1 + s2)).value
        assert y12 == pytest.approx(y1 + y2, rel=1e-12)

    def test_global_phase_leaves_power_unchanged(self):
        rng = np.random.default_rng(9)
        h = ChannelVector(rng.normal(size=5) + 1j * rng.normal(size=5))
        s = rng.normal(size=5) + 1j * rng.normal(size=5)
        p0 = receive_phasor([h], [], TransmitSignal(s)).power
        p1 = receive_phasor([h], [], TransmitSignal(np.exp(1j * 0.7) * s)).power
        assert p1 == pytest.approx(p0, rel=1e-12)

    def test_noise_requires_seed(self):
        h = ChannelVector([1e-3])
        with pytest.raises(ValueError, match="seed"):
            receive_phasor([h], [], TransmitSignal([1.0]), NoiseSpec(1e-9))

    def test_noise_deterministic_and_sized(self):
        h = ChannelVector([0.0])
        signal = TransmitSignal([0.0])
        spec = NoiseSpec(2.5e-8)
        seed = RngSeed(3, "noise", 0)
        y1 = receive_phasor([h], [], signal, spec, seed).value
        y2 = receive_phasor([h], [], signal, spec, seed).value
        assert y1 == y2
        samples = [
            receive_phasor([h], [], signal, spec, RngSeed(3, "noise", i)).value
            for i in range(4000)
        ]
        assert np.var(samples) == pytest.approx(spec.variance, rel=0.1)

    def test_negative_variance_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            NoiseSpec(-1.0)


class TestTypes:
    def test_transmit_signal_power(self):
        s = TransmitSignal([1.0, 1.0j, -1.0])
        assert s.power == pytest.approx(3.0, rel=1e-12)

    def test_receive_phasor_power(self):
        assert ReceivePhasor(3.0 + 4.0j).power == pytest.approx(25.0)

    def test_channel_vector_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            ChannelVector([np.nan + 0j])
