import math

import numpy
import pytest
from pydantic import ValidationError

from src.config.config import SPEED_OF_LIGHT, FRAME_LENGTH
from src.config.types import WaveformKind, WindowKind
from src.helpers.errors import DegenerateFrameError
from src.radar.simulator import beat_phase, clean_beat_signal, interference_beat, interference_support, \
    synthesize_frame, normalize_frame, frame_signal, difference_frequencies, synthesize_chirp_matrix
from src.radar.types import Target, RadarScene, VictimRadar, Interferer
from src.spectral.spectrum import range_fft


def _aligned_interferer(victim: VictimRadar, **fields) -> Interferer:
    # Starting the interferer sweep exactly when the victim sweep starts makes the difference frequency easy to
    # predict.
    values = dict(
        carrier_frequency_hz=victim.carrier_frequency_hz,
        sweep_bandwidth_hz=victim.sweep_bandwidth_hz,
        chirp_duration_s=victim.chirp_duration_s,
        range_m=30.0,
        amplitude=1.0,
    )
    values.update(fields)
    values['start_offset_s'] = -values['range_m'] / SPEED_OF_LIGHT
    return Interferer(**values)


def test_beat_phase_at_first_sample_is_the_range_term(victim):
    phase = beat_phase(victim, Target(range_m=100.0), 0, 0)
    assert phase == pytest.approx(2 * math.pi * 2 * 100.0 / SPEED_OF_LIGHT * victim.carrier_frequency_hz)


def test_target_range_has_to_be_positive():
    with pytest.raises(ValidationError):
        Target(range_m=0.0)


def test_beat_phase_increment_matches_beat_frequency(victim):
    target = Target(range_m=100.0)
    increment = beat_phase(victim, target, 1, 0) - beat_phase(victim, target, 0, 0)

    assert increment / (2 * math.pi) * victim.sample_rate_hz == pytest.approx(3.3333e6, rel=1e-4)
    assert target.beat_frequency(victim) == pytest.approx(10e6 / 3)


def test_beat_phase_rejects_samples_outside_the_chirp(victim):
    with pytest.raises(ValueError):
        beat_phase(victim, Target(range_m=10.0), victim.samples_per_chirp, 0)


def test_single_target_peaks_at_its_beat_frequency(single_target_scene):
    victim = single_target_scene.victim
    frame, _ = frame_signal(clean_beat_signal(single_target_scene, 0))
    spectrum = range_fft(frame, victim, WindowKind.Rectangular)

    expected_bin = single_target_scene.targets[0].beat_frequency(victim) / spectrum.bin_width_hz
    assert abs(int(numpy.argmax(spectrum.bins)) - expected_bin) <= 1


def test_no_targets_give_a_silent_chirp(victim):
    signal = clean_beat_signal(RadarScene(victim=victim, targets=[]), 3)

    assert signal.shape == (victim.samples_per_chirp,)
    assert not signal.any()


def test_targets_superpose_linearly(victim):
    first, second = Target(range_m=40.0, velocity_mps=3.0), Target(range_m=75.0, velocity_mps=-2.0)
    both = clean_beat_signal(RadarScene(victim=victim, targets=[first, second]), 5)

    separate = clean_beat_signal(RadarScene(victim=victim, targets=[first]), 5) \
        + clean_beat_signal(RadarScene(victim=victim, targets=[second]), 5)
    numpy.testing.assert_allclose(both, separate, rtol=0, atol=1e-12)


def test_target_beyond_the_cutoff_is_filtered_out(victim):
    far = Target(range_m=400.0)
    assert far.beat_frequency(victim) > victim.lpf_cutoff_hz
    assert not clean_beat_signal(RadarScene(victim=victim, targets=[far]), 0).any()


def test_equal_slope_interferer_inside_the_filter_covers_the_whole_chirp(victim):
    interferer = _aligned_interferer(victim)
    scene = RadarScene(victim=victim, targets=[], interferers=[interferer])

    numpy.testing.assert_allclose(difference_frequencies(scene, interferer, 0), 0.0, atol=1e-3)
    signal = interference_beat(scene, 0)
    assert numpy.count_nonzero(signal) == victim.samples_per_chirp


def test_equal_slope_interferer_outside_the_filter_is_silent(victim):
    interferer = _aligned_interferer(victim, carrier_frequency_hz=victim.carrier_frequency_hz + 1e9)
    scene = RadarScene(victim=victim, targets=[], interferers=[interferer])

    assert not interference_beat(scene, 0).any()
    assert not interference_support(scene, 0).any()


def test_crossing_interferer_hits_a_single_contiguous_run(victim):
    # Slope difference 2.25e12 Hz/s: the difference frequency grows by 112.5 kHz per sample from zero.
    interferer = _aligned_interferer(victim, sweep_bandwidth_hz=110e6, chirp_duration_s=40e-6)
    scene = RadarScene(victim=victim, targets=[], interferers=[interferer])

    support = numpy.flatnonzero(interference_beat(scene, 0))
    expected = numpy.flatnonzero(numpy.abs(difference_frequencies(scene, interferer, 0)) < victim.lpf_cutoff_hz)

    numpy.testing.assert_array_equal(support, numpy.arange(89))
    numpy.testing.assert_array_equal(support, expected)
    numpy.testing.assert_array_equal(numpy.flatnonzero(interference_support(scene, 0)), expected)


def test_four_interferers_cover_at_most_eight_runs(victim):
    # Slope difference 2.25e12 Hz/s against the victim. Offsets picked so every crossing lands inside the frame.
    offsets = [5e6, 27e6, 50e6, -30e6]
    interferers = [
        _aligned_interferer(victim, sweep_bandwidth_hz=110e6, chirp_duration_s=40e-6,
                            carrier_frequency_hz=victim.carrier_frequency_hz + offset)
        for offset in offsets
    ]
    scene = RadarScene(victim=victim, targets=[], interferers=interferers)

    time_s = numpy.arange(FRAME_LENGTH) / victim.sample_rate_hz
    expected = numpy.zeros(FRAME_LENGTH, dtype=bool)
    for offset in offsets:
        victim_frequency = victim.carrier_frequency_hz + victim.slope * time_s
        interferer_frequency = victim.carrier_frequency_hz + offset + 110e6 / 40e-6 * time_s
        expected |= numpy.abs(victim_frequency - interferer_frequency) < victim.lpf_cutoff_hz

    support = interference_support(scene, 0)
    runs = numpy.count_nonzero(numpy.diff(numpy.concatenate([[0], support.astype(int)])) == 1)

    numpy.testing.assert_array_equal(support, expected)
    assert runs == 3
    assert runs <= 2 * len(interferers)


def test_interference_free_frame_input_equals_label(single_target_scene):
    frame = synthesize_frame(single_target_scene, 4)

    numpy.testing.assert_array_equal(frame.input, frame.label)
    assert frame.chirp_index == 4
    assert frame.valid_len == FRAME_LENGTH


def test_long_chirps_are_cut():
    victim = VictimRadar(carrier_frequency_hz=77e9, sweep_bandwidth_hz=150e6, chirp_duration_s=41.6e-6)
    scene = RadarScene(victim=victim, targets=[Target(range_m=20.0)])
    assert victim.samples_per_chirp == 832

    frame = synthesize_frame(scene, 0)
    clean = clean_beat_signal(scene, 0)
    assert frame.valid_len == FRAME_LENGTH
    numpy.testing.assert_allclose(frame.label, clean[:FRAME_LENGTH] / numpy.linalg.norm(clean[:FRAME_LENGTH]))


def test_short_chirps_are_zero_padded():
    victim = VictimRadar(carrier_frequency_hz=77e9, sweep_bandwidth_hz=100e6, chirp_duration_s=20e-6)
    frame = synthesize_frame(RadarScene(victim=victim, targets=[Target(range_m=20.0)]), 0)

    assert frame.valid_len == 400
    assert not frame.label[400:].any()
    assert numpy.sum(frame.label ** 2) == pytest.approx(1.0)


def test_normalization_gives_unit_energy():
    frame = numpy.zeros(FRAME_LENGTH)
    frame[:2] = [3.0, 4.0]

    normalized = normalize_frame(frame)
    assert normalized[:2].tolist() == pytest.approx([0.6, 0.8])
    assert not normalized[2:].any()


def test_silent_frame_cannot_be_normalized():
    with pytest.raises(DegenerateFrameError):
        normalize_frame(numpy.zeros(FRAME_LENGTH))
    assert not normalize_frame(numpy.zeros(FRAME_LENGTH), allow_zero=True).any()


def test_noise_is_reproducible_per_chirp(victim):
    scene = RadarScene(victim=victim, targets=[Target(range_m=50.0)], noise_std=0.1, rng_seed=99)

    numpy.testing.assert_array_equal(synthesize_frame(scene, 2).input, synthesize_frame(scene, 2).input)
    assert not numpy.array_equal(synthesize_frame(scene, 2).input, synthesize_frame(scene, 3).input)
    numpy.testing.assert_array_equal(synthesize_frame(scene, 2).label, synthesize_frame(scene, 3).label)


def test_chirp_matrix_stacks_every_chirp(single_target_scene):
    matrix = synthesize_chirp_matrix(single_target_scene)

    assert matrix.shape == (single_target_scene.victim.num_chirps, FRAME_LENGTH)
    numpy.testing.assert_array_equal(matrix[7], frame_signal(clean_beat_signal(single_target_scene, 7))[0])


def test_triangle_interferer_sweeps_back_down(victim):
    interferer = _aligned_interferer(victim, waveform_kind=WaveformKind.Triangle)
    scene = RadarScene(victim=victim, targets=[], interferers=[interferer])

    # Second chirp of the victim sees the falling half of the triangle.
    delta = difference_frequencies(scene, interferer, 1)
    assert delta[0] == pytest.approx(-victim.sweep_bandwidth_hz, rel=1e-6)
    assert numpy.all(numpy.diff(delta) > 0)
