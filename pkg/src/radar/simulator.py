"""Beat signal synthesis for a chirp-sequence victim radar.

Targets follow the sampled beat phase model (range term, chirp-to-chirp Doppler term and the per-sample beat
frequency). Interferers are modelled by their instantaneous frequency difference to the victim chirp; only the part
of that difference that falls inside the receiver low pass filter reaches the beat signal.
"""
import math

import numpy
from scipy.integrate import cumulative_trapezoid

from src.config.config import SPEED_OF_LIGHT, FRAME_LENGTH
from src.config.types import WaveformKind
from src.helpers.errors import DegenerateFrameError
from src.helpers.validation import validate, validate_finite
from src.helpers.warnings import show_equal_slope_warning_once
from src.radar.types import VictimRadar, Target, RadarScene, BeatFrame, Interferer


def beat_phase(victim: VictimRadar, target: Target, n: int, k: int) -> float:
    validate(
        condition=0 <= n < victim.samples_per_chirp and k >= 0,
        error=f'Sample index has to be in [0, {victim.samples_per_chirp}) and chirp index non-negative.',
        context={'n': n, 'k': k}
    )
    return float(_beat_phases(victim, target, numpy.array([n]), k)[0])


def _beat_phases(victim: VictimRadar, target: Target, n: numpy.ndarray, k: int) -> numpy.ndarray:
    range_delay = 2 * target.range_m / SPEED_OF_LIGHT
    doppler_scale = 2 * target.velocity_mps / SPEED_OF_LIGHT
    phases = 2 * math.pi * (
        range_delay * victim.carrier_frequency_hz
        + doppler_scale * victim.carrier_frequency_hz * k * victim.chirp_duration_s
        + (victim.slope * range_delay + doppler_scale * victim.carrier_frequency_hz) * n * victim.sample_period_s
    )
    validate_finite(phases, 'beat phase')
    return phases


def clean_beat_signal(scene: RadarScene, k: int) -> numpy.ndarray:
    victim = scene.victim
    n = numpy.arange(victim.samples_per_chirp)
    signal = numpy.zeros(victim.samples_per_chirp)
    for target in scene.targets:
        # Beat tones above the cutoff never leave the low pass filter.
        if target.beat_frequency(victim) > victim.lpf_cutoff_hz:
            continue
        signal += target.amplitude * numpy.cos(_beat_phases(victim, target, n, k))

    return signal


def _interferer_frequency(interferer: Interferer, time_s: numpy.ndarray) -> numpy.ndarray:
    # Time since the first chirp of the interferer reached the victim antenna (one way propagation).
    local_time = time_s - interferer.start_offset_s - interferer.range_m / SPEED_OF_LIGHT
    position = numpy.mod(local_time, interferer.period_s)

    if interferer.waveform_kind == WaveformKind.Sawtooth:
        return interferer.carrier_frequency_hz + interferer.slope * position

    rising = position < interferer.chirp_duration_s
    return numpy.where(
        rising,
        interferer.carrier_frequency_hz + interferer.slope * position,
        interferer.carrier_frequency_hz + interferer.sweep_bandwidth_hz
        - interferer.slope * (position - interferer.chirp_duration_s)
    )


def difference_frequencies(scene: RadarScene, interferer: Interferer, k: int) -> numpy.ndarray:
    victim = scene.victim
    chirp_time = numpy.arange(victim.samples_per_chirp) * victim.sample_period_s
    victim_frequency = victim.carrier_frequency_hz + victim.slope * chirp_time
    return victim_frequency - _interferer_frequency(interferer, k * victim.chirp_duration_s + chirp_time)


def _interference_gates(scene: RadarScene, k: int) -> list[tuple[Interferer, numpy.ndarray, numpy.ndarray]]:
    gates = []
    for interferer in scene.interferers:
        if interferer.waveform_kind == WaveformKind.Sawtooth and math.isclose(interferer.slope, scene.victim.slope):
            show_equal_slope_warning_once()
        delta = difference_frequencies(scene, interferer, k)
        gates.append((interferer, delta, numpy.abs(delta) < scene.victim.lpf_cutoff_hz))

    return gates


def interference_beat(scene: RadarScene, k: int) -> numpy.ndarray:
    signal = numpy.zeros(scene.victim.samples_per_chirp)
    for interferer, delta, passes_filter in _interference_gates(scene, k):
        if not passes_filter.any():
            continue
        phase = 2 * math.pi * cumulative_trapezoid(delta, dx=scene.victim.sample_period_s, initial=0)
        signal += numpy.where(passes_filter, interferer.amplitude * numpy.cos(phase), 0.0)

    return signal


def interference_support(scene: RadarScene, k: int) -> numpy.ndarray:
    support = numpy.zeros(scene.victim.samples_per_chirp, dtype=bool)
    for _, _, passes_filter in _interference_gates(scene, k):
        support |= passes_filter

    return frame_signal(support.astype(numpy.float64))[0] > 0


def frame_signal(signal: numpy.ndarray, length: int = FRAME_LENGTH) -> tuple[numpy.ndarray, int]:
    valid_len = min(len(signal), length)
    framed = numpy.zeros(length)
    framed[:valid_len] = signal[:valid_len]
    return framed, valid_len


def normalize_frame(frame: numpy.ndarray, allow_zero: bool = False) -> numpy.ndarray:
    energy = float(numpy.sum(frame ** 2))
    if energy == 0 and allow_zero:
        return numpy.zeros_like(frame)
    if not (energy > 0 and math.isfinite(energy)):
        raise DegenerateFrameError(f'Cannot normalize a frame with energy {energy}.')

    return frame / math.sqrt(energy)


def _noise(scene: RadarScene, k: int) -> numpy.ndarray:
    if scene.noise_std == 0:
        return numpy.zeros(scene.victim.samples_per_chirp)
    return numpy.random.default_rng([scene.rng_seed, k]).normal(0.0, scene.noise_std, scene.victim.samples_per_chirp)


def synthesize_frame(scene: RadarScene, k: int) -> BeatFrame:
    clean = clean_beat_signal(scene, k)
    interfered = clean + interference_beat(scene, k) + _noise(scene, k)

    label, valid_len = frame_signal(clean)
    model_input, _ = frame_signal(interfered)

    return BeatFrame(
        input=normalize_frame(model_input),
        label=normalize_frame(label),
        valid_len=valid_len,
        chirp_index=k,
        scene_ref=scene.scene_id,
    )


def synthesize_chirp_matrix(scene: RadarScene, interfered: bool = False) -> numpy.ndarray:
    rows = []
    for k in range(scene.victim.num_chirps):
        signal = clean_beat_signal(scene, k)
        if interfered:
            signal = signal + interference_beat(scene, k) + _noise(scene, k)
        rows.append(frame_signal(signal)[0])

    return numpy.vstack(rows)
