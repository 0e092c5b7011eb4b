import math

import numpy
from numpy.random import Generator

from src.config.types import ScenarioConfig, WaveformKind, RadarBounds, SceneBounds
from src.radar.types import VictimRadar, Target, Interferer, RadarScene

# Sawtooth interferers closer than this to the victim slope are drawn again.
MIN_RELATIVE_SLOPE_DIFFERENCE = 0.01


def _sample_victim(rng: Generator, radar: RadarBounds) -> VictimRadar:
    return VictimRadar(
        carrier_frequency_hz=rng.uniform(radar.f_min, radar.f_max),
        sweep_bandwidth_hz=rng.uniform(radar.B_min, radar.B_max),
        chirp_duration_s=rng.uniform(radar.Tchirp_min, radar.Tchirp_max),
        num_chirps=radar.num_chirps,
        sample_rate_hz=radar.f_s,
        lpf_cutoff_hz=radar.lpf_cutoff,
    )


def _sample_target(rng: Generator, scene: SceneBounds) -> Target:
    range_m = rng.uniform(scene.range_min, scene.range_max)
    return Target(
        range_m=range_m,
        velocity_mps=rng.uniform(scene.velocity_min_kmh, scene.velocity_max_kmh) / 3.6,
        # Two way propagation: received amplitude falls with the square of the range.
        amplitude=(scene.range_min / range_m) ** 2,
    )


def _sample_interferer(
        rng: Generator, radar: RadarBounds, scene: SceneBounds, victim: VictimRadar, strongest_target: float
) -> Interferer:
    waveform_kind = WaveformKind.Triangle if rng.random() < 0.5 else WaveformKind.Sawtooth
    while True:
        bandwidth = rng.uniform(radar.B_min, radar.B_max)
        duration = rng.uniform(radar.Tchirp_min, radar.Tchirp_max)
        slope_difference = abs(bandwidth / duration - victim.slope) / victim.slope
        if waveform_kind == WaveformKind.Triangle or slope_difference >= MIN_RELATIVE_SLOPE_DIFFERENCE:
            break

    # The interferer band has to overlap the victim band, otherwise the sweeps never cross.
    carrier = rng.uniform(victim.carrier_frequency_hz - bandwidth,
                          victim.carrier_frequency_hz + victim.sweep_bandwidth_hz)
    gain = math.exp(rng.uniform(math.log(scene.interferer_gain_min), math.log(scene.interferer_gain_max)))
    period = 2 * duration if waveform_kind == WaveformKind.Triangle else duration

    return Interferer(
        carrier_frequency_hz=float(numpy.clip(carrier, radar.f_min, radar.f_max)),
        sweep_bandwidth_hz=bandwidth,
        chirp_duration_s=duration,
        waveform_kind=waveform_kind,
        range_m=rng.uniform(scene.range_min, scene.range_max),
        amplitude=gain * strongest_target,
        start_offset_s=rng.uniform(0, period),
    )


def sample_scene(rng_seed: int, config: ScenarioConfig = ScenarioConfig()) -> RadarScene:
    rng = numpy.random.default_rng(rng_seed)
    radar, scene = config.radar, config.scene

    victim = _sample_victim(rng, radar)
    targets = [_sample_target(rng, scene) for _ in range(rng.integers(scene.targets_min, scene.targets_max + 1))]
    strongest = max(target.amplitude for target in targets)
    interferers = [
        _sample_interferer(rng, radar, scene, victim, strongest)
        for _ in range(rng.integers(scene.interferers_min, scene.interferers_max + 1))
    ]

    # Signal power of a tone with amplitude a is a^2 / 2.
    snr_db = rng.uniform(scene.snr_min_db, scene.snr_max_db)
    noise_std = strongest / math.sqrt(2) / 10 ** (snr_db / 20)

    return RadarScene(victim=victim, targets=targets, interferers=interferers, noise_std=noise_std, rng_seed=rng_seed)
