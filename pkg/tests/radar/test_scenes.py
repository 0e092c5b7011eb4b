import numpy
import pytest

from src.config.types import ScenarioConfig, SceneBounds, WaveformKind
from src.radar.scenes import sample_scene


@pytest.fixture(scope='module')
def scenes():
    return [sample_scene(seed) for seed in range(1000)]


def _spans(values: list[float], low: float, high: float) -> bool:
    return min(values) >= low and max(values) <= high and (max(values) - min(values)) > 0.8 * (high - low)


def test_same_seed_gives_the_same_scene():
    assert sample_scene(42) == sample_scene(42)
    assert sample_scene(42) != sample_scene(43)


def test_drawn_values_cover_the_configured_ranges(scenes):
    radar, scene = ScenarioConfig().radar, ScenarioConfig().scene

    assert _spans([s.victim.carrier_frequency_hz for s in scenes], radar.f_min, radar.f_max)
    assert _spans([s.victim.sweep_bandwidth_hz for s in scenes], radar.B_min, radar.B_max)
    assert _spans([s.victim.chirp_duration_s for s in scenes], radar.Tchirp_min, radar.Tchirp_max)
    assert _spans([t.range_m for s in scenes for t in s.targets], scene.range_min, scene.range_max)
    assert _spans([t.velocity_mps * 3.6 for s in scenes for t in s.targets],
                  scene.velocity_min_kmh, scene.velocity_max_kmh)
    assert _spans([i.sweep_bandwidth_hz for s in scenes for i in s.interferers], radar.B_min, radar.B_max)
    assert _spans([i.chirp_duration_s for s in scenes for i in s.interferers], radar.Tchirp_min, radar.Tchirp_max)
    assert _spans([i.range_m for s in scenes for i in s.interferers], scene.range_min, scene.range_max)


def test_counts_and_levels_stay_within_bounds(scenes):
    bounds = SceneBounds()
    for scene in scenes:
        assert bounds.targets_min <= len(scene.targets) <= bounds.targets_max
        assert bounds.interferers_min <= len(scene.interferers) <= bounds.interferers_max
        strongest = max(target.amplitude for target in scene.targets)
        for interferer in scene.interferers:
            assert 76e9 <= interferer.carrier_frequency_hz <= 78e9
            ratio = interferer.amplitude / strongest
            assert bounds.interferer_gain_min * (1 - 1e-12) <= ratio <= bounds.interferer_gain_max * (1 + 1e-12)

        snr_db = 20 * numpy.log10(strongest / numpy.sqrt(2) / scene.noise_std)
        assert bounds.snr_min_db - 1e-9 <= snr_db <= bounds.snr_max_db + 1e-9

    assert {len(scene.targets) for scene in scenes} == {1, 2}
    assert {len(scene.interferers) for scene in scenes} == {1, 2, 3, 4}
    assert {i.waveform_kind for s in scenes for i in s.interferers} == set(WaveformKind)


def test_sawtooth_interferers_never_share_the_victim_slope(scenes):
    for scene in scenes:
        for interferer in scene.interferers:
            if interferer.waveform_kind == WaveformKind.Sawtooth:
                assert abs(interferer.slope - scene.victim.slope) / scene.victim.slope >= 0.01


def test_narrowed_scene_bounds_are_honoured():
    config = ScenarioConfig(scene=SceneBounds(
        range_min=99.0, range_max=101.0, targets_min=1, targets_max=1, interferers_min=0, interferers_max=0,
    ))
    for seed in range(50):
        scene = sample_scene(seed, config)
        assert len(scene.targets) == 1 and not scene.interferers
        assert 99.0 <= scene.targets[0].range_m <= 101.0
