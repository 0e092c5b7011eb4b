import numpy
import pytest

from src.radar.dataset import build_dataset, FrameDataset
from src.radar.types import VictimRadar, Target, RadarScene


@pytest.fixture
def victim() -> VictimRadar:
    # 150 MHz over 30 us: slope 5e12 Hz/s, 600 samples per chirp at 20 MHz.
    return VictimRadar(carrier_frequency_hz=77e9, sweep_bandwidth_hz=150e6, chirp_duration_s=30e-6)


@pytest.fixture
def single_target_scene(victim: VictimRadar) -> RadarScene:
    return RadarScene(victim=victim, targets=[Target(range_m=100.0)])


@pytest.fixture(scope='session')
def small_dataset() -> FrameDataset:
    return build_dataset(8, base_seed=11)


@pytest.fixture
def rng() -> numpy.random.Generator:
    return numpy.random.default_rng(1234)
