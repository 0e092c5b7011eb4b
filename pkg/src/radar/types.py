import math
from dataclasses import dataclass

import numpy
from pydantic import BaseModel, validator, root_validator

from src.config.config import SPEED_OF_LIGHT, NUM_CHIRPS, DEFAULT_SAMPLE_RATE_HZ
from src.config.types import WaveformKind


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise ValueError('has to be finite')
    return value


# noinspection PyMethodParameters
class VictimRadar(BaseModel):
    carrier_frequency_hz: float
    sweep_bandwidth_hz: float
    chirp_duration_s: float
    num_chirps: int = NUM_CHIRPS
    sample_rate_hz: float = DEFAULT_SAMPLE_RATE_HZ
    lpf_cutoff_hz: float = DEFAULT_SAMPLE_RATE_HZ / 2

    class Config:
        allow_mutation = False

    @validator('*')
    def finite_and_positive(cls, value):
        _finite(value)
        if not value > 0:
            raise ValueError('has to be positive')
        return value

    @root_validator(skip_on_failure=True)
    def cutoff_below_nyquist(cls, values: dict) -> dict:
        if values['lpf_cutoff_hz'] > values['sample_rate_hz'] / 2:
            raise ValueError('lpf_cutoff_hz cannot exceed half of the sample rate')
        if not math.isfinite(values['sweep_bandwidth_hz'] / values['chirp_duration_s']):
            raise ValueError('chirp slope has to be finite')
        return values

    @property
    def slope(self) -> float:
        return self.sweep_bandwidth_hz / self.chirp_duration_s

    @property
    def sample_period_s(self) -> float:
        return 1 / self.sample_rate_hz

    @property
    def samples_per_chirp(self) -> int:
        return int(round(self.chirp_duration_s * self.sample_rate_hz))


# noinspection PyMethodParameters
class Target(BaseModel):
    range_m: float
    velocity_mps: float = 0.0
    amplitude: float = 1.0

    class Config:
        allow_mutation = False

    @validator('*')
    def finite(cls, value: float) -> float:
        return _finite(value)

    @validator('range_m', 'amplitude')
    def positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError('has to be positive')
        return value

    def beat_frequency(self, victim: VictimRadar) -> float:
        return 2 * victim.slope * self.range_m / SPEED_OF_LIGHT


# noinspection PyMethodParameters
class Interferer(BaseModel):
    carrier_frequency_hz: float
    sweep_bandwidth_hz: float
    chirp_duration_s: float
    waveform_kind: WaveformKind = WaveformKind.Sawtooth
    range_m: float
    amplitude: float
    start_offset_s: float = 0.0

    class Config:
        allow_mutation = False

    @validator('carrier_frequency_hz', 'sweep_bandwidth_hz', 'chirp_duration_s', 'range_m', 'amplitude',
               'start_offset_s')
    def finite(cls, value: float) -> float:
        return _finite(value)

    @validator('carrier_frequency_hz', 'sweep_bandwidth_hz', 'chirp_duration_s', 'range_m', 'amplitude')
    def positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError('has to be positive')
        return value

    @property
    def slope(self) -> float:
        return self.sweep_bandwidth_hz / self.chirp_duration_s

    @property
    def period_s(self) -> float:
        if self.waveform_kind == WaveformKind.Triangle:
            return 2 * self.chirp_duration_s
        return self.chirp_duration_s


class RadarScene(BaseModel):
    victim: VictimRadar
    targets: list[Target]
    interferers: list[Interferer] = []
    noise_std: float = 0.0
    rng_seed: int = 0

    class Config:
        allow_mutation = False

    # noinspection PyMethodParameters
    @validator('noise_std')
    def non_negative_noise(cls, value: float) -> float:
        if not (math.isfinite(value) and value >= 0):
            raise ValueError('noise_std has to be finite and non-negative')
        return value

    # noinspection PyMethodParameters
    @validator('rng_seed')
    def non_negative_seed(cls, value: int) -> int:
        if value < 0:
            raise ValueError('rng_seed cannot be negative')
        return value

    @property
    def scene_id(self) -> int:
        return self.rng_seed


@dataclass
class BeatFrame:
    input: numpy.ndarray
    label: numpy.ndarray
    valid_len: int
    chirp_index: int
    scene_ref: int


@dataclass
class DatasetSummary:
    count: int
    resampled: int
    base_seed: int
    elapsed_s: float
