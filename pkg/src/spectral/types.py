from dataclasses import dataclass

import numpy
from pydantic import BaseModel


@dataclass
class RangeSpectrum:
    bins: numpy.ndarray
    bin_width_hz: float
    range_per_bin_m: float

    @property
    def power(self) -> numpy.ndarray:
        return 10 ** (self.bins / 10)

    @property
    def bin_frequencies_hz(self) -> numpy.ndarray:
        return numpy.arange(len(self.bins)) * self.bin_width_hz

    @property
    def ranges_m(self) -> numpy.ndarray:
        return numpy.arange(len(self.bins)) * self.range_per_bin_m


@dataclass
class RangeDopplerMap:
    # (doppler bin, range bin), zero Doppler in row 0.
    power_db: numpy.ndarray
    range_per_bin_m: float
    velocity_per_bin_mps: float


class Peak(BaseModel):
    bin: int
    range_m: float
    power_db: float


class ScenarioResult(BaseModel):
    scene_id: int
    frame_index: int
    method: str
    srinr_db: float
    detected_ranges_m: list[float]


class EvalReport(BaseModel):
    per_scenario: list[ScenarioResult]
    aggregate: dict[str, float]
    method_labels: dict[str, str]
    scenario_count: int


class LocalizationResult(BaseModel):
    frame_index: int
    support_size: int
    input_error: float
    output_error: float

    @property
    def improved(self) -> bool:
        return self.output_error < self.input_error
