import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy
from pydantic import BaseModel

from src.config.config import MAX_FRAME_RESAMPLES, FRAME_LENGTH
from src.config.types import ScenarioConfig
from src.helpers.errors import DegenerateFrameError, UsageError
from src.helpers.validation import validate
from src.helpers.warnings import show_resampled_frames_warning_once
from src.radar.scenes import sample_scene
from src.radar.simulator import synthesize_frame
from src.radar.types import BeatFrame, RadarScene, DatasetSummary


class FrameRecord(BaseModel):
    index: int
    base_seed: int
    chirp_index: int
    valid_len: int
    scene: RadarScene


@dataclass
class FrameDataset:
    inputs: numpy.ndarray
    labels: numpy.ndarray
    records: list[FrameRecord]
    sample_rate_hz: float
    base_seed: int
    frame_length: int = FRAME_LENGTH

    def __len__(self) -> int:
        return len(self.records)

    def subset(self, indices: numpy.ndarray) -> 'FrameDataset':
        return FrameDataset(
            inputs=self.inputs[indices],
            labels=self.labels[indices],
            records=[self.records[i] for i in indices],
            sample_rate_hz=self.sample_rate_hz,
            base_seed=self.base_seed,
            frame_length=self.frame_length,
        )


@dataclass
class FrameCollector:
    frames: list[BeatFrame] = field(default_factory=list)
    records: list[FrameRecord] = field(default_factory=list)

    def __call__(self, frame: BeatFrame, record: FrameRecord) -> None:
        self.frames.append(frame)
        self.records.append(record)

    def to_dataset(self, sample_rate_hz: float, base_seed: int) -> FrameDataset:
        return FrameDataset(
            inputs=numpy.array([frame.input for frame in self.frames]).reshape(-1, FRAME_LENGTH),
            labels=numpy.array([frame.label for frame in self.frames]).reshape(-1, FRAME_LENGTH),
            records=self.records,
            sample_rate_hz=sample_rate_hz,
            base_seed=base_seed,
        )


def _draw_frame(index: int, base_seed: int, config: ScenarioConfig) -> tuple[BeatFrame, FrameRecord, int]:
    for attempt in range(MAX_FRAME_RESAMPLES + 1):
        rng = numpy.random.default_rng([base_seed, index, attempt])
        scene_seed = int(rng.integers(2 ** 62))
        chirp_index = int(rng.integers(config.radar.num_chirps))
        scene = sample_scene(scene_seed, config)
        try:
            frame = synthesize_frame(scene, chirp_index)
        except DegenerateFrameError:
            continue

        record = FrameRecord(
            index=index, base_seed=base_seed, chirp_index=chirp_index, valid_len=frame.valid_len, scene=scene
        )
        return frame, record, attempt

    raise DegenerateFrameError(f'Frame {index} could not be normalized after {MAX_FRAME_RESAMPLES} resamples.')


def generate_frames(count: int, base_seed: int, config: ScenarioConfig) -> Iterator[tuple[BeatFrame, FrameRecord, int]]:
    for index in range(count):
        yield _draw_frame(index, base_seed, config)


def generate_dataset(
        count: int,
        base_seed: int,
        out_sink: Callable[[BeatFrame, FrameRecord], None],
        config: ScenarioConfig = ScenarioConfig()
) -> DatasetSummary:
    validate(
        condition=count >= 1,
        error='At least one frame has to be generated.',
        context=count,
        exception=UsageError
    )
    started = time.perf_counter()

    resampled = 0
    for frame, record, attempts in generate_frames(count, base_seed, config):
        out_sink(frame, record)
        resampled += attempts

    if resampled:
        show_resampled_frames_warning_once(resampled)

    return DatasetSummary(
        count=count, resampled=resampled, base_seed=base_seed, elapsed_s=time.perf_counter() - started
    )


def build_dataset(count: int, base_seed: int, config: ScenarioConfig = ScenarioConfig()) -> FrameDataset:
    collector = FrameCollector()
    generate_dataset(count, base_seed, collector, config)
    return collector.to_dataset(config.radar.f_s, base_seed)
