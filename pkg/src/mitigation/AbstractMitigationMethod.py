from abc import ABC, abstractmethod

import numpy

from src.config.types import MethodName
from src.radar.simulator import normalize_frame


class AbstractMitigationMethod(ABC):
    name: MethodName
    label: str

    @abstractmethod
    def mitigate(self, frame: numpy.ndarray) -> numpy.ndarray: pass

    def mitigate_batch(self, frames: numpy.ndarray) -> numpy.ndarray:
        return numpy.array([self.mitigate(frame) for frame in frames]).reshape(frames.shape)

    def mitigate_normalized(self, frames: numpy.ndarray) -> numpy.ndarray:
        return numpy.array([normalize_frame(frame, allow_zero=True) for frame in self.mitigate_batch(frames)]) \
            .reshape(frames.shape)
