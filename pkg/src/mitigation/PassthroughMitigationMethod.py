import numpy

from src.config.types import MethodName
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.mitigation.baselines import passthrough


class PassthroughMitigationMethod(AbstractMitigationMethod):
    name = MethodName.Passthrough
    label = 'no processing'

    def mitigate(self, frame: numpy.ndarray) -> numpy.ndarray:
        return passthrough(frame)

    def mitigate_batch(self, frames: numpy.ndarray) -> numpy.ndarray:
        return frames
