import numpy

from src.config.types import MethodName, MitigationConfig
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.mitigation.baselines import tdt_mitigate


class TdtMitigationMethod(AbstractMitigationMethod):
    name = MethodName.Tdt
    label = 'tdt'

    def __init__(self, config: MitigationConfig):
        self.__config = config

    def mitigate(self, frame: numpy.ndarray) -> numpy.ndarray:
        return tdt_mitigate(frame, self.__config)
