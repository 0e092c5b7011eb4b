import numpy

from src.config.types import MethodName, MitigationConfig
from src.helpers.warnings import show_envelope_reconstruction_warning_once
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.mitigation.baselines import envelope_mitigate


class EnvelopeMitigationMethod(AbstractMitigationMethod):
    name = MethodName.Envelope

    # Reconstructed from a brief description, so the label says so.
    label = 'envelope (reconstruction)'

    def __init__(self, config: MitigationConfig):
        self.__config = config
        show_envelope_reconstruction_warning_once()

    def mitigate(self, frame: numpy.ndarray) -> numpy.ndarray:
        return envelope_mitigate(frame, self.__config)
