import numpy

from src.config.types import MethodName
from src.mitigation.AbstractMitigationMethod import AbstractMitigationMethod
from src.network.network import predict
from src.network.types import GruNetwork


class NetworkMitigationMethod(AbstractMitigationMethod):
    name = MethodName.Proposed
    label = 'proposed'

    def __init__(self, network: GruNetwork):
        self.__network = network

    def mitigate(self, frame: numpy.ndarray) -> numpy.ndarray:
        return self.mitigate_batch(frame[numpy.newaxis])[0]

    def mitigate_batch(self, frames: numpy.ndarray) -> numpy.ndarray:
        return predict(self.__network, frames)
