from dataclasses import dataclass, field
from typing import Optional, Iterator

import numpy

from src.config.config import ARCHITECTURE_TAG, MERGE_MODE

GATE_PARAMETER_NAMES = ('W_z', 'W_r', 'W_n', 'U_z', 'U_r', 'U_n', 'b_z', 'b_r', 'b_n')
DIRECTIONS = ('forward', 'backward')


@dataclass
class GruCellParams:
    W_z: numpy.ndarray
    W_r: numpy.ndarray
    W_n: numpy.ndarray
    U_z: numpy.ndarray
    U_r: numpy.ndarray
    U_n: numpy.ndarray
    b_z: numpy.ndarray
    b_r: numpy.ndarray
    b_n: numpy.ndarray

    @property
    def hidden_size(self) -> int:
        return self.U_z.shape[0]

    @property
    def input_size(self) -> int:
        return self.W_z.shape[1]

    def items(self) -> Iterator[tuple[str, numpy.ndarray]]:
        for name in GATE_PARAMETER_NAMES:
            yield name, getattr(self, name)

    def expected_shapes(self) -> dict[str, tuple[int, ...]]:
        return parameter_shapes(self.input_size, self.hidden_size)

    @classmethod
    def zeros(cls, input_size: int, hidden_size: int) -> 'GruCellParams':
        return cls(**{name: numpy.zeros(shape) for name, shape in parameter_shapes(input_size, hidden_size).items()})


def parameter_shapes(input_size: int, hidden_size: int) -> dict[str, tuple[int, ...]]:
    shapes = {}
    for gate in ('z', 'r', 'n'):
        shapes[f'W_{gate}'] = (hidden_size, input_size)
    for gate in ('z', 'r', 'n'):
        shapes[f'U_{gate}'] = (hidden_size, hidden_size)
    for gate in ('z', 'r', 'n'):
        shapes[f'b_{gate}'] = (hidden_size,)
    return {name: shapes[name] for name in GATE_PARAMETER_NAMES}


@dataclass
class GruLayer:
    forward: GruCellParams
    backward: GruCellParams
    has_residual: bool


@dataclass
class GruNetwork:
    layers: list[GruLayer]
    hidden_size: int
    seq_len: int
    dropout_rate: float
    architecture_tag: str = ARCHITECTURE_TAG
    merge_mode: str = MERGE_MODE

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    def parameters(self) -> dict[str, numpy.ndarray]:
        named = {}
        for index, layer in enumerate(self.layers):
            for direction in DIRECTIONS:
                for name, value in getattr(layer, direction).items():
                    named[f'layers.{index}.{direction}.{name}'] = value
        return named

    def with_parameters(self, named: dict[str, numpy.ndarray]) -> 'GruNetwork':
        layers = []
        for index, layer in enumerate(self.layers):
            cells = {
                direction: GruCellParams(**{
                    name: numpy.array(named[f'layers.{index}.{direction}.{name}'], dtype=numpy.float64)
                    for name in GATE_PARAMETER_NAMES
                })
                for direction in DIRECTIONS
            }
            layers.append(GruLayer(forward=cells['forward'], backward=cells['backward'],
                                   has_residual=layer.has_residual))

        return GruNetwork(
            layers=layers, hidden_size=self.hidden_size, seq_len=self.seq_len, dropout_rate=self.dropout_rate,
            architecture_tag=self.architecture_tag, merge_mode=self.merge_mode,
        )

    def copy(self) -> 'GruNetwork':
        return self.with_parameters(self.parameters())


@dataclass
class GateCache:
    h_prev: numpy.ndarray
    z: numpy.ndarray
    r: numpy.ndarray
    n: numpy.ndarray
    # U_n h_prev, before the reset gate is applied.
    recurrent_candidate: numpy.ndarray


@dataclass
class DirectionCache:
    # All arrays are (batch, time, hidden), indexed by the original time step.
    h_prev: numpy.ndarray
    z: numpy.ndarray
    r: numpy.ndarray
    n: numpy.ndarray
    recurrent_candidate: numpy.ndarray


@dataclass
class BilayerTrace:
    inputs: numpy.ndarray
    forward: DirectionCache
    backward: DirectionCache
    pre_dropout: numpy.ndarray
    dropout_mask: Optional[numpy.ndarray]


@dataclass
class ForwardTrace:
    layers: list[BilayerTrace]
    batched: bool


@dataclass
class TrainState:
    first_moment: dict[str, numpy.ndarray]
    second_moment: dict[str, numpy.ndarray]
    step: int
    learning_rate: float
    beta1: float
    beta2: float
    epsilon: float
    clip_norm: float
    rng_state: dict = field(default_factory=dict)
