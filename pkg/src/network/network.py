import math
from typing import Optional

import numpy
from numpy.random import Generator

from src.config.config import FRAME_LENGTH
from src.helpers.errors import ShapeMismatchError, MissingTraceError
from src.helpers.validation import validate
from src.network.gru import bilayer_forward, bilayer_backward
from src.network.types import GruNetwork, GruLayer, GruCellParams, ForwardTrace, parameter_shapes, DIRECTIONS


def init_network(
        hidden_size: int,
        num_layers: int,
        seq_len: int = FRAME_LENGTH,
        dropout_rate: float = 0.0,
        seed: int = 0,
) -> GruNetwork:
    validate(
        condition=hidden_size >= 1 and num_layers >= 1 and seq_len >= 1 and 0 <= dropout_rate < 1,
        error='Network needs at least one layer, one hidden unit and a dropout rate in [0, 1).',
        context={'hidden_size': hidden_size, 'num_layers': num_layers, 'seq_len': seq_len, 'dropout': dropout_rate}
    )
    rng = numpy.random.default_rng(seed)
    bound = 1 / math.sqrt(hidden_size)

    def init_cell(input_size: int) -> GruCellParams:
        return GruCellParams(**{
            name: numpy.zeros(shape) if name.startswith('b_') else rng.uniform(-bound, bound, shape)
            for name, shape in parameter_shapes(input_size, hidden_size).items()
        })

    layers = []
    for index in range(num_layers):
        # The first layer lifts the scalar signal to the hidden size, so it cannot carry a residual connection.
        input_size = 1 if index == 0 else hidden_size
        layers.append(GruLayer(forward=init_cell(input_size), backward=init_cell(input_size), has_residual=index > 0))

    return GruNetwork(layers=layers, hidden_size=hidden_size, seq_len=seq_len, dropout_rate=dropout_rate)


def network_forward(
        net: GruNetwork, signal: numpy.ndarray, training: bool = False, rng: Optional[Generator] = None
) -> tuple[numpy.ndarray, Optional[ForwardTrace]]:
    """Maps one (time,) sequence or a (batch, time) stack of sequences to outputs of the same shape."""
    validate(
        condition=signal.ndim in (1, 2) and signal.shape[-1] == net.seq_len,
        error=f'Network input has to have {net.seq_len} samples per sequence.',
        context=signal.shape,
        exception=ShapeMismatchError
    )
    batched = signal.ndim == 2
    activations = (signal if batched else signal[numpy.newaxis])[..., numpy.newaxis].astype(numpy.float64)

    traces = []
    for layer in net.layers:
        layer_output, trace = bilayer_forward(layer, activations, training, net.dropout_rate, rng)
        activations = activations + layer_output if layer.has_residual else layer_output
        traces.append(trace)

    pooled = activations.mean(axis=2)
    output = pooled if batched else pooled[0]
    return output, (ForwardTrace(layers=traces, batched=batched) if training else None)


def network_backward(
        net: GruNetwork, trace: Optional[ForwardTrace], d_output: numpy.ndarray
) -> tuple[dict[str, numpy.ndarray], numpy.ndarray]:
    """Returns the gradient of every named parameter and the gradient with respect to the network input."""
    validate(
        condition=trace is not None,
        error='Backward pass needs the trace of a training mode forward pass.',
        context=trace,
        exception=MissingTraceError
    )
    d_pooled = d_output if trace.batched else d_output[numpy.newaxis]
    validate(
        condition=d_pooled.shape == trace.layers[0].inputs.shape[:2],
        error='Output gradient does not match the traced forward pass.',
        context=d_output.shape,
        exception=ShapeMismatchError
    )

    d_activations = numpy.repeat(d_pooled[..., numpy.newaxis] / net.hidden_size, net.hidden_size, axis=2)
    grads = {}
    for index in reversed(range(net.num_layers)):
        layer = net.layers[index]
        d_layer_input, layer_grads = bilayer_backward(layer, trace.layers[index], d_activations)
        for direction in DIRECTIONS:
            for name, value in layer_grads[direction].items():
                grads[f'layers.{index}.{direction}.{name}'] = value

        # X^{l+1} = X^l + GRU(X^l): the identity path adds the upstream gradient unchanged.
        d_activations = d_activations + d_layer_input if layer.has_residual else d_layer_input

    d_input = d_activations[..., 0]
    ordered = {name: grads[name] for name in net.parameters()}
    return ordered, (d_input if trace.batched else d_input[0])


def mse_loss(output: numpy.ndarray, label: numpy.ndarray) -> float:
    validate(
        condition=output.shape == label.shape,
        error='Output and label have to have the same length.',
        context={'output': output.shape, 'label': label.shape},
        exception=ShapeMismatchError
    )
    return float(numpy.sum((label - output) ** 2))


def batch_loss(outputs: numpy.ndarray, labels: numpy.ndarray) -> float:
    """Mean over the batch of the per-sequence summed squared error."""
    return mse_loss(outputs, labels) / outputs.shape[0]


def batch_loss_gradient(outputs: numpy.ndarray, labels: numpy.ndarray) -> numpy.ndarray:
    return 2 * (outputs - labels) / outputs.shape[0]


def predict(net: GruNetwork, signals: numpy.ndarray, chunk_size: int = 256) -> numpy.ndarray:
    if len(signals) == 0:
        return numpy.zeros_like(signals)
    return numpy.concatenate([
        network_forward(net, signals[start:start + chunk_size])[0] for start in range(0, len(signals), chunk_size)
    ])
