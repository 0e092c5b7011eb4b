import numpy
import pytest

from src.helpers.errors import MissingTraceError, ShapeMismatchError
from src.network.gru import gru_cell_step
from src.network.network import init_network, network_forward, network_backward, mse_loss, batch_loss, \
    batch_loss_gradient, predict
from src.network.types import GruNetwork, GruCellParams


def _direction_oracle(cell: GruCellParams, sequence: numpy.ndarray, reverse: bool) -> numpy.ndarray:
    steps = range(len(sequence) - 1, -1, -1) if reverse else range(len(sequence))
    h = numpy.zeros(cell.hidden_size)
    outputs = numpy.zeros((len(sequence), cell.hidden_size))
    for t in steps:
        h, _ = gru_cell_step(cell, sequence[t], h)
        outputs[t] = h
    return outputs


def _network_oracle(net: GruNetwork, signal: numpy.ndarray) -> numpy.ndarray:
    activations = signal[:, numpy.newaxis]
    for layer in net.layers:
        merged = _direction_oracle(layer.forward, activations, False) + _direction_oracle(layer.backward, activations,
                                                                                          True)
        activations = activations + merged if layer.has_residual else merged
    return activations.mean(axis=1)


def test_forward_matches_a_step_by_step_oracle(rng):
    net = init_network(hidden_size=8, num_layers=2, seq_len=16, seed=5)
    signal = rng.normal(size=16)

    output, trace = network_forward(net, signal)
    assert trace is None
    numpy.testing.assert_allclose(output, _network_oracle(net, signal), rtol=0, atol=1e-12)


def test_batched_forward_matches_single_sequences(rng):
    net = init_network(hidden_size=4, num_layers=2, seq_len=10, seed=2)
    signals = rng.normal(size=(3, 10))

    batched, _ = network_forward(net, signals)
    for row in range(3):
        numpy.testing.assert_allclose(batched[row], network_forward(net, signals[row])[0], atol=1e-14)
    numpy.testing.assert_allclose(predict(net, signals, chunk_size=2), batched, atol=1e-14)


def test_silent_residual_layer_is_an_identity(rng):
    deep = init_network(hidden_size=5, num_layers=2, seq_len=12, seed=9)
    zeroed = deep.parameters()
    for name in zeroed:
        if name.startswith('layers.1.'):
            zeroed[name] = numpy.zeros_like(zeroed[name])
    deep = deep.with_parameters(zeroed)

    shallow = init_network(hidden_size=5, num_layers=1, seq_len=12, seed=9)
    shallow = shallow.with_parameters({name: zeroed[name] for name in shallow.parameters()})

    signal = rng.normal(size=12)
    numpy.testing.assert_array_equal(network_forward(deep, signal)[0], network_forward(shallow, signal)[0])


def test_first_layer_has_no_residual_connection():
    net = init_network(hidden_size=4, num_layers=3, seq_len=8)

    assert [layer.has_residual for layer in net.layers] == [False, True, True]
    assert net.layers[0].forward.input_size == 1
    assert net.layers[1].forward.input_size == 4


def test_input_length_has_to_match(rng):
    net = init_network(hidden_size=2, num_layers=1, seq_len=8)
    with pytest.raises(ShapeMismatchError):
        network_forward(net, rng.normal(size=9))


def test_loss_examples():
    label = numpy.zeros(416)
    output = label.copy()
    output[10] = 0.5

    assert mse_loss(label, label) == 0.0
    assert mse_loss(output, label) == 0.25
    assert mse_loss(label, output) == mse_loss(output, label)
    assert batch_loss(numpy.array([output, label]), numpy.array([label, label])) == 0.125


def test_backward_needs_a_training_trace(rng):
    net = init_network(hidden_size=2, num_layers=1, seq_len=8)
    with pytest.raises(MissingTraceError):
        network_backward(net, None, numpy.zeros(8))


def test_zero_upstream_gradient_gives_zero_gradients(rng):
    net = init_network(hidden_size=4, num_layers=2, seq_len=8, seed=1)
    _, trace = network_forward(net, rng.normal(size=8), training=True)

    grads, d_input = network_backward(net, trace, numpy.zeros(8))
    assert list(grads) == list(net.parameters())
    assert all(not value.any() for value in grads.values())
    assert not d_input.any()


def test_residual_layer_passes_the_gradient_through(rng):
    net = init_network(hidden_size=3, num_layers=2, seq_len=6, seed=4)
    zeroed = {name: (numpy.zeros_like(value) if name.startswith('layers.1.') else value)
              for name, value in net.parameters().items()}
    net = net.with_parameters(zeroed)
    single = init_network(hidden_size=3, num_layers=1, seq_len=6, seed=4)
    single = single.with_parameters({name: zeroed[name] for name in single.parameters()})

    signal, upstream = rng.normal(size=6), rng.normal(size=6)
    _, trace = network_forward(net, signal, training=True)
    _, single_trace = network_forward(single, signal, training=True)

    # A silent residual layer adds nothing on top of the identity path, so the input gradient is unchanged.
    numpy.testing.assert_allclose(network_backward(net, trace, upstream)[1],
                                  network_backward(single, single_trace, upstream)[1], atol=1e-14)


@pytest.mark.parametrize('hidden_size', [4, 8])
@pytest.mark.parametrize('num_layers', [1, 2, 3])
def test_gradients_match_central_differences(hidden_size, num_layers):
    rng = numpy.random.default_rng(hidden_size * 10 + num_layers)
    net = init_network(hidden_size, num_layers, seq_len=16, seed=hidden_size + num_layers)
    signals, labels = rng.normal(size=(2, 16)), rng.normal(size=(2, 16))

    def loss_of(params: dict[str, numpy.ndarray], inputs: numpy.ndarray = signals) -> float:
        return batch_loss(network_forward(net.with_parameters(params), inputs)[0], labels)

    outputs, trace = network_forward(net, signals, training=True)
    grads, d_input = network_backward(net, trace, batch_loss_gradient(outputs, labels))

    params = net.parameters()
    names = list(params)
    step = 1e-5
    worst = 0.0
    for _ in range(110):
        name = names[rng.integers(len(names))]
        coordinate = tuple(int(rng.integers(size)) for size in params[name].shape)
        plus = {key: value.copy() for key, value in params.items()}
        minus = {key: value.copy() for key, value in params.items()}
        plus[name][coordinate] += step
        minus[name][coordinate] -= step

        numeric = (loss_of(plus) - loss_of(minus)) / (2 * step)
        analytic = grads[name][coordinate]
        worst = max(worst, abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-5))

    for index in [(0, 0), (1, 7), (0, 15)]:
        shift = numpy.zeros_like(signals)
        shift[index] = step
        numeric = (loss_of(params, signals + shift) - loss_of(params, signals - shift)) / (2 * step)
        worst = max(worst, abs(d_input[index] - numeric) / max(abs(d_input[index]), abs(numeric), 1e-5))

    assert worst < 1e-4


def test_gradients_through_dropout_match_central_differences():
    rng = numpy.random.default_rng(42)
    net = init_network(hidden_size=4, num_layers=2, seq_len=12, dropout_rate=0.3, seed=6)
    signals, labels = rng.normal(size=(2, 12)), rng.normal(size=(2, 12))

    # A fresh generator with the same seed draws the same dropout masks on every pass.
    def masked_forward(params: dict[str, numpy.ndarray], inputs: numpy.ndarray = signals):
        return network_forward(net.with_parameters(params), inputs, training=True, rng=numpy.random.default_rng(99))

    outputs, trace = masked_forward(net.parameters())
    assert any(not layer.dropout_mask.all() for layer in trace.layers)
    grads, d_input = network_backward(net, trace, batch_loss_gradient(outputs, labels))

    params = net.parameters()
    step = 1e-5
    worst = 0.0
    for name in params:
        coordinate = tuple(int(rng.integers(size)) for size in params[name].shape)
        plus = {key: value.copy() for key, value in params.items()}
        minus = {key: value.copy() for key, value in params.items()}
        plus[name][coordinate] += step
        minus[name][coordinate] -= step

        numeric = (batch_loss(masked_forward(plus)[0], labels) - batch_loss(masked_forward(minus)[0], labels)) \
            / (2 * step)
        analytic = grads[name][coordinate]
        worst = max(worst, abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-5))

    shift = numpy.zeros_like(signals)
    shift[1, 5] = step
    numeric = (batch_loss(masked_forward(params, signals + shift)[0], labels)
               - batch_loss(masked_forward(params, signals - shift)[0], labels)) / (2 * step)
    worst = max(worst, abs(d_input[1, 5] - numeric) / max(abs(d_input[1, 5]), abs(numeric), 1e-5))

    assert worst < 1e-4
