"""GRU cell and bidirectional GRU layer with exact backpropagation through time.

Gate equations (reset gate applied to the recurrent candidate term):

    z = sigmoid(W_z x + U_z h_prev + b_z)
    r = sigmoid(W_r x + U_r h_prev + b_r)
    n = tanh(W_n x + r * (U_n h_prev) + b_n)
    h = (1 - z) * h_prev + z * n

Arrays are row-major with the batch first: x is (batch, input), h is (batch, hidden) and a whole sequence is
(batch, time, features). Both directions of a layer are summed, so the layer output keeps the hidden size.
"""
from typing import Optional

import numpy
from numpy.random import Generator
from scipy.special import expit

from src.helpers.errors import ShapeMismatchError
from src.helpers.validation import validate
from src.network.types import GruCellParams, GateCache, DirectionCache, GruLayer, BilayerTrace, GATE_PARAMETER_NAMES


def _validate_cell_shapes(params: GruCellParams, x_t: numpy.ndarray, h_prev: numpy.ndarray) -> None:
    for name, value in params.items():
        validate(
            condition=value.shape == params.expected_shapes()[name],
            error=f"GRU parameter '{name}' has an inconsistent shape.",
            context=value.shape,
            exception=ShapeMismatchError
        )
    validate(
        condition=x_t.shape[-1] == params.input_size and h_prev.shape[-1] == params.hidden_size,
        error=f'GRU cell expects inputs of size {params.input_size} and hidden states of size {params.hidden_size}.',
        context={'x_t': x_t.shape, 'h_prev': h_prev.shape},
        exception=ShapeMismatchError
    )


def _step(
        params: GruCellParams, x_z: numpy.ndarray, x_r: numpy.ndarray, x_n: numpy.ndarray, h_prev: numpy.ndarray
) -> tuple[numpy.ndarray, GateCache]:
    z = expit(x_z + h_prev @ params.U_z.T)
    r = expit(x_r + h_prev @ params.U_r.T)
    recurrent_candidate = h_prev @ params.U_n.T
    n = numpy.tanh(x_n + r * recurrent_candidate)
    h = (1 - z) * h_prev + z * n
    return h, GateCache(h_prev=h_prev, z=z, r=r, n=n, recurrent_candidate=recurrent_candidate)


def gru_cell_step(
        params: GruCellParams, x_t: numpy.ndarray, h_prev: numpy.ndarray
) -> tuple[numpy.ndarray, GateCache]:
    _validate_cell_shapes(params, x_t, h_prev)
    return _step(
        params,
        x_t @ params.W_z.T + params.b_z,
        x_t @ params.W_r.T + params.b_r,
        x_t @ params.W_n.T + params.b_n,
        h_prev,
    )


def _step_backward(
        params: GruCellParams, cache: GateCache, dh: numpy.ndarray
) -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    """Returns dh_prev and the gradients of the z, r and n pre-activations plus d(U_n h_prev)."""
    dz = dh * (cache.n - cache.h_prev)
    dn = dh * cache.z
    da_n = dn * (1 - cache.n ** 2)
    d_recurrent_candidate = da_n * cache.r
    da_r = da_n * cache.recurrent_candidate * cache.r * (1 - cache.r)
    da_z = dz * cache.z * (1 - cache.z)

    dh_prev = dh * (1 - cache.z) + da_z @ params.U_z + da_r @ params.U_r + d_recurrent_candidate @ params.U_n
    return dh_prev, da_z, da_r, da_n, d_recurrent_candidate


def gru_cell_backward(
        params: GruCellParams, x_t: numpy.ndarray, cache: GateCache, dh: numpy.ndarray
) -> tuple[numpy.ndarray, numpy.ndarray, dict[str, numpy.ndarray]]:
    """Single step backward pass: returns (dx_t, dh_prev, parameter gradients).

    Reference for one step of backpropagation through time. `bilayer_backward` shares `_step_backward` with it but
    collects the weight gradients of all steps at once instead of calling it per step, and the cell tests check the
    two against each other.
    """
    dh_prev, da_z, da_r, da_n, d_recurrent_candidate = _step_backward(params, cache, dh)

    x_rows, h_rows = numpy.atleast_2d(x_t), numpy.atleast_2d(cache.h_prev)
    da_z, da_r, da_n = numpy.atleast_2d(da_z), numpy.atleast_2d(da_r), numpy.atleast_2d(da_n)
    d_recurrent_candidate = numpy.atleast_2d(d_recurrent_candidate)
    grads = {
        'W_z': da_z.T @ x_rows, 'W_r': da_r.T @ x_rows, 'W_n': da_n.T @ x_rows,
        'U_z': da_z.T @ h_rows, 'U_r': da_r.T @ h_rows, 'U_n': d_recurrent_candidate.T @ h_rows,
        'b_z': da_z.sum(axis=0), 'b_r': da_r.sum(axis=0), 'b_n': da_n.sum(axis=0),
    }
    dx = da_z @ params.W_z + da_r @ params.W_r + da_n @ params.W_n
    return dx.reshape(numpy.shape(x_t)), dh_prev, grads


def _run_direction(params: GruCellParams, inputs: numpy.ndarray, reverse: bool) -> tuple[numpy.ndarray, DirectionCache]:
    batch, steps, _ = inputs.shape
    hidden = params.hidden_size

    x_z = inputs @ params.W_z.T + params.b_z
    x_r = inputs @ params.W_r.T + params.b_r
    x_n = inputs @ params.W_n.T + params.b_n

    outputs = numpy.empty((batch, steps, hidden))
    cache = DirectionCache(*(numpy.empty((batch, steps, hidden)) for _ in range(5)))

    h = numpy.zeros((batch, hidden))
    for t in (reversed(range(steps)) if reverse else range(steps)):
        h, step_cache = _step(params, x_z[:, t], x_r[:, t], x_n[:, t], h)
        outputs[:, t] = h
        cache.h_prev[:, t] = step_cache.h_prev
        cache.z[:, t] = step_cache.z
        cache.r[:, t] = step_cache.r
        cache.n[:, t] = step_cache.n
        cache.recurrent_candidate[:, t] = step_cache.recurrent_candidate

    return outputs, cache


def _backprop_direction(
        params: GruCellParams, inputs: numpy.ndarray, cache: DirectionCache, d_outputs: numpy.ndarray, reverse: bool
) -> tuple[numpy.ndarray, dict[str, numpy.ndarray]]:
    batch, steps, hidden = d_outputs.shape
    da_z, da_r, da_n, d_recurrent = (numpy.empty((batch, steps, hidden)) for _ in range(4))

    dh_carry = numpy.zeros((batch, hidden))
    # Gradients flow against the direction the sequence was processed in.
    for t in (range(steps) if reverse else reversed(range(steps))):
        step_cache = GateCache(
            h_prev=cache.h_prev[:, t], z=cache.z[:, t], r=cache.r[:, t], n=cache.n[:, t],
            recurrent_candidate=cache.recurrent_candidate[:, t],
        )
        dh_carry, da_z[:, t], da_r[:, t], da_n[:, t], d_recurrent[:, t] = _step_backward(
            params, step_cache, d_outputs[:, t] + dh_carry
        )

    grads = {
        'W_z': numpy.einsum('bth,btd->hd', da_z, inputs),
        'W_r': numpy.einsum('bth,btd->hd', da_r, inputs),
        'W_n': numpy.einsum('bth,btd->hd', da_n, inputs),
        'U_z': numpy.einsum('bth,btk->hk', da_z, cache.h_prev),
        'U_r': numpy.einsum('bth,btk->hk', da_r, cache.h_prev),
        'U_n': numpy.einsum('bth,btk->hk', d_recurrent, cache.h_prev),
        'b_z': da_z.sum(axis=(0, 1)),
        'b_r': da_r.sum(axis=(0, 1)),
        'b_n': da_n.sum(axis=(0, 1)),
    }
    d_inputs = da_z @ params.W_z + da_r @ params.W_r + da_n @ params.W_n
    return d_inputs, grads


def bilayer_forward(
        layer: GruLayer,
        inputs: numpy.ndarray,
        training: bool = False,
        dropout_rate: float = 0.0,
        rng: Optional[Generator] = None,
) -> tuple[numpy.ndarray, Optional[BilayerTrace]]:
    batched = inputs.ndim == 3
    sequence = inputs if batched else inputs[numpy.newaxis]
    validate(
        condition=sequence.ndim == 3 and sequence.shape[1] >= 1 and sequence.shape[2] == layer.forward.input_size,
        error=f'Bidirectional layer expects (time, {layer.forward.input_size}) sequences.',
        context=inputs.shape,
        exception=ShapeMismatchError
    )

    forward_out, forward_cache = _run_direction(layer.forward, sequence, reverse=False)
    backward_out, backward_cache = _run_direction(layer.backward, sequence, reverse=True)
    merged = forward_out + backward_out

    mask = None
    outputs = merged
    if training and dropout_rate > 0:
        validate(condition=rng is not None, error='Training mode dropout needs a random generator.', context=rng)
        mask = (rng.random(merged.shape) >= dropout_rate) / (1 - dropout_rate)
        outputs = merged * mask

    trace = None
    if training:
        trace = BilayerTrace(
            inputs=sequence, forward=forward_cache, backward=backward_cache, pre_dropout=merged, dropout_mask=mask
        )

    return (outputs if batched else outputs[0]), trace


def bilayer_backward(
        layer: GruLayer, trace: BilayerTrace, d_outputs: numpy.ndarray
) -> tuple[numpy.ndarray, dict[str, dict[str, numpy.ndarray]]]:
    batched = d_outputs.ndim == 3
    d_merged = d_outputs if batched else d_outputs[numpy.newaxis]
    if trace.dropout_mask is not None:
        d_merged = d_merged * trace.dropout_mask

    d_forward, forward_grads = _backprop_direction(layer.forward, trace.inputs, trace.forward, d_merged, False)
    d_backward, backward_grads = _backprop_direction(layer.backward, trace.inputs, trace.backward, d_merged, True)
    d_inputs = d_forward + d_backward

    grads = {
        'forward': {name: forward_grads[name] for name in GATE_PARAMETER_NAMES},
        'backward': {name: backward_grads[name] for name in GATE_PARAMETER_NAMES},
    }
    return (d_inputs if batched else d_inputs[0]), grads
