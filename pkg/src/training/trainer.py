import hashlib
import math
import time
from dataclasses import replace
from logging import info
from pathlib import Path
from typing import Optional, Union

import numpy

from src.config.types import TrainConfig
from src.helpers import validation
from src.helpers.errors import NumericAbortError, UsageError
from src.network.checkpoint import save_network
from src.network.network import init_network, network_forward, network_backward, batch_loss, \
    batch_loss_gradient, predict
from src.network.optimizer import init_train_state, clip_gradients, adam_step, global_norm
from src.network.types import GruNetwork
from src.radar.dataset import FrameDataset
from src.training.types import TrainLog, BatchRecord, EpochRecord


def make_batches(count: int, batch_size: int, seed: int, epoch: int) -> list[numpy.ndarray]:
    """Shuffled index batches for one epoch. The last batch keeps the remainder."""
    validation.validate(
        condition=count >= 0 and batch_size >= 1,
        error='Batching needs a non-negative frame count and a positive batch size.',
        context={'count': count, 'batch_size': batch_size}
    )
    order = numpy.random.default_rng([seed, epoch]).permutation(count)
    return [order[start:start + batch_size] for start in range(0, count, batch_size)]


def _index_hash(index: int) -> int:
    return int.from_bytes(hashlib.blake2b(str(index).encode('ascii'), digest_size=8).digest(), 'little')


def split_train_validation(dataset: FrameDataset, val_fraction: float) -> tuple[FrameDataset, FrameDataset]:
    """Deterministic split: the frames whose index hashes lowest go to validation."""
    validation.validate(
        condition=len(dataset) >= 2 and 0 < val_fraction < 1,
        error='Splitting needs at least two frames and a validation fraction in (0, 1).',
        context={'frames': len(dataset), 'val_fraction': val_fraction},
        exception=UsageError
    )
    val_count = min(max(1, math.ceil(val_fraction * len(dataset))), len(dataset) - 1)
    order = sorted(range(len(dataset)), key=lambda position: _index_hash(dataset.records[position].index))

    val_positions = numpy.array(sorted(order[:val_count]))
    train_positions = numpy.array(sorted(order[val_count:]))
    return dataset.subset(train_positions), dataset.subset(val_positions)


def validate(net: GruNetwork, val_data: FrameDataset) -> float:
    """Mean per-frame loss in inference mode."""
    validation.validate(
        condition=val_data.frame_length == net.seq_len and len(val_data) > 0,
        error=f'Validation needs frames of {net.seq_len} samples.',
        context={'frame_length': val_data.frame_length, 'frames': len(val_data)},
        exception=UsageError
    )
    return batch_loss(predict(net, val_data.inputs), val_data.labels)


def _abort_on_non_finite(value: float, what: str, epoch: int, batch: int, step: int) -> None:
    if not math.isfinite(value):
        raise NumericAbortError(
            f'Training aborted: non-finite {what} ({value}) in epoch {epoch}, batch {batch}, step {step}.'
        )


def final_checkpoint_path(checkpoint_path: Union[str, Path]) -> Path:
    path = Path(checkpoint_path)
    return path.with_name(f'{path.stem}.final.rimc')


def periodic_checkpoint_path(checkpoint_path: Union[str, Path]) -> Path:
    path = Path(checkpoint_path)
    return path.with_name(f'{path.stem}.latest.rimc')


def train(
        config: TrainConfig,
        train_data: FrameDataset,
        val_data: Optional[FrameDataset] = None,
        checkpoint_path: Optional[Union[str, Path]] = None,
) -> tuple[GruNetwork, TrainLog]:
    """Returns the network with the lowest validation loss (train loss without validation data) and the log.

    With a checkpoint path the best network is saved there on every improvement, the last one next to it as
    '<stem>.final.rimc' and the running one every `checkpoint_every` steps as '<stem>.latest.rimc'.
    """
    for name, data in (('training', train_data), ('validation', val_data)):
        if data is not None:
            validation.validate(
                condition=data.frame_length == config.seq_len,
                error=f'The {name} data has frames of {data.frame_length} samples, the configuration expects '
                      f'{config.seq_len}.',
                context=name,
                exception=UsageError
            )
    validation.validate(condition=len(train_data) > 0, error='Training needs at least one frame.',
                        context=len(train_data), exception=UsageError)

    net = init_network(config.hidden_size, config.num_layers, config.seq_len, config.dropout_rate, config.seed)
    log = TrainLog()
    if config.epochs == 0:
        return net, log

    rng = numpy.random.default_rng([config.seed, 1])
    state = init_train_state(net.parameters(), config.learning_rate, config.clip_norm, rng)
    best_net, best_loss = net, math.inf

    for epoch in range(config.epochs):
        started = time.perf_counter()
        losses = []
        for batch, indices in enumerate(make_batches(len(train_data), config.batch_size, config.seed, epoch)):
            step = state.step + 1
            labels = train_data.labels[indices]
            outputs, trace = network_forward(net, train_data.inputs[indices], training=True, rng=rng)

            loss = batch_loss(outputs, labels)
            _abort_on_non_finite(loss, 'loss', epoch, batch, step)
            grads, _ = network_backward(net, trace, batch_loss_gradient(outputs, labels))
            grad_norm = global_norm(grads)
            _abort_on_non_finite(grad_norm, 'gradient norm', epoch, batch, step)

            params, state = adam_step(state, net.parameters(), clip_gradients(grads, config.clip_norm))
            state = replace(state, rng_state=rng.bit_generator.state)
            net = net.with_parameters(params)

            losses.append(loss)
            log.batches.append(BatchRecord(epoch=epoch, batch=batch, step=state.step, loss=loss, grad_norm=grad_norm))
            if checkpoint_path is not None and state.step % config.checkpoint_every == 0:
                save_network(net, periodic_checkpoint_path(checkpoint_path))

        train_loss = float(numpy.mean(losses))
        val_loss = validate(net, val_data) if val_data is not None else None
        _abort_on_non_finite(train_loss if val_loss is None else val_loss, 'epoch loss', epoch, len(losses) - 1,
                             state.step)
        log.epochs.append(EpochRecord(epoch=epoch, step=state.step, train_loss=train_loss, val_loss=val_loss,
                                      elapsed_s=time.perf_counter() - started))
        info(f'Epoch {epoch + 1}/{config.epochs}: train loss {train_loss:.6g}'
             + (f', validation loss {val_loss:.6g}' if val_loss is not None else '')
             + f' ({log.epochs[-1].elapsed_s:.1f} s)')

        selection_loss = train_loss if val_loss is None else val_loss
        if selection_loss < best_loss:
            best_net, best_loss = net, selection_loss
            if checkpoint_path is not None:
                save_network(best_net, checkpoint_path)

    if checkpoint_path is not None:
        log.checkpoints.extend([str(checkpoint_path), str(final_checkpoint_path(checkpoint_path))])
        save_network(net, final_checkpoint_path(checkpoint_path))

    return best_net, log
