import math
from typing import Optional

import numpy
from numpy.random import Generator

from src.config.config import adam_defaults, training_defaults
from src.helpers.errors import ShapeMismatchError
from src.helpers.validation import validate
from src.network.types import TrainState


def global_norm(grads: dict[str, numpy.ndarray]) -> float:
    return math.sqrt(sum(float(numpy.sum(value ** 2)) for value in grads.values()))


def clip_gradients(grads: dict[str, numpy.ndarray], clip_norm: float) -> dict[str, numpy.ndarray]:
    validate(condition=clip_norm > 0, error='clip_norm has to be positive.', context=clip_norm)

    norm = global_norm(grads)
    if norm <= clip_norm:
        return grads

    scale = clip_norm / norm
    return {name: value * scale for name, value in grads.items()}


def init_train_state(
        params: dict[str, numpy.ndarray],
        learning_rate: float = training_defaults['learning_rate'],
        clip_norm: float = training_defaults['clip_norm'],
        rng: Optional[Generator] = None,
        beta1: float = adam_defaults['beta1'],
        beta2: float = adam_defaults['beta2'],
        epsilon: float = adam_defaults['epsilon'],
) -> TrainState:
    return TrainState(
        first_moment={name: numpy.zeros_like(value) for name, value in params.items()},
        second_moment={name: numpy.zeros_like(value) for name, value in params.items()},
        step=0,
        learning_rate=learning_rate,
        beta1=beta1,
        beta2=beta2,
        epsilon=epsilon,
        clip_norm=clip_norm,
        rng_state=rng.bit_generator.state if rng is not None else {},
    )


def adam_step(
        state: TrainState, params: dict[str, numpy.ndarray], grads: dict[str, numpy.ndarray]
) -> tuple[dict[str, numpy.ndarray], TrainState]:
    validate(
        condition=params.keys() == grads.keys() == state.first_moment.keys()
                  and all(params[name].shape == grads[name].shape == state.first_moment[name].shape
                          for name in params),
        error='Parameters, gradients and optimizer moments have to match.',
        context=list(params.keys()),
        exception=ShapeMismatchError
    )

    step = state.step + 1
    first_correction = 1 - state.beta1 ** step
    second_correction = 1 - state.beta2 ** step

    updated, first_moment, second_moment = {}, {}, {}
    for name, value in params.items():
        grad = grads[name]
        first_moment[name] = state.beta1 * state.first_moment[name] + (1 - state.beta1) * grad
        second_moment[name] = state.beta2 * state.second_moment[name] + (1 - state.beta2) * grad ** 2
        updated[name] = value - state.learning_rate * (first_moment[name] / first_correction) / (
            numpy.sqrt(second_moment[name] / second_correction) + state.epsilon
        )

    new_state = TrainState(
        first_moment=first_moment,
        second_moment=second_moment,
        step=step,
        learning_rate=state.learning_rate,
        beta1=state.beta1,
        beta2=state.beta2,
        epsilon=state.epsilon,
        clip_norm=state.clip_norm,
        rng_state=state.rng_state,
    )
    return updated, new_state
