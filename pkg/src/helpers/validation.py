import math
from typing import Any, Type

import numpy


def validate(condition: bool, error: str, context: Any, exception: Type[Exception] = ValueError) -> None:
    if not condition:
        raise exception(f'{error}\ncontext:\n{str(context)}')


def is_finite(value: Any) -> bool:
    if isinstance(value, numpy.ndarray):
        return bool(numpy.isfinite(value).all())
    return math.isfinite(value)


def validate_finite(value: Any, name: str) -> None:
    validate(
        condition=is_finite(value),
        error=f"'{name}' has to contain finite values only.",
        context=value
    )
