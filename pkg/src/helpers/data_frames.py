import numpy
import pandas
from pandas import DataFrame

from src.helpers.errors import FormatError
from src.helpers.validation import validate

FLOAT_FORMAT = '%.17g'


def read_single_column(path: str, expected_length: int) -> numpy.ndarray:
    data_frame = pandas.read_csv(
        path, header=None, names=['value'], dtype=str, skip_blank_lines=False, keep_default_na=False
    )
    values = pandas.to_numeric(data_frame['value'].str.strip(), errors='coerce')

    bad_lines = values.index[values.isna()]
    validate(
        condition=len(bad_lines) == 0,
        error=f'Non-numeric value on line {bad_lines[0] + 1 if len(bad_lines) else 0}.',
        context=path,
        exception=FormatError
    )
    validate(
        condition=len(values) == expected_length,
        error=f'Expected {expected_length} samples, one per line, got {len(values)}.',
        context=path,
        exception=FormatError
    )
    return values.to_numpy(dtype=numpy.float64)


def write_single_column(path: str, values: numpy.ndarray) -> None:
    DataFrame({'value': values}).to_csv(path, header=False, index=False, float_format=FLOAT_FORMAT)


def write_columns(path: str, columns: dict[str, numpy.ndarray]) -> None:
    DataFrame(columns).to_csv(path, index=False, float_format=FLOAT_FORMAT)
