import json
import math
import re
from pathlib import Path
from typing import Union, Any

import numpy

from src.helpers.data_frames import write_columns
from src.spectral.types import EvalReport, RangeSpectrum

_FLOAT_MARKER = '__float17__'
_QUOTED_FLOAT = re.compile(f'"{_FLOAT_MARKER}([^"]*)"')


def _format_float(value: float) -> str:
    text = f'{value:.17g}'
    return text if any(char in text for char in '.e') else f'{text}.0'


def _mark_floats(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _mark_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_mark_floats(item) for item in value]
    if isinstance(value, (float, numpy.floating)):
        # JSON has no representation for non-finite numbers.
        return f'{_FLOAT_MARKER}{_format_float(float(value))}' if math.isfinite(value) else None
    if isinstance(value, numpy.integer):
        return int(value)
    return value


def to_stable_json(value: Any, indent: Union[int, None] = 2) -> str:
    """Serializes with sorted keys and every float written with 17 significant digits, so equal data gives equal
    bytes."""
    text = json.dumps(_mark_floats(value), sort_keys=True, indent=indent,
                      separators=(',', ': ') if indent is not None else (',', ':'))
    return _QUOTED_FLOAT.sub(r'\1', text)


def report_to_json(report: EvalReport) -> str:
    return to_stable_json(report.dict()) + '\n'


def write_report(path: Union[str, Path], report: EvalReport) -> None:
    Path(path).write_text(report_to_json(report), encoding='utf-8')
    print(f'\nReport saved as {path}. It compares {len(report.aggregate)} method(s) over '
          f'{report.scenario_count} frame(s).')


def write_json_lines(path: Union[str, Path], records: list[dict]) -> None:
    with open(path, 'w', encoding='utf-8') as file:
        for record in records:
            file.write(to_stable_json(record, indent=None) + '\n')


def spectra_columns(spectra: dict[str, RangeSpectrum]) -> dict[str, numpy.ndarray]:
    reference = next(iter(spectra.values()))
    columns = {'bin_hz': reference.bin_frequencies_hz, 'range_m': reference.ranges_m}
    for name, spectrum in spectra.items():
        columns[f'power_db_{name}'] = spectrum.bins
    return columns


def write_spectra(path: Union[str, Path], spectra: dict[str, RangeSpectrum]) -> None:
    write_columns(str(path), spectra_columns(spectra))


class SpectraDirectoryWriter:
    """Spectra sink writing one CSV per frame into a directory."""

    def __init__(self, directory: Union[str, Path]):
        self.__directory = Path(directory)
        self.__directory.mkdir(parents=True, exist_ok=True)

    def __call__(self, frame_index: int, spectra: dict[str, RangeSpectrum]) -> None:
        write_spectra(self.__directory / f'frame_{frame_index:06d}.csv', spectra)
