"""RIMD dataset format.

    header  : magic 'RIMD' | version u32 | frame count u32 | frame length u32 | sample rate f64 | base seed u64
    payload : for every frame, the input then the label, little-endian float64
    trailer : one JSON line per frame with the frame provenance

Every metadata record carries a digest of its frame's payload bytes and a digest of its own canonical JSON, so a
damaged payload or record is rejected instead of silently read.
"""
import hashlib
import json
import struct
from pathlib import Path
from typing import Union, BinaryIO, Optional

import numpy
from pydantic import ValidationError

from src.config.config import FRAME_LENGTH
from src.helpers.errors import CorruptFileError, VersionMismatchError
from src.helpers.validation import validate
from src.radar.dataset import FrameRecord, FrameDataset
from src.radar.types import BeatFrame

MAGIC = b'RIMD'
FORMAT_VERSION = 1

HEADER = struct.Struct('<4sIIIdQ')


def _digest(data: bytes) -> str:
    return hashlib.blake2b(data, digest_size=8).hexdigest()


def _canonical(record: dict) -> bytes:
    return json.dumps(record, sort_keys=True, separators=(',', ':')).encode('utf-8')


def _frame_bytes(model_input: numpy.ndarray, label: numpy.ndarray) -> bytes:
    return numpy.ascontiguousarray(model_input, dtype='<f8').tobytes() \
        + numpy.ascontiguousarray(label, dtype='<f8').tobytes()


class RimdWriter:
    """Streams frames to disk. The frame count is part of the header, so it has to be known up front."""

    def __init__(self, path: Union[str, Path], count: int, sample_rate_hz: float, base_seed: int,
                 frame_length: int = FRAME_LENGTH):
        self.__path = Path(path)
        self.__count = count
        self.__frame_length = frame_length
        self.__header = HEADER.pack(MAGIC, FORMAT_VERSION, count, frame_length, sample_rate_hz, base_seed)
        self.__metadata: list[bytes] = []
        self.__file: Optional[BinaryIO] = None

    def __enter__(self) -> 'RimdWriter':
        self.__file = open(self.__path, 'wb')
        self.__file.write(self.__header)
        return self

    def __call__(self, frame: BeatFrame, record: FrameRecord) -> None:
        validate(
            condition=frame.input.shape == frame.label.shape == (self.__frame_length,),
            error=f'Frames have to have {self.__frame_length} samples.',
            context=frame.input.shape
        )
        payload = _frame_bytes(frame.input, frame.label)
        self.__file.write(payload)

        metadata = json.loads(record.json())
        metadata['frame_digest'] = _digest(payload)
        metadata['record_digest'] = _digest(_canonical(metadata))
        self.__metadata.append(_canonical(metadata))

    def __exit__(self, exc_type, exc_value, traceback) -> None:
        try:
            if exc_type is None:
                validate(
                    condition=len(self.__metadata) == self.__count,
                    error=f'The header announces {self.__count} frames, {len(self.__metadata)} were written.',
                    context=self.__path
                )
                for line in self.__metadata:
                    self.__file.write(line + b'\n')
        finally:
            self.__file.close()


def write_rimd(path: Union[str, Path], dataset: FrameDataset) -> None:
    with RimdWriter(path, len(dataset), dataset.sample_rate_hz, dataset.base_seed, dataset.frame_length) as writer:
        for index, record in enumerate(dataset.records):
            writer(BeatFrame(
                input=dataset.inputs[index], label=dataset.labels[index], valid_len=record.valid_len,
                chirp_index=record.chirp_index, scene_ref=record.scene.scene_id,
            ), record)


def _parse_record(line: bytes, offset: int) -> dict:
    try:
        metadata = json.loads(line.decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as error:
        raise CorruptFileError(f'Metadata record is not valid JSON: {error}', offset)
    if not isinstance(metadata, dict) or 'record_digest' not in metadata or 'frame_digest' not in metadata:
        raise CorruptFileError('Metadata record misses its digests', offset)

    stored = metadata.pop('record_digest')
    if stored != _digest(_canonical(metadata)):
        raise CorruptFileError('Metadata record digest does not verify', offset)
    return metadata


def read_rimd(path: Union[str, Path]) -> FrameDataset:
    data = Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise CorruptFileError('RIMD header is truncated', len(data))

    magic, version, count, frame_length, sample_rate_hz, base_seed = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CorruptFileError('Not a RIMD dataset', 0)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f'Unsupported RIMD format version {version} (at byte offset 4).')
    if count == 0 or frame_length == 0:
        raise CorruptFileError('RIMD header announces an empty dataset', 8)

    frame_bytes = 2 * frame_length * 8
    metadata_start = HEADER.size + count * frame_bytes
    if len(data) < metadata_start:
        raise CorruptFileError(f'RIMD payload is truncated, expected {count} frames of {frame_length}', len(data))
    payload = numpy.frombuffer(data, dtype='<f8', count=2 * count * frame_length, offset=HEADER.size) \
        .reshape(count, 2, frame_length)

    metadata = data[metadata_start:]
    if not metadata.endswith(b'\n'):
        raise CorruptFileError('RIMD metadata is truncated', len(data))

    records, offset = [], metadata_start
    for index, line in enumerate(metadata[:-1].split(b'\n')):
        if index >= count:
            raise CorruptFileError(f'RIMD metadata has more than {count} records', offset)
        fields = _parse_record(line, offset)

        frame_start = HEADER.size + index * frame_bytes
        if fields.pop('frame_digest') != _digest(data[frame_start:frame_start + frame_bytes]):
            raise CorruptFileError(f'Payload of frame {index} does not match its digest', frame_start)
        try:
            record = FrameRecord.parse_obj(fields)
        except ValidationError as error:
            raise CorruptFileError(f'Metadata record {index} is invalid: {error}', offset)
        if record.index != index or record.base_seed != base_seed \
                or record.scene.victim.sample_rate_hz != sample_rate_hz:
            raise CorruptFileError(f'Metadata record {index} does not match the RIMD header', offset)

        records.append(record)
        offset += len(line) + 1

    if len(records) != count:
        raise CorruptFileError(f'RIMD metadata has {len(records)} records, the header announces {count}', offset)

    return FrameDataset(
        inputs=payload[:, 0].copy(),
        labels=payload[:, 1].copy(),
        records=records,
        sample_rate_hz=sample_rate_hz,
        base_seed=base_seed,
        frame_length=frame_length,
    )
