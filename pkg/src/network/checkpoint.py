"""RIMC checkpoint format.

    magic 'RIMC' | format version u32 | manifest length u64 | JSON manifest | blob length u64 | blob | checksum u64

All integers are little-endian. The blob holds every tensor as contiguous little-endian float64 values at the offsets
listed in the manifest tensor table. The checksum is a 64-bit BLAKE2b digest over the manifest and the blob.
"""
import hashlib
import json
import struct
from pathlib import Path
from typing import Union

import numpy

from src.config.config import ARCHITECTURE_TAG, MERGE_MODE
from src.helpers.errors import CorruptFileError, VersionMismatchError, ShapeTableError
from src.helpers.validation import validate
from src.network.types import GruNetwork, GruLayer, GruCellParams, parameter_shapes, DIRECTIONS, \
    GATE_PARAMETER_NAMES

MAGIC = b'RIMC'
FORMAT_VERSION = 1

_PREFIX = struct.Struct('<4sIQ')
_LENGTH = struct.Struct('<Q')


def checksum(*parts: bytes) -> int:
    digest = hashlib.blake2b(digest_size=8)
    for part in parts:
        digest.update(part)
    return int.from_bytes(digest.digest(), 'little')


def encode_checkpoint(manifest: dict, blob: bytes) -> bytes:
    manifest_bytes = json.dumps(manifest, sort_keys=True, separators=(',', ':')).encode('utf-8')
    return b''.join([
        _PREFIX.pack(MAGIC, manifest['format_version'], len(manifest_bytes)),
        manifest_bytes,
        _LENGTH.pack(len(blob)),
        blob,
        _LENGTH.pack(checksum(manifest_bytes, blob)),
    ])


def network_to_bytes(net: GruNetwork) -> bytes:
    tensors, chunks, offset = [], [], 0
    for name, value in net.parameters().items():
        data = numpy.ascontiguousarray(value, dtype='<f8').tobytes()
        tensors.append({'name': name, 'shape': list(value.shape), 'offset': offset, 'nbytes': len(data)})
        chunks.append(data)
        offset += len(data)

    manifest = {
        'format_version': FORMAT_VERSION,
        'architecture_tag': net.architecture_tag,
        'hidden_size': net.hidden_size,
        'num_layers': net.num_layers,
        'seq_len': net.seq_len,
        'merge_mode': net.merge_mode,
        'dropout_rate': net.dropout_rate,
        'residual_layers': [index for index, layer in enumerate(net.layers) if layer.has_residual],
        'tensors': tensors,
    }
    return encode_checkpoint(manifest, b''.join(chunks))


def _split(data: bytes) -> tuple[bytes, bytes]:
    if len(data) < _PREFIX.size:
        raise CorruptFileError('Checkpoint is truncated', len(data))
    magic, version, manifest_length = _PREFIX.unpack_from(data, 0)
    if magic != MAGIC:
        raise CorruptFileError('Not a RIMC checkpoint', 0)

    manifest_end = _PREFIX.size + manifest_length
    if manifest_end + _LENGTH.size > len(data):
        raise CorruptFileError('Checkpoint manifest is truncated', len(data))
    manifest_bytes = data[_PREFIX.size:manifest_end]

    (blob_length,) = _LENGTH.unpack_from(data, manifest_end)
    blob_start = manifest_end + _LENGTH.size
    blob_end = blob_start + blob_length
    if blob_end + _LENGTH.size != len(data):
        raise CorruptFileError('Checkpoint blob length does not match the file size', manifest_end)
    blob = data[blob_start:blob_end]

    (stored_checksum,) = _LENGTH.unpack_from(data, blob_end)
    if stored_checksum != checksum(manifest_bytes, blob):
        raise CorruptFileError('Checkpoint checksum does not verify', blob_end)

    if version != FORMAT_VERSION:
        raise VersionMismatchError(f'Unsupported RIMC format version {version} (at byte offset 4).')

    return manifest_bytes, blob


def _parse_manifest(manifest_bytes: bytes) -> dict:
    try:
        manifest = json.loads(manifest_bytes.decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as error:
        raise CorruptFileError(f'Checkpoint manifest is not valid JSON: {error}', _PREFIX.size)

    validate(
        condition=isinstance(manifest, dict) and manifest.get('architecture_tag') == ARCHITECTURE_TAG
                  and manifest.get('merge_mode') == MERGE_MODE,
        error=f"Checkpoint architecture is not '{ARCHITECTURE_TAG}' with '{MERGE_MODE}' merge.",
        context={key: manifest.get(key) for key in ('architecture_tag', 'merge_mode')}
        if isinstance(manifest, dict) else manifest,
        exception=VersionMismatchError
    )
    return manifest


def _read_architecture(manifest: dict) -> dict:
    try:
        return dict(
            hidden_size=int(manifest['hidden_size']),
            num_layers=int(manifest['num_layers']),
            seq_len=int(manifest['seq_len']),
            dropout_rate=float(manifest['dropout_rate']),
            table={entry['name']: entry for entry in manifest['tensors']},
        )
    except (KeyError, TypeError, ValueError) as error:
        raise ShapeTableError(f'Checkpoint manifest misses architecture fields: {error}')


def _read_tensors(manifest: dict, architecture: dict, blob: bytes) -> dict[str, numpy.ndarray]:
    hidden_size, num_layers, table = architecture['hidden_size'], architecture['num_layers'], architecture['table']

    expected = {}
    for index in range(num_layers):
        input_size = 1 if index == 0 else hidden_size
        for direction in DIRECTIONS:
            for name, shape in parameter_shapes(input_size, hidden_size).items():
                expected[f'layers.{index}.{direction}.{name}'] = shape

    validate(
        condition=set(table) == set(expected) and len(table) == len(manifest['tensors']),
        error='Checkpoint tensor table does not match the declared architecture.',
        context=sorted(set(table) ^ set(expected)),
        exception=ShapeTableError
    )

    tensors, regions = {}, []
    for name, shape in expected.items():
        entry = table[name]
        offset, nbytes = entry.get('offset'), entry.get('nbytes')
        validate(
            condition=tuple(entry.get('shape', ())) == shape and isinstance(offset, int) and isinstance(nbytes, int)
                      and nbytes == 8 * int(numpy.prod(shape)) and 0 <= offset and offset + nbytes <= len(blob),
            error=f"Checkpoint tensor '{name}' has an inconsistent shape or an out of bounds region.",
            context=entry,
            exception=ShapeTableError
        )
        regions.append((offset, offset + nbytes))
        tensors[name] = numpy.frombuffer(blob, dtype='<f8', count=nbytes // 8, offset=offset).reshape(shape).copy()

    regions.sort()
    validate(
        condition=all(end <= start for (_, end), (start, _) in zip(regions, regions[1:])),
        error='Checkpoint tensor regions overlap.',
        context=regions,
        exception=ShapeTableError
    )
    return tensors


def network_from_bytes(data: bytes) -> GruNetwork:
    manifest_bytes, blob = _split(data)
    manifest = _parse_manifest(manifest_bytes)
    architecture = _read_architecture(manifest)
    tensors = _read_tensors(manifest, architecture, blob)

    layers = []
    for index in range(architecture['num_layers']):
        cells = {
            direction: GruCellParams(**{
                name: tensors[f'layers.{index}.{direction}.{name}'] for name in GATE_PARAMETER_NAMES
            })
            for direction in DIRECTIONS
        }
        layers.append(GruLayer(forward=cells['forward'], backward=cells['backward'], has_residual=index > 0))

    validate(
        condition=manifest.get('residual_layers') == [index for index, layer in enumerate(layers) if layer.has_residual],
        error='Checkpoint residual layout does not match the architecture.',
        context=manifest.get('residual_layers'),
        exception=VersionMismatchError
    )
    return GruNetwork(
        layers=layers,
        hidden_size=architecture['hidden_size'],
        seq_len=architecture['seq_len'],
        dropout_rate=architecture['dropout_rate'],
        architecture_tag=manifest['architecture_tag'],
        merge_mode=manifest['merge_mode'],
    )


def save_network(net: GruNetwork, path: Union[str, Path]) -> int:
    """Writes the checkpoint and returns its checksum."""
    data = network_to_bytes(net)
    Path(path).write_bytes(data)
    return _LENGTH.unpack_from(data, len(data) - _LENGTH.size)[0]


def load_network(path: Union[str, Path]) -> GruNetwork:
    return network_from_bytes(Path(path).read_bytes())
