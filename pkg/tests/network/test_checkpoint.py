import json
import struct

import numpy
import pytest

from src.helpers.errors import CorruptFileError, VersionMismatchError, ShapeTableError
from src.network.checkpoint import save_network, load_network, network_to_bytes, network_from_bytes, \
    encode_checkpoint, checksum
from src.network.network import init_network


@pytest.fixture
def network():
    return init_network(hidden_size=4, num_layers=3, seq_len=416, dropout_rate=0.3, seed=8)


def _encoded_parts(data: bytes) -> tuple[bytes, bytes]:
    (manifest_length,) = struct.unpack_from('<Q', data, 8)
    return data[16:16 + manifest_length], data[16 + manifest_length + 8:-8]


def _decode(data: bytes) -> tuple[dict, bytes]:
    manifest_bytes, blob = _encoded_parts(data)
    return json.loads(manifest_bytes), blob


def test_roundtrip_is_exact(network, tmp_path):
    path = tmp_path / 'model.rimc'
    stored_checksum = save_network(network, path)
    loaded = load_network(path)

    assert stored_checksum == checksum(*_encoded_parts(path.read_bytes()))
    assert (loaded.hidden_size, loaded.num_layers, loaded.seq_len, loaded.dropout_rate) == (4, 3, 416, 0.3)
    assert [layer.has_residual for layer in loaded.layers] == [layer.has_residual for layer in network.layers]
    for name, value in network.parameters().items():
        numpy.testing.assert_array_equal(loaded.parameters()[name], value)
    assert network_to_bytes(loaded) == path.read_bytes()


def test_manifest_describes_the_architecture(network):
    manifest, blob = _decode(network_to_bytes(network))

    assert manifest['architecture_tag'] == 'bigru-resetafter-sum-res2-v1'
    assert manifest['merge_mode'] == 'sum'
    assert manifest['residual_layers'] == [1, 2]
    assert sum(entry['nbytes'] for entry in manifest['tensors']) == len(blob)


@pytest.mark.parametrize('cut', [3, 20, 200, 1])
def test_truncated_checkpoint_is_corrupt(network, cut):
    data = network_to_bytes(network)
    with pytest.raises(CorruptFileError):
        network_from_bytes(data[:-cut])


def test_flipped_blob_byte_is_detected(network):
    data = bytearray(network_to_bytes(network))
    data[-100] ^= 0x01

    with pytest.raises(CorruptFileError) as error:
        network_from_bytes(bytes(data))
    assert 'byte offset' in str(error.value)
    assert error.value.exit_code == 2


def test_architecture_tag_mismatch_is_a_version_error(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['architecture_tag'] = 'bigru-concat-v0'

    with pytest.raises(VersionMismatchError):
        network_from_bytes(encode_checkpoint(manifest, blob))


def test_unknown_format_version_is_a_version_error(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['format_version'] = 2

    with pytest.raises(VersionMismatchError):
        network_from_bytes(encode_checkpoint(manifest, blob))


def test_inconsistent_tensor_shape_is_rejected(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['tensors'][0]['shape'] = [1, 4]

    with pytest.raises(ShapeTableError):
        network_from_bytes(encode_checkpoint(manifest, blob))


def test_overlapping_tensors_are_rejected(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['tensors'][1]['offset'] = manifest['tensors'][0]['offset']

    with pytest.raises(ShapeTableError):
        network_from_bytes(encode_checkpoint(manifest, blob))


def test_missing_tensor_is_rejected(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['tensors'].pop()

    with pytest.raises(ShapeTableError):
        network_from_bytes(encode_checkpoint(manifest, blob))


@pytest.mark.parametrize('field', ['seq_len', 'dropout_rate', 'hidden_size'])
def test_missing_architecture_field_is_a_format_error(network, field):
    manifest, blob = _decode(network_to_bytes(network))
    del manifest[field]

    with pytest.raises(ShapeTableError) as error:
        network_from_bytes(encode_checkpoint(manifest, blob))
    assert error.value.exit_code == 2


def test_non_numeric_dropout_rate_is_a_format_error(network):
    manifest, blob = _decode(network_to_bytes(network))
    manifest['dropout_rate'] = 'high'

    with pytest.raises(ShapeTableError):
        network_from_bytes(encode_checkpoint(manifest, blob))
