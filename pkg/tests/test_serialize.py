import json

import numpy as np
import pytest

from loccgate import bell_channel, channels_equal, domino_three_round_protocol
from loccgate.serialize import (
    DimensionError,
    SchemaError,
    channel_from_dict,
    channel_to_dict,
    load_channel,
    load_protocol,
    matrix_from_json,
    matrix_to_json,
    protocol_from_dict,
    protocol_to_dict,
    save_channel,
    save_protocol,
)


def test_matrix_round_trip():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    assert np.array_equal(matrix_from_json(matrix_to_json(m)), m)


def test_matrix_rejects_malformed():
    with pytest.raises(SchemaError):
        matrix_from_json([])
    with pytest.raises(SchemaError):
        matrix_from_json([[[1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]])  # ragged
    with pytest.raises(SchemaError):
        matrix_from_json([[[1.0]]])  # not a pair
    with pytest.raises(SchemaError):
        matrix_from_json([[["x", 0.0]]])
    with pytest.raises(SchemaError):
        matrix_from_json([[[float("inf"), 0.0]]])
    with pytest.raises(SchemaError):
        matrix_from_json([[[float("nan"), 0.0]]])


def test_channel_round_trip_bit_compatible(tmp_path, bell):
    path = tmp_path / "bell.json"
    save_channel(bell, path)
    loaded = load_channel(path)
    assert loaded.name == bell.name
    assert loaded.input_dims == bell.input_dims
    assert loaded.output_dim == bell.output_dim
    for a, b in zip(loaded.kraus, bell.kraus):
        assert np.array_equal(a, b)
    # a second serialization is byte-identical
    save_channel(loaded, tmp_path / "bell2.json")
    assert (tmp_path / "bell.json").read_bytes() == (tmp_path / "bell2.json").read_bytes()


def test_channel_from_dict_rejections(bell):
    doc = channel_to_dict(bell)
    for key in ("name", "input_dims", "output_dim", "kraus"):
        broken = dict(doc)
        del broken[key]
        with pytest.raises(SchemaError):
            channel_from_dict(broken)
    bad_dims = dict(doc, input_dims=[2, 0])
    with pytest.raises(SchemaError):
        channel_from_dict(bad_dims)
    bad_shape = dict(doc, output_dim=5)
    with pytest.raises(DimensionError):
        channel_from_dict(bad_shape)
    with pytest.raises(SchemaError):
        channel_from_dict("not an object")


def test_load_channel_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_channel(path)
    with pytest.raises(SchemaError):
        load_channel(tmp_path / "missing.json")


def test_channel_json_rejects_nonfinite(tmp_path, bell):
    doc = channel_to_dict(bell)
    doc["kraus"][0][0][0] = [1.0, None]
    path = tmp_path / "nan.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(SchemaError):
        load_channel(path)


def test_protocol_round_trip(tmp_path):
    tree = domino_three_round_protocol(0.2, 0.4, 0.6)
    path = tmp_path / "proto.json"
    save_protocol(tree, path)
    loaded = load_protocol(path)
    assert loaded.parties == tree.parties
    assert loaded.initial_dims == tree.initial_dims
    from loccgate import protocol_to_channel

    ok, dist = channels_equal(protocol_to_channel(loaded), protocol_to_channel(tree), 1e-12)
    assert ok, dist


def test_protocol_round_trip_keeps_isometry(tmp_path):
    from loccgate import usd_oneway_protocol

    tree = usd_oneway_protocol(0.4, np.sqrt(1 - 0.16))
    doc = protocol_to_dict(tree)
    loaded = protocol_from_dict(doc)
    assert loaded.output_isometry is not None
    assert np.array_equal(loaded.output_isometry, tree.output_isometry)


def test_protocol_from_dict_rejections():
    tree = domino_three_round_protocol(0.2, 0.4, 0.6)
    doc = protocol_to_dict(tree)
    with pytest.raises(SchemaError):
        protocol_from_dict({})
    wrong_dims = dict(doc, initial_dims=[3])
    with pytest.raises(DimensionError):
        protocol_from_dict(wrong_dims)
    no_branches = dict(doc, root={"party": 0, "branches": []})
    with pytest.raises(SchemaError):
        protocol_from_dict(no_branches)
