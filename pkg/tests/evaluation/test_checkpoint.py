from pathlib import Path

import numpy as np
import orjson
import pytest
import torch

from motionloom.evaluation import load_checkpoint, save_checkpoint
from motionloom.exceptions import LoadError
from motionloom.model import Forecaster, PoseSequence


@pytest.fixture
def saved(tiny_forecaster: Forecaster, tmp_path: Path) -> Path:
    return save_checkpoint(tiny_forecaster, tmp_path / "ckpt", epoch=3)


def _edit_manifest(path: Path, edit) -> None:
    manifest_path = path / "manifest.json"
    manifest = orjson.loads(manifest_path.read_bytes())
    edit(manifest)
    manifest_path.write_bytes(orjson.dumps(manifest))


def test_round_trip_restores_parameters(
    tiny_forecaster: Forecaster, saved: Path, periodic_frames: np.ndarray
) -> None:
    loaded, manifest = load_checkpoint(saved)
    assert manifest.epoch == 3
    assert manifest.seed == 7
    assert loaded.settings == tiny_forecaster.settings
    for (name, a), (_, b) in zip(
        tiny_forecaster.named_parameters(), loaded.named_parameters(), strict=True
    ):
        assert torch.equal(a, b), name

    history = PoseSequence(frames=periodic_frames[:24], fps=25.0)
    np.testing.assert_array_equal(
        loaded.predict_recursive(history, 2).frames,
        tiny_forecaster.predict_recursive(history, 2).frames,
    )


def test_trained_values_survive(tiny_forecaster: Forecaster, tmp_path: Path) -> None:
    with torch.no_grad():
        for param in tiny_forecaster.parameters():
            param.add_(0.125)
    loaded, _ = load_checkpoint(save_checkpoint(tiny_forecaster, tmp_path / "c"))
    for a, b in zip(tiny_forecaster.parameters(), loaded.parameters(), strict=True):
        assert torch.equal(a, b)


def test_manifest_offsets_are_contiguous(saved: Path) -> None:
    manifest = orjson.loads((saved / "manifest.json").read_bytes())
    entries = manifest["parameters"]
    assert entries[0]["offset"] == 0
    for previous, entry in zip(entries, entries[1:]):
        assert entry["offset"] == previous["offset"] + previous["count"]
    total = entries[-1]["offset"] + entries[-1]["count"]
    assert (saved / "params.bin").stat().st_size == 8 * total
    assert "RETAIN" not in manifest["config"]


def test_wrong_shape_is_rejected(saved: Path) -> None:
    def edit(manifest: dict) -> None:
        manifest["parameters"][0]["shape"][0] += 1

    _edit_manifest(saved, edit)
    with pytest.raises(LoadError, match="does not match configured"):
        load_checkpoint(saved)


def test_missing_parameter_is_rejected(saved: Path) -> None:
    _edit_manifest(saved, lambda manifest: manifest["parameters"].pop())
    with pytest.raises(LoadError, match="missing from manifest"):
        load_checkpoint(saved)


def test_unknown_parameter_is_rejected(saved: Path) -> None:
    def edit(manifest: dict) -> None:
        manifest["parameters"][0]["name"] = "decoder.weight"

    _edit_manifest(saved, edit)
    with pytest.raises(LoadError, match="decoder.weight: unexpected"):
        load_checkpoint(saved)


def test_gap_in_offsets_is_rejected(saved: Path) -> None:
    def edit(manifest: dict) -> None:
        manifest["parameters"][1]["offset"] += 1

    _edit_manifest(saved, edit)
    with pytest.raises(LoadError, match="not contiguous"):
        load_checkpoint(saved)


def test_trailing_values_are_rejected(saved: Path) -> None:
    blob = saved / "params.bin"
    blob.write_bytes(blob.read_bytes() + np.zeros(2, "<f8").tobytes())
    with pytest.raises(LoadError, match="2 trailing values"):
        load_checkpoint(saved)


def test_truncated_blob_is_rejected(saved: Path) -> None:
    blob = saved / "params.bin"
    blob.write_bytes(blob.read_bytes()[:-8])
    with pytest.raises(LoadError, match="truncated"):
        load_checkpoint(saved)


def test_partial_value_is_rejected(saved: Path) -> None:
    blob = saved / "params.bin"
    blob.write_bytes(blob.read_bytes() + b"\x00\x01")
    with pytest.raises(LoadError, match="multiple of 8"):
        load_checkpoint(saved)


def test_missing_files(saved: Path, tmp_path: Path) -> None:
    with pytest.raises(LoadError, match="manifest.json: file not found"):
        load_checkpoint(tmp_path / "nowhere")
    (saved / "params.bin").unlink()
    with pytest.raises(LoadError, match="params.bin: file not found"):
        load_checkpoint(saved)
