"""Checkpoints are directories holding ``manifest.json`` and ``params.bin``.

The blob concatenates every parameter as little-endian float64 values;
manifest offsets and counts are in values, not bytes.
"""

import logging
from os import PathLike
from pathlib import Path

import numpy as np
import orjson
import torch
from pydantic import BaseModel, ValidationError

from motionloom.exceptions import LoadError
from motionloom.model import Forecaster, ModelSettings
from motionloom.settings.utils import dump_settings

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
BLOB_NAME = "params.bin"
BLOB_DTYPE = np.dtype("<f8")


class ParameterEntry(BaseModel):
    name: str
    shape: list[int]
    offset: int
    count: int


class CheckpointManifest(BaseModel):
    config: ModelSettings
    pose_dim: int
    seed: int
    epoch: int
    parameters: list[ParameterEntry]


def save_checkpoint(
    forecaster: Forecaster, path: str | PathLike[str], epoch: int = 0
) -> Path:
    target = Path(path)
    target.mkdir(parents=True, exist_ok=True)
    entries: list[ParameterEntry] = []
    chunks: list[bytes] = []
    offset = 0
    for name, param in forecaster.named_parameters():
        values = param.detach().cpu().numpy().astype(BLOB_DTYPE).ravel()
        entries.append(
            ParameterEntry(
                name=name,
                shape=list(param.shape),
                offset=offset,
                count=values.size,
            )
        )
        chunks.append(values.tobytes())
        offset += values.size
    manifest = {
        "config": orjson.loads(dump_settings(forecaster.settings)),
        "pose_dim": forecaster.pose_dim,
        "seed": forecaster.seed,
        "epoch": epoch,
        "parameters": [entry.model_dump() for entry in entries],
    }
    (target / MANIFEST_NAME).write_bytes(
        orjson.dumps(manifest, option=orjson.OPT_INDENT_2)
    )
    (target / BLOB_NAME).write_bytes(b"".join(chunks))
    logger.info("saved %d parameter tensors to %s", len(entries), target)
    return target


def _read_manifest(directory: Path) -> CheckpointManifest:
    try:
        return CheckpointManifest.model_validate_json(
            (directory / MANIFEST_NAME).read_bytes()
        )
    except FileNotFoundError as exc:
        raise LoadError(MANIFEST_NAME, "file not found") from exc
    except ValidationError as exc:
        raise LoadError(MANIFEST_NAME, str(exc.errors()[0]["msg"])) from exc


def load_checkpoint(path: str | PathLike[str]) -> tuple[Forecaster, CheckpointManifest]:
    directory = Path(path)
    manifest = _read_manifest(directory)
    forecaster = Forecaster(manifest.pose_dim, manifest.config, manifest.seed)
    expected = dict(forecaster.named_parameters())
    entries = {entry.name: entry for entry in manifest.parameters}

    for entry in manifest.parameters:
        if entry.name not in expected:
            raise LoadError(entry.name, "unexpected parameter")
    for name, param in expected.items():
        if name not in entries:
            raise LoadError(name, "missing from manifest")
        if tuple(entries[name].shape) != tuple(param.shape):
            raise LoadError(
                name,
                f"shape {tuple(entries[name].shape)} does not match "
                f"configured {tuple(param.shape)}",
            )
    if len(entries) != len(manifest.parameters):
        raise LoadError(MANIFEST_NAME, "a parameter is listed twice")

    try:
        blob = np.frombuffer((directory / BLOB_NAME).read_bytes(), BLOB_DTYPE)
    except FileNotFoundError as exc:
        raise LoadError(BLOB_NAME, "file not found") from exc
    except ValueError as exc:
        raise LoadError(BLOB_NAME, "size is not a multiple of 8 bytes") from exc

    offset = 0
    for entry in sorted(manifest.parameters, key=lambda e: e.offset):
        if entry.offset != offset:
            raise LoadError(
                entry.name, f"offset {entry.offset} is not contiguous ({offset})"
            )
        if entry.count != int(np.prod(entry.shape, dtype=np.int64)):
            raise LoadError(entry.name, f"count {entry.count} does not fit shape")
        if offset + entry.count > blob.size:
            raise LoadError(entry.name, "blob is truncated")
        values = blob[offset : offset + entry.count].reshape(entry.shape)
        with torch.no_grad():
            expected[entry.name].copy_(torch.from_numpy(values.copy()))
        offset += entry.count
    if offset != blob.size:
        raise LoadError(
            manifest.parameters[-1].name if manifest.parameters else BLOB_NAME,
            f"{blob.size - offset} trailing values after the last parameter",
        )
    forecaster.eval()
    logger.info("loaded checkpoint %s (epoch %d)", directory, manifest.epoch)
    return forecaster, manifest
