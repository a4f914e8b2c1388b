"""Sequence files: one ASCII header line followed by N*K little-endian
float64 values, frame-major.

    HRISEQ1 K=<int> fps=<float> repr=<coords3d|expmap> N=<int>\\n
"""

import logging
from os import PathLike
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from motionloom.data.schemas import SEQUENCE_MAGIC, SequenceFileHeader
from motionloom.exceptions import ParseError
from motionloom.model.schemas import PoseRepr, PoseSequence

logger = logging.getLogger(__name__)

HEADER_FIELDS = ("K", "fps", "repr", "N")
VALUE_DTYPE = np.dtype("<f8")


def _parse_header(line: bytes) -> SequenceFileHeader:
    try:
        text = line.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(exc.start, "header is not ASCII") from exc
    tokens = text.split(" ")
    if tokens[0] != SEQUENCE_MAGIC:
        raise ParseError(0, f"bad magic {tokens[0]!r}")
    if len(tokens) != len(HEADER_FIELDS) + 1:
        raise ParseError(
            len(tokens[0]) + 1,
            f"expected fields {' '.join(HEADER_FIELDS)}, "
            f"got {len(tokens) - 1} fields",
        )

    fields: dict[str, str] = {}
    offset = len(tokens[0]) + 1
    for token, expected in zip(tokens[1:], HEADER_FIELDS, strict=True):
        key, sep, value = token.partition("=")
        if not sep or key != expected:
            raise ParseError(offset, f"expected {expected}=..., got {token!r}")
        try:
            SequenceFileHeader.model_validate(
                {"K": 1, "fps": 1.0, "repr": PoseRepr.COORDS3D, "N": 1}
                | {key: value}
            )
        except ValidationError as exc:
            raise ParseError(
                offset + len(key) + 1,
                f"invalid {key}={value!r}: {exc.errors()[0]['msg']}",
            ) from exc
        fields[key] = value
        offset += len(token) + 1
    return SequenceFileHeader.model_validate(fields)


def load_sequence(path: str | PathLike[str]) -> PoseSequence:
    raw = Path(path).read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        raise ParseError(len(raw), "missing header line terminator")
    header = _parse_header(raw[:newline])

    start = newline + 1
    body = raw[start:]
    expected = header.N * header.K
    actual, remainder = divmod(len(body), VALUE_DTYPE.itemsize)
    if actual != expected or remainder:
        at = start + min(len(body), expected * VALUE_DTYPE.itemsize)
        raise ParseError(
            at,
            f"expected {expected} values, found {actual}"
            + (f" and {remainder} stray bytes" if remainder else ""),
        )

    values = np.frombuffer(body, dtype=VALUE_DTYPE)
    non_finite = np.flatnonzero(~np.isfinite(values))
    if non_finite.size:
        index = int(non_finite[0])
        raise ParseError(
            start + index * VALUE_DTYPE.itemsize,
            f"non-finite value at frame {index // header.K}, "
            f"coordinate {index % header.K}",
        )
    joints = (
        header.K // 3
        if header.repr == PoseRepr.COORDS3D and header.K % 3 == 0
        else None
    )
    logger.debug("loaded %s: %d frames x %d", path, header.N, header.K)
    return PoseSequence(
        frames=values.reshape(header.N, header.K).astype(np.float64),
        fps=header.fps,
        repr=header.repr,
        joints=joints,
    )


def save_sequence(seq: PoseSequence, path: str | PathLike[str]) -> Path:
    target = Path(path)
    header = SequenceFileHeader(
        K=seq.pose_dim, fps=seq.fps, repr=seq.repr, N=len(seq)
    )
    target.write_bytes(
        header.encode() + np.ascontiguousarray(seq.frames, VALUE_DTYPE).tobytes()
    )
    logger.debug("saved %s: %d frames x %d", target, len(seq), seq.pose_dim)
    return target
