from pathlib import Path

import numpy as np
import pytest

from motionloom.data import SequenceFileHeader, load_sequence, save_sequence
from motionloom.exceptions import ParseError
from motionloom.model import PoseRepr, PoseSequence


def _header(**fields) -> bytes:
    defaults = {"K": 3, "fps": 25.0, "repr": PoseRepr.COORDS3D, "N": 2}
    return SequenceFileHeader(**(defaults | fields)).encode()


def _write(path: Path, header: bytes, values: list[float]) -> Path:
    path.write_bytes(header + np.asarray(values, dtype="<f8").tobytes())
    return path


def test_round_trip_is_bitwise(tmp_path: Path, rng: np.random.Generator) -> None:
    seq = PoseSequence(
        frames=rng.normal(scale=300.0, size=(17, 9)),
        fps=50.0,
        repr=PoseRepr.EXPMAP,
    )
    loaded = load_sequence(save_sequence(seq, tmp_path / "walk.seq"))
    assert loaded.frames.tobytes() == seq.frames.tobytes()
    assert loaded.fps == 50.0
    assert loaded.repr is PoseRepr.EXPMAP
    assert loaded.joints is None


def test_coordinate_files_recover_joint_count(tmp_path: Path) -> None:
    path = _write(tmp_path / "a.seq", _header(), [0.0] * 6)
    assert load_sequence(path).joints == 1


def test_header_format() -> None:
    assert _header(fps=12.5, N=7) == b"HRISEQ1 K=3 fps=12.5 repr=coords3d N=7\n"


def test_zero_pose_dimension_is_rejected(tmp_path: Path) -> None:
    path = tmp_path / "a.seq"
    path.write_bytes(b"HRISEQ1 K=0 fps=25.0 repr=coords3d N=2\n")
    with pytest.raises(ParseError, match="invalid K") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == len("HRISEQ1 K=")


def test_truncated_body_names_counts(tmp_path: Path) -> None:
    header = _header()
    path = _write(tmp_path / "a.seq", header, [1.0] * 5)
    with pytest.raises(ParseError, match="expected 6 values, found 5") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == len(header) + 5 * 8


def test_stray_trailing_bytes_are_rejected(tmp_path: Path) -> None:
    header = _header()
    path = tmp_path / "a.seq"
    path.write_bytes(header + np.zeros(6, "<f8").tobytes() + b"xyz")
    with pytest.raises(ParseError, match="3 stray bytes"):
        load_sequence(path)


def test_bad_magic(tmp_path: Path) -> None:
    path = tmp_path / "a.seq"
    path.write_bytes(b"HRISEQ2 K=3 fps=25.0 repr=coords3d N=2\n")
    with pytest.raises(ParseError, match="bad magic") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == 0


def test_missing_header_terminator(tmp_path: Path) -> None:
    path = tmp_path / "a.seq"
    path.write_bytes(b"HRISEQ1 K=3")
    with pytest.raises(ParseError, match="terminator") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == len(b"HRISEQ1 K=3")


def test_misnamed_field_points_at_token(tmp_path: Path) -> None:
    path = tmp_path / "a.seq"
    path.write_bytes(b"HRISEQ1 K=3 rate=25.0 repr=coords3d N=2\n")
    with pytest.raises(ParseError, match="expected fps") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == len("HRISEQ1 K=3 ")


def test_unknown_representation(tmp_path: Path) -> None:
    path = tmp_path / "a.seq"
    path.write_bytes(b"HRISEQ1 K=3 fps=25.0 repr=quaternion N=2\n")
    with pytest.raises(ParseError, match="invalid repr"):
        load_sequence(path)


def test_non_finite_value_offset(tmp_path: Path) -> None:
    header = _header()
    path = _write(tmp_path / "a.seq", header, [0, 1, 2, 3, np.nan, 5])
    with pytest.raises(ParseError, match="frame 1, coordinate 1") as excinfo:
        load_sequence(path)
    assert excinfo.value.offset == len(header) + 4 * 8
