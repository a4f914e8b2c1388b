from motionloom.data.io import load_sequence, save_sequence
from motionloom.data.preprocess import (
    downsample,
    reassemble_dims,
    sample_windows,
    strip_constant_dims,
)
from motionloom.data.rotations import (
    euler_to_rotmat,
    expmap_to_euler,
    expmap_to_rotmat,
    rotmat_to_euler,
)
from motionloom.data.schemas import (
    Harmonic,
    Segment,
    SegmentKind,
    SequenceFileHeader,
    SyntheticSpec,
)
from motionloom.data.settings import DataSettings
from motionloom.data.synthetic import ambiguity_pair, gen_synthetic

__all__ = [
    "DataSettings",
    "Harmonic",
    "Segment",
    "SegmentKind",
    "SequenceFileHeader",
    "SyntheticSpec",
    "ambiguity_pair",
    "downsample",
    "euler_to_rotmat",
    "expmap_to_euler",
    "expmap_to_rotmat",
    "gen_synthetic",
    "load_sequence",
    "reassemble_dims",
    "rotmat_to_euler",
    "sample_windows",
    "save_sequence",
    "strip_constant_dims",
]
