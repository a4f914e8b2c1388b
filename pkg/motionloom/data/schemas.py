from enum import StrEnum
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from motionloom.model.schemas import PoseRepr
from motionloom.types import NonNegativeInt, PositiveFloat, PositiveInt

SEQUENCE_MAGIC = "HRISEQ1"


class SequenceFileHeader(BaseModel):
    model_config = ConfigDict(frozen=True)

    magic: str = SEQUENCE_MAGIC
    K: PositiveInt
    fps: PositiveFloat
    repr: PoseRepr
    N: PositiveInt

    def encode(self) -> bytes:
        return (
            f"{self.magic} K={self.K} fps={self.fps!r} "
            f"repr={self.repr.value} N={self.N}\n"
        ).encode("ascii")


class Harmonic(BaseModel):
    order: PositiveInt = 1
    amplitude: float = Field(allow_inf_nan=False)
    phase: float = Field(default=0.0, allow_inf_nan=False)


class SegmentKind(StrEnum):
    PERIODIC = "periodic"
    DRIFT = "drift"
    REST = "rest"


class Segment(BaseModel):
    kind: SegmentKind = SegmentKind.PERIODIC
    length: PositiveInt
    # mm/frame, one value for every coordinate or one per coordinate
    velocity: float | list[float] = 0.0


class SyntheticSpec(BaseModel):
    """Sum-of-sines pose trajectory with optional drift/rest spans.

    ``harmonics[k]`` lists the sinusoids of coordinate ``k``; an empty list
    means no oscillation at all.
    """

    joints: PositiveInt = 6
    period: int = Field(default=25, ge=4)
    harmonics: list[list[Harmonic]] = []
    noise: float = Field(default=0.0, ge=0)
    base_pose: list[float] | None = None
    segments: list[Segment] = []
    length: PositiveInt = 200
    fps: PositiveFloat = 25.0
    seed: NonNegativeInt = 0

    @property
    def pose_dim(self) -> int:
        return 3 * self.joints

    @model_validator(mode="after")
    def check_shapes(self) -> Self:
        if self.length < self.period:
            raise ValueError(
                f"length={self.length} is shorter than period={self.period}"
            )
        if self.harmonics and len(self.harmonics) != self.pose_dim:
            raise ValueError(
                f"{len(self.harmonics)} harmonic lists for "
                f"{self.pose_dim} coordinates"
            )
        if self.base_pose is not None and len(self.base_pose) != self.pose_dim:
            raise ValueError(
                f"base_pose has {len(self.base_pose)} values, "
                f"expected {self.pose_dim}"
            )
        for segment in self.segments:
            if (
                isinstance(segment.velocity, list)
                and len(segment.velocity) != self.pose_dim
            ):
                raise ValueError(
                    f"segment velocity has {len(segment.velocity)} values, "
                    f"expected {self.pose_dim}"
                )
        return self

    @classmethod
    def random(
        cls,
        joints: int = 6,
        period: int = 25,
        length: int = 200,
        seed: int = 0,
        orders: int = 2,
        amplitude: float = 100.0,
        spread: float = 500.0,
        **fields,
    ) -> "SyntheticSpec":
        """Random amplitudes in (0, amplitude], phases in [0, 2pi) and a
        base pose within +-spread mm, drawn from ``seed``."""
        rng = np.random.default_rng(seed)
        pose_dim = 3 * joints
        harmonics = [
            [
                Harmonic(
                    order=order,
                    amplitude=float(amplitude * (1 - rng.random()) / order),
                    phase=float(rng.uniform(0, 2 * np.pi)),
                )
                for order in range(1, orders + 1)
            ]
            for _ in range(pose_dim)
        ]
        base_pose = rng.uniform(-spread, spread, pose_dim).tolist()
        return cls(
            joints=joints,
            period=period,
            length=length,
            seed=seed,
            harmonics=harmonics,
            base_pose=base_pose,
            **fields,
        )
