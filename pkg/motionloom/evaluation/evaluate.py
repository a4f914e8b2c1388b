import logging
import math
from collections.abc import Callable, Mapping, Sequence
from enum import StrEnum
from pathlib import Path

import logfire
import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from motionloom.data.rotations import expmap_to_euler
from motionloom.evaluation.horizons import horizon_frames
from motionloom.exceptions import InvalidArgument
from motionloom.model import Forecaster, PoseRepr, PoseSequence
from motionloom.model.baselines import zero_velocity_baseline

logger = logging.getLogger(__name__)

PRIMARY_COLUMN = "mean_error"
ZERO_VELOCITY_COLUMN = "zero_velocity"
FRAME_WISE_COLUMN = "frame_wise"
POOLED_ACTION = "all"

Predictor = Callable[[PoseSequence, int], np.ndarray]


class Metric(StrEnum):
    POSITION = "position"
    ANGLE = "angle"


class ReportRow(BaseModel):
    horizon_ms: int
    frame: int
    action: str
    errors: dict[str, float]


class EvalReport(BaseModel):
    metric: Metric
    methods: list[str]
    rows: list[ReportRow]
    windows: int = Field(ge=0)
    skipped: int = Field(ge=0)

    def to_frame(self) -> pd.DataFrame:
        columns = ["horizon_ms", "frame", *self.methods[:1], "action"]
        columns += self.methods[1:]
        return pd.DataFrame(
            [
                {
                    "horizon_ms": row.horizon_ms,
                    "frame": row.frame,
                    "action": row.action,
                    **row.errors,
                }
                for row in self.rows
            ],
            columns=columns,
        )

    def errors(self, method: str, action: str = POOLED_ACTION) -> list[float]:
        return [
            row.errors[method] for row in self.rows if row.action == action
        ]


def frame_error(pred: np.ndarray, truth: np.ndarray, metric: Metric) -> float:
    """Error of one predicted frame against the true frame."""
    match metric:
        case Metric.POSITION:
            if pred.shape[-1] % 3:
                raise InvalidArgument(
                    f"pose dimension {pred.shape[-1]} is not 3 x joints"
                )
            per_joint = (pred - truth).reshape(-1, 3)
            return float(np.linalg.norm(per_joint, axis=-1).mean())
        case Metric.ANGLE:
            return float(
                np.linalg.norm(expmap_to_euler(pred) - expmap_to_euler(truth))
            )


def zero_velocity_method(history: PoseSequence, frames: int) -> np.ndarray:
    return zero_velocity_baseline(history, frames)


def forecaster_method(forecaster: Forecaster) -> Predictor:
    future = forecaster.settings.FUTURE_WINDOW

    def predict(history: PoseSequence, frames: int) -> np.ndarray:
        steps = math.ceil(frames / future)
        return forecaster.predict_recursive(history, steps).frames[:frames]

    return predict


def evaluate(
    methods: Mapping[str, Predictor],
    test_windows: Mapping[str, Sequence[np.ndarray]],
    horizons_ms: Sequence[int],
    history_length: int,
    metric: Metric = Metric.POSITION,
    fps: float = 25.0,
) -> EvalReport:
    """Per-horizon mean error of every method, per action and pooled.

    Each window holds ``history_length`` observed frames followed by the
    ground-truth future; windows with fewer future frames than the longest
    horizon are skipped and counted.
    """
    if not methods:
        raise InvalidArgument("no methods to evaluate")
    frames = horizon_frames(horizons_ms, fps)
    if not frames:
        raise InvalidArgument("at least one horizon is required")
    needed = history_length + max(frames)
    representation = PoseRepr.EXPMAP if metric == Metric.ANGLE else PoseRepr.COORDS3D

    rows: list[ReportRow] = []
    pooled: dict[str, list[list[float]]] = {name: [] for name in methods}
    evaluated = skipped = 0
    with logfire.span("evaluation", methods=list(methods), metric=metric.value):
        for action in sorted(test_windows):
            per_action: dict[str, list[list[float]]] = {n: [] for n in methods}
            for window in test_windows[action]:
                window = np.asarray(window, dtype=np.float64)
                if len(window) < needed:
                    skipped += 1
                    continue
                history = PoseSequence(
                    frames=window[:history_length],
                    fps=fps,
                    repr=representation,
                )
                future = window[history_length:]
                for name, predict in methods.items():
                    predicted = predict(history, max(frames))
                    per_action[name].append(
                        [
                            frame_error(predicted[h - 1], future[h - 1], metric)
                            for h in frames
                        ]
                    )
                evaluated += 1
            if not per_action[next(iter(methods))]:
                continue
            for name in methods:
                pooled[name].extend(per_action[name])
            rows.extend(_rows(action, horizons_ms, frames, per_action))
        if evaluated:
            rows.extend(_rows(POOLED_ACTION, horizons_ms, frames, pooled))
    if skipped:
        logger.warning("skipped %d windows with too few future frames", skipped)
    logger.info("evaluated %d windows over %d horizons", evaluated, len(frames))
    return EvalReport(
        metric=metric,
        methods=list(methods),
        rows=rows,
        windows=evaluated,
        skipped=skipped,
    )


def _rows(
    action: str,
    horizons_ms: Sequence[int],
    frames: Sequence[int],
    errors: Mapping[str, list[list[float]]],
) -> list[ReportRow]:
    means = {name: np.mean(values, axis=0) for name, values in errors.items()}
    return [
        ReportRow(
            horizon_ms=ms,
            frame=frame,
            action=action,
            errors={name: float(mean[i]) for name, mean in means.items()},
        )
        for i, (ms, frame) in enumerate(zip(horizons_ms, frames, strict=True))
    ]


def write_report(report: EvalReport, path: Path) -> None:
    report.to_frame().to_csv(path, index=False, float_format="%.6f")
