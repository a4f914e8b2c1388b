import logging
from collections.abc import Iterator
from contextlib import contextmanager
from typing import NamedTuple

import numpy as np
import torch
from torch import nn

from motionloom.attention import AttentionOutput, build_attention
from motionloom.exceptions import InvalidArgument
from motionloom.model.padding import pad_last_pose
from motionloom.model.schemas import ForecastResult, PoseSequence
from motionloom.model.settings import ModelSettings
from motionloom.numerics import build_dct_basis, dct, idct
from motionloom.predictor import GraphPredictor

logger = logging.getLogger(__name__)


class ForecastBatch(NamedTuple):
    reconstruction: torch.Tensor  # (B, M+T, K)
    prediction: torch.Tensor  # (B, T, K)
    scores: torch.Tensor  # (B, n)
    values: torch.Tensor  # (B, K, c)


class Forecaster(nn.Module):
    """Motion attention followed by the residual GCN predictor.

    All parameters are float64 and initialised from a generator seeded with
    ``seed``, so two forecasters built with the same arguments are equal.
    """

    def __init__(
        self, pose_dim: int, settings: ModelSettings, seed: int = 0
    ) -> None:
        super().__init__()
        self.pose_dim = pose_dim
        self.settings = settings
        self.seed = seed
        generator = torch.Generator().manual_seed(seed)
        self.attention = build_attention(pose_dim, settings, generator)
        self.predictor = GraphPredictor(
            pose_dim, settings.RETAIN, settings, generator
        )

    def forward_batch(self, histories: torch.Tensor) -> ForecastBatch:
        if histories.ndim == 2:
            histories = histories.unsqueeze(0)
        if histories.shape[-1] != self.pose_dim:
            raise InvalidArgument(
                f"expected poses of dimension {self.pose_dim}, "
                f"got {histories.shape[-1]}"
            )
        past = self.settings.PAST_WINDOW
        future = self.settings.FUTURE_WINDOW
        length = self.settings.SEGMENT_LENGTH
        basis = build_dct_basis(length)

        scores, attended = self.attention(histories)
        padded = pad_last_pose(histories[..., -past:, :], future)
        coefficients = dct(padded.transpose(-1, -2), basis, self.settings.RETAIN)
        predicted = self.predictor(coefficients, attended)
        reconstruction = idct(predicted, basis, length).transpose(-1, -2)
        return ForecastBatch(
            reconstruction=reconstruction,
            prediction=reconstruction[..., -future:, :],
            scores=scores,
            values=attended,
        )

    forward = forward_batch

    @contextmanager
    def _inference(self) -> Iterator[None]:
        was_training = self.training
        self.eval()
        try:
            with torch.no_grad():
                yield
        finally:
            self.train(was_training)

    def _check_history(self, history: PoseSequence) -> torch.Tensor:
        if history.pose_dim != self.pose_dim:
            raise InvalidArgument(
                f"history has pose dimension {history.pose_dim}, "
                f"forecaster expects {self.pose_dim}"
            )
        return torch.from_numpy(np.array(history.frames))

    def predict_once(self, history: PoseSequence) -> ForecastResult:
        return self.predict_recursive(history, 1)

    def predict_recursive(
        self, history: PoseSequence, steps: int
    ) -> ForecastResult:
        """Roll out ``steps`` x T frames, appending each prediction to the
        history before re-scoring all keys."""
        if steps < 1:
            raise InvalidArgument(f"steps must be >= 1, got {steps}")
        frames = self._check_history(history)
        predictions: list[torch.Tensor] = []
        trace: list[AttentionOutput] = []
        with self._inference():
            for step in range(steps):
                batch = self.forward_batch(frames)
                prediction = batch.prediction[0]
                trace.append(
                    AttentionOutput(
                        scores=batch.scores[0].numpy(),
                        values=batch.values[0].numpy(),
                        history_length=frames.shape[0],
                    )
                )
                predictions.append(prediction)
                frames = torch.cat([frames, prediction])
                logger.debug(
                    "recursion step %d: history now %d frames",
                    step + 1,
                    frames.shape[0],
                )
        return ForecastResult(
            frames=torch.cat(predictions).numpy(), trace=trace
        )


def predict_once(history: PoseSequence, forecaster: Forecaster) -> ForecastResult:
    return forecaster.predict_once(history)


def predict_recursive(
    history: PoseSequence, steps: int, forecaster: Forecaster
) -> ForecastResult:
    return forecaster.predict_recursive(history, steps)
