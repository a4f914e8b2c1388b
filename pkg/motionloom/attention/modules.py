import torch
from torch import nn

from motionloom.attention.encoder import ConvEncoder, encode_history, encode_window
from motionloom.attention.scores import (
    aggregate_values,
    attention_scores,
    frame_wise_scores,
    key_poses,
    subsequence_count,
    value_windows,
)
from motionloom.attention.settings import AttentionKind, AttentionSettings


class MotionAttention(nn.Module):
    """Scores historical sub-sequences against the latest M frames and
    aggregates their DCT coefficients into U."""

    def __init__(
        self,
        pose_dim: int,
        settings: AttentionSettings,
        generator: torch.Generator | None = None,
    ) -> None:
        super().__init__()
        self.settings = settings
        self.query_encoder = ConvEncoder(pose_dim, settings, generator)
        self.key_encoder = ConvEncoder(pose_dim, settings, generator)

    def scores(self, history: torch.Tensor) -> torch.Tensor:
        subsequence_count(history.shape[-2], self.settings)
        window = history[..., -self.settings.PAST_WINDOW :, :].transpose(-1, -2)
        query = encode_window(
            self.query_encoder, window, self.settings.INPUT_SCALE
        )
        keys = encode_history(self.key_encoder, history, self.settings)
        return attention_scores(query, keys, self.settings.SCORE_EPSILON)

    def forward(self, history: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        scores = self.scores(history)
        return scores, aggregate_values(
            scores, value_windows(history, self.settings)
        )


class FrameWiseAttention(nn.Module):
    """Ablation: the last observed pose is the query and the last pose of
    every key window is the key. Has no trainable parameters."""

    def __init__(self, pose_dim: int, settings: AttentionSettings) -> None:
        super().__init__()
        self.settings = settings
        self.pose_dim = pose_dim

    def scores(self, history: torch.Tensor) -> torch.Tensor:
        return frame_wise_scores(
            history[..., -1, :],
            key_poses(history, self.settings),
            self.settings.SCORE_EPSILON,
        )

    def forward(self, history: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        scores = self.scores(history)
        return scores, aggregate_values(
            scores, value_windows(history, self.settings)
        )


def build_attention(
    pose_dim: int,
    settings: AttentionSettings,
    generator: torch.Generator | None = None,
) -> MotionAttention | FrameWiseAttention:
    match settings.ATTENTION_KIND:
        case AttentionKind.MOTION:
            return MotionAttention(pose_dim, settings, generator)
        case AttentionKind.FRAME_WISE:
            return FrameWiseAttention(pose_dim, settings)
