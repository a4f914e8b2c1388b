import math

import torch
from torch import nn

from motionloom.attention.settings import AttentionSettings
from motionloom.exceptions import InvalidArgument


def glorot_bound(fan_in: int, fan_out: int) -> float:
    return math.sqrt(6.0 / (fan_in + fan_out))


class ConvEncoder(nn.Module):
    """Two temporal convolutions, each followed by ReLU (f_q or f_k).

    Input is (batch, K, frames); the feature map has
    ``frames - receptive_field + 1`` temporal positions.
    """

    def __init__(
        self,
        pose_dim: int,
        settings: AttentionSettings,
        generator: torch.Generator | None = None,
    ) -> None:
        super().__init__()
        first, second = settings.KERNEL_SIZES
        self.receptive_field = settings.RECEPTIVE_FIELD
        self.conv1 = nn.Conv1d(
            pose_dim,
            settings.HIDDEN_CHANNELS,
            first,
            dtype=torch.float64,
        )
        self.conv2 = nn.Conv1d(
            settings.HIDDEN_CHANNELS,
            settings.QUERY_DIM,
            second,
            dtype=torch.float64,
        )
        self.reset_parameters(generator)

    @torch.no_grad()
    def reset_parameters(self, generator: torch.Generator | None = None):
        for conv in (self.conv1, self.conv2):
            out_channels, in_channels, kernel = conv.weight.shape
            bound = glorot_bound(in_channels * kernel, out_channels * kernel)
            conv.weight.uniform_(-bound, bound, generator=generator)
            assert conv.bias is not None
            conv.bias.zero_()

    def feature_map(self, frames: torch.Tensor) -> torch.Tensor:
        if frames.shape[-1] < self.receptive_field:
            raise InvalidArgument(
                f"window of {frames.shape[-1]} frames is shorter than the "
                f"receptive field {self.receptive_field}"
            )
        return torch.relu(self.conv2(torch.relu(self.conv1(frames))))

    def forward(self, window: torch.Tensor) -> torch.Tensor:
        # last temporal position summarises the most recent frames
        return self.feature_map(window)[..., -1]


def encode_window(
    params: ConvEncoder, window: torch.Tensor, scale: float = 1.0
) -> torch.Tensor:
    """Encode one K x M window (or a batch of them) into a d-vector."""
    return params(window / scale)


def encode_history(
    params: ConvEncoder,
    history: torch.Tensor,
    settings: AttentionSettings,
) -> torch.Tensor:
    """Every key of a (batch, N, K) history in one convolution pass.

    Column ``i + M - receptive_field`` of the feature map over frames
    ``1..N-T`` is key ``k_i``; returns (batch, N-M-T+1, d).
    """
    frames = history.shape[-2]
    usable = frames - settings.FUTURE_WINDOW
    features = params.feature_map(
        history[..., :usable, :].transpose(-1, -2) / settings.INPUT_SCALE
    )
    offset = settings.PAST_WINDOW - settings.RECEPTIVE_FIELD
    return features[..., offset:].transpose(-1, -2)
