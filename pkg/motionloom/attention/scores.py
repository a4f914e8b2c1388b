from collections.abc import Sized

import torch

from motionloom.attention.schemas import SubsequencePair
from motionloom.attention.settings import AttentionSettings
from motionloom.exceptions import InsufficientHistory, InvalidArgument
from motionloom.numerics import build_dct_basis, dct

DEFAULT_EPSILON = 1e-12


def subsequence_count(history_length: int, settings: AttentionSettings) -> int:
    required = settings.SEGMENT_LENGTH
    if history_length < required:
        raise InsufficientHistory(history_length, required)
    return history_length - required + 1


def extract_subsequences(
    history: int | Sized, settings: AttentionSettings
) -> list[SubsequencePair]:
    length = history if isinstance(history, int) else len(history)
    m, t = settings.PAST_WINDOW, settings.FUTURE_WINDOW
    return [
        SubsequencePair(i, i + m - 1, i, i + m + t - 1)
        for i in range(1, subsequence_count(length, settings) + 1)
    ]


def _normalise(products: torch.Tensor, epsilon: float) -> torch.Tensor:
    total = products.sum(dim=-1, keepdim=True)
    uniform = torch.full_like(products, 1.0 / products.shape[-1])
    safe_total = torch.where(total > epsilon, total, torch.ones_like(total))
    return torch.where(total > epsilon, products / safe_total, uniform)


def attention_scores(
    query: torch.Tensor,
    keys: torch.Tensor,
    epsilon: float = DEFAULT_EPSILON,
) -> torch.Tensor:
    """a_i = q.k_i / sum_j q.k_j; uniform when the sum is <= epsilon.

    ``query`` is (..., d) and ``keys`` (..., n, d).
    """
    if keys.shape[-2] == 0:
        raise InvalidArgument("at least one key is required")
    if query.shape[-1] != keys.shape[-1]:
        raise InvalidArgument(
            f"query dimension {query.shape[-1]} does not match key "
            f"dimension {keys.shape[-1]}"
        )
    products = (keys @ query.unsqueeze(-1)).squeeze(-1)
    return _normalise(products, epsilon)


def frame_wise_scores(
    last_pose: torch.Tensor,
    key_poses: torch.Tensor,
    epsilon: float = DEFAULT_EPSILON,
) -> torch.Tensor:
    """Same normalisation with raw poses as query and keys. Individual
    scores may be negative; a non-positive sum falls back to uniform."""
    return attention_scores(last_pose, key_poses, epsilon)


def aggregate_values(scores: torch.Tensor, values: torch.Tensor) -> torch.Tensor:
    """U = sum_i a_i V_i for ``scores`` (..., n) and ``values`` (..., n, K, c)."""
    if values.shape[-3] == 0:
        raise InvalidArgument("cannot aggregate an empty set of values")
    if scores.shape[-1] != values.shape[-3]:
        raise InvalidArgument(
            f"{scores.shape[-1]} scores for {values.shape[-3]} values"
        )
    return (scores[..., None, None] * values).sum(dim=-3)


def value_windows(
    history: torch.Tensor, settings: AttentionSettings
) -> torch.Tensor:
    """DCT coefficients (batch, n, K, c) of every (M+T)-frame sub-sequence."""
    length = settings.SEGMENT_LENGTH
    count = subsequence_count(history.shape[-2], settings)
    index = torch.arange(length)[None, :] + torch.arange(count)[:, None]
    windows = history[..., index, :].transpose(-1, -2)
    return dct(windows, build_dct_basis(length), settings.RETAIN)


def key_poses(history: torch.Tensor, settings: AttentionSettings) -> torch.Tensor:
    """Last pose of every key window, X_{i+M-1}: (batch, n, K)."""
    count = subsequence_count(history.shape[-2], settings)
    start = settings.PAST_WINDOW - 1
    return history[..., start : start + count, :]


