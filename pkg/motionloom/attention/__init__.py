from motionloom.attention.encoder import ConvEncoder, encode_history, encode_window
from motionloom.attention.modules import (
    FrameWiseAttention,
    MotionAttention,
    build_attention,
)
from motionloom.attention.schemas import AttentionOutput, SubsequencePair
from motionloom.attention.scores import (
    aggregate_values,
    attention_scores,
    extract_subsequences,
    frame_wise_scores,
    value_windows,
)
from motionloom.attention.settings import (
    AttentionConfig,
    AttentionKind,
    AttentionSettings,
)

__all__ = [
    "AttentionConfig",
    "AttentionKind",
    "AttentionOutput",
    "AttentionSettings",
    "ConvEncoder",
    "FrameWiseAttention",
    "MotionAttention",
    "SubsequencePair",
    "aggregate_values",
    "attention_scores",
    "build_attention",
    "encode_history",
    "encode_window",
    "extract_subsequences",
    "frame_wise_scores",
    "value_windows",
]
