from motionloom.attention.settings import AttentionSettings
from motionloom.predictor.settings import GcnSettings


class ModelSettings(AttentionSettings, GcnSettings):
    pass


def tiny_model_settings(**overrides) -> ModelSettings:
    """Desk-check configuration: M=12, T=4, d=8, hidden 8, c=8, two blocks
    of width 8, unscaled inputs."""
    return ModelSettings.model_validate(
        {
            "PAST_WINDOW": 12,
            "FUTURE_WINDOW": 4,
            "QUERY_DIM": 8,
            "HIDDEN_CHANNELS": 8,
            "DCT_RETAIN": 8,
            "GCN_BLOCKS": 2,
            "GCN_WIDTH": 8,
            "INPUT_SCALE": 1.0,
        }
        | overrides
    )
