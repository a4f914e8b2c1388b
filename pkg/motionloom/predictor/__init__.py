from motionloom.predictor.gcn import (
    GraphConvLayer,
    GraphPredictor,
    ResidualBlock,
    gcn_forward,
    graph_conv_forward,
)
from motionloom.predictor.settings import GcnConfig, GcnSettings

__all__ = [
    "GcnConfig",
    "GcnSettings",
    "GraphConvLayer",
    "GraphPredictor",
    "ResidualBlock",
    "gcn_forward",
    "graph_conv_forward",
]
