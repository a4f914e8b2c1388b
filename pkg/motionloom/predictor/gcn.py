import logging
import math
from typing import Literal

import torch
from torch import nn

from motionloom.exceptions import InvalidArgument, NumericFailure
from motionloom.predictor.settings import GcnSettings

logger = logging.getLogger(__name__)

Activation = Literal["tanh", "identity"]


class GraphConvLayer(nn.Module):
    """sigma(A H W + b) over a fully connected graph of K pose coordinates."""

    def __init__(
        self,
        nodes: int,
        in_features: int,
        out_features: int,
        activation: Activation = "tanh",
        generator: torch.Generator | None = None,
    ) -> None:
        super().__init__()
        self.activation = activation
        self.adjacency = nn.Parameter(
            torch.empty(nodes, nodes, dtype=torch.float64)
        )
        self.weight = nn.Parameter(
            torch.empty(in_features, out_features, dtype=torch.float64)
        )
        self.bias = nn.Parameter(torch.zeros(out_features, dtype=torch.float64))
        self.reset_parameters(generator)

    @torch.no_grad()
    def reset_parameters(self, generator: torch.Generator | None = None):
        nodes = self.adjacency.shape[0]
        in_features, out_features = self.weight.shape
        bound = math.sqrt(6.0 / (2 * nodes))
        self.adjacency.uniform_(-bound, bound, generator=generator)
        bound = math.sqrt(6.0 / (in_features + out_features))
        self.weight.uniform_(-bound, bound, generator=generator)
        self.bias.zero_()

    def forward(self, hidden: torch.Tensor) -> torch.Tensor:
        return graph_conv_forward(hidden, self)


def graph_conv_forward(hidden: torch.Tensor, layer: GraphConvLayer) -> torch.Tensor:
    nodes, features = hidden.shape[-2:]
    if nodes != layer.adjacency.shape[0] or features != layer.weight.shape[0]:
        raise InvalidArgument(
            f"input {nodes}x{features} does not fit adjacency "
            f"{tuple(layer.adjacency.shape)} and weight "
            f"{tuple(layer.weight.shape)}"
        )
    out = layer.adjacency @ hidden @ layer.weight + layer.bias
    if layer.activation == "tanh":
        return torch.tanh(out)
    return out


class ResidualBlock(nn.Module):
    def __init__(
        self,
        nodes: int,
        width: int,
        dropout: float = 0.0,
        generator: torch.Generator | None = None,
    ) -> None:
        super().__init__()
        self.first = GraphConvLayer(nodes, width, width, "tanh", generator)
        self.second = GraphConvLayer(nodes, width, width, "tanh", generator)
        self.dropout = nn.Dropout(dropout)

    def forward(self, hidden: torch.Tensor) -> torch.Tensor:
        out = self.dropout(self.first(hidden))
        out = self.dropout(self.second(out))
        return out + hidden


class GraphPredictor(nn.Module):
    """Maps [D | U] (K x 2c) to DCT coefficients D + residual (K x c)."""

    def __init__(
        self,
        nodes: int,
        retain: int,
        settings: GcnSettings,
        generator: torch.Generator | None = None,
    ) -> None:
        super().__init__()
        width = settings.GCN_WIDTH
        self.retain = retain
        self.input_layer = GraphConvLayer(
            nodes, 2 * retain, width, "tanh", generator
        )
        self.blocks = nn.ModuleList(
            ResidualBlock(nodes, width, settings.GCN_DROPOUT, generator)
            for _ in range(settings.GCN_BLOCKS)
        )
        self.output_layer = GraphConvLayer(
            nodes, width, retain, "identity", generator
        )
        self.dropout = nn.Dropout(settings.GCN_DROPOUT)

    def layers(self) -> list[nn.Module]:
        return [self.input_layer, *self.blocks, self.output_layer]

    def forward(
        self, coefficients: torch.Tensor, attended: torch.Tensor
    ) -> torch.Tensor:
        if coefficients.shape != attended.shape:
            raise InvalidArgument(
                f"D {tuple(coefficients.shape)} and U "
                f"{tuple(attended.shape)} differ in shape"
            )
        if coefficients.shape[-1] != self.retain:
            raise InvalidArgument(
                f"expected {self.retain} coefficients per row, "
                f"got {coefficients.shape[-1]}"
            )
        hidden = torch.cat([coefficients, attended], dim=-1)
        for index, layer in enumerate(self.layers()):
            hidden = layer(hidden)
            if layer is self.input_layer:
                hidden = self.dropout(hidden)
            if not torch.isfinite(hidden).all():
                logger.error("non-finite activation after layer %d", index)
                raise NumericFailure(f"predictor layer {index}")
        return coefficients + hidden


def gcn_forward(
    coefficients: torch.Tensor,
    attended: torch.Tensor,
    params: GraphPredictor,
) -> torch.Tensor:
    return params(coefficients, attended)
