import numpy as np
import pytest
import torch
from torch.func import functional_call

from motionloom.exceptions import InvalidArgument, NumericFailure
from motionloom.numerics import check_gradients
from motionloom.predictor import (
    GcnSettings,
    GraphConvLayer,
    GraphPredictor,
    gcn_forward,
    graph_conv_forward,
)

TINY = GcnSettings(GCN_BLOCKS=2, GCN_WIDTH=8)
NODES, RETAIN = 6, 4


@pytest.fixture
def predictor(generator: torch.Generator) -> GraphPredictor:
    return GraphPredictor(NODES, RETAIN, TINY, generator)


def _coefficients(seed: int = 0) -> tuple[torch.Tensor, torch.Tensor]:
    g = torch.Generator().manual_seed(seed)
    return (
        torch.randn(NODES, RETAIN, generator=g, dtype=torch.float64),
        torch.randn(NODES, RETAIN, generator=g, dtype=torch.float64),
    )


def test_zero_input_gives_zero_output() -> None:
    layer = GraphConvLayer(4, 3, 5)
    assert not graph_conv_forward(torch.zeros(4, 3, dtype=torch.float64), layer).any()


def test_identity_layer_is_identity() -> None:
    layer = GraphConvLayer(4, 3, 3, activation="identity")
    with torch.no_grad():
        layer.adjacency.copy_(torch.eye(4))
        layer.weight.copy_(torch.eye(3))
    h = torch.randn(4, 3, dtype=torch.float64)
    torch.testing.assert_close(graph_conv_forward(h, layer), h, atol=0, rtol=0)


def test_layer_matches_triple_loop(generator: torch.Generator) -> None:
    layer = GraphConvLayer(4, 3, 2, activation="identity", generator=generator)
    h = torch.randn(4, 3, generator=generator, dtype=torch.float64)
    a = layer.adjacency.detach().numpy()
    w = layer.weight.detach().numpy()
    x = h.numpy()
    expected = np.zeros((4, 2))
    for i in range(4):
        for o in range(2):
            for j in range(4):
                for f in range(3):
                    expected[i, o] += a[i, j] * x[j, f] * w[f, o]
    result = graph_conv_forward(h, layer).detach().numpy()
    assert np.abs(result - expected).max() < 1e-12


def test_tanh_output_is_bounded(generator: torch.Generator) -> None:
    layer = GraphConvLayer(4, 3, 5, generator=generator)
    out = layer(1e3 * torch.randn(4, 3, generator=generator, dtype=torch.float64))
    assert (out.abs() <= 1).all()


def test_layer_rejects_shape_mismatch() -> None:
    with pytest.raises(InvalidArgument, match="does not fit"):
        graph_conv_forward(
            torch.zeros(5, 3, dtype=torch.float64), GraphConvLayer(4, 3, 3)
        )


def test_zero_output_layer_returns_d(predictor: GraphPredictor) -> None:
    with torch.no_grad():
        predictor.output_layer.weight.zero_()
    d, u = _coefficients()
    assert torch.equal(gcn_forward(d, u, predictor), d)


def test_zero_inputs_give_zero(predictor: GraphPredictor) -> None:
    zeros = torch.zeros(NODES, RETAIN, dtype=torch.float64)
    assert not gcn_forward(zeros, zeros, predictor).any()


def _straight_line_forward(
    predictor: GraphPredictor, d: np.ndarray, u: np.ndarray
) -> np.ndarray:
    def layer(h, module, activation):
        a = module.adjacency.detach().numpy()
        w = module.weight.detach().numpy()
        b = module.bias.detach().numpy()
        return activation(a @ h @ w + b)

    h = layer(np.concatenate([d, u], axis=1), predictor.input_layer, np.tanh)
    for block in predictor.blocks:
        inner = layer(h, block.first, np.tanh)
        h = layer(inner, block.second, np.tanh) + h
    return d + layer(h, predictor.output_layer, lambda x: x)


def test_forward_matches_independent_implementation(
    predictor: GraphPredictor,
) -> None:
    with torch.no_grad():
        for param in predictor.parameters():
            if param.ndim == 1:
                param.normal_()
    d, u = _coefficients(1)
    expected = _straight_line_forward(predictor, d.numpy(), u.numpy())
    result = gcn_forward(d, u, predictor).detach().numpy()
    assert np.abs(result - expected).max() < 1e-12


def test_every_hidden_activation_is_nodes_by_width(
    predictor: GraphPredictor,
) -> None:
    shapes: list[tuple[int, ...]] = []
    for module in predictor.modules():
        if isinstance(module, GraphConvLayer) and module is not predictor.output_layer:
            module.register_forward_hook(
                lambda _m, _i, out: shapes.append(tuple(out.shape))
            )
    predictor(*_coefficients())
    assert shapes
    assert set(shapes) == {(NODES, TINY.GCN_WIDTH)}


def test_batched_forward(predictor: GraphPredictor) -> None:
    d = torch.randn(3, NODES, RETAIN, dtype=torch.float64)
    u = torch.randn(3, NODES, RETAIN, dtype=torch.float64)
    batched = predictor(d, u)
    torch.testing.assert_close(batched[1], predictor(d[1], u[1]))


def test_non_finite_activation_names_layer(predictor: GraphPredictor) -> None:
    with torch.no_grad():
        predictor.input_layer.bias[0] = float("nan")
    with pytest.raises(NumericFailure, match="layer 0"):
        predictor(*_coefficients())


def test_mismatched_inputs_are_rejected(predictor: GraphPredictor) -> None:
    d, u = _coefficients()
    with pytest.raises(InvalidArgument, match="differ in shape"):
        predictor(d, u[:, :2])
    with pytest.raises(InvalidArgument, match="expected 4 coefficients"):
        predictor(d[:, :3], u[:, :3])


def test_single_layer_gradients_match_finite_differences(
    generator: torch.Generator,
) -> None:
    layer = GraphConvLayer(4, 3, 2, activation="identity", generator=generator)
    h = torch.randn(4, 3, generator=generator, dtype=torch.float64)
    params = {k: v.detach() for k, v in layer.named_parameters()}

    report = check_gradients(
        lambda p: functional_call(layer, dict(p), (h,)).sum(), params
    )
    assert report.worst < 1e-6

    # d/dW sum(A H W) = (A H)^T 1
    expected = (layer.adjacency @ h).sum(0)[:, None].expand(3, 2)
    loss = layer(h).sum()
    (grad,) = torch.autograd.grad(loss, [layer.weight])
    torch.testing.assert_close(grad, expected.detach())
