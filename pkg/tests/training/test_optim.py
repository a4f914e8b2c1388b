import math

import pytest
import torch

from motionloom.exceptions import InvalidArgument
from motionloom.training import TrainSettings, adam_step, init_state, lr_schedule

SETTINGS = TrainSettings()


def _scalar(value: float) -> dict[str, torch.Tensor]:
    return {"theta": torch.tensor([value], dtype=torch.float64)}


def test_zero_gradient_leaves_parameters() -> None:
    params = {"w": torch.randn(3, 2, dtype=torch.float64)}
    updated, state = adam_step(
        params, {"w": torch.zeros(3, 2, dtype=torch.float64)}, init_state(params), 0.1
    )
    assert torch.equal(updated["w"], params["w"])
    assert state.step == 1


def test_first_step_moves_by_learning_rate() -> None:
    params = _scalar(1.0)
    updated, _ = adam_step(params, _scalar(0.37), init_state(params), 0.01)
    assert params["theta"].item() - updated["theta"].item() == pytest.approx(
        0.01, rel=1e-6
    )


def test_quadratic_converges() -> None:
    params = _scalar(1.0)
    state = init_state(params)
    for _ in range(100):
        params, state = adam_step(
            params, {"theta": 2 * params["theta"]}, state, 0.1
        )
    assert abs(params["theta"].item()) < 0.1
    assert state.step == 100


def test_inputs_are_not_mutated() -> None:
    params = _scalar(1.0)
    state = init_state(params)
    adam_step(params, _scalar(1.0), state, 0.1)
    assert params["theta"].item() == 1.0
    assert state.step == 0
    assert not state.first_moment["theta"].any()


def test_state_mirrors_parameter_shapes() -> None:
    params = {"a": torch.zeros(2, 3), "b": torch.zeros(4)}
    state = init_state(params)
    assert {k: v.shape for k, v in state.second_moment.items()} == {
        "a": (2, 3),
        "b": (4,),
    }


def test_gradient_shape_mismatch_is_rejected() -> None:
    params = {"w": torch.zeros(2, 2)}
    with pytest.raises(InvalidArgument, match="gradient of w"):
        adam_step(params, {"w": torch.zeros(4)}, init_state(params), 0.1)


@pytest.mark.parametrize(
    ("epoch", "expected"),
    [(1, 0.0005), (50, 0.00005), (25, 0.0005 * 0.1 ** (24 / 49))],
)
def test_schedule(epoch: int, expected: float) -> None:
    assert abs(lr_schedule(epoch, SETTINGS) - expected) < 1e-12


def test_schedule_is_decreasing() -> None:
    rates = [lr_schedule(e, SETTINGS) for e in range(1, 51)]
    assert all(b < a for a, b in zip(rates, rates[1:], strict=False))
    assert math.isclose(rates[-1] / rates[0], 0.1)


def test_epochs_are_one_based() -> None:
    with pytest.raises(InvalidArgument, match="1-based"):
        lr_schedule(0, SETTINGS)
