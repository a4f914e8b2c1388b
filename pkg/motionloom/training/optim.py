import math
from collections.abc import Mapping
from dataclasses import dataclass

import torch

from motionloom.exceptions import InvalidArgument
from motionloom.training.settings import TrainSettings


@dataclass(frozen=True, slots=True)
class OptimizerState:
    first_moment: dict[str, torch.Tensor]
    second_moment: dict[str, torch.Tensor]
    step: int = 0


def init_state(params: Mapping[str, torch.Tensor]) -> OptimizerState:
    return OptimizerState(
        first_moment={k: torch.zeros_like(v) for k, v in params.items()},
        second_moment={k: torch.zeros_like(v) for k, v in params.items()},
    )


def adam_step(
    params: Mapping[str, torch.Tensor],
    grads: Mapping[str, torch.Tensor],
    state: OptimizerState,
    lr: float,
    settings: TrainSettings | None = None,
) -> tuple[dict[str, torch.Tensor], OptimizerState]:
    """One bias-corrected Adam update; inputs are left untouched."""
    settings = settings or TrainSettings()
    beta1, beta2 = settings.ADAM_BETA1, settings.ADAM_BETA2
    step = state.step + 1
    first_correction = 1 - beta1**step
    second_correction = 1 - beta2**step

    updated: dict[str, torch.Tensor] = {}
    first: dict[str, torch.Tensor] = {}
    second: dict[str, torch.Tensor] = {}
    for name, value in params.items():
        grad = grads[name].detach()
        if grad.shape != value.shape:
            raise InvalidArgument(
                f"gradient of {name} has shape {tuple(grad.shape)}, "
                f"parameter has {tuple(value.shape)}"
            )
        first[name] = beta1 * state.first_moment[name] + (1 - beta1) * grad
        second[name] = (
            beta2 * state.second_moment[name] + (1 - beta2) * grad * grad
        )
        m_hat = first[name] / first_correction
        v_hat = second[name] / second_correction
        updated[name] = value.detach() - lr * m_hat / (
            v_hat.sqrt() + settings.ADAM_EPSILON
        )
    return updated, OptimizerState(first, second, step)


def lr_schedule(epoch: int, settings: TrainSettings) -> float:
    """lr(e) = lr0 * decay ** (e - 1)."""
    if epoch < 1:
        raise InvalidArgument(f"epochs are 1-based, got {epoch}")
    return settings.LEARNING_RATE * math.pow(settings.LR_DECAY, epoch - 1)
