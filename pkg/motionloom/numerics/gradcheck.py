import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import logfire
import torch
from pydantic import BaseModel, computed_field

from motionloom.exceptions import InvalidArgument

logger = logging.getLogger(__name__)

LossFn = Callable[[Mapping[str, torch.Tensor]], torch.Tensor | float]


@dataclass(frozen=True, slots=True)
class FiniteDiffGradient:
    gradients: dict[str, torch.Tensor]
    failed: dict[str, str] = field(default_factory=dict)


class GradCheckReport(BaseModel):
    step: float
    tolerance: float
    max_relative_error: dict[str, float]
    passed: dict[str, bool]
    failures: dict[str, str] = {}

    @computed_field  # type: ignore[prop-decorator]
    @property
    def worst(self) -> float:
        return max(self.max_relative_error.values(), default=0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def ok(self) -> bool:
        return all(self.passed.values()) and not self.failures


def relative_error(
    analytic: torch.Tensor, numeric: torch.Tensor
) -> torch.Tensor:
    denominator = torch.maximum(
        torch.ones_like(analytic),
        torch.maximum(analytic.abs(), numeric.abs()),
    )
    return (analytic - numeric).abs() / denominator


def _evaluate(loss_fn: LossFn, params: Mapping[str, torch.Tensor]) -> float:
    with torch.no_grad():
        value = loss_fn(params)
    return float(value)


def finite_diff_gradient(
    loss_fn: LossFn,
    params: Mapping[str, torch.Tensor],
    h: float = 1e-6,
) -> FiniteDiffGradient:
    """Central differences ``(f(p + h e_i) - f(p - h e_i)) / 2h`` for every
    scalar of every named parameter."""
    if not h > 0:
        raise InvalidArgument(f"finite-difference step must be > 0, got {h}")
    base = {name: value.detach().clone() for name, value in params.items()}
    gradients: dict[str, torch.Tensor] = {}
    failed: dict[str, str] = {}
    for name, value in base.items():
        grad = torch.zeros_like(value)
        flat_grad = grad.view(-1)
        for index in range(value.numel()):
            shifted = value.clone()
            flat = shifted.view(-1)
            flat[index] += h
            upper = _evaluate(loss_fn, base | {name: shifted})
            flat[index] -= 2 * h
            lower = _evaluate(loss_fn, base | {name: shifted})
            if not (math.isfinite(upper) and math.isfinite(lower)):
                failed[name] = f"non-finite loss at flat index {index}"
                logger.warning("finite difference failed for %s", name)
                break
            flat_grad[index] = (upper - lower) / (2 * h)
        gradients[name] = grad
    return FiniteDiffGradient(gradients=gradients, failed=failed)


def analytic_gradient(
    loss_fn: LossFn, params: Mapping[str, torch.Tensor]
) -> dict[str, torch.Tensor]:
    leaves = {
        name: value.detach().clone().requires_grad_(True)
        for name, value in params.items()
    }
    loss = loss_fn(leaves)
    if not isinstance(loss, torch.Tensor):
        raise InvalidArgument("loss function must return a tensor")
    grads = torch.autograd.grad(
        loss, list(leaves.values()), allow_unused=True
    )
    return {
        name: torch.zeros_like(leaf) if grad is None else grad.detach()
        for (name, leaf), grad in zip(leaves.items(), grads, strict=True)
    }


def check_gradients(
    loss_fn: LossFn,
    params: Mapping[str, torch.Tensor],
    h: float = 1e-6,
    tolerance: float = 1e-4,
) -> GradCheckReport:
    with logfire.span("gradient check", parameters=len(params), step=h):
        analytic = analytic_gradient(loss_fn, params)
        numeric = finite_diff_gradient(loss_fn, params, h)
    errors = {
        name: float(relative_error(analytic[name], numeric.gradients[name]).max())
        if analytic[name].numel()
        else 0.0
        for name in params
    }
    report = GradCheckReport(
        step=h,
        tolerance=tolerance,
        max_relative_error=errors,
        passed={
            name: name not in numeric.failed and error < tolerance
            for name, error in errors.items()
        },
        failures=numeric.failed,
    )
    logger.info(
        "gradient check: worst relative error %.3e over %d tensors",
        report.worst,
        len(errors),
    )
    return report
