import logging

import torch
from torch import nn

from motionloom.exceptions import NumericFailure

logger = logging.getLogger(__name__)


def backward(loss: torch.Tensor, module: nn.Module) -> dict[str, torch.Tensor]:
    """Gradients of ``loss`` for every named parameter of ``module``.

    Parameters the loss does not depend on get zero gradients.
    """
    named = dict(module.named_parameters())
    grads = torch.autograd.grad(loss, list(named.values()), allow_unused=True)
    result: dict[str, torch.Tensor] = {}
    for (name, param), grad in zip(named.items(), grads, strict=True):
        grad = torch.zeros_like(param) if grad is None else grad.detach()
        if not torch.isfinite(grad).all():
            logger.error("non-finite gradient for %s", name)
            raise NumericFailure(f"gradient of {name}")
        result[name] = grad
    return result
