import torch

from motionloom.exceptions import InvalidArgument


def _check_shapes(pred: torch.Tensor, truth: torch.Tensor) -> None:
    if pred.shape != truth.shape:
        raise InvalidArgument(
            f"prediction {tuple(pred.shape)} and target "
            f"{tuple(truth.shape)} differ in shape"
        )


def safe_norm(vectors: torch.Tensor, dim: int = -1) -> torch.Tensor:
    """Euclidean norm whose gradient at the zero vector is 0."""
    squared = (vectors * vectors).sum(dim=dim)
    positive = squared > 0
    safe = torch.where(positive, squared, torch.ones_like(squared))
    return torch.where(positive, safe.sqrt(), torch.zeros_like(squared))


def mpjpe_loss(pred: torch.Tensor, truth: torch.Tensor, joints: int) -> torch.Tensor:
    """Mean per-joint Euclidean distance over every joint and frame.

    Leading dimensions are averaged too, so a (B, L, 3J) batch gives the
    mean of the per-window losses.
    """
    _check_shapes(pred, truth)
    if pred.shape[-1] != 3 * joints:
        raise InvalidArgument(
            f"pose dimension {pred.shape[-1]} is not 3 x {joints} joints"
        )
    difference = (pred - truth).reshape(*pred.shape[:-1], joints, 3)
    return safe_norm(difference).mean()


def angle_l1_loss(pred: torch.Tensor, truth: torch.Tensor) -> torch.Tensor:
    _check_shapes(pred, truth)
    return (pred - truth).abs().mean()
