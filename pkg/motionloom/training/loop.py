import logging
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path
from statistics import fmean

import logfire
import numpy as np
import pandas as pd
import torch
from pydantic import BaseModel, ConfigDict
from torch.func import functional_call

from motionloom.exceptions import InvalidArgument, NumericFailure
from motionloom.model import Forecaster, ModelSettings
from motionloom.training.backward import backward
from motionloom.training.losses import angle_l1_loss, mpjpe_loss
from motionloom.training.optim import adam_step, init_state, lr_schedule
from motionloom.training.settings import LossKind, TrainSettings

logger = logging.getLogger(__name__)

Windows = Sequence[np.ndarray] | np.ndarray | torch.Tensor


class EpochRecord(BaseModel):
    epoch: int
    lr: float
    train_loss: float
    val_loss: float | None = None


class TrainResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    forecaster: Forecaster
    log: list[EpochRecord]
    best_epoch: int

    @property
    def final_loss(self) -> float:
        return self.log[-1].train_loss


def split_window(
    window: torch.Tensor, settings: ModelSettings
) -> tuple[torch.Tensor, torch.Tensor]:
    """History is every frame but the last T; the target is the last M+T
    frames, i.e. the padded query window plus its future."""
    length = window.shape[-2]
    future = settings.FUTURE_WINDOW
    required = settings.SEGMENT_LENGTH + future
    if length < required:
        raise InvalidArgument(
            f"training windows need at least {required} frames, got {length}"
        )
    history = window[..., : length - future, :]
    return history, window[..., -settings.SEGMENT_LENGTH :, :]


def _stack(windows: Windows) -> torch.Tensor:
    if isinstance(windows, torch.Tensor):
        data = windows.detach().to(torch.float64)
    else:
        if len(windows) == 0:
            raise InvalidArgument("no training windows")
        data = torch.from_numpy(np.stack([np.asarray(w) for w in windows]))
    if data.ndim != 3 or data.shape[0] == 0:
        raise InvalidArgument(
            f"windows must stack to (count, frames, K), got {tuple(data.shape)}"
        )
    return data.to(torch.float64)


def window_loss(
    forecaster: Forecaster,
    windows: torch.Tensor,
    kind: LossKind,
    params: Mapping[str, torch.Tensor] | None = None,
) -> torch.Tensor:
    """Loss over the M+T frame reconstruction of a batch of windows,
    optionally evaluated with substitute ``params``."""
    history, target = split_window(windows, forecaster.settings)
    if params is None:
        batch = forecaster.forward_batch(history)
    else:
        batch = functional_call(forecaster, dict(params), (history,))
    reconstruction = batch.reconstruction
    match kind:
        case LossKind.MPJPE3D:
            if forecaster.pose_dim % 3:
                raise InvalidArgument(
                    f"mpjpe needs K divisible by 3, got {forecaster.pose_dim}"
                )
            return mpjpe_loss(reconstruction, target, forecaster.pose_dim // 3)
        case LossKind.ANGLE_L1:
            return angle_l1_loss(reconstruction, target)


def validation_loss(
    forecaster: Forecaster, windows: torch.Tensor, settings: TrainSettings
) -> float:
    was_training = forecaster.training
    forecaster.eval()
    try:
        with torch.no_grad():
            losses = [
                float(window_loss(forecaster, batch, settings.LOSS_KIND))
                for batch in windows.split(settings.BATCH_SIZE)
            ]
    finally:
        forecaster.train(was_training)
    return fmean(losses)


def train(
    windows: Windows,
    forecaster: Forecaster,
    settings: TrainSettings,
    validation: Windows | None = None,
) -> TrainResult:
    """Shuffled mini-batch Adam over ``settings.EPOCHS`` epochs.

    With validation windows the parameters of the epoch with the lowest
    validation loss are restored at the end.
    """
    data = _stack(windows)
    held_out = _stack(validation) if validation is not None else None
    generator = torch.Generator().manual_seed(settings.SEED)
    torch.manual_seed(settings.SEED)

    params = {k: v.detach().clone() for k, v in forecaster.named_parameters()}
    state = init_state(params)
    log: list[EpochRecord] = []
    best: tuple[float, int, dict[str, torch.Tensor]] | None = None

    forecaster.train()
    for epoch in range(1, settings.EPOCHS + 1):
        lr = lr_schedule(epoch, settings)
        with logfire.span("training epoch {epoch}", epoch=epoch, lr=lr):
            order = torch.randperm(data.shape[0], generator=generator)
            batch_losses: list[float] = []
            for batch, indices in enumerate(order.split(settings.BATCH_SIZE)):
                try:
                    loss = window_loss(forecaster, data[indices], settings.LOSS_KIND)
                    if not torch.isfinite(loss):
                        logger.error(
                            "non-finite loss at epoch %d batch %d", epoch, batch
                        )
                        raise NumericFailure("loss")
                    grads = backward(loss, forecaster)
                except NumericFailure as exc:
                    raise NumericFailure(
                        f"{exc.where} at epoch {epoch}, batch {batch}"
                    ) from exc
                params, state = adam_step(params, grads, state, lr, settings)
                with torch.no_grad():
                    for name, param in forecaster.named_parameters():
                        param.copy_(params[name])
                batch_losses.append(loss.item())
                logger.debug(
                    "epoch %d batch %d loss %.6f",
                    epoch,
                    batch,
                    batch_losses[-1],
                    extra={"batch": batch},
                )

            record = EpochRecord(
                epoch=epoch,
                lr=lr,
                train_loss=fmean(batch_losses),
                val_loss=(
                    validation_loss(forecaster, held_out, settings)
                    if held_out is not None
                    else None
                ),
            )
        log.append(record)
        logger.info(
            "epoch %d lr %.3e train %.6f%s",
            epoch,
            lr,
            record.train_loss,
            "" if record.val_loss is None else f" val {record.val_loss:.6f}",
        )
        if record.val_loss is not None and (
            best is None or record.val_loss < best[0]
        ):
            best = (
                record.val_loss,
                epoch,
                {k: v.detach().clone() for k, v in params.items()},
            )

    best_epoch = settings.EPOCHS
    if best is not None:
        _, best_epoch, best_params = best
        with torch.no_grad():
            for name, param in forecaster.named_parameters():
                param.copy_(best_params[name])
        logger.info("restored parameters from epoch %d", best_epoch)
    forecaster.eval()
    return TrainResult(forecaster=forecaster, log=log, best_epoch=best_epoch)


def write_loss_log(log: Sequence[EpochRecord], path: Path) -> None:
    frame = pd.DataFrame([record.model_dump() for record in log])
    if frame.empty or frame["val_loss"].isna().all():
        frame = frame.drop(columns="val_loss", errors="ignore")
    frame.to_csv(path, index=False, float_format="%.10g")


def parameter_loss(
    forecaster: Forecaster, windows: Windows, kind: LossKind
) -> Callable[[Mapping[str, torch.Tensor]], torch.Tensor]:
    """The training loss as a function of a name -> tensor parameter map,
    for finite-difference checks."""
    data = _stack(windows)

    def loss_fn(params: Mapping[str, torch.Tensor]) -> torch.Tensor:
        return window_loss(forecaster, data, kind, params)

    return loss_fn
