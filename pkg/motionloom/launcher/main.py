import logging
from collections.abc import Sequence
from pathlib import Path

import click
import numpy as np
import orjson
import torch
from pydantic import ValidationError

from motionloom.data import SyntheticSpec, gen_synthetic, save_sequence
from motionloom.evaluation import (
    LONG_HORIZONS_MS,
    SHORT_HORIZONS_MS,
    Metric,
    evaluate,
    export_attention,
    forecaster_method,
    horizon_frames,
    load_checkpoint,
    save_checkpoint,
    write_attention_csv,
    write_report,
    zero_velocity_method,
)
from motionloom.evaluation.evaluate import (
    FRAME_WISE_COLUMN,
    PRIMARY_COLUMN,
    ZERO_VELOCITY_COLUMN,
    Predictor,
)
from motionloom.exceptions import (
    FileAccessError,
    InvalidArgument,
    MotionLoomException,
    NumericFailure,
)
from motionloom.launcher.utils import load_resampled, load_windows
from motionloom.logging.lifehooks import setup_logging
from motionloom.model import Forecaster, ModelSettings, tiny_model_settings
from motionloom.monitoring import InitMonitoring
from motionloom.numerics import check_gradients
from motionloom.settings.general import Settings
from motionloom.settings.utils import load_settings
from motionloom.training import (
    LossKind,
    TrainSettings,
    parameter_loss,
    train as train_forecaster,
    write_loss_log,
)

logger = logging.getLogger(__name__)

EXISTING_FILE = click.Path(
    exists=True, dir_okay=False, path_type=Path
)
EXISTING_DIR = click.Path(exists=True, file_okay=False, path_type=Path)
OUTPUT_PATH = click.Path(path_type=Path)
GRADCHECK_JOINTS = 2


def _settings(ctx: click.Context) -> Settings:
    return ctx.ensure_object(Settings)


def _parse_horizons(
    ctx: click.Context, param: click.Parameter, value: str
) -> list[int]:
    try:
        horizons = [int(token) for token in value.split(",") if token.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"not a comma-separated list: {value}") from exc
    if not horizons:
        raise click.BadParameter("at least one horizon is required")
    return horizons


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    type=EXISTING_FILE,
    default=None,
    help="Flat JSON or YAML settings document.",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
)
@click.pass_context
def cli(ctx: click.Context, config: Path | None, log_level: str | None):
    """Attention-based human motion forecasting."""
    settings = load_settings(
        Settings, config, LOG_LEVEL=log_level.upper() if log_level else None
    )
    setup_logging(settings)
    ctx.obj = settings
    ctx.with_resource(InitMonitoring(settings))


@cli.command()
@click.option("--spec", "spec_path", type=EXISTING_FILE, default=None)
@click.option("--out", "out_dir", type=OUTPUT_PATH, required=True)
@click.option("--count", type=click.IntRange(min=1), default=1)
@click.option("--seed", type=click.IntRange(min=0), default=None)
@click.pass_context
def synth(
    ctx: click.Context,
    spec_path: Path | None,
    out_dir: Path,
    count: int,
    seed: int | None,
):
    """Write COUNT synthetic sequences, seeded SEED..SEED+COUNT-1.

    Without --spec every file gets its own random sum-of-sines motion.
    """
    spec = (
        SyntheticSpec.model_validate_json(spec_path.read_bytes())
        if spec_path
        else None
    )
    first = seed if seed is not None else (spec.seed if spec else 0)
    out_dir.mkdir(parents=True, exist_ok=True)
    for index in range(count):
        current = first + index
        sequence = gen_synthetic(
            spec or SyntheticSpec.random(seed=current), current
        )
        path = save_sequence(sequence, out_dir / f"synthetic_{current:04d}.seq")
        click.echo(f"{path} {len(sequence)} frames")


@cli.command(name="train")
@click.option("--data", "data_dir", type=EXISTING_DIR, required=True)
@click.option("--out", "out_dir", type=OUTPUT_PATH, required=True)
@click.option("--validation", "validation_dir", type=EXISTING_DIR, default=None)
@click.option("--loss-log", type=OUTPUT_PATH, default=None)
@click.option("--seed", type=click.IntRange(min=0), default=None)
@click.pass_context
def train_command(
    ctx: click.Context,
    data_dir: Path,
    out_dir: Path,
    validation_dir: Path | None,
    loss_log: Path | None,
    seed: int | None,
):
    """Train a forecaster on every sequence file in DATA."""
    settings = _settings(ctx)
    if seed is not None:
        settings = settings.model_copy(update={"SEED": seed})

    def windows_of(directory: Path) -> list[np.ndarray]:
        return [
            window
            for windows in load_windows(
                directory,
                settings.TRAIN_LENGTH,
                settings.WINDOW_STRIDE,
                settings.TARGET_FPS,
            ).values()
            for window in windows
            if len(window) == settings.TRAIN_LENGTH
        ]

    windows = windows_of(data_dir)
    if not windows:
        raise InvalidArgument(
            f"no sequence in {data_dir} has {settings.TRAIN_LENGTH} frames"
        )
    validation = windows_of(validation_dir) if validation_dir else None
    forecaster = Forecaster(
        windows[0].shape[1], settings.section(ModelSettings), settings.SEED
    )
    logger.info(
        "training on %d windows of %d frames", len(windows), settings.TRAIN_LENGTH
    )
    result = train_forecaster(
        windows,
        forecaster,
        settings.section(TrainSettings),
        validation=validation or None,
    )
    save_checkpoint(result.forecaster, out_dir, epoch=result.best_epoch)
    write_loss_log(result.log, loss_log or out_dir / "loss.csv")
    click.echo(
        f"epoch {result.best_epoch} train_loss {result.final_loss:.6f} -> {out_dir}"
    )


@cli.command()
@click.option("--checkpoint", type=EXISTING_DIR, required=True)
@click.option("--sequence", "sequence_path", type=EXISTING_FILE, required=True)
@click.option("--steps", type=click.IntRange(min=1), default=1)
@click.option("--out", "out_path", type=OUTPUT_PATH, required=True)
@click.option("--attention", "attention_path", type=OUTPUT_PATH, default=None)
@click.pass_context
def predict(
    ctx: click.Context,
    checkpoint: Path,
    sequence_path: Path,
    steps: int,
    out_path: Path,
    attention_path: Path | None,
):
    """Forecast STEPS x T frames after the end of SEQUENCE."""
    settings = _settings(ctx)
    forecaster, _ = load_checkpoint(checkpoint)
    history = load_resampled(sequence_path, settings.TARGET_FPS)
    result = forecaster.predict_recursive(history, steps)
    save_sequence(history.with_frames(result.frames), out_path)
    attention_path = attention_path or out_path.with_suffix(".attention.csv")
    write_attention_csv(
        export_attention(result.trace, forecaster.settings), attention_path
    )
    click.echo(f"{out_path} {len(result.frames)} frames, attention {attention_path}")


@cli.command(name="eval")
@click.option("--checkpoint", type=EXISTING_DIR, default=None)
@click.option("--test-dir", type=EXISTING_DIR, required=True)
@click.option(
    "--horizons",
    default=",".join(map(str, SHORT_HORIZONS_MS + LONG_HORIZONS_MS)),
    callback=_parse_horizons,
    help="Comma-separated horizons in milliseconds.",
)
@click.option(
    "--metric",
    type=click.Choice([m.value for m in Metric]),
    default=Metric.POSITION.value,
)
@click.option(
    "--baseline",
    type=click.Choice(["zero-velocity"]),
    default=None,
    help="Add a baseline column; alone it becomes the primary column.",
)
@click.option(
    "--frame-wise",
    "frame_wise_checkpoint",
    type=EXISTING_DIR,
    default=None,
    help="Checkpoint of the frame-wise attention variant.",
)
@click.option("--out", "out_path", type=OUTPUT_PATH, required=True)
@click.pass_context
def eval_command(
    ctx: click.Context,
    checkpoint: Path | None,
    test_dir: Path,
    horizons: list[int],
    metric: str,
    baseline: str | None,
    frame_wise_checkpoint: Path | None,
    out_path: Path,
):
    """Per-horizon error report over every sequence file in TEST_DIR."""
    settings = _settings(ctx)
    methods: dict[str, Predictor] = {}
    history_length = settings.history_length
    if checkpoint is not None:
        forecaster, _ = load_checkpoint(checkpoint)
        methods[PRIMARY_COLUMN] = forecaster_method(forecaster)
        history_length = (
            settings.TRAIN_LENGTH - forecaster.settings.FUTURE_WINDOW
        )
    if baseline is not None:
        methods[
            ZERO_VELOCITY_COLUMN if methods else PRIMARY_COLUMN
        ] = zero_velocity_method
    if frame_wise_checkpoint is not None:
        frame_wise, _ = load_checkpoint(frame_wise_checkpoint)
        methods[FRAME_WISE_COLUMN if methods else PRIMARY_COLUMN] = (
            forecaster_method(frame_wise)
        )
    if not methods:
        raise click.UsageError("give --checkpoint, --baseline or --frame-wise")

    future = max(horizon_frames(horizons, settings.TARGET_FPS))
    report = evaluate(
        methods,
        load_windows(
            test_dir,
            history_length + future,
            settings.EVAL_STRIDE,
            settings.TARGET_FPS,
        ),
        horizons,
        history_length,
        Metric(metric),
        settings.TARGET_FPS,
    )
    write_report(report, out_path)
    click.echo(
        f"{out_path} {report.windows} windows, {report.skipped} skipped"
    )


@cli.command()
@click.option("--seed", type=click.IntRange(min=0), default=0)
@click.option("--step", type=float, default=1e-6, show_default=True)
@click.option("--tolerance", type=float, default=1e-4, show_default=True)
@click.pass_context
def gradcheck(ctx: click.Context, seed: int, step: float, tolerance: float):
    """Compare autograd against central differences on a tiny model."""
    model_settings = tiny_model_settings()
    forecaster = Forecaster(3 * GRADCHECK_JOINTS, model_settings, seed)
    generator = torch.Generator().manual_seed(seed)
    length = model_settings.SEGMENT_LENGTH + 2 * model_settings.FUTURE_WINDOW
    windows = torch.randn(
        3, length, 3 * GRADCHECK_JOINTS, generator=generator, dtype=torch.float64
    )
    params = {k: v.detach() for k, v in forecaster.named_parameters()}
    failed = []
    for kind in LossKind:
        report = check_gradients(
            parameter_loss(forecaster, windows, kind), params, step, tolerance
        )
        verdict = "PASS" if report.ok else "FAIL"
        click.echo(
            f"{kind.value}: max relative error {report.worst:.3e} {verdict}"
        )
        if not report.ok:
            failed.append(kind.value)
    if failed:
        raise NumericFailure(f"gradient check for {', '.join(failed)}")
    click.echo("PASS")


def _report(exc: MotionLoomException) -> int:
    logger.debug("command failed", exc_info=exc)
    click.echo(exc.one_line(), err=True)
    return exc.error_code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="motionloom",
            standalone_mode=False,
        )
    except click.UsageError as exc:
        exc.show()
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except MotionLoomException as exc:
        return _report(exc)
    except OSError as exc:
        return _report(
            FileAccessError(str(exc.filename or "-"), exc.strerror or str(exc))
        )
    except ValidationError as exc:
        message = str(exc.errors()[0]["msg"]).replace('"', "'")
        click.echo(f'error=ValidationError message="{message}"', err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
