from motionloom.evaluation.checkpoint import (
    CheckpointManifest,
    ParameterEntry,
    load_checkpoint,
    save_checkpoint,
)
from motionloom.evaluation.evaluate import (
    EvalReport,
    Metric,
    ReportRow,
    evaluate,
    forecaster_method,
    frame_error,
    write_report,
    zero_velocity_method,
)
from motionloom.evaluation.export import export_attention, write_attention_csv
from motionloom.evaluation.horizons import (
    LONG_HORIZONS_MS,
    SHORT_HORIZONS_MS,
    horizon_frames,
)

__all__ = [
    "LONG_HORIZONS_MS",
    "SHORT_HORIZONS_MS",
    "CheckpointManifest",
    "EvalReport",
    "Metric",
    "ParameterEntry",
    "ReportRow",
    "evaluate",
    "export_attention",
    "forecaster_method",
    "frame_error",
    "horizon_frames",
    "load_checkpoint",
    "save_checkpoint",
    "write_attention_csv",
    "write_report",
    "zero_velocity_method",
]
