from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from motionloom.attention import AttentionOutput, AttentionSettings
from motionloom.exceptions import InvalidArgument


def export_attention(
    trace: Sequence[AttentionOutput], settings: AttentionSettings
) -> pd.DataFrame:
    """One row per recursion step, one column per frame.

    Columns are frame indices relative to the first predicted frame (0).
    The score of sub-sequence ``i`` is placed on the last frame of its key
    window; every other frame is 0.
    """
    if not trace:
        raise InvalidArgument("attention trace is empty")
    future, past = settings.FUTURE_WINDOW, settings.PAST_WINDOW
    observed = trace[0].history_length
    columns = np.arange(-observed, (len(trace) - 1) * future)
    table = np.zeros((len(trace), len(columns)))
    for step, output in enumerate(trace):
        if output.history_length != observed + step * future:
            raise InvalidArgument(
                f"step {step} saw {output.history_length} frames, expected "
                f"{observed + step * future}"
            )
        # 0-based frame of key end i + M - 1, shifted so prediction start is 0
        relative = np.arange(len(output.scores)) + past - 1 - observed
        table[step, relative - columns[0]] = output.scores
    return pd.DataFrame(table, columns=columns.tolist())


def write_attention_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, float_format="%.10g")
