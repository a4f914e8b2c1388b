from collections.abc import Iterable
from fractions import Fraction

from motionloom.exceptions import InvalidArgument

SHORT_HORIZONS_MS = (80, 160, 320, 400)
LONG_HORIZONS_MS = (560, 720, 880, 1000)


def horizon_frames(ms_list: Iterable[int], fps: float = 25) -> list[int]:
    """Frame index ``ms * fps / 1000`` of each horizon, in exact arithmetic."""
    rate = Fraction(fps)
    frames: list[int] = []
    for ms in ms_list:
        frame = Fraction(ms) * rate / 1000
        if ms <= 0 or frame.denominator != 1:
            raise InvalidArgument(
                f"{ms} ms is not a positive multiple of the "
                f"{float(1000 / rate):g} ms frame duration"
            )
        frames.append(int(frame))
    return frames
