"""JSONL sample replay: one object per line, optional header line.

Line format: ``{"t": <int ms>, "ch": "breath"|"ppg", "v": <float>}``.
Optional first line: ``{"hdr": true, "breath_hz": 25, "ppg_hz": 50}``.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .types import BREATH_HZ, CHANNELS, PPG_HZ, SensorSample


class ReplayFormatError(ValueError):
    """Malformed replay line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ReplayNormalizationWarning(UserWarning):
    """A non-monotone timestamp was re-stamped to prev+1 ms."""


@dataclass(frozen=True)
class ReplayHeader:
    breath_hz: float = BREATH_HZ
    ppg_hz: float = PPG_HZ


def read_header(path) -> ReplayHeader:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
    if first:
        try:
            obj = json.loads(first)
        except json.JSONDecodeError:
            return ReplayHeader()
        if isinstance(obj, dict) and obj.get("hdr"):
            return ReplayHeader(
                breath_hz=float(obj.get("breath_hz", BREATH_HZ)),
                ppg_hz=float(obj.get("ppg_hz", PPG_HZ)),
            )
    return ReplayHeader()


def _parse_line(line_no: int, line: str) -> SensorSample:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ReplayFormatError(line_no, f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ReplayFormatError(line_no, "expected a JSON object")
    try:
        t, ch, v = obj["t"], obj["ch"], obj["v"]
    except KeyError as exc:
        raise ReplayFormatError(line_no, f"missing key {exc.args[0]!r}") from exc
    if not isinstance(t, int) or t < 0:
        raise ReplayFormatError(line_no, f"bad timestamp {t!r}")
    if ch not in CHANNELS:
        raise ReplayFormatError(line_no, f"unknown channel {ch!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ReplayFormatError(line_no, "non-finite value")
    return SensorSample(t=t, channel=ch, value=v)


def iter_replay(path) -> Iterator[SensorSample]:
    """Parse a replay file in file order, normalizing per-channel timestamps.

    A timestamp that does not strictly increase within its channel is
    re-stamped to prev+1 ms with a ReplayNormalizationWarning.
    """
    last: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line_no == 1:
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    obj = None
                if isinstance(obj, dict) and obj.get("hdr"):
                    continue
            sample = _parse_line(line_no, line)
            prev = last.get(sample.channel)
            if prev is not None and sample.t <= prev:
                restamped = prev + 1
                warnings.warn(
                    f"line {line_no}: non-monotone t={sample.t} on {sample.channel}, "
                    f"re-stamped to {restamped}",
                    ReplayNormalizationWarning,
                    stacklevel=2,
                )
                sample = SensorSample(t=restamped, channel=sample.channel, value=sample.value)
            last[sample.channel] = sample.t
            yield sample


def open_replay(path, speed: float = 0.0) -> Iterator[SensorSample]:
    """Yield samples in timestamp order; pace to wall-clock when speed > 0.

    speed=0 means as fast as possible (batch mode); speed=1 real time;
    speed=2 twice real time.
    """
    if speed < 0:
        raise ValueError("speed must be >= 0")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    samples = sorted(iter_replay(path), key=lambda s: (s.t, s.channel))
    if speed == 0:
        yield from samples
        return
    start_wall = time.monotonic()
    t0 = samples[0].t if samples else 0
    for sample in samples:
        due = (sample.t - t0) / 1000.0 / speed
        delay = due - (time.monotonic() - start_wall)
        if delay > 0:
            time.sleep(delay)
        yield sample


def write_replay(path, samples: Iterable[SensorSample], header: ReplayHeader | None = None) -> int:
    """Serialize samples as JSONL; returns the number of sample lines."""
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(
                json.dumps(
                    {"hdr": True, "breath_hz": header.breath_hz, "ppg_hz": header.ppg_hz}
                )
                + "\n"
            )
        for s in samples:
            fh.write(json.dumps({"t": s.t, "ch": s.channel, "v": s.value}) + "\n")
            n += 1
    return n
