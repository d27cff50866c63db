"""Deterministic simulator of the capture trigger / lighting controller.

Models the alternating-light timing chart at the phase level: one record per
camera trigger, lights toggling once per trigger. Phase convention: trigger
index 0 is the regular-light (or UV-off) phase.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import LightKind
from .errors import InvalidArgumentError

__all__ = ["ControllerMode", "ControllerConfig", "ControlSignals", "schedule", "expected_light"]


class ControllerMode(enum.Enum):
    DARK_ROOM = "dark"  # alternate regular / UV
    AMBIENT_BLINK = "ambient"  # blink UV only, regular light always off


@dataclass(frozen=True)
class ControllerConfig:
    camera_rate_hz: float
    regular_intensity: float = 1.0
    uv_intensity: float = 1.0
    mode: ControllerMode = ControllerMode.DARK_ROOM
    # LEDs need rise time before exposure; the chart does not quantify it.
    settle_delay_ms: float = 1.0

    def __post_init__(self):
        if self.camera_rate_hz <= 0:
            raise InvalidArgumentError("camera_rate must be > 0")
        for name in ("regular_intensity", "uv_intensity"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise InvalidArgumentError(f"{name} must be in [0, 1]")
        if self.settle_delay_ms < 0:
            raise InvalidArgumentError("settle_delay_ms must be >= 0")


@dataclass(frozen=True)
class ControlSignals:
    t_ms: float
    regular_on: bool
    uv_on: bool
    camera_trigger: bool


def expected_light(cfg: ControllerConfig, trigger_index: int) -> LightKind:
    """Lighting phase active at a trigger. Even indices are regular / UV-off."""
    if trigger_index < 0:
        raise InvalidArgumentError("trigger_index must be >= 0")
    return LightKind.REGULAR if trigger_index % 2 == 0 else LightKind.UV


def schedule(cfg: ControllerConfig, duration_ms: float) -> list[ControlSignals]:
    """Signal schedule over a capture run; only complete phases are emitted."""
    if duration_ms <= 0:
        raise InvalidArgumentError("duration must be > 0")
    period_ms = 1000.0 / cfg.camera_rate_hz
    # triggers whose full phase fits; epsilon guards the exact-multiple case
    n = int(duration_ms * cfg.camera_rate_hz / 1000.0 + 1e-9)
    out = []
    for i in range(n):
        uv_phase = i % 2 == 1
        if cfg.mode is ControllerMode.DARK_ROOM:
            regular_on = (not uv_phase) and cfg.regular_intensity > 0
        else:
            regular_on = False
        uv_on = uv_phase and cfg.uv_intensity > 0
        out.append(ControlSignals(t_ms=i * period_ms, regular_on=regular_on,
                                  uv_on=uv_on, camera_trigger=True))
    return out


def schedule_csv_lines(signals: list[ControlSignals]) -> list[str]:
    """Render a schedule as `t_ms,regular,uv,trigger` records."""
    return [
        f"{s.t_ms:.3f},{int(s.regular_on)},{int(s.uv_on)},{int(s.camera_trigger)}"
        for s in signals
    ]
