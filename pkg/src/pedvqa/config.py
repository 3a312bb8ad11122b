"""Plain-text key/value configuration shared by every stage.

Format: one ``section.key = value`` per line, ``#`` comments, blank lines
ignored. Every key has a default, so an empty or absent file yields the
default toolkit configuration. Unknown keys are rejected so typos fail
loudly.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .grounding import GroundingConfig
from .interaction import InteractionConfig, RobotMotionModel
from .trajectory import TrajectoryConfig


@dataclass(frozen=True)
class ScoringConfig:
    """Keyword-metric settings; partial credit for zones and distance
    bands can be disabled to restrict the 0.5 rule to directions."""

    direction_only_partial_credit: bool = False


@dataclass(frozen=True)
class ToolkitConfig:
    grounding: GroundingConfig = field(default_factory=GroundingConfig)
    trajectory: TrajectoryConfig = field(default_factory=TrajectoryConfig)
    robot: RobotMotionModel = field(default_factory=RobotMotionModel)
    interaction: InteractionConfig = field(default_factory=InteractionConfig)
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    balance_max_min_ratio: float = 3.0
    train_fraction: float = 0.9

    def __post_init__(self):
        if self.balance_max_min_ratio < 1.0:
            raise ValidationError(
                "balance.max_min_ratio must be >= 1", field="balance.max_min_ratio"
            )
        if not (0.0 < self.train_fraction < 1.0):
            raise ValidationError(
                "split.train_fraction must be in (0, 1)", field="split.train_fraction"
            )


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{key}: expected a number, got {raw!r}", field=key)


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{key}: expected an integer, got {raw!r}", field=key)


def _parse_bool(key: str, raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValidationError(f"{key}: expected a boolean, got {raw!r}", field=key)


def _parse_float_list(key: str, raw: str, n: int) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if len(parts) != n:
        raise ValidationError(
            f"{key}: expected {n} comma-separated numbers, got {raw!r}", field=key
        )
    return tuple(_parse_float(key, p) for p in parts)


def parse_config_text(text: str) -> ToolkitConfig:
    """Parse key/value lines into a ToolkitConfig; defaults fill gaps."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValidationError(
                f"config line {lineno}: expected 'key = value', got {line!r}"
            )
        key, _, raw = stripped.partition("=")
        values[key.strip()] = raw.strip()

    g: dict = {}
    t: dict = {}
    r: dict = {}
    i: dict = {}
    s: dict = {}
    top: dict = {}

    handlers = {
        "grounding.zone_boundaries": lambda v: g.__setitem__(
            "zone_boundaries", _parse_float_list("grounding.zone_boundaries", v, 4)
        ),
        "grounding.band_edges_m": lambda v: g.__setitem__(
            "band_edges_m", _parse_float_list("grounding.band_edges_m", v, 4)
        ),
        "grounding.stationary_speed_mps": lambda v: g.__setitem__(
            "stationary_speed_mps", _parse_float("grounding.stationary_speed_mps", v)
        ),
        "trajectory.window_frames": lambda v: t.__setitem__(
            "window_frames", _parse_int("trajectory.window_frames", v)
        ),
        "trajectory.v_stop_mps": lambda v: t.__setitem__(
            "v_stop_mps", _parse_float("trajectory.v_stop_mps", v)
        ),
        "trajectory.v_move_mps": lambda v: t.__setitem__(
            "v_move_mps", _parse_float("trajectory.v_move_mps", v)
        ),
        "trajectory.turn_threshold_deg": lambda v: t.__setitem__(
            "turn_threshold_deg", _parse_float("trajectory.turn_threshold_deg", v)
        ),
        "trajectory.sustain_frames": lambda v: t.__setitem__(
            "sustain_frames", _parse_int("trajectory.sustain_frames", v)
        ),
        "robot.forward_speed_mps": lambda v: r.__setitem__(
            "forward_speed_mps", _parse_float("robot.forward_speed_mps", v)
        ),
        "robot.corridor_half_width_m": lambda v: r.__setitem__(
            "corridor_half_width_m", _parse_float("robot.corridor_half_width_m", v)
        ),
        "interaction.conflict_distance_m": lambda v: i.__setitem__(
            "conflict_distance_m", _parse_float("interaction.conflict_distance_m", v)
        ),
        "interaction.horizon_s": lambda v: i.__setitem__(
            "horizon_s", _parse_float("interaction.horizon_s", v)
        ),
        "interaction.passby_lateral_max_m": lambda v: i.__setitem__(
            "passby_lateral_max_m",
            _parse_float("interaction.passby_lateral_max_m", v),
        ),
        "scoring.direction_only_partial_credit": lambda v: s.__setitem__(
            "direction_only_partial_credit",
            _parse_bool("scoring.direction_only_partial_credit", v),
        ),
        "balance.max_min_ratio": lambda v: top.__setitem__(
            "balance_max_min_ratio", _parse_float("balance.max_min_ratio", v)
        ),
        "split.train_fraction": lambda v: top.__setitem__(
            "train_fraction", _parse_float("split.train_fraction", v)
        ),
    }

    for key, raw in values.items():
        if key not in handlers:
            raise ValidationError(f"unknown config key {key!r}", field=key)
        handlers[key](raw)

    return ToolkitConfig(
        grounding=GroundingConfig(**g),
        trajectory=TrajectoryConfig(**t),
        robot=RobotMotionModel(**r),
        interaction=InteractionConfig(**i),
        scoring=ScoringConfig(**s),
        **top,
    )


def load_config(path: str | Path | None) -> ToolkitConfig:
    """Load a config file; None or a missing file yields all defaults."""
    if path is None:
        return ToolkitConfig()
    p = Path(path)
    if not p.exists():
        return ToolkitConfig()
    return parse_config_text(p.read_text(encoding="utf-8"))


def dump_config(cfg: ToolkitConfig) -> str:
    """Canonical text rendering; stable input for hashing."""
    lines = [
        f"grounding.zone_boundaries = "
        f"{','.join(repr(b) for b in cfg.grounding.zone_boundaries)}",
        f"grounding.band_edges_m = "
        f"{','.join(repr(e) for e in cfg.grounding.band_edges_m)}",
        f"grounding.stationary_speed_mps = {cfg.grounding.stationary_speed_mps!r}",
        f"trajectory.window_frames = {cfg.trajectory.window_frames}",
        f"trajectory.v_stop_mps = {cfg.trajectory.v_stop_mps!r}",
        f"trajectory.v_move_mps = {cfg.trajectory.v_move_mps!r}",
        f"trajectory.turn_threshold_deg = {cfg.trajectory.turn_threshold_deg!r}",
        f"trajectory.sustain_frames = {cfg.trajectory.sustain_frames}",
        f"robot.forward_speed_mps = {cfg.robot.forward_speed_mps!r}",
        f"robot.corridor_half_width_m = {cfg.robot.corridor_half_width_m!r}",
        f"interaction.conflict_distance_m = {cfg.interaction.conflict_distance_m!r}",
        f"interaction.horizon_s = {cfg.interaction.horizon_s!r}",
        f"interaction.passby_lateral_max_m = "
        f"{cfg.interaction.passby_lateral_max_m!r}",
        f"scoring.direction_only_partial_credit = "
        f"{str(cfg.scoring.direction_only_partial_credit).lower()}",
        f"balance.max_min_ratio = {cfg.balance_max_min_ratio!r}",
        f"split.train_fraction = {cfg.train_fraction!r}",
    ]
    return "\n".join(lines) + "\n"


def config_hash(cfg: ToolkitConfig) -> str:
    """sha256 of the canonical dump; recorded in emitted corpora."""
    return hashlib.sha256(dump_config(cfg).encode("utf-8")).hexdigest()
