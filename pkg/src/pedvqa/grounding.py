"""Spatial grounding: the discretizations and controlled vocabulary.

Everything downstream (labeling, linting, scoring) speaks this vocabulary:
five angular zones assigned from the bounding-box center pixel, five
distance bands with edges at 3/6/9/12 m, and eight compass headings plus a
stationary state in a robot-anchored frame where the robot's forward
direction is north and its right side is east.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError


class AngularZone(Enum):
    """Horizontal field-of-view partition, ordered left to right."""

    ON_LEFT = "on_left"
    SLIGHTLY_LEFT = "slightly_left"
    DIRECTLY_FRONT = "directly_front"
    SLIGHTLY_RIGHT = "slightly_right"
    ON_RIGHT = "on_right"

    @property
    def order(self) -> int:
        return ZONE_ORDER.index(self)

    @property
    def mirrored(self) -> "AngularZone":
        """Left-right mirror of this zone."""
        return ZONE_ORDER[len(ZONE_ORDER) - 1 - self.order]


ZONE_ORDER: tuple[AngularZone, ...] = (
    AngularZone.ON_LEFT,
    AngularZone.SLIGHTLY_LEFT,
    AngularZone.DIRECTLY_FRONT,
    AngularZone.SLIGHTLY_RIGHT,
    AngularZone.ON_RIGHT,
)


class DistanceBand(Enum):
    """Metric range bucket, ordered by increasing distance."""

    VERY_CLOSE = "very_close"
    CLOSE = "close"
    MODERATE = "moderate"
    FAR = "far"
    VERY_FAR = "very_far"

    @property
    def order(self) -> int:
        return BAND_ORDER.index(self)


BAND_ORDER: tuple[DistanceBand, ...] = (
    DistanceBand.VERY_CLOSE,
    DistanceBand.CLOSE,
    DistanceBand.MODERATE,
    DistanceBand.FAR,
    DistanceBand.VERY_FAR,
)


class Heading(Enum):
    """Movement direction in the robot frame; forward = north.

    The eight compass members form a cyclic order with 45 degree spacing.
    STATIONARY sits outside the cycle.
    """

    N = "N"
    NE = "NE"
    E = "E"
    SE = "SE"
    S = "S"
    SW = "SW"
    W = "W"
    NW = "NW"
    STATIONARY = "stationary"

    @property
    def is_compass(self) -> bool:
        return self is not Heading.STATIONARY

    @property
    def compass_index(self) -> int:
        """Position in the clockwise compass cycle (N=0 ... NW=7)."""
        if not self.is_compass:
            raise ValidationError("stationary has no compass index", field="heading")
        return COMPASS_ORDER.index(self)

    def rotated(self, steps: int) -> "Heading":
        """Rotate clockwise by ``steps`` compass steps (negative = left).

        STATIONARY is fixed under rotation.
        """
        if not self.is_compass:
            return self
        return COMPASS_ORDER[(self.compass_index + steps) % 8]


COMPASS_ORDER: tuple[Heading, ...] = (
    Heading.N, Heading.NE, Heading.E, Heading.SE,
    Heading.S, Heading.SW, Heading.W, Heading.NW,
)


@dataclass(frozen=True)
class GroundingConfig:
    """Tunable edges of the discretization.

    zone_boundaries are fractions of image width; band edges are meters.
    The frame convention is fixed and recorded here so emitted corpora are
    self-describing.
    """

    zone_boundaries: tuple[float, float, float, float] = (0.2, 0.4, 0.6, 0.8)
    band_edges_m: tuple[float, float, float, float] = (3.0, 6.0, 9.0, 12.0)
    stationary_speed_mps: float = 0.2
    frame_convention: str = "+forward = north, +right = east"

    def __post_init__(self):
        if len(self.zone_boundaries) != 4 or any(
            not (0.0 < b < 1.0) for b in self.zone_boundaries
        ):
            raise ValidationError(
                "zone_boundaries must be 4 fractions in (0, 1)",
                field="zone_boundaries",
            )
        if any(a >= b for a, b in zip(self.zone_boundaries, self.zone_boundaries[1:])):
            raise ValidationError(
                "zone_boundaries must be strictly increasing",
                field="zone_boundaries",
            )
        if len(self.band_edges_m) != 4 or any(e <= 0 for e in self.band_edges_m):
            raise ValidationError(
                "band_edges_m must be 4 positive values", field="band_edges_m"
            )
        if any(a >= b for a, b in zip(self.band_edges_m, self.band_edges_m[1:])):
            raise ValidationError(
                "band_edges_m must be strictly increasing", field="band_edges_m"
            )
        if not math.isfinite(self.stationary_speed_mps) or self.stationary_speed_mps < 0:
            raise ValidationError(
                "stationary_speed_mps must be >= 0", field="stationary_speed_mps"
            )


def classify_angular_zone(
    center_x_px: float, image_width_px: float, cfg: GroundingConfig | None = None
) -> AngularZone:
    """Assign the angular zone from the bbox center's horizontal pixel.

    Intervals are half-open [lo, hi) against cfg.zone_boundaries, with the
    last interval closed at u = 1.
    """
    cfg = cfg or GroundingConfig()
    if not math.isfinite(image_width_px) or image_width_px <= 0:
        raise ValidationError(
            f"image_width_px must be positive, got {image_width_px!r}",
            field="image_width_px",
        )
    if not math.isfinite(center_x_px) or not (0 <= center_x_px <= image_width_px):
        raise ValidationError(
            f"center_x_px must be in [0, {image_width_px}], got {center_x_px!r}",
            field="center_x_px",
        )
    u = center_x_px / image_width_px
    for zone, hi in zip(ZONE_ORDER, cfg.zone_boundaries):
        if u < hi:
            return zone
    return ZONE_ORDER[-1]


def classify_distance_band(
    range_m: float, cfg: GroundingConfig | None = None
) -> DistanceBand:
    """Assign the distance band; bands are half-open [lo, hi)."""
    cfg = cfg or GroundingConfig()
    if not math.isfinite(range_m) or range_m < 0:
        raise ValidationError(
            f"range_m must be finite and >= 0, got {range_m!r}", field="range_m"
        )
    for band, hi in zip(BAND_ORDER, cfg.band_edges_m):
        if range_m < hi:
            return band
    return BAND_ORDER[-1]


def azimuth_deg(east: float, north: float) -> float:
    """Compass azimuth of a vector in degrees, in [0, 360)."""
    deg = math.degrees(math.atan2(east, north))
    return deg + 360.0 if deg < 0 else deg


def heading_from_azimuth_deg(theta_deg: float) -> Heading:
    """Map an azimuth to its 45 degree compass sector.

    Sector boundaries (22.5 mod 45) resolve clockwise, i.e. to the higher
    sector index; round-half-up keeps that deterministic.
    """
    k = math.floor(theta_deg / 45.0 + 0.5) % 8
    return COMPASS_ORDER[k]


def classify_heading(
    velocity_mps: tuple[float, float], cfg: GroundingConfig | None = None
) -> Heading:
    """Classify an (east, north) velocity into a heading.

    Speeds below cfg.stationary_speed_mps are STATIONARY.
    """
    cfg = cfg or GroundingConfig()
    east, north = velocity_mps
    if not (math.isfinite(east) and math.isfinite(north)):
        raise ValidationError(
            f"velocity components must be finite, got {velocity_mps!r}",
            field="velocity_mps",
        )
    if math.hypot(east, north) < cfg.stationary_speed_mps:
        return Heading.STATIONARY
    return heading_from_azimuth_deg(azimuth_deg(east, north))


# Canonical wording. Zone and distance phrases follow the position sentence
# "<zone phrase> of the robot at a <distance phrase> distance".
ZONE_PHRASES: dict[AngularZone, str] = {
    AngularZone.ON_LEFT: "on the left",
    AngularZone.SLIGHTLY_LEFT: "slightly to the left",
    AngularZone.DIRECTLY_FRONT: "directly in front",
    AngularZone.SLIGHTLY_RIGHT: "slightly to the right",
    AngularZone.ON_RIGHT: "on the right",
}

BAND_PHRASES: dict[DistanceBand, str] = {
    DistanceBand.VERY_CLOSE: "very close",
    DistanceBand.CLOSE: "close",
    DistanceBand.MODERATE: "moderate",
    DistanceBand.FAR: "far",
    DistanceBand.VERY_FAR: "very far",
}

DIRECTION_WORDS: dict[Heading, str] = {
    Heading.N: "north",
    Heading.NE: "northeast",
    Heading.E: "east",
    Heading.SE: "southeast",
    Heading.S: "south",
    Heading.SW: "southwest",
    Heading.W: "west",
    Heading.NW: "northwest",
    Heading.STATIONARY: "stationary",
}

# Extra surface forms accepted by the extractor. Abbreviations are matched
# case-sensitively (see evaluation.extract_labels): a case-insensitive
# single-letter "s" would fire on every possessive.
DIRECTION_ALIASES: dict[Heading, tuple[str, ...]] = {
    Heading.N: ("N",),
    Heading.NE: ("north-east", "NE"),
    Heading.E: ("E",),
    Heading.SE: ("south-east", "SE"),
    Heading.S: ("S",),
    Heading.SW: ("south-west", "SW"),
    Heading.W: ("W",),
    Heading.NW: ("north-west", "NW"),
    Heading.STATIONARY: (),
}


@dataclass(frozen=True)
class VocabTerm:
    """One canonical label with every surface form the extractor accepts.

    keywords[0] is the canonical rendering; the rest are aliases.
    """

    category: str
    label: AngularZone | DistanceBand | Heading
    keywords: tuple[str, ...]


def canonical_vocabulary() -> dict[str, tuple[VocabTerm, ...]]:
    """All canonical labels by category, in stable order.

    Categories: "zone" (5), "distance" (5), "direction" (9, including
    stationary). Direction terms carry both the long word and the compass
    abbreviation as aliases of the same label.
    """
    zones = tuple(
        VocabTerm("zone", z, (ZONE_PHRASES[z],)) for z in ZONE_ORDER
    )
    bands = tuple(
        VocabTerm("distance", b, (BAND_PHRASES[b],)) for b in BAND_ORDER
    )
    directions = tuple(
        VocabTerm("direction", h, (DIRECTION_WORDS[h],) + DIRECTION_ALIASES[h])
        for h in COMPASS_ORDER + (Heading.STATIONARY,)
    )
    return {"zone": zones, "distance": bands, "direction": directions}


def render_position_phrase(zone: AngularZone, band: DistanceBand) -> str:
    """Canonical position phrase for a (zone, band) pair.

    e.g. "slightly to the left of the robot at a moderate distance".
    """
    return f"{ZONE_PHRASES[zone]} of the robot at a {BAND_PHRASES[band]} distance"


def render_heading_phrase(heading: Heading) -> str:
    """Canonical motion phrase: "moving towards west" or "stationary"."""
    if heading is Heading.STATIONARY:
        return "stationary"
    return f"moving towards {DIRECTION_WORDS[heading]}"


@dataclass(frozen=True)
class SpatialDescription:
    """The grounded triple plus its canonical phrases."""

    zone: AngularZone
    band: DistanceBand
    heading: Heading
    position_phrase: str = field(default="")
    heading_phrase: str = field(default="")

    @classmethod
    def from_labels(
        cls, zone: AngularZone, band: DistanceBand, heading: Heading
    ) -> "SpatialDescription":
        return cls(
            zone=zone,
            band=band,
            heading=heading,
            position_phrase=render_position_phrase(zone, band),
            heading_phrase=render_heading_phrase(heading),
        )
