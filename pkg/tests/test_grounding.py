"""Tests for the spatial discretizations and canonical vocabulary."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pedvqa.errors import ValidationError
from pedvqa.grounding import (
    BAND_ORDER,
    COMPASS_ORDER,
    ZONE_ORDER,
    AngularZone,
    DistanceBand,
    GroundingConfig,
    Heading,
    azimuth_deg,
    canonical_vocabulary,
    classify_angular_zone,
    classify_distance_band,
    classify_heading,
    heading_from_azimuth_deg,
    render_heading_phrase,
    render_position_phrase,
)

CFG = GroundingConfig()


def brute_force_heading(east: float, north: float) -> Heading:
    """Independent oracle: nearest compass unit vector by dot product,
    ties broken clockwise (the sector one step further round the dial)."""
    dots = []
    for k, h in enumerate(COMPASS_ORDER):
        ang = math.radians(45.0 * k)
        dots.append((east * math.sin(ang) + north * math.cos(ang), k, h))
    best = max(d for d, _, _ in dots)
    winners = [(k, h) for d, k, h in dots if d == best]
    if len(winners) == 1:
        return winners[0][1]
    # Exact tie between adjacent sectors: clockwise = higher index mod 8.
    ks = sorted(k for k, _ in winners)
    if ks == [0, 7]:
        return COMPASS_ORDER[0]
    return COMPASS_ORDER[ks[-1]]


class TestAngularZone:
    def test_midpoint_is_central_zone(self):
        assert classify_angular_zone(320, 640, CFG) is AngularZone.DIRECTLY_FRONT

    def test_lower_edge_belongs_to_upper_zone(self):
        # u = 0.20 exactly: half-open boundary goes to SLIGHTLY_LEFT
        assert classify_angular_zone(0.2 * 640, 640, CFG) is AngularZone.SLIGHTLY_LEFT

    def test_far_right(self):
        assert classify_angular_zone(0.95 * 640, 640, CFG) is AngularZone.ON_RIGHT

    def test_right_edge_closed(self):
        assert classify_angular_zone(640, 640, CFG) is AngularZone.ON_RIGHT

    def test_left_edge(self):
        assert classify_angular_zone(0, 640, CFG) is AngularZone.ON_LEFT

    def test_out_of_range_center_names_field(self):
        with pytest.raises(ValidationError) as ei:
            classify_angular_zone(700, 640, CFG)
        assert ei.value.field == "center_x_px"

    def test_bad_width_names_field(self):
        with pytest.raises(ValidationError) as ei:
            classify_angular_zone(10, 0, CFG)
        assert ei.value.field == "image_width_px"

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_partition_totality(self, u):
        zone = classify_angular_zone(u * 1000.0, 1000.0, CFG)
        assert zone in ZONE_ORDER

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_mirror_symmetry_on_interior_points(self, u):
        bounds = (0.0,) + CFG.zone_boundaries + (1.0,)
        if any(math.isclose(u, b, abs_tol=1e-9) for b in bounds):
            return
        if any(math.isclose(1.0 - u, b, abs_tol=1e-9) for b in bounds):
            return
        left = classify_angular_zone(u * 1000.0, 1000.0, CFG)
        right = classify_angular_zone((1.0 - u) * 1000.0, 1000.0, CFG)
        assert right is left.mirrored


class TestDistanceBand:
    @pytest.mark.parametrize(
        "range_m,expected",
        [
            (2.0, DistanceBand.VERY_CLOSE),
            (6.0, DistanceBand.MODERATE),  # half-open: 6 belongs to 6-9
            (13.7, DistanceBand.VERY_FAR),
            (0.0, DistanceBand.VERY_CLOSE),
            (3.0, DistanceBand.CLOSE),
            (11.999, DistanceBand.FAR),
            (12.0, DistanceBand.VERY_FAR),
        ],
    )
    def test_band_examples(self, range_m, expected):
        assert classify_distance_band(range_m, CFG) is expected

    def test_negative_range_rejected(self):
        with pytest.raises(ValidationError):
            classify_distance_band(-0.1, CFG)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            classify_distance_band(float("nan"), CFG)
        with pytest.raises(ValidationError):
            classify_distance_band(float("inf"), CFG)

    @given(st.floats(min_value=0.0, max_value=1e6, allow_nan=False))
    def test_partition_totality(self, r):
        assert classify_distance_band(r, CFG) in BAND_ORDER


class TestHeading:
    def test_forward_is_north(self):
        assert classify_heading((0.0, 1.2), CFG) is Heading.N

    def test_exact_45_is_northeast(self):
        assert classify_heading((0.85, 0.85), CFG) is Heading.NE

    def test_slow_motion_is_stationary(self):
        # speed ~0.071 < 0.2 default threshold
        assert classify_heading((0.05, 0.05), CFG) is Heading.STATIONARY

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            classify_heading((float("nan"), 1.0), CFG)

    @pytest.mark.parametrize(
        "theta,expected",
        [
            (0.0, Heading.N),
            (22.5, Heading.NE),  # boundary resolves clockwise
            (44.9, Heading.NE),
            (67.5, Heading.E),
            (180.0, Heading.S),
            (202.5, Heading.SW),
            (337.5, Heading.N),  # NW|N boundary wraps clockwise to N
            (359.9, Heading.N),
        ],
    )
    def test_sector_boundaries(self, theta, expected):
        assert heading_from_azimuth_deg(theta) is expected

    @given(
        st.floats(min_value=0.0, max_value=359.999),
        st.floats(min_value=1.0, max_value=10.0),
    )
    def test_scale_invariance(self, theta, k):
        v = (math.sin(math.radians(theta)), math.cos(math.radians(theta)))
        scaled = (k * v[0], k * v[1])
        assert classify_heading(v, CFG) is classify_heading(scaled, CFG)

    def test_rotation_coherence_10k(self):
        # Rotating any non-stationary velocity by +45 degrees of azimuth
        # advances the heading exactly one clockwise compass step.
        rng = random.Random(20260808)
        c, s = math.cos(math.radians(45.0)), math.sin(math.radians(45.0))
        for _ in range(10_000):
            theta = rng.uniform(0.0, 360.0)
            speed = rng.uniform(0.3, 3.0)
            e = speed * math.sin(math.radians(theta))
            n = speed * math.cos(math.radians(theta))
            rotated = (e * c + n * s, -e * s + n * c)
            before = classify_heading((e, n), CFG)
            after = classify_heading(rotated, CFG)
            assert after is before.rotated(+1)

    def test_oracle_equivalence_10k(self):
        rng = random.Random(987654)
        for _ in range(10_000):
            e = rng.uniform(-5.0, 5.0)
            n = rng.uniform(-5.0, 5.0)
            if math.hypot(e, n) < CFG.stationary_speed_mps:
                continue
            assert classify_heading((e, n), CFG) is brute_force_heading(e, n)

    def test_rotated_wraps_and_fixes_stationary(self):
        assert Heading.NW.rotated(1) is Heading.N
        assert Heading.N.rotated(-1) is Heading.NW
        assert Heading.STATIONARY.rotated(3) is Heading.STATIONARY


class TestPhrases:
    def test_paper_example_sentence(self):
        assert (
            render_position_phrase(AngularZone.SLIGHTLY_LEFT, DistanceBand.MODERATE)
            == "slightly to the left of the robot at a moderate distance"
        )

    def test_front_very_close(self):
        assert (
            render_position_phrase(AngularZone.DIRECTLY_FRONT, DistanceBand.VERY_CLOSE)
            == "directly in front of the robot at a very close distance"
        )

    def test_right_very_far(self):
        assert (
            render_position_phrase(AngularZone.ON_RIGHT, DistanceBand.VERY_FAR)
            == "on the right of the robot at a very far distance"
        )

    def test_heading_phrases(self):
        assert render_heading_phrase(Heading.W) == "moving towards west"
        assert render_heading_phrase(Heading.STATIONARY) == "stationary"

    def test_phrases_deterministic(self):
        for z in ZONE_ORDER:
            for b in BAND_ORDER:
                assert render_position_phrase(z, b) == render_position_phrase(z, b)


class TestVocabulary:
    def test_category_sizes(self):
        vocab = canonical_vocabulary()
        assert len(vocab["zone"]) == 5
        assert len(vocab["distance"]) == 5
        assert len(vocab["direction"]) == 9

    def test_direction_aliases_share_label(self):
        vocab = canonical_vocabulary()
        ne = [t for t in vocab["direction"] if t.label is Heading.NE]
        assert len(ne) == 1
        assert "northeast" in ne[0].keywords
        assert "NE" in ne[0].keywords

    def test_stable_ordering(self):
        a = canonical_vocabulary()
        b = canonical_vocabulary()
        for cat in a:
            assert [t.label for t in a[cat]] == [t.label for t in b[cat]]


class TestConfig:
    def test_bad_boundaries_rejected(self):
        with pytest.raises(ValidationError):
            GroundingConfig(zone_boundaries=(0.4, 0.2, 0.6, 0.8))
        with pytest.raises(ValidationError):
            GroundingConfig(zone_boundaries=(0.0, 0.2, 0.6, 0.8))

    def test_bad_edges_rejected(self):
        with pytest.raises(ValidationError):
            GroundingConfig(band_edges_m=(3.0, 3.0, 9.0, 12.0))

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValidationError):
            GroundingConfig(stationary_speed_mps=-0.1)

    def test_custom_boundaries_respected(self):
        cfg = GroundingConfig(zone_boundaries=(0.1, 0.3, 0.7, 0.9))
        assert classify_angular_zone(50, 1000, cfg) is AngularZone.ON_LEFT
        assert classify_angular_zone(500, 1000, cfg) is AngularZone.DIRECTLY_FRONT


def test_azimuth_deg_range():
    assert azimuth_deg(0.0, 1.0) == 0.0
    assert azimuth_deg(1.0, 0.0) == 90.0
    assert azimuth_deg(0.0, -1.0) == 180.0
    assert azimuth_deg(-1.0, 0.0) == 270.0
