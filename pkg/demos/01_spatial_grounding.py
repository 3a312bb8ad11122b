"""Walk through the spatial vocabulary: zones, bands, headings, phrases.

Run:  python3 demos/01_spatial_grounding.py
"""

from pedvqa.grounding import (
    GroundingConfig,
    canonical_vocabulary,
    classify_angular_zone,
    classify_distance_band,
    classify_heading,
    render_heading_phrase,
    render_position_phrase,
)

cfg = GroundingConfig()

print("== angular zones from bbox center pixel (640 px wide image) ==")
for cx in (40, 200, 320, 420, 610):
    zone = classify_angular_zone(cx, 640, cfg)
    print(f"  center_x={cx:>3}  ->  {zone.name}")

print("\n== distance bands (edges at 3/6/9/12 m) ==")
for r in (1.2, 4.0, 6.0, 10.5, 14.9):
    band = classify_distance_band(r, cfg)
    print(f"  range={r:>5.1f} m  ->  {band.name}")

print("\n== headings from (east, north) velocity; forward = north ==")
for v in [(0.0, 1.3), (1.0, 1.0), (1.3, 0.0), (0.0, -1.3), (-0.9, 0.9),
          (0.04, 0.05)]:
    heading = classify_heading(v, cfg)
    print(f"  v={v}  ->  {heading.name}")

print("\n== canonical phrases ==")
zone = classify_angular_zone(220, 640, cfg)
band = classify_distance_band(7.4, cfg)
heading = classify_heading((-1.1, 0.1), cfg)
print(" ", render_position_phrase(zone, band))
print(" ", render_heading_phrase(heading))

print("\n== full vocabulary ==")
for category, terms in canonical_vocabulary().items():
    words = ", ".join(term.keywords[0] for term in terms)
    print(f"  {category:<9} ({len(terms)}): {words}")
