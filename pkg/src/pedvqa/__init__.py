"""pedvqa: pedestrian trajectories to spatially grounded VQA corpora.

The library discretizes pedestrian state into a canonical spatial
vocabulary (angular zones, distance bands, compass headings), labels
movement patterns and robot interactions from short track windows,
renders deterministic VQA conversation records, balances/splits/emits
corpora, scores model text with the keyword metric, and serves an
annotation workbench API for the human round-2 stage.
"""

from .version import __version__

from .grounding import (
    AngularZone,
    DistanceBand,
    GroundingConfig,
    Heading,
    SpatialDescription,
    canonical_vocabulary,
    classify_angular_zone,
    classify_distance_band,
    classify_heading,
    render_position_phrase,
)
from .trajectory import (
    Detection,
    MotionState,
    MovementPattern,
    Track,
    TrajectoryConfig,
    classify_movement_pattern,
    estimate_velocity,
    predict_motion,
    smooth_velocities,
)
from .interaction import (
    InteractionConfig,
    InteractionType,
    RobotMotionModel,
    classify_interaction,
    closest_approach,
    render_interaction_phrase,
)
from .vqa import (
    ConversationRecord,
    ManualAnnotation,
    PedestrianFacts,
    QaTurn,
    RecordMode,
    assemble_record,
    assign_colors,
    build_round1,
    render_system_prompt,
)
from .config import ToolkitConfig, load_config

__all__ = [
    "__version__",
    "AngularZone",
    "DistanceBand",
    "GroundingConfig",
    "Heading",
    "SpatialDescription",
    "canonical_vocabulary",
    "classify_angular_zone",
    "classify_distance_band",
    "classify_heading",
    "render_position_phrase",
    "Detection",
    "MotionState",
    "MovementPattern",
    "Track",
    "TrajectoryConfig",
    "classify_movement_pattern",
    "estimate_velocity",
    "predict_motion",
    "smooth_velocities",
    "InteractionConfig",
    "InteractionType",
    "RobotMotionModel",
    "classify_interaction",
    "closest_approach",
    "render_interaction_phrase",
    "ConversationRecord",
    "ManualAnnotation",
    "PedestrianFacts",
    "QaTurn",
    "RecordMode",
    "assemble_record",
    "assign_colors",
    "build_round1",
    "render_system_prompt",
    "ToolkitConfig",
    "load_config",
]
