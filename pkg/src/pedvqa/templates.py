"""Fixed wording for every generated question and answer.

All corpus-visible phrasing lives here so wording changes show up as a
diff of one file and bump TEMPLATE_VERSION. Builders assemble sentences
from these parts only; spatial terms inside them must stay canonical
(tests lint every template).
"""

from __future__ import annotations

from .grounding import DIRECTION_WORDS, GroundingConfig, Heading

TEMPLATE_VERSION = "1"

# --- system prompt -------------------------------------------------------
# The wording is arranged so each of the 19 canonical labels appears
# exactly once (the frame convention is stated without repeating any
# direction word).

SYSTEM_PROMPT_TEMPLATE = (
    "You are the perception module of a mobile robot navigating among "
    "pedestrians. Describe pedestrian positions and motion using only the "
    "canonical spatial vocabulary below.\n"
    "Angular zones, from the robot's left to its right: on the left, "
    "slightly to the left, directly in front, slightly to the right, "
    "on the right.\n"
    "Distance bands: very close (under {e0} m), close ({e0} to {e1} m), "
    "moderate ({e1} to {e2} m), far ({e2} to {e3} m), very far (beyond "
    "{e3} m).\n"
    "Movement directions form a compass anchored to the robot, whose "
    "forward direction is the first point listed: north, northeast, east, "
    "southeast, south, southwest, west, northwest; a pedestrian that is "
    "not moving is stationary."
)


def _fmt_edge(value: float) -> str:
    return f"{value:g}"


def render_system_prompt(cfg: GroundingConfig | None = None) -> str:
    """Expand the system prompt for a grounding config; pure and stable."""
    cfg = cfg or GroundingConfig()
    e0, e1, e2, e3 = (_fmt_edge(e) for e in cfg.band_edges_m)
    return SYSTEM_PROMPT_TEMPLATE.format(e0=e0, e1=e1, e2=e2, e3=e3)


# --- round-1 questions ----------------------------------------------------

QUESTION_FULL = (
    "Describe each pedestrian in the image: where they are relative to "
    "the robot, how they are moving, what they will do next, and how "
    "they interact with the robot's path."
)

QUESTION_PERCEPTION_PREDICTION = (
    "Describe each pedestrian in the image: where they are relative to "
    "the robot, how they are moving, and what they will do next."
)

QUESTION_REASONING = (
    "Considering the pedestrians in the image, reason about how each one "
    "relates to the robot's path and whether any of them requires the "
    "robot's attention."
)

QUESTION_REASONING_WITH_FACTS = (
    QUESTION_REASONING
    + " You are given the following verified observations:\n{facts}"
)

# --- round-1 answer sentences ----------------------------------------------

NO_PEDESTRIANS_ANSWER = "There are no pedestrians in the scene."

POSITION_SENTENCE = "{subject} is {position_phrase}."
MOTION_SENTENCE = "This pedestrian is {heading_phrase}."
PREDICTION_SENTENCE = "They {prediction_phrase}."
INTERACTION_SENTENCE = "This pedestrian {interaction_phrase}."


def reference_phrase(color_label: str) -> str:
    """How a pedestrian is referred to in text, given its overlay label."""
    if color_label.startswith("#"):
        return f"The pedestrian in bounding box {color_label[1:]}"
    return f"The pedestrian in the {color_label} bounding box"


# --- movement prediction phrases -------------------------------------------

PREDICTION_CONTINUE = "will continue moving towards {direction}"
PREDICTION_STARTED = "have started moving and will continue towards {direction}"
PREDICTION_LEFT_TURN = "are turning left and will move towards {direction}"
PREDICTION_RIGHT_TURN = "are turning right and will move towards {direction}"
PREDICTION_STOPPING = "are slowing down and will become stationary"
PREDICTION_STATIONARY = "will remain stationary"


def direction_word(heading: Heading) -> str:
    return DIRECTION_WORDS[heading]


# --- interaction phrases ----------------------------------------------------

INTERACTION_PHRASES = {
    "trajectory_conflict": "is on a conflicting trajectory with the robot",
    "path_crossing_west_to_east": "is crossing the robot's path from west to east",
    "path_crossing_east_to_west": "is crossing the robot's path from east to west",
    "pass_by": "is passing by the robot",
    "other": "poses no risk of collision",
}

# --- round 2 ---------------------------------------------------------------

QUESTION_ROUND2 = (
    "Now consider the scene as a whole, including any groups of "
    "pedestrians and their shared dynamics. Refine your assessment: "
    "describe what you perceive, what you expect to happen next, your "
    "step-by-step reasoning, the action the robot should take, and why "
    "that action is appropriate."
)

ROUND2_SECTION_HEADERS = (
    "Perception:",
    "Prediction:",
    "CoT Reasoning:",
    "Final Action:",
    "Explanation:",
)
