"""Client for expert-judge scoring over a chat-completion HTTP endpoint.

The judge receives the model output alongside a reference answer and is
asked for a machine-readable score line covering four aspects, each on a
1-10 scale: perception & prediction (P&P), reasoning (R), action (A),
and explanation (E). Free-text rationales are stored but not parsed.
"""

from __future__ import annotations

import os
import re
import time
from dataclasses import dataclass, field
from typing import Mapping

import requests

from .errors import TransportError, ValidationError

ASPECTS = ("P&P", "R", "A", "E")

DEFAULT_JUDGE_TEMPLATE = """\
You are an impartial expert evaluating a robot navigation assistant.
Compare the model output against the reference answer for the given scene
and score these four aspects on a scale of 1-10:
- P&P (perception & prediction): are pedestrian positions and motions correct?
- R (reasoning): is the spatial and social reasoning sound?
- A (action): is the recommended action safe and appropriate?
- E (explanation): is the justification clear and grounded?

Scene image: {image_ref}

Reference answer:
{reference}

Model output:
{model_output}

Reply with exactly one line in this format, then any remarks:
P&P: <score>, R: <score>, A: <score>, E: <score>
"""

_SCORE_PATTERNS = {
    "P&P": re.compile(r"P\s*&\s*P\s*[:=]\s*(\d+(?:\.\d+)?)", re.IGNORECASE),
    "R": re.compile(r"\bR\s*[:=]\s*(\d+(?:\.\d+)?)"),
    "A": re.compile(r"\bA\s*[:=]\s*(\d+(?:\.\d+)?)"),
    "E": re.compile(r"\bE\s*[:=]\s*(\d+(?:\.\d+)?)"),
}


@dataclass(frozen=True)
class JudgeEndpointConfig:
    """Where and how to reach the judge.

    The bearer token is read from the environment variable named by
    auth_env, never stored in config files.
    """

    base_url: str
    model: str = "judge"
    auth_env: str = "PEDVQA_JUDGE_TOKEN"
    timeout_s: float = 30.0
    max_retries: int = 3
    backoff_s: float = 0.5


@dataclass(frozen=True)
class JudgeSample:
    image_ref: str
    model_output: str
    reference: str


@dataclass(frozen=True)
class JudgeResult:
    scores: Mapping[str, float] | None
    raw_text: str
    judge_id: str
    valid: bool
    error: str | None = None


def build_judge_prompt(
    sample: JudgeSample, template: str = DEFAULT_JUDGE_TEMPLATE
) -> str:
    """Expand the judging prompt; the template must name all four aspects."""
    for aspect in ASPECTS:
        if aspect not in template:
            raise ValidationError(
                f"judge template does not mention aspect {aspect!r}",
                field="prompt_template",
            )
    return template.format(
        image_ref=sample.image_ref,
        reference=sample.reference,
        model_output=sample.model_output,
    )


def parse_judge_reply(text: str) -> tuple[dict[str, float] | None, str | None]:
    """Extract the four aspect scores from a judge reply.

    Returns (scores, None) on success or (None, reason) when an aspect is
    missing or out of the 1-10 range.
    """
    scores: dict[str, float] = {}
    for aspect in ASPECTS:
        m = _SCORE_PATTERNS[aspect].search(text)
        if m is None:
            return None, f"missing score for aspect {aspect!r}"
        value = float(m.group(1))
        if not (1.0 <= value <= 10.0):
            return None, f"score for {aspect!r} out of range 1-10: {value}"
        scores[aspect] = value
    return scores, None


def _post_chat(cfg: JudgeEndpointConfig, prompt: str) -> str:
    headers = {"Content-Type": "application/json"}
    token = os.environ.get(cfg.auth_env, "")
    if token:
        headers["Authorization"] = f"Bearer {token}"
    response = requests.post(
        cfg.base_url.rstrip("/") + "/chat/completions",
        json={
            "model": cfg.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": 0.0,
        },
        headers=headers,
        timeout=cfg.timeout_s,
    )
    if response.status_code in (429,) or response.status_code >= 500:
        raise requests.ConnectionError(
            f"retryable status {response.status_code}"
        )
    if response.status_code != 200:
        raise TransportError(
            f"judge endpoint returned {response.status_code}: {response.text[:200]}"
        )
    payload = response.json()
    try:
        return payload["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError):
        raise ValueError(f"unexpected reply shape: {str(payload)[:200]}")


def judge_with_expert(
    endpoint_config: JudgeEndpointConfig,
    sample: JudgeSample,
    prompt_template: str = DEFAULT_JUDGE_TEMPLATE,
) -> JudgeResult:
    """Send one sample to the judge and parse its four aspect scores.

    Transient failures (network errors, 429/5xx, malformed replies) are
    retried with exponential backoff up to max_retries. A reply that still
    fails to parse yields an invalid JudgeResult carrying the raw text;
    an endpoint that stays unreachable raises TransportError.
    """
    prompt = build_judge_prompt(sample, prompt_template)
    last_error: str | None = None
    last_text = ""
    for attempt in range(endpoint_config.max_retries + 1):
        if attempt:
            time.sleep(endpoint_config.backoff_s * (2 ** (attempt - 1)))
        try:
            last_text = _post_chat(endpoint_config, prompt)
        except (requests.ConnectionError, requests.Timeout) as exc:
            last_error = f"transport: {exc}"
            last_text = ""
            continue
        except ValueError as exc:
            last_error = str(exc)
            continue
        scores, reason = parse_judge_reply(last_text)
        if scores is not None:
            return JudgeResult(
                scores=scores,
                raw_text=last_text,
                judge_id=endpoint_config.model,
                valid=True,
            )
        last_error = reason
    if not last_text and last_error and last_error.startswith("transport"):
        raise TransportError(
            f"judge endpoint unreachable after "
            f"{endpoint_config.max_retries + 1} attempts: {last_error}"
        )
    return JudgeResult(
        scores=None,
        raw_text=last_text,
        judge_id=endpoint_config.model,
        valid=False,
        error=last_error,
    )
