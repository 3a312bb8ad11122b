"""Tests for judge-reply parsing and the retrying HTTP client."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from pedvqa.errors import TransportError, ValidationError
from pedvqa.judge import (
    ASPECTS,
    JudgeEndpointConfig,
    JudgeSample,
    build_judge_prompt,
    judge_with_expert,
    parse_judge_reply,
)

SAMPLE = JudgeSample(
    image_ref="images/f000001.png",
    model_output="The pedestrian is moving towards west.",
    reference="The pedestrian in the red bounding box is moving towards west.",
)


class TestParseJudgeReply:
    def test_well_formed(self):
        scores, err = parse_judge_reply("P&P: 7, R: 6, A: 6, E: 6")
        assert err is None
        assert scores == {"P&P": 7.0, "R": 6.0, "A": 6.0, "E": 6.0}

    def test_missing_aspect(self):
        scores, err = parse_judge_reply("P&P: 7, R: 6, E: 6")
        assert scores is None
        assert "A" in err

    def test_out_of_range(self):
        scores, err = parse_judge_reply("P&P: 11, R: 6, A: 6, E: 6")
        assert scores is None
        assert "out of range" in err

    def test_zero_rejected(self):
        scores, err = parse_judge_reply("P&P: 7, R: 0, A: 6, E: 6")
        assert scores is None

    def test_decimal_scores(self):
        scores, err = parse_judge_reply("P&P: 7.5, R: 6.2, A: 6.0, E: 9.9")
        assert err is None
        assert scores["E"] == 9.9

    def test_scores_with_surrounding_prose(self):
        text = (
            "After review:\nP&P: 8, R: 7, A: 9, E: 7\n"
            "Rationale: the output is well grounded."
        )
        scores, err = parse_judge_reply(text)
        assert err is None
        assert scores["A"] == 9.0


class TestPrompt:
    def test_template_must_name_all_aspects(self):
        with pytest.raises(ValidationError):
            build_judge_prompt(SAMPLE, "rate this: {model_output}")

    def test_prompt_contains_sample_fields(self):
        prompt = build_judge_prompt(SAMPLE)
        assert SAMPLE.image_ref in prompt
        assert SAMPLE.model_output in prompt
        assert SAMPLE.reference in prompt
        for aspect in ASPECTS:
            assert aspect in prompt


class _FakeJudge(BaseHTTPRequestHandler):
    replies: list = []
    calls: int = 0

    def do_POST(self):
        _FakeJudge.calls += 1
        length = int(self.headers.get("Content-Length", 0))
        self.rfile.read(length)
        if not _FakeJudge.replies:
            self.send_response(500)
            self.end_headers()
            return
        status, content = _FakeJudge.replies.pop(0)
        if status != 200:
            self.send_response(status)
            self.send_header("Content-Length", "0")
            self.end_headers()
            return
        body = json.dumps(
            {"choices": [{"message": {"content": content}}]}
        ).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def fake_judge():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _FakeJudge)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    _FakeJudge.replies = []
    _FakeJudge.calls = 0
    yield server
    server.shutdown()


def endpoint(server, retries=2):
    return JudgeEndpointConfig(
        base_url=f"http://127.0.0.1:{server.server_address[1]}",
        max_retries=retries,
        backoff_s=0.01,
        timeout_s=5.0,
    )


class TestJudgeClient:
    def test_successful_round_trip(self, fake_judge):
        _FakeJudge.replies = [(200, "P&P: 7, R: 6, A: 6, E: 6")]
        result = judge_with_expert(endpoint(fake_judge), SAMPLE)
        assert result.valid
        assert result.scores == {"P&P": 7.0, "R": 6.0, "A": 6.0, "E": 6.0}
        assert "P&P" in result.raw_text

    def test_retries_transient_500_then_succeeds(self, fake_judge):
        _FakeJudge.replies = [(500, ""), (200, "P&P: 5, R: 5, A: 5, E: 5")]
        result = judge_with_expert(endpoint(fake_judge), SAMPLE)
        assert result.valid
        assert _FakeJudge.calls == 2

    def test_malformed_reply_after_retries_is_invalid_with_raw_text(
        self, fake_judge
    ):
        _FakeJudge.replies = [
            (200, "no scores here"),
            (200, "still no scores"),
            (200, "nope"),
        ]
        result = judge_with_expert(endpoint(fake_judge), SAMPLE)
        assert not result.valid
        assert result.scores is None
        assert result.raw_text == "nope"
        assert "missing score" in result.error

    def test_unreachable_endpoint_raises_transport_error(self):
        cfg = JudgeEndpointConfig(
            base_url="http://127.0.0.1:1",  # nothing listens here
            max_retries=1,
            backoff_s=0.01,
            timeout_s=0.3,
        )
        with pytest.raises(TransportError):
            judge_with_expert(cfg, SAMPLE)
