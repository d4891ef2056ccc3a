"""Regenerate the committed test corpus under tests/data/.

Run from the repository root:

    python3 tests/make_corpus.py

Outputs (all committed):

    tests/data/corpus/dataset.jsonl    50 synthetic audio QA samples
    tests/data/corpus/traces.jsonl     55 traces across two model ids
    tests/data/corpus/fixtures.json    judge replies keyed by prompt hash
    tests/data/golden/rewards.jsonl    reward CLI output under the fixtures

Everything derives from one seed, so reruns are byte-identical.  The
fixture file covers every judge call the extract and reward pipelines
issue over this corpus: extraction replies are synthesized here from the
sample captions (so every event category is exercised), reward replies
are delegated to the deterministic rubric-score mock and recorded.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from helpers_gen import gen_phrase, gen_sample, gen_wellformed_trace

from cafeval.cli import main as cli_main
from cafeval.judge.gateway import MockJudge, prompt_hash
from cafeval.reports import extraction_prompt
from cafeval.rewards import compute_trace_reward
from cafeval.samples import AudioQASample, TraceRecord, serialize_dataset, serialize_traces

SEED = 7
DATA_DIR = Path(__file__).resolve().parent / "data"
CORPUS_DIR = DATA_DIR / "corpus"
GOLDEN_DIR = DATA_DIR / "golden"

# positions in the trace list singled out for edge-case coverage
POS_NO_PREDICTIONS = 7  # judge categorizes nothing the model said
POS_ALL_EMPTY = 23  # judge returns six empty lists
POS_MISSING_KEY = 11  # reply JSON omits neutral_events entirely

REPLY_STYLES = ("plain", "fenced", "prose")


def caption_events(sample: AudioQASample) -> list[str]:
    return [part.strip() for part in sample.caption.rstrip(".").split("; then ")]


def _make_trace_text(rng: random.Random, position: int, sample: AudioQASample) -> str:
    """Mostly well-formed traces, with a few structurally broken ones."""
    pad = (position % 5) * 12
    text = gen_wellformed_trace(rng, sample, pad_tokens=pad)
    if position == 46:
        return text.replace("</review>", "", 1)
    if position == 47:
        return text.replace("<answer>", "<answer><answer>", 1)
    if position == 48:
        events = caption_events(sample)
        return (
            f"Listening closely, the clip starts with {events[0]} and later "
            f"I can hear {events[-1]}. Weighing the options against what is "
            "audible, the second one fits best."
        )
    if position == 49:
        event = caption_events(sample)[0]
        return (
            f"<think>The audio has {event}. Option {sample.answer_key} fits."
            f"</think><answer>{sample.answer_key}</answer>"
        )
    return text


def _extraction_spec(rng: random.Random, position: int, sample: AudioQASample) -> dict:
    """The category lists the fixture judge will claim for one trace."""
    events = caption_events(sample)
    if position == POS_ALL_EMPTY:
        matched, missed = [], []
        hallucinated, misused, neutral = [], [], []
    elif position == POS_NO_PREDICTIONS:
        matched, missed = [], list(events)
        hallucinated, misused, neutral = [], [], []
    else:
        n_mat = rng.randint(0, len(events))
        matched = events[:n_mat]
        missed = events[n_mat:]
        hallucinated = [gen_phrase(rng) for _ in range(rng.randint(0, 2))]
        misused = [gen_phrase(rng) for _ in range(rng.randint(0, 1))]
        neutral = [] if position == POS_MISSING_KEY else [
            gen_phrase(rng) for _ in range(rng.randint(0, 1))
        ]
    return {
        "all_reasoning_events": matched + hallucinated + misused + neutral,
        "matched_events": matched,
        "error_matched": hallucinated,
        "error_use": misused,
        "neutral_events": neutral,
        "missed_events": missed,
        "style": REPLY_STYLES[position % len(REPLY_STYLES)],
        "omit_key": "neutral_events" if position == POS_MISSING_KEY else None,
    }


def _spec_reply(spec: dict) -> str:
    obj = {
        key: spec[key]
        for key in (
            "all_reasoning_events",
            "matched_events",
            "error_matched",
            "error_use",
            "neutral_events",
            "missed_events",
        )
        if key != spec["omit_key"]
    }
    if spec["style"] == "fenced":
        return "```json\n" + json.dumps(obj, indent=1) + "\n```"
    if spec["style"] == "prose":
        return "Here is the categorized event list.\n" + json.dumps(obj)
    return json.dumps(obj, indent=1)


def build_corpus():
    """Samples, traces, and per-trace extraction specs, all from one seed.

    The golden-report builder imports this so the expected metrics are
    computed from the same category lists the fixtures encode.
    """
    rng = random.Random(SEED)
    samples = [gen_sample(rng, i) for i in range(1, 51)]
    by_id = {s.id: s for s in samples}

    traces: list[TraceRecord] = []
    for position, sample in enumerate(samples):
        traces.append(
            TraceRecord(
                sample_id=sample.id,
                model_id="mock-lalm",
                raw_text=_make_trace_text(rng, position, sample),
                run_index=0,
            )
        )
    for position, (sample_id, run_index) in enumerate(
        [("s0001", 0), ("s0001", 1), ("s0002", 0), ("s0002", 1), ("s0003", 0)]
    ):
        traces.append(
            TraceRecord(
                sample_id=sample_id,
                model_id="mock-lalm-large",
                raw_text=gen_wellformed_trace(rng, by_id[sample_id], pad_tokens=23 * position),
                run_index=run_index,
            )
        )

    specs = {}
    for position, trace in enumerate(traces):
        specs[trace.key] = _extraction_spec(rng, position, by_id[trace.sample_id])
    return samples, traces, specs


class _RecordingJudge:
    """Delegates to an inner judge and records every prompt/reply pair."""

    def __init__(self, inner: MockJudge) -> None:
        self.inner = inner
        self.recorded: dict[str, str] = {}

    @property
    def format_reasks(self) -> int:
        return self.inner.format_reasks

    def complete(self, prompt: str) -> str:
        reply = self.inner.complete(prompt)
        self.recorded[prompt_hash(prompt)] = reply
        return reply


def build_fixtures(samples, traces, specs) -> dict[str, str]:
    by_id = {s.id: s for s in samples}
    fixtures: dict[str, str] = {}
    for trace in traces:
        prompt = extraction_prompt(by_id[trace.sample_id], trace.raw_text)
        fixtures[prompt_hash(prompt)] = _spec_reply(specs[trace.key])

    recorder = _RecordingJudge(MockJudge(policy="rubric_hash", seed=0))
    for trace in traces:
        # score_malformed exercises the lenient path too, so the fixture
        # set covers both reward modes of the CLI and the service
        compute_trace_reward(
            trace,
            by_id[trace.sample_id],
            recorder,
            score_malformed=True,
            max_workers=1,
        )
    fixtures.update(recorder.recorded)
    return fixtures


def main() -> None:
    CORPUS_DIR.mkdir(parents=True, exist_ok=True)
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    samples, traces, specs = build_corpus()

    serialize_dataset(samples, CORPUS_DIR / "dataset.jsonl")
    serialize_traces(traces, CORPUS_DIR / "traces.jsonl")
    fixtures = build_fixtures(samples, traces, specs)
    with (CORPUS_DIR / "fixtures.json").open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(fixtures, fh, sort_keys=True, indent=1)
        fh.write("\n")

    rewards_path = GOLDEN_DIR / "rewards.jsonl"
    exit_code = cli_main(
        [
            "reward",
            "--dataset", str(CORPUS_DIR / "dataset.jsonl"),
            "--traces", str(CORPUS_DIR / "traces.jsonl"),
            "--out", str(rewards_path),
            "--mock", "echo_fixture",
            "--fixtures", str(CORPUS_DIR / "fixtures.json"),
            "--no-resume",
            "--workers", "1",
        ]
    )
    if exit_code != 0:
        raise SystemExit(f"reward golden run failed with exit code {exit_code}")
    print(f"corpus written to {CORPUS_DIR}")
    print(f"reward golden written to {rewards_path}")


if __name__ == "__main__":
    main()
