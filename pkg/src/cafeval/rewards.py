"""Structured reward stack for reasoning traces.

A trace earns four components, each judged against the sample's
ground-truth caption:

* perception: fidelity of the perception section,
* stepwise reasoning: geometric mean of per-step scores blended with a
  holistic chain score (theta weighting),
* reviewed accuracy: binary answer correctness, scaled up by the quality
  of the self-review (mu bonus) — a wrong answer earns nothing no matter
  how good the review reads,
* format: 1 only for a trace in canonical structure.

The total is the weighted sum alpha*perception + beta*spr + gamma*rea +
delta*format.  Judge scores are never invented: when the judge cannot
produce one, the affected component scores 0 and the trace is flagged.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .judge.gateway import Judge, JudgeError, JudgeTransportError, ask_scalar
from .judge.templates import render_template
from .samples import AudioQASample
from .traces import ParsedTrace, ParseDiagnostics, canonicalize, extract_answer, parse_mpar2

_GM_CLAMP = 1e-300  # guards log() against positive denormals; exact zeros short-circuit


@dataclass(frozen=True)
class RewardWeights:
    theta: float = 0.7  # stepwise vs holistic blend inside the reasoning term
    mu: float = 0.5  # review bonus on top of a correct answer
    alpha: float = 1.5  # perception
    beta: float = 1.0  # stepwise reasoning
    gamma: float = 1.5  # reviewed accuracy
    delta: float = 0.1  # format

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must be in [0, 1]")
        if not 0.0 <= self.mu:
            raise ValueError("mu must be >= 0")
        for name in ("alpha", "beta", "gamma", "delta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0")

    @classmethod
    def from_overrides(cls, overrides: dict | None) -> "RewardWeights":
        if not overrides:
            return cls()
        unknown = set(overrides) - {"theta", "mu", "alpha", "beta", "gamma", "delta"}
        if unknown:
            raise ValueError(f"unknown weight {sorted(unknown)[0]!r}")
        return cls(**{k: float(v) for k, v in overrides.items()})

    def to_json(self) -> dict:
        return {
            "theta": self.theta,
            "mu": self.mu,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class ComponentScores:
    perception: float
    step_scores: tuple[float, ...]
    all_reason: float
    review: float
    acc: int
    format: int

    def __post_init__(self) -> None:
        for name in ("perception", "all_reason", "review"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        for score in self.step_scores:
            if not 0.0 <= score <= 1.0:
                raise ValueError("step scores must be in [0, 1]")
        if self.acc not in (0, 1):
            raise ValueError("acc must be 0 or 1")
        if self.format not in (0, 1):
            raise ValueError("format must be 0 or 1")


@dataclass(frozen=True)
class RewardBreakdown:
    r_perception: float
    r_spr: float
    r_rea: float
    r_format: float
    r_all: float
    step_scores: tuple[float, ...] = ()
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "r_perception": self.r_perception,
            "r_spr": self.r_spr,
            "r_rea": self.r_rea,
            "r_format": self.r_format,
            "r_all": self.r_all,
            "step_scores": list(self.step_scores),
            "flags": list(self.flags),
        }


def geometric_mean(values) -> float:
    """Geometric mean in log space; any exact zero (or no values) gives 0."""
    values = list(values)
    n = len(values)
    if n == 0 or any(v == 0.0 for v in values):
        return 0.0
    total = math.fsum(math.log(max(v, _GM_CLAMP)) for v in values)
    gm = math.exp(total / n)
    # log/exp round-trip can drift an ulp; the mean never leaves [min, max]
    return min(max(gm, min(values)), max(values))


def combine(scores: ComponentScores, weights: RewardWeights | None = None) -> RewardBreakdown:
    w = weights or RewardWeights()
    gm = geometric_mean(scores.step_scores)
    r_spr = w.theta * gm + (1.0 - w.theta) * scores.all_reason
    r_rea = scores.acc * (1.0 + w.mu * scores.review)
    r_format = float(scores.format)
    r_all = w.alpha * scores.perception + w.beta * r_spr + w.gamma * r_rea + w.delta * r_format
    return RewardBreakdown(
        r_perception=scores.perception,
        r_spr=r_spr,
        r_rea=r_rea,
        r_format=r_format,
        r_all=r_all,
        step_scores=tuple(scores.step_scores),
    )


def _step_line(index: int, sub_question: str, sub_answer: str) -> str:
    return f"{index}. Sub-question: {sub_question}\n Answer: {sub_answer}"


def _perception_payload(parsed: ParsedTrace) -> str:
    if parsed.perception_text.strip():
        return parsed.perception_text
    lines = []
    for i, event in enumerate(parsed.perception, start=1):
        if event.timed:
            lines.append(f"{i}. [{event.start_s}, {event.end_s}]: {event.description}")
        else:
            lines.append(f"{i}. {event.description}")
    return "\n".join(lines)


def score_perception(parsed: ParsedTrace, sample: AudioQASample, judge: Judge) -> float:
    """Judge-scored fidelity of the perception section; empty section is 0."""
    payload = _perception_payload(parsed)
    if not payload.strip():
        return 0.0
    prompt = render_template(
        "perception_score",
        {
            "caption_text": sample.caption,
            "question_text": sample.question,
            "answer_text": sample.answer_text,
            "cot_text": payload,
        },
    )
    return ask_scalar(judge, prompt)


def score_steps(parsed: ParsedTrace, sample: AudioQASample, judge: Judge) -> list[float]:
    """One judge score per reasoning step, each conditioned on its history."""
    scores: list[float] = []
    for position, step in enumerate(parsed.steps):
        if step.is_empty:
            scores.append(0.0)
            continue
        history = "\n".join(
            _step_line(prev.index, prev.sub_question, prev.sub_answer)
            for prev in parsed.steps[:position]
        )
        prompt = render_template(
            "step_score",
            {
                "caption_text": sample.caption,
                "question_text": sample.question,
                "history_text": history if history else "(none)",
                "current_step_text": _step_line(step.index, step.sub_question, step.sub_answer),
            },
        )
        scores.append(ask_scalar(judge, prompt))
    return scores


def score_chain(parsed: ParsedTrace, sample: AudioQASample, judge: Judge) -> float:
    """Holistic score over the whole reasoning section; empty section is 0."""
    if not parsed.reasoning_text.strip():
        return 0.0
    prompt = render_template(
        "holistic_score",
        {
            "caption_text": sample.caption,
            "question_text": sample.question,
            "answer_text": sample.answer_text,
            "full_reasoning": parsed.reasoning_text,
        },
    )
    return ask_scalar(judge, prompt)


def score_review(parsed: ParsedTrace, sample: AudioQASample, judge: Judge) -> float:
    """Score of the self-review; the model's own perception is the caption
    under audit and the dataset caption is the fact reference."""
    review_payload = parsed.review_text.strip()
    if not review_payload and parsed.review is not None:
        review_payload = (
            f"1. Evidence Check: {parsed.review.evidence_check}\n"
            f"2. Logic Check: {parsed.review.logic_check}"
        )
    if not review_payload:
        return 0.0
    prompt = render_template(
        "review_score",
        {
            "caption_text": _perception_payload(parsed),
            "ground_truth_text": sample.caption,
            "question_text": sample.question,
            "answer_text": sample.answer_text,
            "reasoning_text": parsed.reasoning_text,
            "review_text": review_payload,
        },
    )
    return ask_scalar(judge, prompt)


def accuracy(parsed: ParsedTrace, sample: AudioQASample) -> int:
    return 1 if extract_answer(parsed, sample.choices) == sample.answer_key else 0


def format_reward(parse_result: ParsedTrace | ParseDiagnostics) -> int:
    """1 only for a strict-parsed trace with all sections actually filled."""
    if isinstance(parse_result, ParseDiagnostics):
        return 0
    parsed = parse_result
    if not parsed.perception:
        return 0
    if len(parsed.steps) < 1 or any(step.is_empty for step in parsed.steps):
        return 0
    if parsed.review is None:
        return 0
    if not parsed.final_answer.strip():
        return 0
    return 1


def compute_trace_reward(
    raw,
    sample: AudioQASample,
    judge: Judge,
    weights: RewardWeights | None = None,
    score_malformed: bool = False,
    counter: str = "whitespace",
    max_workers: int = 8,
) -> RewardBreakdown:
    """Full reward for one trace.

    A trace that fails strict parsing gets r_all = 0 unless score_malformed
    is set, in which case the recoverable sections are judged leniently and
    only the format component stays 0.  Judge failures zero the affected
    component and flag the trace; flags ending in _unavailable mean a score
    is missing rather than earned.
    """
    w = weights or RewardWeights()
    strict_result = parse_mpar2(raw, strict=True, counter=counter)
    fmt = format_reward(strict_result)
    flags: list[str] = []

    if fmt == 0:
        if not score_malformed:
            return RewardBreakdown(
                r_perception=0.0,
                r_spr=0.0,
                r_rea=0.0,
                r_format=0.0,
                r_all=0.0,
                flags=("malformed",),
            )
        flags.append("malformed")
        parsed = parse_mpar2(raw, strict=False, counter=counter)
    else:
        parsed = strict_result

    transport_failure = False

    def run(label: str, fn):
        nonlocal transport_failure
        try:
            return fn(), None
        except JudgeError as exc:
            if isinstance(exc, JudgeTransportError):
                transport_failure = True
            return None, f"{label}_unavailable"

    tasks = {
        "perception": lambda: score_perception(parsed, sample, judge),
        "steps": lambda: score_steps(parsed, sample, judge),
        "chain": lambda: score_chain(parsed, sample, judge),
        "review": lambda: score_review(parsed, sample, judge),
    }
    results: dict[str, tuple[object, str | None]] = {}
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=min(max_workers, len(tasks))) as pool:
            futures = {name: pool.submit(run, name, fn) for name, fn in tasks.items()}
            results = {name: future.result() for name, future in futures.items()}
    else:
        results = {name: run(name, fn) for name, fn in tasks.items()}

    perception, perception_flag = results["perception"]
    step_scores, steps_flag = results["steps"]
    all_reason, chain_flag = results["chain"]
    review, review_flag = results["review"]

    if perception_flag:
        perception = 0.0
        flags.append(perception_flag)
    # the stepwise term blends step and chain scores; losing either side
    # makes the whole term unearned rather than half-fabricated
    if steps_flag or chain_flag:
        step_scores = ()
        all_reason = 0.0
        for flag in (steps_flag, chain_flag):
            if flag:
                flags.append(flag)
        flags.append("spr_unavailable")
    if review_flag:
        review = 0.0
        flags.append(review_flag)
    if transport_failure:
        flags.append("judge_transport")

    scores = ComponentScores(
        perception=perception,
        step_scores=tuple(step_scores),
        all_reason=all_reason,
        review=review,
        acc=accuracy(parsed, sample),
        format=fmt,
    )
    breakdown = combine(scores, w)
    return replace(breakdown, flags=tuple(flags))


def canonical_trace(parsed: ParsedTrace) -> str:
    """Re-emit a parsed trace in canonical form (thin wrapper for callers)."""
    return canonicalize(parsed)
