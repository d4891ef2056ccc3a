"""Training-data curation: filters, generated-QA parsing, balanced sampling.

Candidate QA items flow through three gates before they reach a corpus:

* difficulty: k rollouts of a reference model; items it always or never
  solves teach nothing and are discarded,
* qa quality: a judge rates reasoning depth 1..5; the score is what
  decides (>= 4 keeps), even when the judge's stated KEEP/DISCARD label
  disagrees with its own score,
* cot quality: generated reasoning chains need both a reasoning score and
  a review score at or above threshold.

Balanced sampling then draws a fixed-size subset stratified by question
aspect and audio duration.
"""

from __future__ import annotations

import bisect
import random
import re
from dataclasses import dataclass

from .judge.gateway import Judge, JudgeFormatError, ask_json
from .judge.replies import PairScore
from .judge.templates import render_template
from .samples import AudioQASample

QA_KEEP_THRESHOLD = 4.0
COT_THRESHOLDS = (8.0, 8.0)
UNSUITABLE_SENTINEL = "Not suitable for this hallucination type"

GENERATION_ASPECTS = ("counting", "pitch", "rhythm", "temporal", "timbre")


class GenerationParseError(ValueError):
    """A generated-QA reply is neither the sentinel nor a complete MCQ."""


@dataclass(frozen=True)
class RolloutRecord:
    """Outcome of k solve attempts on one candidate sample."""

    sample_id: str
    n_correct: int
    k: int = 16

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 <= self.n_correct <= self.k:
            raise ValueError("n_correct must be in [0, k]")


@dataclass(frozen=True)
class FilterVerdict:
    decision: str  # KEEP or DISCARD
    reason: str
    score: float | None = None

    def __post_init__(self) -> None:
        if self.decision not in ("KEEP", "DISCARD"):
            raise ValueError("decision must be KEEP or DISCARD")
        if not self.reason:
            raise ValueError("reason must be non-empty")

    @property
    def keep(self) -> bool:
        return self.decision == "KEEP"


def difficulty_filter(record: RolloutRecord) -> FilterVerdict:
    """Discard items the reference model always or never solves."""
    if record.n_correct == 0:
        return FilterVerdict(
            "DISCARD", f"0/{record.k} rollouts correct: too hard to learn from"
        )
    if record.n_correct == record.k:
        return FilterVerdict(
            "DISCARD", f"{record.k}/{record.k} rollouts correct: nothing left to learn"
        )
    return FilterVerdict("KEEP", f"{record.n_correct}/{record.k} rollouts correct")


def _qa_block(sample: AudioQASample) -> str:
    lines = [sample.question]
    for letter, text in sample.choices:
        lines.append(f"{letter}. {text}")
    lines.append(f"Answer: {sample.answer_text}")
    return "\n".join(lines)


def qa_filter(sample: AudioQASample, judge: Judge) -> FilterVerdict:
    """Judge-rated reasoning depth; the numeric score overrides the label."""
    prompt = render_template(
        "qa_filter", {"caption": sample.caption, "question": _qa_block(sample)}
    )
    obj = ask_json(judge, prompt)
    raw_score = obj.get("score")
    if not isinstance(raw_score, (int, float)) or isinstance(raw_score, bool):
        raise JudgeFormatError(f"qa_filter reply score is not numeric: {raw_score!r}")
    score = float(raw_score)
    keep = score >= QA_KEEP_THRESHOLD
    label = str(obj.get("decision", "")).strip().upper()
    reason = f"score {score:g} {'>=' if keep else '<'} {QA_KEEP_THRESHOLD:g}"
    expected = "KEEP" if keep else "DISCARD"
    if label and label != expected:
        reason += f"; judge label {label} overridden by score"
    return FilterVerdict(expected, reason, score=score)


def cot_filter(
    pair: PairScore,
    thresholds: tuple[float, float] = COT_THRESHOLDS,
    mode: str = "both",
) -> FilterVerdict:
    """Keep a generated chain only when both quality scores clear threshold."""
    if mode != "both":
        raise ValueError(f"unsupported mode {mode!r}")
    t_reason, t_review = thresholds
    reasoning_ok = pair.reasoning_score >= t_reason
    review_ok = pair.review_score >= t_review
    detail = (
        f"reasoning {pair.reasoning_score:g}/{t_reason:g}, "
        f"review {pair.review_score:g}/{t_review:g}"
    )
    if reasoning_ok and review_ok:
        return FilterVerdict("KEEP", detail, score=min(pair.reasoning_score, pair.review_score))
    return FilterVerdict("DISCARD", detail, score=min(pair.reasoning_score, pair.review_score))


@dataclass(frozen=True)
class GeneratedMCQ:
    question: str
    choices: tuple[tuple[str, str], ...]
    answer_key: str

    def __post_init__(self) -> None:
        letters = [letter for letter, _ in self.choices]
        if letters != ["A", "B", "C", "D"]:
            raise ValueError("generated MCQ must have options A..D")
        if self.answer_key not in letters:
            raise ValueError("answer key must be one of A..D")
        if not self.question.strip():
            raise ValueError("question must be non-empty")


@dataclass(frozen=True)
class GenerationOutcome:
    kind: str  # "mcq" or "unsuitable"
    mcq: GeneratedMCQ | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("mcq", "unsuitable"):
            raise ValueError("kind must be mcq or unsuitable")
        if (self.kind == "mcq") != (self.mcq is not None):
            raise ValueError("mcq outcomes must carry a question, unsuitable must not")


_QUESTION_RE = re.compile(r"^\s*Question\s*:\s*(.+?)\s*$", re.IGNORECASE | re.MULTILINE)
_CORRECT_RE = re.compile(r"^\s*Correct\s+answer\s*:\s*([A-D])\b", re.IGNORECASE | re.MULTILINE)


def parse_generated_qa(reply: str) -> GenerationOutcome:
    """Sentinel or a complete 4-option MCQ; anything else is a parse error."""
    if UNSUITABLE_SENTINEL.casefold() in reply.casefold():
        return GenerationOutcome(kind="unsuitable")
    qm = _QUESTION_RE.search(reply)
    if not qm:
        raise GenerationParseError("missing Question line")
    choices = []
    for letter in "ABCD":
        om = re.search(rf"^\s*{letter}\s*[.)]\s*(.+?)\s*$", reply, re.MULTILINE)
        if not om:
            raise GenerationParseError(f"missing option {letter}")
        choices.append((letter, om.group(1).strip()))
    cm = _CORRECT_RE.search(reply)
    if not cm:
        raise GenerationParseError("missing Correct answer line")
    return GenerationOutcome(
        kind="mcq",
        mcq=GeneratedMCQ(
            question=qm.group(1).strip(),
            choices=tuple(choices),
            answer_key=cm.group(1).upper(),
        ),
    )


def generate_qa(aspect: str, events_description: str, judge: Judge) -> GenerationOutcome:
    """Render the aspect's generation prompt, ask the judge, parse the reply."""
    if aspect not in GENERATION_ASPECTS:
        raise ValueError(f"unknown aspect {aspect!r}")
    prompt = render_template(f"qa_gen_{aspect}", {"events_description": events_description})
    reply = judge.complete(prompt)
    return parse_generated_qa(reply)


def duration_bucket(duration_s: float, edges: tuple[float, ...]) -> int:
    """Index of the half-open duration bucket [edge_i, edge_{i+1}); the last
    bucket is unbounded above."""
    if duration_s < edges[0]:
        raise ValueError(f"duration {duration_s} below first edge {edges[0]}")
    return bisect.bisect_right(edges, duration_s) - 1


def balanced_sample(
    pool: list,
    target_total: int,
    aspects: list[str],
    duration_edges: tuple[float, ...] = (0.0, 10.0, 30.0),
    seed: int = 0,
):
    """Draw a stratified subset of (item, aspect, duration_s) tuples.

    Strata are aspect x duration bucket.  Every stratum starts from an
    equal quota; leftovers go to the largest strata, rotating across
    aspects so no aspect outgrows another by more than one item while
    populations allow.  Selection within a stratum is seeded-random;
    output preserves pool order.
    """
    if target_total < 0:
        raise ValueError("target_total must be >= 0")
    if target_total > len(pool):
        raise ValueError(f"target {target_total} exceeds pool size {len(pool)}")
    if not aspects:
        raise ValueError("aspects must be non-empty")
    if sorted(set(aspects)) != sorted(aspects):
        raise ValueError("aspects must be unique")

    n_buckets = len(duration_edges)
    cells: dict[tuple[str, int], list[int]] = {
        (aspect, bucket): [] for aspect in aspects for bucket in range(n_buckets)
    }
    for i, (item, aspect, duration_s) in enumerate(pool):
        if aspect not in aspects:
            raise ValueError(f"pool item {i} has unknown aspect {aspect!r}")
        cells[(aspect, duration_bucket(duration_s, duration_edges))].append(i)

    n_cells = len(cells)
    base = target_total // n_cells
    alloc = {cell: min(base, len(members)) for cell, members in cells.items()}

    def aspect_total(aspect: str) -> int:
        return sum(alloc[(aspect, b)] for b in range(n_buckets))

    def spare(cell: tuple[str, int]) -> int:
        return len(cells[cell]) - alloc[cell]

    # hand out the remainder one per aspect per round, biggest cells first,
    # then absorb any quota lost to under-populated cells the same way
    deficit = target_total - sum(alloc.values())
    while deficit > 0:
        candidates = [cell for cell in cells if spare(cell) > 0]
        if not candidates:
            raise ValueError("pool cannot satisfy target")  # unreachable: target <= len(pool)
        candidates.sort(
            key=lambda cell: (
                aspect_total(cell[0]),  # keep aspects level
                -spare(cell),  # prefer the largest remaining population
                aspects.index(cell[0]),
                cell[1],
            )
        )
        alloc[candidates[0]] += 1
        deficit -= 1

    rng = random.Random(seed)
    selected: list[int] = []
    for aspect in aspects:
        for bucket in range(n_buckets):
            cell = (aspect, bucket)
            members = cells[cell]
            take = alloc[cell]
            if take:
                selected.extend(rng.sample(members, take))
    selected.sort()
    return [pool[i] for i in selected]
