"""Dataset records and JSONL ingestion.

A dataset is a JSONL file of multiple-choice audio QA items; traces are a
JSONL file of raw model outputs keyed by (sample_id, model_id, run_index).
Loaders validate every record and report the offending line number, so a
bad corpus fails fast instead of poisoning downstream metrics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

DOMAIN_TAGS = ("sound", "music", "speech", "mixed")
DIFFICULTY_TAGS = ("easy", "medium", "hard")
CHOICE_LETTERS = "ABCDEF"

_SAMPLE_FIELDS = (
    "id",
    "question",
    "choices",
    "answer_key",
    "caption",
    "domain_tag",
    "difficulty_tag",
    "task_tag",
    "duration_s",
    "audio_ref",
)
_TRACE_FIELDS = ("sample_id", "model_id", "raw_text", "run_index")


class DatasetError(ValueError):
    """A dataset or trace record violates the schema."""


@dataclass(frozen=True)
class AudioQASample:
    """One multiple-choice audio question with its ground-truth caption."""

    id: str
    question: str
    choices: tuple[tuple[str, str], ...]  # (letter, text) pairs, letters A..F
    answer_key: str
    caption: str  # ground-truth audio description; the judge's stand-in for the audio
    domain_tag: str
    difficulty_tag: str | None = None
    task_tag: str | None = None
    duration_s: float | None = None
    audio_ref: str | None = None
    # unrecognized JSON keys, preserved verbatim for round-tripping
    extra: dict = field(default_factory=dict, compare=True)

    def __post_init__(self) -> None:
        if not self.id or not isinstance(self.id, str):
            raise DatasetError("id must be a non-empty string")
        if not self.question or not isinstance(self.question, str):
            raise DatasetError("question must be a non-empty string")
        if not isinstance(self.caption, str) or len(self.caption) < 1:
            raise DatasetError("caption must be a non-empty string")
        if not 2 <= len(self.choices) <= 6:
            raise DatasetError(
                f"expected 2..6 choices, got {len(self.choices)}"
            )
        letters = []
        for pair in self.choices:
            if len(pair) != 2:
                raise DatasetError("each choice must be a (letter, text) pair")
            letter, text = pair
            if letter not in CHOICE_LETTERS:
                raise DatasetError(f"invalid choice letter {letter!r}")
            if not isinstance(text, str):
                raise DatasetError(f"choice {letter} text must be a string")
            letters.append(letter)
        if len(set(letters)) != len(letters):
            raise DatasetError("duplicate choice letter")
        if letters != sorted(letters):
            raise DatasetError("choice letters out of order")
        if letters.count(self.answer_key) != 1:
            raise DatasetError("answer_key not among choices")
        if self.domain_tag not in DOMAIN_TAGS:
            raise DatasetError(f"invalid domain_tag {self.domain_tag!r}")
        if self.difficulty_tag is not None and self.difficulty_tag not in DIFFICULTY_TAGS:
            raise DatasetError(f"invalid difficulty_tag {self.difficulty_tag!r}")
        if self.duration_s is not None and not self.duration_s >= 0:
            raise DatasetError("duration_s must be >= 0")

    def choice_text(self, letter: str) -> str:
        for cl, text in self.choices:
            if cl == letter:
                return text
        raise KeyError(letter)

    @property
    def answer_text(self) -> str:
        """The gold answer as ``LETTER. text``, the form judges are shown."""
        return f"{self.answer_key}. {self.choice_text(self.answer_key)}"


@dataclass(frozen=True)
class TraceRecord:
    """One raw model output for one dataset sample."""

    sample_id: str
    model_id: str
    raw_text: str
    run_index: int = 0

    def __post_init__(self) -> None:
        if not self.sample_id:
            raise DatasetError("sample_id must be non-empty")
        if not self.model_id:
            raise DatasetError("model_id must be non-empty")
        if not isinstance(self.raw_text, str):
            raise DatasetError("raw_text must be a string")
        if not isinstance(self.run_index, int) or isinstance(self.run_index, bool):
            raise DatasetError("run_index must be an integer")
        if self.run_index < 0:
            raise DatasetError("run_index must be >= 0")

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.sample_id, self.model_id, self.run_index)


def _iter_jsonl(path: str | Path) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, parsed object) for every non-blank line."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            if not isinstance(obj, dict):
                raise DatasetError(f"{path}:{lineno}: record must be a JSON object")
            yield lineno, obj


def sample_from_json(obj: dict) -> AudioQASample:
    """Build a sample from a parsed JSON object, preserving unknown keys."""
    obj = dict(obj)
    missing = [k for k in ("id", "question", "choices", "answer_key", "caption", "domain_tag") if k not in obj]
    if missing:
        raise DatasetError(f"missing field {missing[0]!r}")
    raw_choices = obj.pop("choices")
    if not isinstance(raw_choices, list):
        raise DatasetError("choices must be a list of [letter, text] pairs")
    choices = []
    for pair in raw_choices:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DatasetError("each choice must be a [letter, text] pair")
        letter, text = pair
        if not isinstance(letter, str):
            raise DatasetError("choice letter must be a string")
        choices.append((letter.strip().upper(), text))
    answer_key = obj.pop("answer_key")
    if not isinstance(answer_key, str):
        raise DatasetError("answer_key must be a string")
    duration = obj.pop("duration_s", None)
    if duration is not None and not isinstance(duration, (int, float)):
        raise DatasetError("duration_s must be a number")
    known = {
        "id": obj.pop("id"),
        "question": obj.pop("question"),
        "caption": obj.pop("caption"),
        "domain_tag": obj.pop("domain_tag"),
        "difficulty_tag": obj.pop("difficulty_tag", None),
        "task_tag": obj.pop("task_tag", None),
        "audio_ref": obj.pop("audio_ref", None),
    }
    return AudioQASample(
        choices=tuple(choices),
        answer_key=answer_key.strip().upper(),
        duration_s=float(duration) if duration is not None else None,
        extra=obj,  # whatever keys remain
        **known,
    )


def sample_to_json(sample: AudioQASample) -> dict:
    """Inverse of sample_from_json; unknown keys re-emitted alongside known ones."""
    out = {
        "id": sample.id,
        "question": sample.question,
        "choices": [[letter, text] for letter, text in sample.choices],
        "answer_key": sample.answer_key,
        "caption": sample.caption,
        "domain_tag": sample.domain_tag,
    }
    if sample.difficulty_tag is not None:
        out["difficulty_tag"] = sample.difficulty_tag
    if sample.task_tag is not None:
        out["task_tag"] = sample.task_tag
    if sample.duration_s is not None:
        out["duration_s"] = sample.duration_s
    if sample.audio_ref is not None:
        out["audio_ref"] = sample.audio_ref
    out.update(sample.extra)
    return out


def load_dataset(path: str | Path, fmt: str = "jsonl") -> list[AudioQASample]:
    """Load and validate a dataset file.  Order is preserved; ids must be unique."""
    if fmt != "jsonl":
        raise DatasetError(f"unsupported dataset format: {fmt!r}")
    samples: list[AudioQASample] = []
    seen: set[str] = set()
    for lineno, obj in _iter_jsonl(path):
        try:
            sample = sample_from_json(obj)
        except DatasetError as exc:
            raise DatasetError(f"{path}:{lineno}: {exc}") from None
        if sample.id in seen:
            raise DatasetError(f"{path}:{lineno}: duplicate id {sample.id!r}")
        seen.add(sample.id)
        samples.append(sample)
    return samples


def serialize_dataset(samples: Iterable[AudioQASample], path: str | Path) -> None:
    """Write samples back out as JSONL.  load_dataset(serialize_dataset(x)) == x."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for sample in samples:
            fh.write(json.dumps(sample_to_json(sample), ensure_ascii=False) + "\n")


def trace_from_json(obj: dict) -> TraceRecord:
    for name in _TRACE_FIELDS:
        if name == "run_index":
            continue
        if name not in obj:
            raise DatasetError(f"missing field {name!r}")
    run_index = obj.get("run_index", 0)
    if not isinstance(run_index, int) or isinstance(run_index, bool):
        raise DatasetError("run_index must be an integer")
    return TraceRecord(
        sample_id=obj["sample_id"],
        model_id=obj["model_id"],
        raw_text=obj["raw_text"],
        run_index=run_index,
    )


def trace_to_json(trace: TraceRecord) -> dict:
    return {
        "sample_id": trace.sample_id,
        "model_id": trace.model_id,
        "run_index": trace.run_index,
        "raw_text": trace.raw_text,
    }


def load_traces(path: str | Path) -> list[TraceRecord]:
    """Load trace records; (sample_id, model_id, run_index) must be unique."""
    traces: list[TraceRecord] = []
    seen: set[tuple[str, str, int]] = set()
    for lineno, obj in _iter_jsonl(path):
        try:
            trace = trace_from_json(obj)
        except DatasetError as exc:
            raise DatasetError(f"{path}:{lineno}: {exc}") from None
        if trace.key in seen:
            raise DatasetError(
                f"{path}:{lineno}: duplicate trace key {trace.key!r}"
            )
        seen.add(trace.key)
        traces.append(trace)
    return traces


def serialize_traces(traces: Iterable[TraceRecord], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for trace in traces:
            fh.write(json.dumps(trace_to_json(trace), ensure_ascii=False) + "\n")
