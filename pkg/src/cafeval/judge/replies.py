"""Typed parsing of judge replies.

Judges are instructed to answer with bare scores or a single JSON object,
but real replies come wrapped in prose or code fences.  These parsers are
tolerant about the wrapping and strict about the payload: a reply that
cannot be decoded raises ReplyFormatError so the caller can re-ask.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field


class ReplyFormatError(ValueError):
    """The judge reply does not contain the expected payload."""


_NUMBER_RE = re.compile(r"-?(?:\d+\.?\d*|\.\d+)")
_PAIR_RE = re.compile(r"(-?(?:\d+\.?\d*|\.\d+))\s*/\s*(-?(?:\d+\.?\d*|\.\d+))")
_FENCE_RE = re.compile(r"```(?:[A-Za-z0-9_+-]+)?\s*(.*?)```", re.DOTALL)

EXTRACTION_KEYS = (
    "all_reasoning_events",
    "matched_events",
    "error_matched",
    "error_use",
    "neutral_events",
    "missed_events",
)


@dataclass(frozen=True)
class ScalarScore:
    value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("scalar score must be in [0, 1]")


@dataclass(frozen=True)
class PairScore:
    reasoning_score: float
    review_score: float

    def __post_init__(self) -> None:
        for value in (self.reasoning_score, self.review_score):
            if not 0.0 <= value <= 10.0:
                raise ValueError("pair scores must be in [0, 10]")


@dataclass
class EventExtraction:
    all_reasoning_events: list[str]
    matched_events: list[str]
    error_matched: list[str]
    error_use: list[str]
    neutral_events: list[str]
    missed_events: list[str]
    diagnostics: list[str] = field(default_factory=list, compare=False)


def parse_scalar_score(reply: str, snap: bool = False) -> ScalarScore:
    """First decimal number in the reply, optionally snapped to the 0.1 grid."""
    m = _NUMBER_RE.search(reply)
    if not m:
        raise ReplyFormatError("no numeric score in judge reply")
    value = float(m.group(0))
    if not 0.0 <= value <= 1.0:
        raise ReplyFormatError(f"score {value} out of range [0, 1]")
    if snap:
        value = math.floor(value * 10.0 + 0.5) / 10.0
    return ScalarScore(value=value)


def parse_pair_score(reply: str) -> PairScore:
    """A slash-separated score pair, each side in [0, 10]."""
    m = _PAIR_RE.search(reply)
    if not m:
        raise ReplyFormatError("no 'a/b' score pair in judge reply")
    reasoning = float(m.group(1))
    review = float(m.group(2))
    for value in (reasoning, review):
        if not 0.0 <= value <= 10.0:
            raise ReplyFormatError(f"pair score {value} out of range [0, 10]")
    return PairScore(reasoning_score=reasoning, review_score=review)


def find_json_object(reply: str) -> dict:
    """Locate and decode the first JSON object in a possibly noisy reply."""
    candidates = [reply.strip()]
    for fenced in _FENCE_RE.findall(reply):
        candidates.append(fenced.strip())
    for candidate in candidates:
        try:
            obj = json.loads(candidate)
            if isinstance(obj, dict):
                return obj
        except json.JSONDecodeError:
            pass
        start = candidate.find("{")
        if start < 0:
            continue
        try:
            obj, _ = json.JSONDecoder().raw_decode(candidate[start:])
            if isinstance(obj, dict):
                return obj
        except json.JSONDecodeError:
            continue
    raise ReplyFormatError("no JSON object in judge reply")


def _tolerant_index(items: list[str]) -> list[str]:
    return [item.strip().casefold() for item in items]


def _appears_in(event: str, pool: list[str]) -> bool:
    needle = event.strip().casefold()
    if not needle:
        return True
    for entry in pool:
        if needle == entry or needle in entry or entry in needle:
            return True
    return False


def parse_event_extraction(reply: str) -> EventExtraction:
    """Decode the six categorized event lists from a judge reply.

    Missing keys become empty lists with a diagnostic; a key bound to a
    non-list is a format error.  Cross-list consistency (categorized events
    appearing among all_reasoning_events, misses disjoint from matches) is
    checked tolerantly and reported as diagnostics, never silently dropped.
    """
    obj = find_json_object(reply)
    diagnostics: list[str] = []
    lists: dict[str, list[str]] = {}
    for key in EXTRACTION_KEYS:
        if key not in obj:
            diagnostics.append(f"missing key {key}")
            lists[key] = []
            continue
        value = obj[key]
        if not isinstance(value, list):
            raise ReplyFormatError(f"key {key} is not a list")
        cleaned = []
        for item in value:
            if not isinstance(item, (str, int, float)):
                raise ReplyFormatError(f"key {key} contains a non-string entry")
            cleaned.append(str(item).strip())
        lists[key] = [c for c in cleaned if c]

    pool = _tolerant_index(lists["all_reasoning_events"])
    for key in ("matched_events", "error_matched", "error_use", "neutral_events"):
        for event in lists[key]:
            if not _appears_in(event, pool):
                diagnostics.append(f"{key} entry not among all_reasoning_events: {event}")

    matched_pool = _tolerant_index(lists["matched_events"])
    for event in lists["missed_events"]:
        if matched_pool and _appears_in(event, matched_pool):
            diagnostics.append(f"missed_events entry also matched: {event}")

    return EventExtraction(
        all_reasoning_events=lists["all_reasoning_events"],
        matched_events=lists["matched_events"],
        error_matched=lists["error_matched"],
        error_use=lists["error_use"],
        neutral_events=lists["neutral_events"],
        missed_events=lists["missed_events"],
        diagnostics=diagnostics,
    )


def extraction_to_json(extraction: EventExtraction) -> dict:
    out = {key: list(getattr(extraction, key)) for key in EXTRACTION_KEYS}
    out["diagnostics"] = list(extraction.diagnostics)
    return out


def extraction_from_json(obj: dict) -> EventExtraction:
    return EventExtraction(
        all_reasoning_events=list(obj.get("all_reasoning_events", [])),
        matched_events=list(obj.get("matched_events", [])),
        error_matched=list(obj.get("error_matched", [])),
        error_use=list(obj.get("error_use", [])),
        neutral_events=list(obj.get("neutral_events", [])),
        missed_events=list(obj.get("missed_events", [])),
        diagnostics=list(obj.get("diagnostics", [])),
    )
