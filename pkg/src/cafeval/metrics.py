"""Perceptual-fidelity metrics over categorized audio events.

Every audio event a model mentions falls into one of four prediction
categories (matched, hallucinated, misused, neutral); events it should
have used but did not are misses.  Ratios over those counts quantify how
faithfully a reasoning trace perceived the audio:

    acc_per  = matched / predicted
    err_per  = hallucinated / predicted
    err_use  = misused / predicted
    err_omit = missed / required
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .judge.replies import EventExtraction


@dataclass(frozen=True)
class EventCounts:
    n_mat: int
    n_hal: int
    n_misuse: int
    n_neu: int
    n_miss: int

    def __post_init__(self) -> None:
        for name in ("n_mat", "n_hal", "n_misuse", "n_neu", "n_miss"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer")

    @property
    def n_pred(self) -> int:
        """Events the model asserted: matched + hallucinated + misused + neutral."""
        return self.n_mat + self.n_hal + self.n_misuse + self.n_neu

    @property
    def n_tgt(self) -> int:
        """Events the answer required: matched + missed."""
        return self.n_mat + self.n_miss

    def __add__(self, other: "EventCounts") -> "EventCounts":
        return EventCounts(
            self.n_mat + other.n_mat,
            self.n_hal + other.n_hal,
            self.n_misuse + other.n_misuse,
            self.n_neu + other.n_neu,
            self.n_miss + other.n_miss,
        )


@dataclass(frozen=True)
class FidelityMetrics:
    """Ratios are None when their denominator is zero (no events to judge)."""

    n_pred: int
    n_tgt: int
    acc_per: float | None
    err_per: float | None
    err_use: float | None
    err_omit: float | None


@dataclass(frozen=True)
class AggregateMetrics:
    """Micro-average (pooled counts) plus macro means as a secondary view."""

    n: int
    micro: FidelityMetrics
    macro_acc_per: float | None
    macro_err_per: float | None
    macro_err_use: float | None
    macro_err_omit: float | None
    undefined_pred_n: int  # traces with no predicted events
    undefined_tgt_n: int  # traces with no required events


def _dedup(items: Iterable[str]) -> int:
    seen = set()
    for item in items:
        key = str(item).strip().casefold()
        if key:
            seen.add(key)
    return len(seen)


def counts_from_extraction(extraction: EventExtraction) -> EventCounts:
    """Count unique events per category; case and surrounding space ignored."""
    return EventCounts(
        n_mat=_dedup(extraction.matched_events),
        n_hal=_dedup(extraction.error_matched),
        n_misuse=_dedup(extraction.error_use),
        n_neu=_dedup(extraction.neutral_events),
        n_miss=_dedup(extraction.missed_events),
    )


def compute_metrics(counts: EventCounts) -> FidelityMetrics:
    pred = counts.n_pred
    tgt = counts.n_tgt
    return FidelityMetrics(
        n_pred=pred,
        n_tgt=tgt,
        acc_per=counts.n_mat / pred if pred else None,
        err_per=counts.n_hal / pred if pred else None,
        err_use=counts.n_misuse / pred if pred else None,
        err_omit=counts.n_miss / tgt if tgt else None,
    )


def _mean_defined(values: list[float | None]) -> float | None:
    defined = [v for v in values if v is not None]
    if not defined:
        return None
    return math.fsum(defined) / len(defined)


def aggregate_micro(counts_list: Sequence[EventCounts]) -> AggregateMetrics:
    """Pool counts across traces, then compute ratios once (micro-average)."""
    if not counts_list:
        raise ValueError("counts_list must be non-empty")
    total = EventCounts(0, 0, 0, 0, 0)
    for counts in counts_list:
        total = total + counts
    per_trace = [compute_metrics(c) for c in counts_list]
    return AggregateMetrics(
        n=len(counts_list),
        micro=compute_metrics(total),
        macro_acc_per=_mean_defined([m.acc_per for m in per_trace]),
        macro_err_per=_mean_defined([m.err_per for m in per_trace]),
        macro_err_use=_mean_defined([m.err_use for m in per_trace]),
        macro_err_omit=_mean_defined([m.err_omit for m in per_trace]),
        undefined_pred_n=sum(1 for c in counts_list if c.n_pred == 0),
        undefined_tgt_n=sum(1 for c in counts_list if c.n_tgt == 0),
    )


@dataclass(frozen=True)
class BinnedPoint:
    bin_mid: float
    acc_per_mean: float | None
    reasoning_acc: float
    n: int


def bin_by_length(
    points: Sequence[tuple[float, float | None, int]],
    width: float = 40.0,
    origin: float = 0.0,
) -> list[BinnedPoint]:
    """Group (token_len, acc_per, correct) points into fixed-width length bins.

    Bin i covers [origin + i*width, origin + (i+1)*width); empty bins are
    omitted.  acc_per values of None (undefined) do not enter the mean but
    the trace still counts toward n and the answer-accuracy rate.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    bins: dict[int, list[tuple[float | None, int]]] = {}
    for token_len, acc_per, correct in points:
        if token_len < origin:
            raise ValueError(f"token length {token_len} below bin origin {origin}")
        index = math.floor((token_len - origin) / width)
        bins.setdefault(index, []).append((acc_per, 1 if correct else 0))
    out = []
    for index in sorted(bins):
        entries = bins[index]
        accs = [a for a, _ in entries if a is not None]
        out.append(
            BinnedPoint(
                bin_mid=origin + (index + 0.5) * width,
                acc_per_mean=math.fsum(accs) / len(accs) if accs else None,
                reasoning_acc=math.fsum(c for _, c in entries) / len(entries),
                n=len(entries),
            )
        )
    return out


def length_stats_by_tag(
    records: Sequence[tuple[Sequence[str], float]]
) -> dict[str, tuple[float, int]]:
    """Mean trace length per tag from (tags, token_len) records."""
    sums: dict[str, float] = {}
    counts: dict[str, int] = {}
    for tags, token_len in records:
        for tag in tags:
            if tag is None:
                continue
            sums[tag] = sums.get(tag, 0.0) + token_len
            counts[tag] = counts.get(tag, 0) + 1
    return {tag: (sums[tag] / counts[tag], counts[tag]) for tag in sums}
