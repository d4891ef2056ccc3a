"""Evaluation report assembly and deterministic serialization.

A report joins three inputs (dataset, traces, extraction records) into a
per-model summary: pooled fidelity metrics, accuracy-vs-length bins, the
correlation between binned perception accuracy and answer accuracy, and
mean trace length per tag.  Serialization is byte-stable: floats rounded
to a fixed precision, keys sorted, newline-terminated.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .judge.gateway import Judge, ask_extraction
from .judge.replies import EventExtraction, extraction_from_json, extraction_to_json
from .judge.templates import render_template, substitute, templates_digest
from .metrics import (
    EventCounts,
    aggregate_micro,
    bin_by_length,
    counts_from_extraction,
    length_stats_by_tag,
)
from .samples import AudioQASample, TraceRecord
from .stats import pearson
from .traces import extract_answer, count_tokens, parse_mpar2

FLOAT_PLACES = 10


class ReportJoinError(ValueError):
    """Trace or extraction records reference ids absent from their inputs."""


@dataclass
class ExtractionRecord:
    sample_id: str
    model_id: str
    run_index: int
    extraction: EventExtraction | None  # None when the judge never answered
    flagged: bool = False
    flag_reason: str | None = None

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.sample_id, self.model_id, self.run_index)

    def to_json(self) -> dict:
        return {
            "sample_id": self.sample_id,
            "model_id": self.model_id,
            "run_index": self.run_index,
            "extraction": extraction_to_json(self.extraction) if self.extraction else None,
            "flagged": self.flagged,
            "flag_reason": self.flag_reason,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExtractionRecord":
        raw = obj.get("extraction")
        return cls(
            sample_id=obj["sample_id"],
            model_id=obj["model_id"],
            run_index=int(obj.get("run_index", 0)),
            extraction=extraction_from_json(raw) if raw else None,
            flagged=bool(obj.get("flagged", False)),
            flag_reason=obj.get("flag_reason"),
        )


def load_extractions(path: str | Path) -> list[ExtractionRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(ExtractionRecord.from_json(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ReportJoinError(f"{path}:{lineno}: bad extraction record: {exc}") from None
    return records


def extraction_prompt(sample: AudioQASample, raw_text: str | TraceRecord) -> str:
    """Render the event-extraction prompt for one trace.

    The reasoning shown to the judge is the trace's thinking content (the
    lenient parse handles free-form traces); the final answer block is not
    part of the reasoning path.
    """
    parsed = parse_mpar2(raw_text, strict=False)
    reasoning = parsed.thinking_text or parsed.final_answer
    choices_block = "\n".join(f"{letter}. {text}" for letter, text in sample.choices)
    return render_template(
        "event_extraction",
        {
            "QUESTION": f"{sample.question}\n{choices_block}",
            "CORRECT_ANSWER": sample.answer_text,
            "GROUND_TRUTH_CAPTION": sample.caption,
            "MODEL_REASONING": reasoning,
        },
    )


def run_extraction(
    sample: AudioQASample, raw_text: str | TraceRecord, judge: Judge
) -> EventExtraction:
    """One judge call (plus at most one re-ask) extracting categorized events."""
    return ask_extraction(judge, extraction_prompt(sample, raw_text))


def fingerprint(judge_model: str, weights: dict | None = None) -> str:
    """Short digest tying a report to templates, judge identity and weights."""
    h = hashlib.sha256()
    h.update(templates_digest().encode("utf-8"))
    h.update(b"\x00")
    h.update(judge_model.encode("utf-8"))
    h.update(b"\x00")
    h.update(json.dumps(weights or {}, sort_keys=True).encode("utf-8"))
    return h.hexdigest()[:16]


# mapping a free-text final answer onto a choice letter is tool plumbing,
# not part of the scored prompt set, so it lives here rather than in the
# template registry
_ANSWER_MATCH_PROMPT = """\
You map a model's final answer onto one of the given multiple-choice letters.

Choices:
{{choices_block}}

Model final answer:
{{final_answer}}

Reply with the single capital letter of the choice the final answer selects, or NONE if it selects none.
"""


def judge_answer_matcher(judge: Judge) -> Callable[[object, AudioQASample], int]:
    """Answer matcher that defers letter mapping to a judge."""

    def match(parsed, sample: AudioQASample) -> int:
        choices_block = "\n".join(f"{letter}. {text}" for letter, text in sample.choices)
        prompt = substitute(
            _ANSWER_MATCH_PROMPT,
            {"choices_block": choices_block, "final_answer": parsed.final_answer},
        )
        reply = judge.complete(prompt).strip()
        m = re.search(r"\b([A-F])\b", reply)
        letter = m.group(1) if m else None
        return 1 if letter == sample.answer_key else 0

    return match


def exact_answer_matcher(parsed, sample: AudioQASample) -> int:
    return 1 if extract_answer(parsed, sample.choices) == sample.answer_key else 0


def build_report(
    samples: Sequence[AudioQASample],
    traces: Sequence[TraceRecord],
    extractions: Sequence[ExtractionRecord],
    *,
    counter: str = "whitespace",
    bin_width: float = 40.0,
    bin_origin: float = 0.0,
    report_fingerprint: str = "",
    answer_matcher: Callable[[object, AudioQASample], int] = exact_answer_matcher,
) -> dict:
    by_id = {s.id: s for s in samples}
    missing = sorted({t.sample_id for t in traces if t.sample_id not in by_id})
    if missing:
        raise ReportJoinError(f"traces reference unknown sample ids: {', '.join(missing)}")
    trace_by_key = {t.key: t for t in traces}
    missing_traces = sorted({str(r.key) for r in extractions if r.key not in trace_by_key})
    if missing_traces:
        raise ReportJoinError(
            f"extractions reference unknown trace keys: {', '.join(missing_traces)}"
        )

    per_model: dict[str, dict] = {}
    for record in sorted(extractions, key=lambda r: r.key):
        slot = per_model.setdefault(
            record.model_id,
            {"counts": [], "points": [], "tags": [], "flagged": 0},
        )
        if record.extraction is None:
            slot["flagged"] += 1
            continue
        sample = by_id[record.sample_id]
        trace = trace_by_key[record.key]
        parsed = parse_mpar2(trace, strict=False, counter=counter)
        counts = counts_from_extraction(record.extraction)
        correct = answer_matcher(parsed, sample)
        acc_per = counts.n_mat / counts.n_pred if counts.n_pred else None
        slot["counts"].append(counts)
        slot["points"].append((parsed.token_len, acc_per, correct))
        tags = [f"domain:{sample.domain_tag}"]
        if sample.difficulty_tag:
            tags.append(f"difficulty:{sample.difficulty_tag}")
        if sample.task_tag:
            tags.append(f"task:{sample.task_tag}")
        slot["tags"].append((tags, parsed.token_len))

    models: dict[str, dict] = {}
    for model_id in sorted(per_model):
        slot = per_model[model_id]
        entry: dict = {"n": len(slot["counts"]), "flagged_n": slot["flagged"]}
        if slot["counts"]:
            agg = aggregate_micro(slot["counts"])
            entry["micro"] = {
                "n_pred": agg.micro.n_pred,
                "n_tgt": agg.micro.n_tgt,
                "acc_per": agg.micro.acc_per,
                "err_per": agg.micro.err_per,
                "err_use": agg.micro.err_use,
                "err_omit": agg.micro.err_omit,
            }
            entry["macro"] = {
                "acc_per": agg.macro_acc_per,
                "err_per": agg.macro_err_per,
                "err_use": agg.macro_err_use,
                "err_omit": agg.macro_err_omit,
            }
            entry["undefined_pred_n"] = agg.undefined_pred_n
            entry["undefined_tgt_n"] = agg.undefined_tgt_n
            entry["undefined_n"] = sum(
                1 for c in slot["counts"] if c.n_pred == 0 or c.n_tgt == 0
            )
            entry["reasoning_acc"] = sum(p[2] for p in slot["points"]) / len(slot["points"])
            binned = bin_by_length(slot["points"], width=bin_width, origin=bin_origin)
            entry["bins"] = [
                {
                    "bin_mid": b.bin_mid,
                    "acc_per_mean": b.acc_per_mean,
                    "reasoning_acc": b.reasoning_acc,
                    "n": b.n,
                }
                for b in binned
            ]
            defined = [
                (b.acc_per_mean, b.reasoning_acc) for b in binned if b.acc_per_mean is not None
            ]
            entry["correlation"] = _bin_correlation(defined)
            entry["length_by_tag"] = {
                tag: {"mean": mean, "n": count}
                for tag, (mean, count) in sorted(length_stats_by_tag(slot["tags"]).items())
            }
        models[model_id] = entry

    return {
        "tool_version": __version__,
        "fingerprint": report_fingerprint,
        "counter": counter,
        "bin_width": bin_width,
        "bin_origin": bin_origin,
        "n_samples": len(samples),
        "n_traces": len(traces),
        "n_extractions": len(extractions),
        "models": models,
    }


def _bin_correlation(points: list[tuple[float, float]]) -> dict:
    if len(points) < 3:
        return {"error": f"need at least 3 defined bins, have {len(points)}"}
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    try:
        result = pearson(xs, ys)
    except ValueError as exc:
        return {"error": str(exc)}
    return {"r": result.r, "p": result.p, "n": result.n}


def _round_floats(obj, places: int = FLOAT_PLACES):
    if isinstance(obj, float):
        return round(obj, places)
    if isinstance(obj, dict):
        return {k: _round_floats(v, places) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v, places) for v in obj]
    return obj


def report_json_bytes(report: dict) -> bytes:
    body = json.dumps(_round_floats(report), sort_keys=True, indent=2, ensure_ascii=False)
    return (body + "\n").encode("utf-8")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(round(value, FLOAT_PLACES))
    return str(value)


def metrics_csv_bytes(report: dict) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["model", "n", "acc_per", "err_per", "err_use", "err_omit", "undefined_n"])
    for model_id in sorted(report["models"]):
        entry = report["models"][model_id]
        if "micro" not in entry:
            continue
        micro = entry["micro"]
        writer.writerow(
            [
                model_id,
                _cell(entry["n"]),
                _cell(micro["acc_per"]),
                _cell(micro["err_per"]),
                _cell(micro["err_use"]),
                _cell(micro["err_omit"]),
                _cell(entry["undefined_n"]),
            ]
        )
    return out.getvalue().encode("utf-8")


def bins_csv_bytes(report: dict) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["model", "bin_mid", "acc_per_mean", "reasoning_acc", "n"])
    for model_id in sorted(report["models"]):
        entry = report["models"][model_id]
        for b in entry.get("bins", []):
            writer.writerow(
                [
                    model_id,
                    _cell(b["bin_mid"]),
                    _cell(b["acc_per_mean"]),
                    _cell(b["reasoning_acc"]),
                    _cell(b["n"]),
                ]
            )
    return out.getvalue().encode("utf-8")


def write_report(outdir: str | Path, report: dict) -> dict[str, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "report": outdir / "report.json",
        "metrics": outdir / "metrics.csv",
        "bins": outdir / "bins.csv",
    }
    paths["report"].write_bytes(report_json_bytes(report))
    paths["metrics"].write_bytes(metrics_csv_bytes(report))
    paths["bins"].write_bytes(bins_csv_bytes(report))
    return paths
