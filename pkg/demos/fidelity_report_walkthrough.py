"""
From traces to a perception fidelity report
===========================================

Loads the committed test corpus (50 questions, 55 traces from two mock
models), extracts categorized audio events from every trace with the
fixture-backed judge, and aggregates the per-trace counts into the
fidelity metrics, length bins, and correlation that make up a report.

Run from the repository root:

    python3 demos/fidelity_report_walkthrough.py
"""

import json
from pathlib import Path

from cafeval.judge.gateway import MockJudge
from cafeval.metrics import bin_by_length, compute_metrics, counts_from_extraction
from cafeval.reports import ExtractionRecord, build_report, run_extraction
from cafeval.samples import load_dataset, load_traces
from cafeval.stats import pearson
from cafeval.traces import parse_mpar2

CORPUS = Path(__file__).resolve().parents[1] / "tests" / "data" / "corpus"

# ---------------------------------------------------------------------------
# 1. Load the corpus.  The fixture file maps each extraction prompt to a
#    canned judge reply, so the whole walkthrough runs offline.
# ---------------------------------------------------------------------------

samples = load_dataset(CORPUS / "dataset.jsonl")
traces = load_traces(CORPUS / "traces.jsonl")
judge = MockJudge(
    "echo_fixture", fixtures=json.loads((CORPUS / "fixtures.json").read_text())
)
by_id = {s.id: s for s in samples}

print("samples:", len(samples))
print("traces: ", len(traces), "from models", sorted({t.model_id for t in traces}))
print()

# ---------------------------------------------------------------------------
# 2. One trace in detail.  The judge sorts every audio event the model
#    mentioned into matched / hallucinated / misused / neutral, plus the
#    caption events it missed.
# ---------------------------------------------------------------------------

# pick the first trace that shows a partial match, so every category is visible
for trace in traces:
    extraction = run_extraction(by_id[trace.sample_id], trace.raw_text, judge)
    if extraction.matched_events and extraction.missed_events:
        break
counts = counts_from_extraction(extraction)
metrics = compute_metrics(counts)

print("trace:", trace.sample_id, "from", trace.model_id)
print("matched events:     ", extraction.matched_events)
print("missed events:      ", extraction.missed_events)
print("prediction space:   ", counts.n_pred, "events, target space:", counts.n_tgt)
print("perception accuracy: {:.3f}".format(metrics.acc_per))
print("omission rate:       {:.3f}".format(metrics.err_omit))
print()

# ---------------------------------------------------------------------------
# 3. The full report joins every trace with its extraction and rolls the
#    counts up per model: pooled micro ratios, per-trace macro means, and
#    the count of traces whose ratios are undefined.
# ---------------------------------------------------------------------------

records = [
    ExtractionRecord(
        t.sample_id,
        t.model_id,
        t.run_index,
        run_extraction(by_id[t.sample_id], t.raw_text, judge),
    )
    for t in traces
]
report = build_report(samples, traces, records)

for model, entry in report["models"].items():
    micro = entry["micro"]
    print(
        "{:16s} n={:2d} acc={:.3f} hallucination={:.3f} omission={:.3f}".format(
            model, entry["n"], micro["acc_per"], micro["err_per"], micro["err_omit"]
        )
    )
print()

# ---------------------------------------------------------------------------
# 4. Does perception quality decay as traces grow?  Bin traces by token
#    length and correlate mean accuracy against the bin midpoints.
# ---------------------------------------------------------------------------

model = "mock-lalm"
by_key = {r.key: r.extraction for r in records}
rows = []
for t in traces:
    if t.model_id != model:
        continue
    parsed = parse_mpar2(t.raw_text, strict=False)
    m = compute_metrics(counts_from_extraction(by_key[t.key]))
    correct = 1 if parsed.final_answer == by_id[t.sample_id].answer_key else 0
    rows.append((parsed.token_len, m.acc_per, correct))
points = bin_by_length(rows, width=40.0)

print("length bins for", model)
for point in points:
    shown = "-" if point.acc_per_mean is None else "{:.3f}".format(point.acc_per_mean)
    print("  mid={:5.0f} n={:2d} acc={}".format(point.bin_mid, point.n, shown))

defined = [(p.bin_mid, p.acc_per_mean) for p in points if p.acc_per_mean is not None]
result = pearson([x for x, _ in defined], [y for _, y in defined])
print()
print(
    "accuracy vs length: r={:+.3f} p={:.3f} over {} bins".format(
        result.r, result.p, result.n
    )
)
