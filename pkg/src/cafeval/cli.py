"""Batch command-line entry points.

Subcommands:

* extract: run judge event extraction over every trace, resumable JSONL out
* eval: join dataset + traces + extractions into a metrics report
* reward: score every trace with the full reward stack, resumable JSONL out
* serve: run the HTTP reward service

Judge failures never abort a batch run: the affected record is flagged and
written with zeroed or missing scores, and the process exits nonzero only
when the flagged fraction exceeds --max-flagged-pct.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .judge.gateway import (
    HttpJudge,
    JudgeError,
    MockJudge,
    endpoint_from_env,
    load_fixtures,
)
from .reports import (
    ExtractionRecord,
    ReportJoinError,
    build_report,
    exact_answer_matcher,
    fingerprint,
    judge_answer_matcher,
    load_extractions,
    run_extraction,
    write_report,
)
from .rewards import RewardWeights, compute_trace_reward
from .samples import DatasetError, load_dataset, load_traces

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_FLAGGED = 3


def _add_judge_args(parser: argparse.ArgumentParser, required: bool) -> None:
    group = parser.add_argument_group("judge")
    group.add_argument("--judge-endpoint", help="base URL of a chat-completions judge")
    group.add_argument("--judge-model", default="judge", help="judge model name")
    group.add_argument(
        "--mock",
        choices=("rubric_hash", "echo_fixture"),
        help="use a deterministic offline judge instead of HTTP",
    )
    group.add_argument("--fixtures", help="fixture file for --mock echo_fixture")
    group.add_argument("--seed", type=int, default=0, help="seed for --mock rubric_hash")
    group.add_argument("--max-retries", type=int, default=3)
    group.add_argument("--timeout-s", type=float, default=60.0)
    group.add_argument("--max-inflight", type=int, default=8)
    parser.set_defaults(judge_required=required)


def build_judge(args: argparse.Namespace):
    """Returns (judge, judge_name, judge_kind) or (None, ...) when optional."""
    if args.mock and args.judge_endpoint:
        raise SystemExit("choose either --mock or --judge-endpoint, not both")
    if args.mock:
        fixtures = None
        if args.mock == "echo_fixture":
            if not args.fixtures:
                raise SystemExit("--mock echo_fixture requires --fixtures")
            fixtures = load_fixtures(args.fixtures)
        judge = MockJudge(policy=args.mock, fixtures=fixtures, seed=args.seed)
        return judge, f"mock:{args.mock}:{args.seed}", "mock"
    if args.judge_endpoint:
        endpoint = endpoint_from_env(
            base_url=args.judge_endpoint,
            model_name=args.judge_model,
            max_retries=args.max_retries,
            timeout_s=args.timeout_s,
            max_inflight=args.max_inflight,
        )
        return HttpJudge(endpoint), args.judge_model, "ok"
    if getattr(args, "judge_required", False):
        raise SystemExit("a judge is required: pass --judge-endpoint or --mock")
    return None, "offline", "none"


def _existing_keys(path: Path) -> set[tuple[str, str, int]]:
    keys = set()
    if not path.exists():
        return keys
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            keys.add((obj["sample_id"], obj["model_id"], int(obj.get("run_index", 0))))
    return keys


def _rewrite_sorted(path: Path) -> list[dict]:
    """Re-sort a JSONL output by record key so reruns are byte-identical."""
    records = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    records.sort(key=lambda r: (r["sample_id"], r["model_id"], int(r.get("run_index", 0))))
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
    return records


def _run_batch(args, traces, dataset_by_id, worker) -> int:
    """Shared driver for extract/reward: resume, parallelize, re-sort, gate."""
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    done = _existing_keys(out_path) if args.resume else set()
    if not args.resume and out_path.exists():
        out_path.unlink()
    todo = [t for t in traces if t.key not in done]

    write_lock = threading.Lock()

    def process(trace):
        record = worker(trace, dataset_by_id[trace.sample_id])
        with write_lock:
            with out_path.open("a", encoding="utf-8", newline="\n") as fh:
                fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    if args.workers > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            list(pool.map(process, todo))
    else:
        for trace in todo:
            process(trace)

    records = _rewrite_sorted(out_path)
    flagged = sum(1 for r in records if r.get("flagged"))
    print(f"{len(records)} records written to {out_path} ({flagged} flagged)")
    if records and flagged / len(records) * 100.0 > args.max_flagged_pct:
        print(
            f"flagged fraction {flagged}/{len(records)} exceeds {args.max_flagged_pct}%",
            file=sys.stderr,
        )
        return EXIT_FLAGGED
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    judge, _, _ = build_judge(args)
    samples = load_dataset(args.dataset)
    traces = load_traces(args.traces)
    by_id = {s.id: s for s in samples}
    missing = sorted({t.sample_id for t in traces if t.sample_id not in by_id})
    if missing:
        raise DatasetError(f"traces reference unknown sample ids: {', '.join(missing)}")

    def worker(trace, sample) -> dict:
        try:
            extraction = run_extraction(sample, trace.raw_text, judge)
            record = ExtractionRecord(
                trace.sample_id, trace.model_id, trace.run_index, extraction
            )
        except JudgeError as exc:
            record = ExtractionRecord(
                trace.sample_id,
                trace.model_id,
                trace.run_index,
                None,
                flagged=True,
                flag_reason=str(exc),
            )
        return record.to_json()

    return _run_batch(args, traces, by_id, worker)


def cmd_eval(args: argparse.Namespace) -> int:
    samples = load_dataset(args.dataset)
    traces = load_traces(args.traces)
    extractions = load_extractions(args.extractions)
    judge, judge_name, _ = build_judge(args)
    if args.matcher == "judge":
        if judge is None:
            raise SystemExit("--matcher judge requires --judge-endpoint or --mock")
        matcher = judge_answer_matcher(judge)
    else:
        matcher = exact_answer_matcher
    report = build_report(
        samples,
        traces,
        extractions,
        counter=args.counter,
        bin_width=args.bin_width,
        bin_origin=args.bin_origin,
        report_fingerprint=fingerprint(judge_name),
        answer_matcher=matcher,
    )
    paths = write_report(args.out, report)
    for name in ("report", "metrics", "bins"):
        print(f"{name}: {paths[name]}")
    return EXIT_OK


def cmd_reward(args: argparse.Namespace) -> int:
    judge, judge_name, _ = build_judge(args)
    samples = load_dataset(args.dataset)
    traces = load_traces(args.traces)
    by_id = {s.id: s for s in samples}
    missing = sorted({t.sample_id for t in traces if t.sample_id not in by_id})
    if missing:
        raise DatasetError(f"traces reference unknown sample ids: {', '.join(missing)}")
    weights = RewardWeights.from_overrides(json.loads(args.weights) if args.weights else None)

    def worker(trace, sample) -> dict:
        breakdown = compute_trace_reward(
            trace,
            sample,
            judge,
            weights=weights,
            score_malformed=args.score_malformed,
        )
        flagged = any(
            flag.endswith("_unavailable") or flag == "judge_transport"
            for flag in breakdown.flags
        )
        return {
            "sample_id": trace.sample_id,
            "model_id": trace.model_id,
            "run_index": trace.run_index,
            "reward": breakdown.to_json(),
            "fingerprint": fingerprint(judge_name, weights.to_json()),
            "flagged": flagged,
        }

    return _run_batch(args, traces, by_id, worker)


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    judge, _, judge_kind = build_judge(args)
    dataset = None
    if args.dataset:
        dataset = {s.id: s for s in load_dataset(args.dataset)}
    app = create_app(
        dataset=dataset,
        judge=judge,
        judge_kind=judge_kind,
        score_malformed=args.score_malformed,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cafeval",
        description="Audio reasoning-trace fidelity evaluation and reward scoring",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="judge-extract audio events from traces")
    p_extract.add_argument("--dataset", required=True)
    p_extract.add_argument("--traces", required=True)
    p_extract.add_argument("--out", required=True, help="output JSONL (appended, resumable)")
    p_extract.add_argument("--no-resume", dest="resume", action="store_false")
    p_extract.add_argument("--max-flagged-pct", type=float, default=5.0)
    p_extract.add_argument("--workers", type=int, default=4)
    _add_judge_args(p_extract, required=True)
    p_extract.set_defaults(func=cmd_extract)

    p_eval = sub.add_parser("eval", help="build a metrics report from extractions")
    p_eval.add_argument("--dataset", required=True)
    p_eval.add_argument("--traces", required=True)
    p_eval.add_argument("--extractions", required=True)
    p_eval.add_argument("--out", required=True, help="output directory")
    p_eval.add_argument("--bin-width", type=float, default=40.0)
    p_eval.add_argument("--bin-origin", type=float, default=0.0)
    p_eval.add_argument("--counter", choices=("whitespace", "chars_div4"), default="whitespace")
    p_eval.add_argument("--matcher", choices=("exact", "judge"), default="exact")
    _add_judge_args(p_eval, required=False)
    p_eval.set_defaults(func=cmd_eval)

    p_reward = sub.add_parser("reward", help="score traces with the full reward stack")
    p_reward.add_argument("--dataset", required=True)
    p_reward.add_argument("--traces", required=True)
    p_reward.add_argument("--out", required=True, help="output JSONL (appended, resumable)")
    p_reward.add_argument("--weights", help="JSON object of weight overrides")
    p_reward.add_argument("--score-malformed", action="store_true")
    p_reward.add_argument("--no-resume", dest="resume", action="store_false")
    p_reward.add_argument("--max-flagged-pct", type=float, default=5.0)
    p_reward.add_argument("--workers", type=int, default=4)
    _add_judge_args(p_reward, required=True)
    p_reward.set_defaults(func=cmd_reward)

    p_serve = sub.add_parser("serve", help="run the HTTP reward service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--dataset", help="dataset made addressable by sample_id")
    p_serve.add_argument("--score-malformed", action="store_true")
    _add_judge_args(p_serve, required=True)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (DatasetError, ReportJoinError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
