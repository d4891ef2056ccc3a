"""In-process tests of the batch CLI: resume, flag gating, exits, outputs."""

import json
import random
from pathlib import Path

import pytest

from helpers_gen import build_trace_text, gen_sample, gen_wellformed_trace

from cafeval.cli import EXIT_ERROR, EXIT_FLAGGED, EXIT_OK, main
from cafeval.judge.gateway import prompt_hash
from cafeval.reports import extraction_prompt
from cafeval.samples import TraceRecord, serialize_dataset, serialize_traces

CORPUS = Path(__file__).parent / "data" / "corpus"
GOLDEN = Path(__file__).parent / "data" / "golden"


def small_corpus(tmp_path, n=3, seed=11):
    rng = random.Random(seed)
    samples = [gen_sample(rng, i) for i in range(1, n + 1)]
    traces = [
        TraceRecord(s.id, "m1", gen_wellformed_trace(rng, s), 0) for s in samples
    ]
    dataset_path = tmp_path / "dataset.jsonl"
    traces_path = tmp_path / "traces.jsonl"
    serialize_dataset(samples, dataset_path)
    serialize_traces(traces, traces_path)
    return samples, traces, dataset_path, traces_path


def extraction_fixtures(samples, traces) -> dict:
    by_id = {s.id: s for s in samples}
    reply = json.dumps(
        {
            "all_reasoning_events": ["a hum"],
            "matched_events": ["a hum"],
            "error_matched": [],
            "error_use": [],
            "neutral_events": [],
            "missed_events": [],
        }
    )
    return {
        prompt_hash(extraction_prompt(by_id[t.sample_id], t.raw_text)): reply
        for t in traces
    }


def write_fixtures(path: Path, fixtures: dict) -> None:
    path.write_text(json.dumps(fixtures), encoding="utf-8")


def read_jsonl(path: Path) -> list[dict]:
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


def run_extract(dataset, traces, out, fixtures, *extra) -> int:
    return main(
        [
            "extract",
            "--dataset", str(dataset),
            "--traces", str(traces),
            "--out", str(out),
            "--mock", "echo_fixture",
            "--fixtures", str(fixtures),
            *extra,
        ]
    )


def test_extract_writes_sorted_unflagged_records(tmp_path, capsys):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    fixtures_path = tmp_path / "fixtures.json"
    write_fixtures(fixtures_path, extraction_fixtures(samples, traces))
    out = tmp_path / "extractions.jsonl"

    code = run_extract(dataset_path, traces_path, out, fixtures_path, "--workers", "2")

    assert code == EXIT_OK
    records = read_jsonl(out)
    assert len(records) == 3
    keys = [(r["sample_id"], r["model_id"], r["run_index"]) for r in records]
    assert keys == sorted(keys)
    assert all(r["extraction"] is not None for r in records)
    assert all(not r["flagged"] for r in records)
    assert "3 records written" in capsys.readouterr().out


def test_extract_resume_skips_completed_records(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    fixtures_path = tmp_path / "fixtures.json"
    write_fixtures(fixtures_path, extraction_fixtures(samples, traces))
    out = tmp_path / "extractions.jsonl"
    assert run_extract(dataset_path, traces_path, out, fixtures_path) == EXIT_OK
    first_bytes = out.read_bytes()

    # grow the corpus by one trace, but supply a fixture for the new one only:
    # if resume re-issued judge calls for the finished three, they would miss
    # their fixtures and come back flagged
    rng = random.Random(99)
    extra_sample = gen_sample(rng, 4)
    extra_trace = TraceRecord(extra_sample.id, "m1", gen_wellformed_trace(rng, extra_sample), 0)
    serialize_dataset(samples + [extra_sample], dataset_path)
    serialize_traces(traces + [extra_trace], traces_path)
    write_fixtures(fixtures_path, extraction_fixtures([extra_sample], [extra_trace]))

    code = run_extract(dataset_path, traces_path, out, fixtures_path)

    assert code == EXIT_OK
    records = read_jsonl(out)
    assert len(records) == 4
    assert all(not r["flagged"] for r in records)
    assert first_bytes.decode().splitlines() == [
        json.dumps(r, sort_keys=True, ensure_ascii=False)
        for r in records
        if r["sample_id"] != extra_sample.id
    ]


def test_extract_no_resume_reprocesses_everything(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    fixtures_path = tmp_path / "fixtures.json"
    write_fixtures(fixtures_path, extraction_fixtures(samples, traces))
    out = tmp_path / "extractions.jsonl"
    assert run_extract(dataset_path, traces_path, out, fixtures_path) == EXIT_OK

    # wipe the fixtures; a fresh pass must re-ask and fail for every record
    write_fixtures(fixtures_path, {})
    code = run_extract(dataset_path, traces_path, out, fixtures_path, "--no-resume")

    assert code == EXIT_FLAGGED
    assert all(r["flagged"] for r in read_jsonl(out))


def test_extract_flag_threshold_gates_exit_code(tmp_path, capsys):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    fixtures_path = tmp_path / "fixtures.json"
    write_fixtures(fixtures_path, {})
    out = tmp_path / "extractions.jsonl"

    code = run_extract(dataset_path, traces_path, out, fixtures_path)
    captured = capsys.readouterr()

    assert code == EXIT_FLAGGED
    assert "exceeds" in captured.err
    records = read_jsonl(out)
    assert all(r["flagged"] and r["extraction"] is None for r in records)
    assert all("no fixture" in r["flag_reason"] for r in records)

    # the same run passes when the caller tolerates full flagging
    out2 = tmp_path / "extractions2.jsonl"
    assert (
        run_extract(dataset_path, traces_path, out2, fixtures_path, "--max-flagged-pct", "100")
        == EXIT_OK
    )


def test_extract_unknown_sample_id_is_an_error(tmp_path, capsys):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    ghost = TraceRecord("s9999", "m1", "<answer>A</answer>", 0)
    serialize_traces(traces + [ghost], traces_path)
    fixtures_path = tmp_path / "fixtures.json"
    write_fixtures(fixtures_path, {})

    code = run_extract(dataset_path, traces_path, tmp_path / "out.jsonl", fixtures_path)

    assert code == EXIT_ERROR
    assert "s9999" in capsys.readouterr().err


def test_reward_records_carry_breakdown_and_fingerprint(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    out = tmp_path / "rewards.jsonl"

    code = main(
        [
            "reward",
            "--dataset", str(dataset_path),
            "--traces", str(traces_path),
            "--out", str(out),
            "--mock", "rubric_hash",
        ]
    )

    assert code == EXIT_OK
    records = read_jsonl(out)
    assert len(records) == 3
    for record in records:
        reward = record["reward"]
        assert set(reward) == {
            "r_perception", "r_spr", "r_rea", "r_format", "r_all", "step_scores", "flags",
        }
        assert record["flagged"] is False
        assert len(record["fingerprint"]) == 16
        expected = (
            1.5 * reward["r_perception"]
            + 1.0 * reward["r_spr"]
            + 1.5 * reward["r_rea"]
            + 0.1 * reward["r_format"]
        )
        assert reward["r_all"] == pytest.approx(expected, abs=1e-12)


def test_reward_weights_override_removes_review_bonus(tmp_path):
    rng = random.Random(5)
    sample = gen_sample(rng, 1)
    trace_text = build_trace_text(
        ["[0.0, 1.0]: a steady hum"],
        [("What is audible?", "a steady hum")],
        "the hum is in the event list",
        "one step, consistent",
        sample.answer_key,
    )
    serialize_dataset([sample], tmp_path / "dataset.jsonl")
    serialize_traces([TraceRecord(sample.id, "m1", trace_text, 0)], tmp_path / "traces.jsonl")
    out = tmp_path / "rewards.jsonl"

    code = main(
        [
            "reward",
            "--dataset", str(tmp_path / "dataset.jsonl"),
            "--traces", str(tmp_path / "traces.jsonl"),
            "--out", str(out),
            "--mock", "rubric_hash",
            "--weights", '{"mu": 0}',
        ]
    )

    assert code == EXIT_OK
    (record,) = read_jsonl(out)
    # answer letter matches the key, so accuracy is 1; with mu zeroed the
    # review bonus vanishes and the term is exactly the binary accuracy
    assert record["reward"]["r_rea"] == 1.0


def test_reward_malformed_trace_scores_zero_by_default(tmp_path):
    rng = random.Random(6)
    sample = gen_sample(rng, 1)
    broken = gen_wellformed_trace(rng, sample).replace("</review>", "", 1)
    serialize_dataset([sample], tmp_path / "dataset.jsonl")
    serialize_traces([TraceRecord(sample.id, "m1", broken, 0)], tmp_path / "traces.jsonl")
    out = tmp_path / "rewards.jsonl"

    code = main(
        [
            "reward",
            "--dataset", str(tmp_path / "dataset.jsonl"),
            "--traces", str(tmp_path / "traces.jsonl"),
            "--out", str(out),
            "--mock", "rubric_hash",
        ]
    )

    assert code == EXIT_OK
    (record,) = read_jsonl(out)
    assert record["reward"]["r_all"] == 0.0
    assert record["reward"]["flags"] == ["malformed"]
    assert record["flagged"] is False


def test_reward_score_malformed_keeps_recoverable_components(tmp_path):
    rng = random.Random(6)
    sample = gen_sample(rng, 1)
    broken = gen_wellformed_trace(rng, sample).replace("</review>", "", 1)
    serialize_dataset([sample], tmp_path / "dataset.jsonl")
    serialize_traces([TraceRecord(sample.id, "m1", broken, 0)], tmp_path / "traces.jsonl")
    out = tmp_path / "rewards.jsonl"

    code = main(
        [
            "reward",
            "--dataset", str(tmp_path / "dataset.jsonl"),
            "--traces", str(tmp_path / "traces.jsonl"),
            "--out", str(out),
            "--mock", "rubric_hash",
            "--score-malformed",
        ]
    )

    assert code == EXIT_OK
    (record,) = read_jsonl(out)
    reward = record["reward"]
    assert "malformed" in reward["flags"]
    assert reward["r_format"] == 0.0
    expected = 1.5 * reward["r_perception"] + 1.0 * reward["r_spr"] + 1.5 * reward["r_rea"]
    assert reward["r_all"] == pytest.approx(expected, abs=1e-12)


def test_reward_reproduces_committed_golden_and_resume_is_free(tmp_path):
    out = tmp_path / "rewards.jsonl"
    args = [
        "reward",
        "--dataset", str(CORPUS / "dataset.jsonl"),
        "--traces", str(CORPUS / "traces.jsonl"),
        "--out", str(out),
        "--mock", "echo_fixture",
    ]

    code = main(args + ["--fixtures", str(CORPUS / "fixtures.json")])
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / "rewards.jsonl").read_bytes()

    # resuming over a complete output must issue no judge calls at all:
    # with an empty fixture file, any call would flag its record
    empty = tmp_path / "empty.json"
    write_fixtures(empty, {})
    code = main(args + ["--fixtures", str(empty)])
    assert code == EXIT_OK
    assert out.read_bytes() == (GOLDEN / "rewards.jsonl").read_bytes()


def test_eval_aggregates_do_not_depend_on_bin_width(tmp_path):
    extractions = tmp_path / "extractions.jsonl"
    code = run_extract(
        CORPUS / "dataset.jsonl",
        CORPUS / "traces.jsonl",
        extractions,
        CORPUS / "fixtures.json",
    )
    assert code == EXIT_OK

    outputs = {}
    for width in ("40", "80"):
        outdir = tmp_path / f"report{width}"
        code = main(
            [
                "eval",
                "--dataset", str(CORPUS / "dataset.jsonl"),
                "--traces", str(CORPUS / "traces.jsonl"),
                "--extractions", str(extractions),
                "--out", str(outdir),
                "--bin-width", width,
            ]
        )
        assert code == EXIT_OK
        outputs[width] = outdir

    assert (outputs["40"] / "metrics.csv").read_bytes() == (outputs["80"] / "metrics.csv").read_bytes()
    assert (outputs["40"] / "bins.csv").read_bytes() != (outputs["80"] / "bins.csv").read_bytes()


def test_eval_unknown_extraction_key_is_an_error(tmp_path, capsys):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    extractions = tmp_path / "extractions.jsonl"
    extractions.write_text(
        json.dumps(
            {
                "sample_id": "s0001",
                "model_id": "other-model",
                "run_index": 3,
                "extraction": None,
                "flagged": True,
                "flag_reason": "x",
            }
        )
        + "\n"
    )

    code = main(
        [
            "eval",
            "--dataset", str(dataset_path),
            "--traces", str(traces_path),
            "--extractions", str(extractions),
            "--out", str(tmp_path / "report"),
        ]
    )

    assert code == EXIT_ERROR
    assert "other-model" in capsys.readouterr().err


def test_mock_and_endpoint_flags_are_mutually_exclusive(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    with pytest.raises(SystemExit, match="not both"):
        main(
            [
                "reward",
                "--dataset", str(dataset_path),
                "--traces", str(traces_path),
                "--out", str(tmp_path / "out.jsonl"),
                "--mock", "rubric_hash",
                "--judge-endpoint", "http://judge.local",
            ]
        )


def test_extract_requires_a_judge(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    with pytest.raises(SystemExit, match="judge is required"):
        main(
            [
                "extract",
                "--dataset", str(dataset_path),
                "--traces", str(traces_path),
                "--out", str(tmp_path / "out.jsonl"),
            ]
        )


def test_echo_fixture_requires_fixture_file(tmp_path):
    samples, traces, dataset_path, traces_path = small_corpus(tmp_path)
    with pytest.raises(SystemExit, match="--fixtures"):
        main(
            [
                "extract",
                "--dataset", str(dataset_path),
                "--traces", str(traces_path),
                "--out", str(tmp_path / "out.jsonl"),
                "--mock", "echo_fixture",
            ]
        )


def test_version_flag_prints_and_exits_zero(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "cafeval" in capsys.readouterr().out


def test_unknown_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2
