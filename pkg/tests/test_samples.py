import json

import pytest

from cafeval.samples import (
    AudioQASample,
    DatasetError,
    TraceRecord,
    load_dataset,
    load_traces,
    sample_from_json,
    sample_to_json,
    serialize_dataset,
    serialize_traces,
    trace_from_json,
    trace_to_json,
)


def make(**overrides) -> AudioQASample:
    base = dict(
        id="x1",
        question="What is heard?",
        choices=(("A", "rain"), ("B", "wind")),
        answer_key="A",
        caption="Rain falls steadily.",
        domain_tag="sound",
    )
    base.update(overrides)
    return AudioQASample(**base)


def test_answer_text_joins_letter_and_choice():
    s = make()
    assert s.answer_text == "A. rain"
    assert s.choice_text("B") == "wind"


def test_choices_need_at_least_two():
    with pytest.raises(DatasetError):
        make(choices=(("A", "rain"),))


def test_choices_capped_at_six():
    seven = tuple((chr(65 + i), f"opt{i}") for i in range(7))
    with pytest.raises(DatasetError):
        make(choices=seven, answer_key="A")


def test_answer_key_must_be_among_choices():
    with pytest.raises(DatasetError, match="answer_key"):
        make(answer_key="C")


def test_duplicate_choice_letters_rejected():
    with pytest.raises(DatasetError):
        make(choices=(("A", "rain"), ("A", "wind")))


def test_choice_letters_must_be_in_order():
    with pytest.raises(DatasetError):
        make(choices=(("B", "rain"), ("A", "wind")))


def test_empty_caption_rejected():
    with pytest.raises(DatasetError):
        make(caption="")


def test_unknown_domain_tag_rejected():
    with pytest.raises(DatasetError):
        make(domain_tag="radio")


def test_negative_duration_rejected():
    with pytest.raises(DatasetError):
        make(duration_s=-1.0)


def test_sample_json_round_trip_preserves_extras():
    s = make(duration_s=12.5, extra={"source": "synthetic"})
    again = sample_from_json(sample_to_json(s))
    assert again == s


def test_sample_from_json_lowercase_letters_normalized():
    obj = sample_to_json(make())
    obj["choices"] = [["a", "rain"], ["b", "wind"]]
    obj["answer_key"] = "a"
    s = sample_from_json(obj)
    assert s.answer_key == "A"
    assert [c[0] for c in s.choices] == ["A", "B"]


def test_sample_from_json_missing_field_named():
    obj = sample_to_json(make())
    del obj["caption"]
    with pytest.raises(DatasetError, match="caption"):
        sample_from_json(obj)


def test_trace_round_trip():
    t = TraceRecord(sample_id="x1", model_id="m", raw_text="<answer>A</answer>", run_index=2)
    assert trace_from_json(trace_to_json(t)) == t
    assert t.key == ("x1", "m", 2)


def test_trace_run_index_must_be_nonnegative_int():
    with pytest.raises(DatasetError):
        TraceRecord(sample_id="x1", model_id="m", raw_text="t", run_index=-1)
    with pytest.raises(DatasetError):
        trace_from_json({"sample_id": "x1", "model_id": "m", "raw_text": "t", "run_index": True})


def test_dataset_file_round_trip(tmp_path):
    samples = [make(), make(id="x2", extra={"k": 1})]
    path = tmp_path / "data.jsonl"
    serialize_dataset(samples, path)
    assert load_dataset(path) == samples


def test_dataset_duplicate_ids_rejected(tmp_path):
    path = tmp_path / "data.jsonl"
    serialize_dataset([make(), make()], path)
    with pytest.raises(DatasetError, match="x1"):
        load_dataset(path)


def test_dataset_bad_line_reports_lineno(tmp_path):
    path = tmp_path / "data.jsonl"
    with path.open("w") as fh:
        fh.write(json.dumps(sample_to_json(make())) + "\n")
        fh.write("{not json\n")
    with pytest.raises(DatasetError, match=":2:"):
        load_dataset(path)


def test_dataset_unknown_format_rejected(tmp_path):
    path = tmp_path / "data.jsonl"
    serialize_dataset([make()], path)
    with pytest.raises(DatasetError):
        load_dataset(path, fmt="csv")


def test_traces_file_round_trip_and_duplicates(tmp_path):
    t1 = TraceRecord("x1", "m", "raw", 0)
    t2 = TraceRecord("x1", "m", "raw", 1)
    path = tmp_path / "traces.jsonl"
    serialize_traces([t1, t2], path)
    assert load_traces(path) == [t1, t2]
    serialize_traces([t1, t1], path)
    with pytest.raises(DatasetError, match="duplicate"):
        load_traces(path)
