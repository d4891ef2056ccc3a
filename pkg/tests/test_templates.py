import pytest

from cafeval.judge.templates import (
    TEMPLATES,
    TemplateError,
    placeholders_in,
    render_template,
    substitute,
    templates_digest,
)

EXPECTED_IDS = {
    "caption",
    "event_extraction",
    "perception_score",
    "step_score",
    "holistic_score",
    "review_score",
    "qa_filter",
    "cot_filter",
    "cot_generate",
    "qa_gen_counting",
    "qa_gen_pitch",
    "qa_gen_rhythm",
    "qa_gen_temporal",
    "qa_gen_timbre",
}


def test_registry_contains_all_fourteen_templates():
    assert set(TEMPLATES) == EXPECTED_IDS


def test_registry_ids_match_keys():
    for key, template in TEMPLATES.items():
        assert template.id == key
        assert placeholders_in(template.body) == set(template.placeholders)


def test_substitute_fills_all_markers():
    out = substitute("Hello {{name}}, you are {{age}}.", {"name": "Ada", "age": "36"})
    assert out == "Hello Ada, you are 36."


def test_substitute_missing_binding_names_placeholder():
    with pytest.raises(TemplateError, match="name"):
        substitute("Hello {{name}}", {})


def test_substituted_value_cannot_reintroduce_markers():
    # substitution is single-pass: a value containing a marker is never
    # expanded recursively, and because no markers may remain in a rendered
    # prompt, such a value is an error rather than a silent leftover
    with pytest.raises(TemplateError, match="reintroduced"):
        substitute("{{a}}", {"a": "{{b}}", "b": "never used"})


def test_rendering_rendered_text_is_identity():
    rendered = substitute("Hello {{name}}.", {"name": "Ada"})
    assert substitute(rendered, {}) == rendered


def test_substitute_extra_bindings_ignored():
    assert substitute("{{a}}", {"a": "1", "unused": "2"}) == "1"


def test_render_unknown_template_rejected():
    with pytest.raises(TemplateError, match="unknown"):
        render_template("no_such_prompt", {})


def test_render_extraction_template_keeps_literal_json_braces():
    out = render_template(
        "event_extraction",
        {
            "QUESTION": "Q",
            "CORRECT_ANSWER": "A. x",
            "GROUND_TRUTH_CAPTION": "C",
            "MODEL_REASONING": "R",
        },
    )
    assert "{{" not in out
    assert "matched_events: [list]" in out
    assert "Output Format (JSON Only)" in out


def test_render_qa_filter_single_braces_survive():
    out = render_template("qa_filter", {"caption": "c", "question": "q"})
    assert "decision: KEEP or DISCARD" in out
    assert "KEEP (Score >= 4)" in out


def test_generation_templates_share_sentinel():
    for tid in ("qa_gen_counting", "qa_gen_pitch", "qa_gen_rhythm", "qa_gen_temporal", "qa_gen_timbre"):
        body = TEMPLATES[tid].body
        assert "Not suitable for this hallucination type" in body
        assert TEMPLATES[tid].placeholders == ("events_description",)


def test_digest_stable_and_sensitive():
    d1 = templates_digest()
    assert d1 == templates_digest()
    assert len(d1) == 64
