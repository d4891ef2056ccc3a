"""Prompt template registry and rendering.

Rendering is a single substitution pass over ``{{name}}`` markers: values
are inserted literally and never re-expanded, and a render must leave no
markers behind.  Rendering an already-rendered prompt with no bindings is
therefore the identity.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from . import prompts

_PLACEHOLDER_RE = re.compile(r"\{\{([A-Za-z_][A-Za-z0-9_]*)\}\}")


class TemplateError(ValueError):
    """Unknown template id, missing binding, or leftover placeholder markers."""


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    body: str
    placeholders: tuple[str, ...]


def placeholders_in(text: str) -> set[str]:
    return {m.group(1) for m in _PLACEHOLDER_RE.finditer(text)}


def _template(template_id: str, body: str, placeholders: tuple[str, ...]) -> PromptTemplate:
    found = placeholders_in(body)
    if found != set(placeholders):
        raise TemplateError(
            f"template {template_id!r}: declared placeholders {sorted(placeholders)} "
            f"do not match body {sorted(found)}"
        )
    return PromptTemplate(id=template_id, body=body, placeholders=placeholders)


TEMPLATES: dict[str, PromptTemplate] = {
    t.id: t
    for t in (
        _template("caption", prompts.CAPTION, ()),
        _template(
            "event_extraction",
            prompts.EVENT_EXTRACTION,
            ("QUESTION", "CORRECT_ANSWER", "GROUND_TRUTH_CAPTION", "MODEL_REASONING"),
        ),
        _template(
            "perception_score",
            prompts.PERCEPTION_SCORE,
            ("caption_text", "question_text", "answer_text", "cot_text"),
        ),
        _template(
            "step_score",
            prompts.STEP_SCORE,
            ("caption_text", "question_text", "history_text", "current_step_text"),
        ),
        _template(
            "holistic_score",
            prompts.HOLISTIC_SCORE,
            ("caption_text", "question_text", "answer_text", "full_reasoning"),
        ),
        _template(
            "review_score",
            prompts.REVIEW_SCORE,
            (
                "caption_text",
                "ground_truth_text",
                "question_text",
                "answer_text",
                "reasoning_text",
                "review_text",
            ),
        ),
        _template("qa_filter", prompts.QA_FILTER, ("caption", "question")),
        _template(
            "cot_filter",
            prompts.COT_FILTER,
            ("ORIGINAL_QUESTION", "FINAL_ANSWER", "caption_w_time", "sub_question_list_generated"),
        ),
        _template(
            "cot_generate",
            prompts.COT_GENERATE,
            ("ORIGINAL_QUESTION", "FINAL_ANSWER", "caption_w_time", "sub_question_list_generated"),
        ),
        _template("qa_gen_counting", prompts.QA_GEN_COUNTING, ("events_description",)),
        _template("qa_gen_pitch", prompts.QA_GEN_PITCH, ("events_description",)),
        _template("qa_gen_rhythm", prompts.QA_GEN_RHYTHM, ("events_description",)),
        _template("qa_gen_temporal", prompts.QA_GEN_TEMPORAL, ("events_description",)),
        _template("qa_gen_timbre", prompts.QA_GEN_TIMBRE, ("events_description",)),
    )
}


def substitute(text: str, bindings: dict[str, str]) -> str:
    """Replace every ``{{name}}`` marker in text using bindings, exactly once."""
    missing: list[str] = []

    def repl(match: re.Match) -> str:
        name = match.group(1)
        if name not in bindings:
            missing.append(name)
            return match.group(0)
        return str(bindings[name])

    out = _PLACEHOLDER_RE.sub(repl, text)
    if missing:
        raise TemplateError(f"missing binding for placeholder {missing[0]!r}")
    leftover = placeholders_in(out)
    if leftover:
        raise TemplateError(
            f"binding values reintroduced placeholder markers: {sorted(leftover)}"
        )
    return out


def render_template(template_id: str, bindings: dict[str, str] | None = None) -> str:
    """Render a registered template; extra bindings are ignored."""
    if template_id not in TEMPLATES:
        raise TemplateError(f"unknown template id {template_id!r}")
    return substitute(TEMPLATES[template_id].body, bindings or {})


def templates_digest() -> str:
    """Stable digest over all template bodies, for report fingerprints."""
    h = hashlib.sha256()
    for template_id in sorted(TEMPLATES):
        h.update(template_id.encode("utf-8"))
        h.update(b"\x00")
        h.update(TEMPLATES[template_id].body.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()
