"""Judge gateway: prompt templates, reply parsing, HTTP transport and mocks."""

from .templates import (
    PromptTemplate,
    TemplateError,
    TEMPLATES,
    render_template,
    substitute,
    templates_digest,
)
from .replies import (
    ScalarScore,
    PairScore,
    EventExtraction,
    ReplyFormatError,
    parse_scalar_score,
    parse_pair_score,
    parse_event_extraction,
)
from .gateway import (
    JudgeEndpoint,
    JudgeError,
    JudgeTransportError,
    JudgeFormatError,
    FixtureMissError,
    HttpJudge,
    MockJudge,
    call_judge,
    mock_judge,
    prompt_hash,
    load_fixtures,
    endpoint_from_env,
    ask_scalar,
    ask_pair,
    ask_extraction,
    ask_json,
)

__all__ = [
    "PromptTemplate",
    "TemplateError",
    "TEMPLATES",
    "render_template",
    "substitute",
    "templates_digest",
    "ScalarScore",
    "PairScore",
    "EventExtraction",
    "ReplyFormatError",
    "parse_scalar_score",
    "parse_pair_score",
    "parse_event_extraction",
    "JudgeEndpoint",
    "JudgeError",
    "JudgeTransportError",
    "JudgeFormatError",
    "FixtureMissError",
    "HttpJudge",
    "MockJudge",
    "call_judge",
    "mock_judge",
    "prompt_hash",
    "load_fixtures",
    "endpoint_from_env",
    "ask_scalar",
    "ask_pair",
    "ask_extraction",
    "ask_json",
]
