"""Parsing of structured reasoning traces.

The expected trace grammar is

    <thinking>
      <perception> numbered audio-event lines, optionally timestamped </perception>
      <reasoning> numbered Sub-question / Answer pairs </reasoning>
      <review> 1. Evidence Check: ...  2. Logic Check: ... </review>
    </thinking>
    <answer> final choice </answer>

Strict parsing accepts a trace only when all five tags appear exactly once,
properly nested and in that order.  Lenient parsing recovers whatever
sections exist and reports what was wrong; free-form text with no structure
at all becomes the reasoning body so it can still be judged.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

from .samples import TraceRecord

TAG_NAMES = ("thinking", "perception", "reasoning", "review", "answer")

# opening/closing tags, tolerant of case and inner whitespace: < /  review >
_TAG_RE = re.compile(r"<\s*(/?)\s*(thinking|perception|reasoning|review|answer)\s*>", re.IGNORECASE)
_THINK_RE = re.compile(r"<\s*(/?)\s*think\s*>", re.IGNORECASE)

# perception lines: "N. [start, end]: text" (timed) or "N. text" (untimed)
_EVENT_LINE_RE = re.compile(r"^\s*(\d+)\s*[.)]\s*(.*)$")
_TIMED_RE = re.compile(r"^\[\s*([^,\[\]]+?)\s*,\s*([^,\[\]]+?)\s*\]\s*:?\s*(.*)$", re.DOTALL)

_SUBQ_RE = re.compile(r"(\d+)\s*[.)]\s*Sub-question\s*:", re.IGNORECASE)
_ANSWER_SPLIT_RE = re.compile(r"\bAnswer\s*:", re.IGNORECASE)

# labels may sit on their own numbered lines or run together on one line,
# so they are matched anywhere, with the numbering folded into the label
_EVIDENCE_RE = re.compile(r"(?:\d+\s*[.)]\s*)?Evidence\s+Check\s*:", re.IGNORECASE)
_LOGIC_RE = re.compile(r"(?:\d+\s*[.)]\s*)?Logic\s+Check\s*:", re.IGNORECASE)


@dataclass(frozen=True)
class ParseIssue:
    """One problem found while parsing; offset is a byte offset into the raw text."""

    message: str
    tag: str | None = None
    offset: int = 0

    def __str__(self) -> str:  # readable in logs and CLI flag reasons
        loc = f" at byte {self.offset}"
        tag = f" <{self.tag}>" if self.tag else ""
        return f"{self.message}{tag}{loc}"


@dataclass
class ParseDiagnostics:
    """Returned instead of a ParsedTrace when strict parsing rejects the input."""

    issues: list[ParseIssue] = field(default_factory=list)

    @property
    def tags(self) -> list[str]:
        return [i.tag for i in self.issues if i.tag]


@dataclass(frozen=True)
class PerceptionEvent:
    description: str
    start_s: float | None = None
    end_s: float | None = None

    def __post_init__(self) -> None:
        if (self.start_s is None) != (self.end_s is None):
            raise ValueError("start_s and end_s must be set together")
        if self.start_s is not None and self.start_s > self.end_s:
            raise ValueError("start_s must be <= end_s")

    @property
    def timed(self) -> bool:
        return self.start_s is not None


@dataclass(frozen=True)
class SubStep:
    index: int
    sub_question: str
    sub_answer: str

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError("step index must be >= 1")

    @property
    def is_empty(self) -> bool:
        return not (self.sub_question.strip() or self.sub_answer.strip())


@dataclass(frozen=True)
class ReviewBlock:
    evidence_check: str
    logic_check: str


@dataclass
class ParsedTrace:
    """Structured view of one trace.

    Equality compares the structured sections only; the verbatim text
    fields, token length and diagnostics are carried for scoring but do
    not participate, so parse(canonicalize(parse(x))) == parse(x).
    """

    perception: list[PerceptionEvent]
    steps: list[SubStep]
    review: ReviewBlock | None
    final_answer: str
    perception_text: str = field(default="", compare=False)
    reasoning_text: str = field(default="", compare=False)
    review_text: str = field(default="", compare=False)
    token_len: int = field(default=0, compare=False)
    diagnostics: list[ParseIssue] = field(default_factory=list, compare=False)

    @property
    def thinking_text(self) -> str:
        """Everything inside the thinking block, sections joined in order."""
        parts = [t for t in (self.perception_text, self.reasoning_text, self.review_text) if t]
        return "\n".join(parts)


def count_tokens(text: str, counter: str = "whitespace") -> int:
    """Crude token count: whitespace-delimited runs, or ceil(len/4) characters."""
    if counter == "whitespace":
        return len(text.split())
    if counter == "chars_div4":
        return (len(text) + 3) // 4
    raise ValueError(f"unknown counter {counter!r}")


def _byte_offset(raw: str, index: int) -> int:
    return len(raw[:index].encode("utf-8"))


def _scan_tags(raw: str) -> list[tuple[str, bool, int, int]]:
    """All structural tag tokens as (name, is_close, start, end) string indices."""
    return [
        (m.group(2).lower(), m.group(1) == "/", m.start(), m.end())
        for m in _TAG_RE.finditer(raw)
    ]


def _parse_perception(text: str) -> tuple[list[PerceptionEvent], list[ParseIssue]]:
    events: list[PerceptionEvent] = []
    issues: list[ParseIssue] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _EVENT_LINE_RE.match(line)
        body = m.group(2).strip() if m else line.strip()
        if not body:
            continue
        timed = _TIMED_RE.match(body)
        if timed:
            desc = timed.group(3).strip()
            try:
                start = float(timed.group(1))
                end = float(timed.group(2))
            except ValueError:
                issues.append(
                    ParseIssue("non-numeric timestamp, event kept untimed", tag="perception")
                )
                events.append(PerceptionEvent(description=desc or body))
                continue
            if start > end:
                issues.append(
                    ParseIssue("timestamp range reversed, event kept untimed", tag="perception")
                )
                events.append(PerceptionEvent(description=desc or body))
                continue
            if not desc:
                issues.append(ParseIssue("timed event with empty description", tag="perception"))
                continue
            events.append(PerceptionEvent(description=desc, start_s=start, end_s=end))
        else:
            events.append(PerceptionEvent(description=body))
    return events, issues


def _parse_steps(text: str) -> tuple[list[SubStep], list[ParseIssue]]:
    steps: list[SubStep] = []
    issues: list[ParseIssue] = []
    marks = list(_SUBQ_RE.finditer(text))
    for pos, m in enumerate(marks):
        chunk_end = marks[pos + 1].start() if pos + 1 < len(marks) else len(text)
        chunk = text[m.end():chunk_end]
        split = _ANSWER_SPLIT_RE.search(chunk)
        if split:
            question = chunk[: split.start()].strip()
            answer = chunk[split.end():].strip()
        else:
            question = chunk.strip()
            answer = ""
            issues.append(ParseIssue(f"step {pos + 1} has no Answer part", tag="reasoning"))
        literal = int(m.group(1))
        if literal != pos + 1:
            issues.append(
                ParseIssue(
                    f"step numbered {literal} renumbered to {pos + 1}", tag="reasoning"
                )
            )
        steps.append(SubStep(index=pos + 1, sub_question=question, sub_answer=answer))
    return steps, issues


def _parse_review(text: str) -> tuple[ReviewBlock | None, list[ParseIssue]]:
    if not text.strip():
        return None, []
    ev = _EVIDENCE_RE.search(text)
    lg = _LOGIC_RE.search(text)
    if not ev or not lg or lg.start() < ev.start():
        issues = []
        if not ev:
            issues.append(ParseIssue("review missing Evidence Check", tag="review"))
        if not lg:
            issues.append(ParseIssue("review missing Logic Check", tag="review"))
        if ev and lg and lg.start() < ev.start():
            issues.append(ParseIssue("review checks out of order", tag="review"))
        return None, issues
    evidence = text[ev.end(): lg.start()].strip()
    logic = text[lg.end():].strip()
    if not evidence or not logic:
        return None, [ParseIssue("review check with empty body", tag="review")]
    return ReviewBlock(evidence_check=evidence, logic_check=logic), []


_EXPECTED_SEQUENCE: tuple[tuple[str, bool], ...] = (
    ("thinking", False),
    ("perception", False),
    ("perception", True),
    ("reasoning", False),
    ("reasoning", True),
    ("review", False),
    ("review", True),
    ("thinking", True),
    ("answer", False),
    ("answer", True),
)


def _strict_tag_check(raw: str, tokens: list[tuple[str, bool, int, int]]) -> list[ParseIssue]:
    issues: list[ParseIssue] = []
    for name, is_close in _EXPECTED_SEQUENCE:
        hits = [t for t in tokens if t[0] == name and t[1] == is_close]
        if len(hits) == 0:
            partner = [t for t in tokens if t[0] == name and t[1] != is_close]
            offset = _byte_offset(raw, partner[0][2]) if partner else 0
            word = "unclosed" if is_close else "missing opening"
            issues.append(ParseIssue(f"{word} tag", tag=name, offset=offset))
        elif len(hits) > 1:
            issues.append(
                ParseIssue("duplicated tag", tag=name, offset=_byte_offset(raw, hits[1][2]))
            )
    if issues:
        return issues
    actual = [(t[0], t[1]) for t in tokens]
    if actual != list(_EXPECTED_SEQUENCE):
        for got, want, tok in zip(actual, _EXPECTED_SEQUENCE, tokens):
            if got != want:
                issues.append(
                    ParseIssue(
                        "tag out of order", tag=got[0], offset=_byte_offset(raw, tok[2])
                    )
                )
                break
    return issues


def _section_spans(tokens: list[tuple[str, bool, int, int]]) -> dict[str, tuple[int, int]]:
    """Section name -> (content start, content end), assuming strict ordering."""
    opens = {t[0]: t[3] for t in tokens if not t[1]}
    closes = {t[0]: t[2] for t in tokens if t[1]}
    return {name: (opens[name], closes[name]) for name in TAG_NAMES}


def _build(
    raw: str,
    perception_text: str,
    reasoning_text: str,
    review_text: str,
    final_answer: str,
    issues: list[ParseIssue],
    counter: str,
) -> ParsedTrace:
    perception, p_issues = _parse_perception(perception_text)
    steps, s_issues = _parse_steps(reasoning_text)
    review, r_issues = _parse_review(review_text)
    all_issues = issues + p_issues + s_issues + r_issues
    trace = ParsedTrace(
        perception=perception,
        steps=steps,
        review=review,
        final_answer=final_answer.strip(),
        perception_text=perception_text.strip(),
        reasoning_text=reasoning_text.strip(),
        review_text=review_text.strip(),
        diagnostics=all_issues,
    )
    trace.token_len = count_tokens(trace.thinking_text, counter)
    return trace


def parse_mpar2(
    raw: Union[TraceRecord, str], strict: bool = True, counter: str = "whitespace"
) -> ParsedTrace | ParseDiagnostics:
    """Parse one trace.

    Strict mode returns ParseDiagnostics (never a partial trace) when the
    tag skeleton is wrong.  Lenient mode always returns a ParsedTrace,
    recording everything it had to repair in .diagnostics.
    """
    text = raw.raw_text if isinstance(raw, TraceRecord) else raw
    tokens = _scan_tags(text)

    if strict:
        issues = _strict_tag_check(text, tokens)
        if issues:
            return ParseDiagnostics(issues=issues)
        spans = _section_spans(tokens)
        answer = text[spans["answer"][0]: spans["answer"][1]]
        issues = []
        if not answer.strip():
            return ParseDiagnostics(
                issues=[ParseIssue("empty answer", tag="answer",
                                   offset=_byte_offset(text, spans["answer"][0]))]
            )
        return _build(
            text,
            text[spans["perception"][0]: spans["perception"][1]],
            text[spans["reasoning"][0]: spans["reasoning"][1]],
            text[spans["review"][0]: spans["review"][1]],
            answer,
            issues,
            counter,
        )

    return _parse_lenient(text, tokens, counter)


@dataclass(frozen=True)
class _Block:
    content_start: int
    content_end: int
    open_start: int
    close_end: int
    closed: bool


def _find_block(text: str, tokens: list[tuple[str, bool, int, int]], name: str) -> _Block | None:
    """First block of the given tag; runs to end of text when unclosed."""
    open_tok = next((t for t in tokens if t[0] == name and not t[1]), None)
    if open_tok is None:
        return None
    close_tok = next(
        (t for t in tokens if t[0] == name and t[1] and t[2] >= open_tok[3]), None
    )
    if close_tok is None:
        return _Block(open_tok[3], len(text), open_tok[2], len(text), False)
    return _Block(open_tok[3], close_tok[2], open_tok[2], close_tok[3], True)


def _parse_lenient(
    text: str, tokens: list[tuple[str, bool, int, int]], counter: str
) -> ParsedTrace:
    issues: list[ParseIssue] = []

    # final answer can be recovered even when the thinking block is a mess
    answer_block = _find_block(text, tokens, "answer")
    if answer_block:
        final_answer = text[answer_block.content_start: answer_block.content_end]
        if not answer_block.closed:
            issues.append(
                ParseIssue(
                    "unclosed tag", tag="answer",
                    offset=_byte_offset(text, answer_block.open_start),
                )
            )
    else:
        final_answer = ""
        issues.append(ParseIssue("missing answer tag", tag="answer"))

    think_block = _find_block(text, tokens, "thinking")
    if think_block is None:
        # tolerate the bare <think> variant used by some checkpoints
        think_tokens = [
            ("thinking", m.group(1) == "/", m.start(), m.end())
            for m in _THINK_RE.finditer(text)
        ]
        think_block = _find_block(text, think_tokens, "thinking")
        if think_block is not None:
            issues.append(
                ParseIssue(
                    "think tag treated as thinking",
                    tag="thinking",
                    offset=_byte_offset(text, think_block.open_start),
                )
            )

    if think_block is None:
        issues.append(ParseIssue("no thinking block", tag="thinking"))
        # free-form output: everything except the answer block is reasoning text
        if answer_block:
            body = text[: answer_block.open_start] + text[answer_block.close_end:]
        else:
            body = text
        return _build(text, "", body.strip(), "", final_answer, issues, counter)

    inner_start, inner_end = think_block.content_start, think_block.content_end
    if not think_block.closed:
        if answer_block and answer_block.open_start > think_block.open_start:
            # unclosed thinking: do not swallow the answer block
            inner_end = min(inner_end, answer_block.open_start)
        issues.append(
            ParseIssue(
                "unclosed tag", tag="thinking",
                offset=_byte_offset(text, think_block.open_start),
            )
        )
    inner_tokens = [
        (n, c, s - inner_start, e - inner_start)
        for n, c, s, e in tokens
        if inner_start <= s and e <= inner_end
    ]
    inner = text[inner_start:inner_end]

    def section(name: str) -> str:
        block = _find_block(inner, inner_tokens, name)
        if block is None:
            issues.append(ParseIssue(f"missing {name} section", tag=name))
            return ""
        content_end = block.content_end
        if not block.closed:
            # unclosed section: stop at the next section's opening tag
            nxt = [
                s for n, c, s, e in inner_tokens
                if not c and n != name and s >= block.content_start
            ]
            if nxt:
                content_end = min(content_end, min(nxt))
            issues.append(ParseIssue("unclosed tag", tag=name))
        return inner[block.content_start:content_end]

    has_sections = any(not c for n, c, s, e in inner_tokens if n in ("perception", "reasoning", "review"))
    if not has_sections:
        issues.append(ParseIssue("no sections inside thinking block", tag="thinking"))
        return _build(text, "", inner.strip(), "", final_answer, issues, counter)

    perception_text = section("perception")
    reasoning_text = section("reasoning")
    review_text = section("review")
    return _build(text, perception_text, reasoning_text, review_text, final_answer, issues, counter)


def _format_seconds(value: float) -> str:
    # repr round-trips exactly; integral values rendered bare for readability
    if value == math.floor(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def canonicalize(parsed: ParsedTrace) -> str:
    """Emit the canonical text form.  parse_mpar2(canonicalize(p)) == p."""
    lines: list[str] = ["<thinking>", "<perception>"]
    for i, event in enumerate(parsed.perception, start=1):
        if event.timed:
            lines.append(
                f"{i}. [{_format_seconds(event.start_s)}, {_format_seconds(event.end_s)}]: {event.description}"
            )
        else:
            lines.append(f"{i}. {event.description}")
    lines.append("</perception>")
    lines.append("<reasoning>")
    for step in parsed.steps:
        lines.append(f"{step.index}. Sub-question: {step.sub_question}")
        lines.append(f"   Answer: {step.sub_answer}")
    lines.append("</reasoning>")
    lines.append("<review>")
    if parsed.review is not None:
        lines.append(f"1. Evidence Check: {parsed.review.evidence_check}")
        lines.append(f"2. Logic Check: {parsed.review.logic_check}")
    lines.append("</review>")
    lines.append("</thinking>")
    lines.append(f"<answer>{parsed.final_answer}</answer>")
    return "\n".join(lines)


def extract_answer(parsed_or_raw: ParsedTrace | str, choices) -> str | None:
    """Map a final answer to a choice letter.

    Priority: a standalone capital letter token, then a case-insensitive
    match of any choice's text.  Returns None when neither applies.
    """
    if not choices:
        raise ValueError("choices must be non-empty")
    if isinstance(parsed_or_raw, ParsedTrace):
        text = parsed_or_raw.final_answer
    else:
        raw = str(parsed_or_raw)
        tokens = _scan_tags(raw)
        block = _find_block(raw, tokens, "answer")
        text = raw[block.content_start: block.content_end] if block else raw

    letters = {letter.upper() for letter, _ in choices}
    for m in re.finditer(r"(?<![A-Za-z0-9])([A-F])(?![A-Za-z0-9])", text):
        if m.group(1) in letters:
            return m.group(1)
    low = text.casefold()
    for letter, choice_text in choices:
        stripped = str(choice_text).strip()
        if stripped and stripped.casefold() in low:
            return letter.upper()
    return None
