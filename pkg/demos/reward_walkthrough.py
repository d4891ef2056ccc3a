"""
Scoring one reasoning trace end to end
======================================

Builds a small audio question, writes a structured reasoning trace for
it, and walks the trace through parsing, judge scoring, and the final
weighted reward, printing every intermediate value along the way.

Run from the repository root:

    python3 demos/reward_walkthrough.py
"""

from cafeval.judge.gateway import MockJudge
from cafeval.rewards import RewardWeights, compute_trace_reward
from cafeval.samples import AudioQASample
from cafeval.traces import parse_mpar2

# ---------------------------------------------------------------------------
# 1. The question under evaluation.  A sample bundles the audio caption
#    (our stand-in for the clip itself), the question, the choices, and
#    the answer key.
# ---------------------------------------------------------------------------

sample = AudioQASample(
    id="demo-1",
    question="What happens right after the dog barks?",
    choices=(("A", "a door closes"), ("B", "a car engine starts"), ("C", "rain begins")),
    answer_key="B",
    caption="A dog barks twice, then a car engine starts and idles.",
    domain_tag="sound",
    difficulty_tag="easy",
    task_tag="temporal",
    duration_s=8.0,
)

print("question:", sample.question)
print("answer key:", sample.answer_key, "->", sample.answer_text)
print()

# ---------------------------------------------------------------------------
# 2. A trace in the structured format: perceived events first, then
#    numbered sub-question steps, then a self-review, then the answer.
# ---------------------------------------------------------------------------

trace = """<thinking>
<perception>
1. [0.0, 2.0]: a dog barking twice
2. [2.0, 6.0]: a car engine starting and idling
</perception>
<reasoning>
1. Sub-question: What sound follows the barking? Answer: an engine starting.
2. Sub-question: Which choice names that sound? Answer: choice B.
</reasoning>
<review>
Evidence check: both events appear in the perception list.
Logic check: the steps follow the clip order, so the chain is consistent.
</review>
</thinking>
<answer>B</answer>"""

parsed = parse_mpar2(trace, strict=True)
print("perception events:", [e.description for e in parsed.perception])
print("reasoning steps:", len(parsed.steps))
print("token length:", parsed.token_len)
print()

# ---------------------------------------------------------------------------
# 3. Judge scoring.  The deterministic mock stands in for an external
#    judge model: it hashes each prompt to a stable score in [0, 1], so
#    this walkthrough prints the same numbers on every run.
# ---------------------------------------------------------------------------

judge = MockJudge("rubric_hash", seed=0)
breakdown = compute_trace_reward(trace, sample, judge)

print("perception score:        ", round(breakdown.r_perception, 4))
print("per-step scores:         ", [round(s, 4) for s in breakdown.step_scores])
print("stepwise reasoning term: ", round(breakdown.r_spr, 4))
print("accuracy + review term:  ", round(breakdown.r_rea, 4))
print("format term:             ", breakdown.r_format)
print("total reward:            ", round(breakdown.r_all, 4))
print()

# The accuracy term is the binary answer correctness times a review
# bonus: a correct answer with a review scored r earns 1 + 0.5 * r, a
# wrong answer earns exactly 0 no matter how good the review reads.

# ---------------------------------------------------------------------------
# 4. Weights are explicit and adjustable.  Zeroing the review bonus
#    reduces the accuracy term to plain correctness.
# ---------------------------------------------------------------------------

no_bonus = RewardWeights(mu=0.0)
flat = compute_trace_reward(trace, sample, judge, weights=no_bonus)
print("accuracy term with the review bonus removed:", flat.r_rea)
print()

# ---------------------------------------------------------------------------
# 5. The format gate.  Deleting a closing tag breaks the strict skeleton;
#    by default the whole reward collapses to zero with a flag, so a
#    training loop cannot reward malformed output.
# ---------------------------------------------------------------------------

broken = trace.replace("</review>", "", 1)
gated = compute_trace_reward(broken, sample, judge)
print("broken trace reward:", gated.r_all, "flags:", list(gated.flags))

# Scoring of recoverable content can be turned back on for analysis runs
# while the format term stays at zero.

scored = compute_trace_reward(broken, sample, judge, score_malformed=True)
print("scored anyway:      ", round(scored.r_all, 4), "flags:", list(scored.flags))
