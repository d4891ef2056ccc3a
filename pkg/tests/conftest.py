from pathlib import Path

import pytest

from cafeval.samples import AudioQASample

DATA_DIR = Path(__file__).parent / "data"
CORPUS_DIR = DATA_DIR / "corpus"
GOLDEN_DIR = DATA_DIR / "golden"

WELLFORMED_TRACE = (
    "<thinking><perception>\n"
    "1. [0.0, 2.5]: a dog barks twice\n"
    "2. [3.0, 6.0]: a car engine accelerates\n"
    "</perception><reasoning>\n"
    "1. Sub-question: What animal sound is present? Answer: A dog barking.\n"
    "2. Sub-question: What happens after the barking? Answer: An engine accelerates.\n"
    "</reasoning><review>\n"
    "1. Evidence Check: Both events appear in the perception list.\n"
    "2. Logic Check: The steps follow from the events in order.\n"
    "</review></thinking><answer>B</answer>"
)


@pytest.fixture
def sample() -> AudioQASample:
    return AudioQASample(
        id="s1",
        question="What happens after the dog barks?",
        choices=(("A", "a door closes"), ("B", "an engine accelerates"), ("C", "rain starts")),
        answer_key="B",
        caption="A dog barks twice, then a car engine accelerates.",
        domain_tag="sound",
        difficulty_tag="easy",
        task_tag="temporal",
        duration_s=7.5,
    )


@pytest.fixture
def wellformed_trace() -> str:
    return WELLFORMED_TRACE
