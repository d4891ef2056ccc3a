"""Versioned prompt bodies for every judge task.

Placeholders use the ``{{name}}`` form and are substituted by
``cafeval.judge.templates``.  Bodies are treated as fixed resources:
editing one changes the template digest embedded in reports, so scored
outputs remain traceable to the exact wording that produced them.
"""

CAPTION = """\
Please generate a detailed chronological description of the following audio clip.

Listen carefully to the sequence of events and describe the audio flow from beginning to end. Your caption should:

- Explicitly state the order of sounds using transitional phrases (e.g., The audio begins with..., Followed by..., Simultaneously..., As the sound fades...).

- Capture the subtle details of each sound event, including its duration and intensity changes.

- Distinguish between foreground events (main actions) and background noise (ambience).

Output the result as a cohesive narrative text without line breaks or bullet points.
"""

EVENT_EXTRACTION = """\
Role

You are an expert Audio Logic Consistency Evaluator. Your task is to evaluate a Model Reasoning Path against the Question, Correct Answer, and Ground Truth Caption.

Step 1: Analyze Requirements

1. Determine `required_events`: The essential sounds from the [Ground Truth Audio Caption] needed to answer the [Question] correctly.

2. Identify `all_caption_events`: All sounds actually present in the audio.

Step 2: Categorize Model Events

For every audio event mentioned in the [Model Reasoning Path], categorize it into ONE of the following 4 lists based on its Validity (Is it real?) and Usage (How did the model use it?):

1. matched_events (Correct & Necessary):

 - The event is in `required_events`.

 - The model used it effectively to derive the answer.

2. error_matched (Fabrication / Misidentification):

 - The event is NOT in `all_caption_events` (Hallucination).

 - OR The model heard sound A (real) but identified it as sound B (fake/wrong), and B is not in the caption.

 - These are False Positives regarding perception.

3. error_use (Distraction / Wrong Reasoning):

 - The event exists in `all_caption_events` but is NOT in `required_events` (Irrelevant).

 - CRITICAL CONDITION: The model activley used this irrelevant sound to support a conclusion, or the model was confused by it.

 - Example: I hear a bird (irrelevant), so the answer must be 'Forest'. (When the answer is actually 'Park' due to other sounds).

4. neutral_events (Harmless Mention / Valid Filtering):

 - The event exists in 'all_caption_events' but is NOT in `required_events`.

 - The model mentioned it only to describe the scene or explicitly stated it was not relevant.

 - Example: I hear wind in the background, but the main sound is the car engine. (Here, 'wind' is a neutral mention, not an error).

 - Action: Do NOT count these as errors.

5. missed_events (Omission):

 - Events in `required_events` that are NOT found in `matched_events`.

Input Data

[Question]:
{{QUESTION}}

[Correct Answer]:
{{CORRECT_ANSWER}}

[Ground Truth Audio Caption]:
{{GROUND_TRUTH_CAPTION}}

[Model Reasoning Path]:
{{MODEL_REASONING}}

Output Format (JSON Only)
{

all_reasoning_events: [list of all events mentioned by model],

matched_events: [list],

error_matched: [list],

error_use: [list],

neutral_events: [list],

missed_events: [list]

}
"""

PERCEPTION_SCORE = """\
You are an expert audio perception evaluator. I will give you a record containing:

1. A Detailed Audio Caption (Ground Truth): A comprehensive, factual text description of the audio events.

2. A Question and its Correct Answer: To determine which audio events are 'critical' for the task.

3. A Model Perception Output: The content within the <perception> tags generated by the model, describing events with timestamps.

Your task is to evaluate the fidelity, precision, and completeness of the Model Perception against the Ground Truth, and output a single numeric score from {0, 0.1, 0.2, ..., 1.0}.
You must output only the score with no explanation or extra text.

Evaluate based on the following CRITICAL principles:

1. Audio Hallucination (Strict) - The model must NOT report events that do not exist in the 'Detailed Audio Caption'.

Reporting a sound that is completely absent (e.g., hearing a siren when the description only mentions birds) is a fatal failure.

2. Content Accuracy & Sequential Logic - While evaluating the model's generated timestamps, focus on:

- Event Identity: Does the model correctly identify the sound sources described in the Ground Truth? (e.g., distinguishing 'footsteps' from 'knocking').

- Chronological Flow: Does the sequence of events in the model's output match the narrative order of the Ground Truth? (e.g., if the description says 'a door opens then slams', the model must not place the slam before the opening).

3. Critical Event Coverage (Relevance) - The model must capture all 'Key Events' necessary to answer the provided 'Question'.
Compare with the Question/Answer pairs: if the answer depends on a specific sound cue, omitting this specific event in the <perception> phase is a critical failure.

4. Consistency & Identity - The model should describe the same audio source consistently across different timestamps (unless the sound evolves).
Avoid contradictory descriptions for the same ongoing event.

5. Redundancy & Conciseness - The perception output should be dense and informative.
Penalize distinct 'loops' (repeating the exact same phrase for adjacent timestamps) or extreme verbosity that adds no new details.

Scoring guideline

1.0 = Flawless. Perfectly matches the Ground Truth description. Events are correctly identified and listed in the correct logical order. Concise.

0.8-0.9 = Excellent. Accurate detection of all key events described. The sequence is logical. Maybe minor verbosity.

0.5-0.7 = Mediocre. The KEY event was detected, but the description is vague, or information irrelevant to the question has been omitted.

0.2-0.4 = Poor. Misses a KEY event needed for the Answer, or misidentifies a sound source. Sequence is disorderly compared to the description.

0.0-0.1 = Severe. HALLUCINATION (inventing sounds not in the description), or total failure to identify the main audio event.

Penalty guideline (Apply these cumulatively to reduce the score):

[CRITICAL PENALTY] (Set Score to 0.0 ~ 0.2) :

- Hallucinating an event not present in the Ground Truth description.

- Misidentifying the main sound source (e.g., 'gunshot' vs 'drum').

- Missing the specific audio cue required to answer the Question.

[MODERATE PENALTY] (-0.3 ~ -0.5) :

- Sequential Logic Error (Events are listed in an order contradicting the description).

- Significant omission of details mentioned in the description.

[MINOR PENALTY] (-0.1 ~ -0.2) :

- Excessive wordiness or repetitive phrasing without new information.

- Vague descriptions (e.g., 'noise' instead of 'dog barking') if the Ground Truth is specific.

Operational rule: Always output only one score (0-1 in 0.1 increments).
Now evaluate the following record and output only the score.

The Detailed Audio Caption (Ground Truth) is:{{caption_text}}

The Question is:{{question_text}}

The Correct Answer is:{{answer_text}}

The Model perception to evaluate is:{{cot_text}}
"""

STEP_SCORE = """\
You are an expert logic and reasoning evaluator for Audio-LLMs. I will give you a record containing:

1. A Detailed Audio Caption (Model Perception): A comprehensive text description of the audio events.

2. A User Question and Context: The goal of the reasoning.

3. A Reasoning History: The steps taken so far.

4. The CURRENT STEP: The specific sub-question or reasoning step to evaluate now.

Your task is to evaluate the validity, necessity, and audio-grounding of the CURRENT STEP only, and output a single numeric score from {0, 0.1, 0.2, ..., 1.0}.
You must output only the score with no explanation or extra text

Evaluate based on the following Micro-Level dimensions:

--- CRITERIA: Local Quality Check ---

1. Usefulness: Is this specific reasoning step useful for answering the main question?

2. Evidence-Based Conclusion: Is the content of this step supported by the provided 'Audio Caption'?

- Every claim must align with specific events, sound sources, or acoustic details described in the caption.

3. Criticality & Efficiency: Is this step a logical next move based on the [Reasoning History]?

- Penalize 'tangential reasoning' (analyzing irrelevant noise) or redundant repetition of previous steps.

Scoring guideline:

1.0 = Perfect. The step is firmly grounded in the caption, necessary, and logically follows the history.

0.8-0.9 = Strong. Good step, but maybe slightly inefficient or the evidence citation is slightly vague.

0.5-0.7 = Mediocre. Relevant, but weak grounding (making assumptions not explicitly in the caption). Logic holds but is messy.

0.2-0.4 = Weak. The step makes a claim not supported by the caption, or merely repeats previous steps without adding value.

0.0-0.1 = Failed. Completely incoherent, visual hallucination, or factual contradiction with the caption (e.g., claiming a sound exists when caption implies silence).

Penalty guideline (Apply these cumulatively to reduce score):

[CRITICAL PENALTY] (Set Score to 0.0 ~ 0.1):

- 'Factual Contradiction': The step claims a specific sound or event occurs which is explicitly absent or contradicted by the Caption.

Operational rule: Always output only one score (0-1). If [Current Step] is empty, return 0.0.

The Detailed Audio Caption is:{{caption_text}}

The User Question is:{{question_text}}

The Reasoning History is:{{history_text}}

The CURRENT STEP to evaluate is:{{current_step_text}}
"""

HOLISTIC_SCORE = """\
You are an expert logic and reasoning evaluator for Audio-LLMs. I will give you a record containing:

1. A Detailed Audio Caption (Model Perception): A comprehensive text description of the audio events.

2. A Question and its Correct Answer.

3. The COMPLETE Model Reasoning: The entire chain of thought generated by the model.

Your task is to evaluate the logical architecture, coherence, efficiency, and final derivability of the entire process, and output a single numeric score from {0, 0.1, 0.2, ..., 1.0}.
You must output only the score with no explanation or extra text.

Evaluate based on the following Macro-Level dimensions:

--- CRITERIA: Holistic Logical Architecture ---

1. Goal-Orientation: Is the reasoning path linear and directed towards the [Correct Answer]?

   - Penalize circular logic.

2. Causal Dependency: Does Step B legitimately follow Step A?

   - Penalize 'Logic Jumps' where a conclusion appears out of nowhere without a preceding premise defined in the audio caption.

3. Error Propagation Check: Does an early error render the rest of the chain invalid?

   - If Step 1 is wrong (e.g., misidentifying a gender or sound source compared to the caption), and subsequent steps rely on it, the whole chain collapses.

4. Final Derivability: Does the reasoning naturally flow to the [Correct Answer]?

   - The conclusion must be the inevitable result of the reasoning steps, not a sudden guess.

5. Efficiency & Conciseness: Is the length of the reasoning proportional to the complexity of the question?

   - Penalize 'Over-Analysis': If the question is simple (e.g., 'Is there a dog?'), the reasoning should be short. Writing a 500-word essay for a simple question is a failure.

   - Penalize Repetition: Check if the model repeats the same analysis in different words just to make the chain longer.

Scoring guideline:

1.0 = Perfect. Every step is necessary, concise, and the logic flows flawlessly from the caption evidence to the correct conclusion.

0.8-0.9 = Strong. Good logic, but maybe slightly verbose or includes one unnecessary step, yet the path is valid.

0.5-0.7 = Mediocre. Logic holds but is bloated or unfocused. Contains repetitive analysis or over-explains simple facts found in the caption.

0.2-0.4 = Weak. Major Logic Jumps, or the reasoning is excessively long and tedious without adding value (Filibustering).

0.0-0.1 = Failed. The reasoning contradicts the final answer, relies on 'Fatal Error Propagation', or is complete nonsense.

Penalty guideline (Apply these cumulatively):

 [CRITICAL PENALTY] (Set Score to 0.0 ~ 0.2):

   - 'Fatal Error Propagation': Early false premise (contradicting the Audio Caption) corrupts the entire remaining chain.

   - 'Contradiction': The reasoning concludes something different from the actual Correct Answer provided.

 [MODERATE PENALTY] (-0.2 ~ -0.4) :

   - 'Bloated Reasoning': The reasoning is too long for the problem's difficulty (e.g., 10 steps for a Yes/No question).

   - 'Irrelevance': Wasting steps on analyzing audio events that are present in the caption but do not help answer the specific Question.

Operational rule: Always output only one score (0-1).

The Detailed Audio Caption is:{{caption_text}}

The Question is:{{question_text}}

The Correct Answer is:{{answer_text}}

The COMPLETE Model Reasoning is:{{full_reasoning}}
"""

REVIEW_SCORE = """\
You are a critical meta-evaluator for the "Self-Correction" (Review) phase of an Audio-LLM.

Your task is to judge whether the [Review Content] effectively audits, verifies, and corrects the [Model Reasoning].

Input Data:

1. [Detailed Audio Caption] (Model Perception): {{caption_text}}

2. [Ground Truth Annotations] (Fact Reference): {{ground_truth_text}}

3. [User Question]: {{question_text}}

4. [Correct Answer] (Ground Truth): {{answer_text}}

5. [Model Reasoning] (Target to Audit): {{reasoning_text}}

6. [Review Content] (The Audit Output): {{review_text}}

Task: Output a single score {0.0, 0.1, ..., 1.0} for the [Review Content].

Evaluation Criteria (Review Quality):

1. Evidence Verification (Content Alignment):

- Does the Review explicitly verify that every event cited in the [Model Reasoning] actually exists in the [Detailed Audio Caption]?

- Did it catch "Hallucinations" where the Reasoning cites a sound (e.g., "dog barking") that is completely absent from the Caption?

- CRITERIA: The Review must confirm that the evidence used in reasoning is physically present in the text description.

2. Temporal & Causal Logic Audit:

- Does the Review check the narrative sequence? (e.g., if Reasoning says "A causes B", did the Review check if the Caption describes A happening before or leading into B?)

- Did it catch chronological errors where the Reasoning flips the order of events described in the text?

3. Logical Integrity Check:
- Does the Review ensure the conclusion is strictly derived from the perceived evidence?
- Did it flag any "Logic Jumps" (conclusions without premises) in the Reasoning?

4. Genuine Error Correction & Answer Verification (Anti-Rubber-Stamping):
- ANSWER CHECK (CRITICAL): Compare the conclusion/answer in [Model Reasoning] with the [Correct Answer].

    - If Reasoning leads to a WRONG answer, the Review MUST detect and flag this failure.

    - If Reasoning leads to a CORRECT answer, the Review must validate the logic flow.

- HALLUCINATION CHECK: If [Model Reasoning] contains factual errors (contradictions with Caption), the Review MUST point them out.

- PENALTY RULES:
    - Score 0.0 IMMEDIATELY if the [Model Reasoning] concludes with a wrong answer (mismatch with [Correct Answer]) but the Review states "The reasoning is correct" or "The answer is valid".
    - Score 0.0 IMMEDIATELY if the Review approves reasoning that contradicts the Audio Caption (e.g., approving a sound that isn't in the description).

Scoring Guide:

- 1.0: Perfect Audit. The review rigorously checked evidence presence, sequential logic, AND accurately validated the final answer against Ground Truth.

- 0.8-0.9: Strong. Good check, caught major issues, but maybe missed a minor detail in the description.

- 0.5-0.7: Generic Validation. Says "Logic is good" without citing specific text evidence. (Rubber-stamping).

- 0.2-0.4: Weak. Fails to catch obvious hallucinations or logic jumps.

- 0.0-0.1: [FATAL] The Review acts as a "Yes-Man" (Rubber-Stamp) for an INCORRECT Answer. It approves a reasoning path that leads to a result different from the [Correct Answer].

Output Rule: Return ONLY the numeric score.
"""

QA_FILTER = """\
Role

You are an expert Data Quality Evaluator for Audio-Text Reasoning Datasets. Your goal is to strictly filter out low-quality QA pairs and keep only those that require genuine logical reasoning.

Objective

Evaluate the following Audio QA pair. You must determine if the Question requires logical deduction, causal inference, or temporal analysis of the events described in the Caption.

Input Data

- Audio Caption: {{caption}}

- Question and Answer: {{question}}

Evaluation Criteria (The Reasoning Litmus Test)

1. POSITIVE INDICATORS (High Score / KEEP)

The question requires the model to:

Infer Cause/Effect: Why did the sound stop? (Requires understanding the preceding event).

Analyze Sequence (Temporal): What happened immediately after the explosion?

Deduce State/Intent: Based on the footsteps and breathing, is the person running or walking?

Synthesize Multiple Clues: Combining background noise + specific actions to determine the location.

2. NEGATIVE INDICATORS (Low Score / DISCARD)

Simple Pattern Matching: The answer is just a word lifted directly from the caption (e.g., Caption says a red car, Question asks what color is the car?).

Common Sense / General Knowledge: Can be answered without the audio caption (e.g., Do birds fly?).

Summarization: Describe the audio (This is generation, not reasoning).

Unsolvable/Hallucination: The answer assumes facts not present in the caption.

Task

1. Analyze the relationship between the Caption, Question, and Answer.

2. Assign a Score (1-5) based on reasoning depth.

- 5: Complex reasoning (multi-hop, causal, or temporal).

- 4: Clear deduction required.

- 3: Simple inference.

- 2: Direct text retrieval / keyword matching.

- 1: Common sense or irrelevant.

3. Make a final Decision: KEEP (Score >= 4) or DISCARD (Score < 4).

Output Format

Return ONLY a valid JSON object:

{

analysis: Brief explanation of the reasoning logic required.,

score: <int>,

decision: KEEP or DISCARD

}
"""

COT_GENERATE = """\
Role:

You are an advanced AI assistant specializing in Audio Reasoning and Chain-of-Thought (CoT) synthesis. You also act as a strict auditor to ensure data quality.

Task:

Your task is to synthesize the provided input data into a structured CoT format using specific XML tags, and then perform a critical validation (Review) of the reasoning process.

You will be given:

1. Question: The main query about the audio.

2. Final Answer: The ground truth answer

3. Caption: A time-interval detailed description of the audio events (Ground Truth)

4. Model Outputs: A list of step-by-step sub-questions and answers generated logically in previous steps.

Output Format Requirements:

You must output the content strictly inside the following XML structure:

<thinking>

<perception>

1. [start_time, end_time]: Description of event A.

2. [start_time, end_time]: Description of event B.

... (List ALL events from the Caption, chronologically)

</perception>

<reasoning>

1. Sub-question: [First step from Model Outputs]

 Answer: [Answer to first step]

... (Include all steps from the Model Outputs)

</reasoning>

<review>

1. Evidence Check: [Simulate a Re-listening process. Verify if the audio events cited in the 'Reasoning' are factually supported by the events listed in 'Perception'. Check for hallucinations, misinterpretations, or missing details. Note: Treat the 'Perception' content as the audio itself; do not refer to 'captions', 'text', or 'provided descriptions'.]

2. Logic Check: [Evaluate the logical validity. Does the conclusion naturally follow from the evidence? Is the overall chain coherent?]

</review>

</thinking>

<answer>

[The Final Answer provided in the input]

</answer>

Directives:

1. Perception Section (Full Extraction):
Translate the ENTIRE provided `Caption` into a structured, chronological list of time intervals and event descriptions.
Do not filter, summarize, or omit any events, even if they seem irrelevant to the specific Question.
Format: `[t1, t2]: content`.

2. Reasoning Section:
Directly utilize the provided `Model Outputs`. Organize them into a numbered list of Sub-question and Answer pairs.
Ensure the reasoning logic flows smoothly.

3. Review Section (Critical Audit):

Evidence Check: Perform a Re-Perception check.

Context: Imagine you are re-checking the audio stream directly.

Validity: Did the reasoning cite sounds that actually exist in the `Perception` list?

Accuracy: Did the reasoning interpret the sound properties correctly?

Constraint: Strictly avoid phrases like according to the caption or the text says. Instead, use phrases like The audio contains..., I hear..., or The event at [timestamp] shows....

Logic Check: Verify the soundness of the deductive process. Ensure there are no logical leaps or contradictions.

4. Answer Section: State the final answer clearly.

Input Data:

Question:

{{ORIGINAL_QUESTION}}

Final Answer:

{{FINAL_ANSWER}}

Caption:

{{caption_w_time}}

Model Outputs (Reasoning Chain):
{{sub_question_list_generated}}
"""

COT_FILTER = """\
Role

You are an expert evaluator for Audio-Language Models. Your task is to audit a Chain-of-Thought (CoT) process generated by an AI model. You will assess how well the model hears the audio (Perception), thinks about it (Reasoning), and audits its own conclusion (Review).

Input Data

1. Original Question: The user's query.

2. Final Answer: The ground truth answer.

3. Caption: Ground truth events with precise time ranges.

4. CoT: The step-by-step reasoning process containing <perception>, <reasoning>, and <review> tags.

Evaluation Dimensions

Dimension 1: Perception Evaluation (The Ear)

Analyze specific claims about audio events/timestamps in the <perception> and <reasoning> sections.

Evaluate based on:

1. Accuracy: Does the event described match the Caption?

2. Hallucination/Omission: Are there invented sounds or missed critical sounds?

Dimension 2: Reasoning Evaluation (The Brain)

Analyze the logical flow in the <reasoning> section.

Evaluate each step on:

1. Utility: Is this step necessary for solving the Original Question?

2. Factuality: Is the statement factually true based on the audio content?

3. Logical Validity: Does the conclusion naturally follow from the cited evidence?

Dimension 3: Review Evaluation (The Auditor)

Analyze the <review> section, specifically the Evidence Check and Logic Check.

Evaluate based on:

1. Evidence Re-verification:

Did the model correctly re-examine and re-perceive the audio events cited in the reasoning?

Did it accurately confirm whether the events exist in the perception data?

Critical: Did it successfully identify valid evidence versus hallucinated evidence?

2. Rationality Check:
Did the model correctly assess the logical coherence of the entire chain?
Did it ensure that the Final Answer is the only logical conclusion derived from the evidence?

Scoring & Output Format

Output only two numbers (0-10) strictly in accordance with the following format:
Reasoning_Score/Review_Score

Scoring Criteria:

Reasoning_Score (num1): Rate the quality of Dimension 1 (Perception) and Dimension 2 (Reasoning). 10 = Perfect audio detection and flawless logic.

Review_Score (num2): Rate the quality of Dimension 3 (Review). 10 = The model performed a rigorous, accurate self-audit that correctly validated the evidence and logic. 0 = The review was superficial, inaccurate, or failed to catch obvious errors.

Input Data:

Question:
{{ORIGINAL_QUESTION}}

Final Answer:
{{FINAL_ANSWER}}

Caption:
{{caption_w_time}}

Model Outputs (Reasoning Chain):
{{sub_question_list_generated}}
"""

QA_GEN_COUNTING = """\
We are constructing training data to enhance audio perception and reasoning in audio large language models (LLMs).

Your job is to create a single, high-quality multiple-choice question that tests whether a model can perform numerical reasoning and quantitative analysis by listening to a complete audio clip.

Input Audio Events (Chronological Order): {{events_description}}

Task Description:

You are provided with the ground truth sequence of sound events above.
Your goal is to generate ONE multiple-choice question (MCQ) focusing on Event Counting & Numerical Reasoning.

Step 1: Suitability Check (CRITICAL)

First, analyze the event list provided above. Ask yourself:

1. Are there distinct, countable discrete events (e.g., 'bark', 'gunshot', 'footstep') rather than just continuous ambience (e.g., 'wind', 'static', 'silence')?

2. Is there enough variety or repetition to form a valid numerical question (e.g., counting total occurrences, comparing counts of two different sources)?

If the content consists mainly of continuous noise, ambiguous sounds, or a single non-repeatable event that makes counting trivial or impossible, you must output exactly:

Not suitable for this hallucination type.

Step 2: Question Generation (If Suitable)

If the audio events support numerical reasoning, generate ONE MCQ.

The question must target the auditory experience. Do NOT ask about the text descriptions directly.
The question must be answerable by listening to the audio and counting/analyzing the sounds.

Focus Areas:

- Total Count: 'How many times is the [specific sound] heard?'

- Source Comparison: 'Did the dog bark more times than the cat meowed?'

- Sequence Logic: 'After the first door slam, how many footsteps follow?'

(Note: Since you do not have exact timestamps, focus on the count and order of events, not the speed or rate per minute.)

STRICT CONSTRAINT:

The question must NOT contain phrases like 'According to the list', 'In the description', or 'text'.
It must sound like a natural question asked to someone who has just listened to the recording.

Output Format (if suitable):

Question: <question about the sound itself>

A. <option A>

B. <option B>

C. <option C>

D. <option D>

Correct answer: <the correct option letter>
"""

QA_GEN_PITCH = """\
We are constructing training data to enhance audio perception and reasoning in audio large language models (LLMs).

Your job is to create a single, high-quality multiple-choice question that tests whether a model can perform deep inference based on the dynamic pitch contour (frequency modulation) by listening to a complete audio clip.

Input Audio Events (Chronological Order): {{events_description}}

Task Description:

You are provided with the ground truth sequence of sound events above.

Your goal is to generate ONE multiple-choice question (MCQ) focusing on Pitch Contour & Semantic Inference.

Step 1: Suitability Check (CRITICAL)

Analyze the event list provided above. To support a question about pitch contour, the audio must contain sources with detectable tonal properties or modulation. Ask yourself:

1. Does the audio contain speech (where intonation conveys meaning like sarcasm or questions)?

2. Does it contain tonal machinery or vehicles (where speed/movement affects pitch, e.g., Doppler effect, acceleration)?

3. Does it contain musical or biological sounds (e.g., bird calls, singing) where frequency changes involve meaning?

If the audio consists ONLY of unpitched sounds (e.g., 'rain', 'static noise', 'footsteps', 'door slam', 'wind') where pitch analysis is irrelevant or impossible, you must output exactly:

Not suitable for this hallucination type.

Step 2: Question Generation (If Suitable)

If the audio contains tonal or pitch-varying events, generate ONE MCQ.

The question must require the model to hear the curve of the sound (rising, falling, wavering) and deduce the underlying cause, intent, or movement.

Focus Areas (Audio-Centric):

- Intonation & Intent: 'The speaker's pitch rises sharply at the end. What does this suggest about their certainty?' (Reasoning: Statement vs. Question)

- Doppler Effect (Physics): 'As the [vehicle] sound gets louder and then fades, the pitch drops significantly. What does this confirm about its movement?' (Reasoning: Passing the listener)

- Mechanical State: 'The pitch of the engine continuously increases without dropping. What does this imply about the machine's operation?' (Reasoning: Acceleration/Revving)

- Emotional State: 'The tremor or wavering pitch in the voice suggests what emotion?' (Reasoning: Fear/Excitement

STRICT CONSTRAINT:

The question must NOT contain phrases like 'According to the list', 'In the description', or 'text'.

It must sound like a natural question asked to someone who has just closed their eyes and listened to the recording.

Output Format (if suitable):

Question: <question about the pitch/tone/intonation>

A. <option A>

B. <option B>

C. <option C>

D. <option D>

Correct answer: <the correct option letter>
"""

QA_GEN_RHYTHM = """\
We are constructing training data to enhance audio perception and reasoning in audio large language models (LLMs).

Your job is to create a single, high-quality multiple-choice question that tests whether a model can perform deep inference based on the rhythmic structure and temporal regularity by listening to a complete audio clip.

Input Audio Events (Chronological Order): {{events_description}}

Task Description:

You are provided with the ground truth sequence of sound events above.
Your goal is to generate ONE multiple-choice question (MCQ) focusing on Rhythmic Structure & Behavioral Inference.

Step 1: Suitability Check (CRITICAL)

Analyze the event list provided above. To support a question about rhythm, the audio must contain sounds that repeat or form a pattern. Ask yourself:

1. Does the audio contain repetitive impulsive sounds (e.g., 'footsteps', 'typing', 'heartbeat', 'clapping', 'knocking')?

2. Does it contain rhythmic machinery or engines (e.g., 'train wheels', 'clock ticking', 'idling engine')?

3. Does it contain music or percussion?

If the audio consists ONLY of continuous amorphous noise (e.g., 'wind', 'water flow', 'static') OR single isolated events (e.g., 'one gunshot', 'a single drop', 'one scream') where no rhythm exists, you must output exactly:

Not suitable for this hallucination type.

Step 2: Question Generation (If Suitable)

If the audio contains rhythmic patterns, generate ONE MCQ.

The question must require the model to hear the pattern of the sound (regularity, tempo, acceleration, chaos) and deduce the underlying behavior or state.

Focus Areas (Audio-Centric):

- Activity State (Tempo): 'The footsteps transition from a slow, steady walking pace to a rapid, frantic rhythm. What does this suggest about the subject?' (Reasoning: Leisure vs. Fleeing)

- Stability (Regularity): 'The engine sound changes from a steady hum to an irregular, sputtering pattern. What does this indicate?' (Reasoning: Mechanical failure)

- Coordination (Synchronization): 'The clapping sounds represent a large group hitting the beat in perfect unison. What context does this imply?' (Reasoning: Organized audience/Performance vs. Chaotic crowd)

- Environmental Context: 'The rhythm of the typing is sporadic and hesitant, with long pauses. What does this suggest about the typist?' (Reasoning: Thinking/Uncertainty vs. Professional transcription)

STRICT CONSTRAINT:

The question must NOT contain phrases like 'According to the list', 'In the description', or 'text'.
It must sound like a natural question asked to someone who has just closed their eyes and listened to the recording.

Output Format (if suitable):

Question: <question about the pitch/tone/intonation>

A. <option A>

B. <option B>

C. <option C>

D. <option D>

Correct answer: <the correct option letter>
"""

QA_GEN_TEMPORAL = """\
We are constructing training data to enhance audio perception and reasoning in audio large language models (LLMs).

Your job is to create a single, high-quality multiple-choice question that tests whether a model can perform Temporal Logic and Causal Reasoning by listening to a complete audio clip.

Input Audio Events (Chronological Order): {{events_description}}

Task Description:

You are provided with the ground truth sequence of sound events above.
Your goal is to generate ONE multiple-choice question (MCQ) focusing on Sequence, Causality, or Temporal Relationship.

Step 1: Suitability Check (CRITICAL)

Analyze the event list provided above. To support temporal or causal reasoning, the audio must contain a sequence of multiple distinct events. Ask yourself:

1. Are there at least two distinct events happening in succession (e.g., 'thunder' then 'rain', 'footsteps' then 'door open')?

2. Is there a logical link (cause-and-effect) or a clear chronological order to test?

If the audio consists of a SINGLE event (e.g., just 'dog barking') OR only continuous background noise (e.g., 'static', 'city traffic') where no sequence exists, you must output exactly:

Not suitable for this hallucination type.

Step 2: Question Generation (If Suitable)

If the audio contains a valid sequence of events, generate ONE MCQ.

The question must require the model to track the order of sounds or deduce the cause of a sound based on what happened before/after.

(Note: Do NOT ask about specific duration in seconds, as you do not have exact timestamps. Focus on relative order and logic.)

Focus Areas (Audio-Centric):

- Chronological Order: 'Which sound occurred immediately after the glass shattered?' (Reasoning: Tracking sequence).

- Causality/Reaction: 'The sudden braking sound was immediately followed by a crash and shouting. What does this sequence imply?' (Reasoning: Cause and Effect).

- Interruption: 'The music was abruptly cut off by which specific sound?' (Reasoning: Identifying the disruptor).

- Reverse Inference: 'The sound of the audience clapping suggests that what event likely just finished?' (Reasoning: Inferring the preceding context).

STRICT CONSTRAINT:

The question must NOT contain phrases like 'According to the list', 'In the description', or 'text'.
It must sound like a natural question asked to someone who has just closed their eyes and listened to the recording.

Output Format (if suitable):

Question: <question about the pitch/tone/intonation>

A. <option A>

B. <option B>

C. <option C>

D. <option D>

Correct answer: <the correct option letter>
"""

QA_GEN_TIMBRE = """\
We are constructing training data to enhance audio perception and reasoning in audio large language models (LLMs).
Your job is to create a single, high-quality multiple-choice question that tests whether a model can perform Temporal Logic and Causal Reasoning by listening to a complete audio clip.

Input Audio Events (Chronological Order): {{events_description}}

Task Description:

You are provided with the ground truth sequence of sound events above.
Your goal is to generate ONE multiple-choice question (MCQ) focusing on Sequence, Causality, or Temporal Relationship.

Step 1: Suitability Check (CRITICAL)

Analyze the event list provided above. To support temporal or causal reasoning, the audio must contain a sequence of multiple distinct events. Ask yourself:

1. Are there at least two distinct events happening in succession (e.g., 'thunder' then 'rain', 'footsteps' then 'door open')?

2. Is there a logical link (cause-and-effect) or a clear chronological order to test?

If the audio consists of a SINGLE event (e.g., just 'dog barking') OR only continuous background noise (e.g., 'static', 'city traffic') where no sequence exists, you must output exactly:

Not suitable for this hallucination type.

Step 2: Question Generation (If Suitable)

If the audio contains a valid sequence of events, generate ONE MCQ.

The question must require the model to track the order of sounds or deduce the cause of a sound based on what happened before/after.

(Note: Do NOT ask about specific duration in seconds, as you do not have exact timestamps. Focus on relative order and logic.)

Focus Areas (Audio-Centric):

- Chronological Order: 'Which sound occurred immediately after the glass shattered?' (Reasoning: Tracking sequence).

- Causality/Reaction: 'The sudden braking sound was immediately followed by a crash and shouting. What does this sequence imply?' (Reasoning: Cause and Effect).

- Interruption: 'The music was abruptly cut off by which specific sound?' (Reasoning: Identifying the disruptor).

- Reverse Inference: 'The sound of the audience clapping suggests that what event likely just finished?' (Reasoning: Inferring the preceding context).

STRICT CONSTRAINT:

The question must NOT contain phrases like 'According to the list', 'In the description', or 'text'.

It must sound like a natural question asked to someone who has just closed their eyes and listened to the recording.

Output Format (if suitable):

Question: <question about the pitch/tone/intonation>

A. <option A>

B. <option B>

C. <option C>

D. <option D>

Correct answer: <the correct option letter>
"""
