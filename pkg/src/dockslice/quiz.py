"""Tiered quiz content: loading, validation and the shipped sample bank.

Questions always offer exactly three choices with a single correct index
and an explanation shown after answering.  The sample bank content is
illustrative placeholder material.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DockSliceError

BANK_SCHEMA_VERSION = 1
TIERS = ("GCSE", "A_Level")


class SchemaViolation(DockSliceError):
    def __init__(self, path: str, detail: str = ""):
        self.path = path
        msg = f"schema violation at {path}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DuplicateId(DockSliceError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"duplicate question id {question_id!r}")


class EmptyBank(DockSliceError):
    def __init__(self, tier: str):
        self.tier = tier
        super().__init__(f"no questions available for tier {tier!r}")


@dataclass(frozen=True)
class QuizQuestion:
    question_id: str
    tier: str
    prompt: str
    choices: tuple[str, str, str]
    correct_index: int
    explanation: str


@dataclass(frozen=True)
class QuizBank:
    version: int
    questions: tuple[QuizQuestion, ...]

    def of_tier(self, tier: str) -> list[QuizQuestion]:
        return [q for q in self.questions if q.tier == tier]


def _validate_question(data: dict, path: str) -> QuizQuestion:
    def need(key, kind, extra=""):
        if key not in data:
            raise SchemaViolation(f"{path}.{key}", "missing")
        value = data[key]
        if not isinstance(value, kind):
            raise SchemaViolation(f"{path}.{key}", f"expected {kind.__name__}{extra}")
        return value

    qid = need("id", str)
    tier = need("tier", str)
    if tier not in TIERS:
        raise SchemaViolation(f"{path}.tier", f"must be one of {TIERS}")
    prompt = need("prompt", str)
    choices = need("choices", list)
    if len(choices) != 3 or not all(isinstance(c, str) and c for c in choices):
        raise SchemaViolation(f"{path}.choices", "exactly 3 non-empty choices required")
    correct = need("correct_index", int)
    if not 0 <= correct <= 2:
        raise SchemaViolation(f"{path}.correct_index", "must be 0..2")
    explanation = need("explanation", str)
    if not explanation:
        raise SchemaViolation(f"{path}.explanation", "must be non-empty")
    return QuizQuestion(
        question_id=qid,
        tier=tier,
        prompt=prompt,
        choices=tuple(choices),
        correct_index=correct,
        explanation=explanation,
    )


def parse_bank(data: dict) -> QuizBank:
    if not isinstance(data, dict):
        raise SchemaViolation("bank", "expected an object")
    version = data.get("schema_version")
    if not isinstance(version, int):
        raise SchemaViolation("bank.schema_version", "missing or not an integer")
    raw = data.get("questions")
    if not isinstance(raw, list):
        raise SchemaViolation("bank.questions", "missing or not a list")
    questions = []
    seen: set[str] = set()
    for i, qdata in enumerate(raw):
        if not isinstance(qdata, dict):
            raise SchemaViolation(f"bank.questions[{i}]", "expected an object")
        q = _validate_question(qdata, f"bank.questions[{i}]")
        if q.question_id in seen:
            raise DuplicateId(q.question_id)
        seen.add(q.question_id)
        questions.append(q)
    return QuizBank(version=version, questions=tuple(questions))


def load_bank(path: str | Path) -> QuizBank:
    """Load and validate a quiz bank JSON file."""
    return parse_bank(json.loads(Path(path).read_text()))


def sample_bank() -> QuizBank:
    """The bank shipped with the package."""
    text = resources.files("dockslice").joinpath("data/sample_quiz_bank.json").read_text()
    return parse_bank(json.loads(text))
