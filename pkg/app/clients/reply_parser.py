"""Labeled-line grammar for vision-LLM prompt replies."""

import re

from app.exceptions import PromptParseError
from app.models.generation import PromptPair

_NEGATIVE_LABEL = re.compile(r"^\s*negative\s+prompt\s*:", re.IGNORECASE)
_POSITIVE_LABEL = re.compile(r"^\s*prompt\s*:", re.IGNORECASE)


def _label_value(line: str, label: re.Pattern[str]) -> str:
    return label.sub("", line, count=1).strip()


def parse_prompt_reply(raw: str) -> PromptPair:
    """Split a free-text reply into positive and negative prompts.

    The first line starting with ``negative prompt:`` gives the negative
    prompt, the first line starting with ``prompt:`` gives the positive one
    (case-insensitive). Without a labeled positive line, everything before
    the negative label (or the whole reply) is the positive prompt.

    Raises:
        PromptParseError: if the reply is blank or no positive prompt can be
            recovered. The error carries the raw reply.
    """
    if not raw or not raw.strip():
        raise PromptParseError(raw or "", "reply is empty")

    lines = raw.splitlines()
    negative_index: int | None = None
    negative = ""
    positive: str | None = None
    for index, line in enumerate(lines):
        if _NEGATIVE_LABEL.match(line):
            if negative_index is None:
                negative_index = index
                negative = _label_value(line, _NEGATIVE_LABEL)
        elif positive is None and _POSITIVE_LABEL.match(line):
            positive = _label_value(line, _POSITIVE_LABEL)

    if positive is None:
        head = lines if negative_index is None else lines[:negative_index]
        positive = "\n".join(head).strip()

    if not positive:
        raise PromptParseError(raw, "no positive prompt found in reply")
    return PromptPair(positive=positive, negative=negative, raw_response=raw)
