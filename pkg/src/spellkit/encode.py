"""Training-example encoding: sentence grouping and mask-after-each-word text.

A training example renders every word followed by a mask placeholder; the
label vector carries one entry per mask.  The placeholder literal in the
interchange format is ``<mask>``; a downstream trainer maps it to its own
model's mask symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .corrupt import CorruptedSentence
from .errors import AlignmentError, ConfigError, DataFormatError

MASK_TOKEN = "<mask>"

TokenCost = Callable[[str], int]


def default_token_cost(word: str) -> int:
    """Crude subword estimate: one token per 4 characters, plus one."""
    return (len(word) + 3) // 4 + 1


@dataclass(frozen=True)
class SentenceGroup:
    """Consecutive sentences packed under a token budget."""

    sentences: tuple[tuple[str, ...], ...]
    token_budget: int
    oversized: bool = False

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(w for sentence in self.sentences for w in sentence)


@dataclass(frozen=True)
class EncodedExample:
    """Masked rendering of a corrupted sentence group with its labels."""

    masked_text: str
    labels: tuple[int, ...]
    mask_token: str = MASK_TOKEN

    @property
    def word_count(self) -> int:
        return len(self.labels)

    def to_record(self) -> dict:
        return {"text": self.masked_text, "labels": list(self.labels)}

    @classmethod
    def from_record(cls, record: dict, mask_token: str = MASK_TOKEN) -> "EncodedExample":
        try:
            return cls(record["text"], tuple(int(x) for x in record["labels"]), mask_token)
        except (KeyError, ValueError) as exc:
            raise DataFormatError(f"bad encoded-example record: {exc}") from exc


def group_sentences(
    sentences: Iterable[Sequence[str]],
    budget: int = 128,
    token_cost: TokenCost = default_token_cost,
) -> Iterator[SentenceGroup]:
    """Greedily pack sentences, in order, into groups under the budget.

    The cost of a sentence is the sum over its words of token_cost(word)
    plus one per-mask token.  A sentence that alone exceeds the budget forms
    an oversized singleton group, flagged as such.  No sentence is split or
    reordered.
    """
    if budget < 1:
        raise ConfigError(f"token budget must be positive, got {budget}")

    pending: list[tuple[str, ...]] = []
    pending_cost = 0
    for sentence in sentences:
        cost = 0
        for word in sentence:
            word_cost = token_cost(word)
            if word_cost < 1:
                raise ConfigError(
                    f"token_cost must be positive, got {word_cost} for {word!r}"
                )
            cost += word_cost + 1
        if cost > budget:
            if pending:
                yield SentenceGroup(tuple(pending), budget)
                pending, pending_cost = [], 0
            yield SentenceGroup((tuple(sentence),), budget, oversized=True)
            continue
        if pending and pending_cost + cost > budget:
            yield SentenceGroup(tuple(pending), budget)
            pending, pending_cost = [], 0
        pending.append(tuple(sentence))
        pending_cost += cost
    if pending:
        yield SentenceGroup(tuple(pending), budget)


def encode_example(c: CorruptedSentence, mask_token: str = MASK_TOKEN) -> EncodedExample:
    """Render ``w1 <mask> w2 <mask> ... wn <mask>`` with labels copied over."""
    if not c.words:
        raise DataFormatError("cannot encode an empty word sequence")
    masked = " ".join(f"{word} {mask_token}" for word in c.words)
    return EncodedExample(masked, tuple(c.labels), mask_token)


def decode_predictions(
    example: EncodedExample, per_mask_labels: Sequence[int]
) -> list[tuple[str, int]]:
    """Pair each word with the prediction for the mask that follows it."""
    words = [
        tok for tok in example.masked_text.split(" ") if tok != example.mask_token
    ]
    if len(per_mask_labels) != len(words):
        raise AlignmentError(
            f"got {len(per_mask_labels)} predictions for {len(words)} words"
        )
    return list(zip(words, (int(x) for x in per_mask_labels)))
