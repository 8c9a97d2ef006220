"""Word-level detection scoring: alignment, precision/recall/F0.5, stats.

All aggregation runs on exact rationals; floats appear only at the
presentation edge.  Per-document scores are macro-averaged (unweighted mean)
and pooled counts give the micro scores; both are always reported, since the
averaging unit materially changes the headline number.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import AlignmentError, DataFormatError

Rational = Union[int, float, Fraction]


@dataclass(frozen=True)
class GoldDocument:
    """One evaluation document: words with per-word error annotations."""

    id: str
    words: tuple[str, ...]
    gold_error: tuple[bool, ...]

    def __post_init__(self):
        if not self.words:
            raise DataFormatError(f"document {self.id!r} has no words")
        if len(self.words) != len(self.gold_error):
            raise DataFormatError(
                f"document {self.id!r}: {len(self.words)} words but "
                f"{len(self.gold_error)} error annotations"
            )


def _nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


def align(
    gold: GoldDocument, predictions: Sequence[tuple[str, int]]
) -> list[tuple[bool, bool]]:
    """Pair gold annotations with predictions, word by word.

    Prediction labels 1-3 all collapse to "error predicted"; words must match
    the gold words positionally after NFC normalization.
    """
    if len(predictions) != len(gold.words):
        raise AlignmentError(
            f"document {gold.id!r}: {len(gold.words)} gold words but "
            f"{len(predictions)} predictions"
        )
    aligned = []
    for idx, (gold_word, (pred_word, label)) in enumerate(
        zip(gold.words, predictions)
    ):
        if _nfc(gold_word) != _nfc(pred_word):
            raise AlignmentError(
                f"document {gold.id!r}: word mismatch at index {idx}: "
                f"gold {gold_word!r} vs predicted {pred_word!r}"
            )
        aligned.append((gold.gold_error[idx], int(label) != 0))
    return aligned


def f_beta(tp: int, fp: int, fn: int, beta: Rational = 0.5) -> Fraction:
    """F-measure over error counts, exact.

    Conventions for degenerate counts: with nothing to find and nothing
    predicted (tp=fp=fn=0) the score is 1; with tp=0 and any fp or fn it
    is 0.  These follow from treating an empty denominator for precision or
    recall as a vacuous 1.
    """
    if tp < 0 or fp < 0 or fn < 0:
        raise ValueError("counts must be non-negative")
    beta2 = Fraction(beta) ** 2
    precision = Fraction(1) if tp + fp == 0 else Fraction(tp, tp + fp)
    recall = Fraction(1) if tp + fn == 0 else Fraction(tp, tp + fn)
    denominator = beta2 * precision + recall
    if denominator == 0:
        return Fraction(0)
    return (1 + beta2) * precision * recall / denominator


def _precision(tp: int, fp: int) -> Fraction:
    return Fraction(1) if tp + fp == 0 else Fraction(tp, tp + fp)


def _recall(tp: int, fn: int) -> Fraction:
    return Fraction(1) if tp + fn == 0 else Fraction(tp, tp + fn)


@dataclass(frozen=True)
class DocScore:
    id: str
    tp: int
    fp: int
    fn: int
    precision: Fraction
    recall: Fraction
    f05: Fraction


@dataclass(frozen=True)
class CorpusStats:
    word_count: int
    sentence_count: int
    error_fraction: Fraction

    @property
    def error_pct(self) -> float:
        return round(float(self.error_fraction) * 100, 2)


@dataclass(frozen=True)
class EvalReport:
    per_doc: tuple[DocScore, ...]
    macro_f05: Fraction
    micro_precision: Fraction
    micro_recall: Fraction
    micro_f05: Fraction
    corpus_stats: CorpusStats

    def to_json_dict(self) -> dict:
        return {
            "per_doc": [
                {
                    "id": d.id,
                    "tp": d.tp,
                    "fp": d.fp,
                    "fn": d.fn,
                    "precision": float(d.precision),
                    "recall": float(d.recall),
                    "f05": float(d.f05),
                }
                for d in self.per_doc
            ],
            "macro_f05": float(self.macro_f05),
            "micro_precision": float(self.micro_precision),
            "micro_recall": float(self.micro_recall),
            "micro_f05": float(self.micro_f05),
            "corpus": {
                "words": self.corpus_stats.word_count,
                "sentences": self.corpus_stats.sentence_count,
                "error_pct": self.corpus_stats.error_pct,
            },
        }

    def format_table(self) -> str:
        """Two-decimal human-readable report."""
        lines = [f"{'document':<24} {'tp':>6} {'fp':>6} {'fn':>6} {'P':>6} {'R':>6} {'F0.5':>6}"]
        for d in self.per_doc:
            lines.append(
                f"{d.id:<24} {d.tp:>6} {d.fp:>6} {d.fn:>6} "
                f"{float(d.precision):>6.2f} {float(d.recall):>6.2f} {float(d.f05):>6.2f}"
            )
        lines.append("")
        lines.append(f"macro F0.5: {float(self.macro_f05):.2f}")
        lines.append(
            f"micro P/R/F0.5: {float(self.micro_precision):.2f} "
            f"{float(self.micro_recall):.2f} {float(self.micro_f05):.2f}"
        )
        s = self.corpus_stats
        lines.append(
            f"corpus: {s.word_count} words, {s.sentence_count} sentences, "
            f"{s.error_pct:.2f}% errors"
        )
        return "\n".join(lines)


def count_errors(aligned: Iterable[tuple[bool, bool]]) -> tuple[int, int, int]:
    """(tp, fp, fn) over (gold_error, predicted) pairs."""
    tp = fp = fn = 0
    for gold, predicted in aligned:
        if gold and predicted:
            tp += 1
        elif predicted:
            fp += 1
        elif gold:
            fn += 1
    return tp, fp, fn


def score(
    dataset: Sequence[GoldDocument],
    predictions: Mapping[str, Sequence[int]],
    sentence_counts: Optional[Mapping[str, int]] = None,
    beta: Rational = 0.5,
) -> EvalReport:
    """Score per-document flag sequences against gold annotations.

    ``predictions`` maps document id to one label per word (any nonzero
    label counts as a predicted error).  Every document must have a
    prediction sequence of matching length.
    """
    per_doc = []
    total_tp = total_fp = total_fn = 0
    total_words = 0
    total_errors = 0
    for doc in dataset:
        if doc.id not in predictions:
            raise DataFormatError(f"no predictions for document {doc.id!r}")
        flags = predictions[doc.id]
        if len(flags) != len(doc.words):
            raise AlignmentError(
                f"document {doc.id!r}: {len(doc.words)} gold words but "
                f"{len(flags)} predicted labels"
            )
        aligned = [
            (gold, int(label) != 0)
            for gold, label in zip(doc.gold_error, flags)
        ]
        tp, fp, fn = count_errors(aligned)
        per_doc.append(
            DocScore(doc.id, tp, fp, fn, _precision(tp, fp), _recall(tp, fn),
                     f_beta(tp, fp, fn, beta))
        )
        total_tp += tp
        total_fp += fp
        total_fn += fn
        total_words += len(doc.words)
        total_errors += sum(doc.gold_error)

    if per_doc:
        macro = sum((d.f05 for d in per_doc), Fraction(0)) / len(per_doc)
    else:
        macro = Fraction(1)
    sentences = sum(sentence_counts.values()) if sentence_counts else 0
    error_fraction = (
        Fraction(total_errors, total_words) if total_words else Fraction(0)
    )
    return EvalReport(
        per_doc=tuple(per_doc),
        macro_f05=macro,
        micro_precision=_precision(total_tp, total_fp),
        micro_recall=_recall(total_tp, total_fn),
        micro_f05=f_beta(total_tp, total_fp, total_fn, beta),
        corpus_stats=CorpusStats(total_words, sentences, error_fraction),
    )


def dataset_stats(
    dataset: Sequence[GoldDocument],
    sentence_boundaries: Optional[Mapping[str, int]] = None,
) -> tuple[int, int, float]:
    """(word total, sentence total, error percentage rounded to 2 decimals)."""
    words = sum(len(doc.words) for doc in dataset)
    errors = sum(sum(doc.gold_error) for doc in dataset)
    sentences = sum(sentence_boundaries.values()) if sentence_boundaries else 0
    pct = round(errors / words * 100, 2) if words else 0.0
    return words, sentences, pct


def read_gold_records(
    records: Iterable[dict],
) -> tuple[list[GoldDocument], dict[str, int]]:
    """Parse gold-format dicts into documents plus per-document sentence counts.

    Record shape: ``{"id": str, "words": [str], "errors": [0|1],
    "sent_ends": [indices]}``; sent_ends is optional and holds the indices
    of sentence-final words.
    """
    docs = []
    sentence_counts = {}
    seen = set()
    for record in records:
        try:
            doc_id = str(record["id"])
            words = tuple(record["words"])
            errors = tuple(bool(int(e)) for e in record["errors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DataFormatError(f"bad gold record: {exc}") from exc
        if doc_id in seen:
            raise DataFormatError(f"duplicate document id {doc_id!r}")
        seen.add(doc_id)
        docs.append(GoldDocument(doc_id, words, errors))
        ends = record.get("sent_ends", [])
        for end in ends:
            if not 0 <= int(end) < len(words):
                raise DataFormatError(
                    f"document {doc_id!r}: sentence end {end} out of range"
                )
        sentence_counts[doc_id] = len(ends)
    return docs, sentence_counts
