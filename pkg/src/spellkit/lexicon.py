"""Word-form lexicon: an immutable membership set over a plain word list.

The lexicon file format is one word form per line, UTF-8, LF or CRLF,
surrounding whitespace trimmed, ``#``-prefixed lines ignored.  All forms are
NFC-normalized on load and all queries are NFC-normalized before lookup, so
composed and decomposed encodings of the same word behave identically.
"""

from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Union

from .errors import DataFormatError

Source = Union[str, Path, IO[bytes], IO[str]]


def _nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


@dataclass(frozen=True)
class Lexicon:
    """Immutable set of valid word forms. Safe to share across threads."""

    forms: frozenset[str]
    source_name: str = "<memory>"

    @property
    def form_count(self) -> int:
        return len(self.forms)

    def __contains__(self, form: str) -> bool:
        return contains(self, form)

    @classmethod
    def from_forms(cls, forms, source_name: str = "<memory>") -> "Lexicon":
        """Build a lexicon from an in-memory iterable of forms."""
        normalized = set()
        for form in forms:
            form = _nfc(form.strip())
            if not form:
                continue
            if any(c.isspace() for c in form):
                raise DataFormatError(f"lexicon form contains whitespace: {form!r}")
            normalized.add(form)
        return cls(frozenset(normalized), source_name)


def load_lexicon(source: Source, format: str = "plain-lines") -> Lexicon:
    """Load a lexicon from a path or an open stream.

    Duplicate lines collapse, line order is irrelevant, comment and blank
    lines are skipped.  Invalid UTF-8 raises DataFormatError with the byte
    offset of the offending byte; a form with internal whitespace raises
    DataFormatError with its line number.
    """
    if format != "plain-lines":
        raise DataFormatError(f"unknown lexicon format: {format!r}")

    if isinstance(source, (str, Path)):
        name = str(source)
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        name = getattr(source, "name", "<stream>")
        data = source.read()

    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataFormatError(
                f"{name}: invalid UTF-8 at byte offset {exc.start}"
            ) from exc
    else:
        text = data

    forms = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        form = line.strip()
        if not form or form.startswith("#"):
            continue
        if any(c.isspace() for c in form):
            raise DataFormatError(
                f"{name}:{lineno}: lexicon form contains whitespace: {form!r}"
            )
        forms.add(_nfc(form))
    return Lexicon(frozenset(forms), name)


def contains(lex: Lexicon, form: str) -> bool:
    """True iff the NFC-normalized form is a known word.

    The raw form is looked up first.  If absent and the form is title-case or
    all-uppercase (a sentence-initial or emphasized rendering of a possibly
    lowercase lexicon entry), its lowercased version is looked up as well.
    Arbitrary mixed-case variants are not accepted.
    """
    q = _nfc(form)
    if q in lex.forms:
        return True
    if q.istitle() or q.isupper():
        return q.lower() in lex.forms
    return False
