"""Tokenization and word-level spell checking.

Each word is judged in isolation against the lexicon; numbers, URLs,
punctuation, and other symbols are exempt classes that are never flagged.
Tokenization is reconstruction-exact: concatenating token texts with the
skipped whitespace yields the input unchanged.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .lexicon import Lexicon, contains


class TokenKind(Enum):
    WORD = "Word"
    NUMBER = "Number"
    URL = "Url"
    PUNCTUATION = "Punctuation"
    SYMBOL = "Symbol"


class Verdict(Enum):
    CORRECT = "Correct"
    FLAGGED = "Flagged"


class Reason(Enum):
    EXCEPTION_NUMBER = "ExceptionNumber"
    EXCEPTION_URL = "ExceptionUrl"
    EXCEPTION_PUNCT = "ExceptionPunct"
    EXCEPTION_SYMBOL = "ExceptionSymbol"
    IN_LEXICON = "InLexicon"
    NOT_IN_LEXICON = "NotInLexicon"


_EXEMPT_REASON = {
    TokenKind.NUMBER: Reason.EXCEPTION_NUMBER,
    TokenKind.URL: Reason.EXCEPTION_URL,
    TokenKind.PUNCTUATION: Reason.EXCEPTION_PUNCT,
    TokenKind.SYMBOL: Reason.EXCEPTION_SYMBOL,
}


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    kind: TokenKind
    char_offset: int
    char_length: int


@dataclass(frozen=True, slots=True)
class CheckResult:
    token: Token
    verdict: Verdict
    reason: Reason

    def as_record(self) -> dict:
        """Line-delimited JSON record shared with the evaluation tooling."""
        return {
            "w": self.token.text,
            "off": self.token.char_offset,
            "len": self.token.char_length,
            "flag": 1 if self.verdict is Verdict.FLAGGED else 0,
        }


# Words are maximal letter runs, allowing apostrophes/hyphens strictly
# between letters.  Numbers are digit runs with at most one internal decimal
# comma/period; an ordinal trailing period binds to the number only when a
# whitespace character follows it (sentence-final periods stay punctuation).
# URLs run from their scheme or "www." prefix up to the next whitespace.
_URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)
_NUM_RE = re.compile(r"\d+(?:[.,]\d+)?")
_WORD_RE = re.compile(r"[^\W\d_]+(?:['’\-][^\W\d_]+)*")


def tokenize(text: str) -> list[Token]:
    """Split text into classified tokens.

    Classification precedence at each position: URL > Number > Word >
    Punctuation > Symbol.  Empty input yields an empty list.
    """
    tokens: list[Token] = []
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _URL_RE.match(text, i)
        if m:
            end = m.end()
            kind = TokenKind.URL
        else:
            m = _NUM_RE.match(text, i)
            if m:
                end = m.end()
                if end < n and text[end] == "." and end + 1 < n and text[end + 1].isspace():
                    end += 1
                kind = TokenKind.NUMBER
            else:
                m = _WORD_RE.match(text, i)
                if m:
                    end = m.end()
                    kind = TokenKind.WORD
                elif unicodedata.category(ch).startswith("P"):
                    end = i + 1
                    kind = TokenKind.PUNCTUATION
                else:
                    end = i + 1
                    kind = TokenKind.SYMBOL
        tokens.append(Token(text[i:end], kind, i, end - i))
        i = end
    return tokens


def check_word(lex: Lexicon, token: Token) -> CheckResult:
    """Judge one token; only Word tokens ever come back Flagged."""
    if token.kind is not TokenKind.WORD:
        return CheckResult(token, Verdict.CORRECT, _EXEMPT_REASON[token.kind])
    if contains(lex, token.text):
        return CheckResult(token, Verdict.CORRECT, Reason.IN_LEXICON)
    return CheckResult(token, Verdict.FLAGGED, Reason.NOT_IN_LEXICON)


def check_text(lex: Lexicon, text: str) -> list[CheckResult]:
    """Tokenize and judge every token, in order."""
    return [check_word(lex, tok) for tok in tokenize(text)]


def check_lines(lex: Lexicon, lines: Iterable[str]) -> Iterator[CheckResult]:
    """Stream results over an iterable of text lines with bounded memory.

    Offsets restart at 0 on each line.
    """
    for line in lines:
        yield from check_text(lex, line)
