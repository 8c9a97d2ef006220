"""Seedable synthetic spelling-error generation.

Six generators run per word, in a fixed pipeline order: word split, word
concatenation, commonly-misspelled ("mischief") substitution, character
switching, caron stripping, and random character edits.  Every probability
draw flows from the configured seed, so a (config, input) pair always yields
the same corpus, independently of scheduling: sentence group *i* draws from
its own stream seeded with ``seed ^ i``.

Output words carry labels: 0 correct, 1 misspelled, 2 must be joined with a
neighbor (both fragments of a split), 3 must be split in two (a merged pair).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AlignmentError, ConfigError, DataFormatError
from .lexicon import Lexicon, contains

SLOVENE_ALPHABET = "abcčdefghijklmnoprsštuvzž"
VOWELS = "aeiou"
CONSONANTS = "".join(c for c in SLOVENE_ALPHABET if c not in VOWELS)

_VOWEL_SET = frozenset(VOWELS)
_CARON_MAP = str.maketrans("čšžČŠŽ", "cszCSZ")
_CARON_RE = re.compile("[čšžČŠŽ]")

# Common character switches, applied bidirectionally; phoneme-similarity
# confusions plus keyboard-adjacent digraph reductions.
DEFAULT_SWITCH_PAIRS: tuple[tuple[str, str], ...] = (
    ("n", "nj"), ("l", "lj"), ("t", "d"), ("v", "u"),
    ("u", "el"), ("i", "j"), ("k", "kj"), ("k", "h"),
    ("k", "g"), ("s", "z"), ("p", "b"), ("š", "ž"),
    ("v", "l"), ("u", "l"), ("t", "tj"), ("i", "ij"),
)

DEFAULT_SEED = 1

# Probabilities that global_scale rescales: the per-generator firing gates.
# The split/concat validation probabilities are branch choices, not error
# rates, and stay fixed.
_SCALED_FIELDS = (
    "p_word_split", "p_conc", "p_mischief", "p_switch_chr", "p_caron",
    "p_vowel", "p_consonant", "p_subst_chr", "p_del_chr", "p_insert_chr",
)


@dataclass(frozen=True)
class CorruptionConfig:
    """Probability vector and knobs driving error synthesis."""

    p_word_split: float = 0.03
    p_split_exists: float = 0.99
    p_conc: float = 0.03
    p_conc_exists: float = 0.99
    p_mischief: float = 0.10
    p_switch_chr: float = 0.70
    switch_positions_per_word: int = 4
    p_caron: float = 0.05
    p_vowel: float = 0.05
    p_consonant: float = 0.05
    p_subst_chr: float = 0.02
    p_del_chr: float = 0.04
    p_insert_chr: float = 0.03
    repeat_cap: int = 3
    global_scale: float = 1.0
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        for f in fields(self):
            if f.name.startswith("p_"):
                p = getattr(self, f.name)
                if not 0.0 <= p <= 1.0:
                    raise ConfigError(f"{f.name} must be in [0, 1], got {p}")
        if self.global_scale <= 0:
            raise ConfigError(f"global_scale must be positive, got {self.global_scale}")
        for name in _SCALED_FIELDS:
            scaled = getattr(self, name) * self.global_scale
            if scaled > 1.0:
                raise ConfigError(
                    f"{name} * global_scale = {scaled} exceeds 1"
                )
        if self.switch_positions_per_word < 1:
            raise ConfigError("switch_positions_per_word must be >= 1")
        if self.repeat_cap < 1:
            raise ConfigError("repeat_cap must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")

    def scaled(self, name: str) -> float:
        """Firing probability of a gate after applying global_scale."""
        if name not in _SCALED_FIELDS:
            raise ConfigError(f"{name} is not a scalable probability")
        return getattr(self, name) * self.global_scale


_INT_FIELDS = {"switch_positions_per_word", "repeat_cap", "seed"}


def parse_config_value(key: str, raw: str):
    """Parse one config value; rationals like ``1/8`` are accepted."""
    raw = raw.strip()
    try:
        if key in _INT_FIELDS:
            return int(raw)
        return float(Fraction(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise DataFormatError(f"bad value for {key}: {raw!r}") from exc


def load_config_file(path, base: Optional[CorruptionConfig] = None) -> CorruptionConfig:
    """Read a flat ``key = value`` config file over a base config.

    Blank lines and ``#`` comments are skipped; unknown keys are errors.
    """
    known = {f.name for f in fields(CorruptionConfig)}
    overrides = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or not key:
                raise DataFormatError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            if key not in known:
                raise DataFormatError(f"{path}:{lineno}: unknown config key {key!r}")
            overrides[key] = parse_config_value(key, value)
    return replace(base or CorruptionConfig(), **overrides)


class SwitchTable:
    """Bidirectional character-switch rules (each side 1-2 letters)."""

    def __init__(self, pairs: Sequence[tuple[str, str]] = DEFAULT_SWITCH_PAIRS):
        self.pairs = tuple((l, r) for l, r in pairs)
        partners: dict[str, list[str]] = {}
        for left, right in self.pairs:
            for side in (left, right):
                if not (1 <= len(side) <= 2) or not side.isalpha():
                    raise DataFormatError(
                        f"switch side must be 1-2 letters, got {side!r}"
                    )
            partners.setdefault(left, []).append(right)
            partners.setdefault(right, []).append(left)
        self._partners = partners

    def partners_of(self, side: str) -> tuple[str, ...]:
        return tuple(self._partners.get(side, ()))

    @classmethod
    def from_file(cls, path) -> "SwitchTable":
        """Load ``left<TAB>right`` pairs; blank and ``#`` lines skipped."""
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataFormatError(
                        f"{path}:{lineno}: expected 'left<TAB>right', got {line!r}"
                    )
                pairs.append((parts[0].strip(), parts[1].strip()))
        return cls(pairs)


class MischiefList:
    """Map from a correct form to its commonly seen misspellings."""

    def __init__(self, entries: Optional[dict[str, Sequence[str]]] = None):
        self.entries: dict[str, tuple[str, ...]] = {}
        for word, variants in (entries or {}).items():
            for variant in variants:
                self.add(word, variant)

    def add(self, word: str, variant: str) -> None:
        if not word or not variant:
            raise DataFormatError("mischief entries must be nonempty")
        if word == variant:
            raise DataFormatError(f"mischief entry maps {word!r} to itself")
        self.entries.setdefault(word, ())
        self.entries[word] = self.entries[word] + (variant,)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def variants(self, word: str) -> tuple[str, ...]:
        return self.entries.get(word, ())

    @classmethod
    def empty(cls) -> "MischiefList":
        return cls()

    @classmethod
    def from_file(cls, path) -> "MischiefList":
        """Load ``correct<TAB>misspelled`` lines; repeated keys accumulate."""
        out = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise DataFormatError(
                        f"{path}:{lineno}: expected 'correct<TAB>misspelled', got {line!r}"
                    )
                try:
                    out.add(parts[0].strip(), parts[1].strip())
                except DataFormatError as exc:
                    raise DataFormatError(f"{path}:{lineno}: {exc}") from exc
        return out


class Provenance(str, Enum):
    NONE = "None"
    SPLIT = "Split"
    CONCAT = "Concat"
    MISCHIEF = "Mischief"
    SWITCH = "Switch"
    CARON = "Caron"
    RANDOM_CHAR = "RandomChar"


@dataclass(frozen=True)
class CorruptedSentence:
    """One corrupted sentence group with per-word labels and provenance."""

    source_words: tuple[str, ...]
    words: tuple[str, ...]
    labels: tuple[int, ...]
    provenance: tuple[Provenance, ...]

    def __post_init__(self):
        if not (len(self.words) == len(self.labels) == len(self.provenance)):
            raise AlignmentError(
                "words, labels, and provenance must have equal length"
            )
        if any(lab not in (0, 1, 2, 3) for lab in self.labels):
            raise DataFormatError("labels must be in {0, 1, 2, 3}")

    def to_record(self) -> dict:
        return {
            "src": list(self.source_words),
            "out": list(self.words),
            "labels": list(self.labels),
            "prov": [p.value for p in self.provenance],
        }

    @classmethod
    def from_record(cls, record: dict) -> "CorruptedSentence":
        try:
            return cls(
                tuple(record["src"]),
                tuple(record["out"]),
                tuple(int(x) for x in record["labels"]),
                tuple(Provenance(p) for p in record["prov"]),
            )
        except (KeyError, ValueError) as exc:
            raise DataFormatError(f"bad corrupted-sentence record: {exc}") from exc


def reconstruct_source(cs: CorruptedSentence) -> list[str]:
    """Rebuild the source word sequence from the corruption bookkeeping.

    Label-2 runs rejoin into their source word, label-3 words re-split at the
    recorded junction, label-0 words must equal their source.  Raises
    AlignmentError if the bookkeeping is inconsistent.
    """
    src = list(cs.source_words)
    out: list[str] = []
    i = 0
    nw = len(cs.words)
    while i < nw:
        si = len(out)
        if si >= len(src):
            raise AlignmentError("more corrupted words than source words account for")
        lab = cs.labels[i]
        if lab == 2:
            target = src[si]
            buf = ""
            j = i
            while j < nw and cs.labels[j] == 2 and len(buf) < len(target):
                buf += cs.words[j]
                j += 1
            if buf != target or j - i < 2:
                raise AlignmentError(
                    f"label-2 run at word {i} does not rejoin source word {target!r}"
                )
            out.append(target)
            i = j
        elif lab == 3:
            merged = cs.words[i]
            left = src[si]
            if (
                si + 1 >= len(src)
                or not merged.startswith(left)
                or merged[len(left):] != src[si + 1]
            ):
                raise AlignmentError(
                    f"label-3 word {merged!r} at {i} does not split into a source pair"
                )
            out.append(left)
            out.append(merged[len(left):])
            i += 1
        else:
            if lab == 0 and cs.words[i] != src[si]:
                raise AlignmentError(
                    f"label-0 word {cs.words[i]!r} differs from source {src[si]!r}"
                )
            out.append(src[si])
            i += 1
    if out != src:
        raise AlignmentError("reconstruction does not cover the source sequence")
    return out


# ---------------------------------------------------------------------------
# The six generators.  Each consumes draws from the caller's random stream;
# the per-generator firing gates live in corrupt_sentence_group.
# ---------------------------------------------------------------------------


def split_word(
    lex: Lexicon, word: str, rng: random.Random, cfg: CorruptionConfig
) -> Optional[tuple[str, str]]:
    """Split a word at a uniformly drawn position.

    With probability p_split_exists the split is emitted only if both halves
    are lexicon words; otherwise it is emitted unconditionally.  Returns None
    when the validated path rejects or the word is too short.
    """
    if len(word) < 2:
        return None
    pos = 1 + rng.randrange(len(word) - 1)
    left, right = word[:pos], word[pos:]
    if rng.random() < cfg.p_split_exists:
        if contains(lex, left) and contains(lex, right):
            return left, right
        return None
    return left, right


def concat_words(
    lex: Lexicon, left: str, right: str, rng: random.Random, cfg: CorruptionConfig
) -> Optional[str]:
    """Merge two adjacent words into one.

    With probability p_conc_exists the merge is emitted only if the joined
    form is a lexicon word; otherwise it is emitted unconditionally.
    """
    merged = left + right
    if rng.random() < cfg.p_conc_exists:
        return merged if contains(lex, merged) else None
    return merged


def apply_mischief(
    mischief: MischiefList, word: str, rng: random.Random
) -> Optional[str]:
    """Replace a listed word with one of its misspellings, chosen uniformly.

    The firing gate (p_mischief) is rolled by the orchestrator.
    """
    variants = mischief.variants(word)
    if not variants:
        return None
    return variants[rng.randrange(len(variants))]


def switch_characters(
    table: SwitchTable, word: str, rng: random.Random, k: int
) -> str:
    """Draw k character positions and apply switch rules where they match.

    At each drawn position the longest matching table side wins (digraph
    before single character); when several rules share that side, one is
    chosen uniformly.  Rewritten spans are never re-selected.  Positions may
    repeat across draws; a draw landing on a rewritten span does nothing.
    """
    chars = list(word)
    locked = [False] * len(chars)
    for _ in range(k):
        if not chars:
            break
        pos = rng.randrange(len(chars))
        if locked[pos]:
            continue
        candidates: list[tuple[str, str]] = []
        if pos + 1 < len(chars) and not locked[pos + 1]:
            digraph = chars[pos] + chars[pos + 1]
            for partner in table.partners_of(digraph):
                candidates.append((digraph, partner))
        if not candidates:
            for partner in table.partners_of(chars[pos]):
                candidates.append((chars[pos], partner))
        if not candidates:
            continue
        side, partner = candidates[
            rng.randrange(len(candidates)) if len(candidates) > 1 else 0
        ]
        chars[pos : pos + len(side)] = list(partner)
        locked[pos : pos + len(side)] = [True] * len(partner)
    return "".join(chars)


def strip_carons(word: str) -> str:
    """Rewrite č/š/ž (and uppercase forms) to their caron-less counterparts."""
    return word.translate(_CARON_MAP)


def has_caron(word: str) -> bool:
    return _CARON_RE.search(word) is not None


def random_char_edits(
    word: str, rng: random.Random, cfg: CorruptionConfig
) -> str:
    """Apply the five independent character edits, in a fixed order.

    Order: vowel swap, consonant swap, substitution, deletion, insertion.
    Each fires with its configured probability times global_scale.  Swaps and
    substitutions always pick a character different from the original;
    deletion is skipped if it would empty the word.
    """
    return _random_char_edits(word, rng, cfg)[0]


def _swap_from_set(chars: list[str], rng: random.Random, members: frozenset, pool: str) -> None:
    positions = [i for i, c in enumerate(chars) if c in members]
    if not positions:
        return
    pos = positions[rng.randrange(len(positions))]
    options = [c for c in pool if c != chars[pos]]
    chars[pos] = options[rng.randrange(len(options))]


def _random_char_edits(
    word: str, rng: random.Random, cfg: CorruptionConfig
) -> tuple[str, int]:
    scale = cfg.global_scale
    chars = list(word)
    fired = 0

    if rng.random() < cfg.p_vowel * scale:
        fired += 1
        _swap_from_set(chars, rng, _VOWEL_SET, VOWELS)

    if rng.random() < cfg.p_consonant * scale:
        fired += 1
        _swap_from_set(chars, rng, frozenset(CONSONANTS), CONSONANTS)

    if rng.random() < cfg.p_subst_chr * scale:
        fired += 1
        if chars:
            pos = rng.randrange(len(chars))
            options = [c for c in SLOVENE_ALPHABET if c != chars[pos]]
            chars[pos] = options[rng.randrange(len(options))]

    if rng.random() < cfg.p_del_chr * scale:
        fired += 1
        if len(chars) > 1:
            del chars[rng.randrange(len(chars))]

    if rng.random() < cfg.p_insert_chr * scale:
        fired += 1
        pos = rng.randrange(len(chars) + 1)
        chars.insert(pos, SLOVENE_ALPHABET[rng.randrange(len(SLOVENE_ALPHABET))])

    return "".join(chars), fired


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------


def group_rng(cfg: CorruptionConfig, group_index: int) -> random.Random:
    """Random stream for one sentence group, independent of scheduling."""
    return random.Random(cfg.seed ^ group_index)


def corrupt_sentence_group(
    lex: Lexicon,
    mischief: MischiefList,
    table: SwitchTable,
    words: Sequence[str],
    cfg: CorruptionConfig,
    group_index: int = 0,
) -> CorruptedSentence:
    """Corrupt one sentence group and return words, labels, and provenance.

    Pipeline order per word: split, concat, mischief, switch, caron, random
    edits.  Split and concat finalize their outputs (fragments and merged
    words see no further generators, keeping the labels reversible); the last
    three generators may repeat geometrically up to repeat_cap applications.
    A word whose final surface equals its source is labeled 0 even if a
    generator touched it.
    """
    if not words:
        raise ConfigError("sentence group must contain at least one word")
    rng = group_rng(cfg, group_index)

    p_split = cfg.p_word_split * cfg.global_scale
    p_conc = cfg.p_conc * cfg.global_scale
    p_mischief = cfg.p_mischief * cfg.global_scale
    p_switch = cfg.p_switch_chr * cfg.global_scale
    p_caron = cfg.p_caron * cfg.global_scale

    out_words: list[str] = []
    labels: list[int] = []
    prov: list[Provenance] = []

    n = len(words)
    i = 0
    while i < n:
        word = words[i]

        if len(word) >= 2 and rng.random() < p_split:
            halves = split_word(lex, word, rng, cfg)
            if halves is not None:
                out_words.extend(halves)
                labels.extend((2, 2))
                prov.extend((Provenance.SPLIT, Provenance.SPLIT))
                i += 1
                continue

        if i + 1 < n and rng.random() < p_conc:
            merged = concat_words(lex, word, words[i + 1], rng, cfg)
            if merged is not None:
                out_words.append(merged)
                labels.append(3)
                prov.append(Provenance.CONCAT)
                i += 2
                continue

        current = word
        last = Provenance.NONE

        if current in mischief and rng.random() < p_mischief:
            current = apply_mischief(mischief, current, rng)
            last = Provenance.MISCHIEF

        for _ in range(cfg.repeat_cap):
            if rng.random() >= p_switch:
                break
            switched = switch_characters(
                table, current, rng, cfg.switch_positions_per_word
            )
            if switched != current:
                last = Provenance.SWITCH
                current = switched

        for _ in range(cfg.repeat_cap):
            if not has_caron(current) or rng.random() >= p_caron:
                break
            current = strip_carons(current)
            last = Provenance.CARON

        for _ in range(cfg.repeat_cap):
            edited, fired = _random_char_edits(current, rng, cfg)
            if edited != current:
                last = Provenance.RANDOM_CHAR
                current = edited
            if not fired:
                break

        if current == word:
            out_words.append(word)
            labels.append(0)
            prov.append(Provenance.NONE)
        else:
            out_words.append(current)
            labels.append(1)
            prov.append(last)
        i += 1

    return CorruptedSentence(tuple(words), tuple(out_words), tuple(labels), tuple(prov))


def corrupt_groups(
    lex: Lexicon,
    mischief: MischiefList,
    table: SwitchTable,
    groups: Iterable[Sequence[str]],
    cfg: CorruptionConfig,
    first_index: int = 0,
) -> Iterator[CorruptedSentence]:
    """Corrupt a stream of sentence groups with per-group random streams."""
    for index, words in enumerate(groups, start=first_index):
        yield corrupt_sentence_group(lex, mischief, table, words, cfg, index)
