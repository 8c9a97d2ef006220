"""Spell checking, synthetic spelling-error generation, and detection scoring.

The toolkit is language- and lexicon-agnostic: any one-form-per-line word
list works.  See the README for the CLI surface and file formats.
"""

from .corrupt import (
    CorruptedSentence,
    CorruptionConfig,
    MischiefList,
    Provenance,
    SwitchTable,
    apply_mischief,
    concat_words,
    corrupt_groups,
    corrupt_sentence_group,
    random_char_edits,
    reconstruct_source,
    split_word,
    strip_carons,
    switch_characters,
)
from .encode import (
    MASK_TOKEN,
    EncodedExample,
    SentenceGroup,
    decode_predictions,
    encode_example,
    group_sentences,
)
from .errors import AlignmentError, ConfigError, DataFormatError, SpellkitError
from .evalkit import (
    EvalReport,
    GoldDocument,
    align,
    dataset_stats,
    f_beta,
    score,
)
from .lexicon import Lexicon, contains, load_lexicon
from .wordcheck import (
    CheckResult,
    Reason,
    Token,
    TokenKind,
    Verdict,
    check_text,
    check_word,
    tokenize,
)

__version__ = "0.1.0"
