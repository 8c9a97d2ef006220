import random

import pytest

from spellkit.corrupt import (
    CorruptedSentence,
    CorruptionConfig,
    MischiefList,
    Provenance,
    SwitchTable,
    corrupt_sentence_group,
)
from spellkit.encode import (
    MASK_TOKEN,
    EncodedExample,
    decode_predictions,
    default_token_cost,
    encode_example,
    group_sentences,
)
from spellkit.errors import AlignmentError, ConfigError, DataFormatError
from spellkit.lexicon import Lexicon


def sentence_of(n_words, word_len=19):
    # cost per word = ceil(19/4)+1 = 6, plus 1 per mask -> 7 per word
    return [("x" * word_len) for _ in range(n_words)]


def test_default_token_cost():
    assert default_token_cost("a") == 2
    assert default_token_cost("abcd") == 2
    assert default_token_cost("abcde") == 3


def test_greedy_packing_by_cost():
    # sentence cost 60 each under budget 128: two fit, the third overflows
    sentences = [["w"] * 10, ["w"] * 10, ["w"] * 10]
    cost = lambda word: 5  # + 1 mask each -> 60 per sentence
    groups = list(group_sentences(sentences, budget=128, token_cost=cost))
    assert [len(g.sentences) for g in groups] == [2, 1]
    assert not any(g.oversized for g in groups)


def test_oversized_singleton_is_flagged():
    groups = list(group_sentences([sentence_of(3), sentence_of(40)], budget=128))
    assert [g.oversized for g in groups] == [False, True]
    assert len(groups[1].sentences) == 1


def test_empty_input():
    assert list(group_sentences([], budget=128)) == []


def test_non_positive_cost_rejected():
    with pytest.raises(ConfigError):
        list(group_sentences([["a"]], budget=128, token_cost=lambda w: 0))
    with pytest.raises(ConfigError):
        list(group_sentences([["a"]], budget=0))


def test_grouping_preserves_order_and_content():
    rng = random.Random(2)
    sentences = [
        ["w%d" % i] * rng.randint(1, 30) for i in range(200)
    ]
    groups = list(group_sentences(sentences, budget=64))
    flattened = [list(s) for g in groups for s in g.sentences]
    assert flattened == sentences
    for g in groups:
        if not g.oversized:
            cost = sum(default_token_cost(w) + 1 for s in g.sentences for w in s)
            assert cost <= 64


def test_masked_rendering_of_split_example():
    cs = CorruptedSentence(
        ("Mačka", "spi", "na", "tipkovnici"),
        ("Mečka", "spi", "na", "tip", "kovnici"),
        (1, 0, 0, 2, 2),
        (Provenance.RANDOM_CHAR, Provenance.NONE, Provenance.NONE,
         Provenance.SPLIT, Provenance.SPLIT),
    )
    example = encode_example(cs)
    assert example.masked_text == (
        "Mečka <mask> spi <mask> na <mask> tip <mask> kovnici <mask>"
    )
    assert example.labels == (1, 0, 0, 2, 2)
    assert example.masked_text.count(MASK_TOKEN) == example.word_count == 5


def test_single_word():
    cs = CorruptedSentence(("a",), ("a",), (0,), (Provenance.NONE,))
    example = encode_example(cs)
    assert example.masked_text == "a <mask>"
    assert example.labels == (0,)


def test_empty_sentence_rejected():
    cs = CorruptedSentence((), (), (), ())
    with pytest.raises(DataFormatError):
        encode_example(cs)


def test_custom_mask_token():
    cs = CorruptedSentence(("a", "b"), ("a", "b"), (0, 0),
                           (Provenance.NONE, Provenance.NONE))
    example = encode_example(cs, mask_token="[MASK]")
    assert example.masked_text == "a [MASK] b [MASK]"


def test_decode_pairs_words_with_predictions():
    cs = CorruptedSentence(
        ("av", "to", "spi"), ("avto", "spi"), (3, 0),
        (Provenance.CONCAT, Provenance.NONE),
    )
    example = encode_example(cs)
    assert decode_predictions(example, [3, 0]) == [("avto", 3), ("spi", 0)]


def test_decode_length_mismatch_names_both_lengths():
    cs = CorruptedSentence(("a", "b"), ("a", "b"), (0, 0),
                           (Provenance.NONE, Provenance.NONE))
    example = encode_example(cs)
    with pytest.raises(AlignmentError, match="1 predictions for 2 words"):
        decode_predictions(example, [0])


def test_record_round_trip():
    example = EncodedExample("a <mask> b <mask>", (0, 1))
    assert EncodedExample.from_record(example.to_record()) == example


def test_encode_decode_round_trip_on_random_corruptions(small_lexicon, switch_table):
    vocab = sorted(small_lexicon.forms)
    rng = random.Random(55)
    cfg = CorruptionConfig(p_word_split=0.2, p_conc=0.2, seed=6)
    for trial in range(200):
        words = [vocab[rng.randrange(len(vocab))] for _ in range(rng.randint(1, 8))]
        cs = corrupt_sentence_group(
            small_lexicon, MischiefList.empty(), switch_table, words, cfg, trial
        )
        example = encode_example(cs)
        assert example.masked_text.count(MASK_TOKEN) == len(cs.labels)
        assert decode_predictions(example, list(cs.labels)) == list(
            zip(cs.words, cs.labels)
        )
        # stripping the masks recovers the corrupted word sequence
        stripped = [t for t in example.masked_text.split(" ") if t != MASK_TOKEN]
        assert stripped == list(cs.words)
