"""Command-line entry point.

Commands: ``check`` (flag unknown words), ``corrupt`` (synthesize spelling
errors), ``encode`` (corruption output to masked training examples),
``score`` (word-level P/R/F0.5 against gold), ``stats`` (corpus summary).

All randomness flows from ``--seed``; repeated runs over the same inputs are
byte-identical, regardless of ``--jobs``.  Exit codes: 0 success, 1 usage
error, 2 data error.
"""

from __future__ import annotations

import argparse
import contextlib
import multiprocessing
import sys
from dataclasses import replace

from . import corrupt as corruptmod
from . import encode as encodemod
from . import evalkit, jsonl, wordcheck
from .errors import SpellkitError
from .lexicon import load_lexicon


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this tool reserves 2 for data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@contextlib.contextmanager
def _open_input(path):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


@contextlib.contextmanager
def _open_output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _add_io_arguments(parser):
    parser.add_argument("input", nargs="?", default="-",
                        help="input file (default: stdin)")
    parser.add_argument("-o", "--output", default="-",
                        help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spellkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="flag words missing from the lexicon")
    p_check.add_argument("--lexicon", required=True, help="word list, one form per line")
    p_check.add_argument("--jobs", type=int, default=1,
                         help="parallel workers; output order is unaffected")
    _add_io_arguments(p_check)

    p_corrupt = sub.add_parser("corrupt", help="synthesize spelling errors")
    p_corrupt.add_argument("--lexicon", required=True)
    p_corrupt.add_argument("--mischief", help="correct<TAB>misspelled list")
    p_corrupt.add_argument("--switch-table",
                           help="left<TAB>right switch pairs (default: built-in table)")
    p_corrupt.add_argument("--config", help="key = value corruption config file")
    p_corrupt.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                           help="override one config key (repeatable)")
    p_corrupt.add_argument("--seed", type=int, help=f"random seed (default {corruptmod.DEFAULT_SEED})")
    p_corrupt.add_argument("--global-scale", help="rescale all error rates, e.g. 1/8")
    p_corrupt.add_argument("--token-budget", type=int, default=128,
                           help="group sentences under this budget; 0 = one group per line")
    p_corrupt.add_argument("--jobs", type=int, default=1)
    _add_io_arguments(p_corrupt)

    p_encode = sub.add_parser("encode", help="corruption output to masked training examples")
    p_encode.add_argument("--mask-token", default=encodemod.MASK_TOKEN)
    _add_io_arguments(p_encode)

    p_score = sub.add_parser("score", help="precision/recall/F0.5 against gold annotations")
    p_score.add_argument("--gold", required=True, help="gold JSONL file")
    p_score.add_argument("--pred", required=True, help="prediction JSONL file")
    p_score.add_argument("--json", action="store_true", help="machine-readable report")
    p_score.add_argument("-o", "--output", default="-")

    p_stats = sub.add_parser("stats", help="word/sentence/error-rate summary of a gold file")
    p_stats.add_argument("--json", action="store_true")
    _add_io_arguments(p_stats)

    return parser


# --- check -----------------------------------------------------------------

_CHECK_LEXICON = None


def _init_check_worker(lex):
    global _CHECK_LEXICON
    _CHECK_LEXICON = lex


def _check_line(line: str) -> str:
    out = []
    for result in wordcheck.check_text(_CHECK_LEXICON, line.rstrip("\n")):
        out.append(jsonl.dumps(result.as_record()))
    return "\n".join(out)


def _run_check(args) -> int:
    lex = load_lexicon(args.lexicon)
    with _open_input(args.input) as fin, _open_output(args.output) as fout:
        if args.jobs > 1:
            with multiprocessing.Pool(
                args.jobs, initializer=_init_check_worker, initargs=(lex,)
            ) as pool:
                for chunk in pool.imap(_check_line, fin, chunksize=64):
                    if chunk:
                        fout.write(chunk + "\n")
        else:
            _init_check_worker(lex)
            for line in fin:
                chunk = _check_line(line)
                if chunk:
                    fout.write(chunk + "\n")
    return 0


# --- corrupt ---------------------------------------------------------------

_CORRUPT_STATE = None


def _init_corrupt_worker(lex, mischief, table, cfg):
    global _CORRUPT_STATE
    _CORRUPT_STATE = (lex, mischief, table, cfg)


def _corrupt_group(item) -> str:
    index, words = item
    lex, mischief, table, cfg = _CORRUPT_STATE
    sentence = corruptmod.corrupt_sentence_group(lex, mischief, table, words, cfg, index)
    return jsonl.dumps(sentence.to_record())


def _build_corruption_config(args) -> corruptmod.CorruptionConfig:
    cfg = corruptmod.CorruptionConfig()
    if args.config:
        cfg = corruptmod.load_config_file(args.config, cfg)
    overrides = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise SpellkitError(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip()] = corruptmod.parse_config_value(key.strip(), value)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.global_scale is not None:
        overrides["global_scale"] = corruptmod.parse_config_value(
            "global_scale", args.global_scale
        )
    return replace(cfg, **overrides)


def _iter_corrupt_groups(fin, budget):
    """Yield (index, words) sentence groups from one-sentence-per-line input."""
    sentences = (line.split() for line in fin)
    nonempty = (words for words in sentences if words)
    oversized = 0
    if budget == 0:
        for index, words in enumerate(nonempty):
            yield index, words
    else:
        for index, group in enumerate(encodemod.group_sentences(nonempty, budget)):
            if group.oversized:
                oversized += 1
            yield index, list(group.words)
    if oversized:
        print(f"note: {oversized} oversized single-sentence group(s) "
              f"exceeded the token budget", file=sys.stderr)


def _run_corrupt(args) -> int:
    lex = load_lexicon(args.lexicon)
    mischief = (
        corruptmod.MischiefList.from_file(args.mischief)
        if args.mischief else corruptmod.MischiefList.empty()
    )
    table = (
        corruptmod.SwitchTable.from_file(args.switch_table)
        if args.switch_table else corruptmod.SwitchTable()
    )
    cfg = _build_corruption_config(args)
    with _open_input(args.input) as fin, _open_output(args.output) as fout:
        groups = _iter_corrupt_groups(fin, args.token_budget)
        if args.jobs > 1:
            with multiprocessing.Pool(
                args.jobs,
                initializer=_init_corrupt_worker,
                initargs=(lex, mischief, table, cfg),
            ) as pool:
                for line in pool.imap(_corrupt_group, groups, chunksize=16):
                    fout.write(line + "\n")
        else:
            _init_corrupt_worker(lex, mischief, table, cfg)
            for item in groups:
                fout.write(_corrupt_group(item) + "\n")
    return 0


# --- encode ----------------------------------------------------------------

def _run_encode(args) -> int:
    with _open_input(args.input) as fin, _open_output(args.output) as fout:
        for record in jsonl.read_records(fin, args.input):
            sentence = corruptmod.CorruptedSentence.from_record(record)
            example = encodemod.encode_example(sentence, args.mask_token)
            fout.write(jsonl.dumps(example.to_record()) + "\n")
    return 0


# --- score / stats ----------------------------------------------------------

def _load_gold(path):
    with open(path, encoding="utf-8") as fh:
        return evalkit.read_gold_records(jsonl.read_records(fh, path))


def _run_score(args) -> int:
    docs, sentence_counts = _load_gold(args.gold)
    predictions = {}
    with open(args.pred, encoding="utf-8") as fh:
        for record in jsonl.read_records(fh, args.pred):
            predictions[str(record["id"])] = (
                list(record["words"]), [int(x) for x in record["labels"]]
            )
    flags = {}
    for doc in docs:
        if doc.id not in predictions:
            raise SpellkitError(f"no predictions for document {doc.id!r}")
        words, labels = predictions[doc.id]
        evalkit.align(doc, list(zip(words, labels)))
        flags[doc.id] = labels
    report = evalkit.score(docs, flags, sentence_counts)
    with _open_output(args.output) as fout:
        if args.json:
            fout.write(jsonl.dumps(report.to_json_dict()) + "\n")
        else:
            fout.write(report.format_table() + "\n")
    return 0


def _run_stats(args) -> int:
    with _open_input(args.input) as fin:
        docs, sentence_counts = evalkit.read_gold_records(
            jsonl.read_records(fin, args.input)
        )
    words, sentences, error_pct = evalkit.dataset_stats(docs, sentence_counts)
    with _open_output(args.output) as fout:
        if args.json:
            fout.write(jsonl.dumps(
                {"words": words, "sentences": sentences, "error_pct": error_pct}
            ) + "\n")
        else:
            fout.write(f"{'#words':>10} {'#sentences':>12} {'% errors':>10}\n")
            fout.write(f"{words:>10} {sentences:>12} {error_pct:>10.2f}\n")
    return 0


_HANDLERS = {
    "check": _run_check,
    "corrupt": _run_corrupt,
    "encode": _run_encode,
    "score": _run_score,
    "stats": _run_stats,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (SpellkitError, OSError, KeyError) as exc:
        print(f"spellkit {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
