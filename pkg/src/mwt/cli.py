"""Command-line entry point wiring the toolkit into one workflow:

    train-vocab -> learn-ngrams -> extend -> transfer-embeddings
                -> tokenize / analyze

Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
stderr; data goes to the requested output file or stdout. Corpora are
read one document per line and never fully materialized.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterator

from mwt import __version__
from mwt.analyzer import DEFAULT_BUDGETS, analyze, emit_report
from mwt.errors import MwtError
from mwt.fvt import fvt_transfer, load_embeddings, save_embeddings
from mwt.manifest import build_manifest, load_manifest, resolve_path, save_manifest
from mwt.ngrams import count_ngrams, load_ngrams, save_ngrams, select_top_k
from mwt.tokenizer import MwtConfig, MwtPipeline
from mwt.trainer import TrainerConfig, train_vocab
from mwt.vocab import extend_vocab, load_vocab, save_vocab
from mwt._parallel import resolve_threads


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse's default of 2 is reserved for data errors)
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _parse_budgets(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")


def _iter_byte_lines(path: str) -> Iterator[bytes]:
    with open(path, "rb") as fh:
        for line in fh:
            yield line.rstrip(b"\n")


def _iter_text_lines(path: str) -> Iterator[str]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            yield line.rstrip("\n")


def _open_output(path: str | None):
    if path is None:
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _cmd_train_vocab(args) -> int:
    cfg = TrainerConfig(vocab_size=args.vocab_size, min_frequency=args.min_frequency)
    vocab = train_vocab(_iter_byte_lines(args.corpus), cfg)
    save_vocab(vocab, args.output)
    print(f"wrote {len(vocab)} tokens to {args.output}", file=sys.stderr)
    return 0


def _cmd_learn_ngrams(args) -> int:
    threads = resolve_threads(args.threads)
    table = count_ngrams(
        _iter_byte_lines(args.corpus),
        max_n=args.max_n,
        filter_punct=args.filter_punct,
        threads=threads,
    )
    selection = select_top_k(table, args.top_k)
    save_ngrams(selection, args.output)
    print(
        f"counted {table.total_pretokens} pre-tokens in {table.total_docs} docs; "
        f"kept top {len(selection.ranked)} n-grams",
        file=sys.stderr,
    )
    return 0


def _cmd_extend(args) -> int:
    vocab = load_vocab(args.vocab)
    selection = load_ngrams(args.ngrams)
    extended, diff = extend_vocab(vocab, selection)
    save_vocab(extended, args.output)
    sidecar = args.output + ".diff.json"
    with open(sidecar, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(diff.as_dict(), fh, indent=2)
        fh.write("\n")
    if args.manifest:
        manifest = build_manifest(
            vocab_path=args.output,
            ngrams_path=args.ngrams,
            max_n=selection.max_n,
        )
        save_manifest(manifest, args.manifest)
    print(
        f"added {len(diff.added)} tokens (skipped {len(diff.skipped)}) -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _build_pipeline(args) -> MwtPipeline:
    if args.manifest:
        manifest = load_manifest(args.manifest)
        vocab = load_vocab(resolve_path(args.manifest, manifest.vocab_path))
        ngram_set = frozenset()
        max_n = manifest.max_n
        if manifest.ngrams_path:
            selection = load_ngrams(resolve_path(args.manifest, manifest.ngrams_path))
            ngram_set = selection.ngram_set()
            max_n = selection.max_n
        add_special = manifest.add_special_tokens
        max_length = manifest.max_length
    else:
        vocab = load_vocab(args.vocab)
        ngram_set = frozenset()
        max_n = 2
        if args.ngrams:
            selection = load_ngrams(args.ngrams)
            ngram_set = selection.ngram_set()
            max_n = selection.max_n
        add_special = False
        max_length = None
    if args.add_special_tokens is not None:
        add_special = args.add_special_tokens
    if args.max_length is not None:
        max_length = args.max_length
    cfg = MwtConfig(
        ngram_set=ngram_set,
        max_n=max_n,
        add_special_tokens=add_special,
        max_length=max_length,
    )
    return MwtPipeline(vocab, cfg)


def _cmd_tokenize(args) -> int:
    pipeline = _build_pipeline(args)
    out = _open_output(args.output)
    try:
        for line in _iter_text_lines(args.input):
            seq = pipeline.tokenize(line)
            if args.json:
                out.write(json.dumps({"tokens": seq.tokens, "ids": seq.ids}) + "\n")
            else:
                out.write(" ".join(seq.tokens) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_transfer_embeddings(args) -> int:
    old_vocab = load_vocab(args.old_vocab)
    old_emb = load_embeddings(args.old_embeddings)
    new_vocab = load_vocab(args.new_vocab)
    new_emb = fvt_transfer(old_vocab, old_emb, new_vocab)
    save_embeddings(new_emb, args.output)
    print(
        f"transferred {new_emb.rows.shape[0]}x{new_emb.dim} embeddings -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _cmd_analyze(args) -> int:
    threads = resolve_threads(args.threads)
    vocab_cache: dict[str, object] = {}
    pipelines = []
    for item in args.pipeline:
        name, eq, rest = item.partition("=")
        if not eq or not name or not rest:
            raise ValueError(f"bad --pipeline value {item!r}, expected ID=VOCAB[:NGRAMS]")
        vocab_path, colon, ngrams_path = rest.partition(":")
        if vocab_path not in vocab_cache:
            vocab_cache[vocab_path] = load_vocab(vocab_path)
        vocab = vocab_cache[vocab_path]
        if colon:
            selection = load_ngrams(ngrams_path)
            cfg = MwtConfig(ngram_set=selection.ngram_set(), max_n=selection.max_n)
        else:
            cfg = MwtConfig()
        pipelines.append((name, vocab, cfg))
    reports = analyze(
        _iter_text_lines(args.corpus),
        pipelines,
        budgets=args.budgets,
        include_specials=args.include_specials,
        corpus_id=args.corpus,
        threads=threads,
    )
    out = _open_output(args.output)
    try:
        emit_report(reports, args.format, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="mwt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"mwt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train-vocab", help="train an in-domain vocabulary")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vocab-size", type=int, required=True)
    p.add_argument("--min-frequency", type=int, default=2)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_train_vocab)

    p = sub.add_parser("learn-ngrams", help="count n-grams and keep the top K")
    p.add_argument("--corpus", required=True)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--top-k", type=int, required=True)
    p.add_argument("--filter-punct", type=_parse_bool, default=False)
    p.add_argument("--output", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_learn_ngrams)

    p = sub.add_parser("extend", help="append an n-gram selection to a vocabulary")
    p.add_argument("--vocab", required=True)
    p.add_argument("--ngrams", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("tokenize", help="tokenize a file, one document per line")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--vocab")
    source.add_argument("--manifest")
    p.add_argument("--ngrams", default=None)
    p.add_argument("--input", required=True)
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--add-special-tokens", type=_parse_bool, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--json", action="store_true", help="emit JSON with token ids")
    p.set_defaults(func=_cmd_tokenize)

    p = sub.add_parser("transfer-embeddings", help="initialize embeddings for new tokens")
    p.add_argument("--old-vocab", required=True)
    p.add_argument("--old-embeddings", required=True)
    p.add_argument("--new-vocab", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_transfer_embeddings)

    p = sub.add_parser("analyze", help="sequence-compression statistics per pipeline")
    p.add_argument("--corpus", required=True)
    p.add_argument(
        "--pipeline",
        action="append",
        required=True,
        metavar="ID=VOCAB[:NGRAMS]",
        help="repeatable; the first pipeline is the baseline",
    )
    p.add_argument("--budgets", type=_parse_budgets, default=list(DEFAULT_BUDGETS))
    p.add_argument("--include-specials", type=_parse_bool, default=False)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (MwtError, ValueError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
