"""Tokenization pipeline: pre-tokenize, merge n-grams left to right, then
WordPiece-encode, plus decoding back to words.

The pipeline is cased and applies Unicode NFC normalization before
splitting. Underscore counts as punctuation during pre-tokenization, so
raw-text underscores can never collide with multi-word tokens, whose
constituent words are joined by "_".
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from mwt import kernels
from mwt.errors import ConfigError, SequenceError
from mwt.vocab import Vocabulary

# words longer than this are unknown by definition (standard WordPiece cap)
MAX_WORD_CHARS = 100


@dataclass(frozen=True)
class PreToken:
    """One pre-tokenization unit: a word or an isolated punctuation char.

    `byte_span` is the (start, end) byte range in the UTF-8 encoding of the
    NFC-normalized source text.
    """

    text: str
    is_punct: bool
    byte_span: tuple[int, int]


@dataclass
class TokenizedSequence:
    ids: list[int]
    tokens: list[str]
    special_added: bool


@dataclass(frozen=True)
class MwtConfig:
    """Merging and framing options for one tokenization pipeline.

    `ngram_set` holds the word tuples eligible for merging; each tuple
    length must lie in [2, max_n]. `max_length`, when set, truncates the
    final token sequence.
    """

    ngram_set: frozenset[tuple[str, ...]] = frozenset()
    max_n: int = 2
    add_special_tokens: bool = False
    max_length: int | None = None

    def __post_init__(self) -> None:
        if self.max_n < 2:
            raise ValueError(f"max_n must be >= 2, got {self.max_n}")
        object.__setattr__(self, "ngram_set", frozenset(self.ngram_set))
        for ngram in self.ngram_set:
            if not 2 <= len(ngram) <= self.max_n:
                raise ValueError(
                    f"n-gram {ngram!r} has length {len(ngram)}, "
                    f"allowed range is [2, {self.max_n}]"
                )
            if any(not w for w in ngram):
                raise ValueError(f"n-gram {ngram!r} contains an empty word")
        if self.max_length is not None:
            floor = 2 if self.add_special_tokens else 1
            if self.max_length < floor:
                raise ValueError(f"max_length must be >= {floor}")


def pretokenize(text: str) -> list[PreToken]:
    """Split text into words and isolated punctuation characters.

    Control characters are stripped, whitespace separates words, and case
    is preserved. Empty text yields an empty list.
    """
    normalized = unicodedata.normalize("NFC", text)
    return [
        PreToken(text=t, is_punct=p, byte_span=(s, e))
        for t, p, s, e in kernels.pretokenize_with_spans(normalized)
    ]


def merge_ngrams(pretokens: list[PreToken], cfg: MwtConfig) -> list[PreToken]:
    """Single greedy left-to-right merge pass.

    At each position the widest matching window (max_n down to 2) from
    cfg.ngram_set is fused into one pre-token whose text joins the words
    with the separator; merges never overlap.
    """
    return _merge(pretokens, cfg.ngram_set, cfg.max_n, "_")


def _merge(
    pretokens: list[PreToken],
    ngram_set: frozenset,
    max_n: int,
    sep: str,
) -> list[PreToken]:
    if not ngram_set or len(pretokens) < 2:
        return list(pretokens)
    texts = [p.text for p in pretokens]
    spans = kernels.merge_adjacent(texts, ngram_set, max_n, sep)
    if len(spans) == len(pretokens):
        return list(pretokens)
    out: list[PreToken] = []
    for text, start, width in spans:
        if width == 1:
            out.append(pretokens[start])
        else:
            out.append(
                PreToken(
                    text=text,
                    is_punct=kernels.is_punct_token(text),
                    byte_span=(
                        pretokens[start].byte_span[0],
                        pretokens[start + width - 1].byte_span[1],
                    ),
                )
            )
    return out


def wordpiece_encode(
    word: str, vocab: Vocabulary, max_chars: int = MAX_WORD_CHARS
) -> list[str]:
    """Greedy longest-match-first subword segmentation of one word.

    Continuation pieces carry the vocabulary's continuation prefix; a word
    with no full segmentation (or longer than max_chars) maps entirely to
    the unknown token.
    """
    if not word:
        raise ValueError("cannot encode an empty word")
    pieces = kernels.wordpiece_word(
        word, vocab.index, vocab.continuation_prefix, max_chars
    )
    if pieces is None:
        return [vocab.unk_token]
    return pieces


class MwtPipeline:
    """Immutable text -> token-sequence pipeline over one vocabulary.

    Construction validates that every n-gram's joined form exists in the
    vocabulary (so merged pre-tokens always encode to a single token) and
    that the framing tokens exist when requested. Instances are safe to
    share across threads; per-word encodings are memoized.
    """

    def __init__(self, vocab: Vocabulary, cfg: MwtConfig):
        sep = vocab.mwe_separator
        missing = []
        for ngram in sorted(cfg.ngram_set):
            for w in ngram:
                if sep in w:
                    raise ConfigError(
                        f"n-gram word {w!r} contains the separator {sep!r}"
                    )
            if sep.join(ngram) not in vocab:
                missing.append(sep.join(ngram))
        if missing:
            raise ConfigError(
                f"{len(missing)} n-gram(s) have no vocabulary entry, "
                f"e.g. {missing[:3]}; extend the vocabulary first"
            )
        if cfg.add_special_tokens:
            for tok in (vocab.cls_token, vocab.sep_token):
                if tok not in vocab:
                    raise ConfigError(f"special token {tok!r} not in vocabulary")
        self.vocab = vocab
        self.cfg = cfg
        self._cache: dict[str, tuple[str, ...]] = {}

    def _pieces(self, word: str) -> tuple[str, ...]:
        cached = self._cache.get(word)
        if cached is None:
            cached = tuple(wordpiece_encode(word, self.vocab))
            self._cache[word] = cached
        return cached

    def tokenize(self, text: str) -> TokenizedSequence:
        """Run the full pipeline on one document."""
        cfg = self.cfg
        merged = _merge(
            pretokenize(text), cfg.ngram_set, cfg.max_n, self.vocab.mwe_separator
        )
        tokens: list[str] = []
        for pre in merged:
            tokens.extend(self._pieces(pre.text))
        if cfg.add_special_tokens:
            tokens = [self.vocab.cls_token, *tokens, self.vocab.sep_token]
        if cfg.max_length is not None and len(tokens) > cfg.max_length:
            if cfg.add_special_tokens:
                tokens = tokens[: cfg.max_length - 1]
                tokens.append(self.vocab.sep_token)
            else:
                tokens = tokens[: cfg.max_length]
        index = self.vocab.index
        return TokenizedSequence(
            ids=[index[t] for t in tokens],
            tokens=tokens,
            special_added=cfg.add_special_tokens,
        )

    def count_tokens(self, text: str) -> int:
        """Token count before framing and truncation.

        Equals len(tokenize(text).ids) for a config without special tokens
        or max_length; used by the corpus analyzer.
        """
        normalized = unicodedata.normalize("NFC", text)
        raw = kernels.pretokenize_with_spans(normalized)
        words = [t[0] for t in raw]
        if self.cfg.ngram_set and len(words) >= 2:
            words = [
                m[0]
                for m in kernels.merge_adjacent(
                    words, self.cfg.ngram_set, self.cfg.max_n, self.vocab.mwe_separator
                )
            ]
        total = 0
        for w in words:
            total += len(self._pieces(w))
        return total


def tokenize(text: str, vocab: Vocabulary, cfg: MwtConfig) -> TokenizedSequence:
    """One-shot convenience wrapper around MwtPipeline."""
    return MwtPipeline(vocab, cfg).tokenize(text)


def decode_words(seq: TokenizedSequence, vocab: Vocabulary) -> list[str]:
    """Reassemble the word sequence of an untruncated tokenization.

    Continuation pieces glue onto their head word, multi-word tokens split
    back into their constituent words, and framing/padding specials are
    dropped. Unknown tokens decode to the unknown token string.
    """
    prefix = vocab.continuation_prefix
    dropped = {vocab.cls_token, vocab.sep_token, vocab.pad_token, vocab.mask_token}
    words: list[str] = []
    current: list[str] | None = None
    for tok in seq.tokens:
        if tok in dropped:
            continue
        if tok.startswith(prefix) and len(tok) > len(prefix):
            if current is None:
                raise SequenceError(
                    f"sequence starts with continuation piece {tok!r}"
                )
            current.append(tok[len(prefix) :])
            continue
        if current is not None:
            words.append("".join(current))
            current = None
        parts = vocab.split_multiword(tok)
        if parts is not None:
            words.extend(parts)
        else:
            current = [tok]
    if current is not None:
        words.append("".join(current))
    return words
