"""In-domain WordPiece vocabulary training.

Iterative pair merging over within-word symbol sequences, scored by the
WordPiece likelihood criterion score(a, b) = freq(ab) / (freq(a) * freq(b)),
so trained vocabularies are drop-in compatible with the greedy encoder.
Training is deterministic: word aggregation is order-invariant and score
ties are broken by ascending lexicographic order of the merged symbol.
"""

from __future__ import annotations

import logging
import unicodedata
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

from mwt import kernels
from mwt.vocab import Vocabulary

logger = logging.getLogger(__name__)

DEFAULT_SPECIALS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")


@dataclass(frozen=True)
class TrainerConfig:
    vocab_size: int
    min_frequency: int = 2
    continuation_prefix: str = "##"
    specials: tuple[str, ...] = DEFAULT_SPECIALS
    alphabet_limit: int = 1000

    def __post_init__(self) -> None:
        if self.vocab_size <= len(self.specials) + 1:
            raise ValueError(
                f"vocab_size must exceed {len(self.specials) + 1} "
                "(specials plus at least one alphabet entry)"
            )
        if self.min_frequency < 1:
            raise ValueError("min_frequency must be >= 1")
        if self.alphabet_limit < 1:
            raise ValueError("alphabet_limit must be >= 1")


def _aggregate_words(corpus: Iterable[str | bytes]) -> Counter:
    freqs: Counter = Counter()
    for idx, doc in enumerate(corpus):
        if isinstance(doc, bytes):
            try:
                doc = doc.decode("utf-8")
            except UnicodeDecodeError as exc:
                logger.warning("document %d is not valid UTF-8, skipping: %s", idx, exc)
                continue
        raw = kernels.pretokenize_with_spans(unicodedata.normalize("NFC", doc))
        for t in raw:
            freqs[t[0]] += 1
    return freqs


def _replace_pair(syms: list[str], a: str, b: str, merged: str) -> list[str]:
    out: list[str] = []
    i = 0
    n = len(syms)
    while i < n:
        if i < n - 1 and syms[i] == a and syms[i + 1] == b:
            out.append(merged)
            i += 2
        else:
            out.append(syms[i])
            i += 1
    return out


def _has_pair(syms: list[str], a: str, b: str) -> bool:
    for i in range(len(syms) - 1):
        if syms[i] == a and syms[i + 1] == b:
            return True
    return False


def train_vocab(corpus: Iterable[str | bytes], cfg: TrainerConfig) -> Vocabulary:
    """Learn a WordPiece vocabulary of cfg.vocab_size tokens.

    Layout: specials first, then the single-character alphabet (each char in
    both word-initial and continuation form), then learned pieces in merge
    order. Merging stops at vocab_size or when no pair reaches
    min_frequency, whichever comes first. Words containing characters
    beyond the alphabet limit are excluded from the merge statistics.
    """
    prefix = cfg.continuation_prefix
    word_freqs = _aggregate_words(corpus)
    if not word_freqs:
        raise ValueError("corpus contains no words")

    char_counts: Counter = Counter()
    for word, f in word_freqs.items():
        for ch in word:
            char_counts[ch] += f
    keep = sorted(char_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    alphabet = sorted(ch for ch, _ in keep[: cfg.alphabet_limit])
    alpha_set = set(alphabet)

    tokens: list[str] = list(cfg.specials)
    seen = set(tokens)
    for ch in alphabet:
        for tok in (ch, prefix + ch):
            if tok not in seen:
                tokens.append(tok)
                seen.add(tok)
    if cfg.vocab_size < len(tokens):
        raise ValueError(
            f"vocab_size {cfg.vocab_size} is below the minimum feasible size "
            f"{len(tokens)} (specials plus alphabet)"
        )

    # unique-word symbol sequences, in deterministic order
    words: list[tuple[list[str], int]] = []
    for word, f in sorted(word_freqs.items()):
        if any(ch not in alpha_set for ch in word):
            continue
        syms = [word[0]] + [prefix + ch for ch in word[1:]]
        words.append((syms, f))

    pair_counts: dict[tuple[str, str], int] = {}
    sym_freqs: dict[str, int] = {}
    pair_words: dict[tuple[str, str], set[int]] = {}
    for wi, (syms, f) in enumerate(words):
        for s in syms:
            sym_freqs[s] = sym_freqs.get(s, 0) + f
        for i in range(len(syms) - 1):
            p = (syms[i], syms[i + 1])
            pair_counts[p] = pair_counts.get(p, 0) + f
            pair_words.setdefault(p, set()).add(wi)

    plen = len(prefix)
    while len(tokens) < cfg.vocab_size:
        best_pair = None
        best_score = 0.0
        best_merged = ""
        for pair, cnt in pair_counts.items():
            if cnt < cfg.min_frequency:
                continue
            score = cnt / (sym_freqs[pair[0]] * sym_freqs[pair[1]])
            b = pair[1]
            merged = pair[0] + (b[plen:] if b.startswith(prefix) else b)
            if (
                best_pair is None
                or score > best_score
                or (score == best_score and merged < best_merged)
            ):
                best_pair, best_score, best_merged = pair, score, merged
        if best_pair is None:
            break

        if best_merged not in seen:
            tokens.append(best_merged)
            seen.add(best_merged)
        a, b = best_pair
        for wi in sorted(pair_words.pop(best_pair, ())):
            syms, f = words[wi]
            if not _has_pair(syms, a, b):
                continue
            for s in syms:
                sym_freqs[s] -= f
            for i in range(len(syms) - 1):
                p = (syms[i], syms[i + 1])
                left = pair_counts[p] - f
                if left:
                    pair_counts[p] = left
                else:
                    del pair_counts[p]
            new_syms = _replace_pair(syms, a, b, best_merged)
            words[wi] = (new_syms, f)
            for s in new_syms:
                sym_freqs[s] = sym_freqs.get(s, 0) + f
            for i in range(len(new_syms) - 1):
                p = (new_syms[i], new_syms[i + 1])
                pair_counts[p] = pair_counts.get(p, 0) + f
                pair_words.setdefault(p, set()).add(wi)

    return Vocabulary(tokens=tuple(tokens), continuation_prefix=prefix)
