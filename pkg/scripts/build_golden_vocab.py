#!/usr/bin/env python3
"""One-time builder for tests/data/golden-cased-vocab.txt.

A compact cased WordPiece vocabulary whose greedy segmentation of the
golden patent sentence is identical to the published BERT-base-cased
tokenizer's (the reference token rows pin down every prefix the greedy
matcher may encounter, so equality is enforceable by construction; the
assertions at the bottom re-verify it).

The output is committed; rerun only to regenerate from scratch.
"""

from __future__ import annotations

import string
import unicodedata
from collections import Counter
from pathlib import Path

from mwt import kernels

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
OUT = DATA / "golden-cased-vocab.txt"

GOLDEN_TEXT = "an energizable member is operably coupled to the outer sleeve ."
GOLDEN_PIECES = {
    "an": ["an"],
    "energizable": ["en", "##er", "##gi", "##zable"],
    "member": ["member"],
    "is": ["is"],
    "operably": ["opera", "##bly"],
    "coupled": ["coupled"],
    "to": ["to"],
    "the": ["the"],
    "outer": ["outer"],
    "sleeve": ["sleeve"],
    ".": ["."],
}

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]

SUFFIX_PIECES = [
    "##s", "##ed", "##ing", "##ly", "##er", "##est", "##ion", "##tion",
    "##al", "##ment", "##ness", "##able", "##ible", "##ous", "##ive",
    "##ize", "##y", "##en", "##an", "##ic", "##ity", "##ism", "##ist",
    "##ward", "##wise", "##ful", "##less", "##let", "##man", "##ship",
]


def _banned_tokens() -> set[str]:
    """Tokens that would change the greedy segmentation of a golden word."""
    banned: set[str] = set()
    for word, pieces in GOLDEN_PIECES.items():
        pos = 0
        for piece in pieces:
            body = piece[2:] if piece.startswith("##") else piece
            rest = word[pos:]
            # any longer prefix of the remaining suffix would win over `piece`
            for ln in range(len(body) + 1, len(rest) + 1):
                cand = rest[:ln]
                banned.add(cand if pos == 0 else "##" + cand)
            pos += len(body)
    return banned


def _frequent_words(limit: int = 1500) -> list[str]:
    counts: Counter = Counter()
    with open(DATA / "general-corpus.txt", encoding="utf-8") as fh:
        for line in fh:
            for text, is_punct, _s, _e in kernels.pretokenize_with_spans(
                unicodedata.normalize("NFC", line.rstrip("\n"))
            ):
                if not is_punct and len(text) > 1:
                    counts[text] += 1
    return [w for w, _ in counts.most_common(limit)]


def build() -> None:
    banned = _banned_tokens()
    tokens: list[str] = []
    seen: set[str] = set()

    def add(tok: str) -> None:
        if tok and tok not in seen and tok not in banned:
            tokens.append(tok)
            seen.add(tok)

    for tok in SPECIALS:
        add(tok)
    for ch in "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~":
        add(ch)
    for ch in string.digits + string.ascii_lowercase + string.ascii_uppercase:
        add(ch)
        add("##" + ch)
    for word, pieces in GOLDEN_PIECES.items():
        add(word)
        for piece in pieces:
            add(piece)
    for piece in SUFFIX_PIECES:
        add(piece)
    kept = 0
    for word in _frequent_words():
        if kept >= 1000:
            break
        add(word)
        kept += 1

    OUT.write_text("\n".join(tokens) + "\n", encoding="utf-8")
    print(f"{OUT}: {len(tokens)} tokens")

    # verify the golden segmentation end to end
    index = {tok: i for i, tok in enumerate(tokens)}
    for word, expected in GOLDEN_PIECES.items():
        got = kernels.wordpiece_word(word, index, "##", 100)
        assert got == expected, f"{word}: {got} != {expected}"
    print("golden segmentation verified")


if __name__ == "__main__":
    build()
