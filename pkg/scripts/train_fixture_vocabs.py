#!/usr/bin/env python3
"""One-time builder for the bundled trained vocabularies.

Trains equal-size vocabularies on the two bundled corpora:

    tests/data/general-vocab.txt    in-domain for general-corpus.txt
    tests/data/legal-vocab.txt      in-domain for legal-corpus.txt

Training is deterministic, so regenerating from the same corpora yields
byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

from mwt.trainer import TrainerConfig, train_vocab
from mwt.vocab import save_vocab

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
VOCAB_SIZE = 8000


def _read(path: Path) -> list[bytes]:
    with open(path, "rb") as fh:
        return [line.rstrip(b"\n") for line in fh]


def build() -> None:
    cfg = TrainerConfig(vocab_size=VOCAB_SIZE)
    for corpus, out in (
        ("general-corpus.txt", "general-vocab.txt"),
        ("legal-corpus.txt", "legal-vocab.txt"),
    ):
        vocab = train_vocab(_read(DATA / corpus), cfg)
        save_vocab(vocab, str(DATA / out))
        print(f"{DATA / out}: {len(vocab)} tokens")


if __name__ == "__main__":
    build()
