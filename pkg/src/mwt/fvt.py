"""Fast vocabulary transfer: initialize embeddings for new tokens.

Tokens shared between the old and new vocabularies keep their rows
bitwise. A new token is split into its constituent words (multi-word
tokens on the separator, anything else is a single word), each word is
encoded with the old vocabulary's greedy segmenter, and the new row is
the arithmetic mean of all resulting piece rows, flattened across words.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from mwt.errors import BindingError, FormatError
from mwt.tokenizer import wordpiece_encode
from mwt.vocab import Vocabulary

MAGIC = b"MWTE"
VERSION = 1
_HEADER = struct.Struct("<4sIIIQ")  # magic, version, rows, dim, fingerprint


@dataclass
class EmbeddingMatrix:
    """A |V| x d float32 matrix bound to a vocabulary by fingerprint."""

    rows: np.ndarray
    vocab_fingerprint: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.rows, dtype=np.float32)
        if arr.ndim != 2:
            raise ValueError(f"embedding matrix must be 2-D, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("embedding matrix contains non-finite entries")
        self.rows = arr

    @property
    def dim(self) -> int:
        return int(self.rows.shape[1])

    def check_bound(self, vocab: Vocabulary) -> None:
        if self.rows.shape[0] != len(vocab):
            raise BindingError(
                f"matrix has {self.rows.shape[0]} rows for a vocabulary of "
                f"{len(vocab)} tokens"
            )
        if self.vocab_fingerprint != vocab.fingerprint():
            raise BindingError(
                "embedding matrix fingerprint does not match the vocabulary"
            )


def fvt_transfer(
    old_vocab: Vocabulary, old_emb: EmbeddingMatrix, new_vocab: Vocabulary
) -> EmbeddingMatrix:
    """Build the embedding matrix for new_vocab from old_vocab's matrix.

    Rows are pure functions of their source rows: means are accumulated in
    float64 over the sorted source-row ids, then stored as float32, so the
    result depends only on the multiset of sources. Transferring onto the
    same vocabulary returns the matrix unchanged.
    """
    if old_emb.dim == 0:
        raise ValueError("embedding dimension must be >= 1")
    old_emb.check_bound(old_vocab)
    if old_vocab.special_tokens != new_vocab.special_tokens:
        raise ValueError("old and new vocabularies declare different special tokens")

    old_rows = old_emb.rows
    old_index = old_vocab.index
    out = np.empty((len(new_vocab), old_emb.dim), dtype=np.float32)
    for i, token in enumerate(new_vocab.tokens):
        j = old_index.get(token)
        if j is not None:
            out[i] = old_rows[j]
            continue
        words = new_vocab.split_multiword(token) or [token]
        sources: list[int] = []
        for word in words:
            for piece in wordpiece_encode(word, old_vocab):
                sources.append(old_index[piece])
        sources.sort()
        out[i] = old_rows[sources].astype(np.float64).mean(axis=0).astype(np.float32)
    return EmbeddingMatrix(rows=out, vocab_fingerprint=new_vocab.fingerprint())


def save_embeddings(emb: EmbeddingMatrix, path: str) -> None:
    """Write the binary format: little-endian header then row-major float32."""
    n, d = emb.rows.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, n, d, emb.vocab_fingerprint))
        fh.write(np.ascontiguousarray(emb.rows, dtype="<f4").tobytes())


def load_embeddings(path: str) -> EmbeddingMatrix:
    """Read a file written by save_embeddings (bitwise round trip)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise FormatError(
            f"file too short for a header: expected at least {_HEADER.size} bytes, "
            f"got {len(raw)}",
            path=str(path),
        )
    magic, version, n, d, fingerprint = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}", path=str(path))
    if version != VERSION:
        raise FormatError(
            f"unsupported version {version}, expected {VERSION}", path=str(path)
        )
    expected = _HEADER.size + n * d * 4
    if len(raw) != expected:
        raise FormatError(
            f"expected {expected} bytes for a {n}x{d} matrix, got {len(raw)}",
            path=str(path),
        )
    rows = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(n, d).copy()
    return EmbeddingMatrix(rows=rows, vocab_fingerprint=fingerprint)
