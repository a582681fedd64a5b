"""Vocabulary model, BERT-style vocab file I/O, and multi-word extension.

A vocabulary is an ordered list of token strings whose list index is the
token id. Multi-word tokens are stored inline as the constituent words
joined by `mwe_separator`; they are identified purely syntactically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from mwt.errors import FormatError

if TYPE_CHECKING:
    from mwt.ngrams import NgramSelection

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash, used to fingerprint files and vocabularies."""
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _U64
    return h


@dataclass(frozen=True)
class Vocabulary:
    """Ordered token list with id = list index, plus tokenization metadata.

    Immutable after construction; extension returns a new value.
    """

    tokens: tuple[str, ...]
    continuation_prefix: str = "##"
    unk_token: str = "[UNK]"
    cls_token: str = "[CLS]"
    sep_token: str = "[SEP]"
    pad_token: str = "[PAD]"
    mask_token: str = "[MASK]"
    mwe_separator: str = "_"
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: dict[str, int] = {}
        for i, tok in enumerate(self.tokens):
            if tok in index:
                raise ValueError(f"duplicate token {tok!r} (ids {index[tok]} and {i})")
            index[tok] = i
        if self.unk_token not in index:
            raise ValueError(f"vocabulary lacks the unknown token {self.unk_token!r}")
        if len(self.mwe_separator) != 1:
            raise ValueError("mwe_separator must be a single character")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def id_of(self, token: str) -> int:
        return self.index[token]

    @property
    def special_tokens(self) -> tuple[str, str, str, str, str]:
        return (
            self.unk_token,
            self.cls_token,
            self.sep_token,
            self.pad_token,
            self.mask_token,
        )

    def split_multiword(self, token: str) -> list[str] | None:
        """Constituent words of a multi-word token, else None.

        A token is multi-word iff it lacks the continuation prefix and
        splitting on the separator yields at least two non-empty parts.
        """
        if token.startswith(self.continuation_prefix):
            return None
        if self.mwe_separator not in token:
            return None
        parts = token.split(self.mwe_separator)
        if len(parts) < 2 or any(not p for p in parts):
            return None
        return parts

    def to_bytes(self) -> bytes:
        """Canonical vocab-file serialization: one token per line, LF endings."""
        return "\n".join(self.tokens).encode("utf-8") + b"\n"

    def fingerprint(self) -> int:
        return fnv1a64(self.to_bytes())


@dataclass
class VocabDiff:
    """Record of one extension: which multi-word tokens were appended.

    `added` tokens occupy ids [base_size, base_size + len(added)); n-grams
    whose joined form already existed are listed in `skipped`.
    """

    base_size: int
    added: list[str]
    skipped: list[str]

    def as_dict(self) -> dict:
        return {
            "base_size": self.base_size,
            "added": list(self.added),
            "skipped": list(self.skipped),
        }


def load_vocab(path: str, **meta: str) -> Vocabulary:
    """Read a one-token-per-line vocab file; line index = token id.

    Keyword arguments override the Vocabulary metadata defaults (e.g.
    continuation_prefix). A single trailing newline is tolerated.
    """
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read vocab file: {exc}", path=str(path)) from exc
    try:
        content = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"not valid UTF-8: {exc}", path=str(path)) from exc

    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    seen: dict[str, int] = {}
    for lineno, token in enumerate(lines, start=1):
        if token == "":
            raise FormatError("empty token line", path=str(path), line=lineno)
        if token in seen:
            raise FormatError(
                f"duplicate token {token!r} (first seen at line {seen[token]})",
                path=str(path),
                line=lineno,
            )
        seen[token] = lineno

    try:
        return Vocabulary(tokens=tuple(lines), **meta)
    except ValueError as exc:
        raise FormatError(str(exc), path=str(path)) from exc


def save_vocab(vocab: Vocabulary, path: str) -> None:
    """Write the canonical vocab-file bytes; load_vocab(save_vocab(v)) == v."""
    with open(path, "wb") as fh:
        fh.write(vocab.to_bytes())


def extend_vocab(
    vocab: Vocabulary, selection: "NgramSelection"
) -> tuple[Vocabulary, VocabDiff]:
    """Append the selection's n-grams as single tokens, in rank order.

    Each n-gram (w1, ..., wn) becomes w1<sep>...<sep>wn. Existing ids are
    unchanged; joined forms already present are skipped, not re-added.
    Words containing the separator are rejected outright since they would
    make decomposition ambiguous.
    """
    if not selection.ranked:
        raise ValueError("cannot extend with an empty n-gram selection")
    sep = vocab.mwe_separator
    added: list[str] = []
    skipped: list[str] = []
    new_tokens = list(vocab.tokens)
    present = set(vocab.index)
    for ngram, _count in selection.ranked:
        if len(ngram) < 2:
            raise ValueError(f"n-gram {ngram!r} has fewer than 2 words")
        for word in ngram:
            if not word:
                raise ValueError(f"n-gram {ngram!r} contains an empty word")
            if sep in word:
                raise ValueError(
                    f"n-gram word {word!r} contains the separator {sep!r}"
                )
        joined = sep.join(ngram)
        if joined in present:
            skipped.append(joined)
            continue
        new_tokens.append(joined)
        present.add(joined)
        added.append(joined)
    extended = Vocabulary(
        tokens=tuple(new_tokens),
        continuation_prefix=vocab.continuation_prefix,
        unk_token=vocab.unk_token,
        cls_token=vocab.cls_token,
        sep_token=vocab.sep_token,
        pad_token=vocab.pad_token,
        mask_token=vocab.mask_token,
        mwe_separator=vocab.mwe_separator,
    )
    return extended, VocabDiff(base_size=len(vocab), added=added, skipped=skipped)
