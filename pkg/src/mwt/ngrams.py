"""N-gram frequency statistics over a corpus and top-K selection.

Counting operates on pre-tokens (the merge alphabet): every contiguous
window of n pre-tokens within a document is counted, for n from 2 up to
max_n. Windows never span document boundaries; overlapping windows all
count.
"""

from __future__ import annotations

import logging
import unicodedata
from collections.abc import Iterable
from dataclasses import dataclass
from functools import partial

from mwt import kernels
from mwt._parallel import iter_shards, map_shards
from mwt.errors import FormatError

logger = logging.getLogger(__name__)

# tie-break joiner for equal counts; matches the vocabulary token form
_JOIN = "_"


@dataclass
class NgramTable:
    """Raw window counts plus corpus totals.

    Carries the counting policy (max_n, filter_punct) so selections built
    from it record how they were learned. Tables over disjoint document
    shards can be summed with `+`; the result is identical to counting the
    concatenated corpus.
    """

    counts: dict[tuple[str, ...], int]
    total_docs: int
    total_pretokens: int
    max_n: int
    filter_punct: bool = False

    def __add__(self, other: "NgramTable") -> "NgramTable":
        if self.max_n != other.max_n or self.filter_punct != other.filter_punct:
            raise ValueError("cannot merge tables counted with different policies")
        merged = dict(self.counts)
        for key, cnt in other.counts.items():
            merged[key] = merged.get(key, 0) + cnt
        return NgramTable(
            counts=merged,
            total_docs=self.total_docs + other.total_docs,
            total_pretokens=self.total_pretokens + other.total_pretokens,
            max_n=self.max_n,
            filter_punct=self.filter_punct,
        )


@dataclass
class NgramSelection:
    """Top-K n-grams in descending count order.

    Ties are broken by ascending lexicographic order of the joined token
    string, so a selection is a pure function of its table.
    """

    ranked: list[tuple[tuple[str, ...], int]]
    k: int
    filter_punct: bool
    max_n: int

    def ngram_set(self) -> frozenset[tuple[str, ...]]:
        return frozenset(ng for ng, _ in self.ranked)


def _count_shard(
    shard: list, start_index: int, max_n: int, filter_punct: bool
) -> tuple[dict, int, int]:
    counts: dict[tuple[str, ...], int] = {}
    docs = 0
    pretokens = 0
    for offset, doc in enumerate(shard):
        if isinstance(doc, bytes):
            try:
                doc = doc.decode("utf-8")
            except UnicodeDecodeError as exc:
                logger.warning(
                    "document %d is not valid UTF-8, skipping: %s",
                    start_index + offset,
                    exc,
                )
                continue
        raw = kernels.pretokenize_with_spans(unicodedata.normalize("NFC", doc))
        words = [t[0] for t in raw]
        flags = [t[1] for t in raw] if filter_punct else None
        kernels.count_windows(words, flags, max_n, counts)
        docs += 1
        pretokens += len(words)
    return counts, docs, pretokens


def count_ngrams(
    corpus: Iterable[str | bytes],
    max_n: int = 2,
    filter_punct: bool = False,
    threads: int = 1,
) -> NgramTable:
    """Count every pre-token n-gram window (n in [2, max_n]) per document.

    Documents that fail UTF-8 decoding are logged with their index and
    skipped; counting continues. With filter_punct, windows containing a
    punctuation-only pre-token are not counted. Results are independent of
    thread count and document order.
    """
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    total = NgramTable(
        counts={}, total_docs=0, total_pretokens=0, max_n=max_n, filter_punct=filter_punct
    )
    if threads <= 1:
        # stream shards serially, tracking the global document index
        index = 0
        for shard in iter_shards(corpus):
            counts, docs, pretoks = _count_shard(shard, index, max_n, filter_punct)
            index += len(shard)
            total = total + NgramTable(counts, docs, pretoks, max_n, filter_punct)
        return total

    # enumerate shards with their start index so worker logs stay accurate
    indexed = []
    index = 0
    for shard in iter_shards(corpus):
        indexed.append((shard, index))
        index += len(shard)
    worker = partial(_count_indexed_shard, max_n=max_n, filter_punct=filter_punct)
    for counts, docs, pretoks in map_shards(worker, indexed, threads):
        total = total + NgramTable(counts, docs, pretoks, max_n, filter_punct)
    return total


def _count_indexed_shard(item, max_n: int, filter_punct: bool):
    shard, start_index = item
    return _count_shard(shard, start_index, max_n, filter_punct)


def select_top_k(table: NgramTable, k: int) -> NgramSelection:
    """The k highest-count n-grams, deterministically ordered.

    Returns fewer than k entries when the table is smaller. The selection
    for k1 <= k2 is always a prefix of the selection for k2.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted(table.counts.items(), key=lambda kv: (-kv[1], _JOIN.join(kv[0])))
    return NgramSelection(
        ranked=ranked[:k],
        k=k,
        filter_punct=table.filter_punct,
        max_n=table.max_n,
    )


def _format_bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_bool(text: str, path: str, line: int) -> bool:
    lowered = text.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise FormatError(f"expected true/false, got {text!r}", path=path, line=line)


def save_ngrams(selection: NgramSelection, path: str) -> None:
    """Write the selection file: a header line, then one tab-separated
    entry per n-gram (words..., count)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(
            f"#mwt-ngrams k={selection.k} max_n={selection.max_n} "
            f"filter_punct={_format_bool(selection.filter_punct)}\n"
        )
        for ngram, count in selection.ranked:
            fh.write("\t".join(ngram) + f"\t{count}\n")


def load_ngrams(path: str) -> NgramSelection:
    """Parse a selection file written by save_ngrams (lossless round trip)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("#mwt-ngrams "):
            raise FormatError("missing #mwt-ngrams header", path=str(path), line=1)
        fields: dict[str, str] = {}
        for part in header[len("#mwt-ngrams ") :].split():
            key, _, value = part.partition("=")
            fields[key] = value
        try:
            k = int(fields["k"])
            max_n = int(fields["max_n"])
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad header: {exc}", path=str(path), line=1) from exc
        if "filter_punct" not in fields:
            raise FormatError("bad header: missing filter_punct", path=str(path), line=1)
        filter_punct = _parse_bool(fields["filter_punct"], str(path), 1)

        ranked: list[tuple[tuple[str, ...], int]] = []
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise FormatError(
                    "expected at least two words and a count",
                    path=str(path),
                    line=lineno,
                )
            try:
                count = int(parts[-1])
            except ValueError:
                raise FormatError(
                    f"count column is not an integer: {parts[-1]!r}",
                    path=str(path),
                    line=lineno,
                ) from None
            ranked.append((tuple(parts[:-1]), count))
    return NgramSelection(ranked=ranked, k=k, filter_punct=filter_punct, max_n=max_n)
