"""Corpus-level sequence-compression and truncation statistics.

All pipelines see identical documents in a single streaming pass. Lengths
exclude framing tokens by default; pass include_specials=True to add the
two framing positions to every document. The first pipeline is the
baseline for the compression ratio.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import partial

import numpy as np

from mwt._parallel import iter_shards, map_shards
from mwt.tokenizer import MwtConfig, MwtPipeline
from mwt.vocab import Vocabulary

# the truncation-analysis halving grid used when the caller gives none
DEFAULT_BUDGETS = (128, 64, 32, 16)

CSV_COLUMNS = (
    "corpus_id",
    "tokenizer_id",
    "num_docs",
    "mean_len",
    "median_len",
    "p95_len",
    "compression_vs_baseline",
)


@dataclass
class CompressionReport:
    corpus_id: str
    tokenizer_id: str
    num_docs: int
    mean_len: float
    median_len: float
    p95_len: float
    compression_vs_baseline: float
    truncation_coverage: dict[int, float]
    token_retention: dict[int, float]

    def as_dict(self) -> dict:
        return {
            "corpus_id": self.corpus_id,
            "tokenizer_id": self.tokenizer_id,
            "num_docs": self.num_docs,
            "mean_len": self.mean_len,
            "median_len": self.median_len,
            "p95_len": self.p95_len,
            "compression_vs_baseline": self.compression_vs_baseline,
            "truncation_coverage": {str(k): v for k, v in self.truncation_coverage.items()},
            "token_retention": {str(k): v for k, v in self.token_retention.items()},
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "CompressionReport":
        return cls(
            corpus_id=payload["corpus_id"],
            tokenizer_id=payload["tokenizer_id"],
            num_docs=payload["num_docs"],
            mean_len=payload["mean_len"],
            median_len=payload["median_len"],
            p95_len=payload["p95_len"],
            compression_vs_baseline=payload["compression_vs_baseline"],
            truncation_coverage={int(k): v for k, v in payload["truncation_coverage"].items()},
            token_retention={int(k): v for k, v in payload["token_retention"].items()},
        )


def _measure_shard(
    shard: list[str], pipelines: list[MwtPipeline], extra: int
) -> list[list[int]]:
    lengths: list[list[int]] = [[] for _ in pipelines]
    for doc in shard:
        for idx, pipe in enumerate(pipelines):
            lengths[idx].append(pipe.count_tokens(doc) + extra)
    return lengths


def analyze(
    corpus: Iterable[str],
    pipelines: Sequence[tuple[str, Vocabulary, MwtConfig]],
    budgets: Sequence[int] = DEFAULT_BUDGETS,
    include_specials: bool = False,
    corpus_id: str = "corpus",
    threads: int = 1,
) -> list[CompressionReport]:
    """Tokenization-length statistics per pipeline over one corpus pass.

    Reports come back in pipeline order; the first pipeline defines the
    baseline mean for compression_vs_baseline. Results are independent of
    document order and thread count.
    """
    if not pipelines:
        raise ValueError("at least one pipeline is required")
    built = [MwtPipeline(vocab, cfg) for _, vocab, cfg in pipelines]
    extra = 2 if include_specials else 0

    lengths: list[list[int]] = [[] for _ in built]
    worker = partial(_measure_shard, pipelines=built, extra=extra)
    for shard_lengths in map_shards(worker, iter_shards(corpus), threads):
        for idx, chunk in enumerate(shard_lengths):
            lengths[idx].extend(chunk)
    if not lengths[0]:
        raise ValueError("corpus contains no documents")

    reports: list[CompressionReport] = []
    baseline_mean = 0.0
    for idx, (name, _, _) in enumerate(pipelines):
        arr = np.asarray(lengths[idx], dtype=np.int64)
        mean = float(arr.mean())
        if idx == 0:
            baseline_mean = mean
        total = int(arr.sum())
        coverage: dict[int, float] = {}
        retention: dict[int, float] = {}
        for budget in budgets:
            coverage[int(budget)] = float((arr <= budget).mean())
            retention[int(budget)] = (
                float(np.minimum(arr, budget).sum() / total) if total else 1.0
            )
        if baseline_mean == 0.0:
            ratio = 1.0 if mean == 0.0 else float("inf")
        else:
            ratio = mean / baseline_mean
        reports.append(
            CompressionReport(
                corpus_id=corpus_id,
                tokenizer_id=name,
                num_docs=int(arr.size),
                mean_len=mean,
                median_len=float(np.median(arr)),
                p95_len=float(np.percentile(arr, 95)),
                compression_vs_baseline=ratio,
                truncation_coverage=coverage,
                token_retention=retention,
            )
        )
    return reports


def emit_report(reports: Sequence[CompressionReport], format: str, path) -> None:
    """Write reports as JSON (full, round-trippable) or CSV (fixed columns).

    `path` may be a filesystem path or a writable text stream.
    """
    if not reports:
        raise ValueError("no reports to emit")
    if format not in ("json", "csv"):
        raise ValueError(f"unknown report format {format!r}")
    text = render_report(reports, format)
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def render_report(reports: Sequence[CompressionReport], format: str) -> str:
    if format == "json":
        return json.dumps([r.as_dict() for r in reports], indent=2) + "\n"
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(
            [
                r.corpus_id,
                r.tokenizer_id,
                r.num_docs,
                repr(r.mean_len),
                repr(r.median_len),
                repr(r.p95_len),
                repr(r.compression_vs_baseline),
            ]
        )
    return out.getvalue()


def load_reports_json(text: str) -> list[CompressionReport]:
    return [CompressionReport.from_dict(obj) for obj in json.loads(text)]
