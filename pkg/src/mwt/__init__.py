"""mwt: a multi-word tokenizer toolkit.

Extends a WordPiece-style tokenizer with frequent word n-grams so that
multi-word expressions encode as single tokens, shortening sequences.
Includes n-gram learning, vocabulary training and extension, embedding
initialization for new tokens, and a corpus compression analyzer.
"""

__version__ = "0.1.0"

from mwt.analyzer import CompressionReport, analyze, emit_report
from mwt.errors import (
    BindingError,
    ConfigError,
    FormatError,
    ManifestError,
    MwtError,
    SequenceError,
)
from mwt.fvt import EmbeddingMatrix, fvt_transfer, load_embeddings, save_embeddings
from mwt.manifest import PipelineManifest, build_manifest, load_manifest, save_manifest
from mwt.ngrams import (
    NgramSelection,
    NgramTable,
    count_ngrams,
    load_ngrams,
    save_ngrams,
    select_top_k,
)
from mwt.tokenizer import (
    MwtConfig,
    MwtPipeline,
    PreToken,
    TokenizedSequence,
    decode_words,
    merge_ngrams,
    pretokenize,
    tokenize,
    wordpiece_encode,
)
from mwt.trainer import TrainerConfig, train_vocab
from mwt.vocab import Vocabulary, VocabDiff, extend_vocab, load_vocab, save_vocab

__all__ = [
    "BindingError",
    "CompressionReport",
    "ConfigError",
    "EmbeddingMatrix",
    "FormatError",
    "ManifestError",
    "MwtConfig",
    "MwtError",
    "MwtPipeline",
    "NgramSelection",
    "NgramTable",
    "PipelineManifest",
    "PreToken",
    "SequenceError",
    "TokenizedSequence",
    "TrainerConfig",
    "VocabDiff",
    "Vocabulary",
    "analyze",
    "build_manifest",
    "count_ngrams",
    "decode_words",
    "emit_report",
    "extend_vocab",
    "fvt_transfer",
    "load_embeddings",
    "load_manifest",
    "load_ngrams",
    "load_vocab",
    "merge_ngrams",
    "pretokenize",
    "save_embeddings",
    "save_manifest",
    "save_ngrams",
    "save_vocab",
    "select_top_k",
    "tokenize",
    "train_vocab",
    "wordpiece_encode",
]
