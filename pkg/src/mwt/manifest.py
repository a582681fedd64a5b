"""Pipeline manifests: one file that names a complete tokenization setup.

The manifest records the vocab / n-gram / embedding paths with content
fingerprints; loading re-hashes each referenced file so silent drift is
caught early. Relative paths resolve against the manifest's directory.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass

from mwt import __version__
from mwt.errors import ManifestError
from mwt.vocab import fnv1a64


def _file_fingerprint(path: str) -> int:
    with open(path, "rb") as fh:
        return fnv1a64(fh.read())


def _timestamp() -> str:
    # honors SOURCE_DATE_EPOCH so builds can be made reproducible
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


@dataclass
class PipelineManifest:
    vocab_path: str
    ngrams_path: str | None
    embeddings_path: str | None
    max_n: int
    add_special_tokens: bool
    max_length: int | None
    created_at: str
    tool_version: str
    fingerprints: dict[str, int]


def build_manifest(
    vocab_path: str,
    ngrams_path: str | None = None,
    embeddings_path: str | None = None,
    max_n: int = 2,
    add_special_tokens: bool = False,
    max_length: int | None = None,
) -> PipelineManifest:
    fingerprints = {vocab_path: _file_fingerprint(vocab_path)}
    for p in (ngrams_path, embeddings_path):
        if p is not None:
            fingerprints[p] = _file_fingerprint(p)
    return PipelineManifest(
        vocab_path=vocab_path,
        ngrams_path=ngrams_path,
        embeddings_path=embeddings_path,
        max_n=max_n,
        add_special_tokens=add_special_tokens,
        max_length=max_length,
        created_at=_timestamp(),
        tool_version=__version__,
        fingerprints=fingerprints,
    )


def save_manifest(manifest: PipelineManifest, path: str) -> None:
    payload = {
        "vocab_path": manifest.vocab_path,
        "ngrams_path": manifest.ngrams_path,
        "embeddings_path": manifest.embeddings_path,
        "mwt": {
            "max_n": manifest.max_n,
            "add_special_tokens": manifest.add_special_tokens,
            "max_length": manifest.max_length,
        },
        "created_at": manifest.created_at,
        "tool_version": manifest.tool_version,
        "fingerprints": {k: format(v, "016x") for k, v in manifest.fingerprints.items()},
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_manifest(path: str) -> PipelineManifest:
    """Parse and verify a manifest; referenced files must exist and match
    their recorded fingerprints."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"{path}: cannot read manifest: {exc}") from exc
    try:
        mwt_cfg = payload["mwt"]
        manifest = PipelineManifest(
            vocab_path=payload["vocab_path"],
            ngrams_path=payload.get("ngrams_path"),
            embeddings_path=payload.get("embeddings_path"),
            max_n=mwt_cfg["max_n"],
            add_special_tokens=mwt_cfg["add_special_tokens"],
            max_length=mwt_cfg.get("max_length"),
            created_at=payload["created_at"],
            tool_version=payload["tool_version"],
            fingerprints={k: int(v, 16) for k, v in payload["fingerprints"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ManifestError(f"{path}: malformed manifest: {exc}") from exc

    base = os.path.dirname(os.path.abspath(path))
    for ref, expected in manifest.fingerprints.items():
        resolved = ref if os.path.isabs(ref) else os.path.join(base, ref)
        if not os.path.exists(resolved):
            raise ManifestError(f"{path}: referenced file missing: {ref}")
        actual = _file_fingerprint(resolved)
        if actual != expected:
            raise ManifestError(
                f"{path}: fingerprint mismatch for {ref} "
                f"(expected {expected:016x}, got {actual:016x})"
            )
    return manifest


def resolve_path(manifest_path: str, ref: str) -> str:
    if os.path.isabs(ref):
        return ref
    return os.path.join(os.path.dirname(os.path.abspath(manifest_path)), ref)
