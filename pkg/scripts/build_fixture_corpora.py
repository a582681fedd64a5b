#!/usr/bin/env python3
"""One-time builder for the bundled test corpora.

Harvests natural-language prose that ships with the local Python
environment (package READMEs, source docstrings) and legal prose
(license files) into two line-per-document corpora:

    tests/data/general-corpus.txt   technical/general English, >= 1 MB
    tests/data/legal-corpus.txt     license/legal English

The outputs are committed; this script exists for provenance and only
needs to run again to regenerate them from scratch.
"""

from __future__ import annotations

import ast
import hashlib
import re
import site
import sys
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"

GENERAL_TARGET_BYTES = 1_300_000
LEGAL_TARGET_BYTES = 450_000

_WORDISH = re.compile(r"[A-Za-z]{2,}")
_URL = re.compile(r"https?://\S+")


def _clean_paragraph(lines: list[str]) -> str | None:
    text = " ".join(" ".join(lines).split())
    text = _URL.sub("", text)
    # inline markup characters are noise, not prose
    text = text.replace("`", " ").replace("*", " ")
    text = " ".join(text.split())
    if len(text) < 80 or len(text) > 2500:
        return None
    words = _WORDISH.findall(text)
    if len(words) < 12:
        return None
    letters = sum(ch.isalpha() for ch in text)
    if letters / len(text) < 0.6:
        return None
    ascii_chars = sum(ord(ch) < 128 for ch in text)
    if ascii_chars / len(text) < 0.95:
        return None
    return text


def _paragraphs(text: str) -> list[str]:
    out: list[str] = []
    block: list[str] = []
    fenced = False
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("```"):
            fenced = not fenced
            stripped = ""
        if fenced:
            stripped = ""
        # drop markup-ish and code-ish lines entirely
        if line.startswith(("    ", "\t", ">>>", "...")):
            stripped = ""
        if stripped.startswith(("#", "=", "-", "*", "|", "+", ":", "..", "[![", "<")):
            stripped = ""
        if not stripped:
            if block:
                para = _clean_paragraph(block)
                if para:
                    out.append(para)
                block = []
            continue
        block.append(stripped)
    if block:
        para = _clean_paragraph(block)
        if para:
            out.append(para)
    return out


def _iter_metadata_bodies(packages_dir: Path):
    for meta in sorted(packages_dir.glob("*.dist-info/METADATA")):
        try:
            raw = meta.read_text(encoding="utf-8", errors="replace")
        except OSError:
            continue
        # body = everything after the header block
        _, _, body = raw.partition("\n\n")
        if body:
            yield meta.parent.name, body


def _iter_docstrings(packages_dir: Path, roots: list[str]):
    for root in roots:
        base = packages_dir / root
        if not base.exists():
            continue
        for py in sorted(base.rglob("*.py")):
            if "test" in py.name or "_test" in str(py.parent):
                continue
            try:
                tree = ast.parse(py.read_text(encoding="utf-8", errors="replace"))
            except SyntaxError:
                continue
            for node in ast.walk(tree):
                if isinstance(
                    node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)
                ):
                    doc = ast.get_docstring(node)
                    if doc:
                        yield str(py), doc


def _iter_license_texts(packages_dir: Path):
    patterns = ["*.dist-info/LICENSE*", "*.dist-info/COPYING*", "*.dist-info/licenses/*"]
    candidates: list[Path] = []
    for pat in patterns:
        candidates.extend(p for p in packages_dir.glob(pat) if p.is_file())
    shared = Path("/usr/share/common-licenses")
    if shared.exists():
        candidates.extend(p for p in sorted(shared.iterdir()) if p.is_file())
    seen: set[str] = set()
    for path in sorted(candidates):
        try:
            raw = path.read_text(encoding="utf-8", errors="replace")
        except OSError:
            continue
        digest = hashlib.sha256(raw.encode()).hexdigest()
        if digest in seen:
            continue
        seen.add(digest)
        yield str(path), raw


def build() -> None:
    packages_dir = Path(site.getsitepackages()[0])
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    general: list[str] = []
    general_seen: set[str] = set()
    size = 0

    def add_general(para: str) -> bool:
        nonlocal size
        digest = hashlib.sha256(para.encode()).hexdigest()
        if digest in general_seen:
            return size >= GENERAL_TARGET_BYTES
        general_seen.add(digest)
        general.append(para)
        size += len(para.encode()) + 1
        return size >= GENERAL_TARGET_BYTES

    for _name, body in _iter_metadata_bodies(packages_dir):
        for para in _paragraphs(body):
            if add_general(para):
                break

    doc_roots = [
        "numpy", "scipy", "pandas", "sklearn", "matplotlib", "sympy",
        "statsmodels", "networkx", "skimage", "joblib", "attr", "click",
    ]
    if size < GENERAL_TARGET_BYTES:
        for _src, doc in _iter_docstrings(packages_dir, doc_roots):
            for para in _paragraphs(doc):
                if add_general(para):
                    break
            if size >= GENERAL_TARGET_BYTES:
                break

    legal: list[str] = []
    legal_seen: set[str] = set()
    legal_size = 0
    for _src, raw in _iter_license_texts(packages_dir):
        for para in _paragraphs(raw):
            digest = hashlib.sha256(para.encode()).hexdigest()
            if digest in legal_seen:
                continue
            legal_seen.add(digest)
            legal.append(para)
            legal_size += len(para.encode()) + 1
        if legal_size >= LEGAL_TARGET_BYTES:
            break

    general_path = OUT_DIR / "general-corpus.txt"
    general_path.write_text("\n".join(general) + "\n", encoding="utf-8")
    legal_path = OUT_DIR / "legal-corpus.txt"
    legal_path.write_text("\n".join(legal) + "\n", encoding="utf-8")
    print(f"{general_path}: {len(general)} docs, {size} bytes")
    print(f"{legal_path}: {len(legal)} docs, {legal_size} bytes")
    if size < 1_048_576:
        print("warning: general corpus below 1 MiB", file=sys.stderr)


if __name__ == "__main__":
    build()
