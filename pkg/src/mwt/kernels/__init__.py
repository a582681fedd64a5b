"""Kernel backend selection.

Prefers the compiled extension (`mwt.kernels._speedups`) and falls back to
the pure-Python implementation when the extension is missing or when the
MWT_PURE_PYTHON environment variable is set to a non-empty value.
"""

from __future__ import annotations

import os

from mwt.kernels import _fallback

if os.environ.get("MWT_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from mwt.kernels import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

pretokenize_with_spans = _impl.pretokenize_with_spans
wordpiece_word = _impl.wordpiece_word
merge_adjacent = _impl.merge_adjacent
count_windows = _impl.count_windows
is_punct_token = _impl.is_punct_token


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name (for tests/benchmarks)."""
    backends: dict[str, object] = {"python": _fallback}
    try:
        from mwt.kernels import _speedups

        backends["cython"] = _speedups
    except ImportError:
        pass
    return backends
