# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; semantics mirror mwt.kernels._fallback exactly.

Any behavioral change must be made in both backends; the test suite
asserts output equality between them on shared inputs.
"""

from unicodedata import category as _category

cdef int _WORD = 0
cdef int _PUNCT = 1
cdef int _SPACE = 2
cdef int _STRIP = 3

cdef int _ASCII[128]

def _init_ascii_table():
    cdef int cp
    for cp in range(128):
        _ASCII[cp] = _WORD
    for cp in range(33):
        _ASCII[cp] = _STRIP
    _ASCII[127] = _STRIP
    for ch in "\t\n\r ":
        _ASCII[ord(ch)] = _SPACE
    for lo, hi in ((33, 47), (58, 64), (91, 96), (123, 126)):
        for cp in range(lo, hi + 1):
            _ASCII[cp] = _PUNCT

_init_ascii_table()


cdef inline int _class_of(Py_UCS4 ch):
    cdef int cp = <int> ch
    if cp < 128:
        return _ASCII[cp]
    if cp == 0xFFFD:
        return _STRIP
    cat = _category(chr(cp))
    if (<str> cat)[0] == "C":
        return _STRIP
    if cat == "Zs":
        return _SPACE
    if (<str> cat)[0] == "P":
        return _PUNCT
    return _WORD


def is_punct_token(str text):
    """True iff every character of `text` is punctuation."""
    cdef Py_UCS4 ch
    if len(text) == 0:
        return False
    for ch in text:
        if _class_of(ch) != _PUNCT:
            return False
    return True


def pretokenize_with_spans(str text):
    """Split `text` into (piece, is_punct, byte_start, byte_end) tuples."""
    cdef list out = []
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t pos = 0          # byte offset
    cdef Py_ssize_t start, nbytes
    cdef Py_ssize_t word_ci = -1     # char index where current word started
    cdef Py_ssize_t word_start = 0   # byte offset of word start
    cdef Py_ssize_t word_end = 0     # byte offset past last word char
    cdef bint contiguous = True      # no stripped chars inside current word
    cdef list word_parts = []
    cdef Py_UCS4 ch
    cdef int cp, cls

    for i in range(n):
        ch = text[i]
        cp = <int> ch
        if cp < 0x80:
            nbytes = 1
        elif cp < 0x800:
            nbytes = 2
        elif cp < 0x10000:
            nbytes = 3
        else:
            nbytes = 4
        start = pos
        pos += nbytes
        cls = _ASCII[cp] if cp < 128 else _class_of(ch)
        if cls == _STRIP:
            if word_ci >= 0:
                # word continues across the stripped char; bank the segment
                if word_ci < i:
                    if contiguous:
                        word_parts = []
                        contiguous = False
                    word_parts.append(text[word_ci:i])
                word_ci = i + 1
            continue
        if cls == _SPACE:
            if word_ci >= 0 or word_parts:
                out.append(_flush(text, word_parts, word_ci, i, contiguous,
                                  word_start, word_end))
                word_ci = -1
                word_parts = []
                contiguous = True
            continue
        if cls == _PUNCT:
            if word_ci >= 0 or word_parts:
                out.append(_flush(text, word_parts, word_ci, i, contiguous,
                                  word_start, word_end))
                word_ci = -1
                word_parts = []
                contiguous = True
            out.append((text[i : i + 1], True, start, pos))
            continue
        if word_ci < 0 and not word_parts:
            word_start = start
        if word_ci < 0:
            word_ci = i
        word_end = pos
    if word_ci >= 0 or word_parts:
        out.append(_flush(text, word_parts, word_ci, n, contiguous,
                          word_start, word_end))
    return out


cdef tuple _flush(str text, list parts, Py_ssize_t ci, Py_ssize_t end_ci,
                  bint contiguous, Py_ssize_t bstart, Py_ssize_t bend):
    cdef str word
    if contiguous:
        word = text[ci:end_ci]
    else:
        if ci >= 0 and ci < end_ci:
            parts.append(text[ci:end_ci])
        word = "".join(parts)
    return (word, False, bstart, bend)


def wordpiece_word(str word, dict index, str prefix, Py_ssize_t max_chars):
    """Greedy longest-match-first segmentation; None when unsegmentable."""
    cdef Py_ssize_t n = len(word)
    cdef Py_ssize_t start = 0, end
    cdef list pieces
    cdef str sub
    cdef object found
    if n == 0 or n > max_chars:
        return None
    pieces = []
    while start < n:
        end = n
        found = None
        while start < end:
            sub = word[start:end]
            if start > 0:
                sub = prefix + sub
            if sub in index:
                found = sub
                break
            end -= 1
        if found is None:
            return None
        pieces.append(found)
        start = end
    return pieces


def merge_adjacent(list texts, ngrams, Py_ssize_t max_n, str sep):
    """One greedy left-to-right merge pass; see the fallback for semantics."""
    cdef list out = []
    cdef Py_ssize_t n_tok = len(texts)
    cdef Py_ssize_t i = 0, width, limit
    cdef tuple window
    cdef object merged
    while i < n_tok:
        limit = n_tok - i
        width = max_n if max_n <= limit else limit
        merged = None
        while width >= 2:
            window = tuple(texts[i : i + width])
            if window in ngrams:
                merged = (sep.join(window), i, width)
                break
            width -= 1
        if merged is None:
            out.append((texts[i], i, 1))
            i += 1
        else:
            out.append(merged)
            i += (<tuple> merged)[2]
    return out


def count_windows(list words, punct_flags, Py_ssize_t max_n, dict counts):
    """Accumulate n-gram windows (n in [2, max_n]) of `words` into `counts`."""
    cdef Py_ssize_t m = len(words)
    cdef Py_ssize_t n, i, j
    cdef bint skip
    cdef tuple key
    cdef object prev
    cdef list flags = punct_flags if punct_flags is not None else None
    for n in range(2, max_n + 1):
        for i in range(m - n + 1):
            if flags is not None:
                skip = False
                for j in range(i, i + n):
                    if flags[j]:
                        skip = True
                        break
                if skip:
                    continue
            key = tuple(words[i : i + n])
            prev = counts.get(key)
            if prev is None:
                counts[key] = 1
            else:
                counts[key] = prev + 1
