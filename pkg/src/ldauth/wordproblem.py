"""Decision procedure for the braid word problem, via handle reduction.

Words are handled here as arrays of nonzero signed integers: ``k`` stands
for the Artin generator with subscript ``|k|``, negative for its inverse.
The relations are the usual ones on the infinite generator family:
generators commute when their subscripts differ by at least 2, and satisfy
the length-3 braid relation when the subscripts are adjacent.

A *handle* is a subword ``g^e ... g^-e`` (same generator, opposite signs at
the ends) whose interior only contains generators with strictly larger
subscripts.  Reducing the handle removes the two end letters and conjugates
the interior: every interior letter with subscript one above the handle's
gets rewritten as a three-letter block, everything else commutes through
unchanged.  Repeatedly reducing the leftmost-closing handle (which is
always innermost, hence permitted) terminates, and the final word is empty
exactly when the input represents the identity braid.  That gives a sound
and complete equality test: ``u == v`` iff ``u * v^-1`` reduces to the
empty word.

The reduction loop is the hot path of every verifier check on braid
platforms, so it is JIT-compiled with numba over int64 arrays.  A hard cap
on the intermediate word length guards against pathological blowup; hitting
the cap raises :class:`ReductionLimitError`, it never returns a wrong
answer.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numba import njit

DEFAULT_MAX_WORD_LEN = 1_000_000


class ReductionLimitError(RuntimeError):
    """Intermediate word length exceeded the configured cap."""


@njit(cache=True)
def _free_reduce(w):
    """Remove adjacent inverse pairs (cascading) with a stack scan."""
    out = np.empty(w.shape[0], dtype=np.int64)
    top = 0
    for k in range(w.shape[0]):
        a = w[k]
        if top > 0 and out[top - 1] == -a:
            top -= 1
        else:
            out[top] = a
            top += 1
    return out[:top].copy()


@njit(cache=True)
def _find_handle(w, recent):
    """Return (open, close) of the leftmost-closing handle, or (-1, -1).

    ``recent`` is scratch space holding, per subscript, the position of its
    latest occurrence.  For a letter with subscript i at position j, the
    latest earlier position carrying a subscript <= i is a handle opener
    iff it holds the exact inverse letter.  Scanning closings left to right
    yields a handle with handle-free interior.
    """
    recent[:] = -1
    for j in range(w.shape[0]):
        i = abs(w[j])
        p = -1
        for t in range(1, i + 1):
            if recent[t] > p:
                p = recent[t]
        if p >= 0 and w[p] == -w[j]:
            return p, j
        recent[i] = j
    return -1, -1


@njit(cache=True)
def _reduce_handle(w, p, q):
    """Rewrite the handle w[p..q]; the result is freely unreduced."""
    i = abs(w[p])
    e = 1 if w[p] > 0 else -1
    grow = 0
    for k in range(p + 1, q):
        if abs(w[k]) == i + 1:
            grow += 2
    out = np.empty(w.shape[0] - 2 + grow, dtype=np.int64)
    out[:p] = w[:p]
    m = p
    for k in range(p + 1, q):
        a = w[k]
        if abs(a) == i + 1:
            d = 1 if a > 0 else -1
            out[m] = -e * (i + 1)
            out[m + 1] = d * i
            out[m + 2] = e * (i + 1)
            m += 3
        else:
            out[m] = a
            m += 1
    out[m:] = w[q + 1:]
    return out


@njit(cache=True)
def _reduce_all(w, max_len):
    """Fully handle-reduce; returns (ok, word), ok = 0 when the cap hit."""
    w = _free_reduce(w)
    max_index = 1
    for k in range(w.shape[0]):
        a = abs(w[k])
        if a > max_index:
            max_index = a
    recent = np.empty(max_index + 1, dtype=np.int64)
    while True:
        p, q = _find_handle(w, recent)
        if p < 0:
            return 1, w
        w = _free_reduce(_reduce_handle(w, p, q))
        if w.shape[0] > max_len:
            return 0, w


def _as_array(letters: Iterable[int]) -> np.ndarray:
    arr = np.asarray(list(letters), dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("a braid word is a flat sequence of signed integers")
    return arr


def free_reduce_ints(letters: Iterable[int]) -> list[int]:
    """Freely reduce a signed-integer word (no braid relations applied)."""
    arr = _as_array(letters)
    if arr.size == 0:
        return []
    return [int(a) for a in _free_reduce(arr)]


def reduce_ints(letters: Iterable[int], max_len: int = DEFAULT_MAX_WORD_LEN) -> list[int]:
    """Handle-reduce a signed-integer word to a handle-free equivalent."""
    arr = _as_array(letters)
    if arr.size > max_len:
        raise ReductionLimitError(
            f"input word of length {arr.size} exceeds the cap {max_len}"
        )
    if arr.size == 0:
        return []
    ok, out = _reduce_all(arr, max_len)
    if not ok:
        raise ReductionLimitError(
            f"intermediate word grew past the cap {max_len}"
        )
    return [int(a) for a in out]


def is_trivial_ints(letters: Sequence[int], max_len: int = DEFAULT_MAX_WORD_LEN) -> bool:
    """True iff the word represents the identity braid."""
    return not reduce_ints(letters, max_len)


def permutation_of_ints(letters: Iterable[int], strands: int) -> tuple[int, ...]:
    """Image of the word in the symmetric group on ``strands`` strands.

    Entry i (1-based) of the returned tuple is the final position of the
    strand that starts at position i.  Both a generator and its inverse act
    as the transposition of the two adjacent positions they cross.
    """
    at = list(range(strands + 1))  # at[p] = strand currently at position p
    for a in letters:
        i = abs(a)
        if i >= strands:
            raise ValueError(f"letter {a} needs more than {strands} strands")
        at[i], at[i + 1] = at[i + 1], at[i]
    out = [0] * strands
    for p in range(1, strands + 1):
        out[at[p] - 1] = p
    return tuple(out)
