"""The finite Laver tables: construction and row analytics.

For every n >= 0 there is a unique left self-distributive operation on
{0, ..., 2^n - 1} with ``p op 0 = p + 1`` cyclically.  The whole table
follows by double induction, columns increasing and rows decreasing:

    p op (q + 1) = (p op q) op (p op 0)

which only ever reads rows strictly below the one being filled (every
entry of a non-final row exceeds its row index).  Tables are built densely
as uint16 arrays; the configurable cap (default n = 12, a 32 MiB table)
makes the builder refuse instead of silently degrading.

Each row is periodic with a power-of-two period.  The periodic pattern of
row p of the table of order n, together with the *threshold* (the first
column where row p of the next table reaches 2^n), determines row p of the
next table by one of two extension rules; :func:`extend_row` implements
them and :func:`reconstruct_table` rebuilds the whole next table from a
table plus its threshold list.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

__all__ = [
    "DEFAULT_CAP",
    "TableCapError",
    "LaverTable",
    "RowPattern",
    "Threshold",
    "build_table",
    "op",
    "row_pattern",
    "threshold",
    "thresholds",
    "extend_row",
    "project_check",
    "reconstruct_table",
    "ld_check_exhaustive",
    "ld_spot_check",
]

DEFAULT_CAP = 12


class TableCapError(ValueError):
    """Requested table order exceeds the configured resource cap."""


@dataclass(frozen=True, eq=False)
class LaverTable:
    """The table of order n: entry [p, q] holds ``p op q``."""

    n: int
    entries: np.ndarray  # (2^n, 2^n) uint16, read-only

    @property
    def size(self) -> int:
        return 1 << self.n

    def __repr__(self) -> str:
        return f"LaverTable(n={self.n}, size={self.size})"


@dataclass(frozen=True)
class RowPattern:
    """Minimal periodic pattern of one row; the row is the pattern tiled."""

    p: int
    pattern: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.pattern)


@dataclass(frozen=True)
class Threshold:
    """First column where row p of the next table reaches 2^n."""

    n: int
    p: int
    t: int


@njit(cache=True)
def _build_entries(n):
    size = 1 << n
    t = np.zeros((size, size), dtype=np.uint16)
    last = size - 1
    # final row: p op 0 = 0, then the rule with (p op q) op 0 = successor
    t[last, 0] = 0
    for q in range(size - 1):
        prev = t[last, q]
        t[last, q + 1] = 0 if prev == last else prev + 1
    for p in range(size - 2, -1, -1):
        t[p, 0] = p + 1
        for q in range(size - 1):
            t[p, q + 1] = t[t[p, q], p + 1]
    return t


@functools.lru_cache(maxsize=4)
def _cached_table(n: int) -> LaverTable:
    entries = _build_entries(n)
    entries.setflags(write=False)
    return LaverTable(n=n, entries=entries)


def build_table(n: int, cap: int = DEFAULT_CAP) -> LaverTable:
    """Build (or fetch from cache) the unique table of order ``n``."""
    if n < 0:
        raise ValueError("table order must be >= 0")
    if n > cap:
        raise TableCapError(
            f"table of order {n} exceeds the cap {cap} "
            f"({2 ** (2 * n + 1)} bytes dense)"
        )
    return _cached_table(n)


def op(table: LaverTable, p: int, q: int) -> int:
    """Table lookup ``p op q`` with range checking."""
    size = table.size
    if not (0 <= p < size and 0 <= q < size):
        raise ValueError(f"operands ({p}, {q}) out of range for order {table.n}")
    return int(table.entries[p, q])


def row_pattern(table: LaverTable, p: int) -> RowPattern:
    """Minimal period (always a power of two) and pattern of row ``p``."""
    size = table.size
    if not 0 <= p < size:
        raise ValueError(f"row {p} out of range for order {table.n}")
    row = table.entries[p]
    for k in range(table.n + 1):
        period = 1 << k
        if np.array_equal(np.tile(row[:period], size // period), row):
            pattern = tuple(int(v) for v in row[:period])
            _validate_pattern(table.n, p, pattern)
            return RowPattern(p=p, pattern=pattern)
    raise AssertionError(f"row {p} of order {table.n} has no power-of-two period")


def _validate_pattern(n: int, p: int, pattern: tuple[int, ...]) -> None:
    if any(a >= b for a, b in zip(pattern, pattern[1:])):
        raise AssertionError(f"row {p} pattern not strictly increasing: {pattern}")
    if p < (1 << n) - 1:
        if pattern[0] != p + 1 or pattern[-1] != (1 << n) - 1:
            raise AssertionError(f"row {p} pattern has wrong endpoints: {pattern}")


def threshold(n: int, p: int, cap: int = DEFAULT_CAP) -> Threshold:
    """Smallest t with ``p op t >= 2^n`` in the table of order n + 1."""
    if n + 1 > cap:
        raise TableCapError(f"threshold at order {n} needs the order-{n + 1} table")
    if not 0 <= p < (1 << n):
        raise ValueError(f"row {p} out of range for order {n}")
    row = build_table(n + 1, cap).entries[p]
    hits = np.flatnonzero(row >= (1 << n))
    if hits.size == 0:
        raise AssertionError(f"row {p} of order {n + 1} never reaches {1 << n}")
    return Threshold(n=n, p=p, t=int(hits[0]))


def thresholds(n: int, cap: int = DEFAULT_CAP) -> list[Threshold]:
    """Thresholds of every row of the order-``n`` table."""
    big = build_table(n + 1, cap).entries if n + 1 <= cap else None
    if big is None:
        raise TableCapError(f"thresholds at order {n} need the order-{n + 1} table")
    out = []
    for p in range(1 << n):
        hits = np.flatnonzero(big[p] >= (1 << n))
        out.append(Threshold(n=n, p=p, t=int(hits[0])))
    return out


def extend_row(pattern: RowPattern, thr: Threshold, n: int) -> RowPattern:
    """Row of the order-(n+1) table from an order-n pattern and threshold.

    With pattern (r_0, ..., r_{m-1}) and threshold t:

    * t == m: the period doubles, the new pattern is the old one followed
      by the old one shifted up by 2^n;
    * t < m: the period stays, entries from position t on shift up by 2^n.
    """
    m = pattern.period
    if thr.p != pattern.p or thr.n != n:
        raise ValueError("pattern and threshold describe different rows")
    if not 0 <= thr.t <= m:
        raise ValueError(f"threshold {thr.t} out of range for period {m}")
    half = 1 << n
    old = pattern.pattern
    if thr.t == m:
        new = old + tuple(r + half for r in old)
    else:
        new = old[: thr.t] + tuple(r + half for r in old[thr.t:])
    return RowPattern(p=pattern.p, pattern=new)


def project_check(n: int, cap: int = DEFAULT_CAP) -> bool:
    """Whether the order-(n+1) table reduces mod 2^n to the order-n table.

    This always holds; a False return signals an implementation bug.
    """
    small = build_table(n, cap).entries
    big = build_table(n + 1, cap).entries
    return bool(np.array_equal(big % (1 << n), np.tile(small, (2, 2))))


def reconstruct_table(table: LaverTable, thrs: Sequence[Threshold], cap: int = DEFAULT_CAP) -> LaverTable:
    """Rebuild the order-(n+1) table from an order-n table plus thresholds.

    Rows below 2^n come from :func:`extend_row`.  Rows 2^n + p with
    p < 2^n - 1 are forced: projection pins each value mod 2^n and the
    every-entry-exceeds-the-row-index rule picks the lift.  The final row
    restarts the cyclic successor, which makes it the identity map.
    """
    n = table.n
    if n + 1 > cap:
        raise TableCapError(f"reconstruction of order {n + 1} exceeds the cap {cap}")
    if len(thrs) != table.size:
        raise ValueError("need one threshold per row")
    size = table.size
    big = np.zeros((2 * size, 2 * size), dtype=np.uint16)
    for p in range(size):
        new = extend_row(row_pattern(table, p), thrs[p], n)
        big[p] = np.tile(np.asarray(new.pattern, dtype=np.uint16), 2 * size // new.period)
    for p in range(size - 1):
        lifted = row_pattern(table, p)
        row = np.tile(np.asarray(lifted.pattern, dtype=np.uint16) + size, 2 * size // lifted.period)
        big[size + p] = row
    big[2 * size - 1] = np.arange(2 * size, dtype=np.uint16)
    big.setflags(write=False)
    return LaverTable(n=n + 1, entries=big)


def ld_check_exhaustive(table: LaverTable) -> bool:
    """Verify ``p op (q op r) == (p op q) op (p op r)`` on all triples."""
    t = table.entries.astype(np.int64)
    size = table.size
    p = np.arange(size)[:, None, None]
    q = np.arange(size)[None, :, None]
    r = np.arange(size)[None, None, :]
    lhs = t[p, t[q, r]]
    rhs = t[t[p, q], t[p, r]]
    return bool(np.array_equal(lhs, rhs))


def ld_spot_check(table: LaverTable, trials: int, seed: int = 0) -> bool:
    """Spot-check the law on ``trials`` uniformly random triples."""
    rng = np.random.default_rng(seed)
    t = table.entries.astype(np.int64)
    p, q, r = rng.integers(0, table.size, size=(3, trials))
    lhs = t[p, t[q, r]]
    rhs = t[t[p, q], t[p, r]]
    return bool(np.array_equal(lhs, rhs))
