"""Algebraic platforms: one binary operation, equality, sampling, encoding.

A platform is anything the authentication protocol can run on: it owns an
element domain, the operation ``op``, a semantic equality ``eq``, a way to
sample elements, and a canonical text encoding for key files and the wire.
Platforms do not have to satisfy any law a priori; each one carries the
set of laws it is known (proved or exhaustively checked) to satisfy, and
:func:`ld_law_check` / :func:`cd_law_check` probe the two laws that make
the protocol correct:

* LD, left self-distributivity:   r (s p) = (r s) (r p)
* CD, central duplication:        r (s p) = (s r) (r p)

Shipped platforms: braid words under shifted conjugacy or ordinary
conjugacy, the finite Laver tables, the integers under successor-of-right,
single-map magmas ``x op y = f(y)``, finite magmas from explicit tables,
and the generalized twisted conjugacy ``x * f(y) * a * f(x)^-1`` for a
shift power f and a fixed braid a (law status unknown until checked).

Also here: brute-force baselines for the search problems the protocol's
security leans on (recovering a secret from one input/output pair of its
left translation), and exhaustive enumeration of small CD magmas.
"""

from __future__ import annotations

import abc
import itertools
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Sequence

from . import braids, laver
from .braids import BraidWord

__all__ = [
    "LdPlatform",
    "FiniteMagma",
    "SearchResult",
    "LawReport",
    "platform_shifted_braid",
    "platform_conj_braid",
    "platform_laver",
    "platform_trivial",
    "platform_int_successor",
    "platform_f_conjugacy",
    "platform_magma",
    "parse_platform",
    "ld_law_check",
    "cd_law_check",
    "search_cd_magmas",
    "scsp_search",
    "f_map",
    "f_preimage_search",
    "enumerate_braid_words",
]

LD = "LD"
CD = "CD"


class LdPlatform(abc.ABC):
    """Element domain + binary operation + equality + sampling + encoding."""

    name: str
    laws: frozenset[str]

    @abc.abstractmethod
    def op(self, a: Any, b: Any) -> Any:
        """The platform's binary operation."""

    @abc.abstractmethod
    def eq(self, a: Any, b: Any) -> bool:
        """Semantic equality of elements."""

    @abc.abstractmethod
    def sample(self, rng: random.Random, size_hint: int | None = None) -> Any:
        """Draw an element; deterministic given the rng state."""

    @abc.abstractmethod
    def encode(self, a: Any) -> str:
        """Canonical text form of an element."""

    @abc.abstractmethod
    def decode(self, text: str) -> Any:
        """Inverse of :meth:`encode`; raises ValueError on bad input."""

    def elements(self) -> Sequence[Any] | None:
        """Every element for finite platforms, None when infinite."""
        return None

    def __repr__(self) -> str:
        return f"<platform {self.name}>"


def _check_int_text(text: str) -> int:
    body = text.strip()
    if not (body.isdigit() or (body.startswith("-") and body[1:].isdigit())):
        raise ValueError(f"not a decimal integer: {text!r}")
    return int(body)


class _BraidPlatformBase(LdPlatform):
    """Shared braid machinery: sampling, text encoding, word equality."""

    def __init__(self, max_index: int = 6, length: int = 16,
                 max_len: int = braids.DEFAULT_MAX_WORD_LEN) -> None:
        self.max_index = max_index
        self.length = length
        self.max_len = max_len

    def eq(self, a: BraidWord, b: BraidWord) -> bool:
        return braids.words_equal(a, b, max_len=self.max_len)

    def sample(self, rng: random.Random, size_hint: int | None = None) -> BraidWord:
        return braids.random_word(self.max_index, size_hint or self.length, rng)

    def encode(self, a: BraidWord) -> str:
        return braids.format_word(a)

    def decode(self, text: str) -> BraidWord:
        return braids.parse_word(text)


class ShiftedBraidPlatform(_BraidPlatformBase):
    name = "shifted-braid"
    laws = frozenset({LD})

    def op(self, a: BraidWord, b: BraidWord) -> BraidWord:
        return braids.shifted_conj(a, b)


class ConjBraidPlatform(_BraidPlatformBase):
    name = "conj-braid"
    laws = frozenset({LD})

    def op(self, a: BraidWord, b: BraidWord) -> BraidWord:
        return braids.conj(a, b)


class FConjugacyPlatform(_BraidPlatformBase):
    """Twisted conjugacy ``x * f(y) * a * f(x)^-1`` with f a shift power.

    Left self-distributivity is not guaranteed for an arbitrary (f, a);
    the platform starts with no declared laws and callers are expected to
    run :func:`ld_law_check` before trusting it.
    """

    def __init__(self, shift_power: int, a: BraidWord, **kwargs: Any) -> None:
        super().__init__(**kwargs)
        if shift_power < 1:
            raise ValueError("shift power must be >= 1")
        self.shift_power = shift_power
        self.a = a
        self.name = f"f-conj(sh^{shift_power}, a={braids.format_word(a)})"
        self.laws = frozenset()

    def _f(self, w: BraidWord) -> BraidWord:
        for _ in range(self.shift_power):
            w = braids.shift(w)
        return w

    def op(self, x: BraidWord, y: BraidWord) -> BraidWord:
        return braids.concat(x, self._f(y), self.a, braids.invert(self._f(x)))


class LaverPlatform(LdPlatform):
    laws = frozenset({LD})

    def __init__(self, n: int, cap: int = laver.DEFAULT_CAP) -> None:
        self.n = n
        self.table = laver.build_table(n, cap)
        self.name = f"laver:{n}"

    def op(self, a: int, b: int) -> int:
        return laver.op(self.table, a, b)

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def sample(self, rng: random.Random, size_hint: int | None = None) -> int:
        return rng.randrange(self.table.size)

    def encode(self, a: int) -> str:
        if not 0 <= a < self.table.size:
            raise ValueError(f"{a} out of range for {self.name}")
        return str(a)

    def decode(self, text: str) -> int:
        a = _check_int_text(text)
        if not 0 <= a < self.table.size:
            raise ValueError(f"{a} out of range for {self.name}")
        return a

    def elements(self) -> Sequence[int]:
        return range(self.table.size)


class IntSuccessorPlatform(LdPlatform):
    """Integers with ``x op y = y + 1``: self-distributive, not idempotent.

    Degenerate as a protocol platform (the secret never enters the
    operation) but handy as a law-check and wire fixture.
    """

    name = "int-succ"
    laws = frozenset({LD})

    def __init__(self, sample_range: int = 2 ** 16) -> None:
        self.sample_range = sample_range

    def op(self, a: int, b: int) -> int:
        return b + 1

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def sample(self, rng: random.Random, size_hint: int | None = None) -> int:
        return rng.randrange(self.sample_range)

    def encode(self, a: int) -> str:
        return str(a)

    def decode(self, text: str) -> int:
        return _check_int_text(text)


@dataclass(frozen=True)
class FiniteMagma:
    """An explicit operation table on {0, ..., size-1}."""

    size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.size:
            raise ValueError("table must have one row per element")
        for row in self.table:
            if len(row) != self.size:
                raise ValueError("table rows must have one column per element")
            for v in row:
                if not 0 <= v < self.size:
                    raise ValueError(f"table value {v} out of range")

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    @classmethod
    def from_csv(cls, text: str) -> "FiniteMagma":
        lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
        if not lines or not lines[0].startswith("size="):
            raise ValueError("magma file must start with a 'size=m' header line")
        size = int(lines[0][len("size="):])
        rows = tuple(
            tuple(int(cell) for cell in line.split(",")) for line in lines[1:]
        )
        return cls(size=size, table=rows)

    def to_csv(self) -> str:
        body = "\n".join(",".join(str(v) for v in row) for row in self.table)
        return f"size={self.size}\n{body}\n"


class MagmaPlatform(LdPlatform):
    """Platform view of a finite magma; laws are checked exhaustively."""

    _LAW_CHECK_SIZE_LIMIT = 64

    def __init__(self, magma: FiniteMagma, name: str | None = None) -> None:
        self.magma = magma
        self.name = name or f"magma:{magma.size}"
        laws = set()
        if magma.size <= self._LAW_CHECK_SIZE_LIMIT:
            if ld_law_check(self, exhaustive=True).passed:
                laws.add(LD)
            if cd_law_check(self, exhaustive=True).passed:
                laws.add(CD)
        self.laws = frozenset(laws)

    def op(self, a: int, b: int) -> int:
        if not (0 <= a < self.magma.size and 0 <= b < self.magma.size):
            raise ValueError(f"operands ({a}, {b}) out of range for {self.name}")
        return self.magma.op(a, b)

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def sample(self, rng: random.Random, size_hint: int | None = None) -> int:
        return rng.randrange(self.magma.size)

    def encode(self, a: int) -> str:
        if not 0 <= a < self.magma.size:
            raise ValueError(f"{a} out of range for {self.name}")
        return str(a)

    def decode(self, text: str) -> int:
        a = _check_int_text(text)
        if not 0 <= a < self.magma.size:
            raise ValueError(f"{a} out of range for {self.name}")
        return a

    def elements(self) -> Sequence[int]:
        return range(self.magma.size)


class TrivialMapPlatform(MagmaPlatform):
    """``x op y = f(y)`` for a fixed self-map f; satisfies LD and CD.

    Both laws collapse to ``f(f(p)) == f(f(p))``.  Useless for
    authentication (the secret never enters), kept as the classical
    degenerate example and as a CD-mode fixture.
    """

    def __init__(self, f: Sequence[int]) -> None:
        size = len(f)
        table = tuple(tuple(f[b] for b in range(size)) for _ in range(size))
        super().__init__(FiniteMagma(size=size, table=table), name=f"trivial:{size}")


def platform_shifted_braid(max_index: int = 6, length: int = 16) -> ShiftedBraidPlatform:
    return ShiftedBraidPlatform(max_index=max_index, length=length)


def platform_conj_braid(max_index: int = 6, length: int = 16) -> ConjBraidPlatform:
    return ConjBraidPlatform(max_index=max_index, length=length)


def platform_laver(n: int, cap: int = laver.DEFAULT_CAP) -> LaverPlatform:
    return LaverPlatform(n, cap)


def platform_trivial(f: Sequence[int]) -> TrivialMapPlatform:
    return TrivialMapPlatform(f)


def platform_int_successor() -> IntSuccessorPlatform:
    return IntSuccessorPlatform()


def platform_f_conjugacy(shift_power: int, a: BraidWord, **kwargs: Any) -> FConjugacyPlatform:
    return FConjugacyPlatform(shift_power, a, **kwargs)


def platform_magma(magma: FiniteMagma, name: str | None = None) -> MagmaPlatform:
    return MagmaPlatform(magma, name)


def parse_platform(descriptor: str) -> LdPlatform:
    """Resolve a CLI/wire platform descriptor.

    Grammar: ``shifted-braid | conj-braid | laver:<n> | int-succ |
    magma:<file>``.
    """
    if descriptor == "shifted-braid":
        return platform_shifted_braid()
    if descriptor == "conj-braid":
        return platform_conj_braid()
    if descriptor == "int-succ":
        return platform_int_successor()
    if descriptor.startswith("laver:"):
        return platform_laver(int(descriptor[len("laver:"):]))
    if descriptor.startswith("magma:"):
        path = Path(descriptor[len("magma:"):])
        return platform_magma(FiniteMagma.from_csv(path.read_text()))
    raise ValueError(f"unknown platform descriptor {descriptor!r}")


@dataclass(frozen=True)
class LawReport:
    """Outcome of probing one law on one platform."""

    platform: str
    law: str
    checked: int
    passed: bool
    counterexample: tuple[Any, Any, Any] | None
    exhaustive: bool


def _law_sides(law: str, p: LdPlatform, r: Any, s: Any, q: Any) -> tuple[Any, Any]:
    if law == LD:
        return p.op(r, p.op(s, q)), p.op(p.op(r, s), p.op(r, q))
    if law == CD:
        return p.op(r, p.op(s, q)), p.op(p.op(s, r), p.op(r, q))
    raise ValueError(f"unknown law {law!r}")


def _law_check(platform: LdPlatform, law: str, trials: int,
               rng: random.Random | None, exhaustive: bool) -> LawReport:
    if exhaustive:
        domain = platform.elements()
        if domain is None:
            raise ValueError(f"{platform.name} is not finite; use sampled trials")
        triples: Iterable[tuple[Any, Any, Any]] = itertools.product(domain, repeat=3)
    else:
        rng = rng or random.Random(0)
        triples = (
            (platform.sample(rng), platform.sample(rng), platform.sample(rng))
            for _ in range(trials)
        )
    checked = 0
    for r, s, q in triples:
        checked += 1
        lhs, rhs = _law_sides(law, platform, r, s, q)
        if not platform.eq(lhs, rhs):
            return LawReport(platform.name, law, checked, False, (r, s, q), exhaustive)
    return LawReport(platform.name, law, checked, True, None, exhaustive)


def ld_law_check(platform: LdPlatform, trials: int = 1000,
                 rng: random.Random | None = None, exhaustive: bool = False) -> LawReport:
    """Probe left self-distributivity on sampled or exhausted triples."""
    return _law_check(platform, LD, trials, rng, exhaustive)


def cd_law_check(platform: LdPlatform, trials: int = 1000,
                 rng: random.Random | None = None, exhaustive: bool = False) -> LawReport:
    """Probe the central duplication law on sampled or exhausted triples."""
    return _law_check(platform, CD, trials, rng, exhaustive)


def search_cd_magmas(size: int) -> list[FiniteMagma]:
    """All operation tables on {0..size-1} satisfying CD, exhaustively.

    Sizes above 3 are refused: the table space grows as m^(m^2).
    """
    if not 1 <= size <= 3:
        raise ValueError("exhaustive CD search supports sizes 1..3 only")
    found = []
    cells = size * size
    for values in itertools.product(range(size), repeat=cells):
        table = tuple(
            tuple(values[row * size + col] for col in range(size))
            for row in range(size)
        )
        m = FiniteMagma(size=size, table=table)
        if all(
            m.op(r, m.op(s, p)) == m.op(m.op(s, r), m.op(r, p))
            for r in range(size) for s in range(size) for p in range(size)
        ):
            found.append(m)
    return found


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a brute-force search; ``found`` satisfies the target
    equation under the platform's eq whenever present."""

    found: Any | None
    candidates_tried: int
    budget: dict[str, Any] = field(default_factory=dict)


_DEF_MAX_LEN = 6
_DEF_MAX_INDEX = 2


def enumerate_braid_words(max_len: int, max_index: int) -> Iterator[BraidWord]:
    """Candidate words by increasing length, then lexicographically.

    The letter order is sigma_1, sigma_1^-1, sigma_2, sigma_2^-1, ...
    """
    alphabet = []
    for i in range(1, max_index + 1):
        alphabet.extend([i, -i])
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield BraidWord.from_ints(combo)


def scsp_search(platform: LdPlatform, p: Any, p_prime: Any,
                max_len: int = _DEF_MAX_LEN, max_index: int = _DEF_MAX_INDEX) -> SearchResult:
    """Find any s with ``s op p == p_prime`` by brute-force enumeration.

    Finite platforms are exhausted; braid platforms enumerate words over a
    bounded alphabet by increasing length.  First hit in enumeration order
    is returned, so results are deterministic.
    """
    domain = platform.elements()
    if domain is not None:
        candidates: Iterable[Any] = domain
        budget = {"domain": len(domain)}
    else:
        candidates = enumerate_braid_words(max_len, max_index)
        budget = {"max_len": max_len, "max_index": max_index}
    tried = 0
    for s in candidates:
        tried += 1
        if platform.eq(platform.op(s, p), p_prime):
            return SearchResult(found=s, candidates_tried=tried, budget=budget)
    return SearchResult(found=None, candidates_tried=tried, budget=budget)


def f_map(s: BraidWord) -> BraidWord:
    """Left translation of the identity under shifted conjugacy.

    ``s -> s op 1`` is injective on braids, a candidate one-way map; no
    inversion method beyond brute force is known.
    """
    return braids.shifted_conj(s, braids.BraidWord())


def f_preimage_search(p: BraidWord, max_len: int = _DEF_MAX_LEN,
                      max_index: int = _DEF_MAX_INDEX,
                      eq: Callable[[BraidWord, BraidWord], bool] | None = None) -> SearchResult:
    """Brute-force a braid s with ``s op 1 == p`` (may not exist)."""
    eq = eq or braids.words_equal
    tried = 0
    for s in enumerate_braid_words(max_len, max_index):
        tried += 1
        if eq(f_map(s), p):
            return SearchResult(
                found=s, candidates_tried=tried,
                budget={"max_len": max_len, "max_index": max_index},
            )
    return SearchResult(
        found=None, candidates_tried=tried,
        budget={"max_len": max_len, "max_index": max_index},
    )
