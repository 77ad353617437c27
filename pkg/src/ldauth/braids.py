"""Braid words over the infinite Artin generator family.

Group elements are kept as plain words: finite sequences of letters
``sigma_i^{+1}`` / ``sigma_i^{-1}``, never normalized on storage, so that
the output of an operation stays literally inspectable.  Python ``==`` on
:class:`BraidWord` is letter-for-letter; equality *as braids* (the word
problem) is :func:`words_equal`, decided by handle reduction in
:mod:`ldauth.wordproblem`.

The text form used by the CLI and the wire encodes a word as a list of
nonzero integers, ``k > 0`` for the generator with subscript k and
``k < 0`` for its inverse: ``"[1, 2, -1]"``.  The empty list is the
identity braid.

The two binary operations that matter here are ordinary conjugacy
``x * y * x^-1`` and shifted conjugacy

    x . sh(y) . sigma_1 . sh(x)^-1

where ``sh`` is the endomorphism pushing every subscript up by one.  Both
are left self-distributive; shifted conjugacy, unlike conjugacy, is not
idempotent, which is what makes it interesting as a protocol platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .wordproblem import (
    DEFAULT_MAX_WORD_LEN,
    ReductionLimitError,
    free_reduce_ints,
    is_trivial_ints,
    permutation_of_ints,
    reduce_ints,
)

__all__ = [
    "Letter",
    "BraidWord",
    "BraidInvariants",
    "ReductionLimitError",
    "DEFAULT_MAX_WORD_LEN",
    "generator",
    "shift",
    "invert",
    "concat",
    "free_reduce",
    "handle_reduce",
    "conj",
    "shifted_conj",
    "words_equal",
    "braid_invariants",
    "random_word",
    "parse_word",
    "format_word",
]


class Letter(NamedTuple):
    """One occurrence of a generator: subscript ``index``, sign +1 or -1."""

    index: int
    sign: int

    @classmethod
    def from_int(cls, k: int) -> "Letter":
        if k == 0:
            raise ValueError("0 does not encode a braid letter")
        return cls(abs(k), 1 if k > 0 else -1)

    def to_int(self) -> int:
        return self.index * self.sign


@dataclass(frozen=True)
class BraidWord:
    """An unreduced word; the empty word is the identity braid.

    ``==`` compares letter sequences, not braid elements.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter.index < 1:
                raise ValueError(f"generator subscript must be >= 1: {letter}")
            if letter.sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1: {letter}")

    @classmethod
    def from_ints(cls, ints: Iterable[int]) -> "BraidWord":
        return cls(tuple(Letter.from_int(k) for k in ints))

    def as_ints(self) -> list[int]:
        return [letter.index * letter.sign for letter in self.letters]

    @property
    def max_index(self) -> int:
        """Largest generator subscript present; 0 for the identity word."""
        return max((letter.index for letter in self.letters), default=0)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __repr__(self) -> str:
        return f"BraidWord({self.as_ints()})"


IDENTITY = BraidWord()


def generator(index: int, sign: int = 1) -> BraidWord:
    """The one-letter word for a generator or its inverse."""
    return BraidWord((Letter(index, sign),))


def parse_word(text: str) -> BraidWord:
    """Parse the ``"[1, 2, -1]"`` text form."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"braid word text must be bracketed: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return BraidWord()
    try:
        ints = [int(part) for part in inner.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad braid word text {text!r}") from exc
    return BraidWord.from_ints(ints)


def format_word(w: BraidWord) -> str:
    """Canonical text form, inverse of :func:`parse_word`."""
    return "[" + ", ".join(str(k) for k in w.as_ints()) + "]"


def shift(w: BraidWord) -> BraidWord:
    """Push every generator subscript up by one (injective endomorphism)."""
    return BraidWord(tuple(Letter(l.index + 1, l.sign) for l in w.letters))


def invert(w: BraidWord) -> BraidWord:
    """Formal group inverse: reverse the letters and flip the signs."""
    return BraidWord(tuple(Letter(l.index, -l.sign) for l in reversed(w.letters)))


def concat(*words: BraidWord) -> BraidWord:
    """Juxtapose words (group multiplication, no reduction performed)."""
    letters: list[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return BraidWord(tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    return BraidWord.from_ints(free_reduce_ints(w.as_ints()))


def handle_reduce(w: BraidWord, *, max_len: int = DEFAULT_MAX_WORD_LEN) -> BraidWord:
    """A handle-free word representing the same braid as ``w``.

    The result is empty iff ``w`` is the identity braid.
    """
    return BraidWord.from_ints(reduce_ints(w.as_ints(), max_len))


def conj(x: BraidWord, y: BraidWord) -> BraidWord:
    """Ordinary conjugacy ``x * y * x^-1``, as a literal word."""
    return concat(x, y, invert(x))


def shifted_conj(x: BraidWord, y: BraidWord) -> BraidWord:
    """Shifted conjugacy ``x * sh(y) * sigma_1 * sh(x)^-1``, literally."""
    return concat(x, shift(y), generator(1), invert(shift(x)))


def words_equal(
    u: BraidWord,
    v: BraidWord,
    *,
    max_len: int = DEFAULT_MAX_WORD_LEN,
) -> bool:
    """Sound and complete equality of braids.

    Cheap necessary conditions (exponent sum, induced permutation) run
    first; if they pass, ``u * v^-1`` is handle-reduced and tested for
    emptiness.
    """
    ui = u.as_ints()
    vi = v.as_ints()
    if sum(1 if k > 0 else -1 for k in ui) != sum(1 if k > 0 else -1 for k in vi):
        return False
    strands = max(u.max_index, v.max_index) + 1
    if strands > 1 and permutation_of_ints(ui, strands) != permutation_of_ints(vi, strands):
        return False
    word = ui + [-k for k in reversed(vi)]
    return is_trivial_ints(word, max_len)


class BraidInvariants(NamedTuple):
    """Quotient data preserved by the braid relations.

    Necessary conditions for equality: equal braids always agree here, so
    any disagreement on words claimed equal is a word-problem bug.
    """

    permutation: tuple[int, ...]
    exponent_sum: int


def braid_invariants(w: BraidWord, strands: int) -> BraidInvariants:
    """Induced permutation of ``{1..strands}`` plus the letter sign sum."""
    if strands <= w.max_index:
        raise ValueError(
            f"word uses subscript {w.max_index}, needs more than {strands} strands"
        )
    ints = w.as_ints()
    return BraidInvariants(
        permutation=permutation_of_ints(ints, strands),
        exponent_sum=sum(1 if k > 0 else -1 for k in ints),
    )


def random_word(max_index: int, length: int, rng: random.Random) -> BraidWord:
    """Uniform i.i.d. letters over the 2*max_index signed generators."""
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    letters = []
    for _ in range(length):
        k = rng.randrange(2 * max_index)
        index = k // 2 + 1
        sign = 1 if k % 2 == 0 else -1
        letters.append(Letter(index, sign))
    return BraidWord(tuple(letters))
