"""Words over Z_q, factor spans, tandem duplication and square search.

Words are plain tuples of ints. Positions in the public API are 1-based,
matching the usual ``pos``/``midp`` notation for factors; a span's midpoint
is stored doubled (``start + end``) so half-integer midpoints stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidWordError, NotASquareError, WordTooShortError

Word = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")

    def validate(self, word: Sequence[int]) -> Word:
        """Return ``word`` as a tuple, raising if any letter is not in Z_q."""
        w = tuple(word)
        for c in w:
            if not (0 <= c < self.q):
                raise InvalidWordError(f"letter {c!r} not in Z_{self.q}")
        return w

    def words(self, n: int) -> Iterable[Word]:
        """All of Sigma^n in lexicographic order."""
        from itertools import product

        return product(range(self.q), repeat=n)


@dataclass(frozen=True)
class FactorSpan:
    """Closed 1-based interval ``[start, end]`` of positions in a host word."""

    start: int
    end: int
    midpoint2: int = field(init=False)

    def __post_init__(self):
        if self.start < 1 or self.end < self.start:
            raise ValueError(f"bad span [{self.start}, {self.end}]")
        object.__setattr__(self, "midpoint2", self.start + self.end)

    def __len__(self):
        return self.end - self.start + 1

    def positions(self) -> range:
        return range(self.start, self.end + 1)

    @classmethod
    def of_square(cls, start: int, ell: int) -> "FactorSpan":
        """Span of the square ``vv`` whose left copy starts at ``start``."""
        return cls(start, start + 2 * ell - 1)


@dataclass(frozen=True)
class DupEvent:
    """The rule T_{i,l}: duplicate the l-factor found after a prefix of length i."""

    prefix_len: int
    dup_len: int

    def __post_init__(self):
        if self.prefix_len < 0 or self.dup_len < 1:
            raise ValueError(f"bad duplication event {self}")


# -- text format --------------------------------------------------------------


def parse_word(text: str, q: int) -> Word:
    """Parse digit text (q <= 10) or comma-separated ints (q > 10)."""
    text = text.strip()
    if q <= 10:
        if not text:
            return ()
        if not text.isdigit():
            raise InvalidWordError(f"expected decimal digits, got {text!r}")
        word = tuple(int(c) for c in text)
    else:
        if not text:
            return ()
        try:
            word = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise InvalidWordError(f"bad word text {text!r}") from exc
    return Alphabet(q).validate(word)


def format_word(word: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(c) for c in word)
    return ",".join(str(c) for c in word)


# -- duplication --------------------------------------------------------------


def apply_duplication(x: Sequence[int], e: DupEvent) -> Word:
    """Return ``u v v w`` where ``x = u v w``, ``|u| = i``, ``|v| = l``."""
    i, ell = e.prefix_len, e.dup_len
    if len(x) < i + ell:
        raise WordTooShortError(
            f"T_{{{i},{ell}}} undefined on a word of length {len(x)}"
        )
    x = tuple(x)
    return x[: i + ell] + x[i:]


def remove_duplication(z: Sequence[int], span_start: int, ell: int) -> Word:
    """De-duplicate the square of half-length ``ell`` starting at ``span_start`` (1-based)."""
    z = tuple(z)
    s = span_start - 1
    if s < 0 or ell < 1 or s + 2 * ell > len(z):
        raise NotASquareError(
            f"no room for a square of length {ell} at {span_start} in a word of length {len(z)}"
        )
    if z[s : s + ell] != z[s + ell : s + 2 * ell]:
        raise NotASquareError(f"blocks at {span_start} of length {ell} differ")
    return z[: s + ell] + z[s + 2 * ell :]


def is_square_at(z: Sequence[int], start: int, ell: int) -> bool:
    s = start - 1
    if s < 0 or s + 2 * ell > len(z):
        return False
    return all(z[s + k] == z[s + ell + k] for k in range(ell))


def find_squares(z: Sequence[int], lengths: Iterable[int]) -> list[tuple[int, int]]:
    """Every ``(start, l)`` with ``z[start..start+l-1] == z[start+l..start+2l-1]``.

    Only half-lengths in ``lengths`` are searched. The result is sorted by
    ``(start, l)`` and is empty iff ``z`` is free of such squares.
    """
    n = len(z)
    found = []
    for ell in sorted(set(lengths)):
        if ell < 1 or 2 * ell > n:
            continue
        # run counts consecutive k with z[k] == z[k+ell]; a square ends when run hits ell
        run = 0
        for k in range(n - ell):
            if z[k] == z[k + ell]:
                run += 1
                if run >= ell:
                    found.append((k - ell + 2, ell))
            else:
                run = 0
    found.sort()
    return found


def has_square(z: Sequence[int], lengths: Iterable[int]) -> bool:
    n = len(z)
    for ell in lengths:
        if ell < 1 or 2 * ell > n:
            continue
        run = 0
        for k in range(n - ell):
            if z[k] == z[k + ell]:
                run += 1
                if run >= ell:
                    return True
            else:
                run = 0
    return False


# -- span relations -----------------------------------------------------------


def midcovers(outer: FactorSpan, inner: FactorSpan) -> bool:
    """True iff the midpoint of ``inner`` lies within the positions of ``outer``."""
    return 2 * outer.start <= inner.midpoint2 <= 2 * outer.end


def spans_disjoint(a: FactorSpan, b: FactorSpan) -> bool:
    return a.end < b.start or b.end < a.start
