"""Duplication-free codes C_F: length sets, forbidden sets, enumeration, rate."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptyCodeError, EmptyLengthSetError, ResourceLimitError, SeparationError
from .words import Alphabet, format_word, has_square, parse_word

MODES = ("disjoint", "equal_length", "combined")
DEFAULT_CAP = 10**7


def length_delta(L: Iterable[int]) -> frozenset[int]:
    """``{|l - l'| : l, l' in L, l != l'}``."""
    L = sorted(set(L))
    return frozenset(b - a for i, a in enumerate(L) for b in L[i + 1 :])


def separation_violations(L: Iterable[int]) -> list[tuple[int, int]]:
    """Pairs ``(l, l')`` with ``l > l'`` but ``l < 2 l'``."""
    L = sorted(set(L))
    return [(b, a) for i, a in enumerate(L) for b in L[i + 1 :] if b < 2 * a]


@dataclass(frozen=True)
class LengthSpec:
    L: frozenset
    mode: str
    L_delta: frozenset = field(init=False)
    F: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "L", frozenset(self.L))
        object.__setattr__(self, "L_delta", length_delta(self.L))
        if self.mode == "disjoint":
            object.__setattr__(self, "F", self.L | self.L_delta)
        else:
            object.__setattr__(self, "F", self.L)


def make_length_spec(L: Iterable[int], mode: str) -> LengthSpec:
    """Validate ``L`` and derive the forbidden set for ``mode``.

    ``disjoint`` forbids ``L`` together with its difference set; ``equal_length``
    and ``combined`` forbid ``L`` itself. ``equal_length`` additionally
    requires every pair ``l > l'`` in ``L`` to satisfy ``l >= 2 l'``.
    """
    L = frozenset(L)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not L:
        raise EmptyLengthSetError("the duplication-length set L is empty")
    if min(L) < 1:
        raise ValueError(f"duplication lengths must be >= 1, got {sorted(L)}")
    if mode == "equal_length":
        bad = separation_violations(L)
        if bad:
            ell, ell2 = bad[0]
            raise SeparationError(f"{ell} > {ell2} but {ell} < 2*{ell2} in L={sorted(L)}")
    return LengthSpec(L, mode)


def square_free_set(n: int) -> frozenset[int]:
    """The forbidden set equivalent to 'all lengths' for words of length n."""
    return frozenset(range(1, n // 2 + 1))


def is_codeword(x: Sequence[int], F: Iterable[int]) -> bool:
    return not has_square(x, F)


@dataclass
class Code:
    n: int
    alphabet: Alphabet
    F: frozenset
    members: list = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, word):
        return tuple(word) in self._index

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = self.__dict__["_idx"] = set(self.members)
        return idx

    def rate(self) -> float:
        return rate(len(self.members), self.n, self.alphabet.q)

    def header(self) -> str:
        return f"# n={self.n} q={self.alphabet.q} F={','.join(map(str, sorted(self.F)))}"

    def dumps(self) -> str:
        q = self.alphabet.q
        return "\n".join([self.header(), *(format_word(w, q) for w in self.members)]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Code":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#"):
            raise ValueError("codeword file must start with a '# n=.. q=.. F=..' header")
        fields = dict(tok.split("=", 1) for tok in lines[0][1:].split())
        n, q = int(fields["n"]), int(fields["q"])
        F = frozenset(int(v) for v in fields["F"].split(",") if v)
        members = [parse_word(line, q) for line in lines[1:] if line.strip() and not line.startswith("#")]
        return cls(n, Alphabet(q), F, members)


def _ends_in_square(w: list, F: Sequence[int]) -> bool:
    # only squares whose right copy ends at the last letter are new
    m = len(w)
    for ell in F:
        if 2 * ell > m:
            break
        base = m - 2 * ell
        for k in range(ell):
            if w[base + k] != w[base + ell + k]:
                break
        else:
            return True
    return False


def _dfs(prefix: Sequence[int], n: int, q: int, F: list, out: list | None, cap: int) -> int:
    """Count (and optionally collect) the length-n codewords extending ``prefix``."""
    w = list(prefix)
    if has_square(w, F):
        return 0
    base = len(w)
    if base == n:
        if out is not None:
            out.append(tuple(w))
        return 1
    count = 0
    # stack[d] is the next letter to try at depth base + d
    stack = [0]
    while stack:
        c = stack[-1]
        if c == q:
            stack.pop()
            if len(w) > base:
                w.pop()
            continue
        stack[-1] = c + 1
        w.append(c)
        if _ends_in_square(w, F):
            w.pop()
        elif len(w) == n:
            count += 1
            if out is not None:
                if len(out) >= cap:
                    raise ResourceLimitError(f"code size exceeds cap {cap}")
                out.append(tuple(w))
            w.pop()
        else:
            stack.append(0)
    return count


def _worker(args):
    first, n, q, F, materialize, cap = args
    out = [] if materialize else None
    count = _dfs([first], n, q, F, out, cap)
    return count, out


def _search(n: int, q: int, F: Iterable[int], materialize: bool, cap: int, workers: int):
    Alphabet(q)
    if n < 0:
        raise ValueError("n must be >= 0")
    Fs = sorted(f for f in set(F) if 1 <= f <= n // 2)
    if n == 0:
        return 1, [()]
    if workers <= 1:
        out = [] if materialize else None
        count = _dfs([], n, q, Fs, out, cap)
        return count, out
    jobs = [(c, n, q, Fs, materialize, cap) for c in range(q)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_worker, jobs))
    count = sum(c for c, _ in parts)
    if not materialize:
        return count, None
    if count > cap:
        raise ResourceLimitError(f"code size exceeds cap {cap}")
    members = [w for _, chunk in parts for w in chunk]
    return count, members


def enumerate_code(n: int, q: int, F: Iterable[int], cap: int = DEFAULT_CAP, workers: int = 1) -> Code:
    """All ``x`` in ``Z_q^n`` with no square of half-length in ``F``, lexicographically.

    Depth-first with prefix pruning: a square in a prefix persists in every
    extension, so each appended letter only checks squares ending at it.
    ``workers > 1`` splits the search by first letter; output is identical.
    """
    F = frozenset(F)
    _, members = _search(n, q, F, True, cap, workers)
    return Code(n, Alphabet(q), F, members)


def count_code(n: int, q: int, F: Iterable[int], workers: int = 1) -> int:
    count, _ = _search(n, q, F, False, 0, workers)
    return count


def rate(code_size: int, n: int, q: int) -> float:
    """``(1/n) log_q |C|``."""
    if code_size < 1:
        raise EmptyCodeError("rate is undefined for an empty code")
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.log(code_size) / (n * math.log(q))


def rate_record(n: int, q: int, F: Iterable[int], count: int) -> str:
    r = f"{rate(count, n, q):.12g}" if count and n else "undefined"
    F = ",".join(map(str, sorted(F)))
    return f"n={n} q={q} F={F} count={count} rate={r}"
