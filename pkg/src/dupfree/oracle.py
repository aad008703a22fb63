"""Brute-force ground truth: bounded descendant cones and exhaustive theorem checks.

Cones are infinite, so every set here is truncated at ``max_len``. A collision
found at bounded depth refutes a code; the absence of one only corroborates.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .channel import MODELS
from .codes import enumerate_code, make_length_spec
from .errors import ResourceLimitError
from .words import FactorSpan, Word, format_word, midcovers, remove_duplication, find_squares

DEFAULT_CONE_CAP = 2_000_000
CAVEAT = "bounded cones: a collision refutes, its absence only corroborates"

THEOREM_MODEL = {1: "disjoint", 2: "equal_length", 3: "disjoint_equal_length"}
THEOREM_SPEC_MODE = {1: "disjoint", 2: "equal_length", 3: "combined"}


@dataclass
class DescendantSet:
    root: Word
    model: str
    L: frozenset
    max_len: int
    members: frozenset

    def __contains__(self, w):
        return tuple(w) in self.members

    def __len__(self):
        return len(self.members)


def default_max_len(n: int, L: Iterable[int]) -> int:
    return n + 2 * max(L) * 3


def _closure(roots: Iterable[Word], lengths: Sequence[int], max_len: int, cap: int) -> set:
    seen = set(roots)
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        m = len(w)
        for ell in lengths:
            if m + ell > max_len:
                break
            for i in range(m - ell + 1):
                v = w[: i + ell] + w[i:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"descendant set exceeds cap {cap}")
                    queue.append(v)
    return seen


def _plan_descendants(x: Word, lengths: Sequence[int], max_len: int, max_dups, cap: int) -> set:
    # one simultaneous round over non-overlapping blocks of x
    n = len(x)
    budget = max_len - n
    out = set()

    def walk(pos: int, acc: tuple, used: int, t: int):
        out.add(acc + x[pos:])
        if len(out) > cap:
            raise ResourceLimitError(f"descendant set exceeds cap {cap}")
        if max_dups is not None and t >= max_dups:
            return
        for start in range(pos, n):
            for ell in lengths:
                if start + ell > n or used + ell > budget:
                    break
                block = x[start : start + ell]
                walk(start + ell, acc + x[pos:start] + block + block, used + ell, t + 1)

    walk(0, (), 0, 0)
    return out


def descendants(
    x: Sequence[int],
    model: str,
    L: Iterable[int],
    max_len: int,
    max_dups: int | None = None,
    cap: int = DEFAULT_CONE_CAP,
) -> DescendantSet:
    """Bounded cone of ``x`` under ``model``.

    Sequential models take the breadth-first closure of single duplications.
    Disjoint models enumerate one-round plans on ``x`` itself, optionally
    limited to ``max_dups`` blocks.
    """
    x = tuple(x)
    lengths = sorted(set(L))
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if max_len < len(x):
        raise ValueError("max_len must be >= |x|")
    if model == "unrestricted":
        members = _closure([x], lengths, max_len, cap)
    elif model == "equal_length":
        members = {x}
        for ell in lengths:
            members |= _closure([x], [ell], max_len, cap)
    elif model == "disjoint":
        members = _plan_descendants(x, lengths, max_len, max_dups, cap)
    else:
        members = {x}
        for ell in lengths:
            members |= _plan_descendants(x, [ell], max_len, max_dups, cap)
    return DescendantSet(x, model, frozenset(lengths), max_len, frozenset(members))


def confusable(x, y, model: str, L, max_len: int, max_dups: int | None = None):
    """A shortest (then lexicographically least) common descendant, or None."""
    if len(x) != len(y):
        raise ValueError("confusability is defined for words of equal length")
    a = descendants(x, model, L, max_len, max_dups).members
    b = descendants(y, model, L, max_len, max_dups).members
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    common = [w for w in small if w in big]
    if not common:
        return None
    return min(common, key=lambda w: (len(w), w))


@dataclass
class VerificationReport:
    theorem: object
    n: int
    q: int
    L: frozenset
    F: frozenset
    model: str
    max_len: int
    max_dups: int | None
    code_size: int = 0
    pairs_checked: int = 0
    cone_words: int = 0
    collisions: list = field(default_factory=list)
    lemma_checks: dict = field(default_factory=dict)
    elapsed: float = 0.0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.collisions

    def dumps(self, include_elapsed: bool = True) -> str:
        fmt = lambda s: ",".join(map(str, sorted(s)))
        lines = [
            f"theorem={self.theorem}",
            f"n={self.n}",
            f"q={self.q}",
            f"L={fmt(self.L)}",
            f"F={fmt(self.F)}",
            f"model={self.model}",
            f"max_len={self.max_len}",
            f"max_dups={'' if self.max_dups is None else self.max_dups}",
            f"seed={'' if self.seed is None else self.seed}",
            f"code_size={self.code_size}",
            f"pairs_checked={self.pairs_checked}",
            f"cone_words={self.cone_words}",
            f"collisions={len(self.collisions)}",
        ]
        for x, y, w in self.collisions[:20]:
            lines.append(f"collision={format_word(x, self.q)}|{format_word(y, self.q)}|{format_word(w, self.q)}")
        for name in sorted(self.lemma_checks):
            lines.append(f"lemma.{name}={self.lemma_checks[name]}")
        lines.append(f"result={'pass' if self.passed else 'fail'}")
        if include_elapsed:
            lines.append(f"elapsed={self.elapsed:.3f}")
        lines.append(f"caveat={CAVEAT}")
        return "\n".join(lines) + "\n"


def verify_code(code, q: int, model: str, L, max_len: int, max_dups=None, theorem=None, F=None) -> VerificationReport:
    """Check that no two words of ``code`` share a bounded descendant."""
    t0 = time.perf_counter()
    members = list(code)
    n = len(members[0]) if members else 0
    collisions, total = _pairwise_collisions(members, model, L, max_len, max_dups)
    rep = VerificationReport(
        theorem=theorem,
        n=n,
        q=q,
        L=frozenset(L),
        F=frozenset(F or ()),
        model=model,
        max_len=max_len,
        max_dups=max_dups,
        code_size=len(members),
        pairs_checked=len(members) * (len(members) - 1) // 2,
        cone_words=total,
        collisions=collisions,
    )
    rep.elapsed = time.perf_counter() - t0
    return rep


def _pairwise_collisions(members, model, L, max_len, max_dups):
    # index each descendant by all of its owners so every colliding pair is reported
    owners: dict = {}
    total = 0
    for idx, x in enumerate(members):
        cone = descendants(x, model, L, max_len, max_dups).members
        total += len(cone)
        for w in cone:
            owners.setdefault(w, []).append(idx)
    best: dict = {}
    for w, who in owners.items():
        if len(who) < 2:
            continue
        for i, j in combinations(who, 2):
            prev = best.get((i, j))
            if prev is None or (len(w), w) < (len(prev), prev):
                best[(i, j)] = w
    collisions = [(members[i], members[j], w) for (i, j), w in sorted(best.items())]
    return collisions, total


def verify_theorem(theorem: int, n: int, q: int, L, max_len: int | None = None, max_dups: int | None = None) -> VerificationReport:
    """Build C_F for the theorem's forbidden set and check it exhaustively.

    ``theorem=1``: disjoint channel, ``F = L | L_delta``. ``theorem=2``:
    equal-length channel, ``F = L``, with the separation check. ``theorem=3``:
    disjoint equal-length channel, ``F = L``.
    """
    if theorem not in THEOREM_MODEL:
        raise ValueError(f"theorem must be 1, 2 or 3, got {theorem!r}")
    spec = make_length_spec(L, THEOREM_SPEC_MODE[theorem])
    if max_len is None:
        max_len = default_max_len(n, spec.L)
    code = enumerate_code(n, q, spec.F)
    rep = verify_code(code.members, q, THEOREM_MODEL[theorem], spec.L, max_len, max_dups, theorem, spec.F)
    rep.n, rep.q = n, q
    return rep


def negative_control(n: int, q: int, L, max_len: int | None = None, max_dups: int | None = None) -> VerificationReport:
    """The disjoint-channel check run on all of Sigma^n; it must find collisions."""
    L = frozenset(L)
    if max_len is None:
        max_len = default_max_len(n, L)
    words = list(product(range(q), repeat=n))
    rep = verify_code(words, q, "disjoint", L, max_len, max_dups, "negative-control", frozenset())
    rep.n, rep.q = n, q
    return rep


# -- lemma suites -------------------------------------------------------------


def _square_pairs(z: Word, max_len: int | None = None):
    squares = find_squares(z, range(1, len(z) // 2 + 1))
    spans = [(s, ell, FactorSpan.of_square(s, ell)) for s, ell in squares]
    for a, b in combinations(spans, 2):
        if midcovers(a[2], b[2]) and midcovers(b[2], a[2]):
            yield a, b


def all_words(max_n: int, q: int):
    for n in range(max_n + 1):
        yield from product(range(q), repeat=n)


def check_lemma_eqmidcover(budget: int = 8, qs: Iterable[int] = (2, 3)) -> dict:
    """Equal-length mutually mid-covering squares de-duplicate to the same word."""
    tally = {"cases": 0, "failures": 0, "counterexamples": []}
    for q in qs:
        for z in all_words(budget, q):
            for (s1, l1, _), (s2, l2, _) in _square_pairs(z):
                if l1 != l2:
                    continue
                tally["cases"] += 1
                if remove_duplication(z, s1, l1) != remove_duplication(z, s2, l2):
                    tally["failures"] += 1
                    tally["counterexamples"].append((z, s1, s2, l1))
    return tally


def check_lemma_neqmidcover(budget: int = 8, qs: Iterable[int] = (2, 3)) -> dict:
    """Removing the shorter of two mutually mid-covering squares leaves a square of the length difference."""
    tally = {"cases": 0, "failures": 0, "counterexamples": []}
    for q in qs:
        for z in all_words(budget, q):
            for a, b in _square_pairs(z):
                (s1, l1, _), (s2, l2, _) = a, b
                if l1 == l2:
                    continue
                if l1 < l2:
                    s1, l1, s2, l2 = s2, l2, s1, l1
                # l1 > l2: remove one copy of the shorter square
                tally["cases"] += 1
                rest = remove_duplication(z, s2, l2)
                if not find_squares(rest, (l1 - l2,)):
                    tally["failures"] += 1
                    tally["counterexamples"].append((z, s1, l1, s2, l2))
    return tally
