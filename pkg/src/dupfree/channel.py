"""Tandem-duplication channels: trace application, disjoint plans, seeded sampling.

Four models are supported:

``unrestricted``
    any sequence of duplications with lengths in L;
``equal_length``
    any sequence, all of one length l in L;
``disjoint``
    one simultaneous round of duplications on non-overlapping blocks of the
    original word (``x1 v1 x2 v2 ... -> x1 v1 v1 x2 v2 v2 ...``);
``disjoint_equal_length``
    the disjoint model with every block of one length.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InfeasiblePlanError, MalformedPlanError, TraceModelError
from .words import DupEvent, FactorSpan, Word, apply_duplication, format_word, parse_word

MODELS = ("unrestricted", "disjoint", "equal_length", "disjoint_equal_length")
DISJOINT_MODELS = ("disjoint", "disjoint_equal_length")
GENERATOR = "python-random/mt19937"


@dataclass(frozen=True)
class CorruptionTrace:
    """Duplication events in application order.

    For disjoint models the events must touch non-overlapping blocks of the
    original word and be listed right to left, so no event shifts the
    offsets of the ones after it.
    """

    events: tuple
    model: str
    L: frozenset
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "L", frozenset(self.L))
        self.validate()

    def validate(self) -> None:
        if self.model not in MODELS:
            raise TraceModelError(f"unknown model {self.model!r}")
        for e in self.events:
            if e.dup_len not in self.L:
                raise TraceModelError(f"duplication length {e.dup_len} not in L={sorted(self.L)}")
        if self.model in ("equal_length", "disjoint_equal_length"):
            if len({e.dup_len for e in self.events}) > 1:
                raise TraceModelError("equal-length trace mixes duplication lengths")
        if self.model in DISJOINT_MODELS:
            for prev, nxt in zip(self.events, self.events[1:]):
                if nxt.prefix_len + nxt.dup_len > prev.prefix_len:
                    raise TraceModelError(
                        "disjoint trace events must be non-overlapping and ordered right to left"
                    )

    @property
    def total_length(self) -> int:
        return sum(e.dup_len for e in self.events)

    def dumps(self, q: int | None = None) -> str:
        L = ",".join(map(str, sorted(self.L)))
        lines = [f"# model={self.model} L={L} seed={self.seed if self.seed is not None else ''}"]
        lines += [f"{e.prefix_len},{e.dup_len}" for e in self.events]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CorruptionTrace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = _parse_header(lines[0])
        events = []
        for ln in lines[1:]:
            i, ell = ln.split(",")
            events.append(DupEvent(int(i), int(ell)))
        seed = int(header["seed"]) if header.get("seed") else None
        return cls(events, header["model"], _parse_int_list(header["L"]), seed)


@dataclass(frozen=True)
class DisjointPlan:
    """``x = gaps[0] blocks[0] gaps[1] blocks[1] ... blocks[t-1] gaps[t]``."""

    gaps: tuple
    blocks: tuple
    model: str = "disjoint"
    L: frozenset = field(default_factory=frozenset)
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(tuple(g) for g in self.gaps))
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "L", frozenset(self.L))
        if len(self.gaps) != len(self.blocks) + 1:
            raise MalformedPlanError("a plan with t blocks needs t+1 gaps")
        if any(not b for b in self.blocks):
            raise MalformedPlanError("duplicated blocks must be nonempty")
        if self.L and any(len(b) not in self.L for b in self.blocks):
            raise MalformedPlanError(f"block length not in L={sorted(self.L)}")
        if self.model == "disjoint_equal_length" and len({len(b) for b in self.blocks}) > 1:
            raise MalformedPlanError("equal-length plan mixes block lengths")

    @property
    def t(self) -> int:
        return len(self.blocks)

    def source(self) -> Word:
        out: tuple = ()
        for g, b in zip(self.gaps, self.blocks):
            out += g + b
        return out + self.gaps[-1]

    def offsets(self) -> list[tuple[int, int]]:
        """0-based ``(start, length)`` of each block in the source word."""
        out, pos = [], 0
        for g, b in zip(self.gaps, self.blocks):
            pos += len(g)
            out.append((pos, len(b)))
            pos += len(b)
        return out

    def to_trace(self) -> CorruptionTrace:
        events = [DupEvent(i, ell) for i, ell in reversed(self.offsets())]
        L = self.L or {len(b) for b in self.blocks}
        return CorruptionTrace(events, self.model, L, self.seed)

    def duplicated_spans(self) -> list[FactorSpan]:
        """1-based spans of the squares ``v_k v_k`` in the corrupted word."""
        spans, pos = [], 0
        for g, b in zip(self.gaps, self.blocks):
            pos += len(g)
            spans.append(FactorSpan(pos + 1, pos + 2 * len(b)))
            pos += 2 * len(b)
        return spans

    @classmethod
    def from_offsets(cls, x: Sequence[int], offsets: Iterable[tuple[int, int]], model="disjoint", L=(), seed=None):
        x = tuple(x)
        gaps, blocks, pos = [], [], 0
        for start, ell in sorted(offsets):
            if start < pos or ell < 1 or start + ell > len(x):
                raise MalformedPlanError(f"block ({start}, {ell}) overlaps or overruns the word")
            gaps.append(x[pos:start])
            blocks.append(x[start : start + ell])
            pos = start + ell
        gaps.append(x[pos:])
        return cls(tuple(gaps), tuple(blocks), model, frozenset(L), seed)

    def dumps(self, q: int) -> str:
        L = ",".join(map(str, sorted(self.L)))
        lines = [f"# model={self.model} L={L} seed={self.seed if self.seed is not None else ''}"]
        for g, b in zip(self.gaps, self.blocks):
            lines.append(f"gap:{format_word(g, q)}")
            lines.append(f"dup:{format_word(b, q)}")
        lines.append(f"gap:{format_word(self.gaps[-1], q)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, q: int) -> "DisjointPlan":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = _parse_header(lines[0])
        gaps, blocks = [], []
        for ln in lines[1:]:
            kind, _, body = ln.partition(":")
            if kind == "gap":
                gaps.append(parse_word(body, q))
            elif kind == "dup":
                blocks.append(parse_word(body, q))
            else:
                raise MalformedPlanError(f"bad plan line {ln!r}")
        seed = int(header["seed"]) if header.get("seed") else None
        return cls(tuple(gaps), tuple(blocks), header["model"], _parse_int_list(header["L"]), seed)


def _parse_header(line: str) -> dict:
    if not line.startswith("#"):
        raise ValueError(f"expected a '# key=value' header, got {line!r}")
    return dict(tok.split("=", 1) for tok in line[1:].split())


def _parse_int_list(text: str) -> frozenset:
    return frozenset(int(v) for v in text.split(",") if v)


def apply_trace(x: Sequence[int], trace: CorruptionTrace) -> Word:
    z = tuple(x)
    if trace.model in DISJOINT_MODELS and trace.events:
        last = trace.events[0]
        if last.prefix_len + last.dup_len > len(z):
            raise TraceModelError("disjoint trace block overruns the source word")
    for e in trace.events:
        z = apply_duplication(z, e)
    return z


def apply_disjoint(x: Sequence[int], plan: DisjointPlan) -> Word:
    if plan.source() != tuple(x):
        raise MalformedPlanError("plan gaps and blocks do not concatenate to the source word")
    out: tuple = ()
    for g, b in zip(plan.gaps, plan.blocks):
        out += g + b + b
    return out + plan.gaps[-1]


# -- sampling -----------------------------------------------------------------


def _sample_disjoint(x: Word, L: list, t: int, equal: bool, rng: random.Random, model, seed):
    n = len(x)
    if equal:
        choices = [ell for ell in L if ell * t <= n]
        if not choices:
            raise InfeasiblePlanError(f"{t} disjoint blocks of one length in {L} do not fit in {n} letters")
        ell = rng.choice(choices)
        lengths = [ell] * t
    else:
        if min(L) * t > n:
            raise InfeasiblePlanError(f"{t} disjoint blocks with lengths in {L} do not fit in {n} letters")
        for _ in range(1000):
            lengths = [rng.choice(L) for _ in range(t)]
            if sum(lengths) <= n:
                break
        else:
            raise InfeasiblePlanError(f"rejection sampling found no fitting block lengths for t={t}")
    slack = n - sum(lengths)
    offsets, pos = [], 0
    for ell in lengths:
        gap = rng.randint(0, slack)
        slack -= gap
        pos += gap
        offsets.append((pos, ell))
        pos += ell
    plan = DisjointPlan.from_offsets(x, offsets, model, L, seed)
    return apply_disjoint(x, plan), plan


def sample_corruption(x: Sequence[int], model: str, L: Iterable[int], t: int, seed: int):
    """Corrupt ``x`` with ``t`` duplications drawn from ``model``.

    Returns ``(z, trace)`` for sequential models and ``(z, plan)`` for the
    disjoint ones; the result is a pure function of the arguments.
    """
    x = tuple(x)
    L = sorted(set(L))
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if not L:
        raise ValueError("L must be nonempty")
    if t < 0:
        raise ValueError("t must be >= 0")
    rng = random.Random(seed)
    if model in DISJOINT_MODELS:
        return _sample_disjoint(x, L, t, model == "disjoint_equal_length", rng, model, seed)
    events = []
    z = x
    if model == "equal_length" and t:
        choices = [ell for ell in L if ell <= len(x)]
        if not choices:
            raise InfeasiblePlanError(f"no length in {L} fits a word of length {len(x)}")
        fixed = rng.choice(choices)
    for _ in range(t):
        if model == "equal_length":
            ell = fixed
        else:
            choices = [ell for ell in L if ell <= len(z)]
            if not choices:
                raise InfeasiblePlanError(f"no length in {L} fits a word of length {len(z)}")
            ell = rng.choice(choices)
        e = DupEvent(rng.randint(0, len(z) - ell), ell)
        events.append(e)
        z = apply_duplication(z, e)
    return z, CorruptionTrace(events, model, L, seed)
