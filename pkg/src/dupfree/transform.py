"""The l-step difference transform over Z_q and the zero-run decoding step.

``phi(x, l)`` keeps the first ``l`` letters and replaces every later letter by
``x_i - x_{i-l} (mod q)``. An l-tandem duplication in ``x`` shows up as an
inserted block of ``l`` zeros in ``phi(x, l)``, which is what makes the
run-reduction decoder work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import WordTooShortError
from .words import FactorSpan, Word


def _check(word: Sequence[int], ell: int) -> None:
    if ell < 1:
        raise ValueError(f"transform step must be >= 1, got {ell}")
    if len(word) < ell:
        raise WordTooShortError(f"phi_{ell} needs a word of length >= {ell}, got {len(word)}")


def phi(x: Sequence[int], ell: int, q: int) -> Word:
    _check(x, ell)
    return tuple(x[:ell]) + tuple((x[i] - x[i - ell]) % q for i in range(ell, len(x)))


def phi_inverse(y: Sequence[int], ell: int, q: int) -> Word:
    _check(y, ell)
    x = list(y[:ell])
    for i in range(ell, len(y)):
        x.append((y[i] + x[i - ell]) % q)
    return tuple(x)


@dataclass(frozen=True)
class ZeroRunDecomposition:
    """``prefix 0^{runs[0]} blocks[0] 0^{runs[1]} ... blocks[k-1] 0^{runs[k]}``.

    ``blocks`` are maximal zero-free factors of the tail, so ``runs`` has one
    more entry than ``blocks``; only its two end entries may be 0.
    """

    prefix: Word
    blocks: tuple
    runs: tuple

    def reassemble(self, runs: Sequence[int] | None = None) -> Word:
        runs = self.runs if runs is None else runs
        out = list(self.prefix)
        out.extend([0] * runs[0])
        for block, m in zip(self.blocks, runs[1:]):
            out.extend(block)
            out.extend([0] * m)
        return tuple(out)


def zero_run_decompose(y: Sequence[int], ell: int) -> ZeroRunDecomposition:
    _check(y, ell)
    blocks: list = []
    runs: list = []
    m = 0
    cur: list = []
    for c in y[ell:]:
        if c == 0:
            if cur:
                blocks.append(tuple(cur))
                cur = []
            m += 1
        else:
            if not cur:
                runs.append(m)
                m = 0
            cur.append(c)
    if cur:
        blocks.append(tuple(cur))
    runs.append(m)
    return ZeroRunDecomposition(tuple(y[:ell]), tuple(blocks), tuple(runs))


def reduce_runs_mod(d: ZeroRunDecomposition, ell: int) -> Word:
    """Reassemble ``d`` with every zero-run length taken mod ``ell``."""
    return d.reassemble([m % ell for m in d.runs])


def extract_disjoint_duplications(z: Sequence[int], ell: int, q: int) -> list[FactorSpan]:
    """Greedy left-to-right scan for pairwise disjoint l-squares in ``z``.

    Each ``0^l`` found in ``phi(z, l)`` past its prefix at positions
    ``[p, p+l-1]`` marks the square ``[p-l, p+l-1]`` of ``z``; the next ``l``
    positions are skipped before scanning resumes.
    """
    y = phi(z, ell, q)
    n = len(y)
    spans = []
    p = ell  # 0-based index of 1-based position ell+1
    run = 0
    while p < n:
        if y[p] == 0:
            run += 1
            if run == ell:
                start = p - ell + 2  # 1-based start of the zero block
                spans.append(FactorSpan(start - ell, start + ell - 1))
                run = 0
                p += ell + 1
                continue
        else:
            run = 0
        p += 1
    return spans
