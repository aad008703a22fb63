"""Decoders for duplication-free codes.

``decode_uniform`` and ``decode_equal_length`` run the linear-time zero-run
reduction. ``decode_bruteforce`` searches every Definition-style simultaneous
de-duplication of the received word and is meant for small inputs only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codes import LengthSpec, is_codeword, separation_violations
from .errors import ResourceLimitError, SeparationError
from .transform import phi, phi_inverse, reduce_runs_mod, zero_run_decompose
from .words import Word

UNIQUE = "unique"
AMBIGUOUS = "ambiguous"
NO_CANDIDATE = "no-candidate"

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class DecodeResult:
    codeword: Word | None
    length_used: object
    status: str
    candidates: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == UNIQUE


def reduce_uniform(z: Sequence[int], ell: int, q: int) -> Word:
    """Remove every l-tandem duplication from ``z`` via its transform."""
    return phi_inverse(reduce_runs_mod(zero_run_decompose(phi(z, ell, q), ell), ell), ell, q)


def decode_uniform(z: Sequence[int], ell: int, n: int, q: int) -> DecodeResult:
    if len(z) < ell or len(z) < n:
        return DecodeResult(None, ell, NO_CANDIDATE)
    x = reduce_uniform(z, ell, q)
    if len(x) == n and is_codeword(x, (ell,)):
        return DecodeResult(x, ell, UNIQUE, (x,))
    return DecodeResult(None, ell, NO_CANDIDATE)


def decode_equal_length(z: Sequence[int], spec: LengthSpec, n: int, q: int, verify: bool = False) -> DecodeResult:
    """Try every ``l`` in ``L`` (``l <= n``) in increasing order.

    The first length-n codeword found is returned. With ``verify=True`` every
    length is tried and more than one distinct result is reported as
    ambiguous, which would contradict the separation guarantee.
    """
    if spec.mode != "equal_length" or separation_violations(spec.L):
        raise SeparationError(f"decode_equal_length needs a validated equal_length spec, got {spec}")
    found: dict = {}
    for ell in sorted(spec.L):
        if ell > n or len(z) < ell:
            continue
        x = reduce_uniform(z, ell, q)
        if len(x) == n and is_codeword(x, spec.F):
            found.setdefault(x, ell)
            if not verify:
                break
    if not found:
        return DecodeResult(None, None, NO_CANDIDATE)
    if len(found) > 1:
        return DecodeResult(None, tuple(found.values()), AMBIGUOUS, tuple(found))
    (x, ell), = found.items()
    return DecodeResult(x, ell, UNIQUE, (x,))


def ancestors_disjoint(z: Sequence[int], lengths, n: int, equal: bool = False, budget: int = DEFAULT_BUDGET) -> set:
    """Every length-n word ``x`` that reaches ``z`` in one disjoint round.

    Such an ``x`` corresponds to a set of squares with pairwise disjoint spans
    in ``z`` (half-lengths in ``lengths``, summing to ``|z| - n``); removing
    one copy of each yields ``x``. With ``equal`` all squares share one length.
    """
    z = tuple(z)
    excess = len(z) - n
    if excess < 0:
        return set()
    if equal:
        out = set()
        for ell in sorted(set(lengths)):
            if excess % ell == 0:
                out |= _ancestors(z, (ell,), excess, budget)
        return out
    return _ancestors(z, tuple(sorted(set(lengths))), excess, budget)


def _ancestors(z: Word, lengths: tuple, excess: int, budget: int) -> set:
    N = len(z)
    memo: dict = {}
    states = 0

    def suffixes(pos: int, rem: int) -> frozenset:
        # all de-duplications of z[pos:] removing exactly rem letters
        nonlocal states
        key = (pos, rem)
        hit = memo.get(key)
        if hit is not None:
            return hit
        states += 1
        if states > budget:
            raise ResourceLimitError(f"brute-force search exceeded {budget} states")
        if rem == 0:
            res = frozenset((z[pos:],))
        elif N - pos < 2 * rem:
            res = frozenset()
        else:
            acc = set()
            head = z[pos]
            for tail in suffixes(pos + 1, rem):
                acc.add((head,) + tail)
            for ell in lengths:
                if ell > rem or pos + 2 * ell > N:
                    break
                if z[pos : pos + ell] == z[pos + ell : pos + 2 * ell]:
                    block = z[pos : pos + ell]
                    for tail in suffixes(pos + 2 * ell, rem - ell):
                        acc.add(block + tail)
            res = frozenset(acc)
        memo[key] = res
        return res

    return set(suffixes(0, excess))


def decode_bruteforce(
    z: Sequence[int], spec: LengthSpec, n: int, model: str = "disjoint", budget: int = DEFAULT_BUDGET
) -> DecodeResult:
    """Exhaustive ancestor search for the disjoint and disjoint equal-length channels."""
    if model not in ("disjoint", "disjoint_equal_length"):
        raise ValueError(f"brute-force decoding supports the disjoint models, got {model!r}")
    if len(z) < n:
        return DecodeResult(None, None, NO_CANDIDATE)
    cands = sorted(
        x
        for x in ancestors_disjoint(z, spec.L, n, model == "disjoint_equal_length", budget)
        if is_codeword(x, spec.F)
    )
    if not cands:
        return DecodeResult(None, None, NO_CANDIDATE)
    if len(cands) > 1:
        return DecodeResult(None, model, AMBIGUOUS, tuple(cands))
    return DecodeResult(cands[0], model, UNIQUE, tuple(cands))
