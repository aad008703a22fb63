import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import letters, naive_dup, naive_eq_cone, naive_phi
from dupfree.codes import enumerate_code
from dupfree.errors import WordTooShortError
from dupfree.transform import (
    ZeroRunDecomposition,
    extract_disjoint_duplications,
    phi,
    phi_inverse,
    reduce_runs_mod,
    zero_run_decompose,
)
from dupfree.words import FactorSpan, find_squares, spans_disjoint


def test_phi_worked_example():
    assert phi(letters("054213"), 2, 6) == letters("054331")
    assert phi(letters("054545421313"), 2, 6) == letters("054000033100")
    assert phi_inverse(letters("054331"), 2, 6) == letters("054213")
    assert phi_inverse(letters("054000033100"), 2, 6) == letters("054545421313")


def test_phi_worked_example_derivation_chain():
    chain = ["054213", "05454213", "0545421313", "054545421313"]
    transformed = ["054331", "05400331", "0540033100", "054000033100"]
    for x, y in zip(chain, transformed):
        assert phi(letters(x), 2, 6) == letters(y)


def test_phi_zero_fixed_point():
    for n in range(1, 8):
        for ell in range(1, n + 1):
            assert phi((0,) * n, ell, 3) == (0,) * n


def test_phi_too_short():
    with pytest.raises(WordTooShortError):
        phi((1,), 2, 3)
    with pytest.raises(WordTooShortError):
        phi_inverse((1,), 2, 3)


def test_phi_is_a_bijection_matching_the_definition():
    for q in (2, 3):
        for n in range(1, 7):
            for ell in range(1, n + 1):
                images = set()
                for x in product(range(q), repeat=n):
                    y = phi(x, ell, q)
                    assert y == naive_phi(x, ell, q)
                    assert phi_inverse(y, ell, q) == x
                    images.add(y)
                assert len(images) == q**n


@given(st.integers(2, 12), st.data())
def test_phi_round_trip_random(q, data):
    x = tuple(data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=30)))
    ell = data.draw(st.integers(1, len(x)))
    assert phi_inverse(phi(x, ell, q), ell, q) == x


def test_duplication_inserts_zero_block():
    # phi of T_{i,l}(x) is phi(x) with 0^l inserted after position i+l (past the prefix)
    for q in (2, 3):
        for n in range(1, 8):
            for ell in range(1, min(n, 3) + 1):
                for x in product(range(q), repeat=n):
                    y = phi(x, ell, q)
                    for i in range(n - ell + 1):
                        z = naive_dup(x, i, ell)
                        k = i + ell
                        assert phi(z, ell, q) == y[:k] + (0,) * ell + y[k:]


def test_zero_run_decompose_worked_example():
    d = zero_run_decompose(letters("054000033100"), 2)
    assert d.prefix == letters("05")
    assert d.blocks == (letters("4"), letters("331"))
    assert d.runs == (0, 4, 2)
    assert reduce_runs_mod(d, 2) == letters("054331")


def naive_runs(tail):
    """Run-length scan: list of (is_zero, length) groups."""
    groups = []
    for c in tail:
        z = c == 0
        if groups and groups[-1][0] == z:
            groups[-1][1] += 1
        else:
            groups.append([z, 1])
    return groups


def test_zero_run_decompose_against_run_length_scan():
    for q in (2, 3):
        for n in range(0, 9):
            for tail in product(range(q), repeat=n):
                for prefix in ((0, 5 % q), (1,)):
                    ell = len(prefix)
                    d = zero_run_decompose(prefix + tail, ell)
                    assert d.reassemble() == prefix + tail
                    assert all(0 not in b and b for b in d.blocks)
                    assert len(d.runs) == len(d.blocks) + 1
                    assert all(m >= 1 for m in d.runs[1:-1])
                    zero_groups = [m for z, m in naive_runs(tail) if z]
                    assert [m for m in d.runs if m] == zero_groups


def test_zero_run_decompose_edge_cases():
    d = zero_run_decompose(letters("0505"), 2)
    assert (d.prefix, d.runs, d.blocks) == (letters("05"), (1, 0), (letters("5"),))
    d = zero_run_decompose((0, 0), 2)
    assert d == ZeroRunDecomposition((0, 0), (), (0,))


def test_reduce_runs_mod_cases():
    d = ZeroRunDecomposition((1, 2), ((1,),), (1, 1))
    assert reduce_runs_mod(d, 2) == d.reassemble()
    d = ZeroRunDecomposition((1, 2), (), (5,))
    assert reduce_runs_mod(d, 2) == (1, 2, 0)


def test_extract_worked_example():
    z = letters("054545421313")
    spans = extract_disjoint_duplications(z, 2, 6)
    assert spans == [FactorSpan(2, 5), FactorSpan(9, 12)]
    assert len(spans) >= math.ceil(3 / 2)


def test_extract_on_duplication_free_word():
    for x in enumerate_code(7, 3, {2}).members:
        assert extract_disjoint_duplications(x, 2, 3) == []


def _check_extraction(z, ell, q, t):
    spans = extract_disjoint_duplications(z, ell, q)
    assert len(spans) >= math.ceil(t / 2)
    for s in spans:
        assert len(s) == 2 * ell
        assert (s.start, ell) in find_squares(z, (ell,))
    for a, b in zip(spans, spans[1:]):
        assert spans_disjoint(a, b)


def test_extraction_bound_exhaustive():
    # every z reachable in exactly t equal-length steps, |x| <= 6, l <= 3, t <= 4
    cases = [(2, n) for n in range(1, 7)] + [(3, n) for n in range(1, 6)]
    for q, n in cases:
        for ell in range(1, min(n, 3) + 1):
            for x in product(range(q), repeat=n):
                level = {x}
                for t in range(1, 5):
                    level = {naive_dup(w, i, ell) for w in level for i in range(len(w) - ell + 1)}
                    for z in level:
                        _check_extraction(z, ell, q, t)


def test_run_reduction_recovers_codewords():
    for q in (2, 3):
        for ell in (1, 2, 3):
            for n in range(ell, 7):
                for x in enumerate_code(n, q, {ell}).members:
                    for z in naive_eq_cone(x, [ell], n + 3 * ell):
                        d = zero_run_decompose(phi(z, ell, q), ell)
                        assert phi_inverse(reduce_runs_mod(d, ell), ell, q) == x
