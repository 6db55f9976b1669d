import dataclasses
import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import NaiveExt, NaiveField, naive_rank

from mrlrc import (
    CapExceededError,
    ErasurePattern,
    NotAdmissibleError,
    PatternError,
    admissible,
    check_mr_generator,
    check_mr_parity,
    construct,
    decode_erasures,
    encode,
    reduction_check,
)
from mrlrc.linalg import rank
from mrlrc.verify import (
    CAP_ENV,
    count_generator_selections,
    count_parity_patterns,
    is_codeword,
    iter_generator_selections,
    iter_parity_patterns,
    message_positions,
    parity_enumeration_size,
    sample_admissible,
    sample_parity_pattern,
    sample_reduction_selection,
    syndrome,
)


def _with_matrix(code, matrix):
    return dataclasses.replace(code, matrix=matrix, _cache={})


def _brute_maximal_patterns(params):
    size = params.g * params.a + params.h
    out = []
    for E in itertools.combinations(range(params.n), size):
        pat = ErasurePattern.from_positions(E, params.r, params.g)
        if admissible(pat, params) and all(s >= params.a for s in pat.sizes):
            out.append(E)
    return out


# -- patterns -------------------------------------------------------------

def test_pattern_validation():
    with pytest.raises(PatternError):
        ErasurePattern(((0, 0), ()), 4)
    with pytest.raises(PatternError):
        ErasurePattern(((4,), ()), 4)
    with pytest.raises(PatternError):
        ErasurePattern.from_positions([8], 4, 2)
    with pytest.raises(PatternError):
        ErasurePattern.from_pairs(["0-1"], 4, 2)
    with pytest.raises(PatternError):
        ErasurePattern.from_pairs(["2:0"], 4, 2)
    pat = ErasurePattern.from_pairs(["1:3", "0:2", (1, 0)], 4, 2)
    assert pat.groups == ((2,), (0, 3)) and pat.positions == (2, 4, 7)
    assert pat.to_pairs() == ["0:2", "1:0", "1:3"] and len(pat) == 3


def test_admissible_examples(code_8421):
    p = code_8421.params
    assert admissible(ErasurePattern(((0,), (1,)), 4), p)
    assert admissible(ErasurePattern(((0, 1, 2), (3,)), 4), p)  # 3 = 1 + 2, 1 = 1 + 0
    assert not admissible(ErasurePattern(((0, 1, 2, 3), ()), 4), p)  # a + h + 1 in one group
    assert not admissible(ErasurePattern(((0, 1), (0, 1, 2)), 4), p)  # 5 > g*a + h
    with pytest.raises(PatternError):
        admissible(ErasurePattern(((0,),), 4), p)


@pytest.mark.parametrize("shape,expected", [
    ((8, 4, 2, 1), 68), ((9, 3, 2, 1), 108), ((8, 4, 1, 2), 48),
    ((12, 4, 2, 1), 624), ((12, 3, 3, 1), 648),
])
def test_pattern_counts_match_brute_force(shape, expected):
    from mrlrc.construct import LrcParams

    params = LrcParams(*shape, 2, 4)
    listed = list(iter_parity_patterns(params))
    assert len(listed) == len(set(listed)) == count_parity_patterns(params) == expected
    assert sorted(listed) == _brute_maximal_patterns(params)
    assert parity_enumeration_size(params) >= expected


@pytest.mark.parametrize("shape,expected", [((8, 4, 1, 1), 48), ((6, 3, 1, 1), 18), ((8, 4, 1, 2), 48)])
def test_generator_selection_counts(shape, expected):
    from mrlrc.construct import LrcParams

    params = LrcParams(*shape, 2, 4)
    listed = list(iter_generator_selections(params))
    assert listed == sorted(listed)
    brute = [c for c in itertools.combinations(range(params.n), params.k)
             if all(sum(1 for j in c if j // params.r == i) <= params.r - params.a for i in range(params.g))]
    assert listed == brute and count_generator_selections(params) == expected


def test_sampler_is_close_to_uniform(code_8421_small):
    """Chi-square over all 68 maximal patterns; 99.9% critical value for 67 dof is 111.1."""
    p = code_8421_small.params
    rng = np.random.Generator(np.random.PCG64(123))
    counts = {E: 0 for E in iter_parity_patterns(p)}
    N = 68 * 100
    for _ in range(N):
        counts[sample_parity_pattern(p, rng).positions] += 1
    expected = N / len(counts)
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 111.1


# -- MR checks ------------------------------------------------------------

def test_constructed_code_passes_exhaustively(code_8421):
    report = check_mr_parity(code_8421)
    assert report.passed and report.patterns_checked == 68 and report.failures == []


def test_mr_check_agrees_with_independent_rank(code_8421_small):
    c = code_8421_small
    E = NaiveExt(NaiveField(2, (0, 1)), c.Q.coeffs)
    need = c.params.g * c.params.a + c.params.h
    for cols in iter_parity_patterns(c.params):
        sub = [[row[j] for j in cols] for row in c.matrix]
        assert naive_rank(E, sub) == need
    assert check_mr_parity(c).passed


def test_duplicate_heavy_column_is_caught():
    c = construct(8, 4, 2, 0, q=2, m=3)
    M = [list(row) for row in c.matrix]
    for row in M:
        row[1] = row[0]
    report = check_mr_parity(_with_matrix(c, M))
    assert not report.passed
    assert report.failures[0].to_pairs() == ["0:0", "0:1"]  # first pattern in enumeration order
    assert "first witness: 0:0 0:1" in report.summary()


def test_h_zero_code_passes():
    assert check_mr_parity(construct(8, 4, 0, 2, q=3, m=1)).passed


def test_generator_checks():
    c = construct(8, 4, 1, 1, q=2, m=4, form="generator")
    assert check_mr_generator(c).passed
    G = [list(row) for row in c.matrix]
    for row in G:
        row[1] = row[0]
    bad = check_mr_generator(_with_matrix(c, G))
    assert not bad.passed and bad.failure_count > 0
    with pytest.raises(ValueError):
        check_mr_parity(c)
    with pytest.raises(ValueError):
        check_mr_generator(construct(8, 4, 2, 1))


def test_identity_like_generator():
    c = construct(4, 4, 0, 0, q=2, m=4, form="generator")
    assert c.k == 4 and check_mr_generator(c).passed


def test_cap_and_environment(code_8421, monkeypatch):
    with pytest.raises(CapExceededError) as info:
        check_mr_parity(code_8421, cap=10)
    assert info.value.needed == parity_enumeration_size(code_8421.params)
    monkeypatch.setenv(CAP_ENV, "10")
    with pytest.raises(CapExceededError):
        check_mr_parity(code_8421)
    assert check_mr_parity(code_8421, mode="sampled", samples=20).passed


def test_parallel_run_matches_serial():
    c = construct(12, 4, 2, 1)
    M = [list(row) for row in c.matrix]
    for row in M[c.params.g:]:
        row[5] = row[6]
    bad = _with_matrix(c, M)
    serial = check_mr_parity(bad, jobs=1)
    parallel = check_mr_parity(bad, jobs=2)
    assert serial.failure_count == parallel.failure_count > 0
    assert [f.to_pairs() for f in serial.failures] == [f.to_pairs() for f in parallel.failures]


def test_sampled_mode_is_reproducible(code_8421):
    a = check_mr_parity(code_8421, mode="sampled", samples=50, seed=9)
    b = check_mr_parity(code_8421, mode="sampled", samples=50, seed=9)
    assert a.to_dict()["failures"] == b.to_dict()["failures"] and a.patterns_checked == 50
    d = json.loads(a.to_json())
    assert d["seed"] == 9 and d["verdict"] == "pass" and d["total_patterns"] == 68
    with pytest.raises(ValueError):
        check_mr_parity(code_8421, mode="bogus")


def test_sub_patterns_stay_independent(code_8421):
    """Columns of any sub-pattern of a maximal admissible pattern remain independent."""
    c = code_8421
    rng = np.random.default_rng(31)
    for _ in range(200):
        cols = sample_admissible(c.params, rng).positions
        if cols:
            assert rank(c.ext, [[row[j] for j in cols] for row in c.matrix]) == len(cols)


def test_random_perturbation_rate_is_low_over_large_fields(code_8421, code_8421_small):
    """Perturbing one heavy entry at random rarely breaks MR once the extension is large.

    Frozen counts over 20 seeded trials: a random code over F_l is MR with
    probability close to 1, so a single random change is not a reliable
    negative control.  The duplicate-column tests above serve that purpose.
    """
    def failures(code, seed):
        rng = np.random.default_rng(seed)
        p = code.params
        hits = 0
        for _ in range(20):
            M = [list(row) for row in code.matrix]
            row = p.g * p.a + int(rng.integers(0, p.h))
            col = int(rng.integers(0, p.n))
            M[row][col] = int(rng.integers(0, code.ell))
            hits += not check_mr_parity(_with_matrix(code, M)).passed
        return hits

    assert failures(code_8421, 2024) == FROZEN_LARGE
    assert failures(code_8421_small, 2024) == FROZEN_SMALL


FROZEN_LARGE = 0  # l = 4^6
FROZEN_SMALL = 3  # l = 2^6


# -- encoding and decoding ------------------------------------------------

def test_encode_properties(code_8421):
    c = code_8421
    k = c.k
    assert encode(c, [0] * k) == [0] * c.n
    basis = [encode(c, [int(i == j) for j in range(k)]) for i in range(k)]
    assert rank(c.ext, basis) == k
    for w in basis:
        assert not any(syndrome(c, w)) and is_codeword(c, w)
    pos = message_positions(c)
    msg = [5, 17, 300, 4095]
    word = encode(c, msg)
    assert [word[j] for j in pos] == msg
    with pytest.raises(ValueError):
        encode(c, [1, 2])


def test_decode_round_trips(code_8421):
    c = code_8421
    rng = np.random.default_rng(99)
    for _ in range(1000):
        msg = rng.integers(0, c.ell, size=c.k).tolist()
        word = encode(c, msg)
        pat = sample_admissible(c.params, rng)
        damaged = [None if j in set(pat.positions) else x for j, x in enumerate(word)]
        assert decode_erasures(c, damaged) == word


def test_decode_examples(code_8421):
    c = code_8421
    zero = [0] * c.n
    pat = ErasurePattern(((0, 1, 2), (3,)), 4)
    assert decode_erasures(c, zero, pat) == zero
    with pytest.raises(NotAdmissibleError):
        decode_erasures(c, [None] * 4 + [0] * 4)
    with pytest.raises(ValueError):
        decode_erasures(c, [0] * 3)


def test_generator_decode_round_trip():
    c = construct(8, 4, 1, 1, q=2, m=4, form="generator")
    rng = np.random.default_rng(5)
    for _ in range(50):
        msg = rng.integers(0, c.ell, size=c.k).tolist()
        word = encode(c, msg)
        assert is_codeword(c, word)
        pat = sample_admissible(c.params, rng)
        damaged = [None if j in set(pat.positions) else x for j, x in enumerate(word)]
        assert decode_erasures(c, damaged) == word


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_decode_restores_any_sampled_pattern(seed):
    from mrlrc import construct as build_code

    c = build_code(9, 3, 2, 1)
    rng = np.random.default_rng(seed)
    word = encode(c, rng.integers(0, c.ell, size=c.k).tolist())
    pat = sample_parity_pattern(c.params, rng)
    assert decode_erasures(c, word, pat) == word


# -- reduction cross-check -------------------------------------------------

@pytest.mark.parametrize("fixture", ["code_8421", "code_8421_small"])
def test_reduction_agrees_with_full_determinant(fixture, request):
    c = request.getfixturevalue(fixture)
    rng = np.random.default_rng(17)
    for _ in range(50):
        T, S = sample_reduction_selection(c.params, rng)
        res = reduction_check(c, T, S)
        assert res.agree and res.full_nonzero and res.moore_shaped and res.first_row_independent


def test_reduction_detects_singular_selection():
    c = construct(8, 4, 2, 1, q=2, m=3)
    M = [list(row) for row in c.matrix]
    for row in M[c.params.g:]:
        row[2] = row[3]
    bad = _with_matrix(c, M)
    res = reduction_check(bad, [(0,), (0,)], [(2, 3), ()])
    assert res.agree and not res.full_nonzero and not res.reduced_invertible


def test_reduction_input_errors(code_8421):
    with pytest.raises(PatternError):
        reduction_check(code_8421, [(0,)], [(1,)])
    with pytest.raises(PatternError):
        reduction_check(code_8421, [(0,), (0,)], [(0, 1), ()])
