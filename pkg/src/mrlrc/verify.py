"""Maximal-recoverability checks, erasure decoding and encoding.

An erasure pattern is *admissible* when it splits into at most ``a`` erasures
per local group plus at most ``h`` further erasures anywhere.  A parity-check
code is maximally recoverable when the columns of H on every maximal
admissible pattern are linearly independent over F_l; a generator-form code
is checked through its k x k submatrices with at most r - a columns per block.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .construct import LrcParams, MrLrcCode
from .exceptions import CapExceededError, NotAdmissibleError, PatternError, SingularSystemError
from .linalg import det, inverse, matmul, rank, rref, solve
from .moore import fq_independent

DEFAULT_CAP = 10**6
CAP_ENV = "MRLRC_ENUM_CAP"
MAX_WITNESSES = 100


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


# -- patterns --------------------------------------------------------------

@dataclass(frozen=True)
class ErasurePattern:
    """Erased coordinates, stored per group as sorted 0-based indices."""

    groups: tuple[tuple[int, ...], ...]
    r: int

    def __post_init__(self):
        cleaned = []
        for i, grp in enumerate(self.groups):
            idx = tuple(sorted(int(j) for j in grp))
            if len(set(idx)) != len(idx):
                raise PatternError(f"duplicate erasure in group {i}")
            if idx and (idx[0] < 0 or idx[-1] >= self.r):
                raise PatternError(f"index out of range 0..{self.r - 1} in group {i}")
            cleaned.append(idx)
        object.__setattr__(self, "groups", tuple(cleaned))

    @classmethod
    def from_positions(cls, positions, r: int, g: int) -> "ErasurePattern":
        groups = [[] for _ in range(g)]
        for p in positions:
            p = int(p)
            if not 0 <= p < g * r:
                raise PatternError(f"coordinate {p} outside 0..{g * r - 1}")
            groups[p // r].append(p % r)
        return cls(tuple(tuple(x) for x in groups), r)

    @classmethod
    def from_pairs(cls, pairs, r: int, g: int) -> "ErasurePattern":
        """Parse ``group:index`` strings (or (group, index) tuples)."""
        groups = [[] for _ in range(g)]
        for item in pairs:
            if isinstance(item, str):
                try:
                    gi, j = (int(t) for t in item.split(":"))
                except ValueError as exc:
                    raise PatternError(f"bad erasure {item!r}; expected group:index") from exc
            else:
                gi, j = item
            if not 0 <= gi < g:
                raise PatternError(f"group {gi} outside 0..{g - 1}")
            groups[gi].append(j)
        return cls(tuple(tuple(x) for x in groups), r)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(i * self.r + j for i, grp in enumerate(self.groups) for j in grp)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(grp) for grp in self.groups)

    def __len__(self) -> int:
        return sum(self.sizes)

    def to_pairs(self) -> list[str]:
        return [f"{i}:{j}" for i, grp in enumerate(self.groups) for j in grp]


def admissible(pattern: ErasurePattern, params: LrcParams) -> bool:
    """Whether the erasures fit in a per group plus h extra."""
    if pattern.r != params.r or len(pattern.groups) != params.g:
        raise PatternError(
            f"pattern shape (g={len(pattern.groups)}, r={pattern.r}) does not match "
            f"(g={params.g}, r={params.r})"
        )
    excess = sum(max(s - params.a, 0) for s in pattern.sizes)
    return excess <= params.h and len(pattern) <= params.g * params.a + params.h


# -- counting and sampling of bounded compositions --------------------------

def _composition_table(g: int, r: int, lo: int, hi: int, total: int) -> list[list[int]]:
    """ways[i][t]: weighted count of choices for groups i.. erasing t coordinates.

    Each group erases between lo and hi of its r coordinates, and a group
    erasing c contributes C(r, c) choices.
    """
    ways = [[0] * (total + 1) for _ in range(g + 1)]
    ways[g][0] = 1
    for i in range(g - 1, -1, -1):
        for t in range(total + 1):
            ways[i][t] = sum(
                math.comb(r, c) * ways[i + 1][t - c] for c in range(lo, min(hi, t) + 1)
            )
    return ways


def count_parity_patterns(params: LrcParams) -> int:
    """Number of distinct maximal admissible erased sets."""
    p = params
    return _composition_table(p.g, p.r, p.a, p.r, p.g * p.a + p.h)[0][p.g * p.a + p.h]


def parity_enumeration_size(params: LrcParams) -> int:
    """Raw (T, S) pairs visited by the exhaustive enumeration: C(r,a)^g * C(n - ga, h)."""
    p = params
    return math.comb(p.r, p.a) ** p.g * math.comb(p.n - p.g * p.a, p.h)


def count_generator_selections(params: LrcParams) -> int:
    p = params
    return _composition_table(p.g, p.r, 0, p.r - p.a, p.k)[0][p.k]


def _randbelow(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n) for arbitrarily large n (rejection on random bits)."""
    if n < 2**62:
        return int(rng.integers(0, n))
    bits = n.bit_length()
    while True:
        x = int.from_bytes(rng.bytes((bits + 7) // 8), "little") >> (-bits % 8)
        if x < n:
            return x


def _sample_bounded(rng: np.random.Generator, g: int, r: int, lo: int, hi: int, total: int):
    """Uniform random erased set among those with lo..hi per group and the given size."""
    ways = _composition_table(g, r, lo, hi, total)
    if ways[0][total] == 0:
        raise PatternError("empty pattern space")
    groups = []
    t = total
    for i in range(g):
        weights = [
            math.comb(r, c) * ways[i + 1][t - c] if c <= t else 0 for c in range(lo, hi + 1)
        ]
        pick = _randbelow(rng, ways[i][t])
        c = lo
        for w in weights:
            if pick < w:
                break
            pick -= w
            c += 1
        groups.append(tuple(sorted(int(x) for x in rng.choice(r, size=c, replace=False))))
        t -= c
    return tuple(groups)


def sample_parity_pattern(params: LrcParams, rng: np.random.Generator) -> ErasurePattern:
    p = params
    return ErasurePattern(_sample_bounded(rng, p.g, p.r, p.a, p.r, p.g * p.a + p.h), p.r)


def sample_generator_selection(params: LrcParams, rng: np.random.Generator) -> ErasurePattern:
    p = params
    return ErasurePattern(_sample_bounded(rng, p.g, p.r, 0, p.r - p.a, p.k), p.r)


def sample_admissible(params: LrcParams, rng: np.random.Generator) -> ErasurePattern:
    """Random admissible pattern of any size: a random subset of a random maximal one."""
    full = sample_parity_pattern(params, rng).positions
    size = int(rng.integers(0, len(full) + 1))
    keep = rng.choice(len(full), size=size, replace=False) if size else []
    return ErasurePattern.from_positions([full[i] for i in keep], params.r, params.g)


def iter_parity_patterns(params: LrcParams):
    """Distinct maximal admissible patterns: T_1..T_g lexicographically, then the h-subsets S."""
    p = params
    n, r = p.n, p.r
    seen = set()
    per_group = [list(itertools.combinations(range(r), p.a)) for _ in range(p.g)]
    for ts in itertools.product(*per_group):
        taken = {i * r + j for i, t in enumerate(ts) for j in t}
        rest = [c for c in range(n) if c not in taken]
        for extra in itertools.combinations(rest, p.h):
            erased = tuple(sorted(taken.union(extra)))
            if erased in seen:
                continue
            seen.add(erased)
            yield erased


def iter_generator_selections(params: LrcParams):
    """k-subsets of coordinates with at most r - a per block, in lexicographic order."""
    p = params
    n, r, k, cap = p.n, p.r, p.k, p.r - p.a
    counts = [0] * p.g
    chosen: list[int] = []

    def rec(start):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for j in range(start, n - (k - len(chosen)) + 1):
            b = j // r
            if counts[b] < cap:
                counts[b] += 1
                chosen.append(j)
                yield from rec(j + 1)
                chosen.pop()
                counts[b] -= 1

    yield from rec(0)


# -- reports ---------------------------------------------------------------

@dataclass
class VerifyReport:
    kind: str
    mode: str
    patterns_checked: int
    failures: list[ErasurePattern] = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0
    seed: int | None = None
    samples: int | None = None
    total_patterns: int | None = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode,
            "seed": self.seed,
            "samples": self.samples,
            "total_patterns": self.total_patterns,
            "patterns_checked": self.patterns_checked,
            "failure_count": self.failure_count,
            "failures": [f.to_pairs() for f in self.failures],
            "elapsed_seconds": round(self.elapsed, 6),
            "verdict": "pass" if self.passed else "fail",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = f", seed={self.seed}" if self.mode == "sampled" else ""
        s = (f"{verdict}: {self.kind} check, {self.mode}{extra}; "
             f"{self.patterns_checked} patterns, {self.failure_count} failures, {self.elapsed:.2f}s")
        if self.failures:
            s += f"\nfirst witness: {' '.join(self.failures[0].to_pairs())}"
        return s


def _columns_full_rank(F, matrix, cols, need: int) -> bool:
    return rank(F, [[row[j] for j in cols] for row in matrix]) == need


def _check_chunk(args):
    """Worker: indices (within the chunk) of column sets that are rank-deficient."""
    F, matrix, selections, need = args
    return [idx for idx, cols in enumerate(selections) if not _columns_full_rank(F, matrix, cols, need)]


def _run_checks(code: MrLrcCode, selections, need: int, jobs: int):
    """Failing selections in input order; parallel chunks keep that order."""
    F, H = code.ext, code.matrix
    if jobs <= 1:
        return [s for s in selections if not _columns_full_rank(F, H, s, need)]
    selections = list(selections)
    size = max(1, math.ceil(len(selections) / (jobs * 4)))
    chunks = [selections[i:i + size] for i in range(0, len(selections), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(_check_chunk, [(F, H, c, need) for c in chunks])
        return [chunk[i] for chunk, bad in zip(chunks, results) for i in bad]


def _verify(code, kind, need, mode, cap, samples, seed, jobs, count, enum_size, iterate, sample):
    p = code.params
    cap = default_cap() if cap is None else cap
    start = time.perf_counter()
    if count == 0:
        raise PatternError("empty pattern space")
    if mode == "exhaustive":
        if enum_size > cap:
            raise CapExceededError(
                f"exhaustive {kind} check needs {enum_size} enumerations, cap is {cap}",
                needed=enum_size, cap=cap,
            )
        selections = iterate(p)
        report = VerifyReport(kind, "exhaustive", 0, total_patterns=count)
    elif mode == "sampled":
        rng = np.random.Generator(np.random.PCG64(seed))
        selections = [sample(p, rng).positions for _ in range(samples)]
        report = VerifyReport(kind, "sampled", 0, seed=seed, samples=samples, total_patterns=count)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    selections = list(selections)
    bad = _run_checks(code, selections, need, jobs)
    report.patterns_checked = len(selections)
    report.failure_count = len(bad)
    report.failures = [ErasurePattern.from_positions(b, p.r, p.g) for b in bad[:MAX_WITNESSES]]
    report.elapsed = time.perf_counter() - start
    return report


def check_mr_parity(code: MrLrcCode, mode: str = "exhaustive", cap: int | None = None,
                    samples: int = 1000, seed: int = 0, jobs: int = 1) -> VerifyReport:
    """Rank of H on every maximal admissible pattern (or a seeded sample of them)."""
    if code.form != "parity":
        raise ValueError("check_mr_parity needs a parity-check form code")
    p = code.params
    return _verify(code, "parity", p.g * p.a + p.h, mode, cap, samples, seed, jobs,
                   count_parity_patterns(p), parity_enumeration_size(p),
                   iter_parity_patterns, sample_parity_pattern)


def check_mr_generator(code: MrLrcCode, mode: str = "exhaustive", cap: int | None = None,
                       samples: int = 1000, seed: int = 0, jobs: int = 1) -> VerifyReport:
    """Invertibility of every k x k submatrix of G with at most r - a columns per block."""
    if code.form != "generator":
        raise ValueError("check_mr_generator needs a generator form code")
    p = code.params
    count = count_generator_selections(p)
    return _verify(code, "generator", p.k, mode, cap, samples, seed, jobs, count, count,
                   iter_generator_selections, sample_generator_selection)


# -- encoding and decoding -------------------------------------------------

def _systematic(code: MrLrcCode):
    """(RREF of H, pivot columns, message columns), cached on the code."""
    cached = code._cache.get("systematic")
    if cached is None:
        R, piv = rref(code.ext, code.matrix, ncols=code.n)
        if len(piv) != len(code.matrix):
            raise SingularSystemError(f"H has rank {len(piv)} < {len(code.matrix)} rows")
        free = [j for j in range(code.n) if j not in set(piv)]
        cached = code._cache["systematic"] = (R, piv, free)
    return cached


def message_positions(code: MrLrcCode) -> list[int]:
    """Coordinates that carry the message verbatim (parity form)."""
    return list(_systematic(code)[2])


def encode(code: MrLrcCode, message) -> list[int]:
    """Codeword for k message symbols in F_l.

    Parity form is systematic on ``message_positions``; generator form
    returns message * G.
    """
    F = code.ext
    msg = [F.coerce(x) for x in message]
    if len(msg) != code.k:
        raise ValueError(f"message must have k={code.k} symbols, got {len(msg)}")
    if code.form == "generator":
        G = code.matrix
        return [_dot(F, msg, [row[j] for row in G]) for j in range(code.n)]
    R, piv, free = _systematic(code)
    word = [0] * code.n
    for j, x in zip(free, msg):
        word[j] = x
    for i, pc in enumerate(piv):
        word[pc] = F.neg(_dot(F, [R[i][j] for j in free], msg))
    return word


def _dot(F, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def syndrome(code: MrLrcCode, word) -> list[int]:
    F = code.ext
    w = [F.coerce(x) for x in word]
    return [_dot(F, row, w) for row in code.matrix]


def is_codeword(code: MrLrcCode, word) -> bool:
    if code.form == "parity":
        return not any(syndrome(code, word))
    F = code.ext
    try:
        solve(F, [[row[j] for row in code.matrix] for j in range(code.n)], [F.coerce(x) for x in word])
    except SingularSystemError:
        return False
    return True


def decode_erasures(code: MrLrcCode, word, erased=None) -> list[int]:
    """Fill in erased coordinates (marked None, or listed in ``erased``).

    Raises NotAdmissibleError for patterns outside the correctable set and
    SingularSystemError if the surviving symbols do not determine a codeword.
    """
    F = code.ext
    p = code.params
    word = list(word)
    if len(word) != code.n:
        raise ValueError(f"word must have n={code.n} symbols, got {len(word)}")
    if erased is None:
        erased = [j for j, x in enumerate(word) if x is None]
    pattern = erased if isinstance(erased, ErasurePattern) else ErasurePattern.from_positions(erased, p.r, p.g)
    if not admissible(pattern, p):
        raise NotAdmissibleError(f"erasures {pattern.to_pairs()} are not correctable")
    E = list(pattern.positions)
    Eset = set(E)
    known = [j for j in range(code.n) if j not in Eset]
    vals = {j: F.coerce(word[j]) for j in known}
    out = [vals.get(j, 0) for j in range(code.n)]
    if code.form == "generator":
        G = code.matrix
        A = [[row[j] for row in G] for j in known]
        msg = solve(F, A, [vals[j] for j in known])
        return encode(code, msg)
    if not E:
        if any(syndrome(code, out)):
            raise SingularSystemError("word is not a codeword")
        return out
    H = code.matrix
    rhs = [F.neg(_dot(F, [row[j] for j in known], [vals[j] for j in known])) for row in H]
    x = solve(F, [[row[j] for j in E] for row in H], rhs)
    for j, v in zip(E, x):
        out[j] = v
    return out


# -- Moore reduction cross-check --------------------------------------------

@dataclass(frozen=True)
class ReductionResult:
    full_nonzero: bool
    reduced_invertible: bool
    moore_shaped: bool
    first_row_independent: bool | None

    @property
    def agree(self) -> bool:
        return self.full_nonzero == self.reduced_invertible


def reduced_heavy_matrix(code: MrLrcCode, T, S) -> list[list[int]]:
    """h x h matrix with group blocks L_i - K_i M_i^{-1} N_i.

    K_i, L_i are the heavy rows on T_i, S_i; M_i, N_i the local rows on T_i, S_i.
    Eliminating the local rows from the (ga+h)-column selection leaves this
    matrix, so the two are invertible together.
    """
    p = code.params
    F, Fq = code.ext, code.base
    heavy = code.heavy_rows()
    A = code.a_block.rows if code.a_block is not None else ()
    cols: list[list[int]] = [[] for _ in range(p.h)]
    for i in range(p.g):
        s_i = list(S[i])
        if not s_i:
            continue
        off = i * p.r
        L = [[row[off + j] for j in s_i] for row in heavy]
        if p.a:
            t_i = list(T[i])
            M = [[arow[j] for j in t_i] for arow in A]
            N = [[arow[j] for j in s_i] for arow in A]
            MinvN = matmul(Fq, inverse(Fq, M), N)  # entries of F_q embed unchanged in F_l
            K = [[row[off + j] for j in t_i] for row in heavy]
            KMN = matmul(F, K, MinvN)
            L = [[F.sub(x, y) for x, y in zip(lr, kr)] for lr, kr in zip(L, KMN)]
        for k in range(p.h):
            cols[k].extend(L[k])
    return cols


def reduction_check(code: MrLrcCode, T, S, fq_cap: int = 10**6) -> ReductionResult:
    """Compare the full determinant on T u S with the reduced heavy matrix."""
    p = code.params
    if code.form != "parity" or p.h == 0:
        raise ValueError("reduction check needs a parity form code with h > 0")
    if len(T) != p.g or len(S) != p.g:
        raise PatternError("T and S need one entry per group")
    if any(len(t) != p.a for t in T) or sum(len(s) for s in S) != p.h:
        raise PatternError(f"need |T_i| = {p.a} and sum |S_i| = {p.h}")
    if any(set(t) & set(s) for t, s in zip(T, S)):
        raise PatternError("T_i and S_i must be disjoint")
    F = code.ext
    cols = sorted(i * p.r + j for i in range(p.g) for j in list(T[i]) + list(S[i]))
    full = det(F, [[row[j] for j in cols] for row in code.matrix]) != 0
    red = reduced_heavy_matrix(code, T, S)
    reduced = rank(F, red) == p.h
    shaped = all(red[k] == [F.frobenius(x, k) for x in red[0]] for k in range(p.h))
    try:
        indep = fq_independent(F, red[0], cap=fq_cap)
    except CapExceededError:
        indep = None
    return ReductionResult(full, reduced, shaped, indep)


def sample_reduction_selection(params: LrcParams, rng: np.random.Generator):
    """Random (T, S): a-subsets per group, then h further coordinates anywhere."""
    p = params
    T = [tuple(sorted(int(x) for x in rng.choice(p.r, size=p.a, replace=False))) for _ in range(p.g)]
    taken = {i * p.r + j for i, t in enumerate(T) for j in t}
    rest = [c for c in range(p.n) if c not in taken]
    extra = sorted(rest[int(x)] for x in rng.choice(len(rest), size=p.h, replace=False))
    S = [tuple(c % p.r for c in extra if c // p.r == i) for i in range(p.g)]
    return T, S
