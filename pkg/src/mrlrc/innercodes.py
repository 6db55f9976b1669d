"""Per-group ingredient codes over F_q.

* ``vandermonde_mds``: generator of an [r, a] MDS code, used for the local
  parity blocks.
* independent families: r vectors of F_q^m any s of which are linearly
  independent (the columns of a parity-check matrix of an [r, r-m, >= s+1]
  code).  When m >= r the standard basis suffices; below that the columns
  come from Vandermonde parity checks (r <= q+1) or from shortened extended
  binary BCH codes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CapExceededError, ConstructionError
from .gf import FieldCtx, field_make
from .linalg import nullspace, rank
from .polyring import Poly

ENUM_CAP = 10**6


@dataclass(frozen=True)
class MatrixFq:
    field: FieldCtx = field(repr=False)
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, F, rows):
        return cls(F, tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class IndependentFamily:
    """r column vectors in F_q^m, any ``s`` of which are linearly independent."""

    field: FieldCtx = field(repr=False)
    m: int
    r: int
    s: int
    columns: tuple[tuple[int, ...], ...]
    route: str = "manual"

    def as_matrix(self) -> list[list[int]]:
        """The m x r matrix having the family as columns."""
        return [[c[i] for c in self.columns] for i in range(self.m)]


def evaluation_points(F: FieldCtx, count: int) -> list[int]:
    """0, 1, alpha, alpha^2, ... for the field's primitive element alpha."""
    count = min(count, F.order)
    pts = [0]
    x = 1
    while len(pts) < count:
        pts.append(x)
        x = F.mul(x, F.primitive_element)
    return pts


def vandermonde_mds(F: FieldCtx, r: int, a: int) -> MatrixFq:
    """a x r generator matrix of an [r, a] MDS code (extended when r = q+1)."""
    if a < 0 or a > r:
        raise ConstructionError(f"need 0 <= a <= r, got a={a}, r={r}")
    if a == 0:
        return MatrixFq(F, ())
    if a == 1:
        # the repetition code is MDS over every field, whatever r is
        return MatrixFq(F, ((1,) * r,))
    if r > F.order + 1:
        raise ConstructionError(f"no Vandermonde [r={r}, a={a}] MDS code over F_{F.order}")
    pts = evaluation_points(F, r)
    rows = [[F.pow(x, i) for x in pts] for i in range(a)]
    if r == F.order + 1:
        for i, row in enumerate(rows):
            row.append(1 if i == a - 1 else 0)
    return MatrixFq.from_rows(F, rows)


def identity_family(F: FieldCtx, m: int, r: int) -> IndependentFamily:
    if m < r:
        raise ConstructionError(f"identity family needs m >= r, got m={m}, r={r}")
    cols = tuple(tuple(1 if i == j else 0 for i in range(m)) for j in range(r))
    return IndependentFamily(F, m, r, r, cols, route="identity")


def mds_family(F: FieldCtx, m: int, r: int) -> IndependentFamily:
    """Columns of an m x r Vandermonde parity-check matrix: any m are independent."""
    if r > F.order + 1:
        raise ConstructionError(f"MDS family needs r <= q+1, got r={r}, q={F.order}")
    if not 1 <= m <= r:
        raise ConstructionError(f"MDS family needs 1 <= m <= r, got m={m}, r={r}")
    V = vandermonde_mds(F, r, m)
    return IndependentFamily(F, m, r, m, tuple(V.column(j) for j in range(r)), route="mds")


def bch_redundancy(r: int, d: int) -> int:
    """floor((d-1)/2) * ceil(log2 r) + 1."""
    return (d - 1) // 2 * math.ceil(math.log2(r)) + 1


def _cyclotomic_cosets(n: int) -> list[list[int]]:
    seen = set()
    cosets = []
    for i in range(n):
        if i in seen:
            continue
        c = []
        j = i
        while j not in c:
            c.append(j)
            j = 2 * j % n
        seen.update(c)
        cosets.append(c)
    return cosets


def bch_generator(t: int, d: int) -> Poly:
    """Generator of the narrow-sense binary BCH code of length 2^t - 1 with zeros alpha..alpha^(d-2)."""
    n = 2**t - 1
    F2 = field_make(2, 1)
    K = field_make(2, t)
    alpha = K.primitive_element
    wanted = {w % n for w in range(1, d - 1)}
    g = Poly(F2, (1,))
    for coset in _cyclotomic_cosets(n):
        if not wanted.intersection(coset):
            continue
        mp = Poly(K, (1,))
        for j in coset:
            mp = mp * Poly(K, (K.neg(K.pow(alpha, j)), 1))
        if any(c > 1 for c in mp.coeffs):
            raise ConstructionError("minimal polynomial left F_2")  # pragma: no cover
        g = g * Poly(F2, mp.coeffs)
    return g


def bch_family(r: int, d: int, m: int | None = None) -> IndependentFamily:
    """r columns in F_2^m (m from the BCH redundancy bound), any d-1 independent.

    Built from the parity-check matrix of the extended BCH code of length
    2^t, t = ceil(log2 r), keeping the first r columns.  Rows are zero-padded
    up to ``m`` (default: the bound itself).
    """
    if r < 2 or d < 2:
        raise ConstructionError("bch_family needs r >= 2 and d >= 2")
    bound = bch_redundancy(r, d)
    if bound >= r:
        raise ConstructionError(f"BCH route gives m={bound} >= r={r}; use the identity family")
    m = bound if m is None else m
    if m < bound:
        raise ConstructionError(f"BCH family needs dimension {bound}, got {m}")
    t = math.ceil(math.log2(r))
    n = 2**t - 1
    F2 = field_make(2, 1)
    g = bch_generator(t, d)
    k0 = n - g.degree
    gen = []
    for i in range(k0):
        row = [0] * i + list(g.coeffs) + [0] * (n - g.degree - 1 - i)
        gen.append(row + [sum(row) % 2])
    if gen:
        H = nullspace(F2, gen, n + 1)
    else:
        H = [[1 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    H = [row[:r] for row in H]
    H += [[0] * r for _ in range(m - len(H))]
    cols = tuple(tuple(H[i][j] for i in range(m)) for j in range(r))
    return IndependentFamily(F2, m, r, d - 1, cols, route="bch")


def family_route(q: int, m: int, r: int, s: int) -> str | None:
    """Name of the route ``family_dispatch`` would take, or None if none applies."""
    s = min(s, r)
    if m >= r:
        return "identity"
    if r <= q + 1 and s <= m:
        return "mds"
    if q == 2 and r >= 2 and s + 1 >= 2:
        b = bch_redundancy(r, s + 1)
        if b <= m and b < r:
            return "bch"
    return None


def family_dispatch(F: FieldCtx, m: int, r: int, s: int) -> IndependentFamily:
    """An independent family of strength >= min(s, r) in dimension exactly m."""
    route = family_route(F.order, m, r, s)
    if route == "identity":
        return identity_family(F, m, r)
    if route == "mds":
        return mds_family(F, m, r)
    if route == "bch":
        fam = bch_family(r, min(s, r) + 1, m=m)
        return IndependentFamily(F, m, r, fam.s, fam.columns, route="bch")
    raise ConstructionError(f"no family of {r} vectors in F_{F.order}^{m} with strength {s}")


def verify_family(fam: IndependentFamily, cap: int = ENUM_CAP) -> bool:
    """Exhaustively check that every min(s, r)-subset of columns has full rank."""
    s = min(fam.s, fam.r)
    count = math.comb(fam.r, s)
    if count > cap:
        raise CapExceededError(f"{count} subsets exceed cap {cap}", needed=count, cap=cap)
    if s > fam.m:
        return False
    for idx in itertools.combinations(range(fam.r), s):
        if rank(fam.field, [fam.columns[j] for j in idx]) < s:
            return False
    return True


def _min_distance_codewords(F, rows):
    """Enumerate all q^k codewords; numpy XOR path in characteristic 2."""
    k = len(rows)
    n = len(rows[0])
    q = F.order
    if F.p == 2:
        words = np.zeros((1, n), dtype=np.int64)
        for row in rows:
            scaled = np.array([[F.mul(c, x) for x in row] for c in range(q)], dtype=np.int64)
            words = (words[None, :, :] ^ scaled[:, None, :]).reshape(-1, n)
        weights = np.count_nonzero(words[1:], axis=1)
        return int(weights.min())
    best = n + 1
    for msg in itertools.product(range(q), repeat=k):
        if not any(msg):
            continue
        w = 0
        for j in range(n):
            acc = 0
            for c, row in zip(msg, rows):
                if c and row[j]:
                    acc = F.add(acc, F.mul(c, row[j]))
            w += acc != 0
        best = min(best, w)
    return best


def _min_distance_supports(F, rows):
    """d = n - max{|Z| : rank(G restricted to Z) < k}, scanning column subsets."""
    k = len(rows)
    n = len(rows[0])
    for z in range(n, -1, -1):
        for Z in itertools.combinations(range(n), z):
            sub = [[row[j] for j in Z] for row in rows]
            if rank(F, sub) < k:
                return n - z
    return 0  # pragma: no cover


def brute_min_distance(generator, cap: int = ENUM_CAP, field=None) -> int:
    """Minimum Hamming weight of a nonzero codeword, by exhaustive search.

    Codewords are enumerated when q^k <= cap; otherwise every column subset
    is scanned for a vanishing codeword (2^n <= cap required).
    """
    if isinstance(generator, MatrixFq):
        F, rows = generator.field, [list(r) for r in generator.rows]
    else:
        F, rows = field, [list(r) for r in generator]
    k = len(rows)
    if k == 0:
        raise ValueError("empty generator matrix")
    if rank(F, rows) < k:
        return 0
    if F.order**k <= cap:
        return _min_distance_codewords(F, rows)
    n = len(rows[0])
    if 2**n <= cap:
        return _min_distance_supports(F, rows)
    raise CapExceededError(f"min distance search over q^k={F.order**k} words exceeds cap {cap}")
