"""Moore matrices over an extension F_l / F_q.

Row k of a Moore matrix is the q^k-th Frobenius power of the first row.  A
square Moore matrix is invertible exactly when its first row is linearly
independent over F_q; ``moore_det_nonzero`` decides this by elimination
over F_l and ``fq_independent`` by brute force over F_q^h, so the two can
check each other.
"""

from __future__ import annotations

import itertools

from .exceptions import CapExceededError
from .gf import ExtFieldCtx
from .linalg import det, rank

ENUM_CAP = 10**6


def _coerce_all(ctx: ExtFieldCtx, elems) -> list[int]:
    return [ctx.coerce(e) for e in elems]


def moore_matrix(ctx: ExtFieldCtx, elems, h: int) -> list[list[int]]:
    """h x len(elems) matrix with entry (k, j) = elems[j] ** (q ** k)."""
    es = _coerce_all(ctx, elems)
    return [[ctx.frobenius(e, k) for e in es] for k in range(h)]


def moore_det_nonzero(ctx: ExtFieldCtx, elems) -> bool:
    es = _coerce_all(ctx, elems)
    return rank(ctx, moore_matrix(ctx, es, len(es))) == len(es)


def moore_rank(ctx: ExtFieldCtx, elems, h: int) -> int:
    return rank(ctx, moore_matrix(ctx, elems, h))


def moore_det(ctx: ExtFieldCtx, elems) -> int:
    es = _coerce_all(ctx, elems)
    return det(ctx, moore_matrix(ctx, es, len(es)))


def moore_det_product(ctx: ExtFieldCtx, elems, cap: int = ENUM_CAP) -> int:
    """Closed-form determinant: product over i of prod_{c in F_q^(i-1)} (c.alpha[:i-1] + alpha_i).

    Enumerates (q^h - 1)/(q - 1) linear forms, so only for tiny sizes.
    """
    es = _coerce_all(ctx, elems)
    q = ctx.q
    total = (q ** len(es) - 1) // (q - 1)
    if total > cap:
        raise CapExceededError(f"{total} factors exceed cap {cap}", needed=total, cap=cap)
    result = 1
    for i, ai in enumerate(es):
        for cs in itertools.product(range(q), repeat=i):
            acc = ai
            for c, aj in zip(cs, es):
                if c:
                    acc = ctx.add(acc, ctx.scale(c, aj))
            result = ctx.mul(result, acc)
    return result


def fq_independent(ctx: ExtFieldCtx, elems, cap: int = ENUM_CAP) -> bool:
    """True iff no nonzero (c_1..c_h) in F_q^h gives sum c_i * elems[i] = 0."""
    es = _coerce_all(ctx, elems)
    q = ctx.q
    if q ** len(es) > cap:
        raise CapExceededError(f"q^h = {q ** len(es)} exceeds cap {cap}", needed=q ** len(es), cap=cap)
    for cs in itertools.product(range(q), repeat=len(es)):
        if not any(cs):
            continue
        acc = 0
        for c, a in zip(cs, es):
            if c:
                acc = ctx.add(acc, ctx.scale(c, a))
        if acc == 0:
            return False
    return True


def fq_rank(ctx: ExtFieldCtx, elems) -> int:
    """Rank over F_q of extension elements, via their coordinate vectors."""
    es = _coerce_all(ctx, elems)
    if not es:
        return 0
    return rank(ctx.base, [ctx.coeffs(e) for e in es])

