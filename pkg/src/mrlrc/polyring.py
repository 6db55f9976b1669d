"""Univariate polynomials over F_q.

Coefficients are canonical field integers, low degree first, without trailing
zeros.  "Lexicographic" order everywhere means the order of the integer
encoding sum(c_i * q**i), i.e. compare the leading coefficients first.  That is
the order in which ``find_irreducible`` and ``coprime_family`` enumerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .exceptions import ExhaustedError, FieldError
from .gf import FieldCtx, prime_factors, to_digits


def _trim(cs) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over ``field``; the zero polynomial has no coefficients."""

    field: FieldCtx = field(repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = _trim(self.field.coerce(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_string(cls, F: FieldCtx, text: str) -> "Poly":
        text = text.strip()
        return cls(F, tuple(int(tok) for tok in text.split(",")) if text else ())

    @classmethod
    def x(cls, F: FieldCtx) -> "Poly":
        return cls(F, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.field, _add(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(self.field, _sub(self.field, self.coeffs, other.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(self.field, _mul(self.field, self.coeffs, other.coeffs))

    def __divmod__(self, other: "Poly"):
        qt, rm = _divmod(self.field, self.coeffs, other.coeffs)
        return Poly(self.field, qt), Poly(self.field, rm)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        out = (1,)
        base = self.coeffs
        while e:
            if e & 1:
                out = _mul(self.field, out, base)
            e >>= 1
            if e:
                base = _mul(self.field, base, base)
        return Poly(self.field, out)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


# -- raw coefficient-tuple arithmetic ------------------------------------

def _add(F, a, b):
    n = max(len(a), len(b))
    return _trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def _sub(F, a, b):
    n = max(len(a), len(b))
    return _trim(F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def _mul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _divmod(F, a, b):
    if not b:
        raise FieldError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), _trim(rem)
    lead_inv = F.inv(b[-1])
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        c = F.mul(c, lead_inv)
        quot[k - db] = c
        for j in range(db + 1):
            if b[j]:
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, b[j]))
    return _trim(quot), _trim(rem[:db])


def _mod(F, a, b):
    return _divmod(F, a, b)[1]


def _make_monic(F, a):
    if not a or a[-1] == 1:
        return tuple(a)
    inv = F.inv(a[-1])
    return tuple(F.mul(c, inv) for c in a)


def _gcd(F, a, b):
    while b:
        a, b = b, _mod(F, a, b)
    return _make_monic(F, a)


def _powmod(F, a, e, m):
    out = (1,)
    a = _mod(F, a, m)
    while e:
        if e & 1:
            out = _mod(F, _mul(F, out, a), m)
        e >>= 1
        if e:
            a = _mod(F, _mul(F, a, a), m)
    return out


# -- public operations ---------------------------------------------------

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    return Poly(f.field, _gcd(f.field, f.coeffs, g.coeffs))


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(q^d) = x mod f and gcd(x^(q^(d/s)) - x, f) = 1 for primes s | d."""
    F = f.field
    if f.is_zero():
        raise FieldError("irreducibility of the zero polynomial is undefined")
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    fm = _make_monic(F, f.coeffs)
    q = F.order
    x = (0, 1)

    def x_pow_qk(k):
        cur = x
        for _ in range(k):
            cur = _powmod(F, cur, q, fm)
        return cur

    if _sub(F, x_pow_qk(d), x):
        return False
    for s in prime_factors(d):
        h = _sub(F, x_pow_qk(d // s), x)
        if len(_gcd(F, fm, h)) != 1:
            return False
    return True


def _mobius(n: int) -> int:
    ps = prime_factors(n)
    for p in ps:
        if (n // p) % p == 0:
            return 0
    return -1 if len(ps) % 2 else 1


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def count_irreducible(F: FieldCtx, d: int) -> int:
    """Number of monic irreducible degree-d polynomials over F (Moebius inversion)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = F.order
    total = sum(_mobius(e) * q ** (d // e) for e in divisors(d))
    return total // d


def iter_monic(F: FieldCtx, d: int) -> Iterator[Poly]:
    q = F.order
    for i in range(q**d):
        yield Poly(F, tuple(to_digits(i, q, d)) + (1,))


def iter_irreducible(F: FieldCtx, d: int) -> Iterator[Poly]:
    """Monic irreducibles of degree d in lexicographic (integer-encoding) order."""
    for f in iter_monic(F, d):
        if is_irreducible(f):
            yield f


def find_irreducible(F: FieldCtx, d: int, exclude=()) -> Poly:
    """Smallest monic irreducible of degree d not in ``exclude``."""
    excluded = {tuple(getattr(e, "coeffs", e)) for e in exclude}
    for f in iter_irreducible(F, d):
        if f.coeffs not in excluded:
            return f
    raise ExhaustedError(f"no monic irreducible of degree {d} over {F} outside the exclusion set")


@dataclass(frozen=True)
class CoprimeFamily:
    field: FieldCtx = field(repr=False)
    m: int
    members: tuple[Poly, ...]

    def __len__(self):
        return len(self.members)

    def is_pairwise_coprime(self) -> bool:
        ms = self.members
        return all(
            poly_gcd(ms[i], ms[j]).degree == 0 for i in range(len(ms)) for j in range(i + 1, len(ms))
        )


def coprime_supply(F: FieldCtx, m: int) -> int:
    """How many pairwise-coprime monic degree-m prime powers exist: sum of N_q(d) over d | m."""
    return sum(count_irreducible(F, d) for d in divisors(m))


def iter_coprime_candidates(F: FieldCtx, m: int) -> Iterator[Poly]:
    yield from iter_irreducible(F, m)
    for d in sorted(divisors(m)[:-1], reverse=True):
        for p in iter_irreducible(F, d):
            yield p ** (m // d)


def coprime_family(F: FieldCtx, m: int, g: int) -> CoprimeFamily:
    """g pairwise-coprime monic degree-m polynomials (irreducibles first, then prime powers)."""
    if m < 1 or g < 1:
        raise ValueError("m and g must be positive")
    members = []
    for cand in iter_coprime_candidates(F, m):
        members.append(cand)
        if len(members) == g:
            return CoprimeFamily(F, m, tuple(members))
    raise ExhaustedError(
        f"only {len(members)} pairwise-coprime degree-{m} polynomials over {F}, need {g}"
    )


def poly_mod_inverse(f: Poly, Q: Poly) -> Poly:
    """h with f*h = 1 mod Q and deg h < deg Q (extended Euclid)."""
    F = f.field
    if Q.degree < 1:
        raise FieldError("modulus must have degree >= 1")
    r0, r1 = Q.coeffs, _mod(F, f.coeffs, Q.coeffs)
    s0, s1 = (), (1,)
    while r1:
        qt, rm = _divmod(F, r0, r1)
        r0, r1 = r1, rm
        s0, s1 = s1, _sub(F, s0, _mul(F, qt, s1))
    if len(r0) != 1:
        raise FieldError(f"{f} is not invertible modulo {Q}")
    inv_c = F.inv(r0[0])
    return Poly(F, _mod(F, tuple(F.mul(c, inv_c) for c in s0), Q.coeffs))
