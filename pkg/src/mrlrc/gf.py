"""Finite field arithmetic for the tower F_p <= F_q <= F_l.

Every element is stored as a canonical non-negative integer.  For the base
field F_q = F_p[y]/(modulus) the integer is sum(b_j * p**j) over the F_p
coordinates; for an extension F_l = F_q[x]/(Q) it is sum(c_i * q**i) over the
F_q coordinates.  Since q**i = p**(t*i), the base-p digits of an extension
element are again its F_p coordinates, so addition is digit-wise mod p at
both levels (plain XOR in characteristic 2).

Fields of size <= TABLE_LIMIT get log/antilog (and Zech, for odd p) tables;
larger fields fall back to polynomial arithmetic.
"""

from __future__ import annotations

import math
from functools import cached_property

from .exceptions import CapExceededError, ContextMismatchError, FieldError

FIELD_CAP = 2**20
TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, t)`` with ``q == p**t``."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = ps[0]
    t = round(math.log(q, p))
    while p**t < q:
        t += 1
    while p**t > q:
        t -= 1
    return p, t


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(prime_factors(q)) == 1


def to_digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, d = divmod(x, base)
        out.append(d)
    return out


def from_digits(digits, base: int) -> int:
    x = 0
    for d in reversed(digits):
        x = x * base + d
    return x


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _clmod(a: int, mod: int, deg: int) -> int:
    while a.bit_length() > deg:
        a ^= mod << (a.bit_length() - 1 - deg)
    return a


class FieldElem:
    """A field element bound to its context; supports the usual operators."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: "_Field", value: int):
        self.ctx = ctx
        self.value = ctx.coerce(value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other.value
        if isinstance(other, int):
            return self.ctx.coerce(other)
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElem":
        return FieldElem(self.ctx, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.pow(self.value, e))

    def inv(self) -> "FieldElem":
        return self._wrap(self.ctx.inv(self.value))

    def frobenius(self, k: int = 1) -> "FieldElem":
        return self._wrap(self.ctx.frobenius(self.value, k))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElem({self.value} in {self.ctx})"


class _Field:
    """Shared arithmetic for FieldCtx and ExtFieldCtx (integer-encoded elements)."""

    p: int
    order: int
    _ndigits: int  # number of base-p digits of an element

    zero = 0
    one = 1

    def _init_tables(self, table_limit: int) -> None:
        self._exp = None
        self._log = None
        self._zech = None
        if self.order <= table_limit:
            self._build_tables()

    # -- subclass hooks -------------------------------------------------
    def _mul_slow(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _key(self):
        raise NotImplementedError

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("_frob_cache", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._frob_cache = {}

    # -- element helpers ------------------------------------------------
    def coerce(self, x) -> int:
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise ContextMismatchError(f"element of {x.ctx} used in {self}")
            return x.value
        if isinstance(x, bool) or not isinstance(x, int):
            try:
                x = int(x)
            except (TypeError, ValueError):
                raise FieldError(f"cannot interpret {x!r} as an element of {self}") from None
        if not 0 <= x < self.order:
            raise FieldError(f"{x} is not a canonical encoding in {self} (order {self.order})")
        return x

    def elem(self, x) -> FieldElem:
        return FieldElem(self, x)

    def elements(self):
        return range(self.order)

    @property
    def has_tables(self) -> bool:
        return self._log is not None

    # -- arithmetic -----------------------------------------------------
    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        scale = 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * scale
            scale *= p
        return out

    def _neg_digits(self, a: int) -> int:
        p = self.p
        out = 0
        scale = 1
        while a:
            a, d = divmod(a, p)
            out += ((-d) % p) * scale
            scale *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        if self._zech is not None:
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % (self.order - 1)]
            return 0 if z < 0 else self._exp[la + z]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self._log is not None:
            return self._exp[self._log[a] + (self.order - 1) // 2]
        return self._neg_digits(a)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return result

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not a:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._pow_slow(a, e % (self.order - 1))

    def inv(self, a: int) -> int:
        if not a:
            raise FieldError(f"inverse of zero in {self}")
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        return self._pow_slow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- multiplicative structure ---------------------------------------
    def _is_generator(self, g: int) -> bool:
        n = self.order - 1
        return all(self._pow_slow(g, n // f) != 1 for f in prime_factors(n))

    @cached_property
    def primitive_element(self) -> int:
        """Smallest encoding that generates the multiplicative group."""
        if self._log is not None:
            return self._exp[1] if self.order > 2 else 1
        if self.order == 2:
            return 1
        for g in range(2, self.order):
            if self._is_generator(g):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> None:
        n = self.order - 1
        g = 1
        if self.order > 2:
            g = next(c for c in range(2, self.order) if self._is_generator(c))
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        if self.p != 2:
            zech = [0] * n
            for i in range(n):
                s = self._add_digits(exp[i], 1)
                zech[i] = log[s] if s else -1
            self._zech = zech


class FieldCtx(_Field):
    """F_q = F_p[y]/(modulus), q = p**t."""

    def __init__(self, p: int, t: int, modulus, table_limit: int = TABLE_LIMIT):
        modulus = tuple(int(c) for c in modulus)
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if t < 1 or len(modulus) != t + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {t}")
        self.p = p
        self.t = t
        self.modulus = modulus
        self.q = self.order = p**t
        self._ndigits = t
        self._mod_int = from_digits(modulus, 2) if p == 2 else None
        self._frob_cache = {}
        self._init_tables(table_limit)

    def _key(self):
        return ("F", self.p, self.modulus)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, t={self.t})" if self.t > 1 else f"FieldCtx(p={self.p})"

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(to_digits(a, self.p, self.t))

    def from_coeffs(self, cs) -> int:
        return from_digits(cs, self.p)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p ** k), the Frobenius of F_q over its prime field."""
        a = self.coerce(a)
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, k, self.q - 1))

    def _mul_slow(self, a: int, b: int) -> int:
        p, t = self.p, self.t
        if t == 1:
            return a * b % p
        if p == 2:
            return _clmod(_clmul(a, b), self._mod_int, t)
        da = to_digits(a, p, t)
        db = to_digits(b, p, t)
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(2 * t - 2, t - 1, -1):
            c = prod[k]
            if c:
                for j in range(t):
                    prod[k - t + j] = (prod[k - t + j] - c * mod[j]) % p
                prod[k] = 0
        return from_digits(prod[:t], p)


class ExtFieldCtx(_Field):
    """F_l = F_q[x]/(Q) layered over a FieldCtx; l = q**D."""

    def __init__(self, base: FieldCtx, Q, table_limit: int = TABLE_LIMIT, check: bool = True):
        Q = tuple(int(c) for c in Q)
        if len(Q) < 2 or Q[-1] != 1:
            raise FieldError(f"extension polynomial {Q} is not monic of degree >= 1")
        if check:
            from .polyring import Poly, is_irreducible

            if not is_irreducible(Poly(base, Q)):
                raise FieldError(f"extension polynomial {Q} is reducible over {base}")
        self.base = base
        self.Q = Q
        self.D = len(Q) - 1
        self.p = base.p
        self.q = base.q
        self.ell = self.order = base.q**self.D
        self._ndigits = base.t * self.D
        self._Q_int = from_digits(Q, 2) if base.q == 2 else None
        self._frob_cache = {}
        self._init_tables(table_limit)

    def _key(self):
        return ("E", self.base._key(), self.Q)

    def __repr__(self):
        return f"ExtFieldCtx(q={self.q}, D={self.D})"

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(to_digits(a, self.q, self.D))

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.D:
            raise FieldError("too many coefficients for the extension")
        return from_digits(cs, self.q)

    def embed(self, c: int) -> int:
        """Image of a base-field element: the constant polynomial, same integer."""
        return self.base.coerce(c)

    def _mul_slow(self, a: int, b: int) -> int:
        if self._Q_int is not None:
            return _clmod(_clmul(a, b), self._Q_int, self.D)
        F, D, Q = self.base, self.D, self.Q
        da = self.coeffs(a)
        db = self.coeffs(b)
        prod = [0] * (2 * D - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        for k in range(2 * D - 2, D - 1, -1):
            c = prod[k]
            if c:
                for j in range(D):
                    if Q[j]:
                        prod[k - D + j] = F.sub(prod[k - D + j], F.mul(c, Q[j]))
                prod[k] = 0
        return from_digits(prod[:D], self.q)

    def scale(self, c: int, a: int) -> int:
        """Multiply extension element ``a`` by base element ``c`` coefficient-wise."""
        if not c or not a:
            return 0
        if c == 1:
            return a
        F = self.base
        return from_digits([F.mul(c, x) for x in self.coeffs(a)], self.q)

    def _frob_images(self, k: int) -> list[int]:
        # images of x**i under z -> z**(q**k): the columns of the F_q-linear map
        if k not in self._frob_cache:
            xq = self._pow_slow(self.q, pow(self.q, k, self.order - 1))  # x is encoded as q
            images = [1]
            for _ in range(1, self.D):
                images.append(self._mul_slow(images[-1], xq))
            self._frob_cache[k] = images
        return self._frob_cache[k]

    def frobenius_matrix(self, k: int = 1) -> list[list[int]]:
        """D x D matrix over F_q of z -> z**(q**k) in the basis 1, x, ..., x**(D-1)."""
        cols = [self.coeffs(v) for v in self._frob_images(k % self.D)]
        return [[cols[j][i] for j in range(self.D)] for i in range(self.D)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """Return ``a ** (q ** k)``."""
        if k < 0:
            raise FieldError("frobenius power must be non-negative")
        k %= self.D
        if k == 0 or not a:
            return a
        if self._log is not None:
            return self._exp[(self._log[a] * pow(self.q, k, self.order - 1)) % (self.order - 1)]
        images = self._frob_images(k)
        out = 0
        for c, img in zip(self.coeffs(a), images):
            if c:
                out = self.add(out, self.scale(c, img))
        return out

    def is_base(self, a: int) -> bool:
        return a < self.q


def field_make(p: int, t: int = 1, cap: int = FIELD_CAP) -> FieldCtx:
    """F_{p^t} with the smallest monic irreducible modulus of degree t."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if t < 1:
        raise FieldError("extension degree t must be >= 1")
    if p**t > cap:
        raise CapExceededError(f"field size {p}^{t} exceeds cap {cap}", needed=p**t, cap=cap)
    prime = FieldCtx(p, 1, (0, 1))
    if t == 1:
        return prime
    from .polyring import find_irreducible

    return FieldCtx(p, t, find_irreducible(prime, t).coeffs)


def field_of_order(q: int, cap: int = FIELD_CAP) -> FieldCtx:
    p, t = prime_power(q)
    return field_make(p, t, cap=cap)


def ext_make(base: FieldCtx, Q) -> ExtFieldCtx:
    """F_q[x]/(Q); ``Q`` may be a Poly or a low-to-high coefficient sequence."""
    coeffs = getattr(Q, "coeffs", Q)
    return ExtFieldCtx(base, coeffs)
