"""Assembly of maximally recoverable LRCs from the rational function field F_q(x).

Each local group i gets a degree-m polynomial p_i from a pairwise-coprime
family; its r coordinate functions are f_ij / p_i with numerators taken from
an independent family in F_q^m.  Evaluating at an irreducible Q gives
elements g_ij of F_l = F_q[x]/(Q), and the heavy rows (parity-check form) or
all k rows (generator form) are their Frobenius powers.

Parity-check layout (g*a + h) x n::

    [ A  0 ... 0 ]
    [ 0  A ... 0 ]
    [ ...        ]
    [ D_1 ... D_g]      D_i[k][j] = g_ij ** (q ** k),  k < h

Generator layout k x n: ``(B_1 | ... | B_g)`` with B_i[k][j] = g_ij ** (q ** k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import ConstructionError, PlanError
from .gf import ExtFieldCtx, FieldCtx, field_of_order, is_prime_power
from .innercodes import IndependentFamily, MatrixFq, family_dispatch, family_route, vandermonde_mds
from .polyring import (
    CoprimeFamily,
    Poly,
    coprime_family,
    count_irreducible,
    find_irreducible,
    poly_mod_inverse,
)

ROUTES = ("manual", "binary-generator", "bch-generator", "binary-bch", "binary-identity",
          "mds-q-above-r", "mds-q-near-r")
GENERATOR_ROUTES = frozenset({"binary-generator", "bch-generator"})
# short ids accepted on input for interoperability with other implementations
ROUTE_ALIASES = {
    "t3.3": "binary-generator",
    "t3.5": "bch-generator",
    "t3.9": "binary-bch",
    "t3.10": "binary-identity",
    "t3.12": "mds-q-above-r",
    "t3.13": "mds-q-near-r",
}


def normalize_route(route: str) -> str:
    """Canonical route name; accepts names and short ids case-insensitively."""
    key = route.strip().lower()
    if key in ROUTES:
        return key
    if not key.startswith("t"):
        key = "t" + key
    if key in ROUTE_ALIASES:
        return ROUTE_ALIASES[key]
    raise PlanError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")


def route_form(route: str) -> str:
    return "generator" if normalize_route(route) in GENERATOR_ROUTES else "parity"


@dataclass(frozen=True)
class LrcParams:
    """(n, r, h, a) code shape plus the base field size q and function degree m."""

    n: int
    r: int
    h: int
    a: int
    q: int
    m: int

    @property
    def g(self) -> int:
        return self.n // self.r

    @property
    def k(self) -> int:
        return self.n - self.g * self.a - self.h

    def q_degree(self, form: str = "parity") -> int:
        """Degree of Q: min(h, g) * m or min(k, g) * m; 1 when there are no heavy rows."""
        mult = min(self.h, self.g) if form == "parity" else min(self.k, self.g)
        return max(mult * self.m, 1)

    def validate(self, form: str = "parity") -> "LrcParams":
        check_shape(self.n, self.r, self.h, self.a)
        if not is_prime_power(self.q):
            raise PlanError(f"q={self.q} is not a prime power")
        if self.m < 1:
            raise PlanError("m must be >= 1")
        if form not in ("parity", "generator"):
            raise PlanError(f"unknown form {form!r}")
        if form == "parity" and self.h == 0:
            return self
        if self.q**self.m < self.m * self.g:
            raise PlanError(
                f"q^m = {self.q}^{self.m} < m*n/r = {self.m * self.g}: "
                "not enough pairwise-coprime polynomials guaranteed"
            )
        return self


def check_shape(n: int, r: int, h: int, a: int) -> None:
    if r < 1 or n < 1 or n % r:
        raise PlanError(f"n={n} must be a positive multiple of r={r}")
    if h < 0 or a < 0:
        raise PlanError("h and a must be non-negative")
    if a > r:
        raise PlanError(f"a={a} exceeds r={r}")
    g = n // r
    if g * a + h >= g * r:
        raise PlanError(f"need g*a + h < n (g={g}, a={a}, h={h}, n={n}); the code would be empty")


def log_slack(q: int, f: float) -> int:
    """ceil(log_q f + 2 log_q log_q f), clamped at 0 where the logs degenerate."""
    if f <= 1:
        return 0
    L = math.log(f, q)
    v = L + 2 * math.log(L, q) if L > 0 else L
    return max(0, math.ceil(v - 1e-12))


def _smallest_power_of_two(at_least: int) -> int:
    q = 2
    while q < at_least:
        q *= 2
    return q


def plan(n: int, r: int, h: int, a: int, route: str = "manual", q: int | None = None,
         m: int | None = None, form: str | None = None) -> LrcParams:
    """Choose (q, m) as prescribed by the route's proof and validate them."""
    route = normalize_route(route)
    check_shape(n, r, h, a)
    g = n // r
    if route == "manual":
        form = form or "parity"
        if q is None or m is None:
            return smallest_manual(n, r, h, a, form=form, q=q)
        params = LrcParams(n, r, h, a, q, m)
    elif route == "binary-generator":
        L = math.log2(n)
        mm = r if r >= L else math.ceil(L)
        params = LrcParams(n, r, h, a, 2, mm)
    elif route == "bch-generator":
        mm = (r - a) // 2 * math.ceil(math.log2(r)) + 1
        params = LrcParams(n, r, h, a, 2, mm)
    elif route == "binary-bch":
        if a != 1:
            raise PlanError("route binary-bch needs a = 1")
        if r < h + 2:
            raise PlanError(f"route binary-bch needs r >= h + 2 (r={r}, h={h})")
        mm = max((h + 1) // 2 * math.ceil(math.log2(r)) + 1, log_slack(2, g))
        params = LrcParams(n, r, h, a, 2, mm)
    elif route == "binary-identity":
        if a != 1:
            raise PlanError("route binary-identity needs a = 1")
        params = LrcParams(n, r, h, a, 2, max(r, log_slack(2, g)))
    elif route == "mds-q-above-r":
        qq = _smallest_power_of_two(r + 1)
        params = LrcParams(n, r, h, a, qq, max(h + a, log_slack(qq, g)))
    else:  # mds-q-near-r
        qq = _smallest_power_of_two(r)
        params = LrcParams(n, r, h, a, qq, max(r, log_slack(qq, g)))
    form = form or route_form(route)
    params.validate(form)
    check_feasible(params, form)
    return params


def feasibility_issue(params: LrcParams, form: str = "parity") -> str | None:
    """Why ``build`` would fail for these parameters, or None if it will succeed."""
    try:
        params.validate(form)
    except PlanError as exc:
        return str(exc)
    q, m, r, a, g = params.q, params.m, params.r, params.a, params.g
    if form == "parity":
        if a >= 2 and r > q + 1:
            return f"no [r={r}, a={a}] MDS code over F_{q} (needs r <= q+1)"
        if params.h == 0:
            return None
        s = min(params.h + a, r)
    else:
        s = r - a
    if family_route(q, m, r, s) is None:
        return f"no {r} vectors in F_{q}^{m} with any {s} independent"
    if params.q_degree(form) == m:
        F = field_of_order(q)
        if count_irreducible(F, m) <= g:
            return f"no degree-{m} irreducible left for Q after the coprime family"
    return None


def check_feasible(params: LrcParams, form: str = "parity") -> None:
    issue = feasibility_issue(params, form)
    if issue:
        raise PlanError(issue)


def _prime_powers(limit: int):
    return [q for q in range(2, limit + 1) if is_prime_power(q)]


def smallest_manual(n: int, r: int, h: int, a: int, form: str = "parity",
                    q: int | None = None, q_limit: int = 1024) -> LrcParams:
    """Feasible (q, m) minimising the extension size l = q^deg(Q); ties go to smaller q."""
    check_shape(n, r, h, a)
    best = None
    candidates = [q] if q is not None else _prime_powers(q_limit)
    for qq in candidates:
        if best is not None:
            # deg Q >= m >= 1, so l >= q^(lower bound on deg Q)
            if math.log2(qq) > best[0]:
                break
        for mm in range(1, 4 * r + 64):
            p = LrcParams(n, r, h, a, qq, mm)
            if feasibility_issue(p, form) is None:
                size = p.q_degree(form) * math.log2(qq)
                if best is None or size < best[0] - 1e-12:
                    best = (size, p)
                break
    if best is None:
        raise PlanError(f"no feasible (q, m) found for (n={n}, r={r}, h={h}, a={a})")
    return best[1]


@dataclass
class MrLrcCode:
    """A constructed code together with everything needed to reproduce it."""

    params: LrcParams
    form: str
    route: str
    base: FieldCtx = field(repr=False)
    ext: ExtFieldCtx = field(repr=False)
    Q: Poly = field(repr=False)
    matrix: list[list[int]] = field(repr=False)
    a_block: MatrixFq | None = field(default=None, repr=False)
    family: IndependentFamily | None = field(default=None, repr=False)
    coprime: CoprimeFamily | None = field(default=None, repr=False)
    evaluations: list[list[int]] | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def deg_Q(self) -> int:
        return self.Q.degree

    @property
    def ell(self) -> int:
        return self.params.q**self.deg_Q

    @property
    def log2_ell(self) -> float:
        return self.deg_Q * math.log2(self.params.q)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def group_slice(self, i: int) -> range:
        r = self.params.r
        return range(i * r, (i + 1) * r)

    def heavy_rows(self) -> list[list[int]]:
        if self.form != "parity":
            raise ValueError("heavy rows exist only in parity-check form")
        return self.matrix[self.params.g * self.params.a:]

    def describe(self) -> str:
        p = self.params
        return (
            f"MR ({p.n},{p.r},{p.h},{p.a}) LRC, {self.form} form via {self.route}: "
            f"q={p.q}, m={p.m}, deg Q={self.deg_Q}, l = {p.q}^{self.deg_Q} (log2 l = {self.log2_ell:.2f})"
        )


def _group_evaluations(F, ext, Q, cf, fam):
    evals = []
    for p_i in cf.members:
        inv = poly_mod_inverse(p_i, Q)
        row = []
        for col in fam.columns:
            g_ij = (Poly(F, col) * inv) % Q
            row.append(ext.from_coeffs(g_ij.coeffs))
        evals.append(row)
    return evals


def _heavy_setup(params: LrcParams, F: FieldCtx, strength: int, form: str):
    fam = family_dispatch(F, params.m, params.r, strength)
    cf = coprime_family(F, params.m, params.g)
    D = params.q_degree(form)
    # Q must be coprime to every p_i; only a same-degree Q can collide with one
    Q = find_irreducible(F, D, exclude=cf.members if D == params.m else ())
    ext = ExtFieldCtx(F, Q.coeffs, check=False)
    return fam, cf, Q, ext, _group_evaluations(F, ext, Q, cf, fam)


def build_parity(params: LrcParams, route: str = "manual") -> MrLrcCode:
    params.validate("parity")
    check_feasible(params, "parity")
    r, h, a, g = params.r, params.h, params.a, params.g
    F = field_of_order(params.q)
    A = vandermonde_mds(F, r, a)
    fam = cf = evals = None
    if h == 0:
        Q = Poly(F, (0, 1))
        ext = ExtFieldCtx(F, Q.coeffs, check=False)
    else:
        fam, cf, Q, ext, evals = _heavy_setup(params, F, min(h + a, r), "parity")
    rows = []
    for i in range(g):
        for arow in A.rows:
            rows.append([0] * (i * r) + list(arow) + [0] * ((g - i - 1) * r))
    for k in range(h):
        rows.append([ext.frobenius(evals[i][j], k) for i in range(g) for j in range(r)])
    return MrLrcCode(params, "parity", route, F, ext, Q, rows, A, fam, cf, evals)


def build_generator(params: LrcParams, route: str = "manual") -> MrLrcCode:
    params.validate("generator")
    check_feasible(params, "generator")
    g, r, k = params.g, params.r, params.k
    F = field_of_order(params.q)
    fam, cf, Q, ext, evals = _heavy_setup(params, F, r - params.a, "generator")
    rows = [[ext.frobenius(evals[i][j], kk) for i in range(g) for j in range(r)] for kk in range(k)]
    return MrLrcCode(params, "generator", route, F, ext, Q, rows, None, fam, cf, evals)


def build(params: LrcParams, form: str = "parity", route: str = "manual") -> MrLrcCode:
    if form == "parity":
        return build_parity(params, route)
    if form == "generator":
        return build_generator(params, route)
    raise ConstructionError(f"unknown form {form!r}")


def construct(n: int, r: int, h: int, a: int, route: str = "manual", q: int | None = None,
              m: int | None = None, form: str | None = None) -> MrLrcCode:
    """Plan and build in one step."""
    route = normalize_route(route)
    form = form or route_form(route)
    params = plan(n, r, h, a, route, q=q, m=m, form=form)
    return build(params, form, route)
