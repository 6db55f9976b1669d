"""Field-size calculators and the comparisons between them.

Every value is a base-2 logarithm of a field size.  Rows come in five kinds:

* ``exact``: the extension size a construction route really produces;
* ``upper``: a closed-form upper bound from this family of constructions;
* ``asymptotic``: a prior upper bound stated with big-O, evaluated with a
  configurable constant (default 1);
* ``existence``: a probabilistic existence bound;
* ``lower``: a lower bound on any MR LRC with these parameters.

Soft-O terms are expanded as f * (log2 f)^2, matching the slack
log_q f + 2 log_q log_q f that the construction routes add to m.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .construct import check_shape, plan, route_form
from .exceptions import MRLRCError


@dataclass(frozen=True)
class BoundOptions:
    constant: float = 1.0
    epsilon: float = 0.25
    include_routes: bool = True


@dataclass(frozen=True)
class BoundEntry:
    label: str
    formula: str
    kind: str
    applicable: bool
    log2_field_size: float | None
    exact_value: int | None = None
    note: str = ""
    exact_expr: str = ""

    def as_row(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "applicable": "yes" if self.applicable else "no",
            "log2_field_size": "" if self.log2_field_size is None else f"{self.log2_field_size:.4f}",
            "exact": self.exact_expr,
            "formula": self.formula,
            "note": self.note,
        }


def log2_soft(f: float) -> float:
    """log2 of f * (log2 f)^2, with the polylog factor floored at 1."""
    if f <= 0:
        raise ValueError("soft-O of a non-positive quantity")
    lf = math.log2(f)
    return lf + 2 * math.log2(lf) if lf > 1 else lf


def _log2(x: float) -> float:
    return math.log2(x) if x > 0 else float("-inf")


def _log2_binom(n: int, k: int) -> float:
    return _log2(math.comb(n, k))


# -- closed forms ------------------------------------------------------------

def prior_poly_n(n, r, h, a, C=1.0):
    """log2(C * r * n^((a+1)h - 1))."""
    return _log2(C) + math.log2(r) + ((a + 1) * h - 1) * math.log2(n)


def prior_max(n, r, h, a, C=1.0):
    """log2 of max(C n/r, (C r)^(h+a))^h."""
    g = n // r
    return h * max(_log2(C * g), (h + a) * _log2(C * r))


def prior_rank_metric(n, r, h, a, C=1.0):
    """log2(C * r^(n(r-a)/r))."""
    return _log2(C) + n * (r - a) / r * math.log2(r)


def binary_bch_a1(n, r, h, a=1):
    g = n // r
    return min(h, g) * max(log2_soft(g), (h + 1) // 2 * math.log2(2 * r))


def binary_identity_a1(n, r, h, a=1):
    g = n // r
    return min(h, g) * max(log2_soft(g), r)


def mds_q_above_r(n, r, h, a):
    g = n // r
    return min(h, g) * max(log2_soft(g), (h + a) * math.log2(2 * r))


def mds_q_near_r(n, r, h, a):
    g = n // r
    return min(h, g) * max(log2_soft(g), r * math.log2(2 * r))


def generator_binary(n, r, h, a):
    """2^min(rk, n) when r >= log2 n, else 2^(ceil(log2 n) * min(k, g))."""
    g, k = n // r, n - (n // r) * a - h
    if r >= math.log2(n):
        return float(min(r * k, n))
    return float(math.ceil(math.log2(n)) * min(k, g))


def generator_bch(n, r, h, a):
    """log2 of 2 * r^(floor((r-a)/2) * min(k, g))."""
    g, k = n // r, n - (n // r) * a - h
    return 1 + (r - a) // 2 * min(k, g) * math.log2(r)


# -- the table ---------------------------------------------------------------

def _route_rows(n, r, h, a) -> list[BoundEntry]:
    rows = []
    for route, name in (("binary-generator", "binary generator"), ("bch-generator", "BCH generator"),
                        ("binary-bch", "binary BCH, a=1"), ("binary-identity", "binary identity, a=1"),
                        ("mds-q-above-r", "MDS, q > r"), ("mds-q-near-r", "MDS, q >= r")):
        form = route_form(route)
        label = f"route {route} exact"
        try:
            p = plan(n, r, h, a, route)
        except MRLRCError as exc:
            rows.append(BoundEntry(label, name, "exact", False, None, note=str(exc)))
            continue
        D = p.q_degree(form)
        rows.append(BoundEntry(label, f"{name}: q^deg Q with q={p.q}, m={p.m}, deg Q={D}", "exact",
                               True, D * math.log2(p.q), p.q**D, note=f"{form} form",
                               exact_expr=f"{p.q}^{D}"))
    return rows


def bound_table(n: int, r: int, h: int, a: int, options: BoundOptions | None = None) -> list[BoundEntry]:
    """All field-size rows for (n, r, h, a); inapplicable rows carry no value."""
    check_shape(n, r, h, a)
    o = options or BoundOptions()
    C, eps = o.constant, o.epsilon
    g, k = n // r, n - (n // r) * a - h
    logn = math.log2(n)
    out: list[BoundEntry] = []

    def add(label, formula, kind, ok, fn, note=""):
        out.append(BoundEntry(label, formula, kind, bool(ok), fn() if ok else None, note=note))

    heavy_note = "" if h else "h = 0: no heavy parities, the base field suffices"
    add("prior poly-n", "O(r * n^((a+1)h - 1))", "asymptotic", h >= 1,
        lambda: prior_poly_n(n, r, h, a, C), "needs h >= 1")
    add("prior max", "max(O(n/r), O(r)^(h+a))^h", "asymptotic", True,
        lambda: prior_max(n, r, h, a, C), heavy_note)
    add("prior rank-metric", "O(r^(n(r-a)/r))", "asymptotic", True,
        lambda: prior_rank_metric(n, r, h, a, C))
    add("prior random", "O(binom(n-1, k-1))", "existence", k >= 1,
        lambda: _log2(C) + _log2_binom(n - 1, k - 1), "existence only; constants unstated")
    add("lower bound", "Omega(n * r^min(a, h-2))", "lower", 2 <= h <= g,
        lambda: _log2(C) + logn + min(a, h - 2) * math.log2(r), "stated for 2 <= h <= n/r")
    add("binary BCH, a=1", "max(~O(n/r), (2r)^floor((h+1)/2))^min(h, n/r)", "upper",
        a == 1 and r >= h + 2, lambda: binary_bch_a1(n, r, h), "needs a = 1 and r >= h+2")
    add("binary identity, a=1", "max(~O(n/r), 2^r)^min(h, n/r)", "upper", a == 1,
        lambda: binary_identity_a1(n, r, h), "needs a = 1")
    add("MDS, q > r", "max(~O(n/r), (2r)^(h+a))^min(h, n/r)", "upper", True,
        lambda: mds_q_above_r(n, r, h, a), heavy_note)
    add("MDS, q >= r", "max(~O(n/r), (2r)^r)^min(h, n/r)", "upper", True,
        lambda: mds_q_near_r(n, r, h, a), heavy_note)
    loglog = math.log2(logn) if logn > 1 else 1.0
    hermitian_ok = r <= C * logn / loglog and h * r >= n ** (2 / 3) / eps
    add("Hermitian", "O(n^((2h/3)(1+eps)))", "asymptotic", hermitian_ok,
        lambda: _log2(C) + 2 * h / 3 * (1 + eps) * logn,
        f"eps={eps}; needs r <= log n/log log n and hr >= n^(2/3)/eps")
    tower_ok = r <= C * eps * logn / loglog and h * r >= n ** (1 - eps)
    add("function field tower", "n^(eps h)", "asymptotic", tower_ok,
        lambda: eps * h * logn, f"eps={eps}; needs r <= eps log n/log log n and hr >= n^(1-eps)")
    add("binary generator", "2^min(rk, n) if r >= log n else 2^(ceil(log n) min(k, n/r))", "upper",
        k >= 1, lambda: generator_binary(n, r, h, a), "k = n(1 - a/r) - h")
    add("BCH generator", "2 r^(floor((r-a)/2) min(k, n/r))", "upper", k >= 1 and r - a >= logn,
        lambda: generator_bch(n, r, h, a), "needs r - a = Omega(log n); checked as r - a >= log2 n")
    if o.include_routes:
        out.extend(_route_rows(n, r, h, a))
    return out


def format_table(entries: list[BoundEntry]) -> str:
    """Aligned plain-text table."""
    header = ["label", "kind", "applicable", "log2_field_size", "exact", "formula", "note"]
    rows = [header] + [[str(e.as_row()[c]) for c in header] for e in entries]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def to_csv(entries: list[BoundEntry]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(BoundEntry("", "", "", True, None).as_row()))
    w.writeheader()
    for e in entries:
        w.writerow(e.as_row())
    return buf.getvalue()


# -- comparison claims -------------------------------------------------------

@dataclass(frozen=True)
class ClaimPoint:
    params: tuple[int, int, int, int]
    better: float
    worse: float
    holds: bool
    structural: bool | None = None
    constant_sensitive: bool = False


@dataclass
class ClaimReport:
    regime: str
    claim: str
    points: list[ClaimPoint] = field(default_factory=list)

    @property
    def refuted(self) -> list[ClaimPoint]:
        return [p for p in self.points if not (p.holds or p.constant_sensitive)]

    @property
    def constant_sensitive(self) -> list[ClaimPoint]:
        return [p for p in self.points if p.constant_sensitive]

    @property
    def confirmed(self) -> bool:
        return bool(self.points) and not self.refuted

    def summary(self) -> str:
        return (f"{self.regime}: {'confirmed' if self.confirmed else 'REFUTED'} at "
                f"{len(self.points)} points ({len(self.refuted)} refuted, "
                f"{len(self.constant_sensitive)} constant-sensitive); claim: {self.claim}")


REGIMES = ("bch-vs-prior-max", "mds-vs-prior-max-large-h", "bch-vs-identity", "mds-q-above-vs-near-r")

_TOL = 1e-9


def _sample_bch_vs_prior(rng):
    # a = 1, r >= h + 2 and n/r <= r, so the n/r term cannot dominate the prior bound
    r = int(rng.integers(4, 257))
    h = int(rng.integers(2, min(r - 2, 24) + 1))
    g = int(rng.integers(1, r + 1))
    return g * r, r, h, 1


def _eval_bch_vs_prior(n, r, h, a, C):
    better, worse = binary_bch_a1(n, r, h), prior_max(n, r, h, a, C)
    structural = (h + 1) // 2 < h + a  # exponent of r per heavy parity
    return ClaimPoint((n, r, h, a), better, worse, better <= worse + _TOL, structural)


def _sample_mds_large_h(rng):
    r = int(rng.integers(3, 65))
    a = int(rng.integers(1, min(r - 1, 4) + 1))
    g = int(rng.integers(2, 33))
    h = int(rng.integers(g + 1, 4 * g + 1))
    return g * r, r, h, a


def _eval_mds_large_h(n, r, h, a, C):
    g = n // r
    better, worse = mds_q_above_r(n, r, h, a), prior_max(n, r, h, a, C)
    structural = min(h, g) < h  # the outer exponent shrinks from h to n/r
    holds = better <= worse + _TOL
    # the literal comparison pits (2r) against r; rerun it with the same base on both sides
    same_base = min(h, g) * max(log2_soft(g), (h + a) * math.log2(r)) <= worse + _TOL
    return ClaimPoint((n, r, h, a), better, worse, holds and structural, structural,
                      constant_sensitive=structural and not holds and same_base)


def _crossover(r: int) -> float:
    return 2 * r / math.log2(r) - 1


def _sample_bch_vs_identity(rng):
    while True:
        r = int(rng.integers(16, 257))
        c = _crossover(r)
        if rng.random() < 0.5:
            hi = int(c / 2)
            if hi < 1:
                continue
            h = int(rng.integers(1, hi + 1))
        else:
            lo, hi = math.ceil(2 * c), r - 2
            if lo > hi:
                continue
            h = int(rng.integers(lo, hi + 1))
        g = int(rng.integers(1, 4097))
        return g * r, r, h, 1


def _eval_bch_vs_identity(n, r, h, a, C):
    bch, ident = binary_bch_a1(n, r, h), binary_identity_a1(n, r, h)
    if h < _crossover(r):
        return ClaimPoint((n, r, h, a), bch, ident, bch <= ident + _TOL)
    return ClaimPoint((n, r, h, a), ident, bch, ident <= bch + _TOL)


def _sample_mds_q(rng):
    while True:
        r = int(rng.integers(3, 129))
        a = int(rng.integers(1, r))
        h = int(rng.integers(1, 2 * r + 1))
        if h + a == r:
            continue
        g = int(rng.integers(1, 4097))
        return g * r, r, h, a


def _eval_mds_q(n, r, h, a, C):
    above, near = mds_q_above_r(n, r, h, a), mds_q_near_r(n, r, h, a)
    if h + a < r:
        return ClaimPoint((n, r, h, a), above, near, above <= near + _TOL)
    return ClaimPoint((n, r, h, a), near, above, near <= above + _TOL)


_REGIME_TABLE = {
    "bch-vs-prior-max": (
        "binary BCH (a=1) bound <= prior max bound; exponent of r drops from h+1 to floor((h+1)/2)",
        _sample_bch_vs_prior, _eval_bch_vs_prior),
    "mds-vs-prior-max-large-h": (
        "for h > n/r the MDS (q > r) bound has outer exponent n/r < h and beats the prior max bound",
        _sample_mds_large_h, _eval_mds_large_h),
    "bch-vs-identity": (
        "binary BCH beats binary identity for h < 2r/log2 r - 1 and loses above it",
        _sample_bch_vs_identity, _eval_bch_vs_identity),
    "mds-q-above-vs-near-r": (
        "MDS with q > r beats q >= r for h + a < r and loses for h + a > r",
        _sample_mds_q, _eval_mds_q),
}


def check_comparison_claims(regime: str, samples=None, count: int = 24, seed: int = 0,
                            options: BoundOptions | None = None) -> ClaimReport:
    """Evaluate one comparison claim at explicit or seeded random (n, r, h, a) points."""
    if regime not in _REGIME_TABLE:
        raise ValueError(f"unknown regime {regime!r}; choose from {', '.join(REGIMES)}")
    claim, sampler, evaluate = _REGIME_TABLE[regime]
    C = (options or BoundOptions()).constant
    if samples is None:
        rng = np.random.default_rng(seed)
        samples = [sampler(rng) for _ in range(count)]
    report = ClaimReport(regime, claim)
    for n, r, h, a in samples:
        report.points.append(evaluate(n, r, h, a, C))
    return report


def check_all_claims(count: int = 24, seed: int = 0, options=None) -> list[ClaimReport]:
    return [check_comparison_claims(reg, count=count, seed=seed, options=options) for reg in REGIMES]
