"""Versioned JSON artifacts for constructed codes and verification reports.

Field elements are written as decimal strings of their canonical integer
encoding, matrices row-major.  The digest is SHA-256 over the canonical JSON
(sorted keys, no whitespace) of everything except the digest itself.
"""

from __future__ import annotations

import hashlib
import json

from .construct import LrcParams, MrLrcCode
from .exceptions import FieldError, MRLRCError
from .gf import ExtFieldCtx, FieldCtx
from .innercodes import IndependentFamily, MatrixFq
from .polyring import CoprimeFamily, Poly, is_irreducible

FORMAT = "mrlrc-code"
FORMAT_VERSION = 1


class ArtifactError(MRLRCError, ValueError):
    """Unreadable, inconsistent or tampered artifact."""


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def compute_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return "sha256:" + hashlib.sha256(_canonical(body)).hexdigest()


def _strs(matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in matrix]


def _ints(matrix) -> list[list[int]]:
    return [[int(x) for x in row] for row in matrix]


def code_to_dict(code: MrLrcCode) -> dict:
    p = code.params
    fam = code.family
    doc = {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "form": code.form,
        "route": code.route,
        "params": {"n": p.n, "r": p.r, "h": p.h, "a": p.a, "g": p.g, "k": p.k, "q": p.q, "m": p.m},
        "field": {
            "p": code.base.p,
            "t": code.base.t,
            "base_modulus": list(code.base.modulus),
            "Q": list(code.Q.coeffs),
            "deg_Q": code.deg_Q,
            "ell": f"{p.q}^{code.deg_Q}",
            "log2_ell": round(code.log2_ell, 12),
        },
        "coprime_family": None if code.coprime is None else [f.to_string() for f in code.coprime.members],
        "inner_family": None if fam is None else {
            "route": fam.route,
            "m": fam.m,
            "r": fam.r,
            "strength": fam.s,
            "columns": [list(c) for c in fam.columns],
        },
        "a_block": None if code.a_block is None else code.a_block.tolist(),
        "evaluations": None if code.evaluations is None else _strs(code.evaluations),
        "matrix": _strs(code.matrix),
    }
    doc["digest"] = compute_digest(doc)
    return doc


def render(code: MrLrcCode) -> str:
    return json.dumps(code_to_dict(code), indent=1) + "\n"


def _require(doc, key):
    if key not in doc:
        raise ArtifactError(f"artifact is missing {key!r}")
    return doc[key]


def code_from_dict(doc: dict, force: bool = False) -> MrLrcCode:
    """Rebuild a code; ``force`` skips the digest check (but not structural checks)."""
    if doc.get("format") != FORMAT:
        raise ArtifactError(f"not an {FORMAT} artifact")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ArtifactError(f"unsupported format_version {doc.get('format_version')!r}")
    if not force and doc.get("digest") != compute_digest(doc):
        raise ArtifactError("digest mismatch: artifact was modified (use --force to load anyway)")
    pr = _require(doc, "params")
    params = LrcParams(pr["n"], pr["r"], pr["h"], pr["a"], pr["q"], pr["m"])
    fd = _require(doc, "field")
    try:
        base = FieldCtx(fd["p"], fd["t"], fd["base_modulus"])
        prime = FieldCtx(fd["p"], 1, (0, 1))
        if base.t > 1 and not is_irreducible(Poly(prime, base.modulus)):
            raise ArtifactError("base modulus is reducible")
        ext = ExtFieldCtx(base, fd["Q"])
    except FieldError as exc:
        raise ArtifactError(f"bad field description: {exc}") from exc
    if base.q != params.q:
        raise ArtifactError("field order does not match params.q")
    Q = Poly(base, tuple(fd["Q"]))
    a_block = None if doc.get("a_block") is None else MatrixFq.from_rows(base, doc["a_block"])
    fam = None
    if doc.get("inner_family") is not None:
        fi = doc["inner_family"]
        fam = IndependentFamily(base, fi["m"], fi["r"], fi["strength"],
                                tuple(tuple(int(x) for x in c) for c in fi["columns"]), route=fi["route"])
    cf = None
    if doc.get("coprime_family") is not None:
        cf = CoprimeFamily(base, params.m, tuple(Poly.from_string(base, s) for s in doc["coprime_family"]))
    evals = None if doc.get("evaluations") is None else _ints(doc["evaluations"])
    matrix = _ints(_require(doc, "matrix"))
    rows = params.g * params.a + params.h if doc["form"] == "parity" else params.k
    if len(matrix) != rows or any(len(row) != params.n for row in matrix):
        raise ArtifactError(f"matrix shape does not match {rows} x {params.n}")
    if any(not 0 <= x < ext.order for row in matrix for x in row):
        raise ArtifactError("matrix entry outside the field")
    return MrLrcCode(params, doc["form"], doc["route"], base, ext, Q, matrix, a_block, fam, cf, evals)


def parse(text: str, force: bool = False) -> MrLrcCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"artifact is not valid JSON: {exc}") from exc
    return code_from_dict(doc, force=force)


def save(code: MrLrcCode, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(code))


def load(path, force: bool = False) -> MrLrcCode:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), force=force)
