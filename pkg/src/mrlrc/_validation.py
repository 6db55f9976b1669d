"""Argument checks shared by the estimator and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .construct import check_shape, normalize_route
from .exceptions import PlanError


def check_int(value, name: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise PlanError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise PlanError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_code_params(n, r, h, a, route="manual", q=None, m=None, form=None) -> dict:
    """Validated keyword arguments for ``construct``."""
    out = {
        "n": check_int(n, "n", 1),
        "r": check_int(r, "r", 1),
        "h": check_int(h, "h"),
        "a": check_int(a, "a"),
        "route": normalize_route(route),
        "q": None if q is None else check_int(q, "q", 2),
        "m": None if m is None else check_int(m, "m", 1),
        "form": form,
    }
    if form not in (None, "parity", "generator"):
        raise PlanError(f"form must be 'parity' or 'generator', got {form!r}")
    check_shape(out["n"], out["r"], out["h"], out["a"])
    return out


def _as_int(x, order: int, allow_erasures: bool):
    if x is None or (allow_erasures and isinstance(x, numbers.Integral) and x == -1):
        if not allow_erasures:
            raise ValueError("erasure marks are not allowed here")
        return None
    if isinstance(x, float) and x != x:  # NaN marks an erasure too
        if allow_erasures:
            return None
        raise ValueError("NaN symbol")
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (numbers.Integral, float)):
        raise ValueError(f"symbol {x!r} is not an integer")
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"symbol {x!r} is not an integer")
        x = int(x)
    x = int(x)
    if not 0 <= x < order:
        raise ValueError(f"symbol {x} outside the field 0..{order - 1}")
    return x


def check_symbol_array(X, width: int, order: int, allow_erasures: bool = False) -> list[list]:
    """2-D array-like of field symbols as nested lists; -1, None or NaN mark erasures."""
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {arr.ndim} dimensions")
    if arr.shape[1] != width:
        raise ValueError(f"expected {width} columns, got {arr.shape[1]}")
    return [[_as_int(x, order, allow_erasures) for x in row] for row in arr.tolist()]


def symbol_dtype(order: int):
    """int64 when every symbol fits, otherwise Python ints in an object array."""
    return np.int64 if order <= 2**63 else object
