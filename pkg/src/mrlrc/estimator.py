"""scikit-learn style wrapper: fit builds the code, transform encodes."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_code_params, check_symbol_array, symbol_dtype
from .construct import construct
from .linalg import solve
from .verify import check_mr_generator, check_mr_parity, decode_erasures, encode, message_positions


class MaximallyRecoverableLRC(TransformerMixin, BaseEstimator):
    """Encoder/decoder for an MR (n, r, h, a) locally repairable code.

    Rows of ``X`` are messages of k symbols; ``transform`` returns codewords
    of length n.  ``decode`` accepts codewords with erasures marked by -1,
    None or NaN and fills them in; ``inverse_transform`` also strips the
    redundancy and returns the messages.
    """

    def __init__(self, n=8, r=4, h=2, a=1, route="manual", q=None, m=None, form=None):
        self.n = n
        self.r = r
        self.h = h
        self.a = a
        self.route = route
        self.q = q
        self.m = m
        self.form = form

    def fit(self, X=None, y=None):
        kwargs = check_code_params(self.n, self.r, self.h, self.a, self.route, self.q, self.m, self.form)
        self.code_ = construct(**kwargs)
        self.n_features_in_ = self.code_.k
        self.field_size_ = self.code_.ell
        if X is not None:
            check_symbol_array(X, self.code_.k, self.code_.ell)
        return self

    def _out(self, rows):
        return np.array(rows, dtype=symbol_dtype(self.code_.ell)).reshape(len(rows), -1)

    def transform(self, X):
        check_is_fitted(self, "code_")
        msgs = check_symbol_array(X, self.code_.k, self.code_.ell)
        return self._out([encode(self.code_, msg) for msg in msgs])

    def decode(self, Y):
        """Complete each row; raises NotAdmissibleError for uncorrectable erasures."""
        check_is_fitted(self, "code_")
        words = check_symbol_array(Y, self.code_.n, self.code_.ell, allow_erasures=True)
        return self._out([decode_erasures(self.code_, w) for w in words])

    def inverse_transform(self, Y):
        full = self.decode(Y)
        code = self.code_
        if code.form == "parity":
            return full[:, message_positions(code)]
        G = code.matrix
        A = [[row[j] for row in G] for j in range(code.n)]
        return self._out([solve(code.ext, A, [int(x) for x in word]) for word in full.tolist()])

    def verify(self, mode="exhaustive", **kwargs):
        """Run the MR check matching the code's form; returns a VerifyReport."""
        check_is_fitted(self, "code_")
        check = check_mr_parity if self.code_.form == "parity" else check_mr_generator
        return check(self.code_, mode=mode, **kwargs)
