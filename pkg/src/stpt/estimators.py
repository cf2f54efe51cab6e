"""Estimator-style wrappers around the decomposition functions.

These follow the scikit-learn protocol (``fit`` / ``transform`` /
``inverse_transform`` / ``get_params``) so the decompositions compose with
pipelines and model-selection utilities.  ``fit`` computes the factors of
the training array; ``transform`` projects data onto the fitted bases;
``reconstruct`` returns the approximation of the fitted array itself.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decomp import (
    hosvd_stp,
    reconstruct_hosvd,
    reconstruct_svd_stp,
    svd_stp,
    truncated_hosvd_stp,
    truncated_svd_stp,
)
from .stp import mode_stp
from .validation import as_matrix, as_tensor


class SvdStp(TransformerMixin, BaseEstimator):
    """Matrix decomposition with block sizes ``(s1, s2)``.

    Parameters
    ----------
    s1, s2 : int
        Block sizes; must divide the fitted matrix's row and column
        counts.  ``s1 = s2 = 1`` reduces to the conventional SVD.
    rank : int or None
        Number of retained diagonal blocks; ``None`` keeps all of them.

    Attributes
    ----------
    factors_ : SvdStpFactors
        Fitted factors.
    """

    def __init__(self, s1: int = 1, s2: int = 1, rank: int | None = None):
        self.s1 = s1
        self.s2 = s2
        self.rank = rank

    def fit(self, X, y=None):
        X = as_matrix(X, "X")
        if self.rank is None:
            self.factors_ = svd_stp(X, self.s1, self.s2)
        else:
            self.factors_ = truncated_svd_stp(X, self.s1, self.s2, self.rank)
        return self

    def _right_basis(self) -> np.ndarray:
        f = self.factors_
        return np.kron(f.v, np.eye(f.s2))

    def transform(self, X) -> np.ndarray:
        """Project rows onto the fitted right basis: ``X @ kron(v, I_s2)``."""
        check_is_fitted(self, "factors_")
        X = as_matrix(X, "X")
        basis = self._right_basis()
        if X.shape[1] != basis.shape[0]:
            raise ValueError(
                f"X has {X.shape[1]} columns, fitted basis expects {basis.shape[0]}"
            )
        return X @ basis

    def inverse_transform(self, Z) -> np.ndarray:
        check_is_fitted(self, "factors_")
        Z = as_matrix(Z, "Z")
        return Z @ self._right_basis().T

    def reconstruct(self) -> np.ndarray:
        """Approximation of the fitted matrix from the stored factors."""
        check_is_fitted(self, "factors_")
        return reconstruct_svd_stp(self.factors_)


class HosvdStp(TransformerMixin, BaseEstimator):
    """Tensor decomposition with per-mode block sizes ``s``.

    Parameters
    ----------
    s : tuple of int
        Block sizes, one per mode; each must divide its dimension.
    rank : tuple of int or None
        Retained factor columns per mode; ``None`` keeps every column.

    Attributes
    ----------
    factors_ : HosvdStpFactors
        Fitted core and mode factors.
    """

    def __init__(self, s: tuple[int, ...] = (1, 1), rank: tuple[int, ...] | None = None):
        self.s = s
        self.rank = rank

    def fit(self, X, y=None):
        X = as_tensor(X, "X")
        if self.rank is None:
            self.factors_ = hosvd_stp(X, self.s)
        else:
            self.factors_ = truncated_hosvd_stp(X, self.s, self.rank)
        return self

    def transform(self, X) -> np.ndarray:
        """Map a tensor into the fitted core space: modal semi-tensor
        products with the transposed factors."""
        check_is_fitted(self, "factors_")
        X = as_tensor(X, "X")
        out = X
        for k, (u, s_k) in enumerate(zip(self.factors_.factors, self.factors_.s), start=1):
            out = mode_stp(out, k, u.T, expect_s=s_k)
        return out

    def inverse_transform(self, Z) -> np.ndarray:
        check_is_fitted(self, "factors_")
        Z = as_tensor(Z, "Z")
        out = Z
        for k, (u, s_k) in enumerate(zip(self.factors_.factors, self.factors_.s), start=1):
            out = mode_stp(out, k, u, expect_s=s_k)
        return out

    def reconstruct(self) -> np.ndarray:
        """Approximation of the fitted tensor from the stored factors."""
        check_is_fitted(self, "factors_")
        return reconstruct_hosvd(self.factors_)
