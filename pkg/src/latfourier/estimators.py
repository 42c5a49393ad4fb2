"""scikit-learn compatible wrappers around the transform and multipliers.

Rows of ``X`` are flattened grid functions: row i holds the N^d samples
f(A j / N) in C order. scikit-learn's ``check_array`` refuses complex
input, so validation goes through :func:`check_grid_batch`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import BandExceedsGrid
from .lattice import Lattice, band_indices, identity_lattice, new_lattice
from .multiplier import GaussianSymbol, Symbol, parse_symbol
from .transform import band_coefficients, synthesize


def check_grid_batch(X, d: int):
    """Validate a 2-D batch of flattened grid functions and return (X, N).

    Accepts real or complex input, requires finite values and a row length
    that is a perfect d-th power.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        raise ValueError("Expected 2D array, got 1D array instead; reshape with X.reshape(1, -1)")
    if X.ndim != 2:
        raise ValueError(f"Expected 2D array, got {X.ndim}D array instead")
    if X.shape[0] < 1:
        raise ValueError("Found array with 0 sample(s)")
    if not np.issubdtype(X.dtype, np.number):
        raise ValueError(f"dtype {X.dtype} is not numeric")
    if not np.all(np.isfinite(X)):
        raise ValueError("Input contains NaN or infinity")
    n = int(round(X.shape[1] ** (1 / d)))
    for cand in (n - 1, n, n + 1):
        if cand > 0 and cand**d == X.shape[1]:
            return X.astype(complex, copy=False), cand
    raise ValueError(f"row length {X.shape[1]} is not a perfect {d}-th power")


def _resolve_lattice(lattice):
    if lattice is None:
        return identity_lattice(1)
    if isinstance(lattice, Lattice):
        return lattice
    return new_lattice(lattice)


def _resolve_symbol(symbol):
    if symbol is None:
        return GaussianSymbol()
    if isinstance(symbol, Symbol):
        return symbol
    return parse_symbol(symbol)


class LatticeFourierTransform(TransformerMixin, BaseEstimator):
    """Map grid samples on a fundamental domain to band coefficients.

    Parameters
    ----------
    lattice : Lattice or array-like, default=None
        Generator of the lattice; ``None`` means Z^1.
    band : int, default=None
        Retained index box [-band, band]^d. ``None`` keeps the largest
        band the grid allows, (N-1)//2.

    Attributes
    ----------
    lattice_ : Lattice
    n_per_axis_ : int
    band_ : int
    indices_ : ndarray of shape (n_coefficients, d)
        Integer dual indices of the output columns.
    kappas_ : ndarray of shape (n_coefficients, d)
    """

    def __init__(self, lattice=None, band=None):
        self.lattice = lattice
        self.band = band

    def fit(self, X, y=None):
        self.lattice_ = _resolve_lattice(self.lattice)
        d = self.lattice_.dim
        _, n = check_grid_batch(X, d)
        band = (n - 1) // 2 if self.band is None else int(self.band)
        if 2 * band + 1 > n:
            raise BandExceedsGrid(f"2K+1 = {2 * band + 1} exceeds grid size N = {n}")
        self.n_per_axis_ = n
        self.band_ = band
        self.n_features_in_ = np.asarray(X).shape[1]
        self.indices_ = band_indices(d, band)
        self.kappas_ = self.lattice_.dual_coords(self.indices_)
        return self

    def _grid(self, X):
        check_is_fitted(self)
        d = self.lattice_.dim
        X, n = check_grid_batch(X, d)
        if n != self.n_per_axis_:
            raise ValueError(f"expected N={self.n_per_axis_} per axis, got {n}")
        return X.reshape((X.shape[0],) + (n,) * d)

    def transform(self, X):
        grid = self._grid(X)
        d = self.lattice_.dim
        return band_coefficients(grid, self.band_, d).reshape(grid.shape[0], -1)

    def inverse_transform(self, C):
        check_is_fitted(self)
        d = self.lattice_.dim
        C = np.asarray(C, dtype=complex)
        width = 2 * self.band_ + 1
        if C.ndim != 2 or C.shape[1] != width**d:
            raise ValueError(f"expected coefficient rows of length {width**d}")
        out = synthesize(C.reshape((C.shape[0],) + (width,) * d), self.n_per_axis_, d)
        return out.reshape(C.shape[0], -1)


class FourierMultiplier(TransformerMixin, BaseEstimator):
    """Apply the multiplier with symbol ``symbol`` to each row of ``X``.

    Parameters
    ----------
    symbol : Symbol or str, default=None
        A Symbol instance or an option string such as ``"gaussian"`` or
        ``"const:2,0"``; ``None`` means the Gaussian symbol.
    lattice : Lattice or array-like, default=None
    band : int, default=None
    real_output : bool, default=False
        Return the real part (useful for real-valued pipelines with
        Hermitian-symmetric symbols).
    """

    def __init__(self, symbol=None, lattice=None, band=None, real_output=False):
        self.symbol = symbol
        self.lattice = lattice
        self.band = band
        self.real_output = real_output

    def fit(self, X, y=None):
        self.transform_ = LatticeFourierTransform(self.lattice, self.band).fit(X)
        self.symbol_ = _resolve_symbol(self.symbol)
        self.multiplier_ = self.symbol_.on_band(self.transform_.lattice_, self.transform_.band_).ravel()
        self.n_features_in_ = self.transform_.n_features_in_
        return self

    def transform(self, X):
        check_is_fitted(self)
        out = self.transform_.inverse_transform(self.transform_.transform(X) * self.multiplier_)
        return out.real if self.real_output else out

    def operator_norm_l2(self):
        """sup |sigma| over the retained band."""
        check_is_fitted(self)
        return float(np.abs(self.multiplier_).max())
