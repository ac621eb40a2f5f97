"""scikit-learn style wrappers around the spectral routines.

Points in the complex plane are passed either as a complex 1-D array or as
a real array with two columns ``(re, im)``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import spectral
from .errors import DomainError
from .operator import MODES, OperatorSpec
from .oracle import resolvent_norm
from .pseudospectra import _log_norm, point_seed

__all__ = [
    "check_complex_points",
    "check_spec",
    "WeylFunction",
    "SpectrumEstimator",
    "ResolventNormTransformer",
    "OrthoPolyTransformer",
]


def check_complex_points(X) -> np.ndarray:
    """Flatten ``X`` to a 1-D complex array of finite points.

    Accepts a complex array of shape ``(n,)`` or ``(n, 1)``, or a real array
    of shape ``(n, 2)`` holding real and imaginary parts.
    """
    arr = np.asarray(X)
    if np.iscomplexobj(arr):
        if arr.ndim == 2 and arr.shape[1] == 1:
            arr = arr[:, 0]
        if arr.ndim != 1:
            raise ValueError(f"complex input must be 1-D or a single column, got shape {arr.shape}")
        out = arr.astype(complex)
    else:
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        arr = check_array(arr, dtype=float, ensure_2d=True)
        if arr.shape[1] == 1:
            out = arr[:, 0].astype(complex)
        elif arr.shape[1] == 2:
            out = arr[:, 0] + 1j * arr[:, 1]
        else:
            raise ValueError(f"real input needs 1 or 2 columns (re, im), got {arr.shape[1]}")
    if out.size == 0:
        raise ValueError("no points given")
    if not np.all(np.isfinite(out)):
        raise ValueError("points must be finite")
    return out


def check_spec(alpha, mode: str) -> OperatorSpec:
    """Validated :class:`OperatorSpec` from estimator parameters."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    alpha = complex(alpha)
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if abs(alpha) > 1:
        raise DomainError(f"|{'alpha' if mode == 'standard' else 'beta'}| > 1; use the other mode with the reciprocal parameter")
    return OperatorSpec(mode, alpha)


class WeylFunction(BaseEstimator):
    """Weyl m-function ``m(z) = <e1, (J - z)^{-1} e1>`` as a predictor.

    Parameters
    ----------
    alpha : complex
        Operator parameter (``beta`` in tilde mode).
    mode : {"standard", "tilde"}
    tol : float
        Truncation tolerance of the pole expansion.

    Attributes
    ----------
    spec_ : OperatorSpec
    """

    def __init__(self, alpha=0.5, mode="standard", tol=1e-14):
        self.alpha = alpha
        self.mode = mode
        self.tol = tol

    def fit(self, X=None, y=None):
        self.spec_ = check_spec(self.alpha, self.mode)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "spec_")
        z = check_complex_points(X)
        return np.array([spectral.weyl_m(self.spec_, complex(p), tol=self.tol) for p in z])


class SpectrumEstimator(BaseEstimator):
    """Eigenvalues ``lambda_N`` and leading eigenvector entries for a window
    of indices ``-n_pairs <= N < n_pairs``.

    Attributes
    ----------
    indices_ : ndarray of int
    eigenvalues_ : ndarray of complex
    eigenvectors_ : ndarray of complex, shape (len(indices_), n_entries)
    """

    def __init__(self, alpha=0.5, mode="standard", n_pairs=3, n_entries=20, tol=1e-12):
        self.alpha = alpha
        self.mode = mode
        self.n_pairs = n_pairs
        self.n_entries = n_entries
        self.tol = tol

    def fit(self, X=None, y=None):
        if int(self.n_pairs) < 1 or int(self.n_entries) < 1:
            raise ValueError("n_pairs and n_entries must be positive")
        spec = check_spec(self.alpha, self.mode)
        self.spec_ = spec
        self.indices_ = np.arange(-int(self.n_pairs), int(self.n_pairs))
        self.eigenvalues_ = np.array([spectral.eigenvalue(spec, int(N)) for N in self.indices_])
        self.eigenvectors_ = np.array(
            [spectral.eigenvector(spec, int(N), int(self.n_entries), tol=self.tol) for N in self.indices_]
        )
        return self

    def predict(self, X) -> np.ndarray:
        """Index of the nearest computed eigenvalue for each point."""
        check_is_fitted(self, "eigenvalues_")
        z = check_complex_points(X)
        nearest = np.argmin(np.abs(z[:, None] - self.eigenvalues_[None, :]), axis=1)
        return self.indices_[nearest]


class ResolventNormTransformer(TransformerMixin, BaseEstimator):
    """Maps points ``z`` to ``log10 ||(J_dim - z)^{-1}||``.

    Singular points map to ``+inf``.  Each point uses the same start-vector
    seed as the pseudospectra sweeps, so values agree with those fields.
    """

    def __init__(self, alpha=0.5, mode="standard", dim=1000, tol=1e-4, seed=0):
        self.alpha = alpha
        self.mode = mode
        self.dim = dim
        self.tol = tol
        self.seed = seed

    def fit(self, X=None, y=None):
        if int(self.dim) < 1:
            raise ValueError("dim must be positive")
        self.spec_ = check_spec(self.alpha, self.mode)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "spec_")
        z = check_complex_points(X)
        vals = [_log_norm(self.spec_, complex(p), int(self.dim), self.tol, self.seed) for p in z]
        return np.array(vals).reshape(-1, 1)

    def norms(self, X) -> np.ndarray:
        """Plain resolvent norms (no logarithm)."""
        check_is_fitted(self, "spec_")
        z = check_complex_points(X)
        return np.array([resolvent_norm(self.spec_, complex(p), int(self.dim), self.tol, point_seed(self.seed, complex(p))) for p in z])


class OrthoPolyTransformer(TransformerMixin, BaseEstimator):
    """Feature map ``x -> (p_1(x), ..., p_degree(x))`` by the orthonormal
    polynomials of ``J``.  Output is complex with shape ``(n, degree)``."""

    def __init__(self, alpha=0.5, mode="standard", degree=8):
        self.alpha = alpha
        self.mode = mode
        self.degree = degree

    def fit(self, X=None, y=None):
        if int(self.degree) < 1:
            raise ValueError("degree must be positive")
        spec = check_spec(self.alpha, self.mode)
        if spec.param == 0:
            raise DomainError("normalised polynomials need a non-zero parameter")
        self.spec_ = spec
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "spec_")
        z = check_complex_points(X)
        return spectral.orthopoly_sequence(self.spec_, int(self.degree), z)
