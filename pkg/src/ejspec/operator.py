"""The Jacobi matrix family ``J(alpha)`` and its rescaled companion.

``J(alpha)`` has zero diagonal and off-diagonal weights

    w_n = n          (n odd)
    w_n = alpha * n  (n even)

and the tilde operator ``Jt(beta) = J(alpha) / alpha`` with ``beta = 1/alpha``
has weights ``beta * n`` (n odd) and ``n`` (n even).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "OperatorSpec",
    "Tridiagonal",
    "weight",
    "weights",
    "truncate",
    "apply",
    "kernel_solutions",
    "formal_inverse_entry",
    "formal_inverse_matrix",
    "singular_sequence",
    "singular_sequence_length",
    "to_dense",
]

MODES = ("standard", "tilde")
# singular_sequence: entries taken from the C_k, D_k quadrature before the recurrence
QUADRATURE_ENTRIES = 1024


@dataclass(frozen=True)
class OperatorSpec:
    """Which member of the family: ``mode`` and its complex parameter
    (``alpha`` for ``standard``, ``beta`` for ``tilde``)."""

    mode: str = "standard"
    param: complex = 0j

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "param", complex(self.param))

    @classmethod
    def standard(cls, alpha: complex) -> "OperatorSpec":
        return cls("standard", alpha)

    @classmethod
    def tilde(cls, beta: complex) -> "OperatorSpec":
        return cls("tilde", beta)


@dataclass(frozen=True, eq=False)
class Tridiagonal:
    """Zero-diagonal complex symmetric tridiagonal ``n x n`` matrix."""

    dim: int
    off: np.ndarray

    def __post_init__(self):
        off = np.array(self.off, dtype=complex)
        if off.shape != (max(self.dim - 1, 0),):
            raise DimensionError(f"expected {self.dim - 1} off-diagonal entries, got {off.shape}")
        off.setflags(write=False)
        object.__setattr__(self, "off", off)


def weight(spec: OperatorSpec, n: int) -> complex:
    """Off-diagonal weight ``w_n`` (``n >= 1``)."""
    if n < 1:
        raise DomainError("weights are indexed from 1")
    odd = n % 2 == 1
    if spec.mode == "standard":
        return complex(n) if odd else spec.param * n
    return spec.param * n if odd else complex(n)


def weights(spec: OperatorSpec, n: int) -> np.ndarray:
    """Vector ``(w_1, ..., w_n)``."""
    k = np.arange(1, n + 1, dtype=float)
    w = k.astype(complex)
    if spec.mode == "standard":
        w[1::2] *= spec.param
    else:
        w[0::2] *= spec.param
    return w


def truncate(spec: OperatorSpec, n: int) -> Tridiagonal:
    """Principal ``n x n`` section."""
    if n < 1:
        raise DimensionError("dimension must be positive")
    return Tridiagonal(n, weights(spec, n - 1))


def to_dense(tri: Tridiagonal) -> np.ndarray:
    a = np.zeros((tri.dim, tri.dim), dtype=complex)
    idx = np.arange(tri.dim - 1)
    a[idx, idx + 1] = tri.off
    a[idx + 1, idx] = tri.off
    return a


def apply(tri: Tridiagonal, x) -> np.ndarray:
    """Matrix-vector product ``y = T x``."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (tri.dim,):
        raise DimensionError(f"vector of length {x.shape} for a {tri.dim}x{tri.dim} matrix")
    y = np.zeros_like(x)
    y[:-1] += tri.off * x[1:]
    y[1:] += tri.off * x[:-1]
    return y


def _check_alpha(alpha):
    alpha = complex(alpha)
    if alpha == 0:
        raise DomainError("alpha = 0 has no kernel/inverse construction")
    return alpha


def _half_ratios(n):
    """``(2m-1)!!/(2m)!!`` and ``(2m)!!/(2m+1)!!`` for ``m = 0..n-1``."""
    m = np.arange(n, dtype=float)
    a = np.ones(n)
    b = np.ones(n)
    if n > 1:
        a[1:] = np.cumprod((2 * m[1:] - 1) / (2 * m[1:]))
        b[1:] = np.cumprod((2 * m[1:]) / (2 * m[1:] + 1))
    return a, b


def kernel_solutions(alpha: complex, n_max: int):
    """The two solutions ``u``, ``v`` of ``J(alpha) y = 0`` away from row 1,
    with ``u_1 = 1, u_2 = 0`` and ``v_1 = 0, v_2 = 1``.

    Returns arrays of length ``n_max`` holding entries ``1..n_max``.
    """
    alpha = _check_alpha(alpha)
    half = (n_max + 1) // 2 + 1
    a, b = _half_ratios(half)
    m = np.arange(half)
    u = np.zeros(n_max, dtype=complex)
    v = np.zeros(n_max, dtype=complex)
    # u_{2m+1} = (-1)^m alpha^-m (2m-1)!!/(2m)!!, v_{2m+2} = (-1)^m alpha^m (2m)!!/(2m+1)!!
    sgn = np.where(m % 2 == 0, 1.0, -1.0)
    with np.errstate(over="ignore", invalid="ignore"):
        uo = sgn * a * np.exp(-m * np.log(alpha))
        ve = sgn * b * np.exp(m * np.log(alpha))
    u[0::2] = uo[: len(u[0::2])]
    v[1::2] = ve[: len(v[1::2])]
    return u, v


def formal_inverse_entry(alpha: complex, j: int, k: int) -> complex:
    """Entry ``R_{jk}`` of the formal inverse of ``J(alpha)`` (1-based)."""
    alpha = _check_alpha(alpha)
    if j < 1 or k < 1:
        raise DomainError("indices start at 1")
    if (j + k) % 2 == 0:
        return 0j
    if j % 2 == 1:
        m, n = (j - 1) // 2, (k - 2) // 2
        if m > n:
            return 0j
        return (-1) ** (m + n) * alpha ** (n - m) * _odd_ratio(m) * _even_ratio(n)
    m, n = (j - 2) // 2, (k - 1) // 2
    if n > m:
        return 0j
    return (-1) ** (m + n) * alpha ** (m - n) * _odd_ratio(n) * _even_ratio(m)


def _odd_ratio(m: int) -> float:
    """``(2m-1)!!/(2m)!! = binom(2m, m) / 4^m``."""
    if m > 150:
        return math.exp(math.lgamma(2 * m + 1) - 2 * math.lgamma(m + 1) - m * math.log(4))
    r = 1.0
    for i in range(1, m + 1):
        r *= (2 * i - 1) / (2 * i)
    return r


def _even_ratio(n: int) -> float:
    """``(2n)!!/(2n+1)!! = 4^n (n!)^2 / (2n+1)!``."""
    if n > 150:
        return math.exp(n * math.log(4) + 2 * math.lgamma(n + 1) - math.lgamma(2 * n + 2))
    r = 1.0
    for i in range(1, n + 1):
        r *= (2 * i) / (2 * i + 1)
    return r


def formal_inverse_matrix(alpha: complex, n: int) -> np.ndarray:
    """Dense ``n x n`` section of the formal inverse ``R_{jk} = u_{min} v_{max}``."""
    u, v = kernel_solutions(alpha, n)
    R = np.zeros((n, n), dtype=complex)
    # R_{jk} = u_j v_k for j <= k; evaluate as a product of bounded factors
    a, b = _half_ratios(n // 2 + 1)
    alpha = complex(alpha)
    for jj in range(0, n, 2):  # odd row j = jj+1 -> m
        m = jj // 2
        ks = np.arange(jj + 1, n, 2)  # even columns k = ks+1 -> n = (k-2)//2
        nn = (ks - 1) // 2
        vals = (-1.0) ** (m + nn) * alpha ** (nn - m) * a[m] * b[nn]
        R[jj, ks] = vals
        R[ks, jj] = vals
    return R


def singular_sequence_length(a: float, cap: int = 2_000_000) -> int:
    """Smallest ``n`` with ``a**(2n) sqrt(n) < 1e-16``, capped."""
    if not 0 < a < 1:
        raise DomainError("a must lie in (0, 1)")
    la = math.log(a)
    n = 1
    # coarse search then refine; the left side is decreasing for n >= 1
    while 2 * n * la + 0.5 * math.log(n) >= math.log(1e-16):
        n *= 2
        if n >= cap:
            return cap
    lo, hi = n // 2, n
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if 2 * mid * la + 0.5 * math.log(mid) < math.log(1e-16):
            hi = mid
        else:
            lo = mid
    return min(hi, cap)


def singular_sequence(spec: OperatorSpec, z: complex, a: float, n_max: int | None = None, tol: float = 1e-13) -> np.ndarray:
    """Damped solution ``(a**n u_n)`` used to certify essential spectrum.

    For ``z = 0`` the ``u_n`` are the kernel solution with ``u_1 = 1``; for
    ``z != 0`` they are the solution of ``J u = z u - 2 cos(K z) e_1`` built
    from the integrals ``C_k, D_k`` (standard mode only); past the first
    1024 entries the three-term recurrence takes over.

    A ``RuntimeWarning`` is emitted when ``|param| != 1`` or ``param = +-1``,
    where the construction does not produce a singular sequence.
    """
    if not 0 < a < 1:
        raise DomainError("a must lie in (0, 1)")
    p = spec.param
    if abs(abs(p) - 1) > 1e-12 or p in (1, -1):
        warnings.warn("singular sequences are meaningful only for |param| = 1, param != +-1", RuntimeWarning, stacklevel=2)
    if n_max is None:
        n_max = singular_sequence_length(a)
    n = np.arange(1, n_max + 1)
    damp = np.exp(n * math.log(a))
    z = complex(z)
    if z == 0:
        alpha = p if spec.mode == "standard" else 1 / p
        u, _ = kernel_solutions(alpha, n_max)
        return damp * u
    if spec.mode != "standard":
        raise DomainError("the z != 0 construction is available in standard mode only")
    from .elliptic import elliptic_constants
    from .spectral import cd_table

    mod = elliptic_constants(p)
    head = min(n_max, QUADRATURE_ENTRIES)
    kmax = head // 2 + 1
    C, D = cd_table(kmax * 2, 1j * z, mod, tol=tol)
    k = np.arange(kmax)
    phase = np.exp(1j * mod.big_k * z)
    with np.errstate(under="ignore"):
        apow = np.exp(k * np.log(complex(p)))
    sgn = np.where(k % 2 == 0, 1.0, -1.0)
    u = np.zeros(max(2 * kmax, n_max), dtype=complex)
    u[0 : 2 * kmax : 2] = 1j * sgn * apow * phase * C[0 : 2 * kmax : 2]
    u[1 : 2 * kmax : 2] = -sgn * apow * phase * D[1 : 2 * kmax + 1 : 2]
    if n_max > head:
        # the quadrature cannot resolve sn**k for k in the tens of thousands;
        # on |alpha| = 1 neither recurrence solution dominates, so continue
        # (J u)_n = z u_n forward
        w = weights(spec, n_max)
        for i in range(head - 1, n_max - 1):
            u[i + 1] = (z * u[i] - w[i - 1] * u[i - 1]) / w[i]
    return damp * u[:n_max]
