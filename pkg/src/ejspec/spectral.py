"""Closed-form spectral data of ``J(alpha)`` and ``Jt(beta)``.

Everything here is built from the integrals

    C_k(z) = int_0^{2K} exp(-z t) cn(t) sn(t)**k dt
    D_k(z) = int_0^{2K} exp(-z t) dn(t) sn(t)**k dt

taken along the straight segment from 0 to ``2K(alpha)``, from the nome
``q`` through Mittag-Leffler expansions, and from truncated power series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, pi

import numpy as np

from .elliptic import Modulus, TaylorTable, digamma, elliptic_constants, sncndn, taylor_C
from .errors import ConvergenceError, DimensionError, DomainError, RegimeError, SpectrumError
from .operator import OperatorSpec, apply, truncate, weights
from .powerseries import Series, elliptic_series, ps_exp_linear

__all__ = [
    "SpectralItem",
    "CDPair",
    "cd_table",
    "segment_CD",
    "cd_residuals",
    "cd_asymptotic",
    "modulus_for",
    "eigenvalue",
    "spectral_item",
    "eigenvector",
    "eigenvector_asymptotic",
    "eigenvector_large_n",
    "weyl_m",
    "spectral_measure_weight",
    "orthopoly",
    "orthopoly_sequence",
    "rodriguez",
    "fourier_gamma_delta",
    "fourier_table",
    "orthogonality_sums",
    "generating_function_residual",
    "projection_norm",
    "eigenvector_norm_sq",
    "pairing",
    "moment",
    "moment_exact",
    "meixner_pollaczek",
    "meixner_pollaczek_check",
]

GL_START = 32
GL_CAP = 4096
TRAP_START = 64
TRAP_CAP = 2**14
POLE_DISTANCE = 1e-10


@dataclass(frozen=True, eq=False)
class SpectralItem:
    """One eigenpair: index ``N``, eigenvalue, leading eigenvector entries and
    (optionally) the norm of the spectral projection."""

    index: int
    eigenvalue: complex
    eigvec: np.ndarray
    proj_norm: float | None = None


@dataclass(frozen=True)
class CDPair:
    c: complex
    d: complex
    k: int
    z: complex


# ---------------------------------------------------------------------------
# C_k / D_k integrals


@lru_cache(maxsize=16)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _cd_fixed(k_max, z, mod, n, block=256):
    x, w = _leggauss(n)
    K = mod.big_k
    t = K * (x + 1)
    sn, cn, dn = sncndn(t, mod)
    with np.errstate(under="ignore", over="ignore"):
        e = np.exp(-z * t) * (w * K)
    base = np.vstack([e * cn, e * dn]).T  # (n, 2)
    C = np.empty(k_max + 1, dtype=complex)
    D = np.empty(k_max + 1, dtype=complex)
    power = np.ones(n, dtype=complex)
    with np.errstate(under="ignore"):
        for start in range(0, k_max + 1, block):
            stop = min(start + block, k_max + 1)
            rows = np.empty((stop - start, n), dtype=complex)
            rows[0] = power
            for i in range(1, stop - start):
                rows[i] = rows[i - 1] * sn
            power = rows[-1] * sn
            cd = rows @ base
            C[start:stop] = cd[:, 0]
            D[start:stop] = cd[:, 1]
    return C, D


def cd_table(k_max: int, z: complex, mod: Modulus, tol: float = 1e-12):
    """Arrays ``C_0..C_kmax`` and ``D_0..D_kmax`` at one point ``z``.

    Gauss--Legendre quadrature on the segment ``[0, 2K]``; the node count
    is doubled from 32 until two successive tables agree to ``tol``
    relative to their largest entry.  A table below ``1e-10`` of the other
    one is treated as zero and measured on the other one's scale.

    Raises
    ------
    ConvergenceError
        If 4096 nodes are not enough.
    """
    if mod.is_limit or abs(mod.alpha) > 1 or mod.alpha in (1, -1):
        raise DomainError("C_k, D_k need |alpha| <= 1, alpha != +-1")
    if k_max < 0:
        raise DomainError("k_max must be non-negative")
    z = complex(z)
    n = GL_START
    C, D = _cd_fixed(k_max, z, mod, n)
    while n < GL_CAP:
        n *= 2
        C2, D2 = _cd_fixed(k_max, z, mod, n)
        # a table that vanishes by symmetry (z = 0) holds only rounding noise;
        # measure it against the other one
        joint = max(np.max(np.abs(C2)), np.max(np.abs(D2)), 1e-300)
        sc, sd = np.max(np.abs(C2)), np.max(np.abs(D2))
        errc = np.max(np.abs(C2 - C)) / (sc if sc > 1e-10 * joint else joint)
        errd = np.max(np.abs(D2 - D)) / (sd if sd > 1e-10 * joint else joint)
        C, D = C2, D2
        if errc < tol and errd < tol:
            return C, D
    raise ConvergenceError(f"C_k/D_k quadrature not converged with {GL_CAP} nodes (z={z})")


def segment_CD(k: int, z: complex, mod: Modulus, tol: float = 1e-12) -> CDPair:
    """``C_k(z)`` and ``D_k(z)`` as a :class:`CDPair`."""
    C, D = cd_table(k, z, mod, tol)
    return CDPair(complex(C[k]), complex(D[k]), k, complex(z))


def cd_residuals(C, D, z: complex, mod: Modulus) -> np.ndarray:
    """Residuals of the four integration-by-parts relations among the
    ``C_k, D_k`` (first two seeds, then the two three-term families for
    ``k = 1 .. len-2``).  Returns the largest absolute residual of each."""
    a2 = mod.alpha**2
    e = np.exp(-2 * mod.big_k * z)
    r1 = -z * D[0] - a2 * C[1] - (e - 1)
    r2 = -z * C[0] - D[1] - (-e - 1)
    k = np.arange(1, len(C) - 1)
    r3 = k * C[k - 1] - z * D[k] - a2 * (k + 1) * C[k + 1]
    r4 = k * D[k - 1] - z * C[k] - (k + 1) * D[k + 1]
    return np.array([abs(r1), abs(r2), np.max(np.abs(r3), initial=0.0), np.max(np.abs(r4), initial=0.0)])


def cd_asymptotic(k: int, z: complex, mod: Modulus):
    """Leading large-``k`` terms of ``(C_k, D_k)`` from the saddle at ``t = K``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    e = np.exp(-z * mod.big_k)
    c = math.sqrt(2 * pi) / (1 - mod.alpha**2) * z * e * k**-1.5
    d = math.sqrt(2 * pi) * e * k**-0.5
    return complex(c), complex(d)


# ---------------------------------------------------------------------------
# eigenvalues and eigenvectors


def modulus_for(spec: OperatorSpec) -> Modulus:
    """Elliptic constants of the operator parameter (``alpha`` or ``beta``)."""
    return elliptic_constants(spec.param)


def _discrete(spec):
    p = spec.param
    if abs(p) == 1 or abs(abs(p) - 1) < 1e-15:
        raise RegimeError(f"|param| = 1: the spectrum is not discrete (param={p})")
    if abs(p) > 1:
        other = "tilde" if spec.mode == "standard" else "standard"
        raise RegimeError(f"|param| > 1 in {spec.mode} mode; use {other} mode with the reciprocal parameter")
    return modulus_for(spec)


def eigenvalue(spec: OperatorSpec, N: int) -> complex:
    """``pi (2N+1) / (2K)`` (standard) or ``pi N / K`` (tilde)."""
    mod = _discrete(spec)
    if spec.mode == "standard":
        return pi * (2 * N + 1) / (2 * mod.big_k)
    return pi * N / mod.big_k


def _v1(spec, mod, N):
    if spec.mode == "standard":
        return 2j * pi * mod.mass_factor(N) / mod.alpha
    return 2j * pi * mod.even_mass_factor(N)


def eigenvector(spec: OperatorSpec, N: int, m: int, tol: float = 1e-12, method: str = "quadrature") -> np.ndarray:
    """First ``m`` entries of the eigenvector for the ``N``-th eigenvalue.

    Parameters
    ----------
    method : {"quadrature", "recurrence"}
        ``quadrature`` evaluates the ``C_k, D_k`` integrals; ``recurrence``
        multiplies the closed-form first entry by the orthonormal-type
        polynomials ``p_k(lambda_N)``.  The integrals lose all relative
        accuracy once the entries are of size ``q**N``, so use the
        recurrence for large ``|N|``.  The recurrence in turn is unstable in
        ``m`` (rounding in ``lambda_N`` feeds the growing solution), so keep
        ``m`` small with it.
    """
    mod = _discrete(spec)
    if spec.param == 0:
        raise DomainError("eigenvectors are normalised through 1/param; param = 0 is excluded")
    if m < 1:
        raise DimensionError("m must be positive")
    lam = eigenvalue(spec, N)
    if method == "recurrence":
        return _v1(spec, mod, N) * orthopoly_sequence(spec, m, lam)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    C, D = cd_table(max(m - 1, 1), 1j * lam, mod, tol)
    p = mod.alpha
    v = np.empty(m, dtype=complex)
    k_odd = np.arange((m + 1) // 2)
    k_even = np.arange(m // 2)
    s_odd = np.where(k_odd % 2 == 0, 1.0, -1.0)
    s_even = np.where(k_even % 2 == 0, 1.0, -1.0)
    if spec.mode == "standard":
        v[0::2] = 1j * s_odd * p**k_odd * C[2 * k_odd]
        v[1::2] = -s_even * p**k_even * D[2 * k_even + 1]
    else:
        v[0::2] = 1j * s_odd * p**k_odd * D[2 * k_odd]
        v[1::2] = -s_even * p ** (k_even + 1) * C[2 * k_even + 1]
    return v


def eigenvector_asymptotic(spec: OperatorSpec, N: int, k: int):
    """Leading terms of the entries ``(2k+1, 2k+2)`` for large ``k``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    mod = _discrete(spec)
    lam = eigenvalue(spec, N)
    p = mod.alpha
    sign = -1.0 if (N + k) % 2 else 1.0
    root = math.sqrt(pi)
    if spec.mode == "standard":
        odd = 1j * root * sign * lam / (2 * (1 - p**2)) * p**k * k**-1.5
        even = 1j * root * sign * p**k * k**-0.5
    else:
        odd = 1j * root * sign * p**k * k**-0.5
        even = -1j * root * sign * lam / (2 * (1 - p**2)) * p ** (k + 1) * k**-1.5
    return complex(odd), complex(even)


def eigenvector_large_n(spec: OperatorSpec, N: int, k: int) -> complex:
    """Leading term of entry ``k`` as ``N -> +inf`` with ``k`` fixed."""
    mod = _discrete(spec)
    K = mod.big_k
    p = mod.alpha
    if spec.mode == "standard":
        head = 2j * pi**k / (p ** ((k + 1) // 2) * K ** (k - 1) * factorial(k - 1))
        return complex(head * N ** (k - 1) * mod.half_nome * mod.nome**N)
    head = 2j * pi**k / (p ** (k // 2) * K ** (k - 1) * factorial(k - 1))
    return complex(head * N ** (k - 1) * mod.nome**N)


def spectral_item(spec: OperatorSpec, N: int, m: int = 20, with_norm: bool = False, tol: float = 1e-12) -> SpectralItem:
    vec = eigenvector(spec, N, m, tol)
    vec.setflags(write=False)
    norm = projection_norm(spec, N) if with_norm else None
    return SpectralItem(N, eigenvalue(spec, N), vec, norm)


# ---------------------------------------------------------------------------
# Weyl m-function and spectral measure


def _m_unit(z):
    """m-function of ``J(1)`` through the digamma function."""
    if z.imag > 0:
        return 0.5j * (digamma(0.75 - 0.25j * z) - digamma(0.25 - 0.25j * z))
    if z.imag < 0:
        return -0.5j * (digamma(0.75 + 0.25j * z) - digamma(0.25 + 0.25j * z))
    raise SpectrumError("z on the real line, which is the spectrum of J(1)")


def _ml_sum(z, mod, tilde, tol, m_cap=2**20):
    K = mod.big_k
    q = abs(mod.nome)
    if tilde:
        lam = lambda n: pi * n / K  # noqa: E731
        dist = abs(z - pi / K * round((z * K / pi).real)) if K.imag == 0 else None
    else:
        lam = lambda n: pi * (2 * n + 1) / (2 * K)  # noqa: E731
        dist = None
    if dist is None:
        # nearest eigenvalue along the (possibly tilted) line of poles
        step = pi / K
        x0 = 0 if tilde else pi / (2 * K)
        t = ((z - x0) / step).real
        dist = min(abs(z - (x0 + j * step)) for j in (math.floor(t), math.ceil(t)))
    if dist < POLE_DISTANCE:
        raise SpectrumError(f"z={z} lies within {POLE_DISTANCE} of an eigenvalue")
    total = 0j
    start = 0
    M = 8
    while True:
        n = np.arange(start, M)
        if tilde:
            qn = mod.nome**n
            w = qn / (1 + qn * qn)
            ln = pi * n / K
            terms = np.where(n == 0, w / z, w * 2 * z / (z * z - ln * ln))
        else:
            qn = mod.nome**n
            w = mod.half_nome_over_alpha * qn / (1 + mod.half_nome**2 * qn * qn)
            ln = pi * (2 * n + 1) / (2 * K)
            terms = w * 2 * z / (z * z - ln * ln)
        inc = np.sum(terms)
        total += inc
        tail = q**M / max(1 - q * q, 1e-300) / max(dist, 1e-300) if q else 0.0
        if abs(inc) <= tol * max(abs(total), 1e-300) and tail * abs(mod.half_nome_over_alpha if not tilde else 1) < tol * max(abs(total), 1e-300):
            break
        if M >= m_cap:
            raise ConvergenceError("Mittag-Leffler sum did not converge")
        start, M = M, 2 * M
    return -(pi / K) * total


def weyl_m(spec: OperatorSpec, z: complex, tol: float = 1e-14) -> complex:
    """Weyl m-function ``<e1, (J - z)^{-1} e1>``.

    Uses the Mittag-Leffler expansion over the eigenvalues for
    ``|param| < 1`` (including ``param = 0`` through the finite limit of
    ``q**(1/2)/alpha``), the digamma closed form for ``param = +-1`` and the
    reciprocal scaling ``J(alpha) = alpha Jt(1/alpha)`` for ``|param| > 1``.

    Raises
    ------
    SpectrumError
        If ``z`` is within ``1e-10`` of an eigenvalue.
    RegimeError
        If ``|param| = 1`` but ``param != +-1`` (the spectrum is all of C).
    """
    z = complex(z)
    p = spec.param
    if p in (1, -1):
        return _m_unit(z)
    if abs(abs(p) - 1) < 1e-15:
        raise RegimeError("for |param| = 1, param != +-1, every z is in the essential spectrum")
    if abs(p) > 1:
        other = OperatorSpec("tilde" if spec.mode == "standard" else "standard", 1 / p)
        return weyl_m(other, z / p, tol) / p
    mod = modulus_for(spec)
    return complex(_ml_sum(z, mod, spec.mode == "tilde", tol))


def spectral_measure_weight(mod: Modulus, N: int, mode: str = "standard") -> complex:
    """Point mass of the spectral measure of ``e1`` at the ``N``-th eigenvalue."""
    if abs(mod.alpha) >= 1:
        raise RegimeError("point masses exist only for |param| < 1")
    if mode == "standard":
        return pi / mod.big_k * mod.mass_factor_over_alpha(N)
    if mode == "tilde":
        return pi / mod.big_k * mod.even_mass_factor(N)
    raise DomainError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# orthogonal polynomials


def orthopoly_sequence(spec: OperatorSpec, n: int, x) -> np.ndarray:
    """Values ``p_1(x) .. p_n(x)`` of the normalised polynomials, ``p_1 = 1``.

    ``x`` may be an array; the polynomial index runs along the last axis.
    Uses ``w_k p_{k+1} = x p_k - w_{k-1} p_{k-1}``.
    """
    if spec.param == 0:
        raise DomainError("p_n is normalised by powers of the parameter; param = 0 is excluded")
    if n < 1:
        raise DimensionError("n must be positive")
    x = np.asarray(x, dtype=complex)
    w = weights(spec, n)
    out = np.empty(x.shape + (n,), dtype=complex)
    out[..., 0] = 1
    if n > 1:
        out[..., 1] = x / w[0]
    for k in range(2, n):
        # w_k p_{k+1} with 1-based k; out index k holds p_{k+1}
        out[..., k] = (x * out[..., k - 1] - w[k - 2] * out[..., k - 2]) / w[k - 1]
    return out


def orthopoly(spec: OperatorSpec, n: int, x: complex):
    """Monic ``P_n(x)`` and normalised ``p_n(x)``.

    ``P_n`` follows ``P_{n+1} = x P_n - w_{n-1}**2 P_{n-1}`` with
    ``P_1 = 1, P_2 = x``; ``p_n = P_n / (w_1 ... w_{n-1})``.  Beyond
    ``n = 300`` ``P_n`` is rebuilt from ``p_n`` and the log of the weight
    product so that intermediate values cannot overflow.

    Raises
    ------
    OverflowError
        If ``|P_n|`` or ``|p_n|`` exceeds the float range.
    """
    if n < 1:
        raise DimensionError("n must be positive")
    x = complex(x)
    if spec.param == 0 or n <= 300:
        w = weights(spec, max(n - 1, 1))
        P_prev, P = 0j, 1 + 0j
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(1, n):
                P_prev, P = P, x * P - (w[k - 2] ** 2 * P_prev if k >= 2 else 0)
        if not np.isfinite(P):
            raise OverflowError(f"|P_{n}({x})| exceeds the float range")
        if spec.param == 0:
            return P, complex("nan")
        prod = np.prod(w[: n - 1]) if n > 1 else 1
        return P, P / prod
    with np.errstate(over="ignore", invalid="ignore"):
        p = complex(orthopoly_sequence(spec, n, x)[-1])
    if not np.isfinite(p):
        raise OverflowError(f"|p_{n}({x})| exceeds the float range")
    w = weights(spec, n - 1)
    logmag = float(np.sum(np.log(np.abs(w))))
    phase = np.prod(w / np.abs(w))
    if p == 0:
        return 0j, 0j
    total = logmag + math.log(abs(p))
    if total > 709:
        raise OverflowError(f"|P_{n}| ~ exp({total:.1f}) exceeds the float range; use p_n")
    return complex(p * phase * math.exp(logmag)), p


def rodriguez(spec: OperatorSpec, n: int, z: complex, table: TaylorTable | None = None) -> complex:
    """``p_n(z)`` from the Rodriguez-type derivative formula.

    For ``n = 2k+1`` the coefficient of ``u**(2k)`` in
    ``exp(i z u) dn(u) (u/sn u)**(2k+1)``, for ``n = 2k+2`` that of
    ``u**(2k+1)`` in ``exp(i z u) cn(u) (u/sn u)**(2k+2)``, times
    ``(-1)**k / alpha**k`` and ``i (-1)**(k+1) / alpha**k`` respectively.

    In tilde mode the series are taken at modulus ``beta`` after the
    reciprocal-modulus change of variables, which swaps the roles of ``cn``
    and ``dn`` and turns the prefactors into ``(-1)**k beta**-k`` and
    ``i (-1)**(k+1) beta**-(k+1)``.
    """
    if n < 1:
        raise DimensionError("n must be positive")
    p = spec.param
    if p == 0:
        raise DomainError("param = 0 is excluded")
    L = n + 2
    if table is None:
        table = taylor_C(L + 1)
    z = complex(z)
    sn = elliptic_series("sn", p, L + 1, table)
    # u / sn(u) as the reciprocal of sn(u)/u
    ratio = Series.constant(1, L) / Series(sn.coeffs[1:])
    k = (n - 1) // 2
    odd = n % 2 == 1
    if spec.mode == "standard":
        lead = elliptic_series("dn" if odd else "cn", p, L, table)
    else:
        lead = elliptic_series("cn" if odd else "dn", p, L, table)
    f = ps_exp_linear(1j * z, L) * lead * ratio**n
    coeff = complex(f[n - 1])
    if spec.mode == "standard":
        return coeff * (-1) ** k / p**k if odd else 1j * (-1) ** (k + 1) * coeff / p**k
    return coeff * (-1) ** k / p**k if odd else 1j * (-1) ** (k + 1) * coeff / p ** (k + 1)


# ---------------------------------------------------------------------------
# Fourier coefficients, generating functions, projection norms


def _trap_nodes(n):
    return 2 * pi * np.arange(n) / n


def _fourier_fixed(mod, shift, k_max, n, tilde):
    s = _trap_nodes(n)
    sn, cn, dn = sncndn(mod.big_k * s / pi, mod)
    e = np.exp(-1j * shift * s) / n
    if tilde:
        base_g, base_d = e * dn, e * cn * sn
    else:
        base_g, base_d = e * cn, e * dn * sn
    s2 = sn * sn
    g = np.empty(k_max + 1, dtype=complex)
    d = np.empty(k_max + 1, dtype=complex)
    power = np.ones(n, dtype=complex)
    with np.errstate(under="ignore"):
        for k in range(k_max + 1):
            g[k] = np.dot(base_g, power)
            d[k] = np.dot(base_d, power)
            power = power * s2
    return g, d


def fourier_table(mod: Modulus, N: int, k_max: int, nodes: int | None = None, tilde: bool = False, tol: float = 1e-13):
    """Fourier coefficients ``gamma_N(k), delta_N(k)`` for ``k = 0..k_max``.

    Standard: coefficients of ``exp(-is/2) cn(Ks/pi) sn(Ks/pi)**(2k)`` and
    ``exp(-is/2) dn sn**(2k+1)``.  Tilde: the ``dn sn**(2k)`` and
    ``cn sn**(2k+1)`` analogues without the half shift.  Periodic trapezoid
    rule, nodes doubled from 64 until stable (or a fixed ``nodes``).

    Raises
    ------
    ConvergenceError
        If ``2**14`` nodes are not enough.
    """
    if mod.is_limit or mod.alpha == 0:
        raise DomainError("Fourier coefficients need 0 < |alpha| < 1")
    shift = N if tilde else N + 0.5
    if nodes is not None:
        return _fourier_fixed(mod, shift, k_max, nodes, tilde)
    n = TRAP_START
    g, d = _fourier_fixed(mod, shift, k_max, n, tilde)
    while n < TRAP_CAP:
        n *= 2
        g2, d2 = _fourier_fixed(mod, shift, k_max, n, tilde)
        scale = max(np.max(np.abs(g2)), np.max(np.abs(d2)), 1e-300)
        if max(np.max(np.abs(g2 - g)), np.max(np.abs(d2 - d))) < tol * scale:
            return g2, d2
        g, d = g2, d2
    raise ConvergenceError(f"trapezoid rule not converged with {TRAP_CAP} nodes")


def fourier_gamma_delta(mod: Modulus, N: int, k: int, nodes: int | None = None):
    """``(gamma_N(k), delta_N(k))``; see :func:`fourier_table`."""
    g, d = fourier_table(mod, N, k, nodes)
    return complex(g[k]), complex(d[k])


def _default_kmax(mod):
    a = abs(mod.alpha)
    return max(8, int(math.ceil(math.log(1e-17) / (2 * math.log(a)))) + 2)


def orthogonality_sums(mod: Modulus, N: int, M: int, k_max: int | None = None):
    """``sum_k gamma_N(k) gamma_M(k) alpha**(2k)`` and the same with delta.

    Both vanish for ``M != N``.  For ``M == N`` the gamma sum is
    ``pi w / (2 alpha K)`` with ``w = q**(N+1/2)/(1+q**(2N+1))`` and the
    delta sum is its negative, as required by the closed-form pairing of
    eigenvectors.  The terms decay like ``|alpha|**(2k) k**-3``; the default ``k_max``
    makes ``|alpha|**(2 k_max) < 1e-17``.
    """
    if k_max is None:
        k_max = _default_kmax(mod)
    gN, dN = fourier_table(mod, N, k_max)
    if M == N:
        gM, dM = gN, dN
    else:
        gM, dM = fourier_table(mod, M, k_max)
    a2k = mod.alpha ** (2 * np.arange(k_max + 1))
    return complex(np.sum(gN * gM * a2k)), complex(np.sum(dN * dM * a2k))


def generating_function_residual(mod: Modulus, N: int, t: float, k_max: int | None = None):
    """Largest residual of the two generating-function identities at ``t``:

        cn(Kt/pi) sum_k gamma_N(k) alpha**(2k) sn**(2k) = (pi/(alpha K)) w cos((N+1/2) t)
        dn(Kt/pi) sum_k delta_N(k) alpha**(2k) sn**(2k+1) = -(i pi/(alpha K)) w sin((N+1/2) t)

    with ``w = q**(N+1/2) / (1 + q**(2N+1))``.  Returns the residual of the
    first identity and of the second one separately.
    """
    if k_max is None:
        k_max = _default_kmax(mod)
    g, d = fourier_table(mod, N, k_max)
    sn, cn, dn = sncndn(mod.big_k * t / pi, mod)
    pw = (mod.alpha**2 * sn * sn) ** np.arange(k_max + 1)
    lhs1 = cn * np.sum(g * pw)
    lhs2 = dn * sn * np.sum(d * pw)
    w = pi / mod.big_k * mod.mass_factor_over_alpha(N)
    rhs1 = w * math.cos((N + 0.5) * t)
    rhs2 = -1j * w * math.sin((N + 0.5) * t)
    return abs(lhs1 - rhs1), abs(lhs2 - rhs2)


def pairing(spec: OperatorSpec, N: int) -> complex:
    """Closed form of ``<v(conj param), v(param)>``: ``4 pi K w / alpha`` in
    standard mode, ``4 pi K q**N/(1+q**(2N))`` in tilde mode."""
    mod = _discrete(spec)
    if spec.mode == "standard":
        return 4 * pi * mod.big_k * mod.mass_factor_over_alpha(N)
    return 4 * pi * mod.big_k * mod.even_mass_factor(N)


def _norm_sq_fixed(mod, shift, tilde, n):
    s = _trap_nodes(n)
    sn, cn, dn = sncndn(mod.big_k * s / pi, mod)
    e = np.exp(-1j * shift * s)
    a2 = abs(mod.alpha) ** 2
    if tilde:
        # the even entries carry one extra power of beta
        f1, f2 = dn, abs(mod.alpha) * sn * cn
    else:
        f1, f2 = cn, sn * dn
    # rows index u, columns index v
    num = np.outer(e * f1, e * np.conj(f1)) - np.outer(e * f2, e * np.conj(f2))
    den = 1 - a2 * np.outer(sn * sn, np.conj(sn * sn))
    h = 2 * pi / n
    return abs(mod.big_k) ** 2 / pi**2 * np.sum(num / den) * h * h


def eigenvector_norm_sq(spec: OperatorSpec, N: int, nodes: int | None = None, tol: float = 1e-12) -> float:
    """``||v^(N)||**2`` from the double periodic-trapezoid integral."""
    mod = _discrete(spec)
    if mod.alpha == 0:
        raise DomainError("param = 0 is excluded")
    tilde = spec.mode == "tilde"
    shift = N if tilde else N + 0.5
    if nodes is not None:
        return float(_norm_sq_fixed(mod, shift, tilde, nodes).real)
    n = 64
    val = _norm_sq_fixed(mod, shift, tilde, n)
    while n < 2048:
        n *= 2
        new = _norm_sq_fixed(mod, shift, tilde, n)
        if abs(new - val) < tol * abs(new):
            return float(new.real)
        val = new
    raise ConvergenceError("double trapezoid rule not converged with 2048 nodes")


def projection_norm(spec: OperatorSpec, N: int, nodes: int | None = None) -> float:
    """Norm of the rank-one spectral projection onto ``v^(N)``:
    ``||v||**2 / |<v(conj param), v(param)>|``."""
    return eigenvector_norm_sq(spec, N, nodes) / abs(pairing(spec, N))


# ---------------------------------------------------------------------------
# moments and the alpha = 1 polynomials


def moment(spec: OperatorSpec, n: int, dim: int, table: TaylorTable | None = None) -> complex:
    """``(J_dim**n)_{11}`` by repeated matrix-vector products.

    Exact for the infinite matrix as soon as ``dim > n/2``; compare with
    :func:`moment_exact`.
    """
    if dim < n + 1:
        raise DimensionError(f"dim must be at least n+1 = {n + 1}")
    tri = truncate(spec, dim)
    x = np.zeros(dim, dtype=complex)
    x[0] = 1
    for _ in range(n):
        x = apply(tri, x)
    return complex(x[0])


def moment_exact(spec: OperatorSpec, n: int, table: TaylorTable | None = None) -> complex:
    """``C_n(alpha**2)`` (even ``n``), ``beta**n C_n(beta**-2)`` (tilde), 0 (odd ``n``)."""
    if n % 2:
        return 0j
    if table is None or table.n_max < n:
        table = taylor_C(n)
    x = spec.param**2
    if spec.mode == "standard":
        return complex(table.evaluate(n, x))
    return complex(table.evaluate_reversed(n, x))


def meixner_pollaczek(n: int, x):
    """``M_n(x)`` from ``M_{k+1} = x M_k - k**2 M_{k-1}``, ``M_0 = 1``, ``M_1 = x``."""
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, x * cur - k * k * prev
    return cur


def meixner_pollaczek_check(m: int, n: int, quad_span: float = 60.0, nodes: int = 4096) -> complex:
    """``int M_m(x) M_n(x) / cosh(pi x / 2) dx`` by the trapezoid rule on
    ``[-quad_span, quad_span]``; the exact value is ``2 (n!)**2`` if
    ``m == n`` and 0 otherwise."""
    if 1 / math.cosh(min(pi * quad_span / 2, 700)) >= 1e-16:
        raise DomainError("quad_span too small: sech(pi span / 2) must be below 1e-16")
    x = np.linspace(-quad_span, quad_span, nodes)
    h = x[1] - x[0]
    f = meixner_pollaczek(m, x) * meixner_pollaczek(n, x) / np.cosh(pi * x / 2)
    return complex(h * (np.sum(f) - 0.5 * (f[0] + f[-1])))
