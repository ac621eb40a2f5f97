"""Jacobian elliptic functions, theta functions and related constants for a
complex modulus.

Conventions
-----------
The modulus is called ``alpha`` (``k`` in most textbooks).  Theta functions
follow the Whittaker--Watson normalisation

    theta_1(v, q) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v)
    theta_2(v, q) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1) v)
    theta_3(v, q) = 1 + 2 sum_{n>=1}        q^{n^2} cos(2 n v)
    theta_4(v, q) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n v)

and ``sn, cn, dn`` are theta quotients in the variable ``v = pi u / (2K)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb, pi

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError, StripError

__all__ = [
    "Modulus",
    "EllipticTriple",
    "TaylorTable",
    "complementary_modulus",
    "elliptic_constants",
    "theta",
    "sncndn",
    "jacobi_triple",
    "fourier_eval",
    "taylor_C",
    "digamma",
]

EULER_GAMMA = 0.57721566490153286061

# radius of the pole exclusion disk, in units of |K|
POLE_TOL = 1e-8

_THETA_TERM_CAP = 10_000
NEWTON_EPS = 0.05


@dataclass(frozen=True)
class Modulus:
    """Elliptic constants attached to one complex modulus.

    Attributes
    ----------
    alpha, alpha_prime : complex
        Modulus and complementary modulus, ``alpha**2 + alpha_prime**2 = 1``.
    big_k, big_k_prime : complex
        Complete elliptic integral ``K(alpha)`` and the companion ``K'``
        read off from ``q**(1/2) = exp(-pi K' / (2K))``, so that
        ``sn(u + iK') = 1/(alpha sn u)``.  For some complex ``alpha`` this
        differs from ``K(alpha_prime)`` by a multiple of ``2iK``.
    nome : complex
        ``q = exp(-pi K'/K)``.
    half_nome : complex
        ``q**(1/2)`` on the branch that is an odd analytic function of
        ``alpha`` (``q**(1/2) ~ alpha/4`` as ``alpha -> 0``).  The principal
        square root of ``q`` is *not* always this branch, e.g. for purely
        imaginary ``alpha`` the nome is negative.
    is_limit : bool
        True only for the ``alpha = 1`` sentinel where ``K`` is infinite.
    """

    alpha: complex
    alpha_prime: complex
    big_k: complex
    big_k_prime: complex
    nome: complex
    half_nome: complex
    is_limit: bool = False

    @property
    def half_nome_over_alpha(self) -> complex:
        """``q**(1/2) / alpha`` with its finite limit ``1/4`` at ``alpha = 0``."""
        if self.alpha == 0:
            return 0.25 + 0j
        return self.half_nome / self.alpha

    def mass_factor(self, n: int) -> complex:
        """``q**(n+1/2) / (1 + q**(2n+1))``, evaluated through the ``n -> -n-1``
        symmetry so that only non-negative powers of ``q`` appear."""
        m = n if n >= 0 else -n - 1
        q = self.nome
        return self.half_nome * q**m / (1 + self.half_nome**2 * q ** (2 * m))

    def mass_factor_over_alpha(self, n: int) -> complex:
        """``mass_factor(n) / alpha``, finite at ``alpha = 0``."""
        m = n if n >= 0 else -n - 1
        q = self.nome
        return self.half_nome_over_alpha * q**m / (1 + self.half_nome**2 * q ** (2 * m))

    def even_mass_factor(self, n: int) -> complex:
        """``q**n / (1 + q**(2n))`` (symmetric in ``n``)."""
        m = abs(n)
        q = self.nome
        return q**m / (1 + q ** (2 * m))


@dataclass(frozen=True)
class EllipticTriple:
    """Values ``(sn, cn, dn)`` at one argument (or an array of arguments)."""

    sn: complex
    cn: complex
    dn: complex


@dataclass(frozen=True)
class TaylorTable:
    """Integer polynomials ``C_0 .. C_nmax`` (ascending coefficient tuples)."""

    polys: tuple

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n: int) -> tuple:
        return self.polys[n]

    def evaluate(self, n: int, x: complex) -> complex:
        """``C_n(x)``."""
        return _horner(self.polys[n], x)

    def evaluate_reversed(self, n: int, x: complex) -> complex:
        """``x**(n//2) * C_n(1/x)`` written as a polynomial in ``x``.

        For even ``n = 2m`` this is ``x**m C_{2m}(1/x)``; it is finite at
        ``x = 0`` because ``deg C_{2m} <= m``.
        """
        return _horner(_reverse(self.polys[n], n // 2), x)


def _horner(coeffs, x):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _reverse(coeffs, degree):
    """Coefficients of ``x**degree * p(1/x)``."""
    out = [0] * (degree + 1)
    for i, c in enumerate(coeffs):
        out[degree - i] = c
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


# ---------------------------------------------------------------------------
# moduli and constants


def complementary_modulus(alpha: complex) -> complex:
    """Principal square root of ``1 - alpha**2``.

    The result has non-negative real part, and non-negative imaginary part
    whenever the real part vanishes.
    """
    alpha = complex(alpha)
    w = 1 - alpha * alpha
    # signed zeros would otherwise pick the lower branch on the cut
    w = complex(w.real, 0.0) if w.imag == 0 else w
    r = cmath.sqrt(w)
    if r.real == 0 and r.imag < 0:
        r = -r
    return r


def _theta34_zero(q):
    """``theta_3(0,q), theta_4(0,q)`` and their ``q``-derivatives."""
    t3, t4, d3, d4 = 1 + 0j, 1 + 0j, 0j, 0j
    aq = abs(q)
    if aq == 0:
        return t3, t4, d3, d4
    for n in range(1, _THETA_TERM_CAP):
        e = n * n
        term = q**e
        dterm = e * q ** (e - 1)
        sgn = -1 if n % 2 else 1
        t3 += 2 * term
        t4 += 2 * sgn * term
        d3 += 2 * dterm
        d4 += 2 * sgn * dterm
        if abs(dterm) < 1e-18 * (1 + abs(d3)) and abs(term) < 1e-18:
            break
    return t3, t4, d3, d4


def elliptic_constants(alpha: complex, allow_limit: bool = False) -> Modulus:
    """Elliptic constants of the modulus ``alpha``.

    The nome is obtained from the classical ascending series in
    ``eps = (1 - sqrt(alpha')) / (2 (1 + sqrt(alpha')))`` and polished by
    Newton iteration on ``theta_4(0,q)/theta_3(0,q) = sqrt(alpha')`` once ``|eps| >= 0.05``; then
    ``K = (pi/2) theta_3(0,q)**2`` and ``K' = -2K Log(q**(1/2)) / pi``.

    Parameters
    ----------
    alpha : complex
        Modulus, not on the rays ``(-inf, -1]`` and ``[1, inf)``.
    allow_limit : bool
        If True, ``alpha = 1`` returns a sentinel with ``K = inf``, ``q = 1``
        (only meaningful for the closed forms ``sn = tanh``, ``cn = dn = sech``).

    Raises
    ------
    DomainError
        For ``alpha = +-1`` (unless the limit is allowed) or ``alpha`` on
        the excluded real rays.
    """
    alpha = complex(alpha)
    if alpha == 1 and allow_limit:
        return Modulus(1 + 0j, 0j, complex(math.inf), pi / 2 + 0j, 1 + 0j, 1 + 0j, True)
    if alpha.imag == 0 and abs(alpha.real) >= 1:
        raise DomainError(f"modulus {alpha} lies on the branch cut (-inf,-1] U [1,inf)")
    ap = complementary_modulus(alpha)
    sap = cmath.sqrt(ap)
    # (1 - sqrt(a')) / (2 (1 + sqrt(a'))) without cancellation at small alpha
    eps = alpha * alpha / (2 * (1 + ap) * (1 + sap) ** 2)
    e4 = eps**4
    q = eps * (1 + e4 * (2 + e4 * (15 + e4 * (150 + e4 * 1707))))
    # below NEWTON_EPS the series is exact to rounding and Newton would only
    # add the absolute error of theta_4/theta_3 - sqrt(a')
    if abs(eps) >= NEWTON_EPS:
        last = math.inf
        for _ in range(60):
            t3, t4, d3, d4 = _theta34_zero(q)
            g = t4 / t3 - sap
            dg = (d4 * t3 - t4 * d3) / (t3 * t3)
            step = g / dg
            if abs(step) >= last and abs(step) <= 1e-13 * abs(q):
                break  # rounding floor reached
            q -= step
            last = abs(step)
            if last <= 1e-16 * abs(q):
                break
        else:
            raise ConvergenceError(f"nome inversion did not converge for alpha={alpha}")
    if abs(q) >= 1:
        raise DomainError(f"nome |q| >= 1 for alpha={alpha}")
    t3 = _theta34_zero(q)[0]
    big_k = pi / 2 * t3 * t3
    if q == 0:
        return Modulus(alpha, ap, big_k, complex(math.inf), 0j, 0j)
    # q^(1/2) continued analytically from alpha/4 at the origin
    guide = alpha / ((1 + sap) * cmath.sqrt(2 * (1 + ap))) * cmath.sqrt(q / eps)
    r = cmath.sqrt(q)
    if abs(r + guide) < abs(r - guide):
        r = -r
    # tau = iK'/K taken from q^(1/2) so that sn(u + iK') = 1/(alpha sn u)
    big_k_prime = -2 * big_k * cmath.log(r) / pi
    return Modulus(alpha, ap, big_k, big_k_prime, q, r)


# ---------------------------------------------------------------------------
# theta functions


def theta(j: int, v, q: complex, tol: float = 1e-17):
    """Jacobi theta function ``theta_j(v, q)``, ``j = 1..4``.

    The ``q**(1/4)`` factor of ``theta_1``/``theta_2`` uses the principal
    branch.  Summation stops once the last term falls below ``tol`` times the
    running sum.

    Raises
    ------
    ConvergenceError
        If ``|q| >= 1 - 1e-9``.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError("theta index must be 1, 2, 3 or 4")
    q = complex(q)
    if abs(q) >= 1 - 1e-9:
        raise ConvergenceError(f"theta series diverges or stalls for |q|={abs(q)}")
    v = np.asarray(v, dtype=complex)
    if j in (3, 4):
        acc = np.ones_like(v)
        n = 1
        sign = -1 if j == 4 else 1
        while True:
            term = 2 * (sign**n) * q ** (n * n) * np.cos(2 * n * v)
            acc = acc + term
            if np.all(np.abs(term) <= tol * np.maximum(np.abs(acc), 1e-300)) or q == 0:
                break
            n += 1
            if n > _THETA_TERM_CAP:
                raise ConvergenceError("theta series exceeded term cap")
        return acc if acc.ndim else complex(acc)
    q4 = q**0.25 if q != 0 else 0j
    acc = np.zeros_like(v)
    n = 0
    while True:
        e = n * n + n
        if j == 1:
            term = 2 * (-1) ** n * q4 * q**e * np.sin((2 * n + 1) * v)
        else:
            term = 2 * q4 * q**e * np.cos((2 * n + 1) * v)
        acc = acc + term
        if q == 0 or (n > 0 and np.all(np.abs(term) <= tol * np.maximum(np.abs(acc), 1e-300))):
            break
        n += 1
        if n > _THETA_TERM_CAP:
            raise ConvergenceError("theta series exceeded term cap")
    return acc if acc.ndim else complex(acc)


def _theta_terms(q, im_max):
    """Number of series terms so that neglected terms are below 1e-18."""
    aq = abs(q)
    if aq == 0:
        return 1
    lq = math.log(aq)
    n = 1
    while (n * n) * lq + 2 * (n + 1) * im_max > math.log(1e-18):
        n += 1
        if n > _THETA_TERM_CAP:
            raise ConvergenceError("theta quotient needs too many terms")
    return n + 1


def _reduced_thetas(v, q):
    """theta_1, theta_2 without their q^(1/4) factor, and theta_3, theta_4."""
    nterms = _theta_terms(q, float(np.max(np.abs(v.imag), initial=0.0)))
    t1 = np.zeros_like(v)
    t2 = np.zeros_like(v)
    t3 = np.ones_like(v)
    t4 = np.ones_like(v)
    for n in range(nterms):
        a = q ** (n * n + n)
        t1 += (2 * (-1) ** n * a) * np.sin((2 * n + 1) * v)
        t2 += (2 * a) * np.cos((2 * n + 1) * v)
        if n >= 1:
            b = q ** (n * n)
            c = np.cos(2 * n * v)
            t3 += 2 * b * c
            t4 += (2 * (-1) ** n * b) * c
    return t1, t2, t3, t4


def _reduce(u, mod):
    """Reduce ``u`` modulo the lattice (2K, 2iK'); return the reduced point
    and the sign flips of (sn, cn, dn)."""
    w1 = 2 * mod.big_k
    if mod.nome == 0:
        s = (u / w1).real
        m = np.floor(s + 0.5)
        u0 = u - m * w1
        sg = np.where(m % 2 == 0, 1.0, -1.0)
        return u0, sg, sg, np.ones_like(sg)
    w2 = 2j * mod.big_k_prime
    det = w1.real * w2.imag - w1.imag * w2.real
    s = (u.real * w2.imag - u.imag * w2.real) / det
    t = (w1.real * u.imag - w1.imag * u.real) / det
    m = np.floor(s + 0.5)
    n = np.floor(t + 0.5)
    u0 = u - m * w1 - n * w2
    sm = np.where(m % 2 == 0, 1.0, -1.0)
    sn_ = np.where(n % 2 == 0, 1.0, -1.0)
    return u0, sm, sm * sn_, sn_


def _check_poles(u0, mod):
    if mod.nome == 0:
        return
    w1 = 2 * mod.big_k
    w2 = 2j * mod.big_k_prime
    base = 1j * mod.big_k_prime
    dist = np.full(u0.shape, np.inf)
    for a in (-1, 0, 1):
        for b in (-1, 0):
            dist = np.minimum(dist, np.abs(u0 - (base + a * w1 + b * w2)))
    if np.any(dist < POLE_TOL * abs(mod.big_k)):
        raise PoleError("argument within pole tolerance of iK' (mod 2K, 2iK')")


def sncndn(u, mod: Modulus):
    """Vectorised ``(sn, cn, dn)`` at ``u`` (scalar or array).

    Raises
    ------
    PoleError
        If any ``u`` lies within ``1e-8 |K|`` of a pole.
    """
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    if mod.is_limit:
        out = np.tanh(u), 1 / np.cosh(u), 1 / np.cosh(u)
    else:
        u0, s_sn, s_cn, s_dn = _reduce(u, mod)
        _check_poles(u0, mod)
        v = (pi / (2 * mod.big_k)) * u0
        t1, t2, t3, t4 = _reduced_thetas(v, mod.nome)
        z1, z2, z3, z4 = _reduced_thetas(np.zeros(1, dtype=complex), mod.nome)
        out = (
            s_sn * (z3[0] / z2[0]) * t1 / t4,
            s_cn * (z4[0] / z2[0]) * t2 / t4,
            s_dn * (z4[0] / z3[0]) * t3 / t4,
        )
    if scalar:
        return tuple(complex(x[0]) for x in out)
    return out


def jacobi_triple(u, mod: Modulus) -> EllipticTriple:
    """``EllipticTriple`` of ``sn, cn, dn`` at ``u``."""
    return EllipticTriple(*sncndn(u, mod))


def fourier_eval(kind: str, u, mod: Modulus, terms: int = 40):
    """Partial sum of the Fourier series of ``sn``, ``cn`` or ``dn``.

    Valid in the strip ``|Im(u/K)| < Re(K'/K)``.

    Raises
    ------
    StripError
        If some ``u`` is outside the strip.
    """
    if kind not in ("sn", "cn", "dn"):
        raise ValueError(f"unknown kind {kind!r}")
    if mod.is_limit:
        raise StripError("Fourier series degenerate at alpha = 1")
    u = np.asarray(u, dtype=complex)
    K = mod.big_k
    width = (mod.big_k_prime / K).real if mod.nome != 0 else math.inf
    if np.any(np.abs((u / K).imag) >= width):
        raise StripError("argument outside the strip of convergence")
    q = mod.nome
    x = pi * u / (2 * K)
    acc = np.zeros_like(u)
    if kind == "dn":
        for n in range(1, terms + 1):
            acc = acc + q**n / (1 + q ** (2 * n)) * np.cos(2 * n * x)
        res = pi / (2 * K) + 2 * pi / K * acc
    else:
        r2 = mod.half_nome**2
        for n in range(terms):
            if kind == "sn":
                c = q**n / (1 - r2 * q ** (2 * n))
                acc = acc + c * np.sin((2 * n + 1) * x)
            else:
                c = q**n / (1 + r2 * q ** (2 * n))
                acc = acc + c * np.cos((2 * n + 1) * x)
        res = 2 * pi / K * mod.half_nome_over_alpha * acc
    return res if np.ndim(res) else complex(res)


# ---------------------------------------------------------------------------
# Taylor polynomials


def taylor_C(n_max: int) -> TaylorTable:
    """Integer polynomials ``C_0 .. C_{n_max}`` of the Taylor expansions

        sn(u) = sum (-1)^n C_{2n+1}(a^2) u^{2n+1}/(2n+1)!
        cn(u) = sum (-1)^n C_{2n}(a^2)   u^{2n}/(2n)!
        dn(u) = sum (-1)^n a^{2n} C_{2n}(a^{-2}) u^{2n}/(2n)!

    computed from the paired recursion with exact integers.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    C = [(1,)]
    # R[k] = x^k C_{2k}(1/x)
    R = [(1,)]
    while len(C) <= n_max:
        idx = len(C)
        if idx % 2 == 1:
            n = (idx - 1) // 2
            acc = [0]
            for j in range(n + 1):
                k = n - j
                acc = _poly_add(acc, [comb(2 * n, 2 * j) * c for c in _poly_mul(C[2 * j], R[k])])
            C.append(_trim(acc))
        else:
            n = (idx - 2) // 2
            acc = [0]
            for j in range(n + 1):
                k = n - j
                acc = _poly_add(acc, [comb(2 * n + 1, 2 * j + 1) * c for c in _poly_mul(C[2 * j + 1], R[k])])
            C.append(_trim(acc))
            R.append(tuple(_reverse(C[-1], idx // 2)))
    return TaylorTable(tuple(C[: n_max + 1]))


# ---------------------------------------------------------------------------
# digamma

_BERNOULLI = (
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
    -3617 / 510,
    43867 / 798,
    -174611 / 330,
)


def digamma(z: complex) -> complex:
    """Digamma function ``psi(z)`` for complex ``z``.

    Reflection for ``Re z < 1/2``, upward recurrence to ``Re z >= 10`` and the
    Stirling-type asymptotic series there.

    Raises
    ------
    PoleError
        At non-positive integers.
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"digamma has a pole at {z.real}")
    if z.real < 0.5:
        return digamma(1 - z) - pi / cmath.tan(pi * z)
    shift = 0j
    while z.real < 10:
        shift -= 1 / z
        z += 1
    inv2 = 1 / (z * z)
    series = 0j
    p = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * k) * p
        p *= inv2
    return cmath.log(z) - 0.5 / z - series + shift
