"""Self-check suites run by ``ejspec verify``.

Each check is a small function returning ``(passed, detail)``; a suite is
an ordered list of named checks.  Random inputs come from fixed seeds.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from . import elliptic as el
from . import oracle, spectral
from .operator import OperatorSpec, apply, formal_inverse_matrix, kernel_solutions, to_dense, truncate, weights

__all__ = ["CheckResult", "SUITES", "run_suite"]

KNOWN_C = {
    1: (1,), 2: (1,), 3: (1, 1), 4: (1, 4), 5: (1, 14, 1), 6: (1, 44, 16),
    7: (1, 135, 135, 1), 8: (1, 408, 912, 64),
}


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.suite}.{self.name}: {self.detail}"


def _random_alphas(rng, count, radius=0.95):
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    t = rng.uniform(0, 2 * math.pi, count)
    return r * np.exp(1j * t)


def _bound(value, tol):
    return bool(value < tol), f"max error {value:.3g} (tol {tol:g})"


# ---------------------------------------------------------------------------
# elliptic


def chk_taylor_table():
    table = el.taylor_C(8)
    bad = [n for n, c in KNOWN_C.items() if tuple(table[n]) != c]
    return not bad and tuple(table[0]) == (1,), "C0..C8 exact" if not bad else f"mismatch at {bad}"


def chk_pythagorean():
    rng = np.random.default_rng(11)
    worst = 0.0
    for a in _random_alphas(rng, 20):
        mod = el.elliptic_constants(a)
        u = 2 * mod.big_k * rng.uniform(0, 1, 200)
        sn, cn, dn = el.sncndn(u, mod)
        worst = max(worst, np.max(np.abs(sn**2 + cn**2 - 1)), np.max(np.abs(dn**2 + a**2 * sn**2 - 1)))
    return _bound(worst, 1e-11)


def chk_shifts():
    rng = np.random.default_rng(12)
    worst = 0.0
    for a in _random_alphas(rng, 10, 0.9):
        mod = el.elliptic_constants(a)
        K, Kp = mod.big_k, mod.big_k_prime
        u = K * (rng.uniform(-0.8, 0.8, 50) + 0.3j * rng.uniform(-1, 1, 50))
        s, c, d = el.sncndn(u, mod)
        s2, c2, _ = el.sncndn(u + 2 * K, mod)
        s3, c3, _ = el.sncndn(u + 2j * Kp, mod)
        s4, c4, _ = el.sncndn(u + 1j * Kp, mod)
        errs = [
            np.abs(s2 + s), np.abs(c2 + c), np.abs(s3 - s), np.abs(c3 + c),
            np.abs(s4 - 1 / (a * s)) / np.abs(s4), np.abs(c4 + 1j * d / (a * s)) / np.abs(c4),
        ]
        worst = max(worst, max(float(np.max(e)) for e in errs))
    return _bound(worst, 1e-10)


def chk_addition():
    rng = np.random.default_rng(13)
    worst = 0.0
    for a in _random_alphas(rng, 5, 0.9):
        mod = el.elliptic_constants(a)
        K = mod.big_k
        u = K * rng.uniform(-1, 1, 50)
        v = K * rng.uniform(-1, 1, 50)
        su, cu, du = el.sncndn(u, mod)
        sv, cv, dv = el.sncndn(v, mod)
        _, cp, _ = el.sncndn(u + v, mod)
        _, cm, _ = el.sncndn(u - v, mod)
        den = 1 - a**2 * su**2 * sv**2
        worst = max(
            worst,
            float(np.max(np.abs(cp + cm - 2 * cu * cv / den))),
            float(np.max(np.abs(cp - cm + 2 * su * sv * du * dv / den))),
        )
    return _bound(worst, 1e-10)


def chk_derivatives():
    rng = np.random.default_rng(14)
    h = 1e-5
    worst = 0.0
    for a in _random_alphas(rng, 5, 0.9):
        mod = el.elliptic_constants(a)
        u = mod.big_k * rng.uniform(0.05, 1.9, 20)
        s, c, d = el.sncndn(u, mod)
        sp, cp, dp = el.sncndn(u + h, mod)
        sm, cm, dm = el.sncndn(u - h, mod)
        worst = max(
            worst,
            float(np.max(np.abs((sp - sm) / (2 * h) - c * d))),
            float(np.max(np.abs((cp - cm) / (2 * h) + s * d))),
            float(np.max(np.abs((dp - dm) / (2 * h) + a**2 * s * c))),
        )
    return _bound(worst, 1e-7)


def chk_taylor_consistency():
    from .powerseries import elliptic_series

    rng = np.random.default_rng(15)
    table = el.taylor_C(21)
    worst = 0.0
    for a in _random_alphas(rng, 10):
        mod = el.elliptic_constants(a)
        u = 0.5 * np.exp(2j * math.pi * rng.uniform(0, 1, 10)) * rng.uniform(0, 1, 10)
        ref = el.sncndn(u, mod)
        for kind, r in zip(("sn", "cn", "dn"), ref):
            worst = max(worst, float(np.max(np.abs(elliptic_series(kind, a, 20, table)(u) - r))))
    return _bound(worst, 1e-10)


def chk_fourier():
    rng = np.random.default_rng(16)
    worst = 0.0
    for a in _random_alphas(rng, 10, 0.9):
        mod = el.elliptic_constants(a)
        K = mod.big_k
        width = (mod.big_k_prime / K).real
        u = K * (rng.uniform(-2, 2, 20) + 0.5j * width * rng.uniform(-1, 1, 20))
        ref = el.sncndn(u, mod)
        for kind, r in zip(("sn", "cn", "dn"), ref):
            worst = max(worst, float(np.max(np.abs(el.fourier_eval(kind, u, mod, terms=200) - r))))
    return _bound(worst, 1e-10)


def chk_sn_maximum():
    rng = np.random.default_rng(17)
    t = np.arange(1, 1000) * 1e-3
    worst = 0.0
    for a in np.r_[_random_alphas(rng, 16, 0.999), [1j, -1j, np.exp(0.5j), np.exp(2.5j)]]:
        if min(abs(a - 1), abs(a + 1)) < 0.05:
            continue
        mod = el.elliptic_constants(a)
        worst = max(worst, float(np.max(np.abs(el.sncndn(t * mod.big_k, mod)[0]))))
    return bool(worst < 1), f"max |sn(tK)| = {worst:.6f} on (0,1)"


def quad_K(alpha: complex) -> complex:
    """``K(alpha)`` by adaptive quadrature of the defining integral after
    ``t = sin s`` (independent of the theta machinery)."""
    def f(s):
        return 1 / cmath.sqrt(1 - alpha**2 * math.sin(s) ** 2)

    with warnings.catch_warnings():
        # tolerances sit at the rounding floor on purpose
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re = integrate.quad(lambda s: f(s).real, 0, math.pi / 2, epsabs=1e-15, epsrel=1e-14, limit=200)[0]
        im = integrate.quad(lambda s: f(s).imag, 0, math.pi / 2, epsabs=1e-15, epsrel=1e-14, limit=200)[0]
    return complex(re, im)


def chk_big_k():
    worst = 0.0
    for a in (0.5, 0.3 + 0.4j, 0.5j, 0.9 * cmath.exp(1j), 0.95j):
        worst = max(worst, abs(el.elliptic_constants(a).big_k - quad_K(a)) / abs(quad_K(a)))
    return _bound(worst, 1e-12)


def chk_digamma():
    g = el.EULER_GAMMA
    errs = [
        abs(el.digamma(1) + g),
        abs(el.digamma(0.5) + g + 2 * math.log(2)),
        abs(el.digamma(3.5) - el.digamma(2.5) - 1 / 2.5),
    ]
    return _bound(max(errs), 1e-12)


# ---------------------------------------------------------------------------
# operator


def chk_inverse_identity():
    n = 200
    J = to_dense(truncate(OperatorSpec.standard(0.5), n))
    R = formal_inverse_matrix(0.5, n)
    E = J @ R
    return _bound(float(np.max(np.abs(E[: n - 2, : n - 2] - np.eye(n - 2)))), 1e-12)


def chk_kernel():
    worst = 0.0
    for a in (0.5, 0.5j, 0.3 + 0.4j, 1j):
        n = 300
        u, v = kernel_solutions(a, n)
        tri = truncate(OperatorSpec.standard(a), n)
        w = weights(OperatorSpec.standard(a), n - 1)
        for y in (u, v):
            r = apply(tri, y)[1 : n - 1]
            # entries grow like |alpha|**-n, so compare with the summands
            scale = np.abs(w[:-1] * y[: n - 2]) + np.abs(w[1:] * y[2:n])
            worst = max(worst, float(np.max(np.abs(r) / np.maximum(scale, 1e-300))))
    return _bound(worst, 1e-13)


def chk_hilbert_schmidt():
    from .operator import _half_ratios

    M = 20001
    A, B = _half_ratios(M)
    acc = 0.0
    inc = 0.0
    for n in range(M):
        acc = acc * 0.81 + A[n] ** 2
        inc = 2 * acc * B[n] ** 2
    return bool(inc < 1e-8), f"|alpha|=0.9 increment at index {2 * M} = {inc:.3g}"


def chk_unitary_equivalence():
    n = 100
    a = 0.4 + 0.3j
    U = np.diag([1.0 if (k // 2) % 2 == 0 else -1.0 for k in range(n)])
    A = to_dense(truncate(OperatorSpec.standard(a), n))
    B = U @ to_dense(truncate(OperatorSpec.standard(-a), n)) @ U
    ea = np.sort_complex(np.linalg.eigvals(A))
    eb = np.sort_complex(np.linalg.eigvals(B))
    return _bound(float(np.max(np.abs(ea - eb))), 1e-10)


def chk_moments():
    table = el.taylor_C(12)
    worst = 0.0
    for a in (0.5, 0.5j, 0.3 + 0.4j):
        spec = OperatorSpec.standard(a)
        for k in range(1, 7):
            exact = spectral.moment_exact(spec, 2 * k, table)
            worst = max(worst, abs(spectral.moment(spec, 2 * k, 2 * k + 2) - exact) / max(1.0, abs(exact)))
            worst = max(worst, abs(spectral.moment(spec, 2 * k + 1, 2 * k + 3)))
    return _bound(worst, 1e-10)


# ---------------------------------------------------------------------------
# spectral


def chk_cd_recurrences():
    rng = np.random.default_rng(21)
    worst = 0.0
    for a in _random_alphas(rng, 10, 0.9):
        mod = el.elliptic_constants(a)
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        C, D = spectral.cd_table(41, z, mod)
        worst = max(worst, float(np.max(spectral.cd_residuals(C, D, z, mod))))
    return _bound(worst, 1e-9)


def chk_eigenvectors():
    worst = 0.0
    for a in (0.5, 0.5j, 0.4 + 0.3j):
        spec = OperatorSpec.standard(a)
        for N in (0, 1, -2):
            lam = spectral.eigenvalue(spec, N)
            v = spectral.eigenvector(spec, N, 400)
            r = apply(truncate(spec, 400), v) - lam * v
            worst = max(worst, float(np.linalg.norm(r[:-1]) / np.linalg.norm(v)))
    return _bound(worst, 1e-8)


def chk_rodriguez():
    rng = np.random.default_rng(22)
    table = el.taylor_C(24)
    worst = 0.0
    for a in _random_alphas(rng, 5, 0.9):
        a = a if abs(a) > 0.3 else a / abs(a) * 0.3
        for mode in ("standard", "tilde"):
            spec = OperatorSpec(mode, a)
            for z in rng.uniform(-2, 2, 3) + 1j * rng.uniform(-1, 1, 3):
                p = spectral.orthopoly_sequence(spec, 20, z)
                for n in range(1, 21):
                    r = spectral.rodriguez(spec, n, z, table)
                    worst = max(worst, abs(r - p[n - 1]) / max(1.0, abs(p[n - 1])))
    return _bound(worst, 1e-10)


def chk_weyl_poles():
    # the symmetric difference isolates the residue -w at lambda
    eps = 1e-5
    worst = 0.0
    for a in (0.5, 0.5j):
        spec = OperatorSpec.standard(a)
        mod = spectral.modulus_for(spec)
        for N in range(-3, 4):
            lam = spectral.eigenvalue(spec, N)
            w = spectral.spectral_measure_weight(mod, N)
            res = eps * (spectral.weyl_m(spec, lam + eps) - spectral.weyl_m(spec, lam - eps)) / 2
            worst = max(worst, abs(res + w) / abs(w))
    return _bound(worst, 1e-5)


def chk_measure():
    spec = OperatorSpec.standard(0.5)
    mod = spectral.modulus_for(spec)
    Ns = range(-60, 60)
    w = np.array([spectral.spectral_measure_weight(mod, N) for N in Ns])
    lam = np.array([spectral.eigenvalue(spec, N) for N in Ns])
    table = el.taylor_C(12)
    errs = [abs(np.sum(w) - 1)]
    for n in range(1, 7):
        exact = spectral.moment_exact(spec, 2 * n, table)
        errs.append(abs(np.sum(w * lam ** (2 * n)) - exact) / max(1.0, abs(exact)))
    return _bound(max(errs), 1e-8)


def chk_orthogonality():
    worst = 0.0
    for a in (0.5, 0.4 + 0.3j):
        mod = el.elliptic_constants(a)
        for N in range(3):
            for M in range(3):
                g, d = spectral.orthogonality_sums(mod, N, M)
                target = math.pi / (2 * a * mod.big_k) * mod.mass_factor(N) if N == M else 0
                worst = max(worst, abs(g - target), abs(d + target))
    return _bound(worst, 1e-9)


def chk_projection_norm():
    spec = OperatorSpec.standard(0.5)
    worst = max(abs(spectral.projection_norm(spec, N) - 1) for N in (0, 1))
    return _bound(worst, 1e-6)


# ---------------------------------------------------------------------------
# oracle


def chk_m_duality():
    rng = np.random.default_rng(31)
    worst = 0.0
    for a in (0.5, 0.5j, 0.3 + 0.4j):
        spec = OperatorSpec.standard(a)
        for _ in range(5):
            z = complex(rng.uniform(-4, 4), rng.choice([-1, 1]) * rng.uniform(0.5, 3))
            worst = max(worst, abs(spectral.weyl_m(spec, z) - oracle.m_oracle(spec, z, 2000)))
    return _bound(worst, 1e-6)


def chk_eig_root():
    worst = 0.0
    for a in (0.5, 0.5j):
        spec = OperatorSpec.standard(a)
        for N in range(-3, 4):
            lam = spectral.eigenvalue(spec, N)
            worst = max(worst, abs(oracle.eig_root(spec, 600, lam * 1.001) - lam))
    return _bound(worst, 1e-6)


def chk_normal_resolvent():
    spec = OperatorSpec.standard(0.5)
    n = 400
    ev = np.linalg.eigvalsh(to_dense(truncate(spec, n)).real)
    worst = 0.0
    for z in (0.3 + 0.5j, 2 + 1j, -5 + 0.2j):
        est = oracle.resolvent_norm(spec, z, n, 1e-12)
        worst = max(worst, abs(est * np.min(np.abs(ev - z)) - 1))
    return _bound(worst, 0.02)


def chk_determinism():
    spec = OperatorSpec.standard(0.5j)
    a = oracle.resolvent_norm(spec, 3 + 1j, 300, 1e-6, seed=7)
    b = oracle.resolvent_norm(spec, 3 + 1j, 300, 1e-6, seed=7)
    return a == b, "identical seeds give identical norms" if a == b else f"{a!r} != {b!r}"


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "elliptic": [
        ("taylor_table", chk_taylor_table),
        ("pythagorean_identities", chk_pythagorean),
        ("shift_identities", chk_shifts),
        ("addition_formulas", chk_addition),
        ("derivative_formulas", chk_derivatives),
        ("taylor_consistency", chk_taylor_consistency),
        ("fourier_consistency", chk_fourier),
        ("sn_maximum", chk_sn_maximum),
        ("K_vs_quadrature", chk_big_k),
        ("digamma_values", chk_digamma),
    ],
    "operator": [
        ("inverse_identity", chk_inverse_identity),
        ("kernel_solutions", chk_kernel),
        ("hilbert_schmidt_tail", chk_hilbert_schmidt),
        ("unitary_equivalence", chk_unitary_equivalence),
        ("moments", chk_moments),
    ],
    "spectral": [
        ("cd_recurrences", chk_cd_recurrences),
        ("eigenvector_residual", chk_eigenvectors),
        ("rodriguez", chk_rodriguez),
        ("weyl_poles", chk_weyl_poles),
        ("measure_moments", chk_measure),
        ("orthogonality_sums", chk_orthogonality),
        ("projection_norm_real", chk_projection_norm),
    ],
    "oracle": [
        ("m_duality", chk_m_duality),
        ("eig_root", chk_eig_root),
        ("normal_resolvent", chk_normal_resolvent),
        ("determinism", chk_determinism),
    ],
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite (or ``all``) and collect results; exceptions count as failures."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        for label, fn in SUITES[suite]:
            try:
                ok, detail = fn()
            except Exception as exc:  # a crashing check is a failed check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(CheckResult(suite, label, bool(ok), detail))
    return out
