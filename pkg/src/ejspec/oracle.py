"""Brute-force checks on finite truncations, independent of the elliptic
function machinery: complex tridiagonal LU solves, resolvent norms,
``<e1, (J_n - z)^{-1} e1>`` and Newton roots of characteristic polynomials.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import lapack

from .errors import DimensionError, NoConvergence, SingularError
from .operator import OperatorSpec, Tridiagonal, truncate, weights

__all__ = [
    "LUFactor",
    "lu_factor",
    "tridiag_solve",
    "m_oracle",
    "resolvent_norm",
    "eig_root",
]

PIVOT_FLOOR = 1e-300
POWER_CAP = 500
RESTARTS = 3


class LUFactor:
    """Partial-pivoting LU factorisation of ``T - shift`` for a zero-diagonal
    tridiagonal ``T`` (LAPACK ``gttrf`` layout: ``dl, d, du, du2, ipiv``)."""

    def __init__(self, tri: Tridiagonal, shift: complex):
        n = tri.dim
        self.dim = n
        self.shift = complex(shift)
        d = np.full(n, -self.shift, dtype=complex)
        off = np.array(tri.off, dtype=complex)
        if n == 1:
            if abs(d[0]) <= PIVOT_FLOOR:
                raise SingularError("zero pivot")
            self.dl = self.du = self.du2 = np.zeros(0, dtype=complex)
            self.d = d
            self.ipiv = np.ones(1, dtype=np.int32)
            self._pad = False
            return
        # scipy's gttrf/gttrs wrappers reject n = 2 (empty du2); append a
        # decoupled unit row, which pivoting never touches
        self._pad = n == 2
        if self._pad:
            d = np.append(d, 1.0)
            off = np.append(off, 0.0)
        dl, d, du, du2, ipiv, info = lapack.zgttrf(off.copy(), d, off.copy())
        if info != 0 or np.min(np.abs(d)) <= PIVOT_FLOOR:
            raise SingularError(f"pivot breakdown at row {info}")
        self.dl, self.d, self.du, self.du2, self.ipiv = dl, d, du, du2, ipiv

    def solve(self, rhs, adjoint: bool = False) -> np.ndarray:
        """Solve ``(T - shift) x = rhs``, or the conjugate-transposed system."""
        b = np.array(rhs, dtype=complex)
        if b.shape != (self.dim,):
            raise DimensionError(f"rhs of shape {b.shape} for dimension {self.dim}")
        if self.dim == 1:
            piv = np.conj(self.d[0]) if adjoint else self.d[0]
            return b / piv
        if self._pad:
            b = np.append(b, 0.0)
        x, info = lapack.zgttrs(self.dl, self.d, self.du, self.du2, self.ipiv, b, trans="C" if adjoint else "N")
        if info != 0:
            raise SingularError(f"gttrs failed with info={info}")
        return x[: self.dim]

    def reconstruct(self) -> np.ndarray:
        """Dense ``T - shift`` rebuilt from the factors (for testing)."""
        n = len(self.d)
        M = np.diag(self.d).astype(complex)
        if n > 1:
            M += np.diag(self.du, 1)
        if n > 2:
            M += np.diag(self.du2, 2)
        for i in range(n - 2, -1, -1):
            M[i + 1, :] += self.dl[i] * M[i, :]
            if self.ipiv[i] != i + 1:
                M[[i, i + 1], :] = M[[i + 1, i], :]
        return M[: self.dim, : self.dim]


def lu_factor(tri: Tridiagonal, shift: complex) -> LUFactor:
    return LUFactor(tri, shift)


def tridiag_solve(tri: Tridiagonal, shift: complex, rhs) -> np.ndarray:
    """``x`` with ``(T - shift) x = rhs``.

    Raises
    ------
    SingularError
        On pivot breakdown.
    """
    return LUFactor(tri, shift).solve(rhs)


def m_oracle(spec: OperatorSpec, z: complex, n: int = 2000) -> complex:
    """First entry of ``(J_n - z)^{-1} e1``."""
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1
    return complex(tridiag_solve(truncate(spec, n), z, e1)[0])


def _power_run(lu, x, tol):
    x = x / np.linalg.norm(x)
    est = 0.0
    for _ in range(POWER_CAP):
        y = lu.solve(x)
        new = np.linalg.norm(y)
        x = lu.solve(y, adjoint=True)
        nx = np.linalg.norm(x)
        if not np.isfinite(nx) or nx == 0:
            raise SingularError("resolvent applied to the start vector is not finite")
        x /= nx
        if abs(new - est) <= tol * new:
            return new, True
        est = new
    return est, False


def _sign_blocks(n: int) -> np.ndarray:
    """Diagonal of the unitary ``U`` with ``U J(alpha) U = J(-alpha)``: ``+1, +1, -1, -1, ...``."""
    return np.where((np.arange(n) // 2) % 2 == 0, 1.0, -1.0)


def resolvent_norm(spec: OperatorSpec, z: complex, n: int = 1000, tol: float = 1e-10, seed: int = 0) -> float:
    """Largest singular value of ``(J_n - z)^{-1}``.

    Power iteration on ``x -> A^{-*} A^{-1} x`` with two tridiagonal solves
    per step.  The seeded real Gaussian start vector is split along the
    two eigenspaces of the sign pattern ``U = diag(+1, +1, -1, -1, ...)``
    and both halves are iterated; the larger estimate is returned.  As
    ``U`` maps ``J(alpha)`` to ``J(-alpha)``, the estimate is the same for
    ``alpha`` and ``-alpha``.  A half that does not settle in 500 steps is
    rerun three times from fresh vectors, keeping the largest estimate.

    Raises
    ------
    SingularError
        If ``J_n - z`` is numerically singular.
    """
    lu = LUFactor(truncate(spec, n), z)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(n)
    u = _sign_blocks(n)
    best = 0.0
    for sign in (1.0, -1.0):
        mask = u == sign
        if not mask.any():
            continue
        val, ok = _power_run(lu, np.where(mask, g, 0.0).astype(complex), tol)
        if not ok:
            for _ in range(RESTARTS):
                extra, _ = _power_run(lu, np.where(mask, rng.standard_normal(n), 0.0).astype(complex), tol)
                val = max(val, extra)
        best = max(best, val)
    return float(best)


def eig_root(spec: OperatorSpec, n: int, z0: complex, tol: float = 1e-12, max_iter: int = 100) -> complex:
    """Root of the characteristic polynomial ``P_{n+1}`` of ``J_n`` near ``z0``.

    Newton's method; ``P`` and ``P'`` come from the differentiated
    three-term recurrence, jointly rescaled at every step so only their
    ratio is ever formed.

    Raises
    ------
    NoConvergence
        After ``max_iter`` steps.
    """
    w2 = weights(spec, max(n, 1)) ** 2
    z = complex(z0)
    for _ in range(max_iter):
        p_prev, p = 0j, 1 + 0j
        d_prev, d = 0j, 0j
        for k in range(1, n + 1):
            c = w2[k - 2] if k >= 2 else 0
            p_new = z * p - c * p_prev
            d_new = p + z * d - c * d_prev
            p_prev, p, d_prev, d = p, p_new, d, d_new
            s = max(abs(p), abs(d))
            if s > 1e100 or (0 < s < 1e-100):
                p_prev, p, d_prev, d = p_prev / s, p / s, d_prev / s, d / s
        if d == 0:
            raise NoConvergence("vanishing derivative in Newton step")
        step = p / d
        z -= step
        if abs(step) < tol:
            return z
    raise NoConvergence(f"Newton did not converge in {max_iter} steps from {z0}")
