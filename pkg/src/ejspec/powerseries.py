"""Truncated power series with complex coefficients.

A :class:`Series` of order ``L`` stores the coefficients of ``u**0 .. u**L``;
all arithmetic truncates at ``L``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .elliptic import TaylorTable, taylor_C
from .errors import DimensionError, DomainError, SingularError

__all__ = [
    "MAX_ORDER",
    "Series",
    "ps_mul",
    "ps_div",
    "ps_pow",
    "ps_exp_linear",
    "elliptic_series",
]

MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class Series:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise DimensionError("series needs a non-empty 1-d coefficient vector")
        if c.size - 1 > MAX_ORDER:
            raise DimensionError(f"order {c.size - 1} exceeds cap {MAX_ORDER}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def constant(cls, c: complex, order: int) -> "Series":
        a = np.zeros(order + 1, dtype=complex)
        a[0] = c
        return cls(a)

    @classmethod
    def variable(cls, order: int) -> "Series":
        """The series ``u``."""
        a = np.zeros(order + 1, dtype=complex)
        if order >= 1:
            a[1] = 1
        return cls(a)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __call__(self, u):
        """Evaluate the truncated polynomial at ``u``."""
        return np.polynomial.polynomial.polyval(u, self.coeffs)

    def derivative_at_zero(self, k: int) -> complex:
        """``k``-th derivative at ``u = 0``, i.e. ``k! * coeffs[k]``."""
        return complex(self.coeffs[k]) * factorial(k)

    def __add__(self, other):
        _same_order(self, other)
        return Series(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _same_order(self, other)
        return Series(self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, Series):
            return ps_mul(self, other)
        return Series(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return ps_div(self, other)
        return Series(self.coeffs / other)

    def __pow__(self, n: int):
        return ps_pow(self, n)

    def __repr__(self):
        return f"Series(order={self.order}, coeffs={self.coeffs!r})"


def _same_order(a: Series, b: Series):
    if a.order != b.order:
        raise DimensionError(f"series orders differ: {a.order} != {b.order}")


def ps_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order."""
    _same_order(a, b)
    return Series(np.convolve(a.coeffs, b.coeffs)[: a.order + 1])


def ps_div(a: Series, b: Series) -> Series:
    """Quotient ``c`` with ``c * b = a`` through the common order.

    Raises
    ------
    SingularError
        If ``|b[0]| < 1e-300``.
    """
    _same_order(a, b)
    b0 = b.coeffs[0]
    if abs(b0) < 1e-300:
        raise SingularError("division by a series with vanishing constant term")
    L = a.order
    c = np.zeros(L + 1, dtype=complex)
    bc = b.coeffs
    for k in range(L + 1):
        c[k] = (a.coeffs[k] - np.dot(c[:k], bc[k:0:-1])) / b0
    return Series(c)


def ps_pow(a: Series, n: int) -> Series:
    """Non-negative integer power by repeated squaring."""
    if n < 0:
        raise ValueError("negative powers are not supported; use ps_div")
    result = Series.constant(1, a.order)
    base = a
    while n:
        if n & 1:
            result = ps_mul(result, base)
        n >>= 1
        if n:
            base = ps_mul(base, base)
    return result


def ps_exp_linear(c: complex, L: int) -> Series:
    """Series of ``exp(c u)``: coefficients ``c**k / k!``."""
    out = np.empty(L + 1, dtype=complex)
    out[0] = 1
    for k in range(1, L + 1):
        out[k] = out[k - 1] * c / k
    return Series(out)


def elliptic_series(kind: str, alpha: complex, L: int, table: TaylorTable | None = None) -> Series:
    """Truncated Taylor series of ``sn``, ``cn`` or ``dn`` in ``u``.

    Coefficients are polynomials in ``alpha**2`` and are exact for every
    complex ``alpha`` (the series is formal, so ``|alpha| > 1`` is fine).  The
    ``dn`` coefficients ``alpha**(2n) C_{2n}(alpha**-2)`` are evaluated as the
    coefficient-reversed polynomial, so ``alpha = 0`` needs no special case.
    """
    if kind not in ("sn", "cn", "dn"):
        raise ValueError(f"unknown kind {kind!r}")
    if L > MAX_ORDER:
        raise DimensionError(f"order {L} exceeds cap {MAX_ORDER}")
    if table is None:
        table = taylor_C(L + 1)
    if table.n_max < L:
        raise DomainError(f"Taylor table covers C_0..C_{table.n_max}, need C_{L}")
    x = complex(alpha) ** 2
    out = np.zeros(L + 1, dtype=complex)
    for j in range(L + 1):
        if kind == "sn" and j % 2 == 1:
            n = (j - 1) // 2
            out[j] = (-1) ** n * table.evaluate(j, x) / factorial(j)
        elif kind == "cn" and j % 2 == 0:
            out[j] = (-1) ** (j // 2) * table.evaluate(j, x) / factorial(j)
        elif kind == "dn" and j % 2 == 0:
            out[j] = (-1) ** (j // 2) * table.evaluate_reversed(j, x) / factorial(j)
    return Series(out)
