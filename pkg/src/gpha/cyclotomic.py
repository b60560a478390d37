"""Exact arithmetic in Z[zeta_k].

Values are coefficient vectors modulo ``x^k - 1``: index ``i`` holds the
coefficient of ``zeta_k^i``. Arithmetic stays in that representation; only
equality tests reduce modulo the cyclotomic polynomial Phi_k, whose
power basis is a Z-basis of the ring, so a reduced vector is a canonical form.
"""

from __future__ import annotations

import cmath

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable

import numpy as np

from .errors import InvalidParameterError

_INT64_SAFE = 2**62


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (lowest degree first, monic ``den``)."""
    num = list(num)
    dq = len(den) - 1
    out = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        out[i - dq] = c
        if c:
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Coefficients of Phi_k, lowest degree first."""
    if k < 1:
        raise InvalidParameterError(f"cyclotomic order must be >= 1, got {k}")
    poly = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def totient(k: int) -> int:
    return len(cyclotomic_polynomial(k)) - 1


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def reduce_coeffs(coeffs, k: int) -> np.ndarray:
    """Reduce ``(..., k)`` coefficient arrays modulo Phi_k; returns ``(..., phi(k))``.

    Works in int64 when the magnitudes provably fit, otherwise in Python ints.
    """
    arr = np.asarray(coeffs)
    if arr.shape[-1] != k:
        raise InvalidParameterError(f"expected trailing length {k}, got {arr.shape[-1]}")
    phi = cyclotomic_polynomial(k)
    deg = len(phi) - 1
    growth = (1 + max(abs(c) for c in phi)) ** (k - deg)
    peak = int(np.max(np.abs(arr))) if arr.size and arr.dtype != object else None
    if peak is not None and peak * growth < _INT64_SAFE:
        work = arr.astype(np.int64, copy=True)
    else:
        work = np.array(arr.tolist(), dtype=object).reshape(arr.shape)
    for i in range(k - 1, deg - 1, -1):
        c = work[..., i].copy()
        for j in range(deg + 1):
            if phi[j]:
                work[..., i - deg + j] -= c * phi[j]
    return work[..., :deg]


def is_zero_batch(coeffs, k: int) -> np.ndarray:
    """Vectorized exact zero test for ``(..., k)`` coefficient arrays."""
    arr = np.asarray(coeffs)
    if _is_prime(k):
        # a vanishing integer combination of the p-th roots has equal coefficients
        return np.all(arr == arr[..., :1], axis=-1)
    return np.all(reduce_coeffs(arr, k) == 0, axis=-1)


def exact_values(reduced: np.ndarray, k: int) -> np.ndarray:
    """Object array from reduced rows: a Python int where the row is rational, else a CycInt."""
    red = np.asarray(reduced)
    rational = ~np.any(red[:, 1:] != 0, axis=1)
    out = np.empty(len(red), dtype=object)
    for i, row in enumerate(red):
        if rational[i]:
            out[i] = int(row[0])
        else:
            out[i] = CycInt(k, tuple(int(c) for c in row) + (0,) * (k - len(row)))
    return out


def encode_exact(v: "int | CycInt") -> "int | dict":
    """JSON form of an exact value: a bare int, or reduced coordinates with the ring order."""
    if isinstance(v, (int, np.integer)):
        return int(v)
    return {"order": v.order, "coeffs": list(v.reduced())}


def norm_squared_batch(coeffs) -> np.ndarray:
    """``a * conj(a)`` for ``(..., k)`` coefficient arrays, still modulo ``x^k - 1``."""
    a = np.asarray(coeffs)
    k = a.shape[-1]
    idx = np.arange(k)
    out = np.empty_like(a)
    for e in range(k):
        out[..., e] = (a * a[..., (idx - e) % k]).sum(axis=-1)
    return out


@dataclass(frozen=True, eq=False)
class CycInt:
    """An element of Z[zeta_order] stored modulo ``x^order - 1``."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidParameterError(f"order must be >= 1, got {self.order}")
        c = tuple(int(v) for v in self.coeffs)
        if len(c) != self.order:
            raise InvalidParameterError(f"expected {self.order} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_exponents(cls, k: int, exponents: Iterable[int]) -> "CycInt":
        """Sum of ``zeta_k^e`` over the given exponents."""
        c = [0] * k
        for e in exponents:
            c[int(e) % k] += 1
        return cls(k, tuple(c))

    @classmethod
    def integer(cls, k: int, n: int) -> "CycInt":
        return cls(k, (int(n),) + (0,) * (k - 1))

    def _check(self, other: "CycInt") -> None:
        if self.order != other.order:
            raise InvalidParameterError(
                f"mismatched cyclotomic orders {self.order} and {other.order}; embed first"
            )

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycInt | int") -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.order, tuple(other * a for a in self.coeffs))
        self._check(other)
        k = self.order
        out = [0] * k
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % k] += a * b
        return CycInt(k, tuple(out))

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        k = self.order
        return CycInt(k, tuple(self.coeffs[(-i) % k] for i in range(k)))

    def reduced(self) -> tuple[int, ...]:
        """Canonical coordinates in the power basis of Z[zeta_k]."""
        return tuple(int(v) for v in reduce_coeffs(np.array(self.coeffs, dtype=object), self.order))

    def to_complex(self) -> complex:
        """Floating point image under ``zeta_k -> exp(2 pi i / k)``; for display only."""
        k = self.order
        return complex(sum(c * cmath.exp(2j * cmath.pi * i / k) for i, c in enumerate(self.coeffs)))

    def is_zero(self) -> bool:
        if _is_prime(self.order):
            return len(set(self.coeffs)) == 1
        return not any(self.reduced())

    def as_integer(self) -> int | None:
        """The rational integer this element equals, or None."""
        red = self.reduced()
        return red[0] if not any(red[1:]) else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return equals_integer(self, other)
        if not isinstance(other, CycInt) or other.order != self.order:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.order, self.reduced()))

    def __repr__(self) -> str:
        n = self.as_integer()
        if n is not None:
            return f"CycInt({self.order}: {n})"
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycInt({self.order}: {' + '.join(terms) or '0'})"


def cyc_root(k: int, e: int) -> CycInt:
    """``zeta_k^e``."""
    if k < 1:
        raise InvalidParameterError(f"order must be >= 1, got {k}")
    c = [0] * k
    c[e % k] = 1
    return CycInt(k, tuple(c))


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_conj(a: CycInt) -> CycInt:
    return a.conj()


def cyc_sum(values: Iterable[CycInt]) -> CycInt:
    it = iter(values)
    total = next(it)
    for v in it:
        total = total + v
    return total


def embed(a: CycInt, k: int) -> CycInt:
    """Move ``a`` into Z[zeta_k]; ``a.order`` must divide ``k``."""
    if k % a.order:
        raise InvalidParameterError(f"cannot embed order {a.order} into order {k}")
    step = k // a.order
    c = [0] * k
    for i, v in enumerate(a.coeffs):
        c[i * step] = v
    return CycInt(k, tuple(c))


def norm_squared(a: CycInt) -> CycInt:
    """``a * conj(a)``; use :meth:`CycInt.as_integer` to read it as an integer."""
    return a * a.conj()


def equals_integer(a: CycInt, n: int) -> bool:
    return (a - CycInt.integer(a.order, n)).is_zero()


def common_order(*orders: int) -> int:
    out = 1
    for k in orders:
        out = out * k // gcd(out, k)
    return out
