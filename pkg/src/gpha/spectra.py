"""Generalized Walsh spectra, bent / plateaued classification and the
autocorrelation-spectrum relation, all in exact cyclotomic arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .arrays import ExponentArray, ac_table
from .cocycles import ExpMatrix
from .cyclotomic import (
    CycInt,
    common_order,
    encode_exact,
    exact_values,
    is_zero_batch,
    norm_squared_batch,
    reduce_coeffs,
)
from .errors import BudgetExceededError, InvalidParameterError, InvariantViolation
from .groups import Element, Group
from .transform import spectrum_fast

FOURIER_BOUND = 4096
DIRECT_SPECTRUM_LIMIT = 1024


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Squared transform moduli ``|W(v)|^2`` for every frequency ``v`` (rank order).

    ``reduced[v]`` holds the exact value modulo Phi_N. A squared modulus is a
    rational integer only for some ring orders, so ``values`` keeps a Python int
    where the value is rational and a ``CycInt`` elsewhere.
    """

    group: Group
    h: int
    order: int
    reduced: np.ndarray = field(repr=False)

    @cached_property
    def values(self) -> np.ndarray:
        return exact_values(self.reduced, self.order)

    @cached_property
    def rational(self) -> np.ndarray:
        return ~np.any(self.reduced[:, 1:] != 0, axis=1)

    @cached_property
    def nonzero(self) -> np.ndarray:
        return np.any(self.reduced != 0, axis=1)

    @cached_property
    def support(self) -> frozenset[Element]:
        return frozenset(self.group.unrank(int(r)) for r in np.flatnonzero(self.nonzero))

    @property
    def alpha_candidates(self) -> list[int]:
        """Distinct nonzero rational values."""
        vals = self.reduced[self.nonzero & self.rational, 0]
        return sorted({int(v) for v in vals})

    @property
    def distinct_nonzero(self) -> int:
        return len(np.unique(self.reduced[self.nonzero], axis=0))

    @property
    def zero_count(self) -> int:
        """Number of frequencies where the transform vanishes."""
        return int(np.sum(~self.nonzero))

    def value(self, v: Sequence[int]) -> int | CycInt:
        return self.values[self.group.rank(v)]

    def to_json(self) -> dict:
        return {
            "alpha_candidates": self.alpha_candidates,
            "support": [list(g) for g in sorted(self.support, key=self.group.rank)],
            "values": [encode_exact(v) for v in self.values],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _domain_order(f: ExponentArray, q: int | None) -> int:
    G = f.group
    if not G.is_homogeneous():
        raise InvalidParameterError(f"spectra need a domain Z_q^m, got {G.orders}")
    if q is not None and q != G.orders[0]:
        raise InvalidParameterError(f"q={q} does not match the domain {G.orders}")
    return G.orders[0]


def fourier_kronecker(q: int, m: int, bound: int = FOURIER_BOUND) -> ExpMatrix:
    """m-th Kronecker power of the q x q Fourier matrix: entry ``alpha_i . alpha_j`` mod q."""
    if q < 2 or m < 0:
        raise InvalidParameterError("need q >= 2 and m >= 0")
    if q**m > bound:
        raise BudgetExceededError(f"Fourier matrix of order {q**m} exceeds {bound}", q**m, bound)
    X = Group((q,) * m).coords
    return ExpMatrix(q**m, q, (X @ X.T) % q)


def transform_coeffs(f: ExponentArray, q: int) -> tuple[int, np.ndarray]:
    """Direct evaluation of ``sum_x zeta_h^f(x) zeta_q^(-v.x)`` as ``(N, coeffs[v])``."""
    N = common_order(f.h, q)
    X = f.group.coords
    n = f.group.size
    exps = (f.vec * (N // f.h))[None, :] - (X @ X.T) * (N // q)
    exps %= N
    counts = np.bincount((np.arange(n)[:, None] * N + exps).ravel(), minlength=n * N)
    return N, counts.reshape(n, N)


def walsh_spectrum(f: ExponentArray, q: int | None = None, method: str = "auto") -> Spectrum:
    """Exact ``|sum_x zeta_h^f(x) zeta_q^(-w.x)|^2`` for every ``w``."""
    q = _domain_order(f, q)
    if method == "auto":
        method = "direct" if f.group.size <= DIRECT_SPECTRUM_LIMIT else "transform"
    if method == "direct":
        N, F = transform_coeffs(f, q)
        red = reduce_coeffs(norm_squared_batch(F), N)
    elif method == "transform":
        N, red = spectrum_fast(f.group, f.vec, f.h)
    else:
        raise InvalidParameterError(f"unknown method {method!r}")
    return Spectrum(f.group, f.h, N, np.asarray(red, dtype=np.int64))


def is_gbf(f: ExponentArray, q: int | None = None) -> bool:
    spec = walsh_spectrum(f, q)
    return bool(np.all(spec.rational) and np.all(spec.reduced[:, 0] == f.group.size))


@dataclass(frozen=True)
class PlateauedClass:
    plateaued: bool
    alpha: int | None
    support: frozenset[Element]
    index: int | None = None

    def to_json(self, group: Group) -> dict:
        return {
            "plateaued": self.plateaued,
            "alpha": self.alpha,
            "index": self.index,
            "support": [list(g) for g in sorted(self.support, key=group.rank)],
        }


def _prime_base(n: int) -> int | None:
    """The prime ``p`` with ``n = p^e``, or None."""
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return None


def plateau_index(alpha: int, q: int, m: int) -> int | None:
    """``e - m`` when ``q`` and ``alpha = p^e`` are powers of one prime ``p``."""
    p = _prime_base(q)
    if p is None or alpha < 1:
        return None
    e = 0
    while alpha % p == 0:
        alpha //= p
        e += 1
    return e - m if alpha == 1 else None


def classify_plateaued(f: ExponentArray, q: int | None = None, method: str = "auto") -> PlateauedClass:
    q = _domain_order(f, q)
    spec = walsh_spectrum(f, q, method)
    if spec.distinct_nonzero != 1:
        return PlateauedClass(False, None, spec.support)
    cands = spec.alpha_candidates
    if len(cands) != 1:
        # a constant nonzero |W|^2 equals |G|^2 / |support| by Parseval
        raise InvariantViolation("constant squared modulus is not a rational integer")
    alpha = cands[0]
    return PlateauedClass(True, alpha, spec.support, plateau_index(alpha, q, f.group.m))


def dft_relation_check(phi: ExponentArray, q: int | None = None) -> bool:
    """Autocorrelation row vector times the Fourier-Kronecker matrix equals the
    squared spectrum, compared exactly in Z[zeta_N].

    Both sides come from their definitions: the left from direct autocorrelation,
    the right from direct transform sums.
    """
    q = _domain_order(phi, q)
    N, F = transform_coeffs(phi, q)
    rhs = norm_squared_batch(F)
    ac = ac_table(phi, "direct").coeffs
    n, h = ac.shape
    ac_n = np.zeros((n, N), dtype=np.int64)
    ac_n[:, np.arange(h) * (N // h)] = ac
    D = fourier_kronecker(q, phi.group.m, bound=max(FOURIER_BOUND, n)).entries * (N // q)
    rows = np.arange(n)[:, None]
    lhs = np.empty_like(rhs)
    for j in range(n):
        # multiplying by zeta_N^e rolls coefficient c to c + e
        idx = (np.arange(N)[None, :] - D[:, j][:, None]) % N
        lhs[j] = ac_n[rows, idx].sum(axis=0)
    return bool(np.all(is_zero_batch(lhs - rhs, N)))


def predicted_support(s: Sequence[int], z: Sequence[int], h: int) -> frozenset[Element]:
    """``{v in Z_{hq}^m : v = 1 mod h}`` for a type-1 expansion of an array on ``Z_q^m``."""
    s, z = tuple(s), tuple(z)
    if not s or len(set(s)) != 1:
        raise InvalidParameterError(f"need a homogeneous domain, got {s}")
    if len(z) != len(s) or any(v != 1 for v in z):
        raise InvalidParameterError(f"support prediction needs the all-ones type, got {z}")
    E = Group(tuple(h * q for q in s))
    return frozenset(g for g in E.elements() if all(c % h == 1 for c in g))


def gpbf_by_counts(f: ExponentArray) -> bool:
    """Partially-bent test via ``(n - N_F)(n - N_C) = n`` for maps ``Z_q^m -> Z_q``."""
    n = f.group.size
    n_f = walsh_spectrum(f).zero_count
    n_c = ac_table(f).zero_count()
    return (n - n_f) * (n - n_c) == n
