"""Cocycles G x G -> <zeta_h>, cocyclic matrices and Butson verification.

Cocycles and matrices are kept in logarithmic (exponent) form: entry ``e``
stands for ``zeta_h^e``, and pointwise multiplication of cocycles becomes
addition of exponent tables modulo ``h``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from .arrays import ExponentArray
from .cyclotomic import CycInt, cyclotomic_polynomial, is_zero_batch, reduce_coeffs
from .errors import BudgetExceededError, InvalidInputError, InvalidParameterError
from .groups import TABLE_LIMIT, Group


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Exponent table ``table[a, b]`` of a map ``G x G -> <zeta_h>`` in rank order."""

    group: Group
    h: int
    table: np.ndarray
    provenance: str = "imported"

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=np.int64)
        n = self.group.size
        if t.shape != (n, n):
            raise InvalidInputError(f"cocycle table must be {n}x{n}, got {t.shape}")
        object.__setattr__(self, "table", _frozen(t % self.h))

    def value(self, a: Sequence[int], b: Sequence[int]) -> int:
        return int(self.table[self.group.rank(a), self.group.rank(b)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cocycle):
            return NotImplemented
        return (self.group == other.group and self.h == other.h
                and np.array_equal(self.table, other.table))

    def __repr__(self) -> str:
        return f"Cocycle({self.group!r}, h={self.h}, {self.provenance})"


@dataclass(frozen=True, eq=False)
class ExpMatrix:
    """Square matrix over <zeta_k> in logarithmic form."""

    n: int
    k: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.asarray(self.entries, dtype=np.int64)
        if e.shape != (self.n, self.n):
            raise InvalidInputError(f"expected {self.n}x{self.n} entries, got {e.shape}")
        if e.size and (e.min() < 0 or e.max() >= self.k):
            raise InvalidInputError(f"entries must lie in [0, {self.k})")
        object.__setattr__(self, "entries", _frozen(e))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpMatrix):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.entries, other.entries)

    def to_text(self) -> str:
        return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in self.entries)

    @classmethod
    def from_text(cls, text: str, k: int) -> "ExpMatrix":
        rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
        if any(len(r) != len(rows) for r in rows):
            raise InvalidInputError("matrix text is not square")
        return cls(len(rows), k, np.array(rows, dtype=np.int64).reshape(len(rows), len(rows)))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "rows": self.entries.tolist()}

    @classmethod
    def from_json(cls, data: dict | str) -> "ExpMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["n"]), int(data["k"]), np.array(data["rows"], dtype=np.int64))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad matrix JSON: {exc}") from exc


def trivial_cocycle(group: Group, h: int) -> Cocycle:
    return Cocycle(group, h, np.zeros((group.size, group.size), np.int64), "trivial")


def _sum_table(group: Group) -> np.ndarray:
    if group.size <= TABLE_LIMIT:
        return group.translation_table
    raise InvalidParameterError(f"group order {group.size} too large for a full cocycle table")


def coboundary(phi: ExponentArray) -> Cocycle:
    """``d phi(a, b) = phi(a + b) - phi(a) - phi(b)`` after normalizing ``phi(0) = 0``."""
    v = phi.normalized().vec
    T = _sum_table(phi.group)
    table = (v[T] - v[:, None] - v[None, :]) % phi.h
    return Cocycle(phi.group, phi.h, table, "coboundary")


def mu_z(base: Group, z: Sequence[int], h: int) -> Cocycle:
    """``mu_z(x, y) = sum over z_i = 1 of floor((x_i + y_i) / s_i)`` mod ``h``."""
    z = tuple(int(v) for v in z)
    if len(z) != base.m:
        raise InvalidParameterError(f"type vector {z} does not match rank {base.m}")
    X = base.coords
    table = np.zeros((base.size, base.size), dtype=np.int64)
    for i, (zi, s) in enumerate(zip(z, base.orders)):
        if zi:
            table += (X[:, None, i] + X[None, :, i]) // s
    return Cocycle(base, h, table % h, "mu_" + "".join(map(str, z)))


def is_normalized(c: Cocycle) -> bool:
    return int(c.table[0, 0]) == 0


def is_cocycle(c: Cocycle) -> bool:
    """Check ``t[a,b] + t[a+b,c] == t[a,b+c] + t[b,c]`` (mod h) for all triples."""
    t, h, n = c.table, c.h, c.group.size
    T = _sum_table(c.group)
    for a in range(n):
        ta = t[a]
        lhs = ta[:, None] + t[T[a]]
        rhs = ta[T] + t
        if np.any((lhs - rhs) % h):
            return False
    return True


def cocycle_product(a: Cocycle, b: Cocycle) -> Cocycle:
    if a.group != b.group or a.h != b.h:
        raise InvalidParameterError("cocycle product needs the same group and modulus")
    return Cocycle(a.group, a.h, (a.table + b.table) % a.h, "product")


def cocyclic_matrix(c: Cocycle) -> ExpMatrix:
    return ExpMatrix(c.group.size, c.h, c.table)


def is_symmetric(M: ExpMatrix) -> bool:
    return bool(np.array_equal(M.entries, M.entries.T))


def row_inner_product(M: ExpMatrix, a: int, b: int) -> CycInt:
    """Exact ``sum_j zeta_k^(m[a,j] - m[b,j])``."""
    return CycInt.from_exponents(M.k, (M.entries[a] - M.entries[b]).tolist())


def is_butson(M: ExpMatrix) -> bool:
    """True iff every pair of distinct rows has exactly vanishing inner product."""
    n, k, E = M.n, M.k, M.entries
    for a in range(n - 1):
        d = (E[a] - E[a + 1:]) % k
        rows = d.shape[0]
        counts = np.bincount(
            (np.arange(rows)[:, None] * k + d).ravel(), minlength=rows * k
        ).reshape(rows, k)
        if not np.all(is_zero_batch(counts, k)):
            return False
    return True


def _prime_divisors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def butson_order_constraint(n: int, k: int) -> bool:
    """Can ``n`` be written as a non-negative combination of the primes dividing ``k``?"""
    if n < 1 or k < 2:
        raise InvalidParameterError("need n >= 1 and k >= 2")
    reachable = [True] + [False] * n
    for p in _prime_divisors(k):
        for t in range(p, n + 1):
            reachable[t] = reachable[t] or reachable[t - p]
    return reachable[n]


ROW_SUM_BOUND = 64
ROW_SUM_MAX_K = 12
ROW_SUM_STATE_BUDGET = 2_000_000


def row_sum_feasibility(
    n: int, k: int, bound: int = ROW_SUM_BOUND, state_budget: int = ROW_SUM_STATE_BUDGET
) -> bool:
    """Decide whether counts ``x_0..x_{k-1} >= 0`` with ``sum x_j = n`` give
    ``|sum x_j zeta_k^j|^2 = n``: the necessary condition for a BH(n, k) with
    constant row and column sums.

    The reachable sums are tracked exactly in the power basis of Z[zeta_k]
    (one set per partial total). Complex magnitudes are used only to discard
    sums that cannot come back within reach, with a safety margin.
    """
    if n < 1 or k < 2:
        raise InvalidParameterError("need n >= 1 and k >= 2")
    if n > bound or k > ROW_SUM_MAX_K:
        raise BudgetExceededError(
            f"row-sum screen refused: n={n}, k={k} exceeds n <= {bound}, k <= {ROW_SUM_MAX_K}",
            required=n, budget=bound,
        )
    deg = len(cyclotomic_polynomial(k)) - 1
    eye = np.zeros((k, k), dtype=np.int64)
    eye[np.arange(k), np.arange(k)] = 1
    steps = [tuple(int(v) for v in row) for row in reduce_coeffs(eye, k)]
    basis = np.exp(2j * np.pi * np.arange(deg) / k)
    target = n**0.5
    states = {(0,) * deg}
    for t in range(1, n + 1):
        reach = target + (n - t) + 1e-6
        nxt = set()
        for s in states:
            for st in steps:
                v = tuple(a + b for a, b in zip(s, st))
                if abs(np.dot(v, basis)) <= reach:
                    nxt.add(v)
        if len(nxt) > state_budget:
            raise BudgetExceededError(
                f"row-sum screen refused: {len(nxt)} partial sums exceed the state budget",
                required=len(nxt), budget=state_budget,
            )
        states = nxt
    for s in states:
        a = CycInt(k, s + (0,) * (k - deg))
        if (a * a.conj()).as_integer() == n:
            return True
    return False


def mu_z_is_coboundary(base: Group, z: Sequence[int], h: int) -> bool:
    """``mu_z`` splits exactly when ``gcd(s_i, h) = 1`` for every ``i`` with ``z_i = 1``."""
    if len(z) != base.m:
        raise InvalidParameterError(f"type vector {tuple(z)} does not match rank {base.m}")
    return all(gcd(s, h) == 1 for zi, s in zip(z, base.orders) if zi)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
