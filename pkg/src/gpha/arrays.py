"""h-ary arrays on finite abelian groups: expansions and periodic autocorrelation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .cyclotomic import CycInt, exact_values, is_zero_batch, norm_squared_batch, reduce_coeffs
from .errors import InvalidInputError, InvalidParameterError, InvariantViolation
from .groups import TABLE_LIMIT, Element, ExpansionContext, Group, expansion_context
from .transform import autocorrelation_fast

# Above this domain size the autocorrelation is computed through the exact transform.
DIRECT_AC_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class ExponentArray:
    """A map ``group -> Z_h`` stored as a value per element, in rank order."""

    group: Group
    h: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.h < 2:
            raise InvalidParameterError(f"modulus h must be >= 2, got {self.h}")
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.group.size:
            raise InvalidInputError(
                f"array has {len(vals)} values but the group has order {self.group.size}"
            )
        if any(not 0 <= v < self.h for v in vals):
            raise InvalidInputError(f"array values must lie in [0, {self.h})")
        object.__setattr__(self, "values", vals)

    @cached_property
    def vec(self) -> np.ndarray:
        v = np.array(self.values, dtype=np.int64)
        v.setflags(write=False)
        return v

    def __call__(self, g: Sequence[int]) -> int:
        return self.values[self.group.rank(g)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExponentArray):
            return NotImplemented
        return (self.group, self.h, self.values) == (other.group, other.h, other.values)

    def __hash__(self) -> int:
        return hash((self.group, self.h, self.values))

    def __repr__(self) -> str:
        return f"ExponentArray({self.group!r}, h={self.h}, {list(self.values)})"

    def is_normalized(self) -> bool:
        return self.values[0] == 0

    def normalized(self) -> "ExponentArray":
        """The same array shifted so the identity maps to 0."""
        if self.is_normalized():
            return self
        c = self.values[0]
        return ExponentArray(self.group, self.h, tuple((v - c) % self.h for v in self.values))

    @classmethod
    def from_function(cls, group: Group, h: int, f: Callable[[Element], int]) -> "ExponentArray":
        return cls(group, h, tuple(int(f(g)) % h for g in group.elements()))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], h: int) -> "ExponentArray":
        """Array on ``Z_r x Z_c`` given as ``r`` rows of ``c`` values (row = first coordinate)."""
        group = Group((len(rows), len(rows[0])))
        return cls(group, h, tuple(v for row in rows for v in row))

    @classmethod
    def from_columns(cls, rows: Sequence[Sequence[int]], h: int) -> "ExponentArray":
        """Like :meth:`from_rows` but the display's columns index the first coordinate."""
        return cls.from_rows([list(col) for col in zip(*rows)], h)

    @classmethod
    def from_layers(cls, layers: Sequence[Sequence[Sequence[int]]], h: int) -> "ExponentArray":
        """Array on ``Z_l x Z_r x Z_c``; layer ``i`` holds the values with first coordinate ``i``."""
        group = Group((len(layers), len(layers[0]), len(layers[0][0])))
        return cls(group, h, tuple(v for layer in layers for row in layer for v in row))

    def to_json(self) -> dict:
        return {"h": self.h, "s": list(self.group.orders), "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict | str) -> "ExponentArray":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(Group(tuple(data["s"])), int(data["h"]), tuple(data["values"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"array JSON needs keys h, s, values: {exc}") from exc

    def format_layers(self) -> str:
        """Matrix display with the first coordinate selecting rows (rank 2) or layers."""
        orders = self.group.orders
        vals = self.vec
        if len(orders) <= 2:
            cols = orders[-1] if orders else 1
            grid = vals.reshape(-1, cols)
            return "\n".join(" ".join(str(int(v)) for v in row) for row in grid) + "\n"
        r, c = orders[-2], orders[-1]
        blocks = vals.reshape(-1, r, c)
        prefixes = Group(orders[:-2]).elements()
        out = []
        for prefix, block in zip(prefixes, blocks):
            out.append(f"layer {prefix}:")
            out.extend(" ".join(str(int(v)) for v in row) for row in block)
        return "\n".join(out) + "\n"


def expand(phi: ExponentArray, z: Sequence[int]) -> ExponentArray:
    """Type-``z`` expansion: ``phi'(g) = phi(g mod s) + sum_i floor(g_i / s_i)`` mod ``h``."""
    ctx = expansion_context(phi.group, z, phi.h)
    vals = (phi.vec[ctx.reduction] + ctx.carry) % phi.h
    return ExponentArray(ctx.big, phi.h, tuple(vals.tolist()))


@dataclass(frozen=True, eq=False)
class AcTable:
    """Autocorrelation at every shift, as coefficient rows in Z[zeta_order].

    ``order`` is ``h`` for direct evaluation; the transform path works in a
    larger cyclotomic ring that contains ``zeta_h``.
    """

    array: ExponentArray
    order: int
    coeffs: np.ndarray

    def value(self, w: Sequence[int] | int) -> CycInt:
        r = w if isinstance(w, (int, np.integer)) else self.array.group.rank(w)
        return CycInt(self.order, tuple(int(c) for c in self.coeffs[int(r)]))

    def values(self) -> list[CycInt]:
        return [self.value(r) for r in range(len(self.coeffs))]

    def zero_mask(self) -> np.ndarray:
        return is_zero_batch(self.coeffs, self.order)

    def zero_count(self) -> int:
        return int(self.zero_mask().sum())

    def norm_rows(self) -> np.ndarray:
        """``|AC(w)|^2`` reduced modulo Phi_order, one row per shift."""
        return reduce_coeffs(norm_squared_batch(self.coeffs), self.order)

    def norms_squared(self) -> np.ndarray:
        """``|AC(w)|^2`` as Python ints where rational, ``CycInt`` otherwise."""
        return exact_values(self.norm_rows(), self.order)


def autocorrelation(phi: ExponentArray, w: Sequence[int]) -> CycInt:
    """``AC(w) = sum_g zeta_h^(phi(g) - phi(g + w))``, straight from the definition."""
    shifted = phi.vec[phi.group.translate(tuple(w))]
    return CycInt.from_exponents(phi.h, (phi.vec - shifted).tolist())


def _ac_direct(phi: ExponentArray) -> np.ndarray:
    g, h, v = phi.group, phi.h, phi.vec
    n = g.size
    if n <= TABLE_LIMIT:
        d = (v[None, :] - v[g.translation_table]) % h
        return np.bincount((np.arange(n)[:, None] * h + d).ravel(), minlength=n * h).reshape(n, h)
    out = np.empty((n, h), dtype=np.int64)
    for w in range(n):
        out[w] = np.bincount((v - v[g.translate(w)]) % h, minlength=h)
    return out


def ac_table(phi: ExponentArray, method: str = "auto") -> AcTable:
    """All autocorrelations; ``method`` is ``direct``, ``transform`` or ``auto``."""
    if method == "auto":
        method = "direct" if phi.group.size <= DIRECT_AC_LIMIT else "transform"
    if method == "direct":
        return AcTable(phi, phi.h, _ac_direct(phi))
    if method == "transform":
        N, coeffs = autocorrelation_fast(phi.group, phi.vec, phi.h)
        return AcTable(phi, N, coeffs)
    raise InvalidParameterError(f"unknown method {method!r}")


def is_perfect(phi: ExponentArray, method: str = "auto") -> bool:
    mask = ac_table(phi, method).zero_mask()
    return bool(np.all(mask[1:]))


def _check_on_L(table: AcTable, ctx: ExpansionContext) -> None:
    """On L the autocorrelation is forced to ``zeta_h^(-b) |E|``."""
    E, h, k = ctx.big, ctx.h, table.order
    ranks = [E.rank(g) for g in ctx.L]
    expected = np.zeros((len(ranks), k), dtype=np.int64)
    for i, g in enumerate(ctx.L):
        expected[i, (-ctx.l_index(g) * (k // h)) % k] = E.size
    if not np.all(is_zero_batch(table.coeffs[ranks] - expected, k)):
        raise InvariantViolation("autocorrelation on L differs from its forced value")


def is_gpha(phi: ExponentArray, z: Sequence[int], method: str = "auto") -> bool:
    """Does the type-``z`` expansion vanish in autocorrelation at every shift outside L?"""
    ctx = expansion_context(phi.group, z, phi.h)
    table = ac_table(expand(phi, z), method)
    _check_on_L(table, ctx)
    return bool(np.all(table.zero_mask()[~ctx.L_mask]))


def is_gpbf(f: ExponentArray, method: str = "auto") -> bool:
    """Every autocorrelation has modulus 0 or the domain size."""
    n = f.group.size
    rows = ac_table(f, method).norm_rows()
    rational = ~np.any(rows[:, 1:] != 0, axis=1)
    return bool(np.all(rational & np.isin(rows[:, 0], (0, n * n))))


def obstruction_condition_holds(phi: ExponentArray) -> bool:
    """For every ``y != 0`` with coordinate sum ``0 mod h``, some ``x`` has
    ``phi(x + y) + sum_i floor((x_i + y_i) / q) != phi(x) + phi(y)`` mod ``h``.

    The domain must be ``Z_q^m``; the classical setting is ``q = h``.
    """
    h, G = phi.h, phi.group
    if not G.is_homogeneous():
        raise InvalidParameterError(f"domain must be Z_q^m, got {G.orders}")
    q = G.orders[0]
    X, v = G.coords, phi.vec
    for yr in range(1, G.size):
        y = X[yr]
        if int(y.sum()) % h:
            continue
        S = X + y
        lhs = v[G.ranks_of(S)] + (S // q).sum(axis=1)
        rhs = v + v[yr]
        if not np.any((lhs - rhs) % h):
            return False
    return True


def level_sets(phi: ExponentArray) -> tuple[frozenset[Element], ...]:
    """``N^i = {g : phi(g) = i}`` for ``i = 0..h-1``."""
    elems = phi.group.elements()
    return tuple(
        frozenset(g for g, v in zip(elems, phi.values) if v == i) for i in range(phi.h)
    )
