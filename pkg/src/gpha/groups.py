"""Finite abelian groups Z_{s1} x ... x Z_{sm} and the groups built from them.

Elements are coordinate tuples. Ranks follow mixed radix with the last
coordinate varying fastest, so ``(0, 0), (0, 1), (1, 0), (1, 1)`` are ranks
0..3 of ``Z_2 x Z_2``. Every matrix and vector in the package is indexed by
this ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, InvalidParameterError

Element = tuple[int, ...]

# Dense |G| x |G| translation tables are only cached below this order.
TABLE_LIMIT = 1024
# Literal associativity of an extension group is checked below this order.
ASSOCIATIVITY_LIMIT = 128


@dataclass(frozen=True)
class Group:
    """The abelian group Z_{orders[0]} x ... x Z_{orders[-1]}.

    An empty ``orders`` tuple gives the trivial group.
    """

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(s) for s in self.orders)
        if any(s < 2 for s in orders):
            raise InvalidParameterError(f"every cyclic factor needs order >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def m(self) -> int:
        return len(self.orders)

    @cached_property
    def size(self) -> int:
        return int(np.prod(self.orders, dtype=object)) if self.orders else 1

    @cached_property
    def weights(self) -> np.ndarray:
        w = [1] * self.m
        for i in range(self.m - 2, -1, -1):
            w[i] = w[i + 1] * self.orders[i + 1]
        return np.array(w, dtype=np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """``(size, m)`` array; row ``r`` holds the coordinates of rank ``r``."""
        r = np.arange(self.size, dtype=np.int64)
        out = np.empty((self.size, self.m), dtype=np.int64)
        for i, s in enumerate(self.orders):
            out[:, i] = (r // self.weights[i]) % s
        out.setflags(write=False)
        return out

    @cached_property
    def _orders_arr(self) -> np.ndarray:
        return np.array(self.orders, dtype=np.int64)

    @property
    def identity(self) -> Element:
        return (0,) * self.m

    def is_homogeneous(self) -> bool:
        return self.m > 0 and len(set(self.orders)) == 1

    def rank(self, g: Sequence[int]) -> int:
        if len(g) != self.m:
            raise InvalidInputError(f"element {tuple(g)} has wrong length for {self.orders}")
        r = 0
        for gi, s in zip(g, self.orders):
            r = r * s + (int(gi) % s)
        return r

    def unrank(self, r: int) -> Element:
        if not 0 <= r < self.size:
            raise InvalidInputError(f"rank {r} out of range for group of size {self.size}")
        out = []
        for s in reversed(self.orders):
            r, c = divmod(r, s)
            out.append(c)
        return tuple(reversed(out))

    def elements(self) -> list[Element]:
        return [tuple(int(c) for c in row) for row in self.coords]

    def contains(self, g: Sequence[int]) -> bool:
        return len(g) == self.m and all(0 <= int(c) < s for c, s in zip(g, self.orders))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return tuple((int(x) + int(y)) % s for x, y, s in zip(a, b, self.orders))

    def neg(self, a: Sequence[int]) -> Element:
        return tuple((-int(x)) % s for x, s in zip(a, self.orders))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return tuple((int(x) - int(y)) % s for x, y, s in zip(a, b, self.orders))

    def ranks_of(self, coords: np.ndarray) -> np.ndarray:
        """Ranks of an ``(..., m)`` coordinate array, reducing coordinates first."""
        return (np.asarray(coords, dtype=np.int64) % self._orders_arr) @ self.weights

    def translate(self, w: Sequence[int] | int) -> np.ndarray:
        """Ranks of ``g + w`` for every ``g`` in rank order."""
        if isinstance(w, (int, np.integer)):
            w = self.coords[int(w)]
        return self.ranks_of(self.coords + np.asarray(w, dtype=np.int64))

    @cached_property
    def negation(self) -> np.ndarray:
        """``negation[r]`` is the rank of ``-unrank(r)``."""
        return self.ranks_of(-self.coords)

    @cached_property
    def translation_table(self) -> np.ndarray:
        """``T[w, g] = rank(g + w)``; only for groups of order <= TABLE_LIMIT."""
        if self.size > TABLE_LIMIT:
            raise InvalidParameterError(f"translation table refused for order {self.size}")
        t = self.ranks_of(self.coords[:, None, :] + self.coords[None, :, :])
        t.setflags(write=False)
        return t

    def __repr__(self) -> str:
        return f"Group{self.orders}"


def make_group(orders: Iterable[int]) -> Group:
    return Group(tuple(orders))


def _check_subgroup(group: Group, members: Iterable[Sequence[int]]) -> frozenset[Element]:
    elems = frozenset(tuple(int(c) for c in g) for g in members)
    if group.identity not in elems:
        raise InvalidInputError("subgroup must contain the identity")
    for g in elems:
        if not group.contains(g):
            raise InvalidInputError(f"{g} is not an element of {group}")
    for a in elems:
        for b in elems:
            if group.add(a, b) not in elems:
                raise InvalidInputError("element set is not closed under addition")
    return elems


class QuotientGroup:
    """``ambient / kernel`` with cosets named by their rank-minimal element."""

    def __init__(self, ambient: Group, kernel: Iterable[Sequence[int]]):
        self.ambient = ambient
        self.kernel = _check_subgroup(ambient, kernel)
        kranks = sorted(ambient.rank(k) for k in self.kernel)
        canon = np.full(ambient.size, ambient.size, dtype=np.int64)
        for k in kranks:
            np.minimum(canon, ambient.translate(k), out=canon)
        canon.setflags(write=False)
        self.canon = canon
        rep_ranks = np.unique(canon)
        self.rep_ranks = rep_ranks
        self.reps: tuple[Element, ...] = tuple(ambient.unrank(int(r)) for r in rep_ranks)
        self._rep_set = frozenset(self.reps)

    @property
    def order(self) -> int:
        return len(self.reps)

    @property
    def identity(self) -> Element:
        return self.ambient.identity

    def canonical(self, g: Sequence[int]) -> Element:
        return self.ambient.unrank(int(self.canon[self.ambient.rank(g)]))

    def contains(self, x: Sequence[int]) -> bool:
        return tuple(x) in self._rep_set

    def elements(self) -> list[Element]:
        return list(self.reps)

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.canonical(self.ambient.add(a, b))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.canonical(self.ambient.sub(a, b))

    def coset(self, g: Sequence[int]) -> frozenset[Element]:
        return frozenset(self.ambient.add(g, k) for k in self.kernel)

    def __repr__(self) -> str:
        return f"QuotientGroup({self.ambient!r} / order-{len(self.kernel)} kernel)"


def quotient(ambient: Group, kernel: Iterable[Sequence[int]]) -> QuotientGroup:
    return QuotientGroup(ambient, kernel)


@dataclass(frozen=True)
class ExpansionContext:
    """The group ``E`` of a type-``z`` expansion with its subgroups ``L`` and ``K``.

    ``L_parts[j]`` is the part of ``L`` whose scaled coordinate sum is ``j`` mod ``h``;
    ``L_parts[0]`` is ``K``.
    """

    base: Group
    z: tuple[int, ...]
    h: int
    big: Group
    L: tuple[Element, ...]
    K: tuple[Element, ...]
    L_parts: tuple[tuple[Element, ...], ...] = field(repr=False)

    @property
    def weight(self) -> int:
        return sum(self.z)

    @cached_property
    def carry(self) -> np.ndarray:
        """``b(g) = sum_i floor(g_i / s_i)`` for every ``g`` in ``E`` (rank order)."""
        s = np.array(self.base.orders, dtype=np.int64)
        return (self.big.coords // s).sum(axis=1) if self.base.m else np.zeros(1, np.int64)

    @cached_property
    def reduction(self) -> np.ndarray:
        """Rank in ``G`` of ``g mod s`` for every ``g`` in ``E``."""
        return self.base.ranks_of(self.big.coords)

    @cached_property
    def L_mask(self) -> np.ndarray:
        mask = np.zeros(self.big.size, dtype=bool)
        mask[[self.big.rank(g) for g in self.L]] = True
        return mask

    def l_index(self, g: Sequence[int]) -> int:
        """Scaled coordinate sum ``sum g_i / s_i`` of an element of ``L``."""
        return sum(int(gi) // s for gi, s in zip(g, self.base.orders))

    @cached_property
    def generator(self) -> Element:
        """``(0,..,s_i,..,0)`` for the smallest ``i`` with ``z_i = 1``: generates ``L/K``."""
        if not any(self.z):
            raise InvalidParameterError("type-0 expansion has trivial L/K")
        i = self.z.index(1)
        return tuple(self.base.orders[i] if j == i else 0 for j in range(self.base.m))

    @cached_property
    def quotient(self) -> QuotientGroup:
        return QuotientGroup(self.big, self.K)

    def embed_base(self, x: Sequence[int]) -> Element:
        """``x`` in ``G`` read as an element of ``E`` (coordinates below ``s_i``)."""
        return tuple(int(c) for c in x)


@lru_cache(maxsize=64)
def _expansion_context(base: Group, z: tuple[int, ...], h: int) -> ExpansionContext:
    big = Group(tuple((zi * (h - 1) + 1) * s for zi, s in zip(z, base.orders)))
    axes = [
        [y * s for y in range(h)] if zi else [0] for zi, s in zip(z, base.orders)
    ]
    L = tuple(tuple(g) for g in itertools.product(*axes))
    parts: list[list[Element]] = [[] for _ in range(h)]
    for g in L:
        parts[sum(gi // s for gi, s in zip(g, base.orders)) % h].append(g)
    return ExpansionContext(
        base=base,
        z=z,
        h=h,
        big=big,
        L=L,
        K=tuple(parts[0]),
        L_parts=tuple(tuple(p) for p in parts),
    )


def expansion_context(base: Group, z: Sequence[int], h: int) -> ExpansionContext:
    z = tuple(int(v) for v in z)
    if len(z) != base.m:
        raise InvalidParameterError(f"type vector {z} has length {len(z)}, group has rank {base.m}")
    if any(v not in (0, 1) for v in z):
        raise InvalidParameterError(f"type vector must be 0/1, got {z}")
    if h < 2:
        raise InvalidParameterError(f"modulus h must be >= 2, got {h}")
    return _expansion_context(base, z, int(h))


ExtElement = tuple[int, Element]


class ExtGroup:
    """Central extension of ``Z_h`` by ``G`` twisted by a normalized cocycle.

    Elements are pairs ``(j, g)`` standing for ``(zeta_h^j, g)``;
    ``(j, g)(j', g') = (j + j' + psi(g, g'), g + g')``.
    """

    def __init__(self, base: Group, h: int, table: np.ndarray):
        self.base = base
        self.h = int(h)
        self.table = np.asarray(table, dtype=np.int64) % self.h

    @property
    def order(self) -> int:
        return self.h * self.base.size

    @property
    def identity(self) -> ExtElement:
        return (0, self.base.identity)

    def elements(self) -> list[ExtElement]:
        return [(j, g) for j in range(self.h) for g in self.base.elements()]

    def contains(self, a) -> bool:
        try:
            j, g = a
        except (TypeError, ValueError):
            return False
        return 0 <= int(j) < self.h and self.base.contains(g)

    def mul(self, a: ExtElement, b: ExtElement) -> ExtElement:
        (j, g), (k, x) = a, b
        twist = int(self.table[self.base.rank(g), self.base.rank(x)])
        return ((j + k + twist) % self.h, self.base.add(g, x))

    def inv(self, a: ExtElement) -> ExtElement:
        j, g = a
        ng = self.base.neg(g)
        twist = int(self.table[self.base.rank(g), self.base.rank(ng)])
        return ((-j - twist) % self.h, ng)

    def rank(self, a: ExtElement) -> int:
        return a[0] * self.base.size + self.base.rank(a[1])

    def multiplication_table(self) -> np.ndarray:
        """``(order, order)`` table of product ranks."""
        n = self.base.size
        T = self.base.translation_table if n <= TABLE_LIMIT else None
        if T is None:
            raise InvalidParameterError(f"multiplication table refused for base order {n}")
        j = np.arange(self.h)
        # product rank = ((j1 + j2 + psi[g1, g2]) % h) * n + T[g1, g2]
        jj = (j[:, None, None, None] + j[None, None, :, None] + self.table[None, :, None, :]) % self.h
        out = jj * n + T[None, :, None, :]
        return out.reshape(self.order, self.order)

    def check_group_axioms(self) -> bool:
        if self.table.shape != (self.base.size, self.base.size) or self.table[0, 0] != 0:
            return False
        if self.order > ASSOCIATIVITY_LIMIT:
            return True
        M = self.multiplication_table()
        ident = self.rank(self.identity)
        if not (np.array_equal(M[ident], np.arange(self.order))
                and np.array_equal(M[:, ident], np.arange(self.order))):
            return False
        return bool(np.array_equal(_assoc_lhs(M), _assoc_rhs(M)))


def _assoc_lhs(M: np.ndarray) -> np.ndarray:
    # (ab)c
    return M[M[:, :, None], np.arange(M.shape[0])[None, None, :]]


def _assoc_rhs(M: np.ndarray) -> np.ndarray:
    # a(bc)
    return M[np.arange(M.shape[0])[:, None, None], M[None, :, :]]


def central_extension(psi) -> ExtGroup:
    """Build ``E_psi`` from a :class:`~gpha.cocycles.Cocycle`.

    Raises InvalidInputError when ``psi`` is not a normalized cocycle.
    """
    from .cocycles import is_cocycle

    if int(psi.table[0, 0]) % psi.h != 0:
        raise InvalidInputError("cocycle is not normalized")
    if not is_cocycle(psi):
        raise InvalidInputError("table does not satisfy the cocycle identity")
    ext = ExtGroup(psi.group, psi.h, psi.table)
    if not ext.check_group_axioms():
        raise InvalidInputError("extension fails the group axioms")
    return ext
