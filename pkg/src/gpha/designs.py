"""Relative difference sets and the harness that cross-checks every
characterization of a generalized perfect array.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .arrays import ExponentArray, expand, is_gpbf, is_gpha, obstruction_condition_holds
from .cocycles import (
    Cocycle,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    is_butson,
    is_symmetric,
    mu_z,
    mu_z_is_coboundary,
)
from .cyclotomic import _is_prime
from .errors import InvalidInputError, InvalidParameterError, InvariantViolation
from .groups import ExtGroup, Group, QuotientGroup, central_extension, expansion_context
from .spectra import classify_plateaued, predicted_support

Ambient = QuotientGroup | ExtGroup | Group


@dataclass(frozen=True)
class Rds:
    """A candidate ``(v, n, k, lambda)`` relative difference set."""

    ambient: Ambient
    forbidden: frozenset
    members: frozenset
    params: tuple[int, int, int, int | Fraction]
    notes: tuple[str, ...] = ()

    def to_json(self, verified: bool | None = None) -> dict:
        v, n, k, lam = self.params
        return {
            "ambient": _describe(self.ambient),
            "forbidden": sorted(_jsonable(x) for x in self.forbidden),
            "members": sorted(_jsonable(x) for x in self.members),
            "params": [v, n, k, lam if isinstance(lam, int) else str(lam)],
            "verified": verify_rds(self) if verified is None else verified,
        }


def _jsonable(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_jsonable(c) for c in x]
    return int(x)


def _describe(amb: Ambient) -> dict:
    if isinstance(amb, QuotientGroup):
        return {"kind": "quotient", "orders": list(amb.ambient.orders),
                "kernel": sorted(_jsonable(k) for k in amb.kernel)}
    if isinstance(amb, ExtGroup):
        return {"kind": "extension", "orders": list(amb.base.orders), "h": amb.h}
    return {"kind": "group", "orders": list(amb.orders)}


def _ops(amb: Ambient):
    if isinstance(amb, ExtGroup):
        return (lambda a, b: amb.mul(a, amb.inv(b))), amb.order, amb.identity
    if isinstance(amb, QuotientGroup):
        return amb.sub, amb.order, amb.identity
    return amb.sub, amb.size, amb.identity


def _lambda(v: int, h: int) -> int | Fraction:
    lam = Fraction(v, h)
    return int(lam) if lam.denominator == 1 else lam


def verify_rds(r: Rds) -> bool:
    """Count the difference multiset of ``members`` exactly.

    True iff every element outside ``forbidden`` occurs ``lambda`` times and no
    non-identity element of ``forbidden`` occurs, with ``|members| = k`` and
    ``|ambient| = v * n``.
    """
    amb = r.ambient
    for x in r.members | r.forbidden:
        if not amb.contains(x):
            raise InvalidInputError(f"{x} is not an element of the ambient group")
    sub, order, ident = _ops(amb)
    v, n, k, lam = r.params
    if len(r.members) != k or len(r.forbidden) != n or order != v * n or ident not in r.forbidden:
        return False
    counts: Counter = Counter()
    mem = sorted(r.members)
    for a in mem:
        for b in mem:
            if a != b:
                counts[sub(a, b)] += 1
    if any(counts[x] for x in r.forbidden):
        return False
    outside = order - n
    hits = [c for x, c in counts.items() if x not in r.forbidden]
    if len(hits) != outside and lam != 0:
        return False
    ok = all(c == lam for c in hits)
    if ok and k * (k - 1) != lam * n * (v - 1):
        raise InvariantViolation(f"verified set breaks k(k-1) = lambda n (v-1) for {r.params}")
    return ok


def _guarantee_notes(h: int, v: int) -> tuple[str, ...]:
    notes = []
    if not _is_prime(h):
        notes.append(f"h={h} is not prime: equivalences are not guaranteed")
    if v % h:
        notes.append(f"h={h} does not divide v={v}: parameters are not integral")
    return tuple(notes)


def rds_from_expansion(phi: ExponentArray, z: Sequence[int]) -> Rds:
    """``{g + K : phi'(g) = 0}`` in ``E/K`` with forbidden subgroup ``L/K``."""
    if not any(z):
        raise InvalidParameterError("the quotient construction needs a nonzero type")
    ctx = expansion_context(phi.group, z, phi.h)
    Q = ctx.quotient
    pv = expand(phi, z).vec
    zero = np.flatnonzero(pv == 0)
    members = frozenset(ctx.big.unrank(int(r)) for r in np.unique(Q.canon[zero]))
    forbidden = frozenset(Q.canonical(g) for g in ctx.L)
    v, h = phi.group.size, phi.h
    return Rds(Q, forbidden, members, (v, h, v, _lambda(v, h)), _guarantee_notes(h, v))


def splitting_rds(f: ExponentArray) -> Rds:
    """``{(f(x), x)}`` in ``Z_h x G`` relative to ``Z_h x {0}``."""
    G, h = f.group, f.h
    amb = Group((h,) + G.orders)
    members = frozenset((f.values[r],) + g for r, g in enumerate(G.elements()))
    forbidden = frozenset((j,) + G.identity for j in range(h))
    v = G.size
    return Rds(amb, forbidden, members, (v, h, v, _lambda(v, h)), _guarantee_notes(h, v))


def extension_rds(psi: Cocycle) -> Rds:
    """``{(1, x)}`` in ``E_psi`` relative to the central subgroup ``<(zeta_h, 0)>``."""
    ext = central_extension(psi)
    G, h = psi.group, psi.h
    members = frozenset((0, g) for g in G.elements())
    forbidden = frozenset((j, G.identity) for j in range(h))
    v = G.size
    return Rds(ext, forbidden, members, (v, h, v, _lambda(v, h)), _guarantee_notes(h, v))


def ext_rds_check(psi: Cocycle) -> bool:
    if not _is_prime(psi.h):
        raise InvalidParameterError(f"the extension criterion needs prime h, got {psi.h}")
    return verify_rds(extension_rds(psi))


@dataclass(frozen=True)
class GammaReport:
    mapping: dict
    bijective: bool
    is_homomorphism: bool
    diagram_commutes: bool
    image_of_transversal_equals_R: bool

    @property
    def ok(self) -> bool:
        return (self.bijective and self.is_homomorphism and self.diagram_commutes
                and self.image_of_transversal_equals_R)


def gamma_iso(phi: ExponentArray, z: Sequence[int]) -> GammaReport:
    """The map ``(u, x) -> iota(u - phi(x)) + x + K`` from ``E_psi`` to ``E/K``
    for ``psi = mu_z * d phi``, with each of its claimed properties checked.
    """
    if not any(z):
        raise InvalidParameterError("gamma needs a nonzero type")
    phi = phi.normalized()
    ctx = expansion_context(phi.group, z, phi.h)
    G, E, Q, h = phi.group, ctx.big, ctx.quotient, phi.h
    ext = central_extension(cocycle_product(mu_z(G, z, h), coboundary(phi)))
    y = np.array(ctx.generator, dtype=np.int64)
    Xg = G.coords

    # gam[j * |G| + x] = canonical E-rank of Gamma((j, x))
    j = np.repeat(np.arange(h), G.size)
    x = np.tile(np.arange(G.size), h)
    shift = (j - phi.vec[x]) % h
    gam = Q.canon[E.ranks_of(Xg[x] + shift[:, None] * y)]

    bijective = len(np.unique(gam)) == ext.order == Q.order

    M = ext.multiplication_table()
    Ec = E.coords
    summed = Q.canon[E.ranks_of(Ec[gam][:, None, :] + Ec[gam][None, :, :])]
    is_hom = bool(np.array_equal(gam[M], summed))

    beta_ok = np.array_equal(ctx.reduction[gam], x)
    iota = Q.canon[E.ranks_of(np.arange(h)[:, None] * y)]
    iota_ok = np.array_equal(gam[np.arange(h) * G.size], iota)

    image = frozenset(E.unrank(int(r)) for r in gam[: G.size])
    R = rds_from_expansion(phi, z).members

    mapping = {
        (int(jj), G.unrank(int(xx))): E.unrank(int(g)) for jj, xx, g in zip(j, x, gam)
    }
    return GammaReport(mapping, bool(bijective), is_hom, bool(beta_ok and iota_ok), image == R)


@dataclass(frozen=True)
class EquivalenceReport:
    s: tuple[int, ...]
    z: tuple[int, ...]
    h: int
    v: int
    gpha: bool
    butson: bool
    symmetric: bool
    rds_ok: bool
    plateaued: bool | None
    gpbf: bool | None
    obstruction_holds: bool | None
    coboundary_mu: bool
    guarantees: bool

    @property
    def all_hold(self) -> bool:
        core = self.gpha and self.butson and self.symmetric and self.rds_ok
        optional = [b for b in (self.plateaued, self.gpbf) if b is not None]
        return core and all(optional)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["s"], d["z"] = list(self.s), list(self.z)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"s={list(self.s)} z={''.join(map(str, self.z))} h={self.h} v={self.v}"]
        for name in ("gpha", "butson", "symmetric", "rds_ok", "plateaued", "gpbf",
                     "obstruction_holds", "coboundary_mu", "guarantees"):
            val = getattr(self, name)
            lines.append(f"  {name:<18} {'n/a' if val is None else str(val).lower()}")
        return "\n".join(lines) + "\n"


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise InvariantViolation(f"equivalence broken: {what}")


def equivalence_harness(phi: ExponentArray, z: Sequence[int]) -> EquivalenceReport:
    """Compute every verdict on its own code path, then assert the agreements
    that hold for prime ``h`` dividing ``|G|``.
    """
    z = tuple(int(c) for c in z)
    if not any(z):
        raise InvalidParameterError("the harness needs a nonzero type")
    phi = phi.normalized()
    G, h = phi.group, phi.h
    v = G.size
    guarantees = _is_prime(h) and v % h == 0
    homogeneous = G.is_homogeneous()
    all_ones = all(z)

    gpha = is_gpha(phi, z)
    M = cocyclic_matrix(cocycle_product(mu_z(G, z, h), coboundary(phi)))
    butson = is_butson(M)
    symmetric = is_symmetric(M)
    rds_ok = verify_rds(rds_from_expansion(phi, z))
    expansion = expand(phi, z)

    plateaued = None
    if all_ones and homogeneous:
        q, m = G.orders[0], G.m
        cls = classify_plateaued(expansion)
        plateaued = (cls.plateaued and cls.alpha == (h * h * q) ** m
                     and cls.support == predicted_support(G.orders, z, h))
    gpbf = is_gpbf(expansion) if expansion.group.is_homogeneous() else None
    obstruction = obstruction_condition_holds(phi) if homogeneous else None

    _expect(symmetric, "cocyclic matrix over an abelian group is not symmetric")
    if gpbf is not None:
        _expect(gpbf or not gpha, "GPhA whose expansion is not partially bent")
    if guarantees:
        _expect(gpha == butson == rds_ok, f"gpha={gpha} butson={butson} rds={rds_ok}")
        if plateaued is not None:
            _expect(plateaued == gpha, f"plateaued={plateaued} gpha={gpha}")
        if all_ones and homogeneous and G.orders[0] == h and obstruction:
            _expect(gpbf == gpha, f"gpbf={gpbf} gpha={gpha} under the obstruction condition")

    return EquivalenceReport(
        s=G.orders, z=z, h=h, v=v,
        gpha=gpha, butson=butson, symmetric=symmetric, rds_ok=rds_ok,
        plateaued=plateaued, gpbf=gpbf, obstruction_holds=obstruction,
        coboundary_mu=mu_z_is_coboundary(G, z, h), guarantees=guarantees,
    )
