"""Constructions: Kronecker composition of orthogonal cocycles, the binary
family on Z_2^k, and exhaustive search for small arrays.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .arrays import ExponentArray, is_gpha
from .catalog import BINARY_CUBE
from .cocycles import (
    Cocycle,
    ExpMatrix,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    is_butson,
    is_cocycle,
    is_symmetric,
    mu_z,
)
from .cyclotomic import _is_prime
from .designs import EquivalenceReport, equivalence_harness
from .errors import BudgetExceededError, InvalidInputError, InvalidParameterError, InvariantViolation
from .groups import Group

SEARCH_BUDGET = 2**24
FAMILY_BOUND = 2**10


@dataclass(frozen=True, eq=False)
class Certificate:
    """An orthogonality claim for ``base * d phi`` over ``<zeta_k>``.

    ``phi`` carries values in ``Z_k``; the full cocycle and its matrix are derived.
    """

    base: Cocycle
    phi: ExponentArray
    report: EquivalenceReport | None = None

    def __post_init__(self) -> None:
        if self.base.group != self.phi.group or self.base.h != self.phi.h:
            raise InvalidInputError("certificate cocycle and array disagree on group or modulus")

    @property
    def group(self) -> Group:
        return self.base.group

    @property
    def k(self) -> int:
        return self.base.h

    @cached_property
    def cocycle(self) -> Cocycle:
        return cocycle_product(self.base, coboundary(self.phi))

    @cached_property
    def matrix(self) -> ExpMatrix:
        return cocyclic_matrix(self.cocycle)

    @cached_property
    def orthogonal(self) -> bool:
        return is_butson(self.matrix)

    @cached_property
    def symmetric(self) -> bool:
        return is_symmetric(self.matrix)

    def digest(self) -> dict:
        M = self.matrix
        return {
            "order": M.n,
            "k": M.k,
            "row_checksums": [int(s) for s in M.entries.sum(axis=1)],
            "sha256": hashlib.sha256(M.to_text().encode()).hexdigest(),
        }

    def to_json(self) -> dict:
        return {
            "s": list(self.group.orders),
            "k": self.k,
            "base": {"provenance": self.base.provenance, "rows": self.base.table.tolist()},
            "phi": list(self.phi.values),
            "orthogonal": self.orthogonal,
            "symmetric": self.symmetric,
            "digest": self.digest(),
            "report": None if self.report is None else self.report.to_dict(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict | str) -> "Certificate":
        """Rebuild a certificate; the embedded digest must match the rebuilt matrix."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            group = Group(tuple(data["s"]))
            k = int(data["k"])
            base = Cocycle(group, k, np.array(data["base"]["rows"], dtype=np.int64),
                           data["base"].get("provenance", "imported"))
            phi = ExponentArray(group, k, tuple(data["phi"]))
            claimed = data["digest"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad certificate JSON: {exc}") from exc
        cert = cls(base, phi)
        if cert.digest() != claimed:
            raise InvalidInputError("certificate digest does not match its matrix")
        return cert


def certificate(base: Cocycle, phi: ExponentArray) -> Certificate:
    return Certificate(base, phi.normalized())


def kronecker_compose(c1: Certificate, c2: Certificate) -> Certificate:
    """Certificate over ``G_s x G_t`` whose matrix is the Kronecker product of the factors.

    Coordinates of ``G_s`` come first; coefficients live in ``<zeta_lcm(k1, k2)>``.
    """
    for name, c in (("first", c1), ("second", c2)):
        if not c.orthogonal:
            raise InvalidInputError(f"{name} certificate is not orthogonal")
    k = math.lcm(c1.k, c2.k)
    a, b = k // c1.k, k // c2.k
    n1, n2 = c1.group.size, c2.group.size
    group = Group(c1.group.orders + c2.group.orders)

    def tensor_table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        t = a * t1[:, None, :, None] + b * t2[None, :, None, :]
        return t.reshape(n1 * n2, n1 * n2) % k

    base = Cocycle(group, k, tensor_table(c1.base.table, c2.base.table), "kronecker")
    vals = (a * c1.phi.vec[:, None] + b * c2.phi.vec[None, :]).ravel() % k
    out = Certificate(base, ExponentArray(group, k, tuple(vals.tolist())))

    expected = tensor_table(c1.matrix.entries, c2.matrix.entries)
    if not np.array_equal(out.matrix.entries, expected):
        raise InvariantViolation("composed matrix differs from the Kronecker product")
    if not (out.orthogonal and is_cocycle(out.cocycle)):
        raise InvariantViolation("composition lost orthogonality or the cocycle identity")
    if c1.symmetric and c2.symmetric and not out.symmetric:
        raise InvariantViolation("composition of symmetric factors is not symmetric")
    return out


@dataclass(frozen=True)
class FamilyMember:
    array: ExponentArray
    certificate: Certificate


def family_gpba(k: int, bound: int = FAMILY_BOUND) -> FamilyMember:
    """A binary array on ``Z_2^k`` (``k >= 3``) of type 1 with perfect expansion.

    Composes the cube example with ``mu_1`` on ``Z_2`` (and zero array) ``k - 3`` times.
    """
    if k < 3:
        raise InvalidParameterError(f"the family starts at k = 3, got {k}")
    if 2**k > bound:
        raise BudgetExceededError(f"2^{k} exceeds the bound {bound}", 2**k, bound)
    cube = BINARY_CUBE
    cert = certificate(mu_z(cube.group, (1, 1, 1), 2), cube)
    z2 = Group((2,))
    step = certificate(mu_z(z2, (1,), 2), ExponentArray(z2, 2, (0, 0)))
    for _ in range(k - 3):
        cert = kronecker_compose(cert, step)
    G = cert.group
    if not (cert.base == mu_z(G, (1,) * k, 2)):
        raise InvariantViolation("composed base cocycle is not mu_1 on Z_2^k")
    chi = cert.phi
    report = equivalence_harness(chi, (1,) * k)
    if not (report.gpha and report.butson and report.symmetric and report.gpbf):
        raise InvariantViolation(f"family member k={k} failed verification")
    return FamilyMember(chi, Certificate(cert.base, chi, report))


@dataclass(frozen=True)
class SearchResult:
    array: ExponentArray
    report: EquivalenceReport

    def to_json(self) -> dict:
        return {"array": self.array.to_json(), "report": self.report.to_dict()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _candidate(n: int, h: int, idx: int) -> np.ndarray:
    """The ``idx``-th normalized value vector in lexicographic order."""
    digits = np.zeros(n, dtype=np.int64)
    for pos in range(n - 1, 0, -1):
        idx, digits[pos] = divmod(idx, h)
    return digits


def _scan(args: tuple) -> list[int]:
    orders, h, z, lo, hi, mode = args
    G = Group(orders)
    n = G.size
    T = G.translation_table
    mu = mu_z(G, z, h).table
    hits = []
    for idx in range(lo, hi):
        v = _candidate(n, h, idx)
        if mode == "butson":
            table = (mu + v[T] - v[:, None] - v[None, :]) % h
            ok = is_butson(ExpMatrix(n, h, table))
        else:
            ok = is_gpha(ExponentArray(G, h, tuple(v.tolist())), z)
        if ok:
            hits.append(idx)
    return hits


def _chunks(total: int, parts: int) -> Iterator[tuple[int, int]]:
    step = -(-total // parts)
    for lo in range(0, total, step):
        yield lo, min(total, lo + step)


def search_space_size(s: Sequence[int], h: int) -> int:
    return h ** (math.prod(s) - 1)


def exhaustive_search(
    s: Sequence[int],
    h: int,
    z: Sequence[int],
    budget: int = SEARCH_BUDGET,
    workers: int = 1,
    filter: str = "auto",
) -> list[SearchResult]:
    """All normalized arrays on ``Z_s`` whose type-``z`` expansion is perfect off L.

    ``filter`` picks the per-candidate test: ``butson`` (orthogonality of
    ``mu_z * d phi``, valid for prime ``h``), ``ac`` (autocorrelation definition)
    or ``auto``. Results are in lexicographic order of the value vector.
    """
    G = Group(tuple(s))
    z = tuple(int(c) for c in z)
    if len(z) != G.m or not any(z) or set(z) - {0, 1}:
        raise InvalidParameterError(f"type {z} must be a nonzero 0/1 vector of length {G.m}")
    total = search_space_size(G.orders, h)
    if total > budget:
        raise BudgetExceededError(
            f"search over {total} candidates exceeds the budget {budget}; rerun with --budget {total}",
            total, budget,
        )
    if filter == "auto":
        filter = "butson" if _is_prime(h) and G.size % h == 0 else "ac"
    if filter not in ("butson", "ac"):
        raise InvalidParameterError(f"unknown filter {filter!r}")
    workers = max(1, int(workers))
    jobs = [(G.orders, h, z, lo, hi, filter) for lo, hi in _chunks(total, workers)]
    if workers == 1:
        parts = [_scan(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, jobs))
    hits = sorted(i for part in parts for i in part)
    results = []
    for idx in hits:
        arr = ExponentArray(G, h, tuple(_candidate(G.size, h, idx).tolist()))
        results.append(SearchResult(arr, equivalence_harness(arr, z)))
    return results
