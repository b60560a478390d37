"""Slow reference implementations that share no code with the package.

Everything here works on plain tuples and complex floats; results are only
trusted after rounding, and only at sizes where rounding is unambiguous.
"""

from __future__ import annotations

import cmath
import itertools
from collections import Counter
from pathlib import Path

DATA = Path(__file__).parent / "data"
EPS = 1e-7


def load_matrix(name: str) -> list[list[int]]:
    text = (DATA / f"{name}.txt").read_text(encoding="utf-8")
    return [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]


def root(k: int, e: int) -> complex:
    return cmath.exp(2j * cmath.pi * e / k)


def elements(orders):
    # last coordinate fastest
    return list(itertools.product(*[range(s) for s in orders]))


def add(a, b, orders):
    return tuple((x + y) % s for x, y, s in zip(a, b, orders))


def table(values, orders) -> dict:
    return dict(zip(elements(orders), values))


def ac(values, orders, h, w) -> complex:
    f = table(values, orders)
    return sum(root(h, f[g] - f[add(g, w, orders)]) for g in f)


def ac_all(values, orders, h) -> list[complex]:
    return [ac(values, orders, h, w) for w in elements(orders)]


def spectrum_complex(values, q, m, h) -> list[float]:
    f = table(values, (q,) * m)
    out = []
    for w in elements((q,) * m):
        s = sum(root(h, f[x]) * root(q, -sum(a * b for a, b in zip(w, x))) for x in f)
        out.append(abs(s) ** 2)
    return out


def spectrum(values, q, m, h) -> list[int]:
    return [round(v) for v in spectrum_complex(values, q, m, h)]


def expansion(values, orders, z, h):
    f = table(values, orders)
    big = tuple((zi * (h - 1) + 1) * s for zi, s in zip(z, orders))
    out = []
    for g in elements(big):
        a = tuple(x % s for x, s in zip(g, orders))
        b = sum(x // s for x, s in zip(g, orders))
        out.append((f[a] + b) % h)
    return big, out


def butson(rows: list[list[int]], k: int) -> bool:
    n = len(rows)
    for a in range(n):
        for b in range(a + 1, n):
            if abs(sum(root(k, x - y) for x, y in zip(rows[a], rows[b]))) > EPS:
                return False
    return True


def mu(orders, z, h) -> list[list[int]]:
    els = elements(orders)
    return [
        [sum((x + y) // s for x, y, s, zi in zip(a, b, orders, z) if zi) % h for b in els]
        for a in els
    ]


def coboundary(values, orders, h) -> list[list[int]]:
    f = table(values, orders)
    els = elements(orders)
    return [[(f[add(a, b, orders)] - f[a] - f[b]) % h for b in els] for a in els]


def is_gpha(values, orders, z, h) -> bool:
    big, vals = expansion(values, orders, z, h)
    L = {g for g in elements(big)
         if all(x % s == 0 for x, s in zip(g, orders))}
    return all(abs(ac(vals, big, h, w)) < EPS for w in elements(big) if w not in L)


def rds_counts(members, sub, universe) -> Counter:
    c = Counter()
    for a in members:
        for b in members:
            if a != b:
                c[sub(a, b)] += 1
    return Counter({x: c[x] for x in universe})
