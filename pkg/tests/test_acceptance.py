"""Acceptance criteria, one check per criterion with its time budget.

Run under pytest (one PASS/FAIL line per criterion is printed even with output
capture on) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from gpha.arrays import ExponentArray, ac_table, expand, is_gpbf, is_gpha, obstruction_condition_holds  # noqa: E402
from gpha.catalog import BINARY_CUBE, BINARY_SQUARE_4, GPBF_NOT_GPHA, TERNARY_SQUARE_3  # noqa: E402
from gpha.cocycles import (  # noqa: E402
    butson_order_constraint,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    is_butson,
    is_symmetric,
    mu_z,
    row_sum_feasibility,
)
from gpha.cyclotomic import cyc_root  # noqa: E402
from gpha.designs import equivalence_harness, rds_from_expansion, verify_rds  # noqa: E402
from gpha.forge import family_gpba  # noqa: E402
from gpha.groups import Group  # noqa: E402
from gpha.spectra import classify_plateaued, is_gbf, predicted_support, walsh_spectrum  # noqa: E402

EXAMPLES = {
    "binary_cube": (BINARY_CUBE, 2),
    "binary_square_4": (BINARY_SQUARE_4, 2),
    "ternary_square_3": (TERNARY_SQUARE_3, 3),
}
LISTED_F = {
    "binary_cube": ({(a, b, c) for a in (1, 3) for b in (1, 3) for c in (1, 3)}, 512),
    "binary_square_4": ({(a, b) for a in (1, 3, 5, 7) for b in (1, 3, 5, 7)}, 256),
    "ternary_square_3": ({(a, b) for a in (1, 4, 7) for b in (1, 4, 7)}, 729),
}


def _factors(phi):
    mu = mu_z(phi.group, (1,) * phi.group.m, phi.h)
    cob = coboundary(phi)
    return {"mu": mu, "coboundary": cob, "product": cocycle_product(mu, cob)}


def golden_matrices():
    bad = []
    for name, (phi, _) in EXAMPLES.items():
        for factor, c in _factors(phi).items():
            text = cocyclic_matrix(c).to_text()
            golden = (oracles.DATA / f"{name}_{factor}.txt").read_text(encoding="utf-8")
            if text != golden:
                ours = np.array([[int(v) for v in r.split()] for r in text.splitlines()])
                printed = np.array(oracles.load_matrix(f"{name}_{factor}"))
                cells = np.argwhere(ours != printed).tolist()
                bad.append(f"{name}/{factor} differs at {cells}")
    return not bad, "; ".join(bad) or "9 matrices byte-exact"


def butson_verdicts():
    seen = []
    for name, (phi, k) in EXAMPLES.items():
        M = cocyclic_matrix(_factors(phi)["product"])
        if not (M.k == k and is_butson(M) and is_symmetric(M)):
            return False, f"{name} is not a symmetric BH({M.n},{k})"
        seen.append(f"BH({M.n},{k})")
    return seen == ["BH(8,2)", "BH(16,2)", "BH(9,3)"], ", ".join(seen)


def ac_tables():
    details = []
    for name, (phi, h) in EXAMPLES.items():
        q, m = phi.group.orders[0], phi.group.m
        e = expand(phi, (1,) * m)
        tab = ac_table(e)
        on_l = off_l = 0
        for r, g in enumerate(e.group.elements()):
            v = tab.value(r)
            if all(c % q == 0 for c in g):
                b = sum(c // q for c in g)
                if v != cyc_root(h, -b) * e.group.size:
                    return False, f"{name}: wrong value on L at {g}"
                on_l += 1
            else:
                if not v.is_zero():
                    return False, f"{name}: nonzero off L at {g}"
                off_l += 1
        details.append(f"{name} {on_l}+{off_l}")
    want = ["binary_cube 8+56", "binary_square_4 4+60", "ternary_square_3 9+72"]
    return details == want, ", ".join(details)


def spectra():
    for name, (phi, _) in EXAMPLES.items():
        F, alpha = LISTED_F[name]
        z = (1,) * phi.group.m
        e = expand(phi, z)
        spec = walsh_spectrum(e)
        for r, g in enumerate(e.group.elements()):
            want = alpha if g in F else 0
            if spec.values[r] != want:
                return False, f"{name}: |W{g}|^2 = {spec.values[r]}, expected {want}"
        if spec.support != predicted_support(phi.group.orders, z, phi.h):
            return False, f"{name}: support differs from the prediction"
    index = classify_plateaued(expand(TERNARY_SQUARE_3, (1, 1))).index
    return index == 4, f"ternary plateau index {index}"


def counterexample():
    e = expand(GPBF_NOT_GPHA, (1, 1))
    sep = is_gpbf(e) and not is_gpha(GPBF_NOT_GPHA, (1, 1)) and not obstruction_condition_holds(GPBF_NOT_GPHA)
    examples = all(obstruction_condition_holds(phi) for phi, _ in EXAMPLES.values())
    return sep and examples, f"separation {sep}, examples satisfy the condition {examples}"


def exhaustive_equivalence():
    counts = []
    for s, h in (((2, 2), 2), ((2, 2, 2), 2), ((3, 3), 3)):
        G, m, q = Group(s), len(s), s[0]
        z = (1,) * m
        mu = mu_z(G, z, h)
        F = predicted_support(s, z, h)
        total = hits = 0
        for tail in itertools.product(range(h), repeat=G.size - 1):
            f = ExponentArray(G, h, (0, *tail))
            a = is_gpha(f, z)
            b = is_butson(cocyclic_matrix(cocycle_product(mu, coboundary(f))))
            c = verify_rds(rds_from_expansion(f, z))
            cl = classify_plateaued(expand(f, z))
            d = cl.plateaued and cl.alpha == (h * h * q) ** m and cl.support == F
            if not a == b == c == d:
                return False, f"disagreement at {f.values}: {a} {b} {c} {d}"
            total += 1
            hits += a
        counts.append(f"{total} candidates/{hits} hits")
    return [c.split()[0] for c in counts] == ["8", "128", "6561"], ", ".join(counts)


def bent_nonexistence():
    G = Group((2, 2, 2))
    gbf = sum(is_gbf(ExponentArray(G, 2, v)) for v in itertools.product(range(2), repeat=8))
    member = family_gpba(3)
    ok = gbf == 0 and member.certificate.report.gpha
    return ok, f"{gbf} GBFs among 256 maps; family_gpba(3) gpha={member.certificate.report.gpha}"


def infinite_family():
    for k in range(3, 9):
        member = family_gpba(k)
        c, r = member.certificate, member.certificate.report
        if not (c.matrix.n == 2**k and c.orthogonal and c.symmetric and r.gpbf):
            return False, f"k={k} failed"
    return True, "k=3..8 verified"


def property_suites():
    tests = Path(__file__).parent / "test_properties.py"
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(tests)],
                          capture_output=True, text=True)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()
    return proc.returncode == 0, tail


def feasibility_screens():
    squares = {n for n in range(1, 65) if row_sum_feasibility(n, 2)}
    ok = squares == {i * i for i in range(1, 9)}
    hand = {2: {2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, 3: {3, 6, 9, 12, 15, 18}, 6: set(range(2, 21))}
    for k, want in hand.items():
        ok &= {n for n in range(1, 21) if butson_order_constraint(n, k)} == want
    return ok, f"k=2 feasible orders {sorted(squares)}"


# (number, title, time budget in seconds or None, check)
CRITERIA = [
    (1, "golden matrices", 1.0, golden_matrices),
    (2, "Butson verdicts", 1.0, butson_verdicts),
    (3, "autocorrelation tables", None, ac_tables),
    (4, "spectra", 5.0, spectra),
    (5, "counterexample separation", None, counterexample),
    (6, "exhaustive equivalence", 60.0, exhaustive_equivalence),
    (7, "bent nonexistence", 5.0, bent_nonexistence),
    (8, "infinite family", 60.0, infinite_family),
    (9, "property suites", 120.0, property_suites),
    (10, "feasibility screens", None, feasibility_screens),
]


def evaluate(check, budget):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        ok, detail = False, f"{detail}; took {elapsed:.2f}s, budget {budget:.0f}s"
    return ok, detail, elapsed


def line(number, title, ok, detail, elapsed):
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f}s): {detail}"


@pytest.mark.parametrize("number,title,budget,check", CRITERIA, ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(number, title, budget, check, capsys):
    ok, detail, elapsed = evaluate(check, budget)
    with capsys.disabled():
        print("\n" + line(number, title, ok, detail, elapsed))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, budget, check in CRITERIA:
        ok, detail, elapsed = evaluate(check, budget)
        failed += not ok
        print(line(number, title, ok, detail, elapsed), flush=True)
    sys.exit(1 if failed else 0)
