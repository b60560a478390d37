"""Command-line front end.

Exit status: 0 when the property holds or the command succeeds, 1 when the
property fails, 2 for usage or data errors, 3 for an internal consistency
failure (a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .arrays import ExponentArray, ac_table, expand
from .catalog import EXAMPLES
from .cyclotomic import encode_exact
from .cocycles import (
    butson_order_constraint,
    coboundary,
    cocycle_product,
    cocyclic_matrix,
    mu_z,
    row_sum_feasibility,
)
from .designs import equivalence_harness, extension_rds, ext_rds_check, rds_from_expansion, splitting_rds, verify_rds
from .errors import BudgetExceededError, GphaError, InvariantViolation
from .forge import SEARCH_BUDGET, Certificate, exhaustive_search, family_gpba, kronecker_compose
from .spectra import classify_plateaued, walsh_spectrum

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _load_array(path: str) -> ExponentArray:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return ExponentArray.from_json(text)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_certificate(path: str) -> Certificate:
    try:
        return Certificate.from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from exc


def _parse_type(text: str | None, phi: ExponentArray) -> tuple[int, ...]:
    if text is None:
        return (1,) * phi.group.m
    z = tuple(int(c) for c in text.replace(",", "") if c in "01")
    if len(z) != len(text.replace(",", "")) or len(z) != phi.group.m:
        raise _UsageError(f"--type must be {phi.group.m} binary digits, got {text!r}")
    return z


def _parse_orders(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"orders must be comma-separated integers, got {text!r}") from exc


def _emit(obj: dict | str) -> None:
    sys.stdout.write(obj if isinstance(obj, str) else json.dumps(obj) + "\n")


def cmd_verify(args) -> int:
    phi = _load_array(args.array)
    report = equivalence_harness(phi, _parse_type(args.type, phi))
    _emit(report.to_text() if args.report == "text" else report.to_json() + "\n")
    return EXIT_OK if report.gpha else EXIT_FAIL


def cmd_expand(args) -> int:
    phi = _load_array(args.array)
    _emit(expand(phi, _parse_type(args.type, phi)).to_json())
    return EXIT_OK


def cmd_matrix(args) -> int:
    phi = _load_array(args.array)
    z = _parse_type(args.type, phi)
    mu = mu_z(phi.group, z, phi.h)
    cob = coboundary(phi)
    c = {"mu": mu, "coboundary": cob, "product": cocycle_product(mu, cob)}[args.factor]
    M = cocyclic_matrix(c)
    _emit(M.to_text() if args.format == "text" else M.to_json())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    f = _load_array(args.array)
    if args.type is not None:
        f = expand(f, _parse_type(args.type, f))
    table = ac_table(f)
    spec = walsh_spectrum(f)
    cls = classify_plateaued(f)
    _emit({
        "autocorrelation": {
            "order": table.order,
            "coeffs": table.coeffs.tolist(),
            "zero_count": table.zero_count(),
            "norms_squared": [encode_exact(v) for v in table.norms_squared()],
        },
        "spectrum": spec.to_json(),
        "plateaued": cls.to_json(f.group),
    })
    return EXIT_OK


def cmd_rds(args) -> int:
    phi = _load_array(args.array)
    if args.mode == "quotient":
        r = rds_from_expansion(phi, _parse_type(args.type, phi))
        ok = verify_rds(r)
    elif args.mode == "splitting":
        r = splitting_rds(phi)
        ok = verify_rds(r)
    else:
        psi = cocycle_product(mu_z(phi.group, _parse_type(args.type, phi), phi.h), coboundary(phi))
        ok = ext_rds_check(psi)
        r = extension_rds(psi)
    out = r.to_json(verified=ok)
    out["notes"] = list(r.notes)
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    s = _parse_orders(args.s)
    z = tuple(int(c) for c in args.type) if args.type else (1,) * len(s)
    results = exhaustive_search(s, args.h, z, budget=args.budget, workers=args.workers,
                                filter=args.filter)
    for res in results:
        _emit(res.dumps() + "\n")
    return EXIT_OK


def cmd_compose(args) -> int:
    a, b = _load_certificate(args.first), _load_certificate(args.second)
    _emit(kronecker_compose(a, b).dumps() + "\n")
    return EXIT_OK


def cmd_family(args) -> int:
    member = family_gpba(args.k)
    _emit(member.certificate.dumps() + "\n")
    return EXIT_OK


def cmd_feasibility(args) -> int:
    n, k = args.n, args.k
    if not butson_order_constraint(n, k):
        _emit(f"infeasible (n={n} is not a sum of primes dividing k={k})\n")
        return EXIT_FAIL
    try:
        rows_ok = row_sum_feasibility(n, k)
    except BudgetExceededError as exc:
        _emit(f"feasible (order constraint only; row-sum screen skipped: {exc})\n")
        return EXIT_OK
    if not rows_ok:
        if k == 2:
            _emit("infeasible (k=2 requires square n)\n")
        else:
            _emit(f"infeasible (no row sum with |S|^2 = {n} over k={k})\n")
        return EXIT_FAIL
    _emit("feasible\n")
    return EXIT_OK


def cmd_example(args) -> int:
    _emit(EXAMPLES[args.name].to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpha", description="Generalized perfect arrays toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def array_cmd(name: str, help: str, func):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("array", help="array JSON file ({h, s, values}); - reads stdin")
        sp.add_argument("--type", help="expansion type as binary digits, default all ones")
        sp.set_defaults(func=func)
        return sp

    sp = array_cmd("verify", "run every characterization and cross-check them", cmd_verify)
    sp.add_argument("--report", choices=("json", "text"), default="text")
    array_cmd("expand", "emit the expanded array", cmd_expand)
    sp = array_cmd("matrix", "emit a cocyclic matrix in logarithmic form", cmd_matrix)
    sp.add_argument("--factor", choices=("mu", "coboundary", "product"), default="product")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    array_cmd("spectrum", "autocorrelation, Walsh spectrum and plateau class "
              "(of the expansion when --type is given)", cmd_spectrum)
    sp = array_cmd("rds", "construct and verify a relative difference set", cmd_rds)
    sp.add_argument("--mode", choices=("quotient", "splitting", "extension"), default="quotient")

    sp = sub.add_parser("search", help="exhaustive search over normalized arrays")
    sp.add_argument("--s", required=True, help="group orders, comma-separated, e.g. 3,3")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--type", help="expansion type as binary digits, default all ones")
    sp.add_argument("--budget", type=int, default=SEARCH_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--filter", choices=("auto", "butson", "ac"), default="auto")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("compose", help="Kronecker composition of two certificate files")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("family", help="certificate for the binary family member on Z_2^k")
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("feasibility", help="necessary conditions for a BH(n, k)")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_feasibility)

    sp = sub.add_parser("example", help="print a built-in array as JSON")
    sp.add_argument("name", choices=sorted(EXAMPLES))
    sp.set_defaults(func=cmd_example)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"gpha: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (_UsageError, GphaError) as exc:
        print(f"gpha: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
