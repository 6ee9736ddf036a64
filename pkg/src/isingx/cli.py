"""Command-line interface: ``isingx <command> ...``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import cache
from .lattices import SpecError, parse_lattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class BudgetExceeded(Exception):
    pass


class UsageError(Exception):
    pass


# --- serialisation -----------------------------------------------------------

def _canon(v):
    if isinstance(v, Fraction):
        return str(v)
    if v is None or isinstance(v, (str, float, int)):
        return v
    if isinstance(v, dict):
        return {str(k): _canon(u) for k, u in v.items()}
    if isinstance(v, (list, tuple)):
        return [_canon(u) for u in v]
    return str(v)


def _emit(payload: dict, fmt: str, rows=None, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(_canon(payload), out, sort_keys=True, indent=1)
        out.write("\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows or []:
        w.writerow([_canon(c) if not isinstance(c, str) else c for c in row])
    out.write(buf.getvalue())


# --- helpers -----------------------------------------------------------------

def _lattice(text):
    try:
        return parse_lattice(text)
    except SpecError as exc:
        raise UsageError(str(exc)) from exc


def _check_order(order, args):
    if order < 1:
        raise UsageError("order must be at least 1")
    if order > args.max_order:
        raise BudgetExceeded(f"order {order} exceeds --max-order {args.max_order}")


def _free_energy(spec, order, use_cache=True):
    from .expansion import FreeEnergySeries, expand_free_energy

    key = f"order{order}"
    if use_cache:
        hit = cache.load(spec.name, "free_energy", key)
        if hit is not None:
            try:
                return FreeEnergySeries(spec, order, tuple(Fraction(t) for t in hit["terms"]),
                                        Fraction(hit["log_x"]), Fraction(hit["log2"]))
            except (KeyError, TypeError, ValueError, ZeroDivisionError):
                pass
    fes = expand_free_energy(spec, order)
    if use_cache:
        cache.store(spec.name, "free_energy", key,
                    {"terms": [str(t) for t in fes.terms], "log_x": str(fes.log_x_prefactor),
                     "log2": str(fes.log2_constant)})
    return fes


def _finite_lattice(args):
    from .oracle import Boundary, FiniteLattice

    cols = args.cols if args.cols is not None else args.rows
    try:
        lat = FiniteLattice(args.lattice, args.rows, cols, Boundary(args.boundary))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if lat.V > args.max_V:
        raise BudgetExceeded(f"V = {lat.V} exceeds --max-V {args.max_V}")
    return lat


def _counts(lat, args):
    from .oracle import enumerate_counts

    key = f"{lat.rows}x{lat.cols}-{lat.boundary.value}"
    if not args.no_cache:
        hit = cache.load(lat.preset, "dos", key)
        if isinstance(hit, list) and len(hit) == lat.E + 1 and sum(map(int, hit)) == 2 ** lat.V:
            return [int(v) for v in hit]
    counts = enumerate_counts(lat, args.threads)
    if not args.no_cache:
        cache.store(lat.preset, "dos", key, [str(c) for c in counts])
    return counts


# --- commands ----------------------------------------------------------------

def cmd_expand(args):
    spec = _lattice(args.lattice)
    _check_order(args.order, args)
    fes = _free_energy(spec, args.order, not args.no_cache)
    terms = {n: t for n, t in enumerate(fes.terms) if n >= 1}
    payload = {"lattice": spec.name, "order": args.order, "terms": terms,
               "log_x_prefactor": fes.log_x_prefactor, "log2_constant": fes.log2_constant}
    rows = [("n", "a(n)/n!")] + [(n, t) for n, t in terms.items()]
    _emit(payload, args.format, rows)


def _dos_payload(dos):
    from .states import FINITE_SYMBOLIC

    if dos.mode == FINITE_SYMBOLIC:
        entries = {N: p.as_map() for N, p in dos.entries.items()}
    else:
        entries = dict(dos.entries)
    payload = {"lattice": dos.lattice.name, "mode": dos.mode, "order": dos.order,
               "entries": entries}
    if dos.V is not None:
        payload["V"] = dos.V
        payload["horizon"] = dos.horizon
    if "sites_per_cell" in dos.meta:
        payload["sites_per_cell"] = dos.meta["sites_per_cell"]
    return payload


def _dos_rows(dos):
    from .states import FINITE_SYMBOLIC

    if dos.mode == FINITE_SYMBOLIC:
        deg = max((p.degree for p in dos.entries.values()), default=0)
        rows = [("N",) + tuple(f"V^{k}" for k in range(deg + 1))]
        for N, p in sorted(dos.entries.items()):
            rows.append((N,) + tuple(p[k] if k < len(p) else Fraction(0) for k in range(deg + 1)))
        return rows
    return [("N", "g")] + sorted(dos.entries.items())


def _states(args):
    from .states import bulk_states, finite_states

    spec = _lattice(args.lattice)
    _check_order(args.order, args)
    fes = _free_energy(spec, args.order, not args.no_cache)
    if args.finite is None:
        return bulk_states(fes, args.order)
    if args.finite == "symbolic":
        return finite_states(fes, None, args.order)
    if args.V is None:
        raise UsageError("--finite at needs --V")
    if args.V > args.max_V_symbolic:
        raise BudgetExceeded(f"V = {args.V} exceeds the budget {args.max_V_symbolic}")
    return finite_states(fes, args.V, args.order)


def cmd_states(args):
    dos = _states(args)
    _emit(_dos_payload(dos), args.format, _dos_rows(dos))


def cmd_partition(args):
    from .states import SymbolicPartition, partition_polynomial

    if args.finite is None:
        raise UsageError("partition needs --finite symbolic or --finite at --V V")
    dos = _states(args)
    poly = partition_polynomial(dos)
    if isinstance(poly, SymbolicPartition):
        coeffs = {N: p.as_map() for N, p in enumerate(poly.coeffs)}
        payload = {"lattice": dos.lattice.name, "mode": dos.mode, "factor": 2,
                   "log_x_prefactor": poly.log_x_prefactor.as_map(), "coefficients": coeffs}
        rows = [("N", "coefficient")] + [(N, str(p)) for N, p in enumerate(poly.coeffs)]
    else:
        coeffs = dict(enumerate(poly.coeffs))
        payload = {"lattice": dos.lattice.name, "mode": dos.mode, "V": dos.V, "factor": 2,
                   "log_x_prefactor": poly.prefactor_log_x, "coefficients": coeffs}
        rows = [("N", "coefficient")] + list(coeffs.items())
    _emit(payload, args.format, rows)


def cmd_prob(args):
    from .states import energy_distribution

    args.finite = None
    dos = _states(args)
    try:
        probs = energy_distribution(dos, args.x, args.truncation, args.x_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"lattice": dos.lattice.name, "x": args.x, "truncation": args.truncation,
               "approx": True, "P": {N: p for N, p in enumerate(probs)}}
    _emit(payload, args.format, [("N", "P")] + [(N, repr(p)) for N, p in enumerate(probs)])


def cmd_asympt(args):
    from . import asympt

    try:
        if args.x is None:
            value = asympt.asymptotic_states(args.lattice, args.N)
            exact = str(asympt.asymptotic_states_exact(args.lattice, args.N))
            payload = {"lattice": args.lattice, "N": args.N, "approx": True,
                       "g_asymptotic": value, "exact": exact}
        else:
            value = asympt.asymptotic_distribution(args.lattice, args.x, args.N, args.truncation)
            payload = {"lattice": args.lattice, "N": args.N, "x": args.x, "approx": True,
                       "truncation": args.truncation, "P_asymptotic": value}
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(payload, args.format, [("key", "value")] + sorted((k, str(v)) for k, v in payload.items()))


def cmd_oracle(args):
    from . import oracle

    if args.oracle_cmd == "quadrature":
        try:
            res = oracle.quadrature_free_energy(args.lattice, args.x, args.nodes)
        except (ValueError, ArithmeticError) as exc:
            raise UsageError(str(exc)) from exc
        payload = {"lattice": args.lattice, "x": args.x, "nodes": res.nodes, "approx": True,
                   "minus_beta_phi": res.value, "error_estimate": res.error_estimate}
        _emit(payload, args.format, [("key", "value")] + sorted((k, str(v)) for k, v in payload.items()))
        return
    lat = _finite_lattice(args)
    counts = _counts(lat, args)
    if args.oracle_cmd == "enumerate":
        payload = {"lattice": lat.name, "V": lat.V, "E": lat.E,
                   "counts": {r: str(c) for r, c in enumerate(counts)}}
        _emit(payload, args.format, [("r", "count")] + list(enumerate(counts)))
    else:
        try:
            q = oracle.high_temp_coefficients(lat, counts)
        except ArithmeticError as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_FAIL)
        payload = {"lattice": lat.name, "V": lat.V, "E": lat.E, "q": {r: str(v) for r, v in enumerate(q)}}
        _emit(payload, args.format, [("r", "q")] + list(enumerate(q)))


def cmd_verify(args):
    from . import verify

    report = verify.run(args.suite)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, sort_keys=True, indent=1, default=str)
    if args.format == "json":
        json.dump(report, sys.stdout, sort_keys=True, indent=1, default=str)
        sys.stdout.write("\n")
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("id", "name", "passed", "seconds", "detail"))
        for c in report["checks"]:
            w.writerow((c["id"], c["name"], c["passed"], c["seconds"], c["detail"]))
    return EXIT_OK if report["passed"] else EXIT_FAIL


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    common.add_argument("--max-order", type=int, default=40)
    common.add_argument("--max-V", type=int, default=30, help="enumeration budget")
    common.add_argument("--max-V-symbolic", type=int, default=10 ** 6)
    common.add_argument("--no-cache", action="store_true")

    p = argparse.ArgumentParser(prog="isingx",
                                description="Exact low-temperature Ising series and their checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def lattice_arg(sp, presets_only=False):
        sp.add_argument("--lattice", required=True,
                        help="square, triangular, hexagonal, kagome" +
                        ("" if presets_only else " or a Utiyama cell such as I,J,J,J"))

    sp = sub.add_parser("expand", parents=[common], help="free-energy coefficients a(n)/n!")
    lattice_arg(sp)
    sp.add_argument("--order", type=int, required=True)
    sp.set_defaults(func=cmd_expand)

    for name, func, helptext in (("states", cmd_states, "numbers of states"),
                                 ("partition", cmd_partition, "finite partition polynomial")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        lattice_arg(sp)
        sp.add_argument("--order", type=int, required=True)
        sp.add_argument("--finite", choices=("symbolic", "at"), default=None)
        sp.add_argument("--V", type=int, default=None)
        sp.set_defaults(func=func)

    sp = sub.add_parser("prob", parents=[common], help="energy distribution P(N, x)")
    lattice_arg(sp)
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--truncation", type=int, required=True)
    sp.add_argument("--x-max", type=float, default=None)
    sp.set_defaults(func=cmd_prob)

    sp = sub.add_parser("asympt", parents=[common], help="asymptotic g(N) or P(N, x)")
    sp.add_argument("--lattice", required=True, choices=("square", "triangular", "hexagonal"))
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--x", type=float, default=None)
    sp.add_argument("--truncation", type=int, default=200)
    sp.set_defaults(func=cmd_asympt)

    sp = sub.add_parser("oracle", help="independent checks")
    osub = sp.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("enumerate", "hightemp"):
        o = osub.add_parser(name, parents=[common])
        o.add_argument("--lattice", required=True, choices=("square", "triangular", "hexagonal"))
        o.add_argument("--rows", type=int, required=True)
        o.add_argument("--cols", type=int, default=None)
        o.add_argument("--boundary", choices=("periodic", "free"), default="periodic")
        o.set_defaults(func=cmd_oracle)
    o = osub.add_parser("quadrature", parents=[common])
    o.add_argument("--lattice", required=True, choices=("square", "triangular", "hexagonal", "kagome"))
    o.add_argument("--x", type=float, required=True)
    o.add_argument("--nodes", type=int, default=256)
    o.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    sp.add_argument("--suite", choices=("all", "fast"), default="all")
    sp.add_argument("--report", default=None, help="also write the JSON report here")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "prob" and args.order is None:
        args.order = args.truncation
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
