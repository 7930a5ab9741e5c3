"""Command-line surface for the experiments.

Every subcommand emits a table (CSV or a JSON envelope validating against
cli_output.schema.json) and is deterministic for a fixed configuration:
identical flags and seed give byte-identical output.  Subcommands with a
pass/fail band exit 2 when the band check fails, 1 on usage or domain
errors, 0 otherwise.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import arith, dickman, experiments, models, primes, tolerances


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract here is 1 for usage errors
    def error(self, message):
        raise UsageError(message)


def _parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise UsageError(f"--n expects a comma-separated integer list, got {text!r}")
    if not values:
        raise UsageError("--n list is empty")
    return values


def _default_seed() -> int:
    env = os.environ.get("DICKMAN_LAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"DICKMAN_LAB_SEED must be an integer, got {env!r}")
    return tolerances.DEFAULT_SEED


def _parse_subset_spec(text: str):
    if text == "all":
        return primes.All()
    if text.startswith("residue:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("--subset residue form is residue:L:J")
        try:
            return primes.Residue(modulus=int(parts[1]), residue=int(parts[2]))
        except ValueError:
            raise UsageError("--subset residue:L:J needs integer L and J")
    if text.startswith("file:"):
        path = text[5:]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                body = fh.read()
        except OSError as exc:
            raise UsageError(f"--subset file: cannot read {path}: {exc}")
        entries = [int(tok) for tok in body.replace(",", " ").split()]
        if not entries:
            raise UsageError(f"--subset file: {path} holds no primes")
        return primes.Explicit(primes=tuple(entries))
    raise UsageError(f"--subset must be all, residue:L:J or file:PATH, got {text!r}")


def _build_subset(spec, limit: int, theta):
    if isinstance(spec, primes.Explicit):
        limit = max(limit, max(spec.primes))
        if theta is None:
            raise UsageError("explicit (file:) subsets need --theta")
        return primes.build_subset(primes.sieve_primes(limit), spec, theta=theta)
    if theta is not None:
        raise UsageError("--theta only applies to file: subsets")
    return primes.build_subset(primes.sieve_primes(limit), spec)


def _subset_with_count(spec, theta, count: int):
    """Grow the sieve until the subset holds at least ``count`` primes."""
    limit = 1000
    while True:
        subset = _build_subset(spec, limit, theta)
        if subset.primes.size >= count:
            return subset
        if limit > 10**9:
            raise UsageError(f"cannot find {count} subset primes below 1e9")
        limit *= 4


# Exact rationals wider than this (in bits) serialize as floats: the exact
# form of a 1e4-term harmonic sum has thousands of digits and no reader.
_FRACTION_BIT_CAP = 256


def _cell(value):
    if isinstance(value, Fraction):
        if max(value.numerator.bit_length(), value.denominator.bit_length()) > _FRACTION_BIT_CAP:
            return float(value)
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def _write_output(args, command: str, params: dict, rows: list[dict], checks: list[dict]) -> None:
    rows = [{key: _cell(val) for key, val in row.items()} for row in rows]
    if args.format == "json":
        doc = {"command": command, "params": params, "rows": rows}
        if checks:
            doc["checks"] = checks
        text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(
                    [_csv_text(v) for v in row.values()]
                )
        text = buf.getvalue()
        for check in checks:
            line = f"check {check['name']}: {'pass' if check['passed'] else 'FAIL'}"
            print(line, file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _exact_mode(text: str):
    return {"auto": None, "on": True, "off": False}[text]


def _add_common(sub, *, subset=False, fmt=True):
    if subset:
        sub.add_argument("--subset", default="all", help="all | residue:L:J | file:PATH")
        sub.add_argument("--theta", type=float, default=None,
                         help="declared density, required for file: subsets")
    if fmt:
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
        sub.add_argument("--out", default=None, help="output path (default stdout)")
        sub.add_argument("--no-check", action="store_true",
                         help="report bands without gating the exit status")


def build_parser() -> _Parser:
    parser = _Parser(prog="dickman-lab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("primes", help="list subset primes or density diagnostics")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--density", action="store_true", help="emit density rows at --n")
    p.add_argument("--n", type=_parse_int_list, default=None)
    _add_common(p, subset=True)

    d = subs.add_parser("dickman", help="generalized Dickman tables and constants")
    dsubs = d.add_subparsers(dest="dickman_command", required=True)
    dt = dsubs.add_parser("table", help="x, rho, density, cdf on the grid")
    dt.add_argument("--theta", type=float, required=True)
    dt.add_argument("--h", type=float, default=1e-3)
    dt.add_argument("--xmax", type=float, default=20.0)
    _add_common(dt)
    dc = dsubs.add_parser("constant", help="e^(gamma theta) Gamma(theta+1)")
    dc.add_argument("--theta", type=float, default=None,
                    help="single theta (default: a grid over (0, 1])")
    _add_common(dc)

    m = subs.add_parser("mertens", help="Mertens-type ratio tables")
    msubs = m.add_subparsers(dest="mertens_command", required=True)
    mr = msubs.add_parser("ratio", help="Euler product over bounded harmonic sum")
    mr.add_argument("--variant", choices=("classic", "thm1i", "thm1ii", "thm3"),
                    default=None, help="default: classic for all, thm1i otherwise")
    mr.add_argument("--k", type=int, default=None)
    mr.add_argument("--n", type=_parse_int_list, required=True)
    mr.add_argument("--cut", choices=("magnitude", "count"), default="magnitude")
    mr.add_argument("--exact", choices=("auto", "on", "off"), default="auto")
    _add_common(mr, subset=True)

    i = subs.add_parser("identity", help="exact totient-weighted identity")
    i.add_argument("--primes", type=_parse_int_list, required=True)
    i.add_argument("--k", type=int, required=True)
    _add_common(i)

    pr = subs.add_parser("phi-ratio", help="totient harmonic sums over log N")
    pr.add_argument("--n", type=_parse_int_list, required=True)
    pr.add_argument("--k", type=int, default=2)
    pr.add_argument("--companion", action="store_true",
                    help="unrestricted sum 1/phi(n) against 1.94 log N")
    _add_common(pr)

    w = subs.add_parser("williams", help="restricted Euler product slope fit")
    w.add_argument("--l", type=int, required=True)
    w.add_argument("--j", type=int, required=True)
    w.add_argument("--n", type=_parse_int_list,
                   default=[1000, 10**4, 10**5, 10**6])
    _add_common(w)

    s = subs.add_parser("sample", help="draw random integers, log scale")
    s.add_argument("--model", type=int, choices=(1, 2, 3), default=1)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--n", type=int, required=True, help="number of subset primes")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=None)
    _add_common(s, subset=True)

    ks = subs.add_parser("ks", help="KS distance against the scaled Dickman law")
    ks.add_argument("--model", type=int, choices=(1, 2, 3), default=1)
    ks.add_argument("--k", type=int, default=None)
    ks.add_argument("--n", type=int, required=True, help="number of subset primes")
    ks.add_argument("--samples", type=int, default=10**4)
    ks.add_argument("--seed", type=int, default=None)
    ks.add_argument("--h", type=float, default=1e-3)
    ks.add_argument("--xmax", type=float, default=20.0)
    _add_common(ks, subset=True)

    return parser


def _cmd_primes(args):
    spec = _parse_subset_spec(args.subset)
    subset = _build_subset(spec, args.limit, args.theta)
    params = {"limit": args.limit, "subset": args.subset, "theta": subset.theta}
    if args.density:
        n_list = args.n or [args.limit]
        rows = []
        for n in n_list:
            rows.append({
                "N": n,
                "subset_count": int(np.searchsorted(subset.primes, n, side="right")),
                "prime_count": subset.table.count_upto(n),
                "density": primes.empirical_density(subset, n),
                "theta": subset.theta,
            })
    else:
        rows = [{"j": idx + 1, "p": int(p)} for idx, p in enumerate(subset.primes)]
    return "primes", params, rows, []


def _cmd_dickman(args):
    if args.dickman_command == "table":
        sol = dickman.solve_rho(args.theta, args.xmax, args.h)
        params = {"theta": args.theta, "h": sol.h, "xmax": sol.x_max}
        return "dickman table", params, list(dickman.table_rows(sol)), []
    thetas = [args.theta] if args.theta is not None else [t / 20 for t in range(1, 21)]
    rows = [{"theta": t, "constant": dickman.mertens_constant(t)} for t in thetas]
    return "dickman constant", {"theta": args.theta}, rows, []


def _cmd_mertens_ratio(args):
    spec = _parse_subset_spec(args.subset)
    variant = args.variant or ("classic" if isinstance(spec, primes.All) else "thm1i")
    subset = _build_subset(spec, max(args.n), args.theta)
    table = experiments.mertens_ratio_table(
        subset, variant, args.n, k=args.k, cut=args.cut, exact=_exact_mode(args.exact)
    )
    rows = [vars(r) for r in table]
    band = (tolerances.CLASSIC_MERTENS_REL if isinstance(spec, primes.All)
            else tolerances.SUBSET_RATIO_REL)
    last = table[-1]
    checks = [{
        "name": "ratio-within-band",
        "passed": last.gap <= band * last.target,
        "value": last.ratio,
        "target": last.target,
        "band": band,
    }]
    if len(table) > 1:
        checks.append({
            "name": "gap-shrinks",
            "passed": table[-1].gap < table[0].gap,
            "value": table[-1].gap,
            "target": table[0].gap,
            "band": None,
        })
    params = {"subset": args.subset, "variant": variant, "k": args.k,
              "n": args.n, "cut": args.cut, "exact": args.exact}
    return "mertens ratio", params, rows, checks


def _cmd_identity(args):
    result = experiments.identity_check(args.primes, args.k)
    rows = [{"lhs": result.lhs, "rhs": result.rhs, "equal": result.equal}]
    checks = [{"name": "exact-identity", "passed": result.equal,
               "value": None, "target": None, "band": None}]
    return "identity", {"primes": args.primes, "k": args.k}, rows, checks


def _cmd_phi_ratio(args):
    rows, checks = [], []
    for n in args.n:
        row = experiments.totient_harmonic_ratio(n, args.k, companion=args.companion)
        rows.append(vars(row))
        checks.append({
            "name": f"ratio-within-band-N{n}",
            "passed": row.gap <= tolerances.PHI_RATIO_REL * row.target,
            "value": row.ratio,
            "target": row.target,
            "band": tolerances.PHI_RATIO_REL,
        })
    params = {"n": args.n, "k": args.k, "companion": args.companion}
    return "phi-ratio", params, rows, checks


def _cmd_williams(args):
    fit = experiments.williams_slope(args.l, args.j, args.n)
    rows = [{"N": n, "log_S": y, "loglogN": math.log(math.log(n))}
            for n, y in fit.points]
    checks = [{
        "name": "slope-within-band",
        "passed": abs(fit.slope - fit.target) <= tolerances.WILLIAMS_SLOPE_ABS,
        "value": fit.slope,
        "target": fit.target,
        "band": tolerances.WILLIAMS_SLOPE_ABS,
    }]
    params = {"l": args.l, "j": args.j, "n": args.n,
              "slope": fit.slope, "intercept": fit.intercept, "target": fit.target}
    return "williams", params, rows, checks


def _make_model(args):
    spec = _parse_subset_spec(args.subset)
    subset = _subset_with_count(spec, args.theta, args.n)
    return models.make_model(subset, args.n, args.model, k=args.k)


def _cmd_sample(args):
    seed = args.seed if args.seed is not None else _default_seed()
    model = _make_model(args)
    logs = models.sample_logs(model, seed, args.samples)
    elog = models.expected_log(model)
    rows = [{"draw_index": i, "log_value": float(v), "normalized_log": float(v) / elog}
            for i, v in enumerate(logs)]
    params = {"subset": args.subset, "model": args.model, "k": args.k,
              "n": args.n, "samples": args.samples, "seed": seed}
    return "sample", params, rows, []


def _cmd_ks(args):
    seed = args.seed if args.seed is not None else _default_seed()
    model = _make_model(args)
    sol = dickman.solve_rho(model.subset.theta, args.xmax, args.h)
    report = experiments.ks_test(model, sol, args.samples, seed)
    rows = [vars(report)]
    band = tolerances.KS_BAND[args.model]
    checks = [{"name": "ks-below-band", "passed": report.ks_statistic < band,
               "value": report.ks_statistic, "target": None, "band": band}]
    params = {"subset": args.subset, "model": args.model, "k": args.k,
              "n": args.n, "samples": args.samples, "seed": seed,
              "h": args.h, "xmax": args.xmax}
    return "ks", params, rows, checks


def run(argv) -> int:
    """Parse argv, run the mapped experiment, write output, return exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "primes":
            out = _cmd_primes(args)
        elif args.command == "dickman":
            out = _cmd_dickman(args)
        elif args.command == "mertens":
            out = _cmd_mertens_ratio(args)
        elif args.command == "identity":
            out = _cmd_identity(args)
        elif args.command == "phi-ratio":
            out = _cmd_phi_ratio(args)
        elif args.command == "williams":
            out = _cmd_williams(args)
        elif args.command == "sample":
            out = _cmd_sample(args)
        else:
            out = _cmd_ks(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    command, params, rows, checks = out
    _write_output(args, command, params, rows, checks)
    if checks and not args.no_check and not all(c["passed"] for c in checks):
        return 2
    return 0


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
