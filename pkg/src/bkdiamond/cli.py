"""Command-line front end.

Exit codes: 0 success, 1 mathematical violation, 2 usage error,
3 undecided at the precision cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import audit as audit_mod
from .errors import PrecisionExhausted
from .qseries import delta_coeffs, delta_quotient
from .rademacher import applicable, error_bound, main_term, round_exact
from .reference import seed_tables
from .turan import multiplicative_check, scan_delta, scans_to_csv

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3
FORMATS = ("json", "csv", "table")


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------


def parse_range(text: str) -> range:
    """'5' or '2..13' (inclusive)."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return range(lo, hi + 1)


def parse_ks(text) -> list[int]:
    ks = []
    for part in str(text).split(","):
        ks.extend(parse_range(part))
    if any(k < 1 for k in ks):
        raise UsageError("k must be a positive integer")
    return ks


def read_config(path: str) -> dict:
    """key = value lines; '#' starts a comment; keys mirror long flags."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, value = (s.strip() for s in line.split("=", 1))
                out[key.replace("-", "_")] = value
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return out


DEFAULTS = {
    "format": "json",
    "output": None,
    "prec_cap": None,
    "k": "1",
    "workers": "1",
    "horizon": "2000",
    "d": "2..13",
    "n": None,
    "from_": "1",
    "to": None,
    "a": None,
    "b": None,
    "set": "all",
    "points": "default",
    "s": None,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--config", default=None, help="key = value file supplying defaults for flags")
    common.add_argument("--prec-cap", dest="prec_cap", default=None,
                        help=f"precision cap in bits (default ${audit_mod.PREC_CAP_ENV} or 4096)")
    common.add_argument("--workers", default=None, help="worker processes (default 1)")

    p = argparse.ArgumentParser(prog="bkdiamond",
                                description="Broken k-diamond partition numbers: exact values, "
                                            "exact-formula checks, Turán scans and certified audits.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", parents=[common], help="exact Delta_k(0..N)")
    c.add_argument("--k", default=None)
    c.add_argument("--n", default=None, help="largest index N")

    v = sub.add_parser("verify", parents=[common], help="exact formula vs exact coefficients")
    v.add_argument("--k", default=None)
    v.add_argument("--from", dest="from_", default=None)
    v.add_argument("--to", default=None)

    s = sub.add_parser("scan", parents=[common], help="minimal Jensen hyperbolicity shifts")
    s.add_argument("--k", default=None, help="k or list, e.g. 1,2")
    s.add_argument("--d", default=None, help="degree or range, e.g. 2..13")
    s.add_argument("--horizon", default=None)

    a = sub.add_parser("audit", parents=[common], help="interval-certified inequality audits")
    a.add_argument("--set", default=None,
                   help="one of " + ", ".join(audit_mod.AUDIT_SETS) + ", or all")
    a.add_argument("--k", default=None, help="k or list (default 1,2)")
    a.add_argument("--points", default=None, choices=("boundary", "default"))
    a.add_argument("--n", default=None, help="explicit n values, comma separated")
    a.add_argument("--s", default=None, help="explicit Bessel arguments, e.g. 231,152*sqrt(7/3)")

    m = sub.add_parser("mult", parents=[common], help="check Delta(a) Delta(b) >= Delta(a+b)")
    m.add_argument("--k", default=None)
    m.add_argument("--a", default=None)
    m.add_argument("--b", default=None)

    t = sub.add_parser("seed-table", parents=[common],
                       help="Markdown comparison of published and computed tables")
    t.add_argument("--horizon", default=None)
    return p


def _resolve(args: argparse.Namespace) -> dict:
    """Command line beats config file beats built-in defaults."""
    file_vals = read_config(args.config) if args.config else {}
    merged = {}
    for key, default in DEFAULTS.items():
        if key == "k" and args.command == "audit":
            default = "1,2"
        val = getattr(args, key, None) if hasattr(args, key) else None
        if val is None:
            val = file_vals.get(key.rstrip("_"), file_vals.get(key, default))
        merged[key] = val
    unknown = set(file_vals) - {k.rstrip("_") for k in DEFAULTS} - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if merged["format"] not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    cap = merged["prec_cap"]
    try:
        merged["prec_cap"] = int(cap) if cap is not None else audit_mod.default_prec_cap()
        merged["workers"] = int(merged["workers"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if merged["prec_cap"] < 64:
        raise UsageError("precision cap must be at least 64 bits")
    if merged["workers"] < 1:
        raise UsageError("workers must be at least 1")
    return merged


def _int(opts: dict, key: str, minimum: int | None = None) -> int:
    val = opts.get(key)
    if val is None:
        raise UsageError(f"--{key.rstrip('_')} is required")
    try:
        out = int(val)
    except ValueError:
        raise UsageError(f"--{key.rstrip('_')} must be an integer, got {val!r}") from None
    if minimum is not None and out < minimum:
        raise UsageError(f"--{key.rstrip('_')} must be at least {minimum}")
    return out


def _single_k(opts: dict) -> int:
    ks = parse_ks(opts["k"])
    if len(ks) != 1:
        raise UsageError("this command takes a single k")
    return ks[0]


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _table(rows: list[list]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(str(c).rjust(w) for c, w in zip(r, widths)) + "\n" for r in rows)


def _render(rows: list[list], fmt: str, json_lines: list[dict]) -> str:
    if fmt == "csv":
        return _csv(rows)
    if fmt == "table":
        return _table(rows)
    return "".join(json.dumps(obj) + "\n" for obj in json_lines)


# -- commands -----------------------------------------------------------------------


def cmd_coeffs(opts: dict) -> tuple[int, str]:
    k = _single_k(opts)
    N = _int(opts, "n", 0)
    series = delta_coeffs(k, N)
    if opts["format"] == "json":
        return EXIT_OK, json.dumps({"k": k, "N": N, "coefficients": [str(c) for c in series]}) + "\n"
    if opts["format"] == "csv":
        return EXIT_OK, series.to_csv()
    return EXIT_OK, _table([["n", "coefficient"]] + [[n, c] for n, c in enumerate(series)])


def verify_row(k: int, n: int, prec_cap: int) -> dict:
    exact = delta_coeffs(k, n)[n]
    row = {"k": k, "n": n, "exact": str(exact)}
    try:
        rv = round_exact(k, n, prec_cap=prec_cap)
    except PrecisionExhausted:
        row.update(verdict="undecided")
        return row
    M = main_term(k, n, rv.prec).M
    B = error_bound(k, n, rv.prec)
    row.update(rounded=str(rv.value), enclosure=rv.enclosure.to_json(), mid_M=str(M.mid()),
               error_bound=B.to_json()["hi"], J=rv.J, prec=rv.prec,
               verdict="match" if rv.value == exact else "mismatch")
    return row


def _verify_job(args) -> dict:
    return verify_row(*args)


def cmd_verify(opts: dict) -> tuple[int, str]:
    k = _single_k(opts)
    lo = _int(opts, "from_", 1)
    hi = _int(opts, "to", lo) if opts["to"] is not None else lo
    verdict = applicable(delta_quotient(k))
    if k not in (1, 2):
        reason = verdict.reason if not verdict else "the main term is defined for k = 1, 2 only"
        witness = f" (witness j={verdict.witness})" if not verdict else ""
        raise UsageError(f"k={k}: exact formula inapplicable{witness}: {reason}")
    jobs = [(k, n, opts["prec_cap"]) for n in range(lo, hi + 1)]
    if opts["workers"] > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(opts["workers"]) as pool:
            rows = list(pool.map(_verify_job, jobs, chunksize=8))
    else:
        rows = [verify_row(*j) for j in jobs]
    table = [["n", "exact", "rounded", "J", "prec", "verdict"]]
    table += [[r["n"], r["exact"], r.get("rounded", ""), r.get("J", ""), r.get("prec", ""), r["verdict"]]
              for r in rows]
    code = EXIT_OK
    if any(r["verdict"] == "mismatch" for r in rows):
        code = EXIT_VIOLATION
    elif any(r["verdict"] == "undecided" for r in rows):
        code = EXIT_UNDECIDED
    return code, _render(table, opts["format"], rows)


def cmd_scan(opts: dict) -> tuple[int, str]:
    ks = parse_ks(opts["k"])
    ds = parse_range(opts["d"])
    if ds[0] < 1:
        raise UsageError("degree d must be at least 1")
    H = _int(opts, "horizon", 0)
    results = [scan_delta(k, d, H, workers=opts["workers"]) for k in ks for d in ds]
    if opts["format"] == "csv":
        return EXIT_OK, scans_to_csv(results)
    table = [["k", "d", "N", "failures", "horizon", "status"]]
    table += [[r.k, r.d, r.N if r.N is not None else "-", len(r.failures), r.horizon, r.status]
              for r in results]
    return EXIT_OK, _render(table, opts["format"], [r.to_dict() for r in results])


def _split(text) -> list[str]:
    return [t.strip() for t in str(text).split(",") if t.strip()]


def cmd_audit(opts: dict) -> tuple[int, str]:
    ks = parse_ks(opts["k"])
    if any(k not in (1, 2) for k in ks):
        raise UsageError("audits are defined for k in {1, 2}")
    name = opts["set"]
    names = [n for n in audit_mod.AUDIT_SETS if n != "tail"] if name == "all" else [name]
    if any(n not in audit_mod.AUDIT_SETS for n in names):
        raise UsageError(f"unknown audit set {name!r}; choose from "
                         + ", ".join(audit_mod.AUDIT_SETS) + ", all")
    ns = None
    if opts["n"]:
        try:
            ns = [int(t) for t in _split(opts["n"])]
        except ValueError:
            raise UsageError("--n takes comma separated integers") from None
        if any(n < 2 for n in ns):
            raise UsageError("audit points need n >= 2")
    ss = None
    if opts["s"]:
        try:
            ss = [audit_mod.SPoint.parse(t) for t in _split(opts["s"])]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    reports = []
    for n in names:
        reports += audit_mod.run_audit_set(n, ks, opts["points"], ns, ss, opts["prec_cap"])
    verdicts = {r.verdict for r in reports}
    code = EXIT_OK
    if audit_mod.CERTIFIED_FALSE in verdicts:
        code = EXIT_VIOLATION
    elif audit_mod.UNDECIDED in verdicts:
        code = EXIT_UNDECIDED
    fmt = opts["format"]
    if fmt == "table":
        return code, audit_mod.format_summary(reports) + "\n"
    rows = [["inequality_id", "point", "verdict", "precision_used", "in_range"]]
    rows += [[r.inequality_id, json.dumps(r.point), r.verdict, r.precision_used, r.in_range]
             for r in reports]
    return code, _render(rows, fmt, [r.to_dict() for r in reports])


def cmd_mult(opts: dict) -> tuple[int, str]:
    k = _single_k(opts)
    A, B = _int(opts, "a", 1), _int(opts, "b", 1)
    bad = multiplicative_check(k, A, B)
    code = EXIT_VIOLATION if bad else EXIT_OK
    if opts["format"] == "json":
        return code, json.dumps({"k": k, "A": A, "B": B, "violations": [list(p) for p in bad]}) + "\n"
    rows = [["a", "b"]] + [list(p) for p in bad]
    return code, _render(rows, opts["format"], [])


def cmd_seed_table(opts: dict) -> tuple[int, str]:
    H = _int(opts, "horizon", 0)
    text, ok = seed_tables(H, workers=opts["workers"])
    return (EXIT_OK if ok else EXIT_VIOLATION), text


COMMANDS = {
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "audit": cmd_audit,
    "mult": cmd_mult,
    "seed-table": cmd_seed_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        opts = _resolve(args)
        code, text = COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"bkdiamond {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if opts["output"]:
        with open(opts["output"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
