"""Command-line front end: ``sigtau <command> ...``.

Exit status is 0 on success, 1 when a verification claim fails and 2 on
usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from mpmath import mp, mpf

from . import arith, benefit, primes, superchampion, verify
from .errors import DomainError, RangeError, TieError
from .realx import fmt

SUPERCHAMPION_COLUMNS = ["index", "n", "factorization", "tau", "log_tau", "sigma_over_n", "eps_hi", "eps_lo"]
BENEFIT_COLUMNS = ["n_over_M1", "tau_ratio", "ben", "f1"]
# integers with more digits than this are shown only in factored form
MAX_N_DIGITS = 40


@dataclass
class Config:
    sieve_limit: int = primes.DEFAULT_LIMIT
    small_scan_limit: int = arith.SMALL_SCAN_LIMIT
    heavy: bool = False
    precision_digits: int = 30
    output_format: str = "text"
    output_path: Path | None = None

    def __post_init__(self):
        if self.heavy:
            self.sieve_limit = max(self.sieve_limit, primes.HEAVY_LIMIT)

    def apply(self) -> None:
        os.environ["SIGTAU_SIEVE_LIMIT"] = str(self.sieve_limit)
        primes.table.cache_clear()
        superchampion.sequence_to_prime.cache_clear()
        arith.SMALL_SCAN_LIMIT = self.small_scan_limit
        if self.precision_digits > mp.dps:
            mp.dps = self.precision_digits


class _UsageError(Exception):
    pass


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(header: list[str], rows: list[list], **meta) -> str:
    doc = dict(meta)
    doc["rows"] = [dict(zip(header, r)) for r in rows]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _table_text(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _emit(cfg: Config, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output_path:
        Path(cfg.output_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands

def cmd_superchampion_list(args, cfg: Config) -> int:
    eps_min = mpf(args.eps_min)
    if eps_min <= 0:
        raise _UsageError("--eps-min must be positive")
    seq = superchampion.generate_sequence(eps_min)
    rows = []
    for rec in seq:
        n = ""
        if rec.stats.log_n < MAX_N_DIGITS * mp.log(10):
            n = str(rec.n.value())
        text_mode = cfg.output_format == "text"
        digits = 3 if text_mode else 20
        rows.append([
            rec.index,
            n,
            rec.render(),
            rec.tau(),
            fmt(rec.stats.log_tau, digits + 1),
            _fixed(rec.stats.sigma_over_n, 3) if text_mode else fmt(rec.stats.sigma_over_n, digits),
            "inf" if rec.index == 0 else _fixed(rec.eps_hi, 3) if text_mode else fmt(rec.eps_hi, digits),
            "" if rec.eps_lo is None else _fixed(rec.eps_lo, 3) if text_mode else fmt(rec.eps_lo, digits),
        ])
    if cfg.output_format == "csv":
        _emit(cfg, _csv_text(SUPERCHAMPION_COLUMNS, rows))
    elif cfg.output_format == "json":
        _emit(cfg, _json_text(SUPERCHAMPION_COLUMNS, rows, eps_min=fmt(eps_min, 20), count=len(rows)))
    else:
        _emit(cfg, _table_text(SUPERCHAMPION_COLUMNS, rows))
    return 0


def _fixed(x, d: int) -> str:
    return f"{float(x):.{d}f}"


def _benefit_rows(hits, digits: int = 20) -> list[list]:
    M1 = arith.parse(verify.M1_TEXT)
    rows = []
    for h in hits:
        ratio, t = benefit.relative_to(h, M1)
        rows.append([ratio, str(t), fmt(h.ben, digits), fmt(h.f1, digits)])
    return rows


def cmd_benefit_enum(args, cfg: Config) -> int:
    seq = superchampion.sequence_to_prime(benefit.F1_LAST_PRIME)
    if not 1 <= args.eps_index < len(seq):
        raise _UsageError(f"--eps-index must lie in 1..{len(seq) - 1}")
    q = benefit.BenefitQuery.at_index(seq, args.eps_index, mpf(args.budget))
    hits = benefit.enumerate_budget(q)
    rows = _benefit_rows(hits)
    if cfg.output_format == "json":
        _emit(cfg, _json_text(BENEFIT_COLUMNS, rows, eps_index=args.eps_index, eps=fmt(q.eps, 20),
                              budget=fmt(q.budget, 20), reference=str(q.reference), count=len(rows)))
    elif cfg.output_format == "csv":
        _emit(cfg, _csv_text(BENEFIT_COLUMNS, rows))
    else:
        _emit(cfg, _table_text(BENEFIT_COLUMNS, _benefit_rows(hits, 7)) + f"{len(rows)} numbers\n")
    return 0


def cmd_benefit_census(args, cfg: Config) -> int:
    res = benefit.nu_census(args.threshold, keep_hits=args.list)
    windows = f"{res.windows[0]}..{res.windows[-1]}" if res.windows else ""
    if cfg.output_format == "json":
        rows = _benefit_rows(res.hits) if args.list else []
        _emit(cfg, _json_text(BENEFIT_COLUMNS, rows, threshold=args.threshold, count=res.count, windows=windows))
    elif cfg.output_format == "csv":
        if args.list:
            _emit(cfg, _csv_text(BENEFIT_COLUMNS, _benefit_rows(res.hits)))
        else:
            _emit(cfg, _csv_text(["threshold", "count", "windows"], [[args.threshold, res.count, windows]]))
    else:
        text = f"nu({args.threshold}) = {res.count}  (eps_i windows {windows})\n"
        if args.list:
            text += _table_text(BENEFIT_COLUMNS, _benefit_rows(res.hits, 7))
        _emit(cfg, text)
    return 0


def cmd_verify(args, cfg: Config) -> int:
    claims = verify.run([args.which], heavy=cfg.heavy)
    fmt_ = cfg.output_format if cfg.output_format in ("json", "text") else "text"
    text = verify.report_json(claims) if fmt_ == "json" else verify.report_text(claims)
    if args.report:
        Path(args.report).write_text(verify.report_json(claims), encoding="utf-8")
    _emit(cfg, text)
    return 0 if verify.all_passed(claims) else 1


def cmd_hull_export(args, cfg: Config) -> int:
    if args.limit < 1:
        raise _UsageError("--limit must be >= 1")
    res = verify.export_hull(args.limit, args.out_dir)
    _emit(cfg, (
        f"points: {res.points_path} ({res.n_points} rows)\n"
        f"vertices: {res.vertices_path} ({len(res.vertices)} rows)\n"
        f"max excess over hull: {res.max_excess:.3e}\n"
    ))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=int, default=argparse.SUPPRESS,
                        help=f"prime table limit (default {primes.DEFAULT_LIMIT}, env SIGTAU_SIEVE_LIMIT)")
    common.add_argument("--small-scan-limit", type=int, default=argparse.SUPPRESS,
                        help=f"bound for exact small-n factorization (default {arith.SMALL_SCAN_LIMIT})")
    common.add_argument("--heavy", action="store_true", default=argparse.SUPPRESS,
                        help="extend primes to 10^8+100 for the heaviest constants")
    common.add_argument("--precision-digits", type=int, default=argparse.SUPPRESS,
                        help="minimum decimal digits of working precision (default 30; 38 are always carried)")
    common.add_argument("--format", dest="output_format", choices=["text", "csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", type=Path, default=argparse.SUPPRESS, help="write to a file instead of stdout")

    parser = argparse.ArgumentParser(prog="sigtau", parents=[common],
                                     description="(sigma, tau)-superchampions and extremal divisor-function bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("superchampion", help="superchampion numbers").add_subparsers(dest="action", required=True)
    p = sc.add_parser("list", parents=[common], help="list N^(0), N^(1), ... down to a parameter")
    p.add_argument("--eps-min", required=True, help="smallest critical parameter to include")
    p.set_defaults(func=cmd_superchampion_list)

    bn = sub.add_parser("benefit", help="benefit enumeration").add_subparsers(dest="action", required=True)
    p = bn.add_parser("enum", parents=[common], help="all n within a benefit budget at eps_i")
    p.add_argument("--eps-index", type=int, required=True)
    p.add_argument("--budget", required=True)
    p.set_defaults(func=cmd_benefit_enum)
    p = bn.add_parser("census", parents=[common], help="count n >= 2 with f1(n) >= x")
    p.add_argument("--threshold", required=True)
    p.add_argument("--list", action="store_true", help="also list the numbers found")
    p.set_defaults(func=cmd_benefit_census)

    p = sub.add_parser("verify", parents=[common], help="run reproduction checks")
    p.add_argument("which", choices=[*verify.PIPELINES, "all"])
    p.add_argument("--report", type=Path, help="also write a JSON report here")
    p.set_defaults(func=cmd_verify)

    hl = sub.add_parser("hull", help="(log tau, log sigma/n) point cloud").add_subparsers(dest="action", required=True)
    p = hl.add_parser("export", parents=[common], help="write points and hull vertices as CSV")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.set_defaults(func=cmd_hull_export)
    return parser


def config_from(args) -> Config:
    return Config(
        sieve_limit=getattr(args, "sieve_limit", primes.DEFAULT_LIMIT),
        small_scan_limit=getattr(args, "small_scan_limit", arith.SMALL_SCAN_LIMIT),
        heavy=getattr(args, "heavy", False),
        precision_digits=getattr(args, "precision_digits", 30),
        output_format=getattr(args, "output_format", "text"),
        output_path=getattr(args, "output", None),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from(args)
    if "sieve_limit" in args or cfg.heavy:
        cfg.apply()
    else:
        arith.SMALL_SCAN_LIMIT = cfg.small_scan_limit
    try:
        return args.func(args, cfg)
    except (_UsageError, DomainError, RangeError, TieError, ValueError) as exc:
        print(f"sigtau: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
