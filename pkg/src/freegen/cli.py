"""Command-line front end.

    freegen expand    --n-generators 2 --order 8
    freegen moments   --n-generators 2 --max-order 6
    freegen cumulants --n-generators 2 --max-order 8
    freegen nc        --size 6 --block-type 2,4 --mobius
    freegen verify    --n-generators 2 --max-order 10

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
limit.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import serialize
from .cumulants import choose_method, r_transform_G
from .errors import FreegenError, OracleBudgetError, SizeLimitError
from .nc import (
    BlockTypeMultiset,
    enumerate_by_block_type,
    enumerate_even_nc,
    enumerate_nc,
    lattice_limit,
    mobius_to_top,
)
from .oracle import DEFAULT_ORACLE_BUDGET
from .recurrence import expand_power, moment_series
from .series import GroupParameter
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class RunConfig:
    n_generators: int = 2
    max_order: int = 10
    fmt: str = "json"
    lattice_limit: int = 12
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    out: str | None = None
    threads: int = 1

    def __post_init__(self):
        GroupParameter(self.n_generators)
        if self.max_order < 1:
            raise ValueError("--max-order must be >= 1")
        if self.fmt not in serialize.FORMATS:
            raise ValueError(f"--format must be one of {', '.join(serialize.FORMATS)}")
        for name in ("lattice_limit", "oracle_budget", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")


def _positive_ints(text: str) -> list[int]:
    try:
        parts = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not parts:
        raise argparse.ArgumentTypeError("block type must not be empty")
    return parts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-generators", type=int, default=2, metavar="N",
                        help="number of free generators (default 2)")
    common.add_argument("--format", dest="fmt", choices=serialize.FORMATS, default=None)
    common.add_argument("--out", default=None, help="write to this path instead of stdout")
    common.add_argument("--lattice-limit", type=int, default=None,
                        help="largest n for NC(n) enumeration "
                             "(default $FREEGEN_LATTICE_LIMIT or 12)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for lattice sums; output is identical")
    common.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET,
                        help="max reduced words tracked by the exhaustive oracle")

    parser = argparse.ArgumentParser(
        prog="freegen",
        description="Moments and R-transform of the generating operator of L(F_N).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand G^n in the sphere basis")
    p.add_argument("--order", type=int, required=True)

    for name, text in (("moments", "moment series M_G"), ("cumulants", "R-transform R_G")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--max-order", type=int, default=10)

    p = sub.add_parser("nc", parents=[common], help="list noncrossing partitions")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--even", action="store_true", help="only partitions with even blocks")
    p.add_argument("--block-type", type=_positive_ints, default=None,
                   help="comma-separated block sizes, e.g. 2,4")
    p.add_argument("--mobius", action="store_true", help="append mu(pi, 1_n) to each line")

    p = sub.add_parser("verify", parents=[common], help="run the oracle cross-check matrix")
    p.add_argument("--max-order", type=int, default=10)
    return parser


_DEFAULT_FORMAT = {"nc": "plain", "verify": "plain"}


def _config(args, parser) -> RunConfig:
    try:
        limit = args.lattice_limit if args.lattice_limit is not None else lattice_limit()
        return RunConfig(
            n_generators=args.n_generators,
            max_order=getattr(args, "max_order", 10),
            fmt=args.fmt or _DEFAULT_FORMAT.get(args.command, "json"),
            lattice_limit=limit,
            oracle_budget=args.oracle_budget,
            out=args.out,
            threads=args.threads,
        )
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))


def _expand(cfg: RunConfig, args, parser) -> tuple[str, int]:
    if args.order < 0:
        parser.error("--order must be >= 0")
    e = expand_power(cfg.n_generators, args.order)
    if cfg.fmt == "csv":
        return serialize.expansion_csv(e), EXIT_OK
    if cfg.fmt == "plain":
        return serialize.expansion_plain(e), EXIT_OK
    payload = serialize.envelope(
        cfg.n_generators, "expansion", "recurrence", serialize.expansion_to_data(e)
    )
    return serialize.dumps(payload), EXIT_OK


def _series_output(cfg: RunConfig, kind: str, method: str, series) -> str:
    if cfg.fmt == "csv":
        return serialize.series_csv(series)
    if cfg.fmt == "plain":
        return serialize.series_plain(series)
    return serialize.dumps(
        serialize.envelope(cfg.n_generators, kind, method, serialize.series_to_data(series))
    )


def _moments(cfg: RunConfig, args, parser) -> tuple[str, int]:
    series = moment_series(cfg.n_generators, cfg.max_order)
    return _series_output(cfg, "moments", "recurrence", series), EXIT_OK


def _cumulants(cfg: RunConfig, args, parser) -> tuple[str, int]:
    method = choose_method(cfg.max_order, cfg.lattice_limit)
    series = r_transform_G(
        cfg.n_generators, cfg.max_order, method, cfg.lattice_limit, cfg.threads
    )
    return _series_output(cfg, "cumulants", method, series), EXIT_OK


def _nc(cfg: RunConfig, args, parser) -> tuple[str, int]:
    n = args.size
    if n < 1:
        parser.error("--size must be >= 1")
    if args.even and n % 2:
        parser.error("--even needs an even --size")
    if args.block_type is not None:
        try:
            block_type = BlockTypeMultiset(tuple(args.block_type))
        except ValueError as exc:
            parser.error(str(exc))
        if block_type.total != n:
            parser.error(f"--block-type sums to {block_type.total}, not --size {n}")
        partitions = enumerate_by_block_type(n, block_type, limit=cfg.lattice_limit)
    elif args.even:
        partitions = enumerate_even_nc(n, limit=cfg.lattice_limit)
    else:
        partitions = enumerate_nc(n, limit=cfg.lattice_limit)
    mobius = {pi: mobius_to_top(pi) for pi in partitions} if args.mobius else None
    rows = serialize.nc_rows(partitions, mobius)
    if cfg.fmt == "csv":
        return serialize.nc_csv(rows), EXIT_OK
    if cfg.fmt == "plain":
        return serialize.nc_plain(rows), EXIT_OK
    data = {
        "size": n,
        "even": bool(args.even),
        "block_type": None if args.block_type is None else sorted(args.block_type),
        "partitions": rows,
        "count": len(rows),
    }
    return serialize.dumps(serialize.envelope(None, "nc", "enumeration", data)), EXIT_OK


def _verify(cfg: RunConfig, args, parser, engine=None) -> tuple[str, int]:
    report = run_verification(
        cfg.n_generators,
        cfg.max_order,
        limit=cfg.lattice_limit,
        budget=cfg.oracle_budget,
        workers=cfg.threads,
        engine=engine or expand_power,
    )
    code = EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    if not report.passed:
        print(f"verification failed: {report.first_failure}", file=sys.stderr)
    if cfg.fmt == "plain":
        return report.to_plain(), code
    if cfg.fmt == "csv":
        rows = [[c["name"], c["scope"], c["status"], c["detail"]] for c in report.to_data()["checks"]]
        return serialize._csv(["check", "scope", "status", "detail"], rows), code
    payload = serialize.envelope(cfg.n_generators, "verify", "cross-check", report.to_data())
    return serialize.dumps(payload), code


_COMMANDS = {
    "expand": _expand,
    "moments": _moments,
    "cumulants": _cumulants,
    "nc": _nc,
    "verify": _verify,
}


def main(argv: list[str] | None = None, *, engine=None) -> int:
    """Entry point.  ``engine`` replaces expand_power in ``verify`` (test hook)."""
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args, parser)
    handler = _COMMANDS[args.command]
    try:
        if args.command == "verify":
            text, code = handler(cfg, args, parser, engine)
        else:
            text, code = handler(cfg, args, parser)
    except (SizeLimitError, OracleBudgetError) as exc:
        print(f"freegen: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except FreegenError as exc:
        print(f"freegen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
