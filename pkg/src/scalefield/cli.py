"""``scalefield`` command-line entry point."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import COMMANDS, FORMATS, ConfigError, parse_config
from .report import emit_report, fmt_float
from .suites import run

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scalefield", description="Run scaled-structure property suites.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, help="TOML run configuration (defaults if omitted)")
    p.add_argument("--out", help="output directory (overrides [output] path)")
    p.add_argument("--seed", type=int, help="overrides the config seed")
    p.add_argument("--format", choices=FORMATS, help="report format (overrides [output] format)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    text = ""
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            print(f"scalefield: cannot read config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        cfg = parse_config(text, args.command)
    except ConfigError as exc:
        where = args.config if args.config is not None else "<defaults>"
        print(f"scalefield: {where}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seed is not None:
        if args.seed < 0:
            print("scalefield: --seed must be nonnegative", file=sys.stderr)
            return EXIT_CONFIG
        cfg = cfg.__class__(**{**cfg.__dict__, "seed": args.seed})
    out = args.out if args.out is not None else cfg.out
    fmt = args.format or cfg.format

    report = run(cfg)
    paths = emit_report(report, fmt, out)
    s = report.summary
    print(
        f"{report.command}: {s['passed']}/{s['cases']} passed, "
        f"max error {fmt_float(s['max_error'])} -> {', '.join(str(p) for p in paths)}"
    )
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
