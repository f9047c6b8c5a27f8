"""Command line interface.

Two subcommands:

    edge run   --in <image...> --method <id> --smoothing <s1|s2|s3|s4|custom>
               [--low <v> --high <v> --threshold-mode absolute|percentile]
               [--blend <fusion-id> --q <real>] [--dump p1,p2,p3,p4] --out <dir>

    edge bench --in <dir> --gt <dir> [--methods <list>] [--smoothings <list>]
               --report <csv> [--sweep <highs>] [--jobs N]

Options may also come from a flat ``key = value`` config file (``--config``);
command-line flags override file entries.  Exit code is 0 on success and
nonzero with a diagnostic otherwise.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .pipeline import (DEFAULT_SWEEP_HIGHS, PRESET_METHODS, PipelineConfig,
                       run_benchmark, run_pipeline, write_report)
from .scaling import HysteresisParams

__all__ = ["main", "parse_config_file"]

IMAGE_SUFFIXES = (".png", ".pgm", ".pbm")


def parse_config_file(path) -> dict[str, str]:
    """Read a flat ``key = value`` file; '#' starts a comment."""
    entries: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{line_no}: expected 'key = value'")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edge", description="Grayscale edge detection and benchmarking")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="detect edges and write stage dumps")
    run.add_argument("--config", help="flat key=value config file")
    run.add_argument("--in", dest="inputs", nargs="+", help="input image(s)")
    run.add_argument("--method", help="detector id, e.g. choquet:copula_cf:0.8")
    run.add_argument("--blend", help="fusion id shorthand for choquet:<id>[:<q>]")
    run.add_argument("--q", type=float, help="power-measure exponent for --blend")
    run.add_argument("--smoothing", help="s1..s4 or explicit parameters")
    run.add_argument("--low", type=float, help="weak threshold / ratio")
    run.add_argument("--high", type=float, help="strong threshold / quantile")
    run.add_argument("--threshold-mode", choices=("absolute", "percentile"))
    run.add_argument("--dump", help="comma list from p1,p2,p3,p4")
    run.add_argument("--out", help="output directory")

    bench = sub.add_parser("bench", help="benchmark methods against ground truth")
    bench.add_argument("--config", help="flat key=value config file")
    bench.add_argument("--in", dest="inputs", help="directory of input images")
    bench.add_argument("--gt", help="directory of ground-truth edge maps")
    bench.add_argument("--methods", help="comma list of method ids")
    bench.add_argument("--smoothings", help="comma list of smoothing specs")
    bench.add_argument("--report", help="output CSV path")
    bench.add_argument("--low", type=float, help="weak-threshold ratio for the sweep")
    bench.add_argument("--sweep", help="comma list of strong-threshold quantiles")
    bench.add_argument("--jobs", type=int, help="parallel image workers")
    return parser


def _merged_options(args: argparse.Namespace) -> dict[str, str]:
    options: dict[str, str] = {}
    if args.config:
        options.update(parse_config_file(args.config))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        options[key.replace("_", "-")] = value
    return options


def _hysteresis_from(options: dict) -> HysteresisParams:
    defaults = HysteresisParams()
    return HysteresisParams(
        low=float(options.get("low", defaults.low)),
        high=float(options.get("high", defaults.high)),
        mode=str(options.get("threshold-mode", defaults.mode)),
    )


def _split_list(value) -> tuple[str, ...]:
    if isinstance(value, (tuple, list)):
        return tuple(value)
    return tuple(part.strip() for part in str(value).split(",") if part.strip())


def _method_from(options: dict) -> str:
    if "method" in options:
        return str(options["method"])
    if "blend" in options:
        fusion = str(options["blend"])
        if "q" in options:
            return f"choquet:{fusion}:{float(options['q']):g}"
        return f"choquet:{fusion}"
    return PipelineConfig().method


def _cmd_run(options: dict) -> int:
    if "inputs" not in options:
        raise ValueError("no input images (--in)")
    if "out" not in options:
        raise ValueError("no output directory (--out)")
    inputs = tuple(Path(p) for p in _split_list(options["inputs"]))
    for path in inputs:
        if not path.is_file():
            raise FileNotFoundError(f"input image not found: {path}")
    cfg = PipelineConfig(
        inputs=inputs,
        method=_method_from(options),
        smoothing=str(options.get("smoothing", "s1")),
        hysteresis=_hysteresis_from(options),
        out_dir=Path(options["out"]),
        dumps=frozenset(_split_list(options.get("dump", ""))),
    )
    records = run_pipeline(cfg)
    for record in records:
        print(f"{record['input']}: wrote {record['written']['p4']}")
    return 0


def _collect_inputs(directory: Path) -> tuple[Path, ...]:
    if not directory.is_dir():
        raise NotADirectoryError(f"input directory not found: {directory}")
    images = tuple(sorted(p for p in directory.iterdir()
                          if p.suffix.lower() in IMAGE_SUFFIXES))
    if not images:
        raise FileNotFoundError(f"no images in {directory}")
    return images


def _cmd_bench(options: dict) -> int:
    if "inputs" not in options:
        raise ValueError("no input directory (--in)")
    if "gt" not in options:
        raise ValueError("no ground-truth directory (--gt)")
    if "report" not in options:
        raise ValueError("no report path (--report)")
    base = PipelineConfig()
    cfg = PipelineConfig(
        inputs=_collect_inputs(Path(str(options["inputs"]))),
        gt_dir=Path(str(options["gt"])),
        methods=_split_list(options.get("methods", PRESET_METHODS)),
        smoothings=_split_list(options.get("smoothings", base.smoothings)),
        sweep_highs=tuple(float(v) for v in
                          _split_list(options.get("sweep", ""))) or DEFAULT_SWEEP_HIGHS,
        low_ratio=float(options.get("low", base.low_ratio)),
        jobs=int(options.get("jobs", 1)),
    )
    rows = run_benchmark(cfg)
    report = Path(str(options["report"]))
    write_report(rows, report)
    for row in rows:
        if row["image"] == "average":
            t = row["triplet"]
            print(f"{row['method']} / {row['smoothing']}: "
                  f"P={t.precision:.3f} R={t.recall:.3f} F={t.f:.3f}")
    print(f"report written to {report}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        options = _merged_options(args)
        if args.command == "run":
            return _cmd_run(options)
        return _cmd_bench(options)
    except (ValueError, OSError, TypeError) as exc:
        print(f"edge {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
