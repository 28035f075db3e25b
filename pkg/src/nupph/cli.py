"""Command-line front end.

Every command writes plain CSV or JSON for external plotting::

    nupph reconstruct --dataset fig1 --operators lagrange,pph
    nupph order-study --levels 5
    nupph convexity --input stencil.csv --format json
    nupph singularity --output jump.csv

Exit status is 0 on success, 2 for input or configuration errors and 3 for
numerical failures.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import analysis
from .dataio import dump_json, read_points, write_csv
from .datasets import Dataset, get_dataset
from .errors import ConfigError, NotConvexData, NupphError, ParseError, SamplerFailure
from .grid import NonUniformGrid, refine_dyadic
from .lagrange import lagrange_cubic
from .means import DEFAULT_EPSILON, EPSILON_PRESETS, Arithmetic, Harmonic, MeanKind, translated
from .pph import reconstruct

COMMANDS = ("reconstruct", "order-study", "convexity", "singularity")
OPERATORS = ("lagrange", "pph", "translated")
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

DEFAULT_DATASET = {
    "reconstruct": "fig1",
    "order-study": "sine-nonuniform",
    "convexity": "fig1",
    "singularity": "jump",
}
DEFAULT_OPERATORS = {
    "reconstruct": ("lagrange", "pph"),
    "order-study": OPERATORS,
    "convexity": ("pph",),
    "singularity": OPERATORS,
}
# the experiment commands sweep both presets; single reconstructions use one value
DEFAULT_EPSILONS = {
    "reconstruct": (DEFAULT_EPSILON,),
    "order-study": EPSILON_PRESETS,
    "convexity": (DEFAULT_EPSILON,),
    "singularity": EPSILON_PRESETS,
}


@dataclass
class ExperimentConfig:
    command: str
    input: Optional[str] = None
    dataset: Optional[str] = None
    operators: tuple[str, ...] = ()
    epsilons: tuple[float, ...] = ()
    levels: Optional[int] = None
    samples_per_interval: int = analysis.DEFAULT_SAMPLES
    output: Optional[str] = None
    format: str = "csv"
    include_boundary: bool = False
    kinds: list = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.input and self.dataset:
            raise ConfigError("give either --input or --dataset, not both")
        if not self.input and not self.dataset:
            self.dataset = DEFAULT_DATASET[self.command]
        if not self.operators:
            self.operators = DEFAULT_OPERATORS[self.command]
        for op in self.operators:
            if op not in OPERATORS:
                raise ConfigError(f"unknown operator {op!r}; choose from {', '.join(OPERATORS)}")
        if not self.epsilons:
            self.epsilons = DEFAULT_EPSILONS[self.command]
        if "translated" in self.operators and not self.epsilons:
            raise ConfigError("the translated operator needs at least one epsilon")
        if any(not (e > 0 and np.isfinite(e)) for e in self.epsilons):
            raise ConfigError(f"epsilon values must be finite and positive: {self.epsilons}")
        if self.levels is None:
            self.levels = 5 if self.command == "order-study" else 0
        if self.command == "order-study" and self.levels < 1:
            raise ConfigError("order-study needs --levels >= 1")
        if self.levels < 0:
            raise ConfigError("--levels must be non-negative")
        if self.samples_per_interval < 2:
            raise ConfigError("--samples must be at least 2")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        self.kinds = operator_kinds(self.operators, self.epsilons)


def operator_kinds(operators: Sequence[str], epsilons: Sequence[float]) -> list[MeanKind]:
    kinds: list[MeanKind] = []
    for op in operators:
        if op == "lagrange":
            kinds.append(Arithmetic())
        elif op == "pph":
            kinds.append(Harmonic())
        elif op == "translated":
            kinds.extend(translated(e) for e in epsilons)
        else:
            raise ConfigError(f"unknown operator {op!r}")
    return kinds


def _load(cfg: ExperimentConfig) -> tuple[NonUniformGrid, Optional[Dataset]]:
    if cfg.input:
        try:
            return read_points(cfg.input), None
        except OSError as exc:
            raise ParseError(f"cannot read {cfg.input}: {exc.strerror or exc}") from exc
    ds = get_dataset(cfg.dataset)
    return ds.grid(), ds


def _dense_abscissas(grid: NonUniformGrid, intervals: Sequence[int], samples: int) -> np.ndarray:
    parts = []
    for n, j in enumerate(intervals):
        t = np.linspace(grid.x[j], grid.x[j + 1], samples)
        parts.append(t if n == 0 or intervals[n - 1] != j - 1 else t[1:])
    return np.concatenate(parts)


def _covered(grid: NonUniformGrid, include_boundary: bool) -> list[int]:
    if include_boundary:
        return list(range(len(grid.x) - 1))
    return list(grid.interior_intervals)


def _piece_lookup(grid: NonUniformGrid, kind: MeanKind, include_boundary: bool, xs: np.ndarray) -> np.ndarray:
    pieces = analysis.piecewise(grid, kind, include_boundary)
    los = np.array([p.lo for p in pieces])
    idx = np.clip(np.searchsorted(los, xs, side="right") - 1, 0, len(pieces) - 1)
    out = np.empty_like(xs)
    for i, piece in enumerate(pieces):
        mask = idx == i
        out[mask] = piece.poly(xs[mask])
    return out


def _curve_table(grid: NonUniformGrid, ds: Optional[Dataset], kinds, samples: int, include_boundary: bool):
    xs = _dense_abscissas(grid, _covered(grid, include_boundary), samples)
    header, columns = ["x"], [xs]
    if ds is not None and ds.sampler is not None:
        header.append("f_true")
        columns.append(np.asarray(ds.sampler(xs), dtype=float))
    for kind in kinds:
        header.append(kind.label)
        columns.append(_piece_lookup(grid, kind, include_boundary, xs))
    for col in columns:
        if not np.all(np.isfinite(col)):
            raise SamplerFailure("non-finite value in reconstruction output")
    rows = [tuple(float(c[i]) for c in columns) for i in range(len(xs))]
    return header, rows


def _refined(grid: NonUniformGrid, ds: Optional[Dataset], levels: int) -> NonUniformGrid:
    if levels and (ds is None or ds.sampler is None):
        raise ConfigError("refinement needs an analytic dataset")
    for _ in range(levels):
        grid = refine_dyadic(grid, ds.sampler)
    return grid


@contextmanager
def _open_output(path: Optional[str], suffix: str = ""):
    if path is None:
        yield sys.stdout
        return
    p = Path(path)
    if suffix:
        p = p.with_name(p.stem + suffix + (p.suffix or ".csv"))
    try:
        with open(p, "w", newline="") as fh:
            yield fh
    except OSError as exc:
        raise ParseError(f"cannot write {p}: {exc.strerror or exc}") from exc


def _emit_tables(cfg: ExperimentConfig, tables: list[tuple[str, list[str], list]], record: dict) -> None:
    """Write the first table to the output and the rest to sidecar files (or stdout)."""
    if cfg.format == "json":
        with _open_output(cfg.output) as fh:
            dump_json(record, fh)
        return
    for n, (suffix, header, rows) in enumerate(tables):
        with _open_output(cfg.output, "" if n == 0 else suffix) as fh:
            if n and cfg.output is None:
                fh.write("\n")
            write_csv(fh, header, rows)


def run_reconstruct(cfg: ExperimentConfig) -> dict:
    grid, ds = _load(cfg)
    grid = _refined(grid, ds, cfg.levels)
    header, rows = _curve_table(grid, ds, cfg.kinds, cfg.samples_per_interval, cfg.include_boundary)
    record = {"command": cfg.command, "columns": header, "rows": rows}
    _emit_tables(cfg, [("", header, rows)], record)
    return record


def run_order_study(cfg: ExperimentConfig) -> dict:
    if cfg.input:
        raise ConfigError("order-study needs an analytic dataset, not a point file")
    ds = get_dataset(cfg.dataset)
    if ds.sampler is None:
        raise ConfigError(f"dataset {ds.name!r} has no analytic sampler to refine")
    base = ds.grid()
    studies = [analysis.order_study(base, ds.sampler, k, cfg.levels, cfg.samples_per_interval) for k in cfg.kinds]
    labels = [s.operator for s in studies]
    order_rows = [[s] + [st.orders[s - 1] for st in studies] for s in range(1, cfg.levels + 1)]
    error_rows = [[s, studies[0].h_max[s]] + [st.errors[s] for st in studies] for s in range(cfg.levels + 1)]
    flagged = any(any(st.flagged) for st in studies)
    record = {
        "command": cfg.command,
        "dataset": ds.name,
        "samples_per_interval": cfg.samples_per_interval,
        "studies": [asdict(st) for st in studies],
        "flagged": flagged,
    }
    _emit_tables(
        cfg,
        [("", ["s"] + labels, order_rows), (".errors", ["s", "h_max"] + labels, error_rows)],
        record,
    )
    if flagged:
        print("warning: some errors sit at the rounding floor; their orders are reported as nan", file=sys.stderr)
    return record


def run_convexity(cfg: ExperimentConfig) -> dict:
    grid, _ = _load(cfg)
    if len(grid.x) != 4:
        raise ConfigError(f"convexity expects a single 4-point stencil, got {len(grid.x)} points")
    st = grid.stencil(1)
    kinds = [k for k in cfg.kinds if not isinstance(k, Arithmetic)] or [Harmonic()]
    reports = []
    for kind in kinds:
        rep = analysis.convexity_report(st, kind)
        reports.append({"operator": kind.label, **asdict(rep), "case": rep.case.value})
    xs = np.linspace(st.x[0], st.x[3], max(cfg.samples_per_interval, 2) * 3)
    header = ["x", "d2_lagrange"] + [f"d2_{k.label}" for k in kinds]
    cols = [xs, lagrange_cubic(st).second_derivative(xs)] + [reconstruct(st, k).second_derivative(xs) for k in kinds]
    rows = [tuple(float(c[i]) for c in cols) for i in range(len(xs))]
    rep_header = ["operator", "case", "orientation", "x_pph", "x_pl", "gap", "preserved_on_central", "preserved_on_full", "pl_reading"]
    rep_rows = [[r[k] for k in rep_header] for r in reports]
    record = {"command": cfg.command, "reports": reports, "samples": {"columns": header, "rows": rows}}
    _emit_tables(cfg, [("", header, rows), (".report", rep_header, rep_rows)], record)
    return record


def run_singularity(cfg: ExperimentConfig) -> dict:
    grid, ds = _load(cfg)
    grid = _refined(grid, ds, cfg.levels)
    header, rows = _curve_table(grid, ds, cfg.kinds, max(cfg.samples_per_interval, 2), cfg.include_boundary)
    jump = ds.jump if ds is not None else None
    k = analysis.jump_interval(grid, jump) if jump is not None else None
    adjacent = analysis.jump_adjacent_intervals(grid, jump) if jump is not None else ()
    per_kind = {}
    if ds is not None and ds.sampler is not None:
        for kind in cfg.kinds:
            per_kind[kind.label] = dict(analysis.interval_errors(grid, ds.sampler, kind, cfg.samples_per_interval, cfg.include_boundary))
    int_header = ["j", "x_lo", "x_hi", "contains_jump", "jump_adjacent"] + [f"err_{lab}" for lab in per_kind]
    int_rows = []
    for j in _covered(grid, cfg.include_boundary):
        int_rows.append([j, float(grid.x[j]), float(grid.x[j + 1]), j == k, j in adjacent] + [per_kind[lab][j] for lab in per_kind])
    distances = {}
    pph = next((kk for kk in cfg.kinds if isinstance(kk, Harmonic)), None)
    if adjacent and pph is not None:
        for kind in cfg.kinds:
            if kind is not pph:
                distances[kind.label] = analysis.curve_distance(grid, kind, pph, adjacent)
    record = {
        "command": cfg.command,
        "jump": jump,
        "jump_interval": k,
        "adjacent_intervals": list(adjacent),
        "distance_to_pph_on_adjacent": distances,
        "curves": {"columns": header, "rows": rows},
        "intervals": {"columns": int_header, "rows": int_rows},
    }
    _emit_tables(cfg, [("", header, rows), (".intervals", int_header, int_rows)], record)
    return record


RUNNERS = {
    "reconstruct": run_reconstruct,
    "order-study": run_order_study,
    "convexity": run_convexity,
    "singularity": run_singularity,
}


def _csv_list(text: str, conv=str) -> tuple:
    items = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return tuple(conv(t) for t in items)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid list {text!r}") from None


def _default_samples() -> int:
    env = os.environ.get("PPH_SAMPLES")
    if env is None:
        return analysis.DEFAULT_SAMPLES
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"PPH_SAMPLES must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="CSV (x,f) or JSON {x:[...], f:[...]} point file")
    src.add_argument("--dataset", metavar="NAME", help="built-in dataset")
    common.add_argument("--operators", type=_csv_list, default=(), help="comma list of lagrange,pph,translated")
    common.add_argument("--epsilon", type=lambda s: _csv_list(s, float), default=(), help="comma list of translation constants")
    common.add_argument("--levels", type=int, default=None, help="dyadic refinement levels")
    common.add_argument("--samples", type=int, default=None, help="evaluation points per interval (env PPH_SAMPLES)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--include-boundary", action="store_true", help="extrapolate the first and last interior cubics over the boundary intervals")

    parser = argparse.ArgumentParser(prog="nupph", description="PPH reconstruction on non-uniform grids")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = ExperimentConfig(
            command=args.command,
            input=args.input,
            dataset=args.dataset,
            operators=args.operators,
            epsilons=args.epsilon,
            levels=args.levels,
            samples_per_interval=args.samples if args.samples is not None else _default_samples(),
            output=args.output,
            format=args.format,
            include_boundary=args.include_boundary,
        )
        RUNNERS[cfg.command](cfg)
    except NotConvexData as exc:
        print(f"nupph: data is not convex or concave: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SamplerFailure, ArithmeticError) as exc:
        print(f"nupph: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (NupphError, ValueError) as exc:
        print(f"nupph: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
