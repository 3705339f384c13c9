"""Command line entry point: ``probdiff sweep | degrees | single``.

Exit codes: 0 success, 2 usage error, 3 graph generation failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import diffusion
from .errors import ConfigurationError, GraphGenerationError
from .experiment import (
    PAPER_ADOPTERS,
    PAPER_N,
    PAPER_P_DIFF,
    PAPER_P_LINK,
    PAPER_TRIALS,
    CellResult,
    ExperimentConfig,
    degree_report,
    select_early_adopters,
    sweep,
)
from .randgraph import DEFAULT_MAX_ATTEMPTS, generate_connected_er
from .streams import DEFAULT_SEED, SeedPlan, probability_key

EXIT_OK, EXIT_USAGE, EXIT_GENERATION, EXIT_IO = 0, 2, 3, 4

COLUMNS = (
    "n", "p_link", "p_diff", "k_adopters", "trials", "successes",
    "p_success", "p_success_lo", "p_success_hi",
    "mean_rounds", "rounds_lo", "rounds_hi",
    "mean_degree", "stddev_degree", "mean_regen_attempts",
)

# Keys accepted in a config file; the same names as the long flags.
_CONFIG_KEYS = {
    "n", "p-link", "p-diff", "adopters", "trials", "seed",
    "max-regen-attempts", "format", "out", "threads",
}


class UsageError(Exception):
    pass


def _fail(field: str, message: str):
    raise UsageError(f"--{field}: {message}")


def parse_list(text: str, kind, field: str) -> list:
    """Comma-separated values; a ``start:stop:step`` item expands to an
    inclusive range."""
    values = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ":" in item:
                start, stop, step = (float(x) for x in item.split(":"))
                if step <= 0 or stop < start:
                    _fail(field, f"bad range {item!r}")
                count = int(round((stop - start) / step)) + 1
                values.extend(kind(round(start + i * step, 10)) for i in range(count))
            else:
                values.append(kind(item))
        except ValueError:
            _fail(field, f"cannot parse {item!r}")
    if not values:
        _fail(field, "empty list")
    return values


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from exc
    values = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("_", "-")
        if not sep or key not in _CONFIG_KEYS:
            raise UsageError(f"--config: {path}:{lineno}: unknown setting {line!r}")
        values[key] = value.strip()
    return values


def _merged(args: argparse.Namespace) -> dict[str, object]:
    settings: dict[str, object] = {}
    if getattr(args, "config", None):
        settings.update(read_config_file(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            settings[key] = ",".join(value) if isinstance(value, list) else value
    return settings


def _int(settings, key, default):
    value = settings.get(key, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        _fail(key, f"expected an integer, got {value!r}")


def parse_config(argv: Sequence[str] | None = None) -> ExperimentConfig:
    """Build a validated :class:`ExperimentConfig` for the ``sweep`` command."""
    try:
        args = build_parser().parse_args(["sweep", *(argv or [])])
    except SystemExit as exc:
        raise UsageError("invalid command line flags") from exc
    return _config_from(_merged(args))


def _config_from(settings: dict[str, object]) -> ExperimentConfig:
    grid = {}
    for key, name, kind, default in (
        ("n", "n_values", int, PAPER_N),
        ("p-link", "p_link_values", float, PAPER_P_LINK),
        ("p-diff", "p_diff_values", float, PAPER_P_DIFF),
        ("adopters", "adopter_counts", int, PAPER_ADOPTERS),
    ):
        raw = settings.get(key)
        grid[name] = tuple(default if raw is None else parse_list(raw, kind, key))
        if kind is float:
            for p in grid[name]:
                if not 0.0 <= p <= 1.0:
                    _fail(key, f"probability {p} outside [0, 1]")
    try:
        return ExperimentConfig(
            **grid,
            trials=_int(settings, "trials", PAPER_TRIALS),
            master_seed=_int(settings, "seed", DEFAULT_SEED),
            max_regen_attempts=_int(settings, "max-regen-attempts", DEFAULT_MAX_ATTEMPTS),
        )
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.6g}"


def to_record(result: CellResult) -> dict[str, object]:
    """Flatten a cell result into the output column schema."""
    params = result.params
    lo_r, hi_r = result.rounds_ci if result.rounds_ci is not None else (None, None)
    return {
        "n": params.n,
        "p_link": params.p_link,
        "p_diff": params.p_diff,
        "k_adopters": params.k_adopters,
        "trials": params.trials,
        "successes": result.successes,
        "p_success": result.p_success,
        "p_success_lo": result.p_success_ci[0],
        "p_success_hi": result.p_success_ci[1],
        "mean_rounds": result.mean_rounds,
        "rounds_lo": lo_r,
        "rounds_hi": hi_r,
        "mean_degree": result.mean_degree,
        "stddev_degree": result.stddev_degree,
        "mean_regen_attempts": result.mean_regen_attempts,
    }


def render(results: Sequence[CellResult], fmt: str = "csv") -> str:
    if not results:
        raise ValueError("no results to emit")
    records = [to_record(r) for r in results]
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow([_fmt(rec[c]) for c in COLUMNS])
    return buf.getvalue()


def emit(results: Sequence[CellResult], fmt: str = "csv", destination: str | None = None) -> None:
    """Write results as CSV or JSON to ``destination`` (stdout if None or '-')."""
    _write(render(results, fmt), destination)


def _write(text: str, destination: str | None) -> None:
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probdiff",
        description="Probabilistic diffusion on Erdős–Rényi random graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value file; flags override its values")
        p.add_argument("--n", action="append", help="node count(s), comma list")
        p.add_argument("--p-link", action="append", help="link probability list")
        p.add_argument("--seed", help=f"master seed (default {DEFAULT_SEED})")
        p.add_argument("--max-regen-attempts", help="connectivity retries per graph")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("sweep", help="run the experiment grid and emit one row per cell")
    common(p)
    p.add_argument("--p-diff", action="append", help="diffusion probabilities: list or start:stop:step")
    p.add_argument("--adopters", action="append", help="early adopter counts")
    p.add_argument("--trials", help="trials per cell")
    p.add_argument("--threads", help="worker processes, 0 = one per CPU")

    p = sub.add_parser("degrees", help="pooled degree distribution of sampled graphs")
    common(p)
    p.add_argument("--samples", type=int, default=PAPER_TRIALS, help="graphs per (n, p_link)")
    p.add_argument("--connected", action="store_true", help="sample only connected graphs")

    p = sub.add_parser("single", help="one diffusion run with a per-round trace")
    common(p)
    p.add_argument("--p-diff", help="diffusion probability")
    p.add_argument("--adopters", help="number of early adopters")
    p.add_argument("--trial", type=int, default=0, help="trial index within the seed plan")
    return parser


def _cmd_sweep(args) -> None:
    settings = _merged(args)
    config = _config_from(settings)
    fmt = settings.get("format", "csv")
    threads = _int(settings, "threads", 1)
    if threads < 0:
        _fail("threads", "must be >= 0")
    results = sweep(config, threads=threads)
    emit(results, fmt, settings.get("out"))


def _cmd_degrees(args) -> None:
    settings = _merged(args)
    ns = parse_list(settings.get("n", "100,200"), int, "n")
    p_links = parse_list(settings.get("p-link", ",".join(map(str, PAPER_P_LINK))), float, "p-link")
    seed = _int(settings, "seed", DEFAULT_SEED)
    attempts = _int(settings, "max-regen-attempts", DEFAULT_MAX_ATTEMPTS)
    if args.samples < 1:
        _fail("samples", "must be >= 1")
    rows = []
    for n in ns:
        for p_link in p_links:
            try:
                rep = degree_report(n, p_link, args.samples, seed, args.connected, attempts)
            except ConfigurationError as exc:
                raise UsageError(str(exc)) from exc
            for degree, count in rep.histogram.items():
                rows.append({
                    "n": n, "p_link": p_link, "degree": degree, "count": count,
                    "mean_degree": rep.mean_degree, "stddev_degree": rep.stddev_degree,
                })
    if settings.get("format", "csv") == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = ("n", "p_link", "degree", "count", "mean_degree", "stddev_degree")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in cols])
        text = buf.getvalue()
    _write(text, settings.get("out"))


def _cmd_single(args) -> None:
    settings = _merged(args)
    n = parse_list(settings.get("n", "100"), int, "n")[0]
    p_link = parse_list(settings.get("p-link", "0.1"), float, "p-link")[0]
    p_diff = parse_list(settings.get("p-diff", "0.5"), float, "p-diff")[0]
    k = parse_list(settings.get("adopters", "1"), int, "adopters")[0]
    seed = _int(settings, "seed", DEFAULT_SEED)
    attempts = _int(settings, "max-regen-attempts", DEFAULT_MAX_ATTEMPTS)
    try:
        ExperimentConfig((n,), (p_link,), (p_diff,), (k,), 1, seed, attempts)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc
    plan = SeedPlan(seed)
    key = (n, probability_key(p_link))
    g, used = generate_connected_er(n, p_link, plan.derive(key, args.trial, "graph"), attempts)
    adopters = select_early_adopters(g, k, plan.stream((*key, k), args.trial, "adopters"))
    params = diffusion.DiffusionParams(p_diff, adopters)
    states = diffusion.trace(g, params, plan.coins(key, args.trial))
    out = io.StringIO()
    out.write(f"graph: n={n} edges={g.edge_count} attempts={used}\n")
    out.write(f"early adopters: {sorted(adopters)}\n")
    for prev, state in zip(states, states[1:]):
        new = sorted(state.covered - prev.covered)
        out.write(
            f"round {state.round}: candidates={sorted(prev.candidates)} "
            f"newly_covered={new} covered={len(state.covered)}/{n}\n"
        )
    final = states[-1]
    verdict = "success" if len(final.covered) == n else "failure"
    out.write(f"{verdict} after {final.round} rounds\n")
    _write(out.getvalue(), settings.get("out"))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"sweep": _cmd_sweep, "degrees": _cmd_degrees, "single": _cmd_single}[args.command]
    try:
        handler(args)
    except UsageError as exc:
        print(f"probdiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphGenerationError as exc:
        print(f"probdiff: generation failure: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except OSError as exc:
        print(f"probdiff: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
