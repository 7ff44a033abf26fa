"""Command-line front end.

Exit codes: 0 success, 1 failed checks, 2 configuration error,
3 engine did not converge, 4 degenerate measure.
"""

from __future__ import annotations

import functools
import json
import sys
import warnings
from pathlib import Path

import click

from chainmap import io, oracle
from chainmap.asymptotics import szego_check
from chainmap.config import ENGINES, JobConfig, load_config
from chainmap.errors import (
    ChainmapError,
    ConfigError,
    DeltaOutOfRange,
    DimensionMismatch,
    IndexBeyondModes,
    MeasureDegenerate,
    NoConvergence,
    NonIntegrable,
    PrecisionExhausted,
    TailNotConverged,
)
from chainmap.measures import induced_measure, split_gapped
from chainmap.pipeline import compare, invariant_suite, map_density, star_model

EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_DEGENERATE = 4

_EXIT_FOR = (
    ((ConfigError, DeltaOutOfRange), EXIT_CONFIG),
    ((NoConvergence, PrecisionExhausted, TailNotConverged), EXIT_NO_CONVERGENCE),
    ((MeasureDegenerate, IndexBeyondModes, NonIntegrable, DimensionMismatch), EXIT_DEGENERATE),
)


def _exit_code(exc: ChainmapError) -> int:
    for types, code in _EXIT_FOR:
        if isinstance(exc, types):
            return code
    return EXIT_DEGENERATE


def handled(fn):
    """Map library errors to exit codes with a one-line message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ChainmapError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_exit_code(exc))

    return wrapper


def _job(config: str, n, engine, out, fmt) -> JobConfig:
    job = load_config(config)
    changes = {}
    if n is not None:
        changes["chain_length"] = n
    if engine is not None:
        changes["engine"] = engine
    if out is not None:
        changes["output"] = Path(out)
        if fmt is None and Path(out).suffix.lower() == ".json":
            changes["format"] = "json"
    if fmt is not None:
        changes["format"] = fmt
    if not changes:
        return job
    return JobConfig(**{**job.__dict__, **changes})


def _segment_path(out: Path, i: int, count: int) -> Path:
    if count == 1:
        return out
    return out.with_name(f"{out.stem}.seg{i}{out.suffix}")


def _sidecar(path: Path) -> Path:
    return path.with_name(f"{path.stem}.szego.json")


config_opt = click.option("--config", "config", required=True, type=click.Path(exists=True, dir_okay=False),
                          help="YAML job file.")


@click.group()
@click.version_option(package_name="chainmap")
def main():
    """Map spectral densities onto semi-infinite chains."""


@main.command("map")
@config_opt
@click.option("--n", "n", type=int, default=None, help="Chain length (overrides chain_length).")
@click.option("--engine", type=click.Choice(ENGINES), default=None, help="Coefficient engine.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file; stdout if omitted.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--check", is_flag=True, help="Cross-check against the Stieltjes engine.")
@handled
def map_cmd(config, n, engine, out, fmt, check):
    """Compute chain coefficients (one chain per support segment)."""
    job = _job(config, n, engine, out, fmt)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        chains = map_density(job.density, job.chain_length, job.engine, job.tolerance, check)
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)
    for cp in chains:
        if cp.length < job.chain_length:
            raise MeasureDegenerate(f"only {cp.length} of {job.chain_length} sites available")
    segs = split_gapped(job.density)
    render = io.chain_to_json if job.format == "json" else io.chain_to_csv
    texts = [render(cp) for cp in chains]
    reports = [io.dumps_json(szego_check(induced_measure(seg), cp).to_dict()) for seg, cp in zip(segs, chains)]
    if job.output is None:
        for text in texts:
            click.echo(text, nl=False)
        return
    # everything is computed before the first write, so failures leave no files
    for i, (text, rep) in enumerate(zip(texts, reports)):
        path = _segment_path(job.output, i, len(texts))
        io.atomic_write(path, text)
        io.atomic_write(_sidecar(path), rep)
        click.echo(f"wrote {path}", err=True)


@main.command()
@config_opt
@click.option("--n", "n", type=int, default=None)
@click.option("--engine", type=click.Choice(ENGINES), default=None)
@handled
def check(config, n, engine):
    """Run the structural invariant suite on the configured density."""
    job = _job(config, n, engine, None, None)
    rows = invariant_suite(job.density, job.chain_length, job.engine, job.tolerance)
    failed = 0
    for name, ok, detail in rows:
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
        failed += not ok
    click.echo(f"{len(rows) - failed}/{len(rows)} checks passed")
    if failed:
        sys.exit(EXIT_CHECK_FAILED)


@main.command()
@config_opt
@click.option("--n", "n", type=int, default=None, help="Number of star modes for continuous densities.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@handled
def star(config, n, out, fmt):
    """Emit the discretised star model (frequencies zeta_n, couplings gamma_n)."""
    job = _job(config, n, None, out, fmt)
    model = star_model(job.density, job.chain_length, job.statistics, job.engine, job.tolerance)
    text = io.star_to_json(model) if job.format == "json" else io.star_to_csv(model)
    if job.output is None:
        click.echo(text, nl=False)
    else:
        io.atomic_write(job.output, text)


@main.command()
@config_opt
@handled
def szego(config):
    """Print the Szegő-class report as JSON."""
    job = load_config(config)
    segs = split_gapped(job.density)
    chains = map_density(job.density, job.chain_length, job.engine, job.tolerance)
    reports = [szego_check(induced_measure(seg), cp).to_dict() for seg, cp in zip(segs, chains)]
    if len(reports) == 1:
        payload = reports[0]
    else:
        # the undivided measure is out of class; each segment may be in it
        payload = {"segments": reports, "whole": szego_check(induced_measure(job.density)).to_dict()}
    click.echo(io.dumps_json(payload), nl=False)


@main.command("oracle")
@click.option("--case", "cases", multiple=True, type=click.Choice(sorted(oracle.CASES) + ["all"]), default=("all",))
@click.option("--out", type=click.Path(dir_okay=False), default="derived_values.json", show_default=True)
@handled
def oracle_cmd(cases, out):
    """Regenerate the derived-values fixture (slow, extended precision)."""
    names = sorted(oracle.CASES) if "all" in cases else sorted(set(cases))
    path = Path(out)
    data = {}
    if path.exists() and set(names) != set(oracle.CASES):
        data = json.loads(path.read_text())
    data.update(oracle.derived_values(names))
    io.atomic_write(path, oracle.dumps_fixture(data))
    click.echo(f"wrote {path} ({', '.join(names)})", err=True)


@main.command("compare")
@config_opt
@click.option("--engines", default="stieltjes,lanczos", show_default=True,
              help="Comma-separated: closed-form, stieltjes, lanczos, gram-schmidt, gram-schmidt@<digits>.")
@click.option("--n", "n", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handled
def compare_cmd(config, engines, n, out):
    """Per-site max relative disagreement between engines."""
    job = _job(config, n, None, None, None)
    names = [e.strip() for e in engines.split(",") if e.strip()]
    res = compare(job.density, job.chain_length, names, job.tolerance)
    lines = [f"# engines={','.join(res.engines)}"]
    lines += [f"# breakdown {e} at n={k}" for e, k in sorted(res.breakdown.items())]
    lines.append("n,max_rel_disagreement")
    lines += [f"{i},{io.fmt(v)}" for i, v in enumerate(res.max_disagreement)]
    text = "\n".join(lines) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        io.atomic_write(Path(out), text)


if __name__ == "__main__":
    main()
