from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional

import click

from .config import (
    CORPUS_DIR,
    DEFAULT_BENCH_REPEAT,
    DEFAULT_BOX_RADIUS,
    DEFAULT_BOX_TIMES,
    DEFAULT_GAUSSIAN_RADIUS,
    DEFAULT_GAUSSIAN_SIGMA,
    DEFAULT_RANGE_RADIUS,
    DEFAULT_RANGE_SIGMA,
    DEFAULT_THRESHOLD_STEPS,
    DEFAULT_TOLERANCE,
    EDGE_RESTORERS,
    EDGE_SETTINGS,
    GAUSS_ITERATIONS,
    BenchOptions,
    CorpusOptions,
    EdgeEvalOptions,
)
from .models.data_schemas import (
    BenchReport,
    CorpusReport,
    Gauss2DRestorer,
    GaussianSmoother,
    IteratedBoxSmoother,
    RangeSpec,
    SeparableGaussRestorer,
    SirConfig,
    SnnRestorer,
)
from .modules.bench import format_table, run_benchmark
from .modules.edgebench import evaluate_corpus, load_manifest, preprocess_for
from .modules.output_generator import write_bench_csv, write_edges_csv, write_outputs
from .modules.pipeline import builtin_presets, get_preset, sir_run_passes
from .utils.exceptions import InvalidParameterError, SirError
from .utils.image_io import load_image
from .utils.synthetic import write_corpus


SMOOTHERS = ("gaussian", "box")
RESTORERS = ("sep", "gauss2d", "snn", "snn-median")


def build_config(
    preset: Optional[str] = None,
    smoother: Optional[str] = None,
    sigma: float = DEFAULT_GAUSSIAN_SIGMA,
    radius: int = DEFAULT_GAUSSIAN_RADIUS,
    box_radius: int = DEFAULT_BOX_RADIUS,
    box_times: int = DEFAULT_BOX_TIMES,
    restorer: Optional[str] = None,
    range_sigma: float = DEFAULT_RANGE_SIGMA,
    range_radius: int = DEFAULT_RANGE_RADIUS,
    order: str = "hv",
    iters: Optional[int] = None,
    external_guide: bool = False,
) -> SirConfig:
    guidance = "external" if external_guide else "input"
    if preset:
        if smoother or restorer:
            raise InvalidParameterError("use either --preset or --smoother/--restorer, not both")
        config = get_preset(preset).config
        updates: dict = {"guidance": guidance}
        if iters is not None:
            updates["iterations"] = iters
        return SirConfig.model_validate({**config.model_dump(), **updates})

    smoother = (smoother or "gaussian").lower()
    if smoother == "gaussian":
        smoother_spec = GaussianSmoother(sigma=sigma, radius=radius)
    elif smoother == "box":
        smoother_spec = IteratedBoxSmoother(radius=box_radius, times=box_times)
    else:
        raise InvalidParameterError(f"unknown smoother {smoother!r}")

    restorer = (restorer or "sep").lower()
    range_spec = RangeSpec(sigma=range_sigma, radius=range_radius)
    if restorer == "sep":
        restorer_spec = SeparableGaussRestorer(range_spec=range_spec, order=order)
    elif restorer == "gauss2d":
        restorer_spec = Gauss2DRestorer(range_spec=range_spec)
    elif restorer == "snn":
        restorer_spec = SnnRestorer(mode="mean")
    elif restorer == "snn-median":
        restorer_spec = SnnRestorer(mode="median")
    else:
        raise InvalidParameterError(f"unknown restorer {restorer!r}")

    return SirConfig(
        smoother=smoother_spec,
        restorer=restorer_spec,
        iterations=GAUSS_ITERATIONS if iters is None else iters,
        guidance=guidance,
    )


def run_sir(
    input_path: Path,
    output_path: Path,
    config: SirConfig,
    guide_path: Optional[Path] = None,
    passes: int = 1,
    write_metadata_json: bool = True,
) -> tuple[Path, Optional[Path], dict]:
    image = load_image(input_path)
    guide = load_image(guide_path) if guide_path else None
    result = sir_run_passes(image, config, passes=passes, guide=guide)

    summary = {
        "input": str(input_path),
        "guide": str(guide_path) if guide_path else None,
        "config": config.model_dump(mode="json"),
        "passes": passes,
        "smooth_seconds": result.smooth_seconds,
        "restore_seconds": result.restore_seconds,
        "total_seconds": result.total_seconds,
        "iteration_max_change": result.deltas,
        "timing_line": result.timing_line(),
    }
    image_path, metadata_path = write_outputs(
        image=result.output,
        output_path=output_path,
        metadata=summary,
        write_metadata_json=write_metadata_json,
    )
    summary["output"] = str(image_path)
    summary["metadata_path"] = str(metadata_path) if metadata_path else None
    return image_path, metadata_path, summary


def run_bench(input_path: Path, options: BenchOptions = BenchOptions(), csv_path: Optional[Path] = None) -> BenchReport:
    report = run_benchmark(load_image(input_path), options, input_path=str(input_path))
    if csv_path:
        write_bench_csv(report, csv_path)
    return report


def run_edges(
    manifest: Path,
    setting: str,
    restorer: str = "sep",
    options: EdgeEvalOptions = EdgeEvalOptions(),
    csv_path: Optional[Path] = None,
) -> CorpusReport:
    entries, warnings = load_manifest(manifest)
    report = evaluate_corpus(
        entries,
        preprocess=preprocess_for(setting, restorer),
        tolerance=options.tolerance,
        threshold_steps=options.threshold_steps,
        warnings=warnings,
    )
    if csv_path:
        write_edges_csv(report, csv_path)
    return report


def _fail(exc: Exception) -> click.ClickException:
    return click.ClickException(str(exc))


@click.group()
@click.option("--debug", is_flag=True, default=False, help="verbose logging")
def cli(debug: bool) -> None:
    """Smooth-and-iteratively-restore edge-preserving smoothing."""
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command("sir")
@click.option("-i", "--input", "input_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("-o", "--output", "output_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--preset", default=None, help="SiRSNN, SiR2DGauss, SiRsep, EdgePrep-snn/gauss2d/sep")
@click.option("--smoother", type=click.Choice(SMOOTHERS, case_sensitive=False), default=None)
@click.option("--sigma", default=DEFAULT_GAUSSIAN_SIGMA, type=float, help="Gaussian blur sigma")
@click.option("--radius", default=DEFAULT_GAUSSIAN_RADIUS, type=int, help="Gaussian blur radius")
@click.option("--box-radius", default=DEFAULT_BOX_RADIUS, type=int)
@click.option("--box-times", default=DEFAULT_BOX_TIMES, type=int)
@click.option("--restorer", type=click.Choice(RESTORERS, case_sensitive=False), default=None)
@click.option("--range-sigma", default=DEFAULT_RANGE_SIGMA, type=float)
@click.option("--range-radius", default=DEFAULT_RANGE_RADIUS, type=int)
@click.option("--order", type=click.Choice(["hv", "vh"]), default="hv", help="separable pass order")
@click.option("--iters", default=None, type=int, help="restore iterations n")
@click.option("--guide", "guide_path", default=None, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--passes", default=1, type=int, help="repeat the whole algorithm")
@click.option("--write-metadata-json/--no-metadata-json", default=True)
def cmd_sir(
    input_path: Path,
    output_path: Path,
    preset: Optional[str],
    smoother: Optional[str],
    sigma: float,
    radius: int,
    box_radius: int,
    box_times: int,
    restorer: Optional[str],
    range_sigma: float,
    range_radius: int,
    order: str,
    iters: Optional[int],
    guide_path: Optional[Path],
    passes: int,
    write_metadata_json: bool,
) -> None:
    try:
        config = build_config(
            preset=preset,
            smoother=smoother,
            sigma=sigma,
            radius=radius,
            box_radius=box_radius,
            box_times=box_times,
            restorer=restorer,
            range_sigma=range_sigma,
            range_radius=range_radius,
            order=order,
            iters=iters,
            external_guide=guide_path is not None,
        )
        image_path, metadata_path, summary = run_sir(
            input_path=input_path,
            output_path=output_path,
            config=config,
            guide_path=guide_path,
            passes=passes,
            write_metadata_json=write_metadata_json,
        )
    except (SirError, ValueError) as exc:
        raise _fail(exc) from exc
    click.echo(summary["timing_line"])
    click.echo(f"Output: {image_path}")
    if metadata_path:
        click.echo(f"Metadata: {metadata_path}")


@cli.command("bench")
@click.option("-i", "--input", "input_path", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--repeat", default=DEFAULT_BENCH_REPEAT, type=int)
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False, path_type=Path))
def cmd_bench(input_path: Path, repeat: int, csv_path: Optional[Path]) -> None:
    try:
        report = run_bench(input_path, BenchOptions(repeat=repeat), csv_path)
    except (SirError, ValueError) as exc:
        raise _fail(exc) from exc
    click.echo(format_table(report))
    if csv_path:
        click.echo(f"CSV: {csv_path}")


@cli.command("edges")
@click.option("--manifest", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--setting", type=click.Choice(EDGE_SETTINGS), default="sir")
@click.option("--restorer", type=click.Choice(EDGE_RESTORERS), default="sep")
@click.option("--tolerance", default=DEFAULT_TOLERANCE, type=float, help="matching distance in pixels")
@click.option("--steps", default=DEFAULT_THRESHOLD_STEPS, type=int, help="threshold sweep size")
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False, path_type=Path))
def cmd_edges(manifest: Path, setting: str, restorer: str, tolerance: float, steps: int, csv_path: Optional[Path]) -> None:
    try:
        report = run_edges(manifest, setting, restorer, EdgeEvalOptions(tolerance=tolerance, threshold_steps=steps), csv_path)
    except (SirError, ValueError) as exc:
        raise _fail(exc) from exc
    for record in report.records:
        result = record.result
        click.echo(
            f"{record.name:<24} P={result.precision:.4f} R={result.recall:.4f} "
            f"F={result.f_measure:.4f} t={result.best_threshold:.1f}"
        )
    click.echo(f"mean F={report.mean_f_measure:.4f} ({report.setting}, {len(report.records)} images)")
    for warning in report.warnings:
        click.echo(f"warning: {warning}", err=True)
    if csv_path:
        click.echo(f"CSV: {csv_path}")


@cli.command("presets")
@click.option("--json", "as_json", is_flag=True, default=False)
def cmd_presets(as_json: bool) -> None:
    presets = builtin_presets()
    if as_json:
        click.echo(json.dumps([p.model_dump(mode="json") for p in presets], indent=2))
        return
    for preset in presets:
        click.echo(f"{preset.name:<18} {preset.config.describe()}")


@cli.command("make-corpus")
@click.option("--outdir", default=str(CORPUS_DIR), type=click.Path(file_okay=False, path_type=Path))
@click.option("--count", default=CorpusOptions.count, type=int)
@click.option("--size", default=CorpusOptions.size, type=int)
@click.option("--seed", default=CorpusOptions.seed, type=int)
def cmd_make_corpus(outdir: Path, count: int, size: int, seed: int) -> None:
    try:
        manifest = write_corpus(outdir, CorpusOptions(count=count, size=size, seed=seed))
    except (SirError, ValueError) as exc:
        raise _fail(exc) from exc
    click.echo(f"Manifest: {manifest}")


if __name__ == "__main__":
    cli()
