"""Command line front end.

Three report-producing commands share one option vocabulary:

* ``run``:     cluster a dataset once, writing assignments.csv,
               embedding.csv, report.json, and a cluster scatter figure.
* ``profile``: repeat a run r times with per-phase timings; optionally
               compute speedup against a previously saved report.
* ``experiment2``: sweep subsample fractions with repeated seeded runs and
               write per-fraction quality statistics.

``generate`` additionally writes a synthetic dataset to CSV. Exit codes:
2 for bad flags, 3 for data errors, 4 for numeric errors.
"""

from __future__ import annotations

import csv
import math
import sys
from pathlib import Path

import click
import numpy as np

from .affinity import Cosine, GaussianRbf
from .data import DataSet, load_csv, write_csv, write_vector_csv
from .datasets import KINDS, GeneratorSpec, SubsampleSpec, generate, subsample_balanced
from .errors import DataError, InvalidSpec, NumericError
from .figures import save_cluster_scatter, save_phase_bars, save_quality_curves
from .parallel import KernelConfig
from .report import benchmark, load_report
from .serial import PicParams
from .validation import adjusted_rand_index, contingency, jaccard_index

EXIT_DATA_ERROR = 3
EXIT_NUMERIC_ERROR = 4

# the eighteen fractions of the subsampling protocol: 0.01%..0.09% and 0.1%..0.9%
DEFAULT_FRACTIONS = [i * 0.0001 for i in range(1, 10)] + [i * 0.001 for i in range(1, 10)]


def _fail(code: int, exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def dataset_options(fn):
    fn = click.option("--input", "input_path", type=click.Path(path_type=Path),
                      help="CSV dataset to load.")(fn)
    fn = click.option("--generate", "gen_kind", type=click.Choice(KINDS),
                      help="Generate a synthetic dataset instead of loading one.")(fn)
    fn = click.option("--n", default=1000, show_default=True, help="Points to generate.")(fn)
    fn = click.option("--noise", default=0.05, show_default=True,
                      help="Generator noise standard deviation.")(fn)
    fn = click.option("--components", default=3, show_default=True,
                      help="Blob count for --generate blobs.")(fn)
    fn = click.option("--labels", "has_labels", is_flag=True,
                      help="Last CSV column is an integer class id.")(fn)
    fn = click.option("--header", is_flag=True, help="Skip one CSV header line.")(fn)
    fn = click.option("--seed", default=0, show_default=True, help="Seed for generation and k-means.")(fn)
    return fn


def cluster_options(fn):
    fn = click.option("--k", default=2, show_default=True, help="Number of clusters.")(fn)
    fn = click.option("--backend", type=click.Choice(["serial", "parallel"]),
                      default="serial", show_default=True)(fn)
    fn = click.option("--p", default=1, show_default=True, help="Parallel worker count.")(fn)
    fn = click.option("--chunk-rows", default=None, type=int,
                      help="Row-block height for chunked kernels (default: fit memory budget).")(fn)
    fn = click.option("--similarity", type=click.Choice(["cosine", "rbf"]),
                      default="cosine", show_default=True)(fn)
    fn = click.option("--sigma", default=1.0, show_default=True, help="RBF bandwidth.")(fn)
    fn = click.option("--epsilon", default=None, type=float,
                      help="Convergence threshold (default 1e-5/n).")(fn)
    fn = click.option("--max-iters", default=None, type=int,
                      help="Iteration cap (default 50, or 3 with --bench-preset).")(fn)
    fn = click.option("--bench-preset", is_flag=True,
                      help="Timing-benchmark parameters: max-iters=3.")(fn)
    return fn


def output_options(fn):
    fn = click.option("--out", "out_dir", type=click.Path(path_type=Path),
                      default=Path("."), show_default=True, help="Output directory.")(fn)
    fn = click.option("--figures/--no-figures", default=True, show_default=True,
                      help="Render figures next to the delimited outputs.")(fn)
    return fn


def _resolve_dataset(input_path, gen_kind, n, noise, components, has_labels, header, seed) -> DataSet:
    if (input_path is None) == (gen_kind is None):
        raise click.UsageError("provide exactly one of --input or --generate")
    if gen_kind is not None:
        return generate(GeneratorSpec(gen_kind, n=n, noise=noise, seed=seed,
                                      components=components))
    return load_csv(input_path, has_labels=has_labels, header=header)


def _resolve_similarity(similarity: str, sigma: float):
    return Cosine() if similarity == "cosine" else GaussianRbf(sigma)


def _resolve_params(k, epsilon, max_iters, bench_preset) -> PicParams:
    if max_iters is None:
        max_iters = 3 if bench_preset else 50
    return PicParams(k=k, epsilon=epsilon, max_iterations=max_iters)


def _write_run_artifacts(out_dir: Path, d: DataSet, run, report, figures: bool) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    write_vector_csv(run.labels, out_dir / "assignments.csv", fmt="%d")
    write_vector_csv(run.embedding, out_dir / "embedding.csv")
    report.write(out_dir / "report.json")
    if figures:
        save_cluster_scatter(d, run.labels, out_dir / "clusters.png")


@click.group()
def main() -> None:
    """Power iteration clustering: serial and data-parallel backends."""


@main.command()
@dataset_options
@cluster_options
@output_options
def run(input_path, gen_kind, n, noise, components, has_labels, header, seed,
        k, backend, p, chunk_rows, similarity, sigma, epsilon, max_iters,
        bench_preset, out_dir, figures) -> None:
    """Cluster one dataset and write assignments, embedding, and report."""
    try:
        d = _resolve_dataset(input_path, gen_kind, n, noise, components,
                             has_labels, header, seed)
        kind = _resolve_similarity(similarity, sigma)
        params = _resolve_params(k, epsilon, max_iters, bench_preset)
        config = KernelConfig(p=p, chunk_rows=chunk_rows)
        report, last = benchmark(d, kind, params, backend=backend,
                                 config=config, seed=seed)
        _write_run_artifacts(out_dir, d, last, report, figures)
    except InvalidSpec as exc:
        raise click.UsageError(str(exc))
    except DataError as exc:
        _fail(EXIT_DATA_ERROR, exc)
    except (NumericError, OSError) as exc:
        _fail(EXIT_NUMERIC_ERROR if isinstance(exc, NumericError) else EXIT_DATA_ERROR, exc)
    click.echo(f"wrote {out_dir}/assignments.csv, embedding.csv, report.json")


@main.command()
@dataset_options
@cluster_options
@output_options
@click.option("--reps", default=3, show_default=True, help="Timed repetitions.")
@click.option("--baseline", "baseline_path", type=click.Path(path_type=Path),
              help="Earlier report.json to compute speedup against.")
def profile(input_path, gen_kind, n, noise, components, has_labels, header, seed,
            k, backend, p, chunk_rows, similarity, sigma, epsilon, max_iters,
            bench_preset, out_dir, figures, reps, baseline_path) -> None:
    """Repeat a run with per-phase timings and aggregate a benchmark report."""
    try:
        d = _resolve_dataset(input_path, gen_kind, n, noise, components,
                             has_labels, header, seed)
        kind = _resolve_similarity(similarity, sigma)
        params = _resolve_params(k, epsilon, max_iters, bench_preset)
        config = KernelConfig(p=p, chunk_rows=chunk_rows)
        baseline = load_report(baseline_path) if baseline_path else None
        report, last = benchmark(d, kind, params, backend=backend, config=config,
                                 seed=seed, repetitions=reps, baseline=baseline)
        out_dir.mkdir(parents=True, exist_ok=True)
        report.write(out_dir / "report.json")
        if figures:
            save_phase_bars(report.to_dict(), out_dir / "phases.png")
    except InvalidSpec as exc:
        raise click.UsageError(str(exc))
    except DataError as exc:
        _fail(EXIT_DATA_ERROR, exc)
    except (NumericError, OSError) as exc:
        _fail(EXIT_NUMERIC_ERROR if isinstance(exc, NumericError) else EXIT_DATA_ERROR, exc)
    share = 100.0 * report.affinity_share
    line = (f"{report.dataset}: n={report.n} backend={report.backend} p={report.p} "
            f"mean={report.mean_seconds:.3f}s stddev={report.stddev_seconds:.3f}s "
            f"affinity={share:.1f}%")
    if report.speedup is not None:
        line += f" speedup={report.speedup:.2f}x vs {report.baseline}"
    click.echo(line)


@main.command()
@dataset_options
@cluster_options
@output_options
@click.option("--reps", default=10, show_default=True, help="Seeded repetitions per fraction.")
@click.option("--fractions", default=None,
              help="Comma-separated subsample fractions (default: the 18-step sweep).")
def experiment2(input_path, gen_kind, n, noise, components, has_labels, header, seed,
                k, backend, p, chunk_rows, similarity, sigma, epsilon, max_iters,
                bench_preset, out_dir, figures, reps, fractions) -> None:
    """Subsample sweep: cluster each fraction r times, write quality statistics."""
    try:
        d = _resolve_dataset(input_path, gen_kind, n, noise, components,
                             has_labels, header, seed)
        if d.labels is None:
            raise DataError("experiment2 needs ground-truth labels")
        kind = _resolve_similarity(similarity, sigma)
        params = _resolve_params(k, epsilon, max_iters, bench_preset)
        config = KernelConfig(p=p, chunk_rows=chunk_rows)
        fraction_list = (DEFAULT_FRACTIONS if fractions is None else
                         [float(tok) for tok in fractions.split(",") if tok.strip()])
        rows = run_experiment2(d, kind, params, fraction_list, reps,
                               backend=backend, config=config, seed=seed)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "experiment2.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        if figures:
            save_quality_curves(rows, out_dir / "experiment2.png")
    except InvalidSpec as exc:
        raise click.UsageError(str(exc))
    except DataError as exc:
        _fail(EXIT_DATA_ERROR, exc)
    except (NumericError, OSError) as exc:
        _fail(EXIT_NUMERIC_ERROR if isinstance(exc, NumericError) else EXIT_DATA_ERROR, exc)
    click.echo(f"wrote {path} ({len(rows)} fractions x {reps} repetitions)")


def run_experiment2(d: DataSet, kind, params, fraction_list, reps,
                    backend="serial", config=None, seed=0) -> list[dict]:
    """Subsample, cluster, and score each fraction ``reps`` times."""
    from . import parallel, serial

    config = config or KernelConfig()
    rows = []
    for fraction in fraction_list:
        aris, jacs = [], []
        for rep in range(reps):
            rep_seed = seed + 7919 * rep
            sub = subsample_balanced(d, SubsampleSpec(fraction, seed=rep_seed))
            if backend == "parallel":
                labels, _, _ = parallel.cluster(sub, kind, params, config, seed=rep_seed)
            else:
                labels, _, _ = serial.cluster(sub, kind, params, seed=rep_seed)
            table = contingency(sub.labels, labels)
            aris.append(adjusted_rand_index(table))
            jacs.append(jaccard_index(table))
        rows.append({
            "fraction": fraction,
            "ari_mean": sum(aris) / reps,
            "ari_std": math.sqrt(sum((a - sum(aris) / reps) ** 2 for a in aris) / reps),
            "jaccard_mean": sum(jacs) / reps,
            "jaccard_std": math.sqrt(sum((j - sum(jacs) / reps) ** 2 for j in jacs) / reps),
        })
    return rows


@main.command("generate")
@click.option("--kind", "gen_kind", type=click.Choice(KINDS), required=True)
@click.option("--n", default=1000, show_default=True)
@click.option("--noise", default=0.05, show_default=True)
@click.option("--components", default=3, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True,
              help="Destination CSV (labels in the last column).")
def generate_cmd(gen_kind, n, noise, components, seed, out_path) -> None:
    """Write a synthetic labelled dataset to CSV."""
    try:
        d = generate(GeneratorSpec(gen_kind, n=n, noise=noise, seed=seed,
                                   components=components))
        out_path.parent.mkdir(parents=True, exist_ok=True)
        write_csv(d, out_path)
    except (DataError, NumericError, OSError) as exc:
        _fail(EXIT_NUMERIC_ERROR if isinstance(exc, NumericError) else EXIT_DATA_ERROR, exc)
    click.echo(f"wrote {out_path} ({d.n} points, {d.n_classes} classes)")


if __name__ == "__main__":
    main()
