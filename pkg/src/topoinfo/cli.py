"""Command-line surface: shape generation, estimation, persistence, nulls.

Every command is deterministic given its --seed and inputs, and exits 0 on
success, 2 on validation errors, 3 on parse errors, 4 on numerical
degeneracy.  Defaults can be supplied through TOPOINFO_* environment
variables (e.g. TOPOINFO_OINFO_K=5).
"""

import functools
import json
import math
import sys
from itertools import combinations
from multiprocessing import get_context

import click
import numpy as np

from . import manifolds
from .cloud import load_cloud_csv, save_cloud_csv
from .errors import CsvParseError, DegenerateInputError, InvalidArgumentError
from .experiments import load_shape_expectations, run_shape_table
from .homology import FiltrationSpec, persistence_summary, rips_persistence, subsample
from .info import info_summary
from .manifolds import RotationSpec, pca_rotate
from .neighbors import DEFAULT_JITTER, DEFAULT_K, distance_matrix
from .stats import MultiSeries, classify_triad, null_ensemble, spearman

EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_DEGENERATE = 4


def _mapped_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except CsvParseError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(EXIT_PARSE)
        except InvalidArgumentError as exc:
            click.echo(f"invalid argument: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except DegenerateInputError as exc:
            click.echo(f"degenerate input: {exc}", err=True)
            sys.exit(EXIT_DEGENERATE)

    return wrapper


def _emit(payload, out):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


_SHAPE_PARAMS = {
    "line": set(),
    "plane": set(),
    "sphere": {"radius"},
    "ball": {"radius"},
    "torus": {"major_r", "minor_r", "hollow"},
    "torus-knot": {"p", "q", "ring_radius", "z_scale"},
}


def _reject_foreign_params(shape):
    """Explicitly-passed parameters must belong to the chosen shape."""
    ctx = click.get_current_context()
    allowed = _SHAPE_PARAMS[shape]
    shape_specific = set().union(*_SHAPE_PARAMS.values())
    for name in shape_specific - allowed:
        if ctx.get_parameter_source(name) == click.core.ParameterSource.COMMANDLINE:
            raise InvalidArgumentError(
                f"--{name.replace('_', '-')} does not apply to shape {shape!r}"
            )


@click.group(context_settings={"auto_envvar_prefix": "TOPOINFO"})
@click.version_option(package_name="topoinfo")
def main():
    """Higher-order information and Rips persistence for point clouds."""


@main.command()
@click.argument("shape", type=click.Choice(
    ["line", "plane", "sphere", "ball", "torus", "torus-knot"]))
@click.option("--n", default=10000, show_default=True, help="Number of samples.")
@click.option("--seed", default=0, show_default=True)
@click.option("--radius", default=1.0, show_default=True, help="Sphere/ball radius.")
@click.option("--major-r", default=1.0, show_default=True, help="Torus major radius.")
@click.option("--minor-r", default=0.5, show_default=True, help="Torus minor radius.")
@click.option("--hollow/--solid", default=True, show_default=True,
              help="Torus surface vs filled tube.")
@click.option("--p", default=2, show_default=True, help="Knot winding around the axis.")
@click.option("--q", default=3, show_default=True, help="Knot winding around the tube.")
@click.option("--ring-radius", default=2.0, show_default=True, help="Knot carrier ring radius.")
@click.option("--z-scale", default=1.0, show_default=True, help="Knot carrier tube height.")
@click.option("--rotate", default=0.0, show_default=True,
              help="Euler angle (radians) applied about each axis in turn.")
@click.option("--header/--no-header", default=False, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def generate(shape, n, seed, radius, major_r, minor_r, hollow, p, q,
             ring_radius, z_scale, rotate, header, out):
    """Sample a synthetic shape and write it as CSV."""
    _reject_foreign_params(shape)
    if shape == "line":
        cloud = manifolds.sample_line(n, seed)
    elif shape == "plane":
        cloud = manifolds.sample_plane(n, seed)
    elif shape == "sphere":
        cloud = manifolds.sample_sphere(n, radius, seed)
    elif shape == "ball":
        cloud = manifolds.sample_ball(n, radius, seed)
    elif shape == "torus":
        cloud = manifolds.sample_torus(n, major_r, minor_r, hollow, seed)
    else:
        cloud = manifolds.sample_torus_knot(
            n, p, q, seed, ring_radius=ring_radius, z_scale=z_scale
        )
    if rotate:
        cloud = manifolds.rotate_euler(cloud, RotationSpec(rotate, rotate, rotate))
    save_cloud_csv(cloud, out, header=header)


@main.command()
@click.argument("csv_in", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", default=DEFAULT_K, show_default=True)
@click.option("--jitter", default=DEFAULT_JITTER, show_default=True)
@click.option("--jitter-seed", default=0, show_default=True)
@click.option("--pca", is_flag=True, help="PCA-rotate before estimating.")
@click.option("--convention", default="add-one", show_default=True,
              type=click.Choice(["add-one", "raw"]))
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def oinfo(csv_in, k, jitter, jitter_seed, pca, convention, out):
    """Information summary (TC, DTC, O, S) of a CSV point cloud."""
    cloud = load_cloud_csv(csv_in)
    payload = {}
    if pca:
        result = pca_rotate(cloud)
        cloud = result.rotated
        payload["explained_variance_ratio"] = [
            float(v) for v in result.explained_variance_ratio
        ]
    summary = info_summary(
        cloud, k, jitter=jitter, jitter_seed=jitter_seed, convention=convention
    )
    payload = {**summary.to_dict(), **payload}
    _emit(payload, out)


@main.command()
@click.argument("csv_in", type=click.Path(exists=True, dir_okay=False))
@click.option("--metric", default="chebyshev", show_default=True,
              type=click.Choice(["chebyshev", "euclidean"]))
@click.option("--max-dim", default=2, show_default=True)
@click.option("--threshold", default=None, type=float,
              help="Filtration cutoff; defaults to the enclosing radius.")
@click.option("--subsample-cap", default=512, show_default=True)
@click.option("--seed", default=0, show_default=True, help="Subsampling seed.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def persist(csv_in, metric, max_dim, threshold, subsample_cap, seed, out):
    """Rips persistence diagram and per-dimension summaries of a CSV cloud."""
    cloud = load_cloud_csv(csv_in)
    sub = subsample(cloud, subsample_cap, seed=seed)
    spec = FiltrationSpec(
        max_homology_dim=max_dim, threshold=threshold, subsample_cap=subsample_cap
    )
    diagram = rips_persistence(distance_matrix(sub, metric), spec)
    payload = diagram.to_dict()
    payload["summaries"] = [
        persistence_summary(diagram, dim).to_dict() for dim in range(max_dim + 1)
    ]
    payload["n_points"] = int(sub.shape[0])
    _emit(payload, out)


@main.command()
@click.argument("csv_in", type=click.Path(exists=True, dir_okay=False))
@click.option("--triad", required=True, help="Three channel indices, e.g. 0,1,2.")
@click.option("--draws", default=1000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--k", default=DEFAULT_K, show_default=True)
@click.option("--jitter", default=DEFAULT_JITTER, show_default=True)
@click.option("--segments", default="0",
              help="Comma-separated segment start indices (default one segment).")
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def nulltest(csv_in, triad, draws, seed, k, jitter, segments, out):
    """Circular-shift significance test for one triad of channels."""
    series = load_cloud_csv(csv_in)
    if draws < 1:
        raise InvalidArgumentError(f"draws must be >= 1, got {draws}")
    try:
        triad_idx = tuple(int(part) for part in triad.split(","))
    except ValueError:
        raise InvalidArgumentError(f"triad must be three integers, got {triad!r}") from None
    bounds = tuple(int(part) for part in segments.split(","))
    ms = MultiSeries(series, bounds)
    if len(triad_idx) != 3 or len(set(triad_idx)) != 3:
        raise InvalidArgumentError(f"triad must have 3 distinct indices, got {triad!r}")
    if min(triad_idx) < 0 or max(triad_idx) >= series.shape[1]:
        raise InvalidArgumentError(
            f"triad {triad_idx} out of range for {series.shape[1]} channels"
        )
    cloud = series[:, list(triad_idx)]
    empirical = info_summary(cloud, k, jitter=jitter, jitter_seed=seed).o
    ensemble = null_ensemble(ms, triad_idx, k, draws, seed, jitter=jitter)
    result = classify_triad(empirical, ensemble)
    payload = {
        "triad": list(triad_idx),
        "o": result.empirical_o,
        "z": result.z,
        "label": result.label,
        "null_mean": ensemble.mean,
        "null_sd": ensemble.sd,
        "n_draws": draws,
        "seed": seed,
    }
    _emit(payload, out)


@main.command(name="experiment-shapes")
@click.option("--n", default=None, type=int, help="Samples per shape (default from config).")
@click.option("--k", default=None, type=int)
@click.option("--seed", default=None, type=int)
@click.option("--subsample-cap", default=512, show_default=True)
@click.option("--metric", default="chebyshev", show_default=True,
              type=click.Choice(["chebyshev", "euclidean"]))
@click.option("--persistence/--no-persistence", default=True, show_default=True)
@click.option("--jitter", default=DEFAULT_JITTER, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def experiment_shapes(n, k, seed, subsample_cap, metric, persistence, jitter, out):
    """Reproduce the eight-shape table and grade it against published values."""
    rows, orderings = run_shape_table(
        n, k, seed,
        subsample_cap=subsample_cap,
        include_persistence=persistence,
        metric=metric,
        jitter=jitter,
    )
    header = f"{'shape':<16}{'o_raw':>9}{'o_pca':>9}{'pc1':>7}{'h2_n':>6}{'h2_avg':>9}  status"
    click.echo(header, err=True)
    for row in rows:
        h2n = "-" if row.h2_count is None else str(row.h2_count)
        h2a = "-" if row.h2_avg_persistence is None else f"{row.h2_avg_persistence:.3f}"
        status = "pass" if row.passed else "FAIL " + ",".join(
            name for name, ok in row.checks.items() if not ok
        )
        click.echo(
            f"{row.name:<16}{row.o_raw:>+9.3f}{row.o_pca:>+9.3f}"
            f"{row.pc1_variance:>7.3f}{h2n:>6}{h2a:>9}  {status}",
            err=True,
        )
    for name, ok in orderings.items():
        click.echo(f"ordering {name}: {'pass' if ok else 'FAIL'}", err=True)
    payload = {
        "rows": [row.to_dict() for row in rows],
        "orderings": orderings,
        "all_passed": all(r.passed for r in rows) and all(orderings.values()),
    }
    _emit(payload, out)


def _correlate_one(args):
    (triad, series, k, jitter, seed, draws, cap, segments) = args
    cloud = series[:, list(triad)]
    summary = info_summary(cloud, k, jitter=jitter, jitter_seed=seed)
    pca = pca_rotate(cloud)
    summary_pca = info_summary(pca.rotated, k, jitter=jitter, jitter_seed=seed)
    sub = subsample(cloud, cap, seed=seed)
    diag = rips_persistence(distance_matrix(sub, "chebyshev"),
                            FiltrationSpec(subsample_cap=cap))
    h2 = persistence_summary(diag, 2)
    sub_pca = subsample(pca.rotated, cap, seed=seed)
    diag_pca = rips_persistence(distance_matrix(sub_pca, "chebyshev"),
                                FiltrationSpec(subsample_cap=cap))
    h2_pca = persistence_summary(diag_pca, 2)
    ms = MultiSeries(series, segments)
    ensemble = null_ensemble(ms, triad, k, draws, seed, jitter=jitter)
    sig = classify_triad(summary.o, ensemble)
    return {
        "triad": list(triad),
        "o": summary.o,
        "o_norm": summary.o_norm,
        "tc": summary.tc,
        "dtc": summary.dtc,
        "o_pca": summary_pca.o,
        "o_norm_pca": summary_pca.o_norm,
        "pc1_variance": float(pca.explained_variance_ratio[0]),
        "h2_count": h2.count,
        "h2_avg_persistence": h2.avg_persistence,
        "h2_count_pca": h2_pca.count,
        "h2_avg_persistence_pca": h2_pca.avg_persistence,
        "z": sig.z,
        "label": sig.label,
    }


@main.command(name="experiment-correlate")
@click.argument("csv_in", type=click.Path(exists=True, dir_okay=False))
@click.option("--triad-cap", default=None, type=int,
              help="Evaluate at most this many triads.")
@click.option("--random-triads", is_flag=True,
              help="Sample triads at random (seeded) instead of taking the "
                   "lexicographic prefix.")
@click.option("--draws", default=100, show_default=True)
@click.option("--k", default=DEFAULT_K, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--jitter", default=DEFAULT_JITTER, show_default=True)
@click.option("--subsample-cap", default=256, show_default=True)
@click.option("--segments", default="0")
@click.option("--workers", default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
@_mapped_errors
def experiment_correlate(csv_in, triad_cap, random_triads, draws, k, seed, jitter,
                         subsample_cap, segments, workers, out):
    """Per-triad information, topology, and significance, plus the
    cross-measure Spearman correlations within each significance class."""
    series = load_cloud_csv(csv_in)
    n_channels = series.shape[1]
    if n_channels < 3:
        raise InvalidArgumentError(f"need at least 3 channels, got {n_channels}")
    bounds = tuple(int(part) for part in segments.split(","))
    triads = list(combinations(range(n_channels), 3))
    if triad_cap is not None and triad_cap < len(triads):
        if random_triads:
            from . import _rng

            g = _rng.stream(seed, _rng.TRIAD_SAMPLE)
            keep = sorted(g.choice(len(triads), size=triad_cap, replace=False))
            triads = [triads[i] for i in keep]
        else:
            triads = triads[:triad_cap]
    tasks = [
        (triad, series, k, jitter, seed, draws, subsample_cap, bounds)
        for triad in triads
    ]
    if workers > 1:
        with get_context("fork").Pool(workers) as pool:
            results = pool.map(_correlate_one, tasks)
    else:
        results = [_correlate_one(t) for t in tasks]
    results.sort(key=lambda row: tuple(row["triad"]))

    info_keys = ("o_norm", "tc", "dtc")
    topo_keys = ("h2_count", "h2_avg_persistence", "pc1_variance")
    correlations = {}
    for label in ("redundant", "synergistic", "nonsignificant"):
        group = [r for r in results if r["label"] == label and r["o_norm"] is not None]
        block = {}
        if len(group) >= 3:
            for ikey in info_keys:
                for tkey in topo_keys:
                    try:
                        corr = spearman(
                            [r[ikey] for r in group], [r[tkey] for r in group]
                        )
                    except DegenerateInputError:
                        continue
                    block[f"{ikey}~{tkey}"] = {
                        "rho": corr.rho,
                        "p_value": corr.p_value,
                        "n": corr.n,
                    }
        correlations[label] = block
    payload = {
        "n_triads": len(results),
        "rows": results,
        "correlations": correlations,
        "seed": seed,
        "draws": draws,
    }
    _emit(payload, out)


if __name__ == "__main__":
    main()
