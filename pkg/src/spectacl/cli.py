"""Command-line harness: single clustering runs and parameter/noise sweeps.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import dataio, metrics, svg
from .datagen import SHAPES, SyntheticSpec, generate
from .graph import (
    SparseSymmetricMatrix,
    adjacency_from_edge_list,
    choose_epsilon,
    epsilon_graph,
    knn_graph,
    symmetric_normalize,
)
from .kmeans import Clustering
from .pipelines import (
    DbscanConfig,
    SpectaclConfig,
    auto_epsilon,
    dbscan,
    spectacl,
    spectral_clustering,
)

ALGORITHMS = ("spectacl", "spectacl-norm", "sc", "dbscan")
SWEEP_AXES = ("noise", "epsilon", "k", "d")
# which algorithms consume which swept parameter
AXIS_ALGORITHMS = {
    "noise": ALGORITHMS,
    "epsilon": ("spectacl", "dbscan"),
    "k": ("spectacl-norm", "sc"),
    "d": ("spectacl", "spectacl-norm"),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple
    algorithms: tuple
    base: SyntheticSpec
    repeats: int = 5
    r: int = 2
    d: int = 50
    knn: int = 10
    min_pts: int = 10
    epsilon: float | None = None  # None: auto per dataset
    restarts: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise UsageError(f"unknown sweep axis {self.axis!r}")
        if not self.values:
            raise UsageError("sweep needs at least one value")
        if self.repeats < 1:
            raise UsageError("repeats must be >= 1")
        bad = [a for a in self.algorithms if a not in AXIS_ALGORITHMS[self.axis]]
        if bad:
            raise UsageError(
                f"algorithms {bad} do not consume the swept parameter {self.axis!r}"
            )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cluster",
        description="Run averagely-dense spectral clustering and baselines on "
        "generated shapes, CSV point files, or edge-list graphs.",
    )
    src = p.add_argument_group("data source (choose one)")
    src.add_argument("--gen", choices=SHAPES, help="generate a synthetic dataset")
    src.add_argument("--in", dest="infile", metavar="FILE", help="CSV of points, one row per point")
    src.add_argument("--graph", metavar="FILE", help="whitespace edge list 'j l [w]'")
    p.add_argument("--labeled", action="store_true",
                   help="the CSV's trailing column is the ground-truth class")
    p.add_argument("--delimiter", default=",", help="CSV field delimiter (default ,)")
    p.add_argument("--header", action="store_true", help="CSV has a header row")

    p.add_argument("--algo", default=None,
                   help="algorithm (default spectacl), or a comma list of "
                        "%s when sweeping (default: all for the axis)" % ",".join(ALGORITHMS))
    p.add_argument("-r", type=int, default=None, help="number of clusters")
    p.add_argument("-d", type=int, default=50, help="embedding dimension (default 50)")
    p.add_argument("--eps", default="auto",
                   help="ball radius, or 'auto' for the 90%%/10-neighbor rule (default auto)")
    p.add_argument("--knn", type=int, default=10, help="nearest-neighbor count (default 10)")
    p.add_argument("--min-pts", type=int, default=10, dest="min_pts",
                   help="dbscan core threshold (default 10)")
    p.add_argument("--noise", type=float, default=0.1,
                   help="generator noise sigma (default 0.1)")
    p.add_argument("--m", type=int, default=1500, help="generated point count (default 1500)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--restarts", type=int, default=10, help="k-means restarts (default 10)")
    p.add_argument("--repeats", type=int, default=5, help="datasets per sweep point (default 5)")
    p.add_argument("--sweep", choices=SWEEP_AXES, help="sweep this axis instead of a single run")
    p.add_argument("--values", help="comma-separated sweep values")
    p.add_argument("--out", metavar="FILE", help="labels CSV (run) or sweep CSV (sweep)")
    p.add_argument("--plot", metavar="FILE.svg", help="scatter (run) or F-curve chart (sweep)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.sweep:
            run_sweep(build_sweep_spec(args), out=args.out, plot=args.plot)
        else:
            run_cluster(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _parse_eps(text):
    if text == "auto":
        return None
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"--eps expects 'auto' or a number, got {text!r}") from None
    if value <= 0:
        raise UsageError(f"--eps must be positive, got {value}")
    return value


def _load_input(args):
    """Returns (data, adjacency, truth); exactly one of data/adjacency is set."""
    sources = [s for s in (args.gen, args.infile, args.graph) if s]
    if len(sources) != 1:
        raise UsageError("choose exactly one of --gen, --in, --graph")
    if args.gen:
        spec = SyntheticSpec(shape=args.gen, m=args.m, noise=args.noise, seed=args.seed)
        data, truth = generate(spec)
        return data, None, truth
    if args.infile:
        if args.labeled:
            data, labels = dataio.load_labeled_points(
                args.infile, delimiter=args.delimiter, has_header=args.header
            )
            classes = np.unique(labels)
            remap = {c: i for i, c in enumerate(classes)}
            truth = Clustering(
                labels=np.array([remap[v] for v in labels]), n_clusters=len(classes)
            )
            return data, None, truth
        data = dataio.load_points(args.infile, delimiter=args.delimiter, has_header=args.header)
        return data, None, None
    adjacency = adjacency_from_edge_list(dataio.load_edge_list(args.graph))
    return None, adjacency, None


def _run_algorithm(name, data, adjacency, *, r, d, knn, min_pts, epsilon,
                   restarts, seed):
    """Dispatch one algorithm; returns (clustering, eval_adjacency, chosen_epsilon)."""
    if name not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {name!r}, expected one of {ALGORITHMS}")
    if name != "dbscan" and r is None:
        raise UsageError(f"{name} requires -r")
    if name == "dbscan":
        if data is None:
            raise UsageError("dbscan needs point data, not a graph")
        eps = epsilon if epsilon is not None else choose_epsilon(data)
        clustering = dbscan(data, DbscanConfig(epsilon=eps, min_pts=min_pts))
        return clustering, epsilon_graph(data, eps), eps
    if name == "sc":
        source = data if data is not None else adjacency
        clustering = spectral_clustering(source, r, k=knn, seed=seed, restarts=restarts)
        base = knn_graph(data, knn) if data is not None else adjacency
        return clustering, symmetric_normalize(base), None
    variant = "normalized" if name == "spectacl-norm" else "unnormalized"
    config = SpectaclConfig(
        r=r, variant=variant, epsilon=epsilon, knn=knn, d=d, seed=seed, restarts=restarts
    )
    source = data if data is not None else adjacency
    eps = None
    if variant == "unnormalized" and data is not None:
        eps = epsilon if epsilon is not None else auto_epsilon(data)
        config = SpectaclConfig(
            r=r, variant=variant, epsilon=eps, knn=knn, d=d, seed=seed, restarts=restarts
        )
    clustering = spectacl(source, config)
    if variant == "normalized":
        eval_adj = symmetric_normalize(
            knn_graph(data, knn) if data is not None else adjacency
        )
    else:
        eval_adj = epsilon_graph(data, eps) if data is not None else adjacency
    return clustering, eval_adj, eps


def run_cluster(args) -> None:
    data, adjacency, truth = _load_input(args)
    algo = args.algo or "spectacl"
    if "," in algo:
        raise UsageError("a single run takes one --algo; comma lists are for --sweep")
    epsilon = _parse_eps(args.eps)
    start = time.perf_counter()
    clustering, eval_adj, chosen_eps = _run_algorithm(
        algo, data, adjacency,
        r=args.r, d=args.d, knn=args.knn, min_pts=args.min_pts,
        epsilon=epsilon, restarts=args.restarts, seed=args.seed,
    )
    runtime_ms = (time.perf_counter() - start) * 1000.0

    fields = [f"algorithm={algo}", f"m={clustering.m}", f"clusters={clustering.n_clusters}"]
    if chosen_eps is not None:
        tag = " (auto)" if epsilon is None else ""
        fields.append(f"epsilon={chosen_eps:.6g}{tag}")
    try:
        objective = metrics.average_density_objective(clustering, eval_adj)
        fields.append(f"objective={objective:.6g}")
    except metrics.MetricError:
        fields.append("objective=nan")
    if truth is not None:
        fields.append(f"F={metrics.f_measure(clustering, truth).total_f:.6g}")
        fields.append(f"NMI={metrics.nmi(clustering, truth):.6g}")
    if clustering.has_noise:
        fields.append(f"noise_points={int(np.sum(clustering.labels == -1))}")
    fields.append(f"runtime_ms={runtime_ms:.1f}")
    print(" ".join(fields))

    if args.out:
        dataio.write_clustering(args.out, clustering)
    if args.plot:
        if data is None:
            raise UsageError("--plot needs point data")
        svg.scatter_svg(args.plot, data.values, clustering.labels,
                        title=f"{algo} ({clustering.n_clusters} clusters)")


def build_sweep_spec(args) -> SweepSpec:
    if not args.gen:
        raise UsageError("--sweep requires --gen (sweeps run on generated data)")
    if not args.values:
        raise UsageError("--sweep requires --values")
    try:
        values = tuple(float(v) for v in args.values.split(","))
    except ValueError:
        raise UsageError(f"bad --values list: {args.values!r}") from None
    if args.sweep in ("k", "d"):
        if any(v != int(v) for v in values):
            raise UsageError(f"axis {args.sweep!r} takes integer values")
        values = tuple(int(v) for v in values)
    if args.algo:
        algorithms = tuple(args.algo.split(","))
        unknown = [a for a in algorithms if a not in ALGORITHMS]
        if unknown:
            raise UsageError(f"unknown algorithms {unknown}, expected from {ALGORITHMS}")
    else:
        algorithms = AXIS_ALGORITHMS[args.sweep]
    base = SyntheticSpec(shape=args.gen, m=args.m, noise=args.noise, seed=args.seed)
    if any(a in ("spectacl", "spectacl-norm", "sc") for a in algorithms) and args.r is None:
        raise UsageError("sweeping a spectral algorithm requires -r")
    return SweepSpec(
        axis=args.sweep, values=values, algorithms=algorithms, base=base,
        repeats=args.repeats, r=args.r if args.r is not None else 2,
        d=args.d, knn=args.knn, min_pts=args.min_pts,
        epsilon=_parse_eps(args.eps), restarts=args.restarts, seed=args.seed,
    )


def dataset_seed(base_seed: int, axis: str, axis_index: int, repeat: int) -> int:
    """Seed for the dataset at one sweep grid point.

    The noise axis changes the data itself, so its datasets vary with the axis
    index; parameter axes (epsilon, k, d) reuse the same `repeats` datasets at
    every axis value so that curves reflect the parameter, not resampling.
    """
    if axis == "noise":
        entropy = [base_seed, axis_index, repeat]
    else:
        entropy = [base_seed, repeat]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def sweep_rows(spec: SweepSpec):
    """Run the sweep grid; yields one row per (axis value, algorithm, repeat)."""
    for axis_index, value in enumerate(spec.values):
        for algo in spec.algorithms:
            for repeat in range(spec.repeats):
                noise = value if spec.axis == "noise" else spec.base.noise
                gen_spec = SyntheticSpec(
                    shape=spec.base.shape, m=spec.base.m, noise=noise,
                    seed=dataset_seed(spec.base.seed, spec.axis, axis_index, repeat),
                )
                data, truth = generate(gen_spec)
                d = value if spec.axis == "d" else spec.d
                knn = value if spec.axis == "k" else spec.knn
                eps = value if spec.axis == "epsilon" else spec.epsilon
                start = time.perf_counter()
                clustering, _, _ = _run_algorithm(
                    algo, data, None,
                    r=spec.r, d=d, knn=knn, min_pts=spec.min_pts,
                    epsilon=eps, restarts=spec.restarts, seed=spec.seed,
                )
                runtime_ms = (time.perf_counter() - start) * 1000.0
                f_val = metrics.f_measure(clustering, truth).total_f
                nmi_val = metrics.nmi(clustering, truth)
                yield (spec.axis, value, algo, repeat, f_val, nmi_val, runtime_ms)


SWEEP_HEADER = ("axis", "axis_value", "algorithm", "repeat", "f_measure", "nmi", "runtime_ms")


def run_sweep(spec: SweepSpec, out=None, plot=None) -> list[tuple]:
    if out is None:
        raise UsageError("--sweep requires --out FILE for the result table")
    rows = []
    try:
        for row in sweep_rows(spec):
            rows.append(row)
    except Exception:
        partial = rows + [(spec.axis, "", "incomplete", "", "", "", "")]
        dataio.write_csv_table(out, SWEEP_HEADER, partial)
        raise
    rows.extend(_aggregate_rows(spec, rows))
    dataio.write_csv_table(out, SWEEP_HEADER, rows)
    if plot:
        _plot_sweep(spec, rows, plot)
    return rows


def _aggregate_rows(spec: SweepSpec, rows):
    extra = []
    for value in spec.values:
        for algo in spec.algorithms:
            sel = [r for r in rows if r[1] == value and r[2] == algo]
            fs = np.array([r[4] for r in sel])
            nmis = np.array([r[5] for r in sel])
            times = np.array([r[6] for r in sel])
            extra.append((spec.axis, value, algo, "mean",
                          float(fs.mean()), float(nmis.mean()), float(times.mean())))
            extra.append((spec.axis, value, algo, "std",
                          float(fs.std()), float(nmis.std()), float(times.std())))
    return extra


def _plot_sweep(spec: SweepSpec, rows, path):
    series = {}
    for algo in spec.algorithms:
        means = [r[4] for r in rows if r[2] == algo and r[3] == "mean"]
        stds = [r[4] for r in rows if r[2] == algo and r[3] == "std"]
        series[algo] = (means, stds)
    svg.line_chart_svg(
        path, list(spec.values), series,
        x_label=spec.axis, y_label="F-measure",
        title=f"{spec.base.shape}: F vs {spec.axis} ({spec.repeats} repeats)",
    )


if __name__ == "__main__":
    sys.exit(main())
