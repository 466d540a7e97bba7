"""Parameter-sensitivity sweeps: F-measure against the embedding dimension,
the ball radius, and the neighbor count, at a fixed noise level."""

import argparse
from pathlib import Path

from spectacl.cli import SweepSpec, run_sweep
from spectacl.datagen import SyntheticSpec

AXES = {
    "d": (("spectacl", "spectacl-norm"), (2, 10, 25, 50, 75, 100)),
    "epsilon": (("spectacl", "dbscan"), (0.1, 0.2, 0.3, 0.4, 0.6, 0.8)),
    "k": (("spectacl-norm", "sc"), (2, 5, 10, 20, 40)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="sweep_out")
    ap.add_argument("--shapes", default="moons,circles,blobs")
    ap.add_argument("--axes", default="d,epsilon,k")
    ap.add_argument("--noise", type=float, default=0.1)
    ap.add_argument("--m", type=int, default=1500)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for shape in args.shapes.split(","):
        r = 3 if shape == "blobs" else 2
        for axis in args.axes.split(","):
            algorithms, values = AXES[axis]
            spec = SweepSpec(
                axis=axis,
                values=values,
                algorithms=algorithms,
                base=SyntheticSpec(shape=shape, m=args.m, noise=args.noise, seed=args.seed),
                repeats=args.repeats,
                r=r,
            )
            csv_path = out / f"{axis}_{shape}.csv"
            svg_path = out / f"{axis}_{shape}.svg"
            run_sweep(spec, out=str(csv_path), plot=str(svg_path))
            print(f"{shape}/{axis}: wrote {csv_path} and {svg_path}")


if __name__ == "__main__":
    main()
