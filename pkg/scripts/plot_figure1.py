"""Render the reference densities written by ``qshutter figure1``.

    qshutter figure1 --out fig1
    python3 scripts/plot_figure1.py fig1 [--save fig1/figure1.png]

Needs matplotlib, which is not a package dependency.
"""

import argparse
import json
from pathlib import Path

import numpy as np


def load(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return data[:, 0], data[:, 3]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", type=Path)
    ap.add_argument("--save", type=Path, help="write an image instead of showing a window")
    args = ap.parse_args(argv)

    import matplotlib
    if args.save:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = json.loads((args.directory / "summary.json").read_text())
    t0 = summary["front_time"]
    ts, ds = load(args.directory / "figure1_schrodinger.csv")
    tr, dr = load(args.directory / "figure1_klein_gordon.csv")

    fig, (ax, inset) = plt.subplots(1, 2, figsize=(10, 4))
    early = ts <= 4 * t0
    ax.plot(ts[early] / t0, ds[early], label="Schrodinger")
    ax.plot(tr[early] / t0, dr[early], label="Klein-Gordon")
    ax.set_xlabel("t / t0")
    ax.set_ylabel("|psi|^2")
    ax.legend()

    inset.semilogx(ts[ts > 0], ds[ts > 0], label="Schrodinger")
    inset.semilogx(tr[tr > 0], dr[tr > 0], label="Klein-Gordon")
    inset.axhline(summary["schrodinger_stationary"], color="0.6", lw=0.8, ls="--")
    inset.set_xlabel("t (fs)")
    fig.tight_layout()
    if args.save:
        fig.savefig(args.save, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
