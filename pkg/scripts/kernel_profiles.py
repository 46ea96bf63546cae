"""Tabulate De kernels (closed form and truncated series) and Poisson kernels.

Writes one CSV per family; plot with any tool that reads CSV.

    python3 scripts/kernel_profiles.py --outdir profiles
"""

import argparse
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from sigmasum.kernels import DeKernel, PoissonKernel, de_kernel_closed, de_kernel_spectral, kernel_eval


@dataclass
class ProfileConfig:
    outdir: Path = Path("profiles")
    points: int = 801
    alpha: float = math.pi / 4
    rs: list = field(default_factory=lambda: [1, 2, 3, 4, 5])
    poisson_rs: list = field(default_factory=lambda: [0.5, 0.8, 0.9, 0.95])
    N: int = 256


def write_de(cfg: ProfileConfig, t: np.ndarray):
    cols, names = [t], ["t"]
    for r in cfg.rs:
        spec = DeKernel(r, cfg.alpha)
        cols += [de_kernel_closed(spec, t), de_kernel_spectral(spec, t, cfg.N)]
        names += [f"closed_r{r}", f"series_r{r}_N{cfg.N}"]
    np.savetxt(cfg.outdir / "de_kernels.csv", np.column_stack(cols), delimiter=",", header=",".join(names), comments="")


def write_poisson(cfg: ProfileConfig, t: np.ndarray):
    cols = [t] + [kernel_eval(PoissonKernel(r), t) for r in cfg.poisson_rs]
    names = ["t"] + [f"r{r}" for r in cfg.poisson_rs]
    np.savetxt(cfg.outdir / "poisson_kernels.csv", np.column_stack(cols), delimiter=",", header=",".join(names), comments="")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--outdir", type=Path, default=Path("profiles"))
    p.add_argument("--points", type=int, default=801)
    p.add_argument("--alpha", type=float, default=math.pi / 4)
    p.add_argument("--N", type=int, default=256, help="series truncation for the spectral De columns")
    a = p.parse_args(argv)
    cfg = ProfileConfig(outdir=a.outdir, points=a.points, alpha=a.alpha, N=a.N)

    cfg.outdir.mkdir(parents=True, exist_ok=True)
    t = np.linspace(-math.pi, math.pi, cfg.points)
    write_de(cfg, t)
    write_poisson(cfg, t)
    print(f"wrote {cfg.outdir}/de_kernels.csv and {cfg.outdir}/poisson_kernels.csv")


if __name__ == "__main__":
    main()
