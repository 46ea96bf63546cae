"""Overshoot of the summed square wave over a grid of (r, alpha, N).

    python3 scripts/gibbs_study.py --N 127 511 --r 1 2 3 4 --out gibbs.csv
"""

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field

from sigmasum.analysis import gibbs_overshoot, wilbraham_gibbs_overshoot
from sigmasum.engine import SquareWave
from sigmasum.factors import Identity, SigmaRAlpha


@dataclass
class GibbsConfig:
    Ns: list = field(default_factory=lambda: [127, 511])
    rs: list = field(default_factory=lambda: [1, 2, 3, 4])
    alpha_divisors: list = field(default_factory=lambda: [8, 16, 32])
    M: int = 8192
    out: str = "-"


def run(cfg: GibbsConfig):
    rows = []
    for N in cfg.Ns:
        rows.append(("identity", "", "", N, gibbs_overshoot(SquareWave(), Identity(), N, cfg.M)))
        for r in cfg.rs:
            for d in cfg.alpha_divisors:
                ov = gibbs_overshoot(SquareWave(), SigmaRAlpha(r, math.pi / d), N, cfg.M)
                rows.append(("sigma", r, f"pi/{d}", N, ov))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--N", type=int, nargs="+", default=[127, 511])
    p.add_argument("--r", type=int, nargs="+", default=[1, 2, 3, 4])
    p.add_argument("--alpha-divisors", type=int, nargs="+", default=[8, 16, 32])
    p.add_argument("--M", type=int, default=8192)
    p.add_argument("--out", default="-")
    a = p.parse_args(argv)
    cfg = GibbsConfig(a.N, a.r, a.alpha_divisors, a.M, a.out)

    rows = run(cfg)
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["method", "r", "alpha", "N", "overshoot"])
    for row in rows:
        w.writerow([*row[:4], format(row[4], ".6g")])
    if fh is not sys.stdout:
        fh.close()
    print(f"# raw-sum limit 2 Si(pi)/pi - 1 = {wilbraham_gibbs_overshoot():.6f}", file=sys.stderr)


if __name__ == "__main__":
    main()
