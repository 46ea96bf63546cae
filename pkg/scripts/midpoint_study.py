"""Summed value at the jumps of the built-in functions as alpha shrinks.

Prints |value - midpoint| for each jump, order r and alpha = pi/2^j, and
the kernel mass left outside a fixed neighbourhood for comparison.
"""

import argparse
import math
from dataclasses import dataclass

from sigmasum.analysis import jump_convergence_study, kernel_mass_outside
from sigmasum.engine import Sawtooth, Shifted, SquareWave
from sigmasum.kernels import DeKernel


@dataclass
class MidpointConfig:
    max_r: int = 4
    levels: int = 6
    delta: float = 0.25


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-r", type=int, default=4)
    p.add_argument("--levels", type=int, default=6, help="alpha runs over pi/2^1 .. pi/2^levels")
    p.add_argument("--delta", type=float, default=0.25)
    a = p.parse_args(argv)
    cfg = MidpointConfig(a.max_r, a.levels, a.delta)

    alphas = [math.pi / 2**j for j in range(1, cfg.levels + 1)]
    fns = {"square": SquareWave(), "sawtooth": Sawtooth(), "square shifted by 1": Shifted(SquareWave(), 1.0)}
    print(f"{'function':<22}{'t0':>9}{'r':>3}{'alpha':>12}{'|err|':>12}{'mass>delta':>12}")
    for name, fn in fns.items():
        for jump in fn.jumps():
            for r in range(1, cfg.max_r + 1):
                for rep in jump_convergence_study(fn, r, alphas, jump.location):
                    alpha = rep.parameters["alpha"]
                    mass = kernel_mass_outside(DeKernel(r, alpha), cfg.delta)
                    print(f"{name:<22}{jump.location:>9.4f}{r:>3}{alpha:>12.5f}{rep.observed:>12.3g}{mass:>12.3g}")


if __name__ == "__main__":
    main()
