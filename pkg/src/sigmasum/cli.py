"""Command-line front end.

    sigmasum factors  --method sigma --r 2 --alpha 0.7853981633974483 --N 8
    sigmasum kernel   --r 2 --alpha 0.7853981633974483 --M 101
    sigmasum sum      --builtin square --method sigma --r 2 --alpha 0.39269908169872414 --N 512 --M 1024
    sigmasum convolve --builtin sawtooth --kernel de --r 2 --alpha 0.39269908169872414 --M 256
    sigmasum gibbs    --builtin square --method identity --N 511
    sigmasum verify   --suite all

Angles are radians. Floats are written with 17 significant digits.
Exit status: 0 success, 1 verification failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import analysis, engine, factors, kernels

FAMILY_METHODS = ("identity", "poisson", "sigma", "lanczos")


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    method: Optional[str] = None
    r: Optional[str] = None
    alpha: Optional[float] = None
    n: Optional[int] = None
    N: Optional[int] = None
    M: Optional[int] = None
    kernel: str = "de"
    series: Optional[str] = None
    builtin: Optional[str] = None
    quad_nodes: int = 16
    suite: str = "all"
    timings: bool = False
    output: Optional[str] = None
    format: str = "csv"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _table(cfg: CliConfig, header, rows) -> str:
    if cfg.format == "json":
        return _json([dict(zip(header, row)) for row in rows])
    return _csv(header, rows)


def _need(value, flag: str, what: str):
    if value is None:
        raise UsageError(f"{what} requires {flag}")
    return value


def _int_r(cfg: CliConfig) -> int:
    raw = _need(cfg.r, "--r", cfg.subcommand)
    try:
        val = float(raw)
    except ValueError:
        raise UsageError(f"--r must be a number, got {raw!r}") from None
    if not val.is_integer():
        raise UsageError(f"--r must be a positive integer here, got {raw}")
    return int(val)


def _float_r(cfg: CliConfig) -> float:
    raw = _need(cfg.r, "--r", cfg.subcommand)
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"--r must be a number, got {raw!r}") from None


def build_family(cfg: CliConfig) -> factors.FactorFamily:
    method = cfg.method or "identity"
    if method == "identity":
        return factors.Identity()
    if method == "poisson":
        return factors.PoissonAbel(_float_r(cfg))
    if method == "sigma":
        return factors.SigmaRAlpha(_int_r(cfg), _need(cfg.alpha, "--alpha", "method sigma"))
    if method == "lanczos":
        return factors.Lanczos(_need(cfg.n, "--n", "method lanczos"))
    raise UsageError(f"unknown method {method!r}")


def build_kernel(cfg: CliConfig) -> kernels.KernelSpec:
    if cfg.kernel == "poisson":
        return kernels.PoissonKernel(_float_r(cfg))
    return kernels.DeKernel(_int_r(cfg), _need(cfg.alpha, "--alpha", "the De kernel"))


def load_function(cfg: CliConfig) -> engine.FunctionSpec:
    if cfg.builtin and cfg.series:
        raise UsageError("give either --builtin or --series, not both")
    if cfg.series:
        with open(cfg.series) as fh:
            spec = json.load(fh)
        return function_from_json(spec)
    if cfg.builtin:
        return function_from_json({"builtin": cfg.builtin})
    raise UsageError(f"{cfg.subcommand} requires --builtin or --series")


def function_from_json(spec: dict) -> engine.FunctionSpec:
    """``{"builtin": "square"|"sawtooth"}`` or ``{"a0": x, "a": [...], "b": [...]}``."""
    if not isinstance(spec, dict):
        raise UsageError("series spec must be a JSON object")
    if "builtin" in spec:
        name = spec["builtin"]
        if name == "square":
            return engine.SquareWave()
        if name == "sawtooth":
            return engine.Sawtooth()
        raise UsageError(f"unknown builtin {name!r}; expected 'square' or 'sawtooth'")
    if "a0" not in spec:
        raise UsageError("series spec needs 'a0' (and optional 'a', 'b') or 'builtin'")
    return engine.SeriesDefined(engine.TrigSeries(spec["a0"], spec.get("a", []), spec.get("b", [])))


def _positive(value, flag: str) -> int:
    if value is None or value < 1:
        raise UsageError(f"{flag} must be a positive integer")
    return value


# ---------------------------------------------------------------------------


def cmd_factors(cfg: CliConfig) -> tuple[str, int]:
    fam = build_family(cfg)
    N = _positive(cfg.N, "--N")
    mu = factors.factor_table(fam, N)
    return _table(cfg, ["k", "mu_k"], [(k, float(m)) for k, m in enumerate(mu)]), 0


def cmd_kernel(cfg: CliConfig) -> tuple[str, int]:
    spec = build_kernel(cfg)
    if not isinstance(spec, kernels.DeKernel):
        raise UsageError("kernel subcommand evaluates De kernels only")
    M = _positive(cfg.M or 101, "--M")
    if M < 2:
        raise UsageError("--M must be >= 2")
    N = _positive(cfg.N or 4096, "--N")
    t = engine.grid_points(M)
    closed = kernels.de_kernel_closed(spec, t)
    spectral = kernels.de_kernel_spectral(spec, t, N)
    rows = [(float(a), float(b), float(c), float(abs(b - c))) for a, b, c in zip(t, closed, spectral)]
    return _table(cfg, ["t", "De_closed", "De_spectral", "abs_diff"], rows), 0


def cmd_sum(cfg: CliConfig) -> tuple[str, int]:
    fn = load_function(cfg)
    fam = build_family(cfg)
    N = _positive(cfg.N, "--N")
    M = _positive(cfg.M or 1024, "--M")
    g = engine.summed_function(fn, fam, N, M)
    return _table(cfg, ["t", "value"], [(float(a), float(b)) for a, b in zip(g.t, g.samples)]), 0


def cmd_convolve(cfg: CliConfig) -> tuple[str, int]:
    fn = load_function(cfg)
    spec = build_kernel(cfg)
    M = _positive(cfg.M or 1024, "--M")
    t = engine.grid_points(M)
    vals = engine.convolve_with_kernel(fn, spec, t, cfg.quad_nodes)
    return _table(cfg, ["t", "value"], [(float(a), float(b)) for a, b in zip(t, vals)]), 0


def cmd_gibbs(cfg: CliConfig) -> tuple[str, int]:
    fn = load_function(cfg)
    fam = build_family(cfg)
    N = _positive(cfg.N, "--N")
    M = _positive(cfg.M or 8192, "--M")
    ov = analysis.gibbs_overshoot(fn, fam, N, M)
    if cfg.format == "json":
        return _json({"method": fam.describe(), "N": N, "M": M, "overshoot": ov}), 0
    return _csv(["method", "N", "M", "overshoot"], [(fam.describe(), N, M, ov)]), 0


def cmd_verify(cfg: CliConfig) -> tuple[str, int]:
    reports = analysis.run_suite(cfg.suite)
    status = 0 if all(rep.passed for rep in reports) else 1
    if cfg.format == "csv":
        rows = [
            (rep.name, json.dumps(rep.parameters, sort_keys=True), rep.observed, rep.bound, rep.passed)
            for rep in reports
        ]
        return _csv(["name", "parameters", "observed", "bound", "passed"], rows), status
    return _json([rep.to_dict(timings=cfg.timings) for rep in reports]), status


COMMANDS = {
    "factors": cmd_factors,
    "kernel": cmd_kernel,
    "sum": cmd_sum,
    "convolve": cmd_convolve,
    "gibbs": cmd_gibbs,
    "verify": cmd_verify,
}


def run(cfg: CliConfig) -> int:
    """Dispatch ``cfg`` and write its output; returns the exit status."""
    try:
        text, status = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, ValueError) as exc:
        print(f"sigmasum {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"sigmasum {cfg.subcommand}: I/O error: {exc}", file=sys.stderr)
        return 2
    try:
        if cfg.output:
            with open(cfg.output, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except OSError as exc:
        print(f"sigmasum {cfg.subcommand}: I/O error: {exc}", file=sys.stderr)
        return 2
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigmasum", description="Summation of trigonometric series by convergence factors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--method", choices=FAMILY_METHODS, default="identity")
    fam.add_argument("--n", type=int, help="Lanczos order")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--r", help="order (integer) or Poisson parameter in (0, 1)")
    params.add_argument("--alpha", type=float, help="step in radians")

    fnsrc = argparse.ArgumentParser(add_help=False)
    fnsrc.add_argument("--builtin", choices=("square", "sawtooth"))
    fnsrc.add_argument("--series", help="JSON series spec file")

    sub = parser.add_subparsers(dest="subcommand", required=True)
    p = sub.add_parser("factors", parents=[common, fam, params], help="factor table k,mu_k")
    p.add_argument("--N", type=int, required=True)

    p = sub.add_parser("kernel", parents=[common, params], help="De kernel closed vs spectral")
    p.add_argument("--M", type=int, default=101)
    p.add_argument("--N", type=int, default=4096)

    p = sub.add_parser("sum", parents=[common, fam, params, fnsrc], help="factor-summed series on a grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, default=1024)

    p = sub.add_parser("convolve", parents=[common, params, fnsrc], help="kernel convolution on a grid")
    p.add_argument("--kernel", choices=("de", "poisson"), default="de")
    p.add_argument("--M", type=int, default=1024)
    p.add_argument("--quad-nodes", dest="quad_nodes", type=int, default=16)

    p = sub.add_parser("gibbs", parents=[common, fam, params, fnsrc], help="overshoot of the summed series")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, default=8192)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("all", *analysis.SUITES), default="all")
    p.add_argument("--timings", action="store_true", help="include runtime_ms (output no longer byte-stable)")
    return parser


def parse_config(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    if values.get("format") is None:
        values["format"] = "json" if ns.subcommand == "verify" else "csv"
    return CliConfig(**values)


def main(argv=None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
