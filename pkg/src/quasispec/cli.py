"""Batch experiment drivers.

One subcommand per experiment; every run emits plot-ready CSV plus a JSON
manifest sidecar, is deterministic given (flags, seed), and short-circuits
on cache hits where caching applies.  Exit codes: 0 success, 2 usage,
3 numeric failure.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import dos, io, regularity, tracemap
from .calibration import KDE_BANDWIDTHS, L2_FLAG_GROWTH
from .eigensolve import cached_spectrum
from .intervals import box_dimension, gap_report, lebesgue_length, sumset
from .model import ModelParams
from .separable2d import eigs2d_from_sums

USAGE_EXIT = 2
NUMERIC_EXIT = 3


class UsageError(Exception):
    """Parameter outside a command's accepted envelope."""


def _model(args, which=1) -> ModelParams:
    lam = args.lam if which == 1 else (args.lam2 if args.lam2 is not None else args.lam)
    om = args.omega if which == 1 else (args.omega2 if args.omega2 is not None else args.omega)
    return ModelParams(lam=lam, omega=om, n_sites=args.n)


def _spectrum(args, which=1):
    return cached_spectrum(_model(args, which), start=args.start, cache_dir=args.cache)


def cmd_spectrum1d(args, out: Path):
    if args.n > 10**5:
        raise UsageError("box size capped at 1e5")
    t0 = time.time()
    spec = _spectrum(args)
    f = io.write_csv(out / "spectrum1d.csv", ["eigenvalue"],
                     ((e,) for e in spec.eigenvalues))
    io.write_manifest(out / "spectrum1d.manifest.json", "spectrum1d",
                      _param_map(args), [f], time.time() - t0, seed=args.seed,
                      extra={"start_index": args.start})
    return [f]


def cmd_ids(args, out: Path):
    t0 = time.time()
    spec = _spectrum(args)
    lo, hi = spec.eigenvalues[0] - 0.1, spec.eigenvalues[-1] + 0.1
    grid = np.linspace(lo, hi, args.grid_points)
    curve = dos.ids_curve(spec, grid)
    f = io.write_csv(out / "ids.csv", ["energy", "ids"], curve)
    io.write_manifest(out / "ids.manifest.json", "ids", _param_map(args),
                      [f], time.time() - t0, seed=args.seed)
    return [f]


def cmd_tracemap(args, out: Path):
    t0 = time.time()
    cover = tracemap.spectrum_cover(args.lam, depth=args.depth,
                                    max_iter=args.max_iter)
    f = io.intervals_to_csv(out / "cover.csv", cover)
    extra = {
        "total_length": io.fmt(lebesgue_length(cover)),
        "n_intervals": len(cover),
        "max_iter": args.max_iter or tracemap.default_max_iter(args.depth),
        "outer_approximation_caveat":
            "cells retained by three bounded-orbit probes; not a rigorous enclosure",
    }
    if not cover.empty and len(cover) >= 2:
        scales = [2.0 ** -j for j in range(2, 9)]
        slope, err = box_dimension(cover, scales)
        extra["box_dimension"] = io.fmt(slope)
        extra["box_dimension_stderr"] = io.fmt(err)
    io.write_manifest(out / "cover.manifest.json", "tracemap", _param_map(args),
                      [f], time.time() - t0, seed=args.seed, extra=extra)
    return [f]


def cmd_lyapunov(args, out: Path):
    t0 = time.time()
    lams = [float(s) for s in args.lambdas.split(",")]
    rows = tracemap.lyapunov_scan(lams, args.e_samples, args.m,
                                  depth=args.depth, seed=args.seed)
    f = io.write_csv(out / "lyapunov.csv", ["lambda", "mean_exponent", "spread"], rows)
    io.write_manifest(out / "lyapunov.manifest.json", "lyapunov", _param_map(args),
                      [f], time.time() - t0, seed=args.seed)
    return [f]


def cmd_dimension(args, out: Path):
    t0 = time.time()
    spec = _spectrum(args)
    measure = dos.empirical_measure(spec)
    radii = [2.0 ** -j for j in range(4, 10)]
    slope, err = dos.local_dimension(measure, radii, samples=args.samples,
                                     seed=args.seed)
    f = io.write_csv(out / "dimension.csv",
                     ["lambda", "local_dimension", "stderr"],
                     [(args.lam, slope, err)])
    io.write_manifest(out / "dimension.manifest.json", "dimension",
                      _param_map(args), [f], time.time() - t0, seed=args.seed)
    return [f]


def cmd_dos2d(args, out: Path):
    t0 = time.time()
    s1 = _spectrum(args, 1)
    s2 = _spectrum(args, 2)
    m1 = dos.empirical_measure(s1)
    m2 = dos.empirical_measure(s2)
    try:
        conv = dos.convolve(m1, m2)
    except ValueError as err:
        raise SystemExit(f"{err}; reduce --n") from err
    files = [io.measure_to_csv(out / "dos2d.csv", conv)]
    bandwidths = sorted(KDE_BANDWIDTHS, reverse=True)
    trend = dos.l2_bandwidth_trend(conv, bandwidths)
    for h, _ in trend:
        d = dos.kde_density(conv, h)
        files.append(io.write_csv(out / f"dos2d_kde_h{h:g}.csv",
                                  ["energy", "density"], zip(d.grid, d.values)))
    ratio = trend[-1][1] / trend[0][1]
    radii = [2.0 ** -j for j in range(4, 10)]
    slope, err = dos.local_dimension(conv, radii, samples=args.samples, seed=args.seed)
    files.append(io.write_csv(out / "dos2d_l2_trend.csv",
                              ["bandwidth", "l2_norm"], trend))
    io.write_manifest(out / "dos2d.manifest.json", "dos2d", _param_map(args),
                      files, time.time() - t0, seed=args.seed, extra={
                          "l2_ratio": io.fmt(ratio),
                          "l2_flag": "growing" if ratio >= L2_FLAG_GROWTH else "stable",
                          "local_dimension": io.fmt(slope),
                          "local_dimension_stderr": io.fmt(err),
                      })
    return files


def cmd_sumset2d(args, out: Path):
    t0 = time.time()
    lam2 = args.lam2 if args.lam2 is not None else args.lam
    c1 = tracemap.spectrum_cover(args.lam, depth=args.depth, max_iter=args.max_iter)
    c2 = tracemap.spectrum_cover(lam2, depth=args.depth, max_iter=args.max_iter)
    if c1.empty or c2.empty:
        raise SystemExit("empty cover: increase depth or reduce max_iter")
    s = sumset(c1, c2)
    f = io.intervals_to_csv(out / "sumset.csv", s)
    gaps = gap_report(s)
    fg = io.write_csv(out / "sumset_gaps.csv", ["gap_start", "gap_end", "width"], gaps)
    io.write_manifest(out / "sumset.manifest.json", "sumset2d", _param_map(args),
                      [f, fg], time.time() - t0, seed=args.seed, extra={
                          "total_length": io.fmt(lebesgue_length(s)),
                          "n_gaps": len(gaps),
                      })
    return [f, fg]


def cmd_verify_tensor(args, out: Path):
    from .separable2d import BoxSpec2D, eigs2d_dense

    t0 = time.time()
    if args.n > 12:
        raise UsageError("verify-tensor caps the box at N=12 (dense oracle)")
    spec2d = BoxSpec2D(_model(args, 1), _model(args, 2))
    sums = eigs2d_from_sums(_spectrum(args, 1), _spectrum(args, 2))
    dense = eigs2d_dense(spec2d, start=args.start)
    err = float(np.max(np.abs(sums - dense)))
    f = io.write_csv(out / "verify_tensor.csv",
                     ["n", "lambda1", "lambda2", "max_abs_difference"],
                     [(args.n, args.lam, args.lam2 if args.lam2 is not None else args.lam, err)])
    io.write_manifest(out / "verify_tensor.manifest.json", "verify-tensor",
                      _param_map(args), [f], time.time() - t0, seed=args.seed,
                      extra={"max_abs_difference": io.fmt(err)})
    if err > 1e-8:
        raise SystemExit(f"tensor-sum identity violated: {err:g}")
    return [f]


def cmd_regularity(args, out: Path):
    t0 = time.time()
    if args.system == "middle-thirds":
        sys_ = regularity.middle_cantor_system(1.0 / 3.0)
        J = (0.3, 0.35)
    elif args.system == "fifth":
        sys_ = regularity.middle_cantor_system(1.0 / 5.0)
        J = (0.18, 0.22)
    elif args.system == "uniform":
        sys_ = regularity.SymbolicSystem(digits=(0.0, 0.5))
        J = (0.3, 0.35)
    else:
        cfg = io.load_config(args.system)
        digits = tuple(float(x) for x in cfg["digits"].split(","))
        weights = tuple(float(x) for x in cfg["weights"].split(",")) if "weights" in cfg else None
        sys_ = regularity.SymbolicSystem(digits=digits, weights=weights)
        J = tuple(float(x) for x in cfg.get("J", "0.3,0.35").split(","))
    report = regularity.transversality_report(sys_, J, depth=args.depth,
                                              sample_pairs=args.samples,
                                              d_eta=args.d_eta, seed=args.seed)
    fr = io.write_text(out / "regularity_report.json", report.to_json() + "\n")
    eta = dos.cantor_lebesgue(1.0 / 3.0, 10)
    radii = [2.0 ** -j for j in range(4, 9)]
    corr = regularity.correlation_integral(eta, eta, radii, seed=args.seed)
    fc = io.write_csv(out / "regularity_correlation.csv", ["radius", "estimate"], corr)
    io.write_manifest(out / "regularity.manifest.json", "regularity",
                      _param_map(args), [fr, fc], time.time() - t0, seed=args.seed)
    return [fr, fc]


_COMMANDS = {
    "spectrum1d": cmd_spectrum1d,
    "ids": cmd_ids,
    "tracemap": cmd_tracemap,
    "lyapunov": cmd_lyapunov,
    "dimension": cmd_dimension,
    "dos2d": cmd_dos2d,
    "sumset2d": cmd_sumset2d,
    "verify-tensor": cmd_verify_tensor,
    "regularity": cmd_regularity,
}


def _param_map(args) -> dict:
    skip = {"func", "config", "out"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="quasispec",
                                  description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--lambda", dest="lam", type=float, default=1.0)
        p.add_argument("--lambda2", dest="lam2", type=float, default=None)
        p.add_argument("--omega", type=float, default=0.0)
        p.add_argument("--omega2", type=float, default=None)
        p.add_argument("--n", type=int, default=500)
        p.add_argument("--depth", type=int, default=12)
        p.add_argument("--max-iter", dest="max_iter", type=int, default=None)
        p.add_argument("--start", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=Path, default=Path("quasispec-out"))
        p.add_argument("--cache", type=str, default=None)
        p.add_argument("--config", type=str, default=None)

    for name in _COMMANDS:
        p = sub.add_parser(name)
        common(p)
        if name == "ids":
            p.add_argument("--grid-points", type=int, default=512)
        if name == "lyapunov":
            p.add_argument("--lambdas", type=str, default="0.2,0.5,1.0")
            p.add_argument("--e-samples", dest="e_samples", type=int, default=16)
            p.add_argument("--m", type=int, default=30)
        if name in ("dimension", "dos2d", "regularity"):
            p.add_argument("--samples", type=int, default=400)
        if name == "regularity":
            p.add_argument("--system", type=str, default="middle-thirds")
            p.add_argument("--d-eta", dest="d_eta", type=float, default=1.0)
        p.set_defaults(func=_COMMANDS[name])
    return top


def _apply_config(argv, parser):
    """Config file values become defaults; explicit flags override them."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    cfg = io.load_config(argv[i + 1])
    extra = []
    for k, v in cfg.items():
        flag = "--" + k.replace("_", "-")
        if flag not in argv:
            extra.extend([flag, v])
    return extra + argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv:
            argv = [argv[0]] + _apply_config(argv[1:], parser)
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_EXIT if e.code not in (0, None) else 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        args.func(args, out)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except (SystemExit, RuntimeError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return NUMERIC_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
