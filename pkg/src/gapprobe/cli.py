"""Command line front end: ``gap-probe verify | rayleigh | sample | hyperuniformity | dyson``.

Exit codes: 0 all checks pass, 1 check failure, 2 numerical failure,
3 partial sweep, 5 simulation degeneracy, 64 usage error.  Every command
writes a run manifest next to its data files; data files are byte
reproducible for a fixed seed and thread count does not affect results.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, closedform
from .dirichlet import SWEEP_CSV_HEADER, rayleigh_sweep, sweep_to_csv
from .dyson import DysonConfig, StepFloorReached, com_variance_check, relaxation_probe, simulate
from .pointproc import (
    EigenFailure,
    empirical_variance,
    growth_exponent,
    mean_estimate,
    sample_batch,
    variance_estimate,
    write_batch_jsonl,
)
from .quadrature import (
    NonFiniteIntegrand,
    QuadratureSpec,
    ToleranceNotMet,
    integrate_1d,
    number_variance_exact,
    var_exact_sine,
)
from .svgplot import loglog_svg
from .testfn import TestFunction
from .util import fmt17, sinc_sq

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NUMERICAL = 2
EXIT_PARTIAL = 3
EXIT_SIM_DEGENERATE = 5
EXIT_USAGE = 64

_SQRT2PI = math.sqrt(2.0) * math.pi


class _Parser(argparse.ArgumentParser):
    """argparse with the sysexits usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int
    toolkit_version: str = __version__
    started: str = ""
    finished: str = ""
    outputs: list = field(default_factory=list)

    def write(self, out_dir: str) -> str:
        path = os.path.join(out_dir, f"{self.command}_manifest.json")
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "toolkit_version": self.toolkit_version,
            "started": self.started,
            "finished": self.finished,
            "outputs": sorted(self.outputs),
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        return path


def _utc_now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=2024, help="base seed for all randomness")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads; results are independent of this")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--tol-abs", type=float, default=None,
                   help="absolute quadrature tolerance (given alone, disables the relative one)")
    p.add_argument("--tol-rel", type=float, default=None,
                   help="relative quadrature tolerance")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="table output format")


def _spec_from(args, rule: str = "adaptive_simpson") -> QuadratureSpec:
    abs_tol, rel_tol = 1e-12, 1e-10
    if args.tol_abs is not None:
        abs_tol = args.tol_abs
        if args.tol_rel is None:
            rel_tol = 1e-300  # pure absolute mode
    if args.tol_rel is not None:
        rel_tol = args.tol_rel
    return QuadratureSpec(abs_tol=abs_tol, rel_tol=rel_tol, rule=rule)


def _parse_float_list(text: str, what: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"cannot parse {what} list {text!r}")
    if not vals:
        raise ValueError(f"empty {what} list")
    return vals


def _write_rows(path: str, header: list[str], rows: list[list], fmt: str) -> None:
    if fmt == "json":
        with open(path.replace(".csv", ".json"), "w") as fh:
            payload = [dict(zip(header, r)) for r in rows]
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        return
    with open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# ---------------------------------------------------------------------------
# verify


def _verify_checks(spec_simpson: QuadratureSpec, spec_gh: QuadratureSpec):
    """Yield (name, closed_value, quadrature_value, error_estimate)."""
    sigmas = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)

    def damped_sin_sq(sigma):
        def f(u):
            u = np.asarray(u, dtype=float)
            t = np.minimum(u * u / (2.0 * sigma * sigma), 1e6)
            return np.exp(-t) * np.sin(_SQRT2PI * u) ** 2 / math.pi ** 2
        return f

    for s in sigmas:
        r = integrate_1d(damped_sin_sq(s), spec_simpson, scale=max(1.0, s))
        yield f"eq5(sigma={s})", closedform.eq5(s), r.value, r.error_estimate

    for a, b in ((0.0, 1.0), (1.0, 1.0), (1.0, 0.5), (2.0 * _SQRT2PI, 0.5),
                 (2.0 * _SQRT2PI, 1.0), (5.0, 2.0)):
        def cosgauss(u, a=a, b=b):
            u = np.asarray(u, dtype=float)
            return np.exp(-np.minimum(b * u * u, 1e6)) * np.cos(a * u)
        r = integrate_1d(cosgauss, spec_gh, scale=1.0 / math.sqrt(b))
        yield (f"gaussian_cosine_integral(a={a:.6g},b={b:.6g})",
               closedform.gaussian_cosine_integral(a, b), r.value, r.error_estimate)

    for s in sigmas:
        # product structure: (1/4) [int e^{-v^2/2s^2} dv] [int e^{-u^2/2s^2} sin^2/pi^2 du]
        def gauss_only(v, s=s):
            v = np.asarray(v, dtype=float)
            return np.exp(-np.minimum(v * v / (2.0 * s * s), 1e6))
        g = integrate_1d(gauss_only, spec_gh, scale=s * math.sqrt(2.0))
        o = integrate_1d(damped_sin_sq(s), spec_simpson, scale=max(1.0, s))
        val = 0.25 * g.value * o.value
        err = 0.25 * (abs(g.value) * o.error_estimate + abs(o.value) * g.error_estimate)
        yield f"term_I(sigma={s})", closedform.term_I(s), val, err

    for s in sigmas:
        def u_sq(x, s=s):
            x = np.asarray(x, dtype=float)
            return x * x * np.exp(-np.minimum(x * x / (s * s), 1e6))
        r = integrate_1d(u_sq, spec_gh, scale=s)
        yield f"u_l2_norm_sq(sigma={s})", closedform.u_l2_norm_sq(s), r.value, r.error_estimate
        yield f"poisson_variance(sigma={s})", closedform.poisson_variance(s), r.value, r.error_estimate

    for s in sigmas:
        def du_sq_half(x, s=s):
            x = np.asarray(x, dtype=float)
            t = np.minimum(x * x / (s * s), 1e6)
            return 0.5 * np.exp(-t) * (1.0 - t) ** 2
        r = integrate_1d(du_sq_half, spec_gh, scale=s)
        yield f"energy_exact(sigma={s})", closedform.energy_exact(s), r.value, r.error_estimate

    for s in sigmas:
        def envelope(x, s=s):
            x = np.asarray(x, dtype=float)
            t = np.minimum(x * x / (s * s), 1e6)
            return np.exp(-t) * (1.0 + t * t)
        r = integrate_1d(envelope, spec_gh, scale=s)
        yield (f"energy_upper_bound(sigma={s})",
               closedform.energy_upper_bound(s), r.value, r.error_estimate)

    r = integrate_1d(lambda u: sinc_sq(np.asarray(u, dtype=float)), spec_simpson)
    yield "int sin^2(u)/u^2 du", math.pi, r.value, r.error_estimate
    r = integrate_1d(lambda u: 2.0 * sinc_sq(_SQRT2PI * np.asarray(u, dtype=float)),
                     spec_simpson)
    yield "int sin^2(sqrt2 pi u)/(pi u)^2 du", math.sqrt(2.0), r.value, r.error_estimate


def cmd_verify(args) -> int:
    spec_s = _spec_from(args, "adaptive_simpson")
    spec_g = _spec_from(args, "gauss_hermite_mapped")
    if args.tol_abs is None:
        # spectral rule: push to the round-off floor so near-zero damped
        # cosine integrals are certified at 1e-15 absolute
        spec_g = QuadratureSpec(abs_tol=1e-15, rel_tol=spec_g.rel_tol,
                                rule="gauss_hermite_mapped")
    perturb = {}
    if args.perturb:
        name, delta = args.perturb.rsplit(":", 1)
        perturb[name] = float(delta)
    rel_req = 1e-9
    abs_floor = 1e-15
    rows = []
    all_ok = True
    manifest = RunManifest("verify", {"tol_rel_required": rel_req}, args.seed,
                           started=_utc_now())
    for name, closed, quad, err in _verify_checks(spec_s, spec_g):
        for pname, delta in perturb.items():
            if name.startswith(pname):
                closed *= (1.0 + delta)
        abs_err = abs(closed - quad)
        rel_err = abs_err / max(abs(closed), 1e-300)
        ok = abs_err <= max(abs_floor, rel_req * abs(closed))
        all_ok &= ok
        rows.append([name, fmt17(closed), fmt17(quad), fmt17(rel_err),
                     "pass" if ok else "FAIL"])
        print(f"{'PASS' if ok else 'FAIL'}  {name:44s} closed={closed:.12g} "
              f"quad={quad:.12g} rel_err={rel_err:.2e}")
    os.makedirs(args.out, exist_ok=True)
    table = os.path.join(args.out, "verify.csv")
    _write_rows(table, ["check", "closed_form", "quadrature", "rel_err", "status"],
                rows, args.format)
    manifest.outputs.append(table if args.format == "csv" else table.replace(".csv", ".json"))
    manifest.finished = _utc_now()
    manifest.write(args.out)
    print(f"{sum(r[-1] == 'pass' for r in rows)}/{len(rows)} checks passed")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# rayleigh


def cmd_rayleigh(args) -> int:
    if not (0.0 < args.sigma_min < args.sigma_max):
        raise UsageError("need 0 < sigma-min < sigma-max")
    if args.points < 2:
        raise UsageError("points must be >= 2")
    ratio = (args.sigma_max / args.sigma_min) ** (1.0 / (args.points - 1))
    sigmas = [args.sigma_min * ratio ** i for i in range(args.points)]
    sigmas[-1] = args.sigma_max
    batch = None
    if args.mode == "analytic_plus_mc":
        L = args.mc_window if args.mc_window else 12.0 * args.sigma_max
        n = args.mc_nodes if args.mc_nodes else int(math.ceil(26.0 * L))
        batch = sample_batch("sine2", L, args.mc_replicas, args.seed, n=n,
                             threads=args.threads)
    rows = rayleigh_sweep(sigmas, mode=args.mode, mc_batch=batch,
                          spec=_spec_from(args), threads=args.threads)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "rayleigh.csv")
    with open(csv_path, "w") as fh:
        sweep_to_csv(rows, fh)
    good = [r for r in rows if r.error is None]
    svg_path = os.path.join(args.out, "rayleigh.svg")
    if good:
        series = [("ratio_ub", [r.sigma for r in good], [r.ratio_ub for r in good]),
                  ("ratio_exact", [r.sigma for r in good], [r.ratio_exact for r in good])]
        with open(svg_path, "w") as fh:
            fh.write(loglog_svg(series, title="Rayleigh quotient bounds",
                                xlabel="sigma", ylabel="energy / variance"))
    manifest = RunManifest("rayleigh", {
        "sigma_min": args.sigma_min, "sigma_max": args.sigma_max,
        "points": args.points, "mode": args.mode,
        "mc_replicas": args.mc_replicas if args.mode == "analytic_plus_mc" else None,
    }, args.seed, started=_utc_now())
    manifest.outputs += [csv_path] + ([svg_path] if good else [])
    manifest.finished = _utc_now()
    manifest.write(args.out)
    for r in rows:
        tag = f"ERROR({r.error})" if r.error else f"ratio_ub={r.ratio_ub:.6g} ratio_exact={r.ratio_exact:.6g}"
        print(f"sigma={r.sigma:<10.6g} {tag}")
    return EXIT_PARTIAL if any(r.error for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# sample


def cmd_sample(args) -> int:
    if args.replicas < 1:
        raise UsageError("replicas must be >= 1")
    if args.process == "sine2" and args.nodes is None:
        raise UsageError("sine2 sampling needs --nodes")
    batch = sample_batch(args.process, args.window, args.replicas, args.seed,
                         n=args.nodes, threads=args.threads)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, args.out_file)
    with open(path, "w") as fh:
        write_batch_jsonl(batch, fh)
    counts = batch.counts()
    cm = mean_estimate(counts)
    cv = variance_estimate(counts)
    print(f"process={args.process} L={args.window} replicas={args.replicas}")
    print(f"mean count      = {cm.mean:.6f} +- {cm.std_error:.6f} (expected {2 * args.window:.6f})")
    print(f"count variance  = {cv.variance:.6f} +- {cv.std_error:.6f}")
    manifest = RunManifest("sample", {
        "process": args.process, "L": args.window, "n": args.nodes,
        "replicas": args.replicas,
    }, args.seed, started=_utc_now())
    manifest.outputs.append(path)
    manifest.finished = _utc_now()
    manifest.write(args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# hyperuniformity


def cmd_hyperuniformity(args) -> int:
    sigmas = _parse_float_list(args.sigmas, "sigma")
    if any(s <= 0 for s in sigmas) or sorted(sigmas) != sigmas or len(sigmas) < 3:
        raise UsageError("need an increasing list of >= 3 positive sigmas")
    spec = _spec_from(args)
    os.makedirs(args.out, exist_ok=True)
    var_sine, var_poisson = [], []
    rows = []
    mc_cols = args.mc_replicas > 0
    for s in sigmas:
        vs = var_exact_sine(s, "rotated", spec).value
        vp = closedform.poisson_variance(s)
        var_sine.append(vs)
        var_poisson.append(vp)
        row = [fmt17(s), fmt17(vs), fmt17(vp),
               fmt17(closedform.gap_criterion_ratio(s, vs)),
               fmt17(closedform.gap_criterion_ratio(s, vp))]
        if mc_cols:
            batch = sample_batch("poisson", 12.0 * s, args.mc_replicas,
                                 args.seed, threads=args.threads)
            est = empirical_variance(TestFunction(sigma=s), batch)
            row += [fmt17(est.variance), fmt17(est.std_error)]
        rows.append(row)
    header = ["sigma", "var_sine_quad", "var_poisson", "criterion_sine", "criterion_poisson"]
    if mc_cols:
        header += ["var_poisson_mc", "var_poisson_mc_se"]
    csv_path = os.path.join(args.out, "hyperuniformity.csv")
    _write_rows(csv_path, header, rows, args.format)

    fits = {
        "sine_quadrature": growth_exponent(sigmas, var_sine).slope,
        "poisson_analytic": growth_exponent(sigmas, var_poisson).slope,
    }
    if mc_cols:
        mc_vars = [float(r[5]) for r in rows]
        fits["poisson_mc"] = growth_exponent(sigmas, mc_vars).slope
    fit_path = os.path.join(args.out, "growth_exponents.json")
    with open(fit_path, "w") as fh:
        json.dump(fits, fh, sort_keys=True, indent=2)
        fh.write("\n")

    radii_path = None
    if args.radii:
        radii = _parse_float_list(args.radii, "radius")
        rrows = []
        for R in radii:
            nv = number_variance_exact(R).value
            rrows.append([fmt17(R), fmt17(nv), fmt17(2.0 * R), fmt17(nv / (2.0 * R))])
        radii_path = os.path.join(args.out, "number_variance.csv")
        _write_rows(radii_path, ["R", "count_variance", "poisson_count_variance", "ratio"],
                    rrows, args.format)

    svg_path = os.path.join(args.out, "hyperuniformity.svg")
    with open(svg_path, "w") as fh:
        fh.write(loglog_svg(
            [("sine (quadrature)", sigmas, var_sine), ("poisson", sigmas, var_poisson)],
            title="Variance growth of u_sigma statistics",
            xlabel="sigma", ylabel="variance"))
    for s, vs, vp in zip(sigmas, var_sine, var_poisson):
        print(f"sigma={s:<8g} var_sine={vs:.8g} var_poisson={vp:.8g}")
    print(f"growth exponents: {fits}")
    manifest = RunManifest("hyperuniformity", {
        "sigmas": sigmas, "radii": args.radii, "mc_replicas": args.mc_replicas,
    }, args.seed, started=_utc_now())
    manifest.outputs += [csv_path, fit_path, svg_path] + ([radii_path] if radii_path else [])
    manifest.finished = _utc_now()
    manifest.write(args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# dyson


def cmd_dyson(args) -> int:
    cfg = DysonConfig(N=args.n, T=args.t, beta=args.beta, dt=args.dt,
                      scheme=args.scheme, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    outputs = []
    floor_failures = 0
    if args.com_check:
        est = com_variance_check(cfg, args.replicas)
        expected = cfg.T / cfg.N
        print(f"COM variance = {est.variance:.6f} +- {est.std_error:.6f} "
              f"(expected {expected:.6f}, {est.replicas} replicas)")
        path = os.path.join(args.out, "dyson_com.csv")
        _write_rows(path, ["N", "T", "replicas", "com_variance", "std_error", "expected"],
                    [[args.n, fmt17(cfg.T), args.replicas, fmt17(est.variance),
                      fmt17(est.std_error), fmt17(expected)]], args.format)
        outputs.append(path)
    if args.probe_sigmas:
        lags = _parse_float_list(args.lags, "lag")
        rows = []
        for s in _parse_float_list(args.probe_sigmas, "sigma"):
            try:
                probe = relaxation_probe(cfg, TestFunction(sigma=s), args.replicas, lags)
            except StepFloorReached:
                floor_failures += 1
                continue
            for lag, rho, se in probe:
                rows.append([fmt17(s), fmt17(lag), fmt17(rho), fmt17(se)])
                print(f"sigma={s:<6g} lag={lag:<8g} autocorr={rho:.4f} +- {se:.4f}")
        path = os.path.join(args.out, "dyson_autocorr.csv")
        _write_rows(path, ["sigma", "lag", "autocorrelation", "std_error"], rows, args.format)
        outputs.append(path)
    if args.write_path:
        try:
            path_obj = simulate(cfg)
        except StepFloorReached:
            floor_failures += 1
            path_obj = None
        if path_obj is not None:
            path = os.path.join(args.out, "dyson_path.csv")
            with open(path, "w") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["time"] + [f"x_{i + 1}" for i in range(cfg.N)])
                stride = max(1, len(path_obj.times) // args.max_path_rows)
                for k in range(0, len(path_obj.times), stride):
                    w.writerow([fmt17(path_obj.times[k])] +
                               [fmt17(v) for v in path_obj.states[k]])
            outputs.append(path)
            if args.observable_sigma:
                f = TestFunction(sigma=args.observable_sigma)
                obs = os.path.join(args.out, "dyson_observable.csv")
                with open(obs, "w") as fh:
                    w = csv.writer(fh, lineterminator="\n")
                    w.writerow(["time", "value"])
                    for k in range(0, len(path_obj.times), stride):
                        val = float(np.sum(f.value(path_obj.states[k])))
                        w.writerow([fmt17(path_obj.times[k]), fmt17(val)])
                outputs.append(obs)
    manifest = RunManifest("dyson", {
        "N": args.n, "T": args.t, "beta": args.beta, "dt": cfg.dt,
        "scheme": args.scheme, "replicas": args.replicas,
    }, args.seed, started=_utc_now())
    manifest.outputs += outputs
    manifest.finished = _utc_now()
    manifest.write(args.out)
    return EXIT_SIM_DEGENERATE if floor_failures else EXIT_OK


class UsageError(ValueError):
    pass


def build_parser() -> _Parser:
    parser = _Parser(prog="gap-probe",
                     description="Variance, Dirichlet energy and Rayleigh-quotient "
                                 "numerics for sine-kernel and Poisson linear statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[], help="closed forms against quadrature")
    _add_common(p)
    p.add_argument("--perturb", default=None, help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("rayleigh", help="Rayleigh quotient sweep over sigma")
    _add_common(p)
    p.add_argument("--sigma-min", type=float, default=1.0)
    p.add_argument("--sigma-max", type=float, default=64.0)
    p.add_argument("--points", type=int, default=7)
    p.add_argument("--mode", choices=("analytic", "analytic_plus_mc"), default="analytic")
    p.add_argument("--mc-replicas", type=int, default=2000,
                   help="replicas for the shared Monte Carlo batch")
    p.add_argument("--mc-window", type=float, default=None,
                   help="batch window half-width (default 12 * sigma-max)")
    p.add_argument("--mc-nodes", type=int, default=None,
                   help="kernel nodes for the batch (default 26 * window)")
    p.set_defaults(fn=cmd_rayleigh)

    p = sub.add_parser("sample", help="draw seeded point-process batches")
    _add_common(p)
    p.add_argument("--process", choices=("sine2", "poisson"), required=True)
    p.add_argument("--window", type=float, required=True, help="window half-width L")
    p.add_argument("--nodes", type=int, default=None, help="kernel nodes (sine2 only)")
    p.add_argument("--replicas", type=int, required=True)
    p.add_argument("--out-file", default="samples.jsonl")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("hyperuniformity", help="variance growth: sine vs poisson")
    _add_common(p)
    p.add_argument("--sigmas", default="2,4,8,16", help="comma-separated sigma grid")
    p.add_argument("--radii", default=None, help="comma-separated count-variance radii")
    p.add_argument("--mc-replicas", type=int, default=0,
                   help="if > 0, add Poisson Monte Carlo variance columns")
    p.set_defaults(fn=cmd_hyperuniformity)

    p = sub.add_parser("dyson", help="finite Dyson Brownian motion checks")
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="particle count")
    p.add_argument("--t", type=float, default=1.0, help="horizon")
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--scheme", choices=("euler_maruyama_capped", "adaptive_halving"),
                   default="euler_maruyama_capped")
    p.add_argument("--replicas", type=int, default=1000)
    p.add_argument("--com-check", action="store_true", help="center-of-mass variance check")
    p.add_argument("--probe-sigmas", default=None,
                   help="comma-separated sigmas for the autocorrelation probe")
    p.add_argument("--lags", default="0,0.5,1", help="autocorrelation lags")
    p.add_argument("--write-path", action="store_true", help="write one path as CSV")
    p.add_argument("--observable-sigma", type=float, default=None,
                   help="also write the linear-statistic series for this sigma")
    p.add_argument("--max-path-rows", type=int, default=2000)
    p.set_defaults(fn=cmd_dyson)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"gap-probe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceNotMet, NonFiniteIntegrand, EigenFailure, ValueError) as exc:
        print(f"gap-probe: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except StepFloorReached as exc:
        print(f"gap-probe: simulation degenerate: {exc}", file=sys.stderr)
        return EXIT_SIM_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
