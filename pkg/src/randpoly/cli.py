"""Command-line front end.

Subcommands fall into three groups: polynomial Monte Carlo (`estimate-pn`,
`estimate-pnk`, `estimate-en-vn`, `fit-b`, `zero-hist`), Gaussian-process
persistence (`gp-persist`, `gp-estimate-b`, `ou-validate`, `gp-validate`),
and closed-form references (`kac`, `bounds`).

Experiment subcommands read an optional JSON config file and let every
field be overridden by a flag.  With `--out BASE`, results land in
BASE.csv / BASE.json / BASE.tsv; the bytes depend only on config + seed,
never on worker count or wall clock.

Exit codes: 0 success, 2 bad configuration or usage, 3 a certified bound
or validation check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .analytic import (CertificationError, QuadratureError, discrete_slepian_check,
                       en_asymptote, exponent_bounds, kac_en, lemma_b_constants)
from .experiments import (ConfigError, ExperimentConfig, config_hash,
                          estimate_en_vn, estimate_pn, estimate_pnk,
                          fit_exponent, run_ladder, summary_payload, write_csv,
                          write_json, write_tsv, zero_histogram)
from .gp import PathSpec, covariance, fourier_cos_transform, spectral_density
from .persistence import (estimate_b, ou_persist_continuum, ou_persist_exact,
                          persist_prob, refinement_check, splitting_persist)
from .polycore import CoefficientDistribution
from .rootcount import GridSpec

_DEF_LADDER = (17, 33, 65, 129, 257)


# --- config plumbing ------------------------------------------------------

def _parse_int_list(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in s.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"expected a comma-separated integer list, got {s!r}")


def _parse_float_list(s: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in s.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"expected a comma-separated number list, got {s!r}")


def _load_config(args) -> ExperimentConfig:
    """JSON config file (if any) with flag overrides on top."""
    raw: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as f:
                raw = json.load(f)
        except OSError as e:
            raise ConfigError(f"cannot read config file: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file is not valid JSON: {e}")

    dist_label = raw.get("distribution", "rademacher")
    if args.dist is not None:
        dist_label = args.dist
    try:
        dist = CoefficientDistribution.parse(dist_label)
    except ValueError as e:
        raise ConfigError(str(e))

    n_values = tuple(raw.get("n_values", _DEF_LADDER))
    if getattr(args, "n", None) is not None:
        n_values = _parse_int_list(args.n)

    grid_raw = dict(raw.get("grid", {}))
    if getattr(args, "t_max", None) is not None:
        grid_raw["t_max"] = args.t_max
    try:
        grid = GridSpec(**grid_raw)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad grid: {e}")

    try:
        return ExperimentConfig(
            distribution=dist,
            n_values=n_values,
            trials_per_n=(args.trials if args.trials is not None
                          else raw.get("trials_per_n", 20000)),
            seed=args.seed if args.seed is not None else raw.get("seed", 0),
            grid=grid,
            backend=(args.backend if args.backend is not None
                     else raw.get("backend", "auto")),
            output_path=args.out if args.out is not None else raw.get("output_path"),
        )
    except TypeError as e:
        raise ConfigError(str(e))


def _out_base(path: str) -> str:
    for suf in (".csv", ".json", ".tsv"):
        if path.endswith(suf):
            return path[: -len(suf)]
    return path


def _emit_estimates(cfg: ExperimentConfig, points, fit) -> None:
    if not cfg.output_path:
        return
    base = _out_base(cfg.output_path)
    write_csv(base + ".csv", [e for _, e in points], cfg)
    write_json(base + ".json", summary_payload(cfg, points, fit))
    write_tsv(base + ".tsv", [(n, e.p_hat) for n, e in points], ("n", "p_hat"))
    print(f"wrote {base}.csv / .json / .tsv")


def _print_est(tag, est):
    line = (f"{tag}: p_hat={est.p_hat:.6g}  [{est.ci_low:.6g}, {est.ci_high:.6g}]"
            f"  successes={est.successes}/{est.trials}")
    excl = getattr(est, "excluded_suspect", None)
    if excl is not None:
        line += f"  suspect_excluded={excl}"
    print(line)


# --- polynomial subcommands ----------------------------------------------

def _cmd_estimate_pn(args) -> int:
    cfg = _load_config(args)
    points = [(n, estimate_pn(cfg, n, args.workers)) for n in cfg.n_values]
    for n, est in points:
        _print_est(f"n={n}", est)
    _emit_estimates(cfg, points, None)
    return 0


def _cmd_estimate_pnk(args) -> int:
    cfg = _load_config(args)
    points = [(n, estimate_pnk(cfg, n, args.k, args.workers)) for n in cfg.n_values]
    for n, est in points:
        _print_est(f"n={n} k={args.k}", est)
    _emit_estimates(cfg, points, None)
    return 0


def _cmd_estimate_en_vn(args) -> int:
    cfg = _load_config(args)
    rows = []
    for n in cfg.n_values:
        r = estimate_en_vn(cfg, n, args.workers)
        rows.append((n, r))
        ratio = r.mean / en_asymptote(n - 1) if n >= 3 else float("nan")
        print(f"n={n}: mean={r.mean:.6g}  var={r.variance:.6g}  "
              f"stderr={r.stderr:.3g}  mean/asymptote={ratio:.4f}")
    if cfg.output_path:
        base = _out_base(cfg.output_path)
        write_json(base + ".json", {
            "schema_version": 1, "code_version": __version__,
            "config_hash": config_hash(cfg), "seed": cfg.seed,
            "distribution": cfg.distribution.label(),
            "trials_per_n": cfg.trials_per_n,
            "moments": [{"n": n, "mean": r.mean, "variance": r.variance,
                         "stderr": r.stderr} for n, r in rows],
        })
        write_tsv(base + ".tsv", [(n, r.mean) for n, r in rows], ("n", "mean"))
        print(f"wrote {base}.json / .tsv")
    return 0


def _cmd_fit_b(args) -> int:
    cfg = _load_config(args)
    points, fit = run_ladder(cfg, args.workers)
    for n, est in points:
        _print_est(f"n={n}", est)
    print(f"b_hat = {-fit.slope:.4f} +/- {fit.slope_stderr:.4f}  "
          f"(points_used={fit.points_used})")
    _emit_estimates(cfg, points, fit)
    return 0


def _cmd_zero_hist(args) -> int:
    cfg = _load_config(args)
    n = cfg.n_values[0]
    h = zero_histogram(cfg, n, args.workers, bin_width=args.bin_width)
    per = h.counts.sum(axis=1)
    print(f"n={n}: {h.total} zeros over {h.trials} trials "
          f"({h.excluded_suspect} suspect trials excluded)")
    for name, c in zip(h.regimes, per):
        print(f"  {name:8s} {int(c)}")
    if h.total:
        print(f"  zeros with |1-|x|| < 0.5: {h.near_unit}/{h.total} "
              f"= {h.near_unit_fraction:.3f}")
    if cfg.output_path:
        base = _out_base(cfg.output_path)
        write_json(base + ".json", {
            "schema_version": 1, "code_version": __version__,
            "config_hash": config_hash(cfg), "seed": cfg.seed, "n": n,
            "bin_width": args.bin_width, "edges": h.edges.tolist(),
            "regimes": list(h.regimes),
            "counts": h.counts.tolist(), "total": h.total,
            "near_unit": h.near_unit, "trials": h.trials,
            "excluded_suspect": h.excluded_suspect,
        })
        totals = h.counts.sum(axis=0)
        write_tsv(base + ".tsv",
                  [(float(h.edges[i]), int(totals[i])) for i in range(len(totals) - 1)]
                  + [(float(h.edges[-1]), int(totals[-1]))],
                  ("t_left", "count"))
        print(f"wrote {base}.json / .tsv")
    return 0


# --- Gaussian-process subcommands ----------------------------------------

def _cmd_gp_persist(args) -> int:
    spec = PathSpec(kind=args.kind, t_max=args.t_max, dt=args.dt,
                    level=args.level, alpha=args.alpha)
    if args.levels:
        levels = _parse_float_list(args.levels)
        est = splitting_persist(spec, levels, args.trials, args.seed,
                                rho=args.rho, sweeps=args.sweeps)
        mode = f"splitting via {levels}"
    else:
        est = persist_prob(spec, args.trials, args.seed)
        mode = "direct"
    print(f"kind={args.kind} T={args.t_max} dt={args.dt} level={args.level} ({mode})")
    _print_est("persist", est)
    if est.p_hat > 0:
        b = -4.0 * math.log(est.p_hat) / args.t_max
        print(f"implied b = {b:.4f}")
    if args.out:
        write_json(_out_base(args.out) + ".json", {
            "schema_version": 1, "code_version": __version__,
            "kind": args.kind, "t_max": args.t_max, "dt": args.dt,
            "level": args.level, "alpha": args.alpha, "seed": args.seed,
            "trials": est.trials, "successes": est.successes,
            "p_hat": est.p_hat, "ci_low": est.ci_low, "ci_high": est.ci_high,
        })
        print(f"wrote {_out_base(args.out)}.json")
    return 0


def _cmd_gp_estimate_b(args) -> int:
    t_list = _parse_float_list(args.t_list)
    trials = _parse_int_list(args.trials_list) if args.trials_list else args.trials
    curve = estimate_b(args.kind, t_list, args.dt, trials, args.seed,
                       level=args.level, alpha=args.alpha)
    for pt in curve.points:
        print(f"T={pt.t:g}: p_hat={pt.estimate.p_hat:.6g}  "
              f"b_hat={pt.b_hat:.4f}  [{pt.b_lo:.4f}, {pt.b_hi:.4f}]")
    if curve.extinct_t is not None:
        print(f"no survivors at T={curve.extinct_t:g}; ladder truncated")
    if curve.points:
        lo, hi = curve.b_interval
        print(f"b_hat(T={curve.points[-1].t:g}) = {curve.b_hat:.4f}  "
              f"95% [{lo:.4f}, {hi:.4f}]")
    if args.out:
        base = _out_base(args.out)
        write_json(base + ".json", {
            "schema_version": 1, "code_version": __version__,
            "kind": args.kind, "dt": args.dt, "seed": args.seed,
            "level": args.level, "alpha": args.alpha,
            "t_values": list(curve.t_values),
            "b_values": list(curve.b_values),
            "points": [{"t": p.t, "p_hat": p.estimate.p_hat,
                        "trials": p.estimate.trials,
                        "successes": p.estimate.successes,
                        "b_hat": p.b_hat, "b_lo": p.b_lo, "b_hi": p.b_hi}
                       for p in curve.points],
            "provenance": "package-selected ladder and tolerance bands",
        })
        write_tsv(base + ".tsv", list(zip(curve.t_values, curve.b_values)),
                  ("t", "b_hat"))
        print(f"wrote {base}.json / .tsv")
    return 0


def _cmd_ou_validate(args) -> int:
    """Exact-solution cross-check of the whole sampling/estimation pipeline."""
    ok = True
    print(f"dt={args.dt}, {args.trials} paths per horizon")
    for T in (1.0, 2.0, 4.0, math.log(2.0)):
        est = ou_persist_continuum(T, args.dt, args.trials, args.seed)
        exact = ou_persist_exact(T)
        dev = (est.p_hat - exact) / est.stderr if est.stderr > 0 else float("inf")
        good = abs(dev) <= 3.0
        ok &= good
        print(f"  T={T:.6g}: p_hat={est.p_hat:.6f}  exact={exact:.6f}  "
              f"dev={dev:+.2f} sigma  {'PASS' if good else 'FAIL'}")
    b32 = -4.0 * math.log(ou_persist_exact(32.0)) / 32.0
    good = 1.9 <= b32 <= 2.2
    ok &= good
    print(f"  T=32 closed form: -4 log P / T = {b32:.4f}  in [1.9, 2.2]  "
          f"{'PASS' if good else 'FAIL'}")
    print("ou-validate:", "PASS" if ok else "FAIL")
    return 0 if ok else 3


def _check(name: str, good: bool, detail: str) -> bool:
    print(f"  {name}: {detail}  {'PASS' if good else 'FAIL'}")
    return good


def _cmd_gp_validate(args) -> int:
    """Internal-consistency battery for the Gaussian-process layer."""
    ok = True

    # spectral identity: quadrature transform of the kernel vs closed form
    rel = 0.0
    for w in (0.0, 0.5, 1.0, 2.0, 5.0):
        got = fourier_cos_transform("sech", w)
        want = spectral_density("sech", w)
        rel = max(rel, abs(got - want) / want)
    ok &= _check("spectral identity", rel < 1e-6, f"max rel err {rel:.2e}")

    # Gram matrices positive definite at several steps (Cholesky succeeds)
    worst = None
    for dt in (0.01, 0.05, 0.1):
        m = min(args.points, 2048)
        tau = dt * np.arange(m)
        R = covariance("sech", np.abs(tau[:, None] - tau[None, :]))
        try:
            np.linalg.cholesky(R + 1e-12 * np.eye(m))
        except np.linalg.LinAlgError:
            worst = dt
    ok &= _check("covariance positive definite", worst is None,
                 f"Cholesky up to {min(args.points, 2048)} points, dt in (0.01,0.05,0.1)"
                 + ("" if worst is None else f"; failed at dt={worst}"))

    # kernel domination: sech(tau/2) >= exp(-tau/2) everywhere
    tau = np.linspace(0.0, 50.0, 5001)
    gap = float(np.min(covariance("sech", tau) - np.exp(-0.5 * tau)))
    ok &= _check("kernel dominates OU", gap >= -1e-15, f"min gap {gap:.2e}")

    # grid refinement can only lower the one-sided survival count
    spec = PathSpec(kind="sech", t_max=8.0, dt=0.02)
    coarse, fine = refinement_check(spec, args.trials, args.seed)
    ok &= _check("refinement monotone",
                 coarse.successes >= fine.successes,
                 f"coarse {coarse.successes} >= fine {fine.successes}")

    # sample autocovariance vs kernel at a few lags
    from .gp import gaussian_path_block
    spec2 = PathSpec(kind="sech", t_max=8.0, dt=0.01)
    rows = max(2000, args.trials // 4)
    X = gaussian_path_block(spec2, args.seed + 1, 0, (rows + 1) // 2)[:rows]
    worst_dev = 0.0
    for lag_t in (0.0, 1.0, 2.0):
        k = int(round(lag_t / spec2.dt))
        prods = (X[:, : X.shape[1] - k] * X[:, k:]).mean(axis=1)
        dev = abs(prods.mean() - covariance("sech", lag_t)) / (prods.std(ddof=1) / math.sqrt(rows))
        worst_dev = max(worst_dev, dev)
    ok &= _check("sample autocovariance", worst_dev < 5.0,
                 f"max dev {worst_dev:.2f} sigma over lags (0, 1, 2)")

    # discrete comparison bound at the integer-gap spacing
    est = discrete_slepian_check(4, max(args.trials, 10000), args.seed + 2)
    bound = math.exp(-2.0)
    ok &= _check("discrete comparison bound", est.ci_high <= bound,
                 f"ci_high {est.ci_high:.5f} <= e^-2 {bound:.5f}")

    print("gp-validate:", "PASS" if ok else "FAIL")
    return 0 if ok else 3


# --- closed-form subcommands ---------------------------------------------

def _cmd_kac(args) -> int:
    r = kac_en(args.n)
    print(f"E[{args.n}] = {r.E_n:.12f}  (quadrature error <= {r.abs_err:.2e})")
    if args.n >= 3:
        print(f"ratio to (2/pi) log n: {r.E_n / en_asymptote(args.n):.6f}")
    return 0


def _cmd_bounds(args) -> int:
    c = lemma_b_constants()  # raises CertificationError if the gap fails
    lo, hi = exponent_bounds()
    print(f"rho      = {c.rho:.6f}")
    print(f"lambda0  = {c.lambda0:.6f}")
    print(f"lambda   = {c.lam:.4f}")
    print(f"log_ratio = {c.log_ratio:.4f}  (certified <= -1)")
    print(f"certified exponent window: {lo} <= b <= {hi}")
    return 0


# --- parser ---------------------------------------------------------------

def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--n", help="comma-separated coefficient counts")
    p.add_argument("--trials", type=int, help="trials per n")
    p.add_argument("--seed", type=int, help="RNG seed")
    p.add_argument("--dist", help='coefficient law, e.g. "rademacher", '
                                  '"normal", "normal:mu=1", "uniform:hw=0.5"')
    p.add_argument("--backend", choices=("exact", "numeric", "auto"))
    p.add_argument("--t-max", type=float, dest="t_max",
                   help="numeric-grid depth override")
    p.add_argument("--out", help="output base path (writes .csv/.json/.tsv)")
    p.add_argument("--workers", type=int, default=1,
                   help="worker processes (never changes results)")


def _add_gp_flags(p: argparse.ArgumentParser, t_default: float) -> None:
    p.add_argument("--kind", default="sech",
                   choices=("sech", "ou", "damped", "mix"))
    p.add_argument("--t-max", type=float, dest="t_max", default=t_default)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--out", help="output base path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="randpoly",
        description="Real zeros of random polynomials and the persistence "
                    "exponent of the limiting Gaussian process.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate-pn", help="P(no real zero) across a degree ladder")
    _add_experiment_flags(p)
    p.set_defaults(func=_cmd_estimate_pn)

    p = sub.add_parser("estimate-pnk", help="P(exactly k distinct real zeros)")
    _add_experiment_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_estimate_pnk)

    p = sub.add_parser("estimate-en-vn", help="mean and variance of the zero count")
    _add_experiment_flags(p)
    p.set_defaults(func=_cmd_estimate_en_vn)

    p = sub.add_parser("fit-b", help="estimate-pn ladder plus power-law exponent fit")
    _add_experiment_flags(p)
    p.set_defaults(func=_cmd_fit_b)

    p = sub.add_parser("zero-hist", help="zero-location histogram near |x| = 1")
    _add_experiment_flags(p)
    p.add_argument("--bin-width", type=float, default=0.5, dest="bin_width")
    p.set_defaults(func=_cmd_zero_hist)

    p = sub.add_parser("gp-persist", help="one-sided survival probability of a path")
    _add_gp_flags(p, t_default=16.0)
    p.add_argument("--levels", help="comma-separated splitting levels ending at --level")
    p.add_argument("--rho", type=float, default=0.8, help="shake correlation")
    p.add_argument("--sweeps", type=int, default=8, help="shake sweeps per stage")
    p.set_defaults(func=_cmd_gp_persist)

    p = sub.add_parser("gp-estimate-b", help="decay exponent across horizons")
    _add_gp_flags(p, t_default=32.0)
    p.add_argument("--t-list", default="8,16,24,32", dest="t_list")
    p.add_argument("--trials-list", dest="trials_list",
                   help="per-horizon trial counts (defaults to --trials for all)")
    p.set_defaults(func=_cmd_gp_estimate_b)

    p = sub.add_parser("ou-validate",
                       help="pipeline check against the closed-form survival law")
    p.add_argument("--dt", type=float, default=0.005)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_ou_validate)

    p = sub.add_parser("gp-validate", help="internal consistency battery")
    p.add_argument("--points", type=int, default=2048)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gp_validate)

    p = sub.add_parser("kac", help="expected number of real zeros, exact quadrature")
    p.add_argument("--n", type=int, required=True, help="polynomial degree")
    p.set_defaults(func=_cmd_kac)

    p = sub.add_parser("bounds", help="certified constants and exponent window")
    p.set_defaults(func=_cmd_bounds)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except (CertificationError, QuadratureError) as e:
        print(f"certification failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
