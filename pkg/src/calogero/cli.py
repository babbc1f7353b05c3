"""Command-line front end: spectra, verification suites, expansions.

Subcommands

* ``spectrum``  bound levels with weights plus density samples,
* ``verify``    residual/threshold report over the consistency suites,
* ``expand``    forward/inverse eigenfunction expansion of an input function.

Outputs are machine-readable (JSON, or one CSV table per file), embed the
fully resolved configuration, and are byte-identical for identical
configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from ._expr import ExpressionError, compile_expression
from .extensions import (
    ExtendedReal,
    ExtensionSpec,
    Region,
    ScaleParam,
    SignTag,
    classify,
    extension,
    param_convert_inverse,
)
from .grids import GridFunction
from .spectral import (
    Bound,
    Continuum,
    bound_states,
    eigenfunction,
    fundamental_solutions,
    greens_density,
    omega,
    spectral_density,
)
from .symmetry import covariance_check
from .transform import EigenfunctionExpansion, default_x_grid

OUTPUT_DIR_ENV = "CALOGERO_OUT"


@dataclass
class RunConfig:
    alpha: float
    lam: str | None
    theta: float | None
    mu: float | None
    mu_sign: str | None
    k0: float
    window: tuple[int, int] | None
    e_max: float
    density_points: int
    tolerance: float | None
    output_format: str
    seed: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["window"] = None if self.window is None else list(self.window)
        d["version"] = __version__
        return d


def _parse_lambda(text: str) -> str:
    if text in ("inf", "-inf"):
        return text
    float(text)  # validate
    return text


def _parse_theta(text: str) -> float:
    if text.endswith("pi"):
        return float(text[:-2] or "1") * math.pi
    return float(text)


def _parse_window(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    try:
        return int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("window must look like '-2..2'") from exc


def _build_spec(cfg: RunConfig) -> ExtensionSpec:
    regime = classify(cfg.alpha)
    n_params = sum(p is not None for p in (cfg.lam, cfg.theta, cfg.mu))
    if regime.region is Region.R1:
        if n_params:
            raise SystemExit("error: alpha >= 3/4 admits no extension parameter")
        return extension(cfg.alpha, k0=cfg.k0)
    if n_params != 1:
        raise SystemExit("error: give exactly one of --lambda, --theta, --mu")
    if cfg.mu is not None:
        sign = {None: SignTag.NOT_APPLICABLE, "+": SignTag.PLUS,
                "-": SignTag.MINUS}[cfg.mu_sign]
        return param_convert_inverse(regime, ScaleParam(cfg.mu, sign), k0=cfg.k0)
    if regime.region is Region.R4:
        if cfg.theta is None:
            raise SystemExit("error: alpha < -1/4 needs --theta (or --mu)")
        return extension(cfg.alpha, theta=cfg.theta, k0=cfg.k0)
    if cfg.lam is None:
        raise SystemExit("error: this alpha needs --lambda (or --mu)")
    lam = ExtendedReal.infinity() if cfg.lam in ("inf", "-inf") \
        else ExtendedReal(float(cfg.lam))
    return extension(cfg.alpha, lam=lam, k0=cfg.k0)


def _regime_dict(spec: ExtensionSpec) -> dict:
    r = spec.regime
    key = "sigma" if r.region is Region.R4 else "kappa"
    return {"region": r.region.name, "alpha": r.alpha, key: r.kappa_or_sigma,
            "extension": spec.describe()}


def _out_dir(args) -> str:
    out = args.out or os.environ.get(OUTPUT_DIR_ENV) or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _write_csv(path: str, config: dict, header: list[str], rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v)
                              for v in row) + "\n")


def _payload(cfg: RunConfig, spec: ExtensionSpec, bound=(), density=(), checks=()):
    return {
        "config": cfg.as_dict(),
        "regime": _regime_dict(spec),
        "bound": list(bound),
        "density": list(density),
        "checks": list(checks),
    }


# ----------------------------------------------------------------------
# spectrum
# ----------------------------------------------------------------------


def cmd_spectrum(cfg: RunConfig, args) -> int:
    spec = _build_spec(cfg)
    if spec.region is Region.R4 and cfg.window is None:
        raise SystemExit(
            "error: alpha < -1/4 has infinitely many levels; "
            "pass --window n_min..n_max (for example --window -2..2)")
    states = bound_states(spec, cfg.window)
    bound = [{"n": s.n, "E": s.energy, "rho": s.weight} for s in states]
    e_nodes = np.geomspace(1e-3 * cfg.k0**2, cfg.e_max, cfg.density_points)
    rho = spectral_density(spec, e_nodes)
    density = [{"E": float(e), "rho_c": float(r)} for e, r in zip(e_nodes, rho)]
    out = _out_dir(args)
    if cfg.output_format == "json":
        path = os.path.join(out, "spectrum.json")
        _write_json(path, _payload(cfg, spec, bound, density))
        print(f"wrote {path}")
    else:
        cd = cfg.as_dict()
        bpath = os.path.join(out, "spectrum_bound.csv")
        _write_csv(bpath, cd, ["n", "E", "rho"],
                   [(b["n"], b["E"], b["rho"]) for b in bound])
        dpath = os.path.join(out, "spectrum_density.csv")
        _write_csv(dpath, cd, ["E", "rho_c"],
                   [(d["E"], d["rho_c"]) for d in density])
        print(f"wrote {bpath}\nwrote {dpath}")
    print(f"{_regime_dict(spec)['extension']}: {len(bound)} bound level(s)")
    for b in bound:
        print(f"  n={b['n']:+d}  E={b['E']:.12g}  rho={b['rho']:.12g}")
    return 0


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


def _wronskian_residual(spec: ExtensionSpec, rng) -> float:
    """Numerically differentiated Wr(u, v) against -omega at random W."""
    xs = np.linspace(0.1, 5.0, 40) / spec.k0
    worst = 0.0
    for _ in range(3):
        W = complex(rng.uniform(-3, 3), rng.uniform(0.5, 2.5)) * spec.k0**2
        triple = fundamental_solutions(spec, W)
        h = 1e-3 / math.sqrt(abs(W))

        def d(f, x):
            return (-f(x + 2*h) + 8*f(x + h) - 8*f(x - h) + f(x - 2*h)) / (12*h)

        wr = triple.u(xs) * d(triple.v, xs) - d(triple.u, xs) * triple.v(xs)
        worst = max(worst, float(np.max(np.abs(wr + triple.omega))))
    return worst


def _norm_residual(spec: ExtensionSpec, window) -> float:
    from scipy.integrate import quad
    worst = 0.0
    for s in bound_states(spec, window):
        tau = math.sqrt(-s.energy)
        val, _ = quad(lambda x: float(s.profile(x))**2, 0.0, 45.0 / tau,
                      limit=300, epsabs=1e-12, epsrel=1e-11)
        worst = max(worst, abs(val - 1.0))
    return worst


def _orthogonality_residual(spec: ExtensionSpec, window) -> float:
    from scipy.integrate import quad
    states = bound_states(spec, window)
    worst = 0.0
    for a, b in zip(states[:-1], states[1:]):
        tau = math.sqrt(-a.energy)
        val, _ = quad(lambda x: float(a.profile(x)) * float(b.profile(x)),
                      0.0, 45.0 / tau, limit=400, epsabs=1e-12, epsrel=1e-11)
        worst = max(worst, abs(val))
    return worst


def _roundtrip_residuals(spec: ExtensionSpec, window) -> tuple[float, float]:
    k0 = spec.k0
    plan = EigenfunctionExpansion(spec, window=window)
    x = plan.x
    psi = GridFunction(x, x**1.5 * np.exp(-k0 * x), plan.wx)
    res = plan.forward(psi)
    back = plan.inverse(res)
    l2 = math.sqrt(float(np.sum(plan.wx * (back.values - psi.values)**2))
                   / psi.norm_sq())
    return l2, res.parseval_residual


def _greens_residual(spec: ExtensionSpec, rng) -> float:
    k0 = spec.k0
    worst = 0.0
    for _ in range(8):
        E = float(rng.uniform(0.05, 12.0)) * k0**2
        for c in (1.0 / k0, 1.37 / k0, 0.61 / k0):
            try:
                g = greens_density(spec, E, eps=1e-6, c=c)
            except Exception:
                continue
            rho = spectral_density(spec, E)
            worst = max(worst, abs(g - rho) / (1.0 + rho))
            break
    return worst


def _covariance_residual(spec: ExtensionSpec, window) -> float:
    report = covariance_check(spec, 2.0, window=window)
    return report.pointwise_residual


def run_checks(spec: ExtensionSpec, window, seed: int,
               tolerance: float | None) -> list[dict]:
    rng = np.random.default_rng(seed)
    checks = []

    def add(name, residual, threshold):
        thr = tolerance if tolerance is not None else threshold
        checks.append({"name": name, "residual": float(residual),
                       "threshold": float(thr), "pass": bool(residual <= thr)})

    add("wronskian_u_v", _wronskian_residual(spec, rng), 1e-9)
    states = bound_states(spec, window)
    if states:
        add("bound_normalization", _norm_residual(spec, window), 1e-8)
    if spec.region is Region.R4:
        add("bound_orthogonality", _orthogonality_residual(spec, window), 1e-8)
    rt, pv = _roundtrip_residuals(spec, window)
    add("roundtrip_l2", rt, 1e-3)
    add("parseval", pv, 1e-3)
    add("greens_vs_density", _greens_residual(spec, rng), 1e-4)
    cov_thr = 1e-12 if spec.region is Region.R1 else 1e-10
    add("scale_covariance", _covariance_residual(spec, window), cov_thr)
    return checks


def cmd_verify(cfg: RunConfig, args) -> int:
    spec = _build_spec(cfg)
    if spec.region is Region.R4 and cfg.window is None:
        cfg.window = (-2, 2)
    checks = run_checks(spec, cfg.window, cfg.seed, cfg.tolerance)
    out = _out_dir(args)
    if cfg.output_format == "json":
        path = os.path.join(out, "verify.json")
        _write_json(path, _payload(cfg, spec, checks=checks))
    else:
        path = os.path.join(out, "verify_checks.csv")
        _write_csv(path, cfg.as_dict(),
                   ["name", "residual", "threshold", "pass"],
                   [(c["name"], c["residual"], c["threshold"], c["pass"])
                    for c in checks])
    print(f"wrote {path}")
    ok = True
    for c in checks:
        status = "pass" if c["pass"] else "FAIL"
        ok = ok and c["pass"]
        print(f"  {c['name']:<22} residual={c['residual']:.3e} "
              f"threshold={c['threshold']:.1e}  {status}")
    return 0 if ok else 1


# ----------------------------------------------------------------------
# expand
# ----------------------------------------------------------------------


def _read_function_file(path: str):
    xs, vals = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise SystemExit(
                    f"error: {path}:{lineno}: expected 'x value', got {line.rstrip()!r}")
            try:
                xs.append(float(parts[0]))
                vals.append(float(parts[1]))
            except ValueError:
                raise SystemExit(
                    f"error: {path}:{lineno}: non-numeric entry in {line.rstrip()!r}")
    if len(xs) < 2:
        raise SystemExit(f"error: {path}: need at least two samples")
    xs = np.asarray(xs)
    if np.any(np.diff(xs) <= 0):
        raise SystemExit(f"error: {path}: x column must be strictly ascending")
    return xs, np.asarray(vals)


def cmd_expand(cfg: RunConfig, args) -> int:
    spec = _build_spec(cfg)
    if spec.region is Region.R4 and cfg.window is None:
        cfg.window = (-2, 2)
    if args.expr:
        try:
            fn = compile_expression(args.expr)
        except ExpressionError as exc:
            raise SystemExit(f"error: --expr: {exc}")
    else:
        file_x, file_v = _read_function_file(args.input)
        fn = lambda x: np.interp(x, file_x, file_v, left=0.0, right=0.0)
    plan = EigenfunctionExpansion(spec, window=cfg.window)
    values = np.asarray(fn(plan.x), dtype=float)
    if not np.all(np.isfinite(values)):
        raise SystemExit("error: input function is not finite on the grid")
    psi = GridFunction(plan.x, values, plan.wx)
    res = plan.forward(psi)
    back = plan.inverse(res)
    norm = psi.norm_sq()
    rel_l2 = math.sqrt(float(np.sum(plan.wx * (back.values - values)**2))
                       / norm) if norm > 0 else 0.0
    summary = {
        "parseval_residual": res.parseval_residual if norm > 0 else 0.0,
        "roundtrip_l2": rel_l2,
        "x_max": res.x_max,
        "e_max": res.e_max,
        "norm_sq": norm,
    }
    out = _out_dir(args)
    cd = cfg.as_dict()
    if cfg.output_format == "json":
        payload = _payload(cfg, spec,
                           bound=[{"n": s.n, "E": s.energy, "phi": float(p)}
                                  for s, p in zip(plan.states, res.phi_n)])
        payload["coefficients"] = [
            {"E": float(e), "phi": float(p)}
            for e, p in zip(res.phi_c.nodes, res.phi_c.values)]
        payload["reconstruction"] = [
            {"x": float(x), "input": float(v), "output": float(w)}
            for x, v, w in zip(plan.x, values, back.values)]
        payload["summary"] = summary
        path = os.path.join(out, "expand.json")
        _write_json(path, payload)
        print(f"wrote {path}")
    else:
        p1 = os.path.join(out, "expand_bound.csv")
        _write_csv(p1, cd, ["n", "E", "phi"],
                   [(s.n, s.energy, float(p)) for s, p in zip(plan.states, res.phi_n)])
        p2 = os.path.join(out, "expand_continuum.csv")
        _write_csv(p2, cd, ["E", "phi"],
                   list(zip(map(float, res.phi_c.nodes),
                            map(float, res.phi_c.values))))
        p3 = os.path.join(out, "expand_reconstruction.csv")
        _write_csv(p3, cd, ["x", "input", "output"],
                   list(zip(map(float, plan.x), map(float, values),
                            map(float, back.values))))
        p4 = os.path.join(out, "expand_summary.csv")
        _write_csv(p4, cd, sorted(summary), [tuple(summary[k] for k in sorted(summary))])
        print(f"wrote {p1}\nwrote {p2}\nwrote {p3}\nwrote {p4}")
    print(f"parseval residual: {summary['parseval_residual']:.3e}, "
          f"round-trip L2: {summary['roundtrip_l2']:.3e}")
    return 0


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float, required=True,
                   help="coupling of alpha/x^2")
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, default=None,
                   help="extension parameter for -1/4 <= alpha < 3/4 "
                        "(float, 'inf' or '-inf')")
    p.add_argument("--theta", type=_parse_theta, default=None,
                   help="extension phase for alpha < -1/4 (radians, or '0.25pi')")
    p.add_argument("--mu", type=float, default=None,
                   help="dimensional extension parameter (inverse length)")
    p.add_argument("--mu-sign", choices=["+", "-"], default=None,
                   help="sign tag distinguishing the two mu branches in region 2")
    p.add_argument("--k0", type=float, default=1.0, help="reference inverse length")
    p.add_argument("--window", type=_parse_window, default=None,
                   help="level index window for alpha < -1/4, e.g. '-2..2'")
    p.add_argument("--e-max", type=float, default=None,
                   help="upper end of the energy grid (default 400 k0^2)")
    p.add_argument("--density-points", type=int, default=200)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override every verification threshold")
    p.add_argument("--format", dest="output_format", choices=["json", "csv"],
                   default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None,
                   help=f"output directory (default ${OUTPUT_DIR_ENV} or '.')")


def _config_from(args) -> RunConfig:
    return RunConfig(
        alpha=args.alpha, lam=args.lam, theta=args.theta, mu=args.mu,
        mu_sign=args.mu_sign, k0=args.k0, window=args.window,
        e_max=args.e_max if args.e_max is not None else 400.0 * args.k0**2,
        density_points=args.density_points, tolerance=args.tolerance,
        output_format=args.output_format, seed=args.seed)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="calogero",
        description="Spectra and eigenfunction expansions for the "
                    "inverse-square potential on the half-line.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("spectrum", cmd_spectrum), ("verify", cmd_verify),
                     ("expand", cmd_expand)):
        p = sub.add_parser(name)
        _add_common(p)
        if name == "expand":
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--input", help="two-column 'x value' file")
            group.add_argument("--expr",
                               help="expression in x (operators + - * / ^, "
                                    "functions exp sin cos sqrt ln)")
        p.set_defaults(func=fn)
    args = parser.parse_args(argv)
    return args.func(_config_from(args), args)


if __name__ == "__main__":
    sys.exit(main())
