"""Command-line harness.

Two subcommands:

* ``run`` executes named verification suites against a configured model
  with seeded randomness and emits one JSON record per sample on stdout
  (the stream stays parseable even if truncated between lines).
* ``compute`` evaluates the partition function or a scalar product by
  brute-force contraction, residue summation, or both side by side.

Exit codes: 0 all checks passed, 1 any failure, 2 configuration error.

Randomness: numpy PCG64.  The generator for check ``c`` is seeded with
``SeedSequence([seed, REGISTRY_INDEX[c]])`` and consumed sample by
sample on the coordinating thread, so a given (config, seed) pair
produces identical parameter draws and hence identical residuals,
independently of --threads.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np
import yaml

from . import feq, pde, sampling
from .errors import ConfigError, YbLabError
from .special_fn import Regime
from .yb_core import ModelContext, TolerancePolicy
from .lattice_qty import dwbc_partition, scalar_product_bf, check_hw_actions
from .residue_int import sn_contour, z_contour
from .yb_core import verify_dybe, verify_rll

MODEL_SEED_KEY = 1000


# --- configuration -------------------------------------------------------

@dataclass
class RunConfig:
    ctx: ModelContext
    seed: int
    samples: int
    threads: int
    checks: list[str]
    tolerances: dict[str, float] = field(default_factory=dict)
    mu_is_random: bool = False


def _parse_complex(value: Any, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        parts = value.split(",")
        try:
            if len(parts) == 1:
                return complex(float(parts[0]))
            if len(parts) == 2:
                return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            pass
        raise ConfigError(f"{where}: cannot parse complex number from {value!r}")
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: expected [re, im] numbers, got {value!r}")
    raise ConfigError(f"{where}: expected a number, 're,im' string, or [re, im] pair")


def _parse_point_list(text: str, where: str) -> tuple[complex, ...]:
    items = [s for s in text.split(";") if s.strip()]
    return tuple(_parse_complex(s.strip(), where) for s in items)


def build_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = yaml.safe_load(fh) or {}
        except FileNotFoundError:
            raise ConfigError(f"config: file not found: {args.config}")
        except yaml.YAMLError as exc:
            raise ConfigError(f"config: not valid YAML: {exc}")
        if not isinstance(raw, dict):
            raise ConfigError("config: top level must be a mapping")

    model = raw.get("model", {})
    if not isinstance(model, dict):
        raise ConfigError("model: must be a mapping")
    run = raw.get("run", {})
    if not isinstance(run, dict):
        raise ConfigError("run: must be a mapping")

    L = args.L if args.L is not None else model.get("L", 3)
    if not isinstance(L, int) or not (1 <= L <= 10):
        raise ConfigError(f"model.L: expected an integer in 1..10, got {L!r}")

    gamma = _parse_complex(args.gamma, "--gamma") if args.gamma \
        else _parse_complex(model.get("gamma", [0.41, 0.07]), "model.gamma")

    regime_cfg = model.get("regime", {"elliptic": {"nome": [0.2, 0.0]}})
    if args.trig:
        regime = Regime.trigonometric()
    elif args.nome:
        regime = Regime.elliptic(_parse_complex(args.nome, "--nome"))
    elif regime_cfg == "trig" or regime_cfg == {"trig": True}:
        regime = Regime.trigonometric()
    elif isinstance(regime_cfg, dict) and "elliptic" in regime_cfg:
        ell = regime_cfg["elliptic"] or {}
        if not isinstance(ell, dict):
            raise ConfigError("model.regime.elliptic: must be a mapping")
        regime = Regime.elliptic(_parse_complex(ell.get("nome", [0.2, 0.0]),
                                                "model.regime.elliptic.nome"))
    else:
        raise ConfigError("model.regime: expected 'trig' or {elliptic: {nome: ...}}")

    tol_cfg = model.get("tolerance", {})
    if not isinstance(tol_cfg, dict):
        raise ConfigError("model.tolerance: must be a mapping")
    tol = TolerancePolicy(rel_tol=float(tol_cfg.get("rel_tol", 1e-9)),
                          abs_floor=float(tol_cfg.get("abs_floor", 1e-300)))

    seed = args.seed if args.seed is not None else run.get("seed", 0)
    if not isinstance(seed, int) or seed < 0 or seed >= 2 ** 64:
        raise ConfigError(f"run.seed: expected an unsigned 64-bit integer, got {seed!r}")

    mu_cfg = model.get("mu", "random")
    mu_is_random = False
    if args.mu:
        mu = _parse_point_list(args.mu, "--mu")
    elif mu_cfg == "random":
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence([seed, MODEL_SEED_KEY])))
        mu = sampling.sample_mu(rng, L)
        mu_is_random = True
    elif isinstance(mu_cfg, list):
        mu = tuple(_parse_complex(v, f"model.mu[{k}]") for k, v in enumerate(mu_cfg))
    else:
        raise ConfigError("model.mu: expected 'random' or a list of complex values")
    if len(mu) != L:
        raise ConfigError(f"model.mu: length {len(mu)} does not match model.L = {L}")

    try:
        ctx = ModelContext(L=L, gamma=gamma, mu=mu, regime=regime, tol=tol)
    except (ValueError, YbLabError) as exc:
        raise ConfigError(f"model: {exc}")

    samples = args.samples if args.samples is not None else run.get("samples", 20)
    if not isinstance(samples, int) or samples < 1:
        raise ConfigError(f"run.samples: expected a positive integer, got {samples!r}")
    threads = args.threads if args.threads is not None else run.get("threads", 1)
    if not isinstance(threads, int) or threads < 1:
        raise ConfigError(f"run.threads: expected a positive integer, got {threads!r}")

    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    else:
        checks = run.get("checks") or [name for name, cd in REGISTRY.items()
                                       if _regime_ok(cd, ctx)]
    if not isinstance(checks, list) or not checks:
        raise ConfigError("run.checks: expected a non-empty list of check names")
    for name in checks:
        if name not in REGISTRY:
            raise ConfigError(f"run.checks: unknown check {name!r}; "
                              f"known: {', '.join(REGISTRY)}")
        if not _regime_ok(REGISTRY[name], ctx):
            raise ConfigError(f"run.checks: check {name!r} requires the "
                              f"trigonometric regime")

    tol_over = raw.get("tolerances", {})
    if not isinstance(tol_over, dict):
        raise ConfigError("tolerances: must be a mapping of check name to value")
    tolerances = {}
    for name, value in tol_over.items():
        if name not in REGISTRY:
            raise ConfigError(f"tolerances: unknown check {name!r}")
        tolerances[name] = float(value)

    return RunConfig(ctx=ctx, seed=seed, samples=samples, threads=threads,
                     checks=checks, tolerances=tolerances, mu_is_random=mu_is_random)


# --- check registry ------------------------------------------------------

@dataclass(frozen=True)
class CheckDef:
    tolerance: float
    trig_only: bool
    prepare: Callable[[ModelContext, np.random.Generator], Any] | None
    draw: Callable[[ModelContext, np.random.Generator, Any], dict]
    evaluate: Callable[[ModelContext, dict, Any], float]


def _regime_ok(cd: CheckDef, ctx: ModelContext) -> bool:
    return not (cd.trig_only and ctx.is_elliptic)


def _theta_for(ctx, rng, span):
    return sampling.sample_theta(ctx, rng, range(-span, span + 1))


def _draw_dybe(ctx, rng, _state):
    pts = sampling.sample_spectral(ctx, rng, 3)
    return {"l1": pts[0], "l2": pts[1], "l3": pts[2],
            "theta": _theta_for(ctx, rng, 2)}


def _draw_rll(ctx, rng, _state):
    pts = sampling.sample_spectral(ctx, rng, 2)
    return {"l1": pts[0], "l2": pts[1], "theta": _theta_for(ctx, rng, ctx.L + 1)}


def _draw_hw(ctx, rng, _state):
    return {"lam": sampling.sample_spectral(ctx, rng, 1)[0],
            "theta": _theta_for(ctx, rng, ctx.L + 1)}


def _draw_identity(ctx, rng, _state):
    kinds = ("bb", "abn") if ctx.is_elliptic else ("ab", "tay", "tdy")
    kind = kinds[int(rng.integers(len(kinds)))]
    n = min(ctx.L, 2)
    theta = _theta_for(ctx, rng, 2 * ctx.L + 4)
    if kind == "ab":
        l1, l2 = sampling.sample_spectral(ctx, rng, 2)
        return {"kind": kind, "l1": l1, "l2": l2}
    if kind == "bb":
        l1, l2 = sampling.sample_spectral(ctx, rng, 2)
        return {"kind": kind, "l1": l1, "l2": l2, "theta": theta}
    if kind == "abn":
        pts = sampling.sample_spectral(ctx, rng, n + 1)
        return {"kind": kind, "l0": pts[0], "lams": pts[1:], "theta": theta}
    pts = sampling.sample_spectral(ctx, rng, 2 * n + 1)
    return {"kind": kind, "l0": pts[0], "xb": pts[1:n + 1], "yc": pts[n + 1:]}


def _eval_identity(ctx, p, _state):
    params = {k: v for k, v in p.items() if k != "kind"}
    return feq.verify_identity(p["kind"], ctx, **params)


def _draw_fx(ctx, rng, _state):
    pts = sampling.sample_spectral(ctx, rng, ctx.L + 1)
    return {"l0": pts[0], "lams": pts[1:], "theta": _theta_for(ctx, rng, 2 * ctx.L + 4)}


def _eval_fx(ctx, p, _state):
    bf = lambda pts, th: dwbc_partition(pts, th, ctx)
    return feq.fx_residual(p["l0"], p["lams"], p["theta"], ctx, bf)


def _draw_snad(ctx, rng, _state):
    n = min(ctx.L, 2)
    pts = sampling.sample_spectral(ctx, rng, 2 * n + 1)
    return {"l0": pts[0], "xb": pts[1:n + 1], "yc": pts[n + 1:]}


def _eval_snad(ctx, p, _state):
    bf = lambda xb, yc: scalar_product_bf(xb, yc, ctx)
    return max(feq.snad_residuals(p["l0"], p["xb"], p["yc"], ctx, bf))


def _draw_zcmp(ctx, rng, _state):
    pts = sampling.sample_spectral(ctx, rng, ctx.L, avoid=ctx.mu)
    return {"lams": pts, "theta": _theta_for(ctx, rng, 2 * ctx.L + 4)}


def _eval_zcmp(ctx, p, _state):
    zc = z_contour(p["lams"], p["theta"], ctx)
    zb = dwbc_partition(p["lams"], p["theta"], ctx)
    # both values ride along in the record next to their relative difference
    p["value_contour"] = zc
    p["value_bruteforce"] = zb
    return abs(zc - zb) / max(abs(zc), abs(zb), ctx.tol.abs_floor)


def _draw_sncmp(ctx, rng, _state):
    n = min(ctx.L, 2)
    pts = sampling.sample_spectral(ctx, rng, 2 * n, avoid=ctx.mu)
    return {"xb": pts[:n], "yc": pts[n:]}


def _eval_sncmp(ctx, p, _state):
    sc = sn_contour(p["xb"], p["yc"], ctx)
    sb = scalar_product_bf(p["xb"], p["yc"], ctx)
    p["value_contour"] = sc
    p["value_bruteforce"] = sb
    return abs(sc - sb) / max(abs(sc), abs(sb), ctx.tol.abs_floor)


def _draw_fzt(ctx, rng, _state):
    pts = sampling.sample_spectral(ctx, rng, ctx.L + 1)
    return {"l0": pts[0], "lams": pts[1:]}


def _eval_fzt(ctx, p, _state):
    bf = lambda pts, th: dwbc_partition(pts, th, ctx)
    return pde.fzt_residual(p["l0"], p["lams"], ctx, bf)


def _prep_zbar(ctx, rng):
    return pde.interpolate_zbar(ctx, rng=rng)


def _prep_zbar_and_control(ctx, rng):
    zbar = pde.interpolate_zbar(ctx, rng=rng)
    shape = (ctx.L,) * ctx.L
    control = pde.MultiPoly(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return zbar, control


def _draw_pde_point(ctx, rng, _state):
    return {"lams": sampling.sample_spectral(ctx, rng, ctx.L)}


def _eval_pde_omega(ctx, p, zbar):
    point = pde.PdeVars.from_lambdas(p["lams"], ctx)
    acts = pde.omega_actions(zbar, point, ctx)
    return max(abs(c) for c in acts.coefficients) / max(acts.scale, ctx.tol.abs_floor)


def _eval_pde_leading(ctx, p, state):
    zbar, control = state
    point = pde.PdeVars.from_lambdas(p["lams"], ctx)
    acts_c = pde.omega_actions(control, point, ctx)
    lead_c = pde.omega_leading_apply(control, point, ctx)
    agree = abs(acts_c.leading - lead_c) \
        / max(abs(acts_c.leading), abs(lead_c), ctx.tol.abs_floor)
    acts_z = pde.omega_actions(zbar, point, ctx)
    null = abs(pde.omega_leading_apply(zbar, point, ctx)) \
        / max(acts_z.scale, ctx.tol.abs_floor)
    return max(agree, null)


def _draw_dia(ctx, rng, _state):
    nvars = int(rng.integers(1, 5))
    deg = int(rng.integers(0, 9))
    shape = (deg + 1,) * nvars
    coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    point = [complex(a, b) for a, b in rng.uniform(-1, 1, (nvars, 2))]
    x0 = complex(*rng.uniform(-1, 1, 2))
    axis = int(rng.integers(nvars))
    return {"coeffs": coeffs, "point": point, "x0": x0, "axis": axis,
            "nvars": nvars, "deg": deg}


def _eval_dia(ctx, p, _state):
    poly = pde.MultiPoly(p["coeffs"])
    realized = pde.dia_realized(poly, p["axis"], p["x0"], p["point"])
    substituted = pde.dia_apply(lambda args: poly.evaluate(args[1:]), p["axis"] + 1, 0)(
        [p["x0"]] + list(p["point"]))
    return abs(realized - substituted) \
        / max(abs(realized), abs(substituted), ctx.tol.abs_floor)


REGISTRY: dict[str, CheckDef] = {
    "dybe": CheckDef(1e-9, False, None, _draw_dybe,
                     lambda ctx, p, s: verify_dybe(p["l1"], p["l2"], p["l3"],
                                                   p["theta"], ctx)),
    "rll": CheckDef(1e-9, False, None, _draw_rll,
                    lambda ctx, p, s: verify_rll(p["l1"], p["l2"], p["theta"], ctx)),
    "hw-actions": CheckDef(1e-9, False, None, _draw_hw,
                           lambda ctx, p, s: check_hw_actions(p["lam"], p["theta"], ctx)),
    "identities": CheckDef(1e-9, False, None, _draw_identity, _eval_identity),
    "fx": CheckDef(1e-9, False, None, _draw_fx, _eval_fx),
    "snad": CheckDef(1e-9, True, None, _draw_snad, _eval_snad),
    "z-contour-vs-bf": CheckDef(1e-8, False, None, _draw_zcmp, _eval_zcmp),
    "sn-contour-vs-bf": CheckDef(1e-6, True, None, _draw_sncmp, _eval_sncmp),
    "fzt": CheckDef(1e-9, True, None, _draw_fzt, _eval_fzt),
    "pde-omega": CheckDef(1e-7, True, _prep_zbar, _draw_pde_point, _eval_pde_omega),
    "pde-leading": CheckDef(1e-7, True, _prep_zbar_and_control, _draw_pde_point,
                            _eval_pde_leading),
    "dia-realization": CheckDef(1e-11, False, None, _draw_dia, _eval_dia),
}
REGISTRY_INDEX = {name: k for k, name in enumerate(REGISTRY)}


# --- report stream -------------------------------------------------------

def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.complexfloating,)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, np.integer)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _model_echo(cfg: RunConfig) -> dict:
    ctx = cfg.ctx
    regime = {"elliptic": {"nome": _jsonable(ctx.regime.params.nome)}} \
        if ctx.is_elliptic else "trig"
    return {"L": ctx.L, "gamma": _jsonable(ctx.gamma), "mu": _jsonable(list(ctx.mu)),
            "regime": regime, "rel_tol": ctx.tol.rel_tol}


def run_suite(cfg: RunConfig, out=None) -> int:
    """Execute the configured checks; returns the process exit code."""
    out = out or sys.stdout
    ctx = cfg.ctx
    all_pass = True
    header = {"record": "model", "seed": cfg.seed, "model": _model_echo(cfg),
              "checks": cfg.checks, "samples": cfg.samples}
    print(json.dumps(header), file=out, flush=True)
    for name in cfg.checks:
        cd = REGISTRY[name]
        tolerance = cfg.tolerances.get(name, cd.tolerance)
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence([cfg.seed, REGISTRY_INDEX[name]])))
        state = cd.prepare(ctx, rng) if cd.prepare else None
        draws = [cd.draw(ctx, rng, state) for _ in range(cfg.samples)]

        def one(indexed):
            k, params = indexed
            t0 = time.perf_counter()
            error = None
            try:
                residual = float(cd.evaluate(ctx, params, state))
            except YbLabError as exc:
                residual = None
                error = f"{type(exc).__name__}: {exc}"
            record = {"check": name, "seed": cfg.seed, "sample_index": k,
                      "params": _jsonable({k2: v for k2, v in params.items()
                                           if k2 != "coeffs"}),
                      "tolerance": tolerance,
                      "residual": residual,
                      "pass": residual is not None and residual <= tolerance}
            if error is not None:
                record["error"] = error
            record["wall_time_ms"] = (time.perf_counter() - t0) * 1e3
            return record

        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                records = list(pool.map(one, enumerate(draws)))
        else:
            records = [one(item) for item in enumerate(draws)]
        for record in records:
            all_pass &= record["pass"]
            print(json.dumps(record), file=out, flush=True)
        n_ok = sum(r["pass"] for r in records)
        print(f"[{name}] {n_ok}/{len(records)} passed (tolerance {tolerance:g})",
              file=sys.stderr)
    return 0 if all_pass else 1


# --- compute subcommand --------------------------------------------------

def _compute_z(cfg: RunConfig, args) -> int:
    ctx = cfg.ctx
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence([cfg.seed, 2000])))
    points = _parse_point_list(args.points, "--points") if args.points \
        else sampling.sample_spectral(ctx, rng, ctx.L, avoid=ctx.mu)
    if len(points) != ctx.L:
        raise ConfigError(f"--points: need exactly L = {ctx.L} points, got {len(points)}")
    theta = _parse_complex(args.theta, "--theta") if args.theta \
        else sampling.sample_theta(ctx, rng, range(-(ctx.L + 2), 2 * ctx.L + 3))
    echo = {"record": "compute-z", "model": _model_echo(cfg), "method": args.method,
            "points": _jsonable(list(points)), "theta": _jsonable(theta)}
    if args.method in ("bruteforce", "both"):
        echo["bruteforce"] = _jsonable(dwbc_partition(points, theta, ctx))
    if args.method in ("contour", "both"):
        echo["contour"] = _jsonable(z_contour(points, theta, ctx))
    if args.method == "both":
        zb = complex(*echo["bruteforce"])
        zc = complex(*echo["contour"])
        echo["rel_diff"] = abs(zb - zc) / max(abs(zb), abs(zc), ctx.tol.abs_floor)
    print(json.dumps(echo))
    return 0


def _compute_sn(cfg: RunConfig, args) -> int:
    ctx = cfg.ctx
    if ctx.is_elliptic:
        raise ConfigError("compute sn: requires the trigonometric regime (--trig)")
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence([cfg.seed, 2001])))
    if args.xb or args.yc:
        if not (args.xb and args.yc):
            raise ConfigError("compute sn: provide both --xb and --yc, or neither")
        xb = _parse_point_list(args.xb, "--xb")
        yc = _parse_point_list(args.yc, "--yc")
    else:
        n = args.n if args.n is not None else min(ctx.L, 2)
        if n < 0:
            raise ConfigError("--n: must be non-negative")
        pts = sampling.sample_spectral(ctx, rng, 2 * n, avoid=ctx.mu)
        xb, yc = pts[:n], pts[n:]
    echo = {"record": "compute-sn", "model": _model_echo(cfg), "method": args.method,
            "xb": _jsonable(list(xb)), "yc": _jsonable(list(yc))}
    if args.method in ("bruteforce", "both"):
        echo["bruteforce"] = _jsonable(scalar_product_bf(xb, yc, ctx))
    if args.method in ("contour", "both"):
        echo["contour"] = _jsonable(sn_contour(xb, yc, ctx))
    if args.method == "both":
        sb = complex(*echo["bruteforce"])
        sc = complex(*echo["contour"])
        echo["rel_diff"] = abs(sb - sc) / max(abs(sb), abs(sc), ctx.tol.abs_floor)
    print(json.dumps(echo))
    return 0


# --- entry point ----------------------------------------------------------

def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("--L", type=int, help="chain length")
    parser.add_argument("--gamma", help="crossing parameter as RE,IM")
    parser.add_argument("--nome", help="elliptic nome as RE,IM")
    parser.add_argument("--trig", action="store_true",
                        help="use the trigonometric (six-vertex) regime")
    parser.add_argument("--mu", help="inhomogeneities as RE,IM;RE,IM;...")
    parser.add_argument("--seed", type=int, help="64-bit RNG seed")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yblab",
        description="Verification suites and evaluators for dynamical "
                    "Yang-Baxter lattice quantities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run named verification checks")
    _add_model_flags(p_run)
    p_run.add_argument("--checks", help="comma-separated check names "
                       f"(known: {', '.join(REGISTRY)})")
    p_run.add_argument("--samples", type=int, help="samples per check")
    p_run.add_argument("--threads", type=int, help="worker threads (1 = bit-stable)")
    p_run.add_argument("--out", help="write the report stream to this file")

    p_cmp = sub.add_parser("compute", help="evaluate a lattice quantity")
    cmp_sub = p_cmp.add_subparsers(dest="quantity", required=True)
    p_z = cmp_sub.add_parser("z", help="domain-wall partition function")
    _add_model_flags(p_z)
    p_z.add_argument("--method", choices=("bruteforce", "contour", "both"),
                     default="both")
    p_z.add_argument("--points", help="spectral points as RE,IM;RE,IM;...")
    p_z.add_argument("--theta", help="dynamical parameter as RE,IM")
    p_sn = cmp_sub.add_parser("sn", help="off-shell scalar product")
    _add_model_flags(p_sn)
    p_sn.add_argument("--method", choices=("bruteforce", "contour", "both"),
                      default="both")
    p_sn.add_argument("--xb", help="creation-side points as RE,IM;...")
    p_sn.add_argument("--yc", help="annihilation-side points as RE,IM;...")
    p_sn.add_argument("--n", type=int, help="random point count when none given")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    # flags that run doesn't define
    for name in ("checks", "samples", "threads"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        cfg = build_config(args)
        if args.command == "run":
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    return run_suite(cfg, out=fh)
            return run_suite(cfg)
        if args.quantity == "z":
            return _compute_z(cfg, args)
        return _compute_sn(cfg, args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except YbLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
