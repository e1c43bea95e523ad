"""Numerical experiments with reproducible JSON/CSV reports.

Each probe returns a :class:`ProbeReport`.  Reports serialize with sorted
keys and record the seed and every quadrature parameter used, so the same
inputs always produce the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .contour import graded_circle_rule, integrate_rule
from .domain import BOUNDARY, OUTSIDE, DomainSpec, boundary_distance, psi_defining
from .errors import ConfigError, InvalidInputError, PreconditionError
from .geometry import (
    bidisc_contains,
    diagonal_embed,
    distance_upper_bound,
    f_defining,
    product_embed,
    root_bound,
    symprod_classify,
)
from .holomap import Blaschke, Polynomial, PowerLaw
from .induced import sigma_phi_direct, sigma_phi_integral
from .roots import solve_roots
from .sympoly import elem_sym, q_and_dq

PASS, FAIL, INFO = "pass", "fail", "informational"


def to_jsonable(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


@dataclass
class ProbeReport:
    probe: str
    parameters: dict
    samples: list = field(default_factory=list)
    verdict: str = INFO
    fitted: dict = field(default_factory=dict)
    seed: int | None = None

    def to_dict(self):
        return to_jsonable(
            {
                "probe": self.probe,
                "parameters": self.parameters,
                "seed": self.seed,
                "verdict": self.verdict,
                "fitted": self.fitted,
                "samples": self.samples,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        """One row per sample; complex values split into _re/_im columns."""
        rows = [_flatten(s) for s in self.samples]
        cols = list(dict.fromkeys(k for r in rows for k in r))
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue()

    def write(self, out=None, csv_path=None):
        if out is not None:
            Path(out).write_text(self.to_json(), encoding="utf-8")
        if csv_path is not None:
            Path(csv_path).write_text(self.to_csv(), encoding="utf-8")


def _flatten(sample, prefix=""):
    out = {}
    for k, v in sample.items():
        name = f"{prefix}{k}"
        if isinstance(v, (complex, np.complexfloating)):
            out[f"{name}_re"] = float(v.real)
            out[f"{name}_im"] = float(v.imag)
        elif isinstance(v, (list, tuple, np.ndarray)):
            for i, vi in enumerate(v):
                out.update(_flatten({f"{i}": vi}, f"{name}_"))
        elif isinstance(v, dict):
            out.update(_flatten(v, f"{name}."))
        else:
            out[name] = to_jsonable(v)
    return out


# -- Lipschitz cone at the boundary point (2, 1) ----------------------------

LIPSCHITZ_MARGIN = 1e-12


def lipschitz_cone_probe(a, b, t_values, margin=LIPSCHITZ_MARGIN) -> ProbeReport:
    """Classify the segment (2 - b t, 1 - a t) leaving the diagonal point (2, 1).

    Whenever Im a differs from Im b every sampled point must fall outside
    the symmetrized bidisc; otherwise the verdict is informational.
    """
    a, b = complex(a), complex(b)
    t = np.asarray(t_values, dtype=float)
    if t.ndim != 1 or t.size == 0 or np.any((t <= 0) | (t >= 1)):
        raise InvalidInputError("t_values must be a non-empty list in (0, 1)")
    s = np.stack([2 - b * t, 1 - a * t], axis=-1)
    closed = np.atleast_1d(bidisc_contains(s, margin))
    roots = np.atleast_1d(symprod_classify(DomainSpec.unit_disc(), s, margin))
    samples = [
        {"t": float(ti), "s": si, "bidisc": str(c), "roots": str(r)}
        for ti, si, c, r in zip(t, s, closed, roots)
    ]
    if a.imag != b.imag:
        ok = all(c == OUTSIDE and r == OUTSIDE for c, r in zip(closed, roots))
        verdict = PASS if ok else FAIL
    else:
        verdict = INFO
    params = {"a": a, "b": b, "t_values": t, "margin": margin, "quadrature": None}
    return ProbeReport("lipschitz", params, samples, verdict)


# -- smoothness loss --------------------------------------------------------

SLOPE_TOL = 0.05
MIN_POINTS = 6
GRADED_LEVELS = 48
GRADED_ORDER = 16
CHECK_ORDER = 24
POINT_RTOL = 1e-8


def _diagonal_J(u, w, n, m, rule):
    s = diagonal_embed(w, n)

    def integrand(t):
        q, _ = q_and_dq(s, t)
        return u(t) / q**m

    return complex(integrate_rule(rule, integrand))


def smoothness_loss_probe(m, n, beta, w_grid, levels=GRADED_LEVELS, order=GRADED_ORDER,
                          check_order=CHECK_ORDER) -> ProbeReport:
    """Growth rate of the Cauchy-type integral of (1 - t)^beta at diagonal points.

    The integral over the unit circle of (1-t)^beta / q(s;t)^m at the
    diagonal point of w behaves like (1 - w)^(beta - (mn - 1)) as w -> 1
    when beta < mn - 1, and stays bounded otherwise.  The slope of
    log|J| against log(1 - w) is fitted and compared with that rate.
    """
    if int(m) != m or int(n) != n or m < 1 or n < 1:
        raise InvalidInputError("m and n must be positive integers")
    k = m * n - 1
    if not beta > k - 1:
        raise PreconditionError(f"beta must exceed mn - 2 = {k - 1}")
    w = np.asarray(w_grid, dtype=float)
    if w.ndim != 1 or np.any((w < 0.5) | (w > 0.99)):
        raise PreconditionError("w_grid must lie in [0.5, 0.99]")
    u = PowerLaw(beta)
    rule = graded_circle_rule(levels=levels, order=order)
    check = graded_circle_rule(levels=levels, order=check_order)
    samples, keep_x, keep_y = [], [], []
    for wi in w:
        val = _diagonal_J(u, wi, n, m, rule)
        ref = _diagonal_J(u, wi, n, m, check)
        err = abs(val - ref)
        ok = math.isfinite(err) and err <= POINT_RTOL * (1 + abs(ref))
        samples.append({"w": float(wi), "J": val, "est_error": err, "used": ok})
        if ok:
            keep_x.append(math.log(1 - wi))
            keep_y.append(math.log(abs(val)))
    expected = beta - k if beta < k else None
    params = {
        "m": m,
        "n": n,
        "beta": beta,
        "w_grid": w,
        "quadrature": {
            "rule": "graded Gauss-Legendre on the unit circle",
            "levels": levels,
            "order": order,
            "check_order": check_order,
            "point_rtol": POINT_RTOL,
        },
    }
    if len(keep_x) < MIN_POINTS:
        return ProbeReport("smoothness", params, samples, FAIL,
                           {"reason": f"only {len(keep_x)} usable points (< {MIN_POINTS})"})
    fit = stats.linregress(keep_x, keep_y)
    half = stats.t.ppf(0.975, len(keep_x) - 2) * fit.stderr if len(keep_x) > 2 else float("nan")
    fitted = {
        "slope": fit.slope,
        "slope_ci95": [fit.slope - half, fit.slope + half],
        "intercept": fit.intercept,
        "expected_slope": expected,
        "points_used": len(keep_x),
    }
    if expected is None:
        verdict = PASS if fit.slope >= -SLOPE_TOL else FAIL
    else:
        verdict = PASS if abs(fit.slope - expected) <= SLOPE_TOL else FAIL
    return ProbeReport("smoothness", params, samples, verdict, fitted)


# -- sweeps -----------------------------------------------------------------

SUITES = (
    "bidisc-equivalence",
    "defining-sign",
    "properness",
    "product-embed",
    "route-agreement",
    "lojasiewicz",
)
DEFAULTS = {
    "n": 2,
    "samples": 1000,
    "seed": 0,
    "suites": ["bidisc-equivalence"],
    "margin": 1e-9,
    "route_samples": 50,
    "route_nodes": 2048,
    "route_tol": 1e-6,
    "clearance": 0.1,
    "embed_tol": 1e-12,
}


def sample_interior(d: DomainSpec, rng, shape, clearance=0.0):
    """Uniform points of the domain at distance >= clearance from its boundary."""
    total = int(np.prod(shape))
    out = np.empty(0, dtype=complex)
    c0, r0 = d.outer.center, d.outer.radius
    while out.size < total:
        k = 2 * (total - out.size) + 16
        z = c0 + r0 * np.sqrt(rng.uniform(size=k)) * np.exp(2j * np.pi * rng.uniform(size=k))
        good = boundary_distance(d, z) >= clearance
        if clearance == 0.0:
            good &= psi_defining(d, z) < 0
        out = np.concatenate([out, z[good]])
    return out[:total].reshape(shape)


def _mixed_points(rng, count, n, radius=1.5, box=3.0):
    # half symmetrized random roots, half uniform coefficient tuples
    h = count // 2
    z = radius * np.sqrt(rng.uniform(size=(h, n))) * np.exp(2j * np.pi * rng.uniform(size=(h, n)))
    r = box * np.sqrt(rng.uniform(size=(count - h, n)))
    u = r * np.exp(2j * np.pi * rng.uniform(size=(count - h, n)))
    return np.concatenate([elem_sym(z), u])


def _suite_bidisc(cfg, rng, d):
    if cfg["n"] != 2:
        raise ConfigError("n: bidisc-equivalence needs n = 2", field="n")
    s = _mixed_points(rng, cfg["samples"], 2)
    margin = cfg["margin"]
    closed = bidisc_contains(s, margin)
    roots = symprod_classify(DomainSpec.unit_disc(), s, 0.0)
    decided = closed != BOUNDARY
    bad = decided & (closed != roots)
    rows = [{"s": s[i], "bidisc": str(closed[i]), "roots": str(roots[i])} for i in np.flatnonzero(bad)]
    summary = {"samples": int(s.shape[0]), "decided": int(decided.sum()), "disagreements": int(bad.sum())}
    return summary, rows, PASS if not bad.any() else FAIL


def _suite_defining_sign(cfg, rng, d):
    n, count, margin = cfg["n"], cfg["samples"], cfg["margin"]
    c0, r0 = d.outer.center, d.outer.radius
    z = c0 + 1.2 * r0 * np.sqrt(rng.uniform(size=(count, n))) * np.exp(
        2j * np.pi * rng.uniform(size=(count, n))
    )
    truth = psi_defining(d, z).max(axis=-1)
    f = f_defining(d, elem_sym(z))
    decided = np.abs(truth) > margin
    bad = decided & ((f < 0) != (truth < 0))
    rows = [{"z": z[i], "f": float(f[i]), "truth": float(truth[i])} for i in np.flatnonzero(bad)]
    summary = {"samples": count, "decided": int(decided.sum()), "disagreements": int(bad.sum())}
    return summary, rows, PASS if not bad.any() else FAIL


def _suite_properness(cfg, rng, d):
    n, count = cfg["n"], cfg["samples"]
    r = 10.0 ** rng.uniform(-2, 2, size=count)
    dirs = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    s = dirs / np.linalg.norm(dirs, axis=-1, keepdims=True) * r[:, None]
    bound = root_bound(s)
    excess = np.abs(solve_roots(s)).max(axis=-1) / bound - 1
    bad = excess > 1e-8
    rows = [{"s": s[i], "excess": float(excess[i])} for i in np.flatnonzero(bad)]
    summary = {"samples": count, "violations": int(bad.sum()), "max_excess": float(excess.max())}
    return summary, rows, PASS if not bad.any() else FAIL


def _suite_product_embed(cfg, rng, d):
    n, count = cfg["n"], cfg["samples"]
    if n < 3:
        raise ConfigError("n: product-embed needs n >= 3", field="n")
    z = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    direct = elem_sym(z)
    via = product_embed(elem_sym(z[:, :2]), elem_sym(z[:, 2:]))
    scale = 1 + np.abs(z).max(axis=-1)
    rel = np.abs(direct - via).max(axis=-1) / scale**n
    bad = rel > cfg["embed_tol"]
    rows = [{"z": z[i], "error": float(rel[i])} for i in np.flatnonzero(bad)]
    summary = {"samples": count, "failures": int(bad.sum()), "max_error": float(rel.max())}
    return summary, rows, PASS if not bad.any() else FAIL


def _random_map(rng, d):
    if rng.uniform() < 0.5:
        deg = int(rng.integers(1, 5))
        coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        return Polynomial(coeffs)
    deg = int(rng.integers(1, 4))
    zeros = 0.9 * np.sqrt(rng.uniform(size=deg)) * np.exp(2j * np.pi * rng.uniform(size=deg))
    return Blaschke(zeros, np.exp(2j * np.pi * rng.uniform()))


def route_agreement_error(phi, s, d, N):
    """max |direct - integral| divided by 1 + max |direct|."""
    direct = sigma_phi_direct(phi, s).value
    integral = sigma_phi_integral(phi, s, d, N).value
    return float(np.max(np.abs(direct - integral)) / (1 + np.max(np.abs(direct))))


def _suite_route(cfg, rng, d):
    n, count, N = cfg["n"], cfg["route_samples"], cfg["route_nodes"]
    rows, worst = [], 0.0
    for i in range(count):
        phi = _random_map(rng, d)
        if isinstance(phi, Blaschke) and d != DomainSpec.unit_disc():
            phi = Polynomial(phi.zeros)
        z = sample_interior(d, rng, (n,), cfg["clearance"])
        err = route_agreement_error(phi, elem_sym(z), d, N)
        worst = max(worst, err)
        if err > cfg["route_tol"]:
            rows.append({"index": i, "map": phi.kind, "z": z, "error": err})
    summary = {"samples": count, "nodes": N, "failures": len(rows), "max_error": worst}
    return summary, rows, PASS if not rows else FAIL


def _suite_lojasiewicz(cfg, rng, d):
    # push one root outward by eps and compare the distance bound with f
    n, count = cfg["n"], cfg["samples"]
    z = sample_interior(d, rng, (count, n), 0.05)
    c0, r0 = d.outer.center, d.outer.radius
    eps = 10.0 ** rng.uniform(-6, -1, size=count)
    ang = np.exp(2j * np.pi * rng.uniform(size=count))
    z[:, 0] = c0 + r0 * (1 + eps) * ang
    s = elem_sym(z)
    f = f_defining(d, s)
    g = distance_upper_bound(d, s)
    keep = (f > 0) & (g > 0)
    x, y = np.log(f[keep]), np.log(g[keep])
    fit = stats.linregress(x, y)
    half = stats.t.ppf(0.975, x.size - 2) * fit.stderr
    fitted = {
        "exponent": fit.slope,
        "exponent_ci95": [fit.slope - half, fit.slope + half],
        "log_constant": fit.intercept,
        "points_used": int(x.size),
    }
    return fitted, [], INFO


_RUNNERS = {
    "bidisc-equivalence": _suite_bidisc,
    "defining-sign": _suite_defining_sign,
    "properness": _suite_properness,
    "product-embed": _suite_product_embed,
    "route-agreement": _suite_route,
    "lojasiewicz": _suite_lojasiewicz,
}


def load_config(config, base_dir=None) -> tuple[dict, DomainSpec]:
    """Validate a sweep configuration and resolve its domain."""
    if isinstance(config, (str, Path)):
        path = Path(config)
        try:
            config = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})", field="config") from exc
        base_dir = path.parent if base_dir is None else base_dir
    if not isinstance(config, dict):
        raise ConfigError("config: expected a JSON object", field="config")
    unknown = set(config) - set(DEFAULTS) - {"domain"}
    if unknown:
        name = sorted(unknown)[0]
        raise ConfigError(f"{name}: unknown field", field=name)
    cfg = {**DEFAULTS, **config}
    for key in ("n", "samples", "seed", "route_samples", "route_nodes"):
        v = cfg[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < (0 if key == "seed" else 1):
            raise ConfigError(f"{key}: expected a positive integer", field=key)
    for key in ("margin", "route_tol", "clearance", "embed_tol"):
        v = cfg[key]
        if not isinstance(v, (int, float)) or isinstance(v, bool) or v < 0:
            raise ConfigError(f"{key}: expected a nonnegative number", field=key)
    suites = cfg["suites"]
    if not isinstance(suites, list) or not suites:
        raise ConfigError("suites: expected a non-empty list", field="suites")
    for sname in suites:
        if sname not in _RUNNERS:
            raise ConfigError(f"suites: unknown suite {sname!r}", field="suites")
    dom = cfg.pop("domain", None)
    if dom is None:
        d = DomainSpec.unit_disc()
    elif isinstance(dom, str):
        p = Path(dom)
        if not p.is_absolute() and base_dir is not None:
            p = Path(base_dir) / p
        try:
            d = DomainSpec.load(p)
        except OSError as exc:
            raise ConfigError(f"domain: cannot read {p} ({exc.strerror})", field="domain") from exc
    else:
        d = DomainSpec.from_dict(dom)
    return cfg, d


def sweep_report(config, base_dir=None, seed=None) -> ProbeReport:
    """Run the selected invariant suites on random samples."""
    cfg, d = load_config(config, base_dir)
    if seed is not None:
        cfg["seed"] = int(seed)
    rng = np.random.default_rng(cfg["seed"])
    results, rows, verdicts = {}, [], []
    for name in cfg["suites"]:
        summary, bad, verdict = _RUNNERS[name](cfg, rng, d)
        results[name] = {"verdict": verdict, **summary}
        rows += [{"suite": name, **r} for r in bad]
        verdicts.append(verdict)
    decisive = [v for v in verdicts if v != INFO]
    verdict = INFO if not decisive else (PASS if all(v == PASS for v in decisive) else FAIL)
    params = {
        **{k: v for k, v in cfg.items() if k != "seed"},
        "domain": d.to_dict(),
        "quadrature": {"rule": "trapezoidal", "nodes_per_curve": cfg["route_nodes"]},
    }
    return ProbeReport("sweep", params, rows, verdict, results, cfg["seed"])
