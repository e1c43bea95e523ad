"""Command-line entry point: ``symprod <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import holomap
from .domain import DomainSpec
from .errors import ConfigError, SymProdError
from .geometry import f_defining, symprod_contains
from .induced import gamma_inverse, sigma_phi_direct, sigma_phi_integral
from .probes import (
    to_jsonable,
    lipschitz_cone_probe,
    smoothness_loss_probe,
    sweep_report,
)


def _point(values, name="--s"):
    if len(values) % 2:
        raise ConfigError(f"{name}: expected an even number of reals (re im pairs)", field=name)
    v = np.asarray(values, dtype=float)
    return v[0::2] + 1j * v[1::2]


def _json_arg(text, name):
    """Inline JSON if it looks like an object, otherwise a file path."""
    try:
        raw = text if text.lstrip().startswith("{") else Path(text).read_text(encoding="utf-8")
        return json.loads(raw)
    except OSError as exc:
        raise ConfigError(f"{name}: cannot read {text} ({exc.strerror})", field=name) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{name}: invalid JSON ({exc})", field=name) from exc


def _domain(arg):
    return DomainSpec.unit_disc() if arg is None else DomainSpec.from_dict(_json_arg(arg, "domain"))


def _emit(obj):
    print(json.dumps(to_jsonable(obj), sort_keys=True, indent=2))


def cmd_contains(args):
    d = _domain(args.domain)
    p = symprod_contains(d, _point(args.s), args.margin)
    _emit(
        {
            "classification": p.classification,
            "f": float(f_defining(d, p.s)),
            "roots": p.roots.roots,
            "stratum": {"k": p.stratum.k, "multiplicities": list(p.stratum.multiplicities)},
        }
    )


def cmd_map(args):
    phi = holomap.from_dict(_json_arg(args.phi, "phi"))
    s = _point(args.s)
    out = {}
    if args.route in ("direct", "both"):
        r = sigma_phi_direct(phi, s)
        out["direct"] = {"value": r.value, "est_error": r.est_error}
    if args.route in ("integral", "both"):
        r = sigma_phi_integral(phi, s, _domain(args.domain), args.nodes)
        out["integral"] = {
            "value": r.value,
            "est_error": r.est_error,
            "quadrature_nodes": r.quadrature_nodes,
        }
    if args.route == "both":
        out["max_difference"] = float(np.max(np.abs(out["direct"]["value"] - out["integral"]["value"])))
    _emit(out)


def cmd_gamma(args):
    discs = [(complex(cx, cy), r, int(m)) for cx, cy, r, m in args.disc]
    r = gamma_inverse(_point(args.s), discs, _domain(args.domain), args.nodes)
    _emit({"roots": r.roots, "clusters": [{"center": c, "multiplicity": m} for c, m in r.clusters]})


def _probe_config(args):
    return {} if args.config is None else _json_arg(args.config, "config")


def _complex_field(cfg, key, default=None):
    v = cfg.get(key, default)
    if v is None:
        raise ConfigError(f"{key}: missing", field=key)
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise ConfigError(f"{key}: expected a number or [re, im]", field=key)


def cmd_probe(args):
    if args.kind == "sweep":
        if args.config is None:
            raise ConfigError("--config is required for the sweep probe", field="config")
        report = sweep_report(args.config, seed=args.seed)
    else:
        cfg = _probe_config(args)
        if args.kind == "lipschitz":
            t = cfg.get("t_values", [1e-2, 1e-3, 1e-4])
            report = lipschitz_cone_probe(
                _complex_field(cfg, "a", [0.0, 1.0]), _complex_field(cfg, "b", 0.0), t
            )
        else:
            w = cfg.get("w_grid", list(np.linspace(0.5, 0.99, 12)))
            report = smoothness_loss_probe(
                int(cfg.get("m", 1)), int(cfg.get("n", 2)), float(cfg.get("beta", 0.5)), w
            )
        report.seed = args.seed
    report.write(args.out, args.csv)
    if args.out is None:
        sys.stdout.write(report.to_json())
    return 0 if report.verdict != "fail" else 1


def build_parser():
    p = argparse.ArgumentParser(prog="symprod", description="Numerics on symmetric products of planar domains.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("contains", help="classify a point of the symmetric product")
    c.add_argument("--domain", help="domain JSON file or inline object (default: unit disc)")
    c.add_argument("--s", nargs="+", type=float, required=True, help="coefficients as re im pairs")
    c.add_argument("--margin", type=float, default=0.0)
    c.set_defaults(func=cmd_contains)

    m = sub.add_parser("map", help="evaluate an induced map")
    m.add_argument("--phi", required=True, help="map JSON file or inline object")
    m.add_argument("--route", choices=("direct", "integral", "both"), default="both")
    m.add_argument("--s", nargs="+", type=float, required=True)
    m.add_argument("--domain")
    m.add_argument("--nodes", type=int, default=1024)
    m.set_defaults(func=cmd_map)

    g = sub.add_parser("gamma", help="recover roots disc by disc")
    g.add_argument("--s", nargs="+", type=float, required=True)
    g.add_argument("--disc", nargs=4, type=float, action="append", required=True,
                   metavar=("CX", "CY", "R", "MULT"))
    g.add_argument("--domain")
    g.add_argument("--nodes", type=int, default=256)
    g.set_defaults(func=cmd_gamma)

    pr = sub.add_parser("probe", help="run an experiment and write a report")
    pr.add_argument("kind", choices=("lipschitz", "smoothness", "sweep"))
    pr.add_argument("--config")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out")
    pr.add_argument("--csv")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except SymProdError as exc:
        field = getattr(exc, "field", None)
        extra = f" [field: {field}]" if field else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
