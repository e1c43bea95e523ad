import csv
import io
import json

import numpy as np
import pytest

from symprod.errors import ConfigError, InvalidInputError, PreconditionError
from symprod.probes import (
    lipschitz_cone_probe,
    load_config,
    sample_interior,
    smoothness_loss_probe,
    sweep_report,
)
from symprod.domain import Circle, DomainSpec, psi_defining, boundary_distance

W_GRID = np.linspace(0.5, 0.99, 12)


def test_lipschitz_examples():
    r = lipschitz_cone_probe(1j, 0, [1e-2, 1e-3, 1e-4])
    assert r.verdict == "pass"
    assert {s["bidisc"] for s in r.samples} == {"outside"}
    r = lipschitz_cone_probe(1, 2, np.linspace(0.1, 0.9, 9))
    assert r.verdict == "informational"
    assert {s["bidisc"] for s in r.samples} == {"inside"} == {s["roots"] for s in r.samples}
    r = lipschitz_cone_probe(1, 1, [0.1, 0.4, 0.8])
    assert {s["bidisc"] for s in r.samples} == {"boundary-band"}


def test_lipschitz_rejects_bad_t():
    with pytest.raises(InvalidInputError):
        lipschitz_cone_probe(1j, 0, [0.0])
    with pytest.raises(InvalidInputError):
        lipschitz_cone_probe(1j, 0, [])


@pytest.mark.parametrize("m, n, beta, expected", [(1, 2, 0.5, -0.5), (2, 2, 2.5, -0.5), (1, 3, 1.25, -0.75)])
def test_smoothness_slopes(m, n, beta, expected):
    r = smoothness_loss_probe(m, n, beta, W_GRID)
    assert r.verdict == "pass"
    assert abs(r.fitted["slope"] - expected) <= 0.05
    lo, hi = r.fitted["slope_ci95"]
    assert lo <= r.fitted["slope"] <= hi


def test_smoothness_control_is_bounded():
    r = smoothness_loss_probe(1, 2, 2.0, W_GRID)
    assert r.verdict == "pass" and r.fitted["slope"] >= -0.05
    assert r.fitted["expected_slope"] is None


def test_smoothness_records_quadrature():
    r = smoothness_loss_probe(1, 2, 0.5, W_GRID)
    q = r.to_dict()["parameters"]["quadrature"]
    assert q["levels"] > 0 and q["order"] > 0 and q["check_order"] > q["order"]
    assert all(s["used"] for s in r.samples)


def test_smoothness_preconditions():
    with pytest.raises(PreconditionError):
        smoothness_loss_probe(1, 2, 0.5, [0.3, 0.6])
    with pytest.raises(PreconditionError):
        smoothness_loss_probe(2, 2, 1.5, W_GRID)
    with pytest.raises(InvalidInputError):
        smoothness_loss_probe(0, 2, 0.5, W_GRID)


def test_smoothness_too_few_points():
    r = smoothness_loss_probe(1, 2, 0.5, [0.6, 0.7, 0.8])
    assert r.verdict == "fail" and "usable" in r.fitted["reason"]


def test_report_serialization():
    r = lipschitz_cone_probe(0.5 + 1j, 0.2, [1e-2, 1e-3])
    d = json.loads(r.to_json())
    assert d["parameters"]["a"] == [0.5, 1.0]
    assert list(d) == sorted(d)
    rows = list(csv.DictReader(io.StringIO(r.to_csv())))
    assert len(rows) == 2 and float(rows[0]["s_0_re"]) == pytest.approx(2 - 0.2 * 1e-2)
    assert "s_1_im" in rows[0]


def test_sweep_suites():
    r = sweep_report({"n": 2, "samples": 20000, "suites": ["bidisc-equivalence", "defining-sign", "properness"]})
    assert r.verdict == "pass" and r.fitted["bidisc-equivalence"]["disagreements"] == 0
    r = sweep_report({"n": 3, "samples": 2000, "route_samples": 10,
                      "suites": ["product-embed", "route-agreement", "lojasiewicz"]})
    assert r.verdict == "pass"
    assert r.fitted["lojasiewicz"]["verdict"] == "informational"
    assert "exponent_ci95" in r.fitted["lojasiewicz"]


def test_sweep_n1_collapse():
    r = sweep_report({"n": 1, "samples": 500, "route_samples": 5,
                      "suites": ["defining-sign", "properness", "route-agreement"]})
    assert r.verdict == "pass"


def test_sweep_only_informational():
    r = sweep_report({"n": 2, "samples": 200, "suites": ["lojasiewicz"]})
    assert r.verdict == "informational"


def test_sweep_with_holes(tmp_path):
    dom = {"outer": {"center": [0, 0], "radius": 1}, "holes": [{"center": [0.4, 0], "radius": 0.15}]}
    (tmp_path / "d.json").write_text(json.dumps(dom))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"domain": "d.json", "n": 3, "samples": 1000, "route_samples": 5,
                               "suites": ["defining-sign", "route-agreement"]}))
    r = sweep_report(cfg)
    assert r.verdict == "pass" and r.parameters["domain"]["holes"]


@pytest.mark.parametrize(
    "cfg, field",
    [
        ({"n": 0}, "n"),
        ({"samples": "many"}, "samples"),
        ({"suites": ["bogus"]}, "suites"),
        ({"suites": []}, "suites"),
        ({"margin": -1}, "margin"),
        ({"colour": 1}, "colour"),
        ({"domain": {"outer": {"center": [0, 0], "radius": "big"}}}, "outer.radius"),
        ({"domain": {"outer": {"centre": [0, 0], "radius": 1}}}, "outer.center"),
        ({"n": 3, "suites": ["bidisc-equivalence"]}, "n"),
    ],
)
def test_config_errors(cfg, field):
    with pytest.raises(ConfigError) as exc:
        sweep_report(cfg)
    assert exc.value.field == field


def test_malformed_domain_file(tmp_path):
    (tmp_path / "d.json").write_text("{\"outer\": ")
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"domain": "d.json"}))
    with pytest.raises(ConfigError) as exc:
        load_config(cfg)
    assert exc.value.field == "domain"
    cfg.write_text(json.dumps({"domain": "missing.json"}))
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_determinism():
    cfg = {"n": 2, "samples": 2000, "seed": 7, "route_samples": 5,
           "suites": ["bidisc-equivalence", "route-agreement", "lojasiewicz"]}
    assert sweep_report(cfg).to_json() == sweep_report(cfg).to_json()
    assert sweep_report(cfg).to_json() != sweep_report({**cfg, "seed": 8}).to_json()
    assert sweep_report(cfg, seed=8).to_json() == sweep_report({**cfg, "seed": 8}).to_json()


def test_sample_interior(rng):
    d = DomainSpec(Circle(1j, 2), (Circle(1j, 0.5),))
    z = sample_interior(d, rng, (100, 3), 0.1)
    assert z.shape == (100, 3)
    assert np.all(boundary_distance(d, z) >= 0.1) and np.all(psi_defining(d, z) < 0)
