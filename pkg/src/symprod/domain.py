"""Planar domains with circular boundary.

A domain is an open outer disc with finitely many pairwise-disjoint closed
discs removed.  The defining function

    psi(z) = max(|z - c0| / R0, max_j r_j / |z - c_j|) - 1

is negative exactly on the domain, continuous and subharmonic away from the
hole centres.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvalidInputError, PoleError

INSIDE = "inside"
BOUNDARY = "boundary-band"
OUTSIDE = "outside"
MIN_NODES = 4


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float


@dataclass(frozen=True)
class DomainSpec:
    """Outer circle minus closed holes."""

    outer: Circle
    holes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "outer", _circle(self.outer, "outer"))
        holes = tuple(_circle(h, f"holes[{i}]") for i, h in enumerate(self.holes))
        object.__setattr__(self, "holes", holes)
        c0, r0 = self.outer.center, self.outer.radius
        for i, h in enumerate(holes):
            if not abs(h.center - c0) + h.radius < r0:
                raise InvalidInputError(
                    f"holes[{i}]: closed hole must lie strictly inside the outer disc"
                )
        for i in range(len(holes)):
            for j in range(i + 1, len(holes)):
                a, b = holes[i], holes[j]
                if not abs(a.center - b.center) > a.radius + b.radius:
                    raise InvalidInputError(
                        f"holes[{i}], holes[{j}]: closed holes must be pairwise disjoint"
                    )

    @classmethod
    def disc(cls, center=0.0, radius=1.0):
        return cls(Circle(complex(center), float(radius)))

    @classmethod
    def unit_disc(cls):
        return cls.disc()

    @property
    def circles(self):
        return (self.outer,) + self.holes

    def to_dict(self):
        def c(circ):
            return {"center": [circ.center.real, circ.center.imag], "radius": circ.radius}

        return {"outer": c(self.outer), "holes": [c(h) for h in self.holes]}

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise ConfigError("domain: expected a JSON object", field="domain")
        if "outer" not in d:
            raise ConfigError("domain: missing field 'outer'", field="outer")
        outer = _parse_circle(d["outer"], "outer")
        raw = d.get("holes", [])
        if not isinstance(raw, list):
            raise ConfigError("holes: expected a list", field="holes")
        holes = [_parse_circle(h, f"holes[{i}]") for i, h in enumerate(raw)]
        try:
            return cls(outer, tuple(holes))
        except InvalidInputError as exc:
            field = str(exc).split(":")[0]
            raise ConfigError(str(exc), field=field) from exc

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"domain: invalid JSON ({exc})", field="domain") from exc
        return cls.from_dict(d)

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _circle(c, name):
    if isinstance(c, Circle):
        center, radius = complex(c.center), float(c.radius)
    else:
        center, radius = c
        center, radius = complex(center), float(radius)
    if not (np.isfinite(center) and np.isfinite(radius)) or radius <= 0:
        raise InvalidInputError(f"{name}: radius must be positive and finite")
    return Circle(center, radius)


def _parse_circle(d, name):
    if not isinstance(d, dict):
        raise ConfigError(f"{name}: expected an object", field=name)
    for key in ("center", "radius"):
        if key not in d:
            raise ConfigError(f"{name}.{key}: missing", field=f"{name}.{key}")
    c = d["center"]
    if (
        not isinstance(c, (list, tuple))
        or len(c) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)
    ):
        raise ConfigError(f"{name}.center: expected [re, im]", field=f"{name}.center")
    r = d["radius"]
    if not isinstance(r, (int, float)) or isinstance(r, bool) or not r > 0:
        raise ConfigError(f"{name}.radius: expected a positive number", field=f"{name}.radius")
    return Circle(complex(c[0], c[1]), float(r))


def psi_defining(d: DomainSpec, z) -> np.ndarray:
    """Subharmonic defining function; raises PoleError at a hole centre."""
    z = np.asarray(z, dtype=complex)
    val = np.abs(z - d.outer.center) / d.outer.radius
    for h in d.holes:
        dist = np.abs(z - h.center)
        if np.any(dist == 0):
            raise PoleError(f"psi has a pole at hole centre {h.center}")
        val = np.maximum(val, h.radius / dist)
    return val - 1.0


def classify(values, margin=0.0) -> np.ndarray:
    """Map defining-function values to the inside/band/outside trichotomy."""
    v = np.asarray(values, dtype=float)
    out = np.full(v.shape, BOUNDARY, dtype=object)
    out[v < -margin] = INSIDE
    out[v > margin] = OUTSIDE
    return out if out.ndim else out.item()


def contains_point(d: DomainSpec, z, margin=0.0):
    """Inside iff psi < -margin, outside iff psi > margin."""
    if margin < 0:
        raise InvalidInputError("margin must be nonnegative")
    return classify(psi_defining(d, z), margin)


def boundary_distance(d: DomainSpec, z) -> np.ndarray:
    """Signed Euclidean distance to the boundary (positive inside)."""
    z = np.asarray(z, dtype=complex)
    dist = d.outer.radius - np.abs(z - d.outer.center)
    for h in d.holes:
        dist = np.minimum(dist, np.abs(z - h.center) - h.radius)
    return dist


def project_to_closure(d: DomainSpec, z) -> np.ndarray:
    """Radially project points into the closed domain.

    Points outside the outer disc go to the outer circle along the ray from
    its centre; points inside a hole go to the hole's circle along the ray
    from the hole centre (the centre itself maps to the rightmost point).
    """
    z = np.asarray(z, dtype=complex).copy()
    c0, r0 = d.outer.center, d.outer.radius
    w = z - c0
    out = np.abs(w) > r0
    z[out] = c0 + r0 * w[out] / np.abs(w[out])
    for h in d.holes:
        w = z - h.center
        a = np.abs(w)
        inside = a < h.radius
        unit = np.where(a > 0, w / np.where(a > 0, a, 1.0), 1.0)
        z[inside] = h.center + h.radius * unit[inside]
    return z


def boundary_contour(d: DomainSpec, nodes_per_curve: int):
    """Positively oriented trapezoidal boundary contour."""
    from .contour import Contour, Curve

    if int(nodes_per_curve) != nodes_per_curve or nodes_per_curve < MIN_NODES:
        raise InvalidInputError(f"nodes_per_curve must be an integer >= {MIN_NODES}")
    curves = [Curve.circle(d.outer.center, d.outer.radius, nodes_per_curve, +1)]
    curves += [Curve.circle(h.center, h.radius, nodes_per_curve, -1) for h in d.holes]
    return Contour(tuple(curves))
