"""Closed-contour quadrature and the residue-formula reference.

Boundary integrals over circles use the trapezoidal rule, which converges
geometrically for integrands analytic near the contour.  Integrands that
are only Hölder at one boundary point use graded Gauss-Legendre panels
instead (:func:`graded_circle_rule`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import DomainSpec, boundary_distance, psi_defining
from .errors import (
    ContourEvaluationError,
    PreconditionError,
    QuadratureError,
    UnsupportedOrderError,
)
from .holomap import MAX_ORDER, HoloMap, series_mul

N_MAX = 2**16
POLE_CLEARANCE = 1e-6


@dataclass(frozen=True)
class Curve:
    """One closed curve sampled at equispaced parameters in [0, 1)."""

    theta: np.ndarray
    points: np.ndarray
    derivs: np.ndarray
    sign: int

    @classmethod
    def circle(cls, center, radius, n, sign=+1):
        theta = np.arange(n) / n
        e = np.exp(2j * np.pi * theta)
        return cls(theta, center + radius * e, 2j * np.pi * radius * e, int(sign))

    @property
    def n(self):
        return self.theta.size


@dataclass(frozen=True)
class Contour:
    curves: tuple

    @property
    def nodes_per_curve(self):
        return self.curves[0].n

    @property
    def points(self):
        return np.concatenate([c.points for c in self.curves])


def _check_finite(vals, curve_index, curve):
    if not np.all(np.isfinite(vals)):
        bad = np.argwhere(~np.isfinite(np.asarray(vals)))[0]
        k = int(bad[-1])
        raise ContourEvaluationError(
            f"integrand not finite at node {k} of curve {curve_index} "
            f"(t = {complex(curve.points[k])})",
            curve=curve_index,
            node=k,
            point=complex(curve.points[k]),
        )


def integrate_closed(c: Contour, f):
    """Trapezoidal approximation of the contour integral of f(t) dt.

    ``f`` is called once per curve with the node array; it may return extra
    leading axes, in which case the result carries them too.
    """
    total = 0.0
    for i, curve in enumerate(c.curves):
        vals = np.asarray(f(curve.points), dtype=complex)
        _check_finite(vals, i, curve)
        total = total + curve.sign * np.sum(vals * curve.derivs, axis=-1) / curve.n
    return total


def integrate_adaptive(make_contour, f, tol, n0=64, n_max=N_MAX):
    """Double N until successive trapezoidal values agree to ``tol``.

    Returns ``(value_at_N, |I_N - I_2N|, N)``.
    """
    n = int(n0)
    prev = integrate_closed(make_contour(n), f)
    err = None
    while 2 * n <= n_max:
        nxt = integrate_closed(make_contour(2 * n), f)
        err = float(np.max(np.abs(nxt - prev)))
        if err <= tol:
            return prev, err, n
        prev, n = nxt, 2 * n
    raise QuadratureError(
        f"quadrature did not reach tolerance {tol:g} by N={n}",
        est_error=err,
        best_iterate=prev,
    )


@dataclass(frozen=True)
class GradedRule:
    """Nodes and complex weights (dt already folded in) on a closed curve."""

    points: np.ndarray
    weights: np.ndarray


def graded_circle_rule(center=0.0, radius=1.0, singular_angle=0.0, levels=48, order=16):
    """Gauss-Legendre panels on a circle, refined dyadically at one point.

    The singular point is ``center + radius * exp(i * singular_angle)``.
    Panels shrink geometrically by 2 toward it from both sides.
    """
    x, w = np.polynomial.legendre.leggauss(order)
    brk = [0.0] + [np.pi * 2.0 ** (-k) for k in range(levels, 0, -1)]
    brk += [np.pi] + [2 * np.pi - b for b in reversed(brk[1:])] + [2 * np.pi]
    brk = np.array(brk)
    a, b = brk[:-1], brk[1:]
    phi = (0.5 * (b - a)[:, None] * x + 0.5 * (a + b)[:, None]).ravel()
    wphi = (0.5 * (b - a)[:, None] * w).ravel()
    e = np.exp(1j * (singular_angle + phi))
    points = center + radius * e
    return GradedRule(points, wphi * 1j * radius * e)


def integrate_rule(rule: GradedRule, f):
    vals = np.asarray(f(rule.points), dtype=complex)
    if not np.all(np.isfinite(vals)):
        k = int(np.argwhere(~np.isfinite(vals))[0][-1])
        raise ContourEvaluationError(
            f"integrand not finite at node {k} (t = {complex(rule.points[k])})",
            node=k,
            point=complex(rule.points[k]),
        )
    return np.sum(vals * rule.weights, axis=-1)


def _inverse_power_series(delta, k, order):
    # Taylor series in h of (delta + h)^(-k)
    out = np.empty(order + 1, dtype=complex)
    coef = 1.0
    for i in range(order + 1):
        out[i] = coef * delta ** (-k - i)
        coef = coef * (-k - i) / (i + 1)
    return out


def residue_reference(u: HoloMap, poles, m: int, d: DomainSpec) -> complex:
    """2*pi*i times the sum of residues of u(t) / prod_l (t - v_l)^(m*mult_l).

    ``poles`` is a RootMultiset; residues are taken at its cluster
    representatives with the cluster multiplicities.
    """
    clusters = poles.clusters
    reps = np.array([c for c, _ in clusters])
    if np.any(psi_defining(d, reps) >= 0) or np.any(boundary_distance(d, reps) < POLE_CLEARANCE):
        raise PreconditionError(
            f"poles must lie inside the domain at distance >= {POLE_CLEARANCE:g} from its boundary"
        )
    total = 0.0
    for j, (v, mult) in enumerate(clusters):
        p = m * mult
        if p > MAX_ORDER:
            raise UnsupportedOrderError(f"pole order {p} exceeds {MAX_ORDER}")
        series = u.taylor(v, p - 1)
        for l, (vl, ml) in enumerate(clusters):
            if l != j:
                series = series_mul(series, _inverse_power_series(v - vl, m * ml, p - 1), p - 1)
        total += series[p - 1]
    return 2j * math.pi * total
