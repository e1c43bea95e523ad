"""One-variable holomorphic maps with closed-form derivatives.

Every map exposes ``taylor(z, order)``, the Taylor coefficients
f^(k)(z)/k! for k = 0..order, computed by exact series arithmetic.  That
is what the residue formulas and the Cauchy-formula oracles consume.
"""

from __future__ import annotations

import math

import numpy as np

from .domain import INSIDE, OUTSIDE, DomainSpec, contains_point
from .errors import ConfigError, DomainError, InvalidInputError, UnsupportedOrderError

MAX_ORDER = 12
DOMAIN_SLACK = 1e-10


def series_mul(a, b, order):
    """Truncated product of two Taylor series stored on the last axis."""
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (order + 1,), dtype=complex)
    for k in range(order + 1):
        for i in range(k + 1):
            out[..., k] += a[..., i] * b[..., k - i]
    return out


def _complex(x, name):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ConfigError(f"{name}: expected a number or [re, im]", field=name)
        return complex(x[0], x[1])
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    raise ConfigError(f"{name}: expected a number or [re, im]", field=name)


def _pair(c):
    c = complex(c)
    return [c.real, c.imag]


class HoloMap:
    """Base class.  Subclasses implement ``_taylor`` and ``to_dict``."""

    kind = "abstract"
    domain: DomainSpec | None = None

    def taylor(self, z, order):
        if order > MAX_ORDER:
            raise UnsupportedOrderError(
                f"derivative order {order} exceeds the closed-form limit {MAX_ORDER}"
            )
        return self._taylor(np.asarray(z, dtype=complex), int(order))

    def __call__(self, z):
        return self._taylor(np.asarray(z, dtype=complex), 0)[..., 0]

    def derivative(self, z, k):
        """k-th complex derivative at z."""
        if k > MAX_ORDER:
            raise UnsupportedOrderError(
                f"derivative order {k} exceeds the closed-form limit {MAX_ORDER}"
            )
        return self.taylor(z, k)[..., k] * math.factorial(k)

    def check_domain(self, z):
        """Raise DomainError if any point lies outside the declared domain."""
        if self.domain is None:
            return
        cls = np.atleast_1d(contains_point(self.domain, z, DOMAIN_SLACK))
        if np.any(cls == OUTSIDE):
            bad = np.atleast_1d(np.asarray(z))[cls == OUTSIDE][0]
            raise DomainError(f"{self.kind} map: point {complex(bad)} outside its domain")

    def __pow__(self, m):
        if int(m) != m or m < 1:
            raise InvalidInputError("power must be a positive integer")
        mono = Polynomial([0] * int(m) + [1])
        return Composition(mono, self)

    def compose(self, inner):
        """self o inner."""
        return Composition(self, inner)

    def to_dict(self):
        raise NotImplementedError

    def _with_domain(self, d):
        if self.domain is not None:
            d["domain"] = self.domain.to_dict()
        return d


class Polynomial(HoloMap):
    """sum_i coeffs[i] * t**i (ascending order)."""

    kind = "polynomial"

    def __init__(self, coeffs, domain=None):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0 or not np.all(np.isfinite(c)):
            raise InvalidInputError("polynomial coefficients must be a finite 1-d list")
        self.coeffs = c
        self.domain = domain

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z) + self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            acc = acc * z + c
        return acc

    def _taylor(self, z, order):
        a = self.coeffs
        d = a.size - 1
        out = np.zeros(z.shape + (order + 1,), dtype=complex)
        for k in range(min(order, d) + 1):
            acc = np.zeros_like(z) + math.comb(d, k) * a[d]
            for i in range(d - 1, k - 1, -1):
                acc = acc * z + math.comb(i, k) * a[i]
            out[..., k] = acc
        return out

    def derivative_map(self):
        if self.degree == 0:
            return Polynomial([0.0], self.domain)
        return Polynomial(self.coeffs[1:] * np.arange(1, self.coeffs.size), self.domain)

    def to_dict(self):
        return self._with_domain({"kind": self.kind, "coeffs": [_pair(c) for c in self.coeffs]})


class Identity(Polynomial):
    kind = "identity"

    def __init__(self, domain=None):
        super().__init__([0.0, 1.0], domain)

    def to_dict(self):
        return self._with_domain({"kind": self.kind})


class Constant(Polynomial):
    kind = "constant"

    def __init__(self, value, domain=None):
        super().__init__([value], domain)
        self.value = complex(value)

    def to_dict(self):
        return self._with_domain({"kind": self.kind, "value": _pair(self.value)})


class Blaschke(HoloMap):
    """lam * prod_j (t - a_j) / (1 - conj(a_j) t) with |a_j| < 1, |lam| = 1."""

    kind = "blaschke"

    def __init__(self, zeros, factor=1.0, domain=None):
        a = np.atleast_1d(np.asarray(zeros, dtype=complex))
        if a.ndim != 1 or not np.all(np.isfinite(a)):
            raise InvalidInputError("blaschke zeros must be finite")
        if np.any(np.abs(a) >= 1):
            raise InvalidInputError("blaschke zeros must lie in the open unit disc")
        lam = complex(factor)
        if abs(abs(lam) - 1) > 1e-12:
            raise InvalidInputError("blaschke factor must be unimodular")
        self.zeros = a
        self.factor = lam
        self.domain = DomainSpec.unit_disc() if domain is None else domain
        if np.any(contains_point(self.domain, a) != INSIDE):
            raise InvalidInputError("blaschke zeros must lie inside the declared domain")

    @property
    def degree(self):
        return self.zeros.size

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self.factor, dtype=complex)
        for a in self.zeros:
            acc = acc * (z - a) / (1 - np.conj(a) * z)
        return acc

    def _taylor(self, z, order):
        out = np.zeros(z.shape + (order + 1,), dtype=complex)
        out[..., 0] = self.factor
        i = np.arange(order + 1)
        for a in self.zeros:
            ab = np.conj(a)
            D = (1 - ab * z)[..., None]
            g = (ab / D) ** i / D
            f = (z - a)[..., None] * g
            f[..., 1:] += g[..., :-1]
            out = series_mul(out, f, order)
        return out

    def to_dict(self):
        return self._with_domain(
            {"kind": self.kind, "zeros": [_pair(a) for a in self.zeros], "factor": _pair(self.factor)}
        )


class PowerLaw(HoloMap):
    """(base - t)**beta, branch cut on the outward ray {base*x : x >= 1}."""

    kind = "power_law"

    def __init__(self, beta, base=1.0, domain=None):
        self.beta = float(beta)
        self.base = complex(base)
        if self.base == 0 or not np.isfinite(self.beta):
            raise InvalidInputError("power_law needs a finite exponent and nonzero base")
        self.domain = DomainSpec.disc(0.0, abs(self.base)) if domain is None else domain

    def _root(self, z):
        # (base - z)^beta continued from base^beta across the disc |z| < |base|
        return self.base**self.beta * (1 - z / self.base) ** self.beta

    def __call__(self, z):
        return self._root(np.asarray(z, dtype=complex))

    def _taylor(self, z, order):
        w = self.base - z
        lead = self._root(z)
        out = np.empty(z.shape + (order + 1,), dtype=complex)
        coef = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            for i in range(order + 1):
                out[..., i] = lead * coef * (-1) ** i / w**i
                coef = coef * (self.beta - i) / (i + 1)
        return out

    def to_dict(self):
        return self._with_domain({"kind": self.kind, "beta": self.beta, "base": _pair(self.base)})


class Composition(HoloMap):
    """outer o inner, with the declared domain of ``inner``."""

    kind = "composition"

    def __init__(self, outer: HoloMap, inner: HoloMap, domain=None):
        self.outer = outer
        self.inner = inner
        self.domain = inner.domain if domain is None else domain

    def __call__(self, z):
        return self.outer(self.inner(z))

    def _taylor(self, z, order):
        a = self.inner._taylor(z, order)
        b = self.outer._taylor(a[..., 0], order)
        da = a.copy()
        da[..., 0] = 0
        res = np.zeros_like(b)
        res[..., 0] = b[..., order]
        for i in range(order - 1, -1, -1):
            res = series_mul(res, da, order)
            res[..., 0] += b[..., i]
        return res

    def check_domain(self, z):
        super().check_domain(z)
        self.inner.check_domain(z)
        self.outer.check_domain(self.inner(z))

    def to_dict(self):
        return self._with_domain(
            {"kind": self.kind, "outer": self.outer.to_dict(), "inner": self.inner.to_dict()}
        )


class Product(HoloMap):
    """Pointwise product of two maps on the intersection of their domains."""

    kind = "product"

    def __init__(self, left: HoloMap, right: HoloMap, domain=None):
        self.left = left
        self.right = right
        self.domain = domain if domain is not None else (left.domain or right.domain)

    def __call__(self, z):
        return self.left(z) * self.right(z)

    def _taylor(self, z, order):
        return series_mul(self.left._taylor(z, order), self.right._taylor(z, order), order)

    def to_dict(self):
        return self._with_domain(
            {"kind": self.kind, "left": self.left.to_dict(), "right": self.right.to_dict()}
        )


class Derivative(HoloMap):
    """k-th derivative of another map, evaluated through its Taylor series."""

    kind = "derivative"

    def __init__(self, base: HoloMap, k=1):
        self.base = base
        self.k = int(k)
        self.domain = base.domain

    def _taylor(self, z, order):
        c = self.base._taylor(z, order + self.k)
        i = np.arange(order + 1)
        fac = np.array([math.perm(j + self.k, self.k) for j in i], dtype=float)
        return c[..., self.k :] * fac

    def to_dict(self):
        return {"kind": self.kind, "base": self.base.to_dict(), "order": self.k}


def power(phi: HoloMap, m: int) -> HoloMap:
    return phi**m


def from_dict(d) -> HoloMap:
    """Build a map from its JSON description."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("phi: expected an object with a 'kind' field", field="kind")
    kind = d["kind"]
    domain = DomainSpec.from_dict(d["domain"]) if "domain" in d else None
    if kind == "polynomial":
        if "coeffs" not in d or not isinstance(d["coeffs"], list):
            raise ConfigError("coeffs: expected a list", field="coeffs")
        return Polynomial([_complex(c, "coeffs") for c in d["coeffs"]], domain)
    if kind == "identity":
        return Identity(domain)
    if kind == "constant":
        if "value" not in d:
            raise ConfigError("value: missing", field="value")
        return Constant(_complex(d["value"], "value"), domain)
    if kind == "blaschke":
        zeros = d.get("zeros", [])
        if not isinstance(zeros, list):
            raise ConfigError("zeros: expected a list", field="zeros")
        factor = _complex(d.get("factor", 1.0), "factor")
        try:
            return Blaschke([_complex(a, "zeros") for a in zeros], factor, domain)
        except InvalidInputError as exc:
            raise ConfigError(str(exc), field="zeros") from exc
    if kind == "power_law":
        if "beta" not in d:
            raise ConfigError("beta: missing", field="beta")
        return PowerLaw(float(d["beta"]), _complex(d.get("base", 1.0), "base"), domain)
    if kind == "composition":
        for key in ("outer", "inner"):
            if key not in d:
                raise ConfigError(f"{key}: missing", field=key)
        return Composition(from_dict(d["outer"]), from_dict(d["inner"]), domain)
    if kind == "product":
        for key in ("left", "right"):
            if key not in d:
                raise ConfigError(f"{key}: missing", field=key)
        return Product(from_dict(d["left"]), from_dict(d["right"]), domain)
    if kind == "derivative":
        return Derivative(from_dict(d["base"]), int(d.get("order", 1)))
    raise ConfigError(f"kind: unknown map kind {kind!r}", field="kind")
