"""Elementary symmetric polynomials, power sums and the Newton transforms.

All functions act on the last axis of their input, so a batch of points is
an array of shape ``(..., n)``.  A point ``s`` of the symmetric product is
the coefficient tuple of the monic polynomial

    q(s; t) = t^n - s_1 t^(n-1) + s_2 t^(n-2) - ... + (-1)^n s_n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


def as_tuple_array(z, name="z") -> np.ndarray:
    """Coerce to a complex array with a non-empty last axis and finite entries."""
    a = np.asarray(z, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1)
    if a.shape[-1] < 1:
        raise InvalidInputError(f"{name}: tuple length must be >= 1")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name}: entries must be finite")
    return a


@dataclass(frozen=True)
class SymPoint:
    """A point of C^n read as the coefficients (s_1, ..., s_n) of q(s; t)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_tuple_array(self.coeffs, "SymPoint")
        if c.ndim != 1:
            raise InvalidInputError("SymPoint: coeffs must be one-dimensional")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class PowerSumPoint:
    """Power-sum coordinates (tau_1, ..., tau_n)."""

    sums: np.ndarray

    def __post_init__(self):
        c = as_tuple_array(self.sums, "PowerSumPoint")
        if c.ndim != 1:
            raise InvalidInputError("PowerSumPoint: sums must be one-dimensional")
        c.setflags(write=False)
        object.__setattr__(self, "sums", c)

    @property
    def n(self) -> int:
        return self.sums.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.sums, dtype=dtype)


def canonical_order(z: np.ndarray) -> np.ndarray:
    # numpy orders complex values lexicographically (real, then imag)
    return np.sort(z, axis=-1)


def elem_sym(z) -> np.ndarray:
    """Return (pi_1(z), ..., pi_n(z)) along the last axis.

    Roots are first put in canonical order, which makes the result
    bitwise invariant under permutations of ``z``.
    """
    z = canonical_order(as_tuple_array(z))
    n = z.shape[-1]
    e = np.zeros(z.shape[:-1] + (n + 1,), dtype=complex)
    e[..., 0] = 1.0
    for j in range(n):
        zj = z[..., j : j + 1]
        e[..., 1 : j + 2] = e[..., 1 : j + 2] + zj * e[..., 0 : j + 1]
    return e[..., 1:]


def power_sums(z) -> np.ndarray:
    """Return (tau_1, ..., tau_n) with tau_j = sum_l z_l**j."""
    z = canonical_order(as_tuple_array(z))
    n = z.shape[-1]
    out = np.empty_like(z)
    p = z.copy()
    for j in range(n):
        out[..., j] = p.sum(axis=-1)
        p = p * z
    return out


def newton_Q(s) -> np.ndarray:
    """Elementary symmetric coordinates -> power sums.

    Forward Newton recurrence
    tau_k = sum_{i<k} (-1)^(i-1) s_i tau_(k-i) + (-1)^(k-1) k s_k.
    """
    s = as_tuple_array(s, "s")
    n = s.shape[-1]
    tau = np.empty_like(s)
    for k in range(1, n + 1):
        acc = (-1) ** (k - 1) * k * s[..., k - 1]
        for i in range(1, k):
            acc = acc + (-1) ** (i - 1) * s[..., i - 1] * tau[..., k - i - 1]
        tau[..., k - 1] = acc
    return tau


def newton_P(tau) -> np.ndarray:
    """Power sums -> elementary symmetric coordinates (inverse of newton_Q)."""
    tau = as_tuple_array(tau, "tau")
    n = tau.shape[-1]
    s = np.empty_like(tau)
    for k in range(1, n + 1):
        acc = tau[..., k - 1].copy()
        for i in range(1, k):
            acc = acc + (-1) ** i * s[..., i - 1] * tau[..., k - i - 1]
        s[..., k - 1] = (-1) ** (k + 1) * acc / k
    return s


def newton_residual(s, tau) -> np.ndarray:
    """Residuals of the Newton identities, one per k = 1..n.

    r_k = tau_k - s_1 tau_(k-1) + ... + (-1)^(k-1) s_(k-1) tau_1 + (-1)^k k s_k
    """
    s = np.asarray(s, dtype=complex)
    tau = np.asarray(tau, dtype=complex)
    n = s.shape[-1]
    r = np.empty(np.broadcast_shapes(s.shape, tau.shape), dtype=complex)
    for k in range(1, n + 1):
        acc = tau[..., k - 1] + (-1) ** k * k * s[..., k - 1]
        for i in range(1, k):
            acc = acc + (-1) ** i * s[..., i - 1] * tau[..., k - i - 1]
        r[..., k - 1] = acc
    return r


def q_coefficients(s) -> np.ndarray:
    """Monic coefficient array of q(s; t), highest degree first."""
    s = np.asarray(s, dtype=complex)
    n = s.shape[-1]
    signs = (-1.0) ** np.arange(1, n + 1)
    c = np.empty(s.shape[:-1] + (n + 1,), dtype=complex)
    c[..., 0] = 1.0
    c[..., 1:] = signs * s
    return c


def _lift(c, t):
    # give batch coefficients trailing axes so they broadcast against t
    extra = t.ndim - c.ndim
    if extra > 0:
        return c.reshape(c.shape + (1,) * extra)
    return c


def q_and_dq(s, t):
    """Horner evaluation of q(s; t) and dq/dt.

    ``s`` has shape (..., n); ``t`` broadcasts against ``s.shape[:-1]``
    possibly with extra trailing axes (e.g. quadrature nodes).
    """
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    n = s.shape[-1]
    q = np.ones(np.broadcast_shapes(t.shape, np.shape(_lift(s[..., 0], t))), dtype=complex)
    dq = np.zeros_like(q)
    for k in range(1, n + 1):
        ck = _lift((-1) ** k * s[..., k - 1], t)
        dq = dq * t + q
        q = q * t + ck
    return q, dq


@dataclass(frozen=True)
class QValues:
    """q(s; t) together with its t-derivative and its s-gradient."""

    q: np.ndarray
    q_t: np.ndarray
    q_s: np.ndarray


def eval_q(s, t) -> QValues:
    """Evaluate q, dq/dt and dq/ds_j = (-1)^j t^(n-j)."""
    s = as_tuple_array(s, "s")
    t = np.asarray(t, dtype=complex)
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("t: must be finite")
    q, dq = q_and_dq(s, t)
    n = s.shape[-1]
    j = np.arange(1, n + 1)
    tt = np.asarray(t)[..., None]
    q_s = (-1.0) ** j * tt ** (n - j)
    return QValues(q=q, q_t=dq, q_s=q_s)
