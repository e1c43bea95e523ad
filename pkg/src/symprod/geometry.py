"""Geometry of symmetric products of planar domains.

A point s of C^n belongs to the n-fold symmetric product of a domain when
every root of q(s; t) lies in the domain.  Membership here is always decided
by solving for the roots; the closed form for the symmetrized bidisc is kept
as an independent check for n = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import DomainSpec, classify, project_to_closure, psi_defining
from .errors import InvalidInputError, PreconditionError
from .roots import PartitionType, RootMultiset, partition_type, solve_roots
from .sympoly import as_tuple_array, elem_sym


@dataclass(frozen=True)
class SymProductPoint:
    s: np.ndarray
    domain: DomainSpec
    classification: str
    stratum: PartitionType
    roots: RootMultiset


def f_defining(d: DomainSpec, s) -> np.ndarray:
    """max over the roots of q(s; t) of the planar defining function.

    Negative exactly on the symmetric product.  Works on batches.
    """
    roots = solve_roots(s)
    return psi_defining(d, roots).max(axis=-1)


def symprod_classify(d: DomainSpec, s, margin=0.0):
    """Batched inside / boundary-band / outside labels."""
    if margin < 0:
        raise InvalidInputError("margin must be nonnegative")
    return classify(f_defining(d, s), margin)


def symprod_contains(d: DomainSpec, s, margin=0.0) -> SymProductPoint:
    s = as_tuple_array(s, "s")
    if s.ndim != 1:
        raise InvalidInputError("symprod_contains expects one point; use symprod_classify")
    if margin < 0:
        raise InvalidInputError("margin must be nonnegative")
    r = RootMultiset(solve_roots(s))
    label = classify(psi_defining(d, r.roots).max(), margin)
    return SymProductPoint(s, d, label, partition_type(r), r)


def omega_contains(d: DomainSpec, s, nu) -> np.ndarray:
    """Sublevel neighbourhood {f < 1/nu} of the closed symmetric product."""
    if not nu > 0:
        raise InvalidInputError("nu must be positive")
    return f_defining(d, s) < 1.0 / nu


def distance_upper_bound(d: DomainSpec, s) -> np.ndarray:
    """Upper bound on the distance from s to the closed symmetric product.

    Each root is pushed radially into the closed domain and the result is
    symmetrized again; the Euclidean gap to s bounds the true distance from
    above.  It is not the distance itself.
    """
    s = as_tuple_array(s, "s")
    proj = elem_sym(project_to_closure(d, solve_roots(s)))
    return np.linalg.norm(s - proj, axis=-1)


def exhaustion(d: DomainSpec, s) -> np.ndarray:
    """sum_j -log(-psi(z_j)); finite inside, +inf elsewhere."""
    v = psi_defining(d, solve_roots(s))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(v < 0, -np.log(np.where(v < 0, -v, 1.0)), np.inf)
    return terms.sum(axis=-1)


def diagonal_embed(w, n: int) -> np.ndarray:
    """elem_sym of (w, ..., w): binomial(n, k) * w**k for k = 1..n."""
    if int(n) != n or n < 1:
        raise InvalidInputError("n must be a positive integer")
    w = np.asarray(w, dtype=complex)
    k = np.arange(1, n + 1)
    binom = np.array([math.comb(n, j) for j in k], dtype=float)
    return binom * w[..., None] ** k


def root_bound(s) -> np.ndarray:
    """Radius max(sqrt(n) * |s|, 1) of a disc holding every root of q(s; t)."""
    s = as_tuple_array(s, "s")
    n = s.shape[-1]
    return np.maximum(math.sqrt(n) * np.linalg.norm(s, axis=-1), 1.0)


def _split_args(s2, sigma):
    if np.shape(sigma)[-1:] == (0,):
        raise PreconditionError("product_embed needs n >= 3 (sigma is empty)")
    s2 = as_tuple_array(s2, "s2")
    sigma = as_tuple_array(sigma, "sigma")
    if s2.shape[-1] != 2:
        raise InvalidInputError("s2 must have length 2")
    return s2, sigma


def product_embed(s2, sigma) -> np.ndarray:
    """Coefficients of the product of a quadratic and a degree n-2 factor.

    The k-th output is s2_2 * sigma_(k-2) + s2_1 * sigma_(k-1) + sigma_k
    with sigma_0 = 1 and sigma_j = 0 outside 0..n-2.
    """
    s2, sigma = _split_args(s2, sigma)
    n = sigma.shape[-1] + 2
    if n < 3:
        raise PreconditionError("product_embed needs n >= 3")
    shape = np.broadcast_shapes(s2.shape[:-1], sigma.shape[:-1])
    full = np.zeros(shape + (n + 1,), dtype=complex)
    full[..., 0] = 1.0
    full[..., 1 : n - 1] = sigma
    out = full[..., 1:].copy()
    out[..., 0:] += s2[..., 0:1] * full[..., :-1]
    out[..., 1:] += s2[..., 1:2] * full[..., :-2]
    return out


def product_embed_jacobian(s2, sigma) -> np.ndarray:
    """Jacobian with columns d/ds1, d/ds2, d/dsigma_1, ..., d/dsigma_(n-2)."""
    s2, sigma = _split_args(s2, sigma)
    if s2.ndim != 1 or sigma.ndim != 1:
        raise InvalidInputError("jacobian expects single points")
    n = sigma.size + 2
    if n < 3:
        raise PreconditionError("product_embed needs n >= 3")
    full = np.zeros(n + 1, dtype=complex)
    full[0] = 1.0
    full[1 : n - 1] = sigma
    jac = np.zeros((n, n), dtype=complex)
    for k in range(1, n + 1):
        jac[k - 1, 0] = full[k - 1]
        if k >= 2:
            jac[k - 1, 1] = full[k - 2]
    for j in range(1, n - 1):
        col = j + 1
        jac[j - 1, col] += 1.0
        jac[j, col] += s2[0]
        jac[j + 1, col] += s2[1]
    return jac


def product_embed_jacobian_det(s2, sigma) -> complex:
    return complex(np.linalg.det(product_embed_jacobian(s2, sigma)))


def bidisc_value(s) -> np.ndarray:
    """|s1 - conj(s1) s2| + |s2|^2; below 1 exactly on the symmetrized bidisc."""
    s = as_tuple_array(s, "s")
    if s.shape[-1] != 2:
        raise PreconditionError("bidisc test needs n = 2")
    s1, s2 = s[..., 0], s[..., 1]
    return np.abs(s1 - np.conj(s1) * s2) + np.abs(s2) ** 2


def bidisc_contains(s, margin=0.0):
    if margin < 0:
        raise InvalidInputError("margin must be nonnegative")
    return classify(bidisc_value(s) - 1.0, margin)
