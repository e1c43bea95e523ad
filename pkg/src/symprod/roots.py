"""Root multisets of q(s; t): the inverse of the symmetrization map.

The solver is a batched Aberth-Ehrlich iteration.  Rows whose roots form
tight clusters are polished with the same iteration driven by compensated
(doubled-precision) Horner evaluation, so exact multiple roots come out
much tighter than the sqrt(eps) / cbrt(eps) spread of a plain solve.
Rows that still fail to converge fall back to companion-matrix eigenvalues.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import InvalidInputError, NumericalFailure
from .sympoly import as_tuple_array, q_and_dq, q_coefficients

log = logging.getLogger(__name__)

DEFAULT_CLUSTER_TOL = 1e-6
MAX_ITER = 500
STEP_TOL = 1e-14
RESIDUAL_TOL = 1e-12
POLISH_ITER = 200
POLISH_GAP = 0.05
_EPS = np.finfo(float).eps
_SPLITTER = 134217729.0  # 2**27 + 1


def scale_of(z) -> np.ndarray:
    """1 + max modulus over the last axis."""
    return 1.0 + np.max(np.abs(z), axis=-1)


# -- error-free transformations (Dekker / Knuth) ---------------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _two_prod_c(a, b):
    z1, h1 = _two_prod(a.real, b.real)
    z2, h2 = _two_prod(a.imag, b.imag)
    z3, h3 = _two_prod(a.real, b.imag)
    z4, h4 = _two_prod(a.imag, b.real)
    z5, h5 = _two_sum(z1, -z2)
    z6, h6 = _two_sum(z3, z4)
    return z5 + 1j * z6, (h1 - h2 + h5) + 1j * (h3 + h4 + h6)


def _two_sum_c(a, b):
    sr, er = _two_sum(a.real, b.real)
    si, ei = _two_sum(a.imag, b.imag)
    return sr + 1j * si, er + 1j * ei


def comp_horner(s, t):
    """Compensated Horner evaluation of q(s; t) and dq/dt.

    Same broadcasting rules as :func:`symprod.sympoly.q_and_dq`; the result
    is as accurate as plain Horner carried out in twice the working
    precision.
    """
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    n = s.shape[-1]
    base = s[..., 0]
    extra = t.ndim - base.ndim
    shape = np.broadcast_shapes(t.shape, base.shape + (1,) * max(extra, 0))
    qh = np.ones(shape, dtype=complex)
    ql = np.zeros(shape, dtype=complex)
    dh = np.zeros(shape, dtype=complex)
    dl = np.zeros(shape, dtype=complex)
    for k in range(1, n + 1):
        ck = (-1) ** k * s[..., k - 1]
        if extra > 0:
            ck = ck.reshape(ck.shape + (1,) * extra)
        ck = np.broadcast_to(ck, shape)
        p, e1 = _two_prod_c(dh, t)
        dh_new, e2 = _two_sum_c(p, qh)
        dl = dl * t + ql + e1 + e2
        p, e3 = _two_prod_c(qh, t)
        qh, e4 = _two_sum_c(p, ck)
        ql = ql * t + e3 + e4
        dh = dh_new
    return qh + ql, dh + dl


def _horner_bound(s, z):
    # running-error style bound on the rounding error of plain Horner
    c = np.abs(q_coefficients(s))
    a = np.abs(z)
    acc = np.ones_like(a)
    for k in range(1, c.shape[-1]):
        acc = acc * a + c[..., k : k + 1]
    n = s.shape[-1]
    return 4.0 * (n + 1) * _EPS * acc


# -- Aberth-Ehrlich ---------------------------------------------------------

def _initial_guess(s):
    n = s.shape[-1]
    k = np.arange(1, n + 1)
    radius = 1.0 + np.max(np.abs(s) ** (1.0 / k), axis=-1)
    angles = 2 * np.pi * np.arange(n) / n + np.pi / (2 * n) + 0.4
    return radius[..., None] * np.exp(1j * angles)


def _aberth_correction(z, ratio):
    diff = z[..., :, None] - z[..., None, :]
    n = z.shape[-1]
    idx = np.arange(n)
    diff[..., idx, idx] = np.inf
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(diff == 0, 0.0, 1.0 / diff)
        rep = np.sum(inv, axis=-1)
        w = ratio / (1.0 - ratio * rep)
    return np.where(ratio == 0, 0.0, w)


def _aberth(s, z, evaluate, max_iter, step_tol, residual_bound=None):
    """Run Aberth iterations on a batch, freezing converged roots."""
    active = np.ones(z.shape, dtype=bool)
    it = 0
    for it in range(max_iter):
        if not active.any():
            break
        rows = active.any(axis=-1)
        zs, ss = z[rows], s[rows]
        q, dq = evaluate(ss, zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = q / dq
        ratio = np.where(q == 0, 0.0, ratio)
        w = _aberth_correction(zs, ratio)
        scale = scale_of(zs)[..., None]
        bad = ~np.isfinite(w)
        if bad.any():
            # dq vanished away from a root: nudge deterministically
            w = np.where(bad, 1e-3 * scale * np.exp(0.7j), w)
        act = active[rows]
        w = np.where(act, w, 0.0)
        done = np.abs(w) <= step_tol * scale
        if residual_bound is not None:
            done |= np.abs(q) <= residual_bound(ss, zs)
        zs = zs - w
        z[rows] = zs
        active[rows] = act & ~done
    return z, ~active.any(axis=-1), it + 1


def _min_gap(z):
    n = z.shape[-1]
    if n < 2:
        return np.full(z.shape[:-1], np.inf)
    d = np.abs(z[..., :, None] - z[..., None, :])
    idx = np.arange(n)
    d[..., idx, idx] = np.inf
    return d.min(axis=(-1, -2))


def solve_roots(s, max_iter=MAX_ITER) -> np.ndarray:
    """All roots of q(s; t) for a batch of coefficient tuples.

    Returns an array with the same shape as ``s``; row order of roots is
    canonical (sorted).  Raises :class:`NumericalFailure` if a row cannot
    be solved to a backward-stable residual.
    """
    s = as_tuple_array(s, "s")
    shape = s.shape
    s2 = s.reshape(-1, shape[-1])
    n = shape[-1]
    if n == 1:
        return s.copy()
    if n == 2:
        z = _quadratic(s2)
        converged = np.ones(len(z), dtype=bool)
    else:
        z = _initial_guess(s2)
        z, converged, _ = _aberth(s2, z, q_and_dq, max_iter, STEP_TOL, _horner_bound)

    # companion-matrix fallback
    for i in np.flatnonzero(~converged):
        log.debug("aberth did not converge for row %d, using companion matrix", i)
        z[i] = np.roots(q_coefficients(s2[i]))

    scale = scale_of(z)[..., None]
    near = _min_gap(z) < POLISH_GAP * scale[..., 0]
    if near.any():
        zn, _, _ = _aberth(
            s2[near], z[near].copy(), comp_horner, POLISH_ITER, 4 * _EPS
        )
        z[near] = zn

    scale = scale_of(z)
    q, _ = comp_horner(s2, z)
    resid = np.max(np.abs(q), axis=-1)
    bad = resid > RESIDUAL_TOL * scale**n
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NumericalFailure(
            f"root solve failed: residual {resid[i]:.3e} exceeds "
            f"{RESIDUAL_TOL:g}*scale^n for s={s2[i]}",
            best_iterate=z[i].copy(),
        )
    return np.sort(z, axis=-1).reshape(shape)


def _quadratic(s):
    # t^2 - s1 t + s2, cancellation-free form
    b = -s[:, 0]
    c = s[:, 1]
    disc = np.sqrt(b * b - 4 * c)
    sign = np.where((np.conj(b) * disc).real >= 0, 1.0, -1.0)
    big = -(b + sign * disc) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0, c / big, 0.0)
    return np.stack([big, small], axis=-1)


# -- multisets and clustering ----------------------------------------------

def cluster_labels(roots, tol) -> tuple[int, np.ndarray]:
    """Single-linkage clustering at threshold ``tol * scale``."""
    r = np.asarray(roots, dtype=complex)
    thr = tol * scale_of(r)
    adj = np.abs(r[:, None] - r[None, :]) <= thr
    k, labels = connected_components(adj.astype(np.int8), directed=False)
    return k, labels


@dataclass(frozen=True)
class RootMultiset:
    """Unordered roots with tolerance-based multiplicity clusters."""

    roots: np.ndarray
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    clusters: tuple = field(default=())

    def __post_init__(self):
        r = np.sort(as_tuple_array(self.roots, "roots"))
        if r.ndim != 1:
            raise InvalidInputError("roots must be one-dimensional")
        if self.cluster_tol < 0:
            raise InvalidInputError("cluster_tol must be nonnegative")
        r.setflags(write=False)
        object.__setattr__(self, "roots", r)
        if not self.clusters:
            object.__setattr__(self, "clusters", _make_clusters(r, self.cluster_tol))

    @property
    def n(self) -> int:
        return self.roots.shape[0]

    @property
    def scale(self) -> float:
        return float(scale_of(self.roots))

    def expanded(self) -> np.ndarray:
        """Cluster representatives repeated by multiplicity."""
        return np.sort(np.concatenate([np.full(m, c) for c, m in self.clusters]))


def _make_clusters(r, tol):
    k, labels = cluster_labels(r, tol)
    out = []
    for lab in range(k):
        members = r[labels == lab]
        out.append((complex(members.mean()), int(members.size)))
    out.sort(key=lambda cm: (cm[0].real, cm[0].imag))
    return tuple(out)


@dataclass(frozen=True)
class PartitionType:
    """Stratum index k and the multiplicity profile of a root multiset."""

    k: int
    multiplicities: tuple

    def __post_init__(self):
        if not 1 <= self.k <= sum(self.multiplicities) or len(self.multiplicities) != self.k:
            raise InvalidInputError("inconsistent partition type")


def roots_of(s, cluster_tol=DEFAULT_CLUSTER_TOL) -> RootMultiset:
    """Root multiset of q(s; t) for a single point s."""
    s = as_tuple_array(s, "s")
    if s.ndim != 1:
        raise InvalidInputError("roots_of expects a single point; use solve_roots for batches")
    return RootMultiset(solve_roots(s), cluster_tol)


def partition_type(r: RootMultiset, cluster_tol=None) -> PartitionType:
    """Number of clusters and sorted multiplicities.

    ``cluster_tol`` overrides the tolerance stored on ``r``.
    """
    tol = r.cluster_tol if cluster_tol is None else cluster_tol
    clusters = r.clusters if cluster_tol is None else _make_clusters(r.roots, tol)
    mults = tuple(sorted(m for _, m in clusters))
    return PartitionType(k=len(mults), multiplicities=mults)


def hausdorff(a, b) -> np.ndarray:
    """Hausdorff distance between root sets along the last axis."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[..., :, None] - b[..., None, :])
    return np.maximum(d.min(axis=-1).max(axis=-1), d.min(axis=-2).max(axis=-1))


def matching_distance(a, b) -> float:
    """Max displacement of an optimal assignment between two multisets.

    This bounds the Hausdorff distance from above and respects multiplicity.
    """
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    i, j = linear_sum_assignment(d)
    return float(d[i, j].max())
