"""Induced maps on symmetric products and the boundary integral operators.

The induced map of a one-variable map phi sends s to the elementary
symmetric functions of phi at the roots of q(s; t).  It is computed either
directly from the roots, or root-free from the boundary moments

    Psi_m(s) = (1/2 pi i) * integral over bU of phi(t)^m q'(s;t)/q(s;t) dt

followed by the Newton transform from power sums to elementary symmetric
coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contour import Contour, Curve, integrate_closed
from .domain import DomainSpec, boundary_contour, boundary_distance, psi_defining
from .errors import (
    InvalidInputError,
    NotInducedMapError,
    PreconditionError,
    QuadratureError,
    WrongDiscError,
)
from .geometry import diagonal_embed
from .holomap import Derivative, HoloMap
from .roots import RootMultiset, solve_roots
from .sympoly import as_tuple_array, canonical_order, elem_sym, newton_P, q_and_dq

DELTA = 1e-3
DEFAULT_NODES = 1024
QUAD_RTOL = 1e-6
TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class InducedMapResult:
    value: np.ndarray
    route: str
    quadrature_nodes: int | None = None
    est_error: float = 0.0


def _single(s, name="s"):
    s = as_tuple_array(s, name)
    if s.ndim != 1:
        raise InvalidInputError(f"{name}: expected a single point")
    return s


def _guard_roots(s, d, delta):
    roots = solve_roots(s)
    inside = psi_defining(d, roots) < 0
    dist = boundary_distance(d, roots)
    if not np.all(inside) or np.any(dist < delta):
        raise PreconditionError(
            f"roots must lie inside the domain at distance >= delta={delta:g} from its "
            f"boundary (closest: {float(np.min(dist)):.3g})"
        )
    return roots


def _nodes(N):
    if N is None:
        return DEFAULT_NODES
    if int(N) != N or N < 4:
        raise InvalidInputError("N must be an integer >= 4")
    return int(N)


def _two_level(make_contour, integrand, N, rtol):
    """Value at N, |I_N - I_2N| and the acceptance check."""
    a = integrate_closed(make_contour(N), integrand)
    b = integrate_closed(make_contour(2 * N), integrand)
    err = float(np.max(np.abs(a - b)))
    if err > rtol * (1.0 + float(np.max(np.abs(a)))):
        raise QuadratureError(
            f"boundary quadrature unresolved at N={N}: |I_N - I_2N| = {err:.3e}",
            est_error=err,
            best_iterate=a,
        )
    return a, err


def _moments(fn, s, d, N, delta, rtol):
    # (1/2 pi i) * integral fn(t) q'/q dt; fn may return a leading axis
    _guard_roots(s, d, delta)

    def integrand(t):
        q, dq = q_and_dq(s, t)
        return fn(t) * (dq / q)

    val, err = _two_level(lambda k: boundary_contour(d, k), integrand, N, rtol)
    return val / TWO_PI_I, err / (2 * math.pi)


def sigma_phi_direct(phi: HoloMap, s) -> InducedMapResult:
    """Apply phi at every root and symmetrize.  Accepts batches."""
    roots = solve_roots(s)
    phi.check_domain(roots)
    return InducedMapResult(elem_sym(phi(roots)), "direct", None, 0.0)


def G_op(g: HoloMap, s, d: DomainSpec, N=None, delta=DELTA, rtol=QUAD_RTOL, full=False):
    """(1/2 pi i) times the boundary integral of g(t) q'(s;t)/q(s;t).

    With ``full=True`` returns ``(value, est_error, N)``.
    """
    s = _single(s)
    N = _nodes(N)
    val, err = _moments(g, s, d, N, delta, rtol)
    val = complex(val)
    return (val, err, N) if full else val


def sigma_phi_integral(phi: HoloMap, s, d: DomainSpec, N=None, delta=DELTA, rtol=QUAD_RTOL):
    """Induced map from boundary moments of phi^m, m = 1..n, without roots."""
    s = _single(s)
    N = _nodes(N)
    n = s.size
    phi.check_domain(boundary_contour(d, N).points)
    powers = np.arange(1, n + 1)[:, None]

    def fn(t):
        return phi(t)[None, :] ** powers

    psi, err = _moments(fn, s, d, N, delta, rtol)
    return InducedMapResult(newton_P(psi), "integral", N, float(err))


def _validate_discs(discs, d):
    out = []
    for i, disc in enumerate(discs):
        try:
            c, r, mult = disc
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"discs[{i}]: expected (center, radius, multiplicity)") from exc
        c, r = complex(c), float(r)
        if not r > 0 or int(mult) != mult or mult < 1:
            raise InvalidInputError(f"discs[{i}]: radius and multiplicity must be positive")
        out.append((c, r, int(mult)))
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if not abs(out[i][0] - out[j][0]) > out[i][1] + out[j][1]:
                raise PreconditionError(f"discs[{i}], discs[{j}]: closures must be disjoint")
    return out


def gamma_inverse(s, discs, d: DomainSpec | None = None, N=256) -> RootMultiset:
    """Recover the root multiset disc by disc from boundary moments.

    Each disc must hold exactly its declared number of roots, checked by an
    argument-principle count.  The value returned for a disc is the mean of
    the roots inside it, repeated by multiplicity.
    """
    s = _single(s)
    n = s.size
    N = _nodes(N)
    discs = _validate_discs(discs, d)
    if sum(m for _, _, m in discs) != n:
        raise PreconditionError(f"disc multiplicities must add up to n={n}")
    if d is not None:
        for i, (c, r, _) in enumerate(discs):
            if float(boundary_distance(d, c)) < r:
                raise PreconditionError(f"discs[{i}]: disc must lie in the domain")
    roots = solve_roots(s)
    out = []
    for i, (c, r, mult) in enumerate(discs):
        if np.any(np.abs(np.abs(roots - c) - r) < 1e-6 * r):
            raise PreconditionError(f"discs[{i}]: a root lies on the disc boundary")
        contour = Contour((Curve.circle(c, r, N, +1),))

        def integrand(t):
            q, dq = q_and_dq(s, t)
            ld = dq / q
            return np.stack([ld, (t - c) * ld])

        count, moment = integrate_closed(contour, integrand) / TWO_PI_I
        k = int(round(count.real))
        if abs(count - k) > 1e-3 or k != mult:
            raise WrongDiscError(
                f"discs[{i}]: argument principle counts {count.real:.6g} roots, expected {mult}",
                count=k,
                expected=mult,
            )
        out += [c + moment / mult] * mult
    return RootMultiset(np.array(out))


def J_op(u: HoloMap, s, m: int, weight_exponent: int = 0, d: DomainSpec | None = None,
         N=None, delta=DELTA, rtol=QUAD_RTOL, full=False):
    """Boundary integral of t^w u(t) / q(s;t)^m, without the 1/(2 pi i) factor."""
    s = _single(s)
    _check_order(m, weight_exponent)
    d = DomainSpec.unit_disc() if d is None else d
    N = _nodes(N)
    _guard_roots(s, d, delta)

    def integrand(t):
        q, _ = q_and_dq(s, t)
        return t**weight_exponent * u(t) / q**m

    val, err = _two_level(lambda k: boundary_contour(d, k), integrand, N, rtol)
    val = complex(val)
    return (val, err, N) if full else val


def T_n_op(u: HoloMap, z, m: int, d: DomainSpec | None = None, N=None, delta=DELTA,
           rtol=QUAD_RTOL, full=False):
    """Boundary integral of u(t) / prod_j (t - z_j)^m."""
    z = canonical_order(_single(z, "z"))
    _check_order(m, 0)
    d = DomainSpec.unit_disc() if d is None else d
    N = _nodes(N)
    dist = boundary_distance(d, z)
    if np.any(psi_defining(d, z) >= 0) or np.any(dist < delta):
        raise PreconditionError(
            f"points must lie inside the domain at distance >= delta={delta:g} from its boundary"
        )

    def integrand(t):
        den = np.ones_like(t)
        for zj in z:
            den = den * (t - zj)
        return u(t) / den**m

    val, err = _two_level(lambda k: boundary_contour(d, k), integrand, N, rtol)
    val = complex(val)
    return (val, err, N) if full else val


def G_gradient(g: HoloMap, s, j: int, d: DomainSpec | None = None, N=None, delta=DELTA):
    """Partial derivative of G_op(g, .) in s_j, as a weighted J integral.

    Integrating by parts and differentiating q in s_j gives
    (-1)^(j+1) / (2 pi i) times the integral of t^(n-j) g'(t) / q(s;t).
    """
    s = _single(s)
    n = s.size
    if int(j) != j or not 1 <= j <= n:
        raise InvalidInputError(f"j must be in 1..{n}")
    val = J_op(Derivative(g, 1), s, 1, n - j, d, N, delta)
    return (-1) ** (j + 1) * val / TWO_PI_I


def _check_order(m, w):
    if int(m) != m or m < 1:
        raise InvalidInputError("m must be a positive integer")
    if int(w) != w or w < 0:
        raise InvalidInputError("weight_exponent must be a nonnegative integer")


@dataclass(frozen=True)
class RecoveredFactor:
    value: complex
    residual: float


def recover_factor(Phi, w, n: int, tol=1e-8) -> RecoveredFactor:
    """Read off phi(w) from a map on the symmetric product via the diagonal.

    Raises NotInducedMapError when Phi does not send the diagonal point of w
    back onto the diagonal.
    """
    image = np.asarray(Phi(diagonal_embed(w, n)), dtype=complex)
    if image.shape != (n,):
        raise InvalidInputError(f"Phi must return a point of length {n}")
    val = complex(image[0] / n)
    expect = diagonal_embed(val, n)
    scale = 1.0 + float(np.max(np.abs(expect)))
    residual = float(np.max(np.abs(image - expect))) / scale
    if residual > tol:
        raise NotInducedMapError(
            f"Phi leaves the diagonal at w={complex(w)}: residual {residual:.3e}",
            residual=residual,
        )
    return RecoveredFactor(val, residual)
