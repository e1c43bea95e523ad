import numpy as np
import pytest

from symprod.domain import BOUNDARY, INSIDE, OUTSIDE, Circle, DomainSpec
from symprod.errors import InvalidInputError, PreconditionError
from symprod.geometry import (
    bidisc_contains,
    bidisc_value,
    diagonal_embed,
    distance_upper_bound,
    exhaustion,
    f_defining,
    omega_contains,
    product_embed,
    product_embed_jacobian,
    product_embed_jacobian_det,
    root_bound,
    symprod_classify,
    symprod_contains,
)
from symprod.sympoly import elem_sym

UNIT = DomainSpec.unit_disc()


def test_contains_examples():
    assert symprod_contains(UNIT, np.zeros(4)).classification == INSIDE
    p = symprod_contains(UNIT, [2, 1])
    assert p.classification == BOUNDARY and p.stratum.multiplicities == (2,)
    assert symprod_contains(UNIT, [0.5, 0.1]).classification == INSIDE
    assert symprod_contains(UNIT, [0, -4]).classification == OUTSIDE
    with pytest.raises(InvalidInputError):
        symprod_contains(UNIT, [[0, 0]])


def test_diagonal_embed_examples():
    assert np.all(diagonal_embed(0, 5) == 0)
    np.testing.assert_array_equal(diagonal_embed(1, 2), [2, 1])
    np.testing.assert_array_equal(diagonal_embed(1, 3), [3, 3, 1])
    w = 0.3 - 0.7j
    np.testing.assert_allclose(diagonal_embed(w, 6), elem_sym([w] * 6), rtol=1e-14)


def test_f_defining_examples():
    for n in (1, 2, 3, 4):
        assert f_defining(UNIT, diagonal_embed(0.5, n)) == pytest.approx(-0.5, abs=1e-8)
    assert f_defining(UNIT, [2, 1]) == pytest.approx(0, abs=1e-15)
    assert f_defining(UNIT, [0, -4]) == pytest.approx(1.0)


def test_product_embed_examples(rng):
    s1, s2, sig = 0.3 + 1j, -2.0, 0.7j
    np.testing.assert_allclose(product_embed([s1, s2], [sig]), [s1 + sig, s2 + s1 * sig, s2 * sig])
    z = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert np.abs(product_embed(elem_sym(z[:2]), elem_sym(z[2:])) - elem_sym(z)).max() <= 1e-12


def test_product_embed_needs_n3():
    with pytest.raises(PreconditionError):
        product_embed([1, 2], [])
    with pytest.raises(PreconditionError):
        product_embed_jacobian_det([1, 2], [])


def test_jacobian_examples():
    for n in (3, 4, 5, 8):
        assert product_embed_jacobian_det([2, 1], np.zeros(n - 2)) == 1
    np.testing.assert_array_equal(
        product_embed_jacobian([0, 0], [0]).real, [[1, 0, 1], [0, 1, 0], [0, 0, 0]]
    )
    assert product_embed_jacobian_det([0, 0], [0]) == 0


def test_jacobian_matches_finite_differences(rng):
    for n in (3, 4, 5):
        for _ in range(30):
            x = rng.normal(size=n) + 1j * rng.normal(size=n)
            jac = product_embed_jacobian(x[:2], x[2:])
            h = 1e-6
            fd = np.empty((n, n), dtype=complex)
            for j in range(n):
                e = np.zeros(n)
                e[j] = h
                fd[:, j] = (product_embed((x + e)[:2], (x + e)[2:]) - product_embed((x - e)[:2], (x - e)[2:])) / (2 * h)
            np.testing.assert_allclose(jac, fd, atol=1e-8)


def test_bidisc_examples():
    assert bidisc_contains([0, 0]) == INSIDE
    assert bidisc_contains([2, 1]) == BOUNDARY
    assert bidisc_value([0.5, 0.1]) == pytest.approx(0.46)
    assert bidisc_contains([0.5, 0.1]) == INSIDE
    with pytest.raises(PreconditionError):
        bidisc_value([1, 2, 3])


def test_bidisc_matches_roots(rng):
    z = 1.5 * np.sqrt(rng.uniform(size=(5000, 2))) * np.exp(2j * np.pi * rng.uniform(size=(5000, 2)))
    s = np.concatenate([elem_sym(z), 3 * (rng.uniform(-1, 1, (5000, 2)) + 1j * rng.uniform(-1, 1, (5000, 2)))])
    a = bidisc_contains(s, 1e-9)
    b = symprod_classify(UNIT, s)
    decided = a != BOUNDARY
    assert np.all(a[decided] == b[decided])


def test_f_sign_matches_membership(rng):
    d = DomainSpec(Circle(0, 1), (Circle(0.3, 0.2), Circle(-0.5j, 0.1)))
    z = 1.2 * np.sqrt(rng.uniform(size=(10000, 3))) * np.exp(2j * np.pi * rng.uniform(size=(10000, 3)))
    truth = np.max(
        np.maximum(np.abs(z), np.maximum(0.2 / np.abs(z - 0.3), 0.1 / np.abs(z + 0.5j))) - 1, axis=-1
    )
    f = f_defining(d, elem_sym(z))
    band = np.abs(truth) <= 1e-9
    assert np.all((f < 0)[~band] == (truth < 0)[~band])


def test_plurisubharmonic_sampled(rng):
    n = 3
    z = 0.8 * np.sqrt(rng.uniform(size=(3000, n))) * np.exp(2j * np.pi * rng.uniform(size=(3000, n)))
    s = elem_sym(z)
    f = f_defining(UNIT, s)
    s = s[f < -0.05][:1000]
    v = rng.normal(size=s.shape) + 1j * rng.normal(size=s.shape)
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    theta = np.exp(2j * np.pi * np.arange(32) / 32)
    ring = s[:, None, :] + 0.005 * theta[None, :, None] * v[:, None, :]
    mean = f_defining(UNIT, ring).mean(axis=-1)
    assert np.all(f_defining(UNIT, s) <= mean + 1e-8)


def test_omega_and_bounds(rng):
    s = diagonal_embed(1.05, 2)
    assert not omega_contains(UNIT, s, 100) and omega_contains(UNIT, s, 10)
    with pytest.raises(InvalidInputError):
        omega_contains(UNIT, s, 0)
    inside = elem_sym([0.1, 0.2j])
    assert distance_upper_bound(UNIT, inside) <= 1e-15
    assert distance_upper_bound(UNIT, s) > 0
    assert np.isfinite(exhaustion(UNIT, inside)) and exhaustion(UNIT, s) == np.inf
    assert root_bound([0, 0]) == 1


def test_exhaustion_blows_up_at_boundary():
    vals = [exhaustion(UNIT, diagonal_embed(1 - e, 2)) for e in (1e-1, 1e-3, 1e-5)]
    assert vals[0] < vals[1] < vals[2]
