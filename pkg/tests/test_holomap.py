import math

import numpy as np
import pytest

from symprod.domain import DomainSpec
from symprod.errors import ConfigError, DomainError, InvalidInputError, UnsupportedOrderError
from symprod.holomap import (
    Blaschke,
    Composition,
    Constant,
    Derivative,
    Identity,
    Polynomial,
    PowerLaw,
    Product,
    from_dict,
    power,
)


def cauchy_derivative(f, z, k, h=0.1, n=64):
    # k!/(2 pi i) * integral of f(t)/(t-z)^(k+1) over a small circle
    e = h * np.exp(2j * np.pi * np.arange(n) / n)
    return math.factorial(k) * np.mean(f(z + e) / e**k)


MAPS = [
    Polynomial([1, -2j, 0.5, 3]),
    Blaschke([0.3, -0.4j], np.exp(0.7j)),
    PowerLaw(0.5),
    PowerLaw(2.5, base=1.5),
    Composition(Blaschke([0.2]), Polynomial([0, 0.5, 0.3])),
    Product(Polynomial([1, 1]), Blaschke([0.5j])),
    Derivative(Blaschke([0.1 + 0.2j]), 2),
]


@pytest.mark.parametrize("phi", MAPS, ids=lambda p: p.kind)
def test_taylor_matches_cauchy_oracle(phi):
    z = 0.2 - 0.1j
    for k in range(6):
        assert abs(phi.derivative(z, k) - cauchy_derivative(phi, z, k)) <= 1e-8 * (1 + abs(phi.derivative(z, k)))


@pytest.mark.parametrize("phi", MAPS, ids=lambda p: p.kind)
def test_json_round_trip(phi):
    again = from_dict(phi.to_dict())
    z = np.array([0.1, -0.3j, 0.25 + 0.25j])
    np.testing.assert_allclose(again(z), phi(z), rtol=1e-14)


def test_polynomial_values():
    p = Polynomial([1, 2, 3])
    assert p(2) == 17
    np.testing.assert_array_equal(p.derivative_map().coeffs, [2, 6])
    assert p.derivative(1.0, 1) == 8
    assert Identity()(3j) == 3j and Constant(2)(5) == 2


def test_blaschke_is_inner():
    b = Blaschke([0.5, -0.3 + 0.6j])
    t = np.exp(2j * np.pi * np.linspace(0, 1, 50))
    np.testing.assert_allclose(np.abs(b(t)), 1, rtol=1e-13)
    assert abs(b(0.5)) < 1e-15


def test_power_and_composition():
    phi = Polynomial([0, 1, 1])
    sq = power(phi, 3)
    assert sq(0.5) == pytest.approx(0.75**3)
    c = phi.compose(Polynomial([1, 1]))
    assert c(1.0) == pytest.approx(6)
    with pytest.raises(InvalidInputError):
        phi**0


def test_order_limit():
    with pytest.raises(UnsupportedOrderError):
        Identity().taylor(0.0, 13)
    with pytest.raises(UnsupportedOrderError):
        Identity().derivative(0.0, 13)


def test_domain_checks():
    b = Blaschke([0.2])
    b.check_domain(np.array([0, 0.5, 1.0]))
    with pytest.raises(DomainError):
        b.check_domain(np.array([1.1]))
    Polynomial([1]).check_domain(np.array([100.0]))
    c = Composition(Blaschke([0.1]), Polynomial([0, 2], DomainSpec.disc(0, 10)))
    with pytest.raises(DomainError):
        c.check_domain(np.array([0.8]))


def test_invalid_maps():
    with pytest.raises(InvalidInputError):
        Blaschke([1.0])
    with pytest.raises(InvalidInputError):
        Blaschke([0.1], factor=2)
    with pytest.raises(InvalidInputError):
        Polynomial([np.nan])
    with pytest.raises(InvalidInputError):
        PowerLaw(0.5, base=0)


@pytest.mark.parametrize(
    "doc, field",
    [
        ({}, "kind"),
        ({"kind": "nope"}, "kind"),
        ({"kind": "polynomial"}, "coeffs"),
        ({"kind": "polynomial", "coeffs": [[1, 2, 3]]}, "coeffs"),
        ({"kind": "blaschke", "zeros": [2]}, "zeros"),
        ({"kind": "power_law"}, "beta"),
        ({"kind": "composition", "outer": {"kind": "identity"}}, "inner"),
        ({"kind": "constant"}, "value"),
    ],
)
def test_config_errors(doc, field):
    with pytest.raises(ConfigError) as exc:
        from_dict(doc)
    assert exc.value.field == field
