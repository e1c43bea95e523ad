import numpy as np
import pytest

from symprod.errors import InvalidInputError, NumericalFailure
from symprod.roots import (
    RootMultiset,
    cluster_labels,
    hausdorff,
    matching_distance,
    partition_type,
    roots_of,
    scale_of,
    solve_roots,
)
from symprod.sympoly import elem_sym, eval_q


def test_examples():
    r = roots_of([2, 1])
    assert r.clusters == ((1 + 0j, 2),)
    np.testing.assert_allclose(roots_of([0, -1]).roots, [-1, 1])


def test_partition_type_examples():
    assert partition_type(roots_of(elem_sym([1, 1, 2]))).multiplicities == (1, 2)
    # dyadic w keeps the coefficients of q exact
    w = 0.375 - 0.25j
    p = partition_type(roots_of(elem_sym([w, w, w])))
    assert (p.k, p.multiplicities) == (1, (3,))
    p = partition_type(RootMultiset(np.array([1, 1 + 1e-12])))
    assert (p.k, p.multiplicities) == (1, (2,))


def test_cluster_tol_override():
    r = RootMultiset(np.array([0.0, 1e-3, 1.0]))
    assert partition_type(r).k == 3
    assert partition_type(r, cluster_tol=1e-2).multiplicities == (1, 2)


def test_round_trip_and_residual(rng):
    for n in range(1, 11):
        z = rng.normal(size=(500, n)) + 1j * rng.normal(size=(500, n))
        s = elem_sym(z)
        r = solve_roots(s)
        scale = scale_of(z)
        assert np.all(hausdorff(r, z) <= 1e-8 * scale)
        q = eval_q(s, r).q
        assert np.all(np.abs(q) <= 1e-12 * (1 + np.abs(r).max(-1, keepdims=True)) ** n * 10)


def test_elem_sym_reproduces_source(rng):
    s = rng.normal(size=(300, 6)) + 1j * rng.normal(size=(300, 6))
    back = elem_sym(solve_roots(s))
    assert np.all(np.abs(back - s) <= 1e-8 * (1 + np.abs(s)).max(-1, keepdims=True) ** 6)


def test_multiple_roots_cluster(rng):
    for mult in range(2, 6):
        w = complex(*np.round(rng.normal(size=2) * 64) / 64)
        z = np.array([w] * mult + [w + 1.5, w - 1.5j])
        p = partition_type(roots_of(elem_sym(z)))
        assert sorted(p.multiplicities) == [1, 1, mult]


def test_rounded_coefficients_need_looser_tolerance(rng):
    # a triple root stored with rounded coefficients splits by ~eps**(1/3)
    for _ in range(50):
        w = complex(rng.normal(), rng.normal())
        r = roots_of(elem_sym([w, w, w]), cluster_tol=1e-4)
        assert partition_type(r).multiplicities == (3,)
        assert abs(r.clusters[0][0] - w) <= 1e-10 * (1 + abs(w))


def test_properness_bound(rng):
    for n in (1, 2, 5, 9):
        r = 10.0 ** rng.uniform(-2, 2, size=2000)
        d = rng.normal(size=(2000, n)) + 1j * rng.normal(size=(2000, n))
        s = d / np.linalg.norm(d, axis=-1, keepdims=True) * r[:, None]
        roots = solve_roots(s)
        bound = np.maximum(np.sqrt(n) * r, 1)
        assert np.all(np.abs(roots).max(-1) <= bound * (1 + 1e-8))


def test_root_continuity(rng):
    for n in range(2, 7):
        z = rng.normal(size=(200, n)) + 1j * rng.normal(size=(200, n))
        z[:, 1] = z[:, 0]
        s = elem_sym(z)
        ds = rng.normal(size=s.shape) + 1j * rng.normal(size=s.shape)
        ds *= 1e-12 / np.linalg.norm(ds, axis=-1, keepdims=True)
        a, b = solve_roots(s), solve_roots(s + ds)
        assert np.all(hausdorff(a, b) <= 10 * 1e-12 ** (1 / n) * scale_of(z))


def test_rootmultiset_invariants():
    r = RootMultiset(np.array([2, 1j, 2]))
    assert r.n == 3
    assert sum(m for _, m in r.clusters) == 3
    np.testing.assert_array_equal(r.expanded(), r.roots)
    with pytest.raises(InvalidInputError):
        RootMultiset(np.array([1.0]), cluster_tol=-1)


def test_distances():
    a = np.array([0, 1, 1])
    b = np.array([0, 0, 1])
    assert hausdorff(a, b) == 0
    assert matching_distance(a, b) == 1
    k, labels = cluster_labels(np.array([0, 1e-9, 5]), 1e-6)
    assert k == 2 and labels[0] == labels[1]


def test_invalid_and_failure(monkeypatch):
    with pytest.raises(InvalidInputError):
        roots_of([np.nan, 1])
    import symprod.roots as R

    monkeypatch.setattr(R, "RESIDUAL_TOL", -1.0)
    with pytest.raises(NumericalFailure) as exc:
        solve_roots([1, 2, 3])
    assert exc.value.best_iterate is not None and exc.value.best_iterate.shape == (3,)
