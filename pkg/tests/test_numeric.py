"""Floating-point lemma checks: frozen examples, invariance properties and
reproducibility."""

import numpy as np
import pytest

from codual.numeric import (NumericError, convexity_bound_holds,
                            dist_to_subspace, dual_distance_residual,
                            functional_kernel_distance_residual,
                            hahn_banach_witness, orthonormalize, perp,
                            project, run_numeric_suite)

E1_2 = np.array([[0.0], [1.0]])          # span{e2} in R^2
EQ = 1e-9


def col(*vectors):
    return np.column_stack([np.asarray(v, dtype=float) for v in vectors])


def test_dist_to_axis():
    assert abs(dist_to_subspace([1, 0], E1_2) - 1.0) < EQ


def test_dist_random_against_grid_oracle():
    rng = np.random.default_rng(5)
    v = orthonormalize(rng.uniform(-1, 1, size=(3, 1)))
    a = rng.uniform(-1, 1, size=3)
    got = dist_to_subspace(a, v)
    # oracle: brute-force minimization over a fine coefficient grid
    ts = np.linspace(-3, 3, 20001)
    best = min(np.linalg.norm(a - t * v[:, 0]) for t in ts)
    assert abs(got - best) < 1e-6


def test_perp_of_axis_in_r3():
    p = perp(col([1, 0, 0]))
    assert p.shape == (3, 2)
    assert np.allclose(p[0], 0.0, atol=1e-12)


def test_perp_involution():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n))
        v = orthonormalize(rng.uniform(-1, 1, size=(n, k)))
        w = perp(perp(v))
        # same subspace: principal angles vanish
        sv = np.linalg.svd(v.T @ w, compute_uv=False)
        assert np.max(np.abs(sv - 1.0)) < 1e-10


def test_perp_dimension_matches_annihilator():
    # dim F(V) = n - dim V, structurally matching the GF(p) anti-isomorphism
    rng = np.random.default_rng(3)
    for n in (2, 4, 6):
        for k in range(n + 1):
            v = orthonormalize(rng.uniform(-1, 1, size=(n, k))) \
                if k else np.zeros((n, 0))
            assert perp(v, n).shape[1] == n - v.shape[1]


def test_kernel_distance_examples():
    assert functional_kernel_distance_residual([1, 0], [1, 0]) < EQ
    assert functional_kernel_distance_residual([1, 1], [1, 0]) < EQ


def test_kernel_distance_zero_functional_rejected():
    with pytest.raises(NumericError):
        functional_kernel_distance_residual([1, 0], [0, 0])


def test_hahn_banach_axis():
    phi = hahn_banach_witness(np.array([1.0, 0.0]), E1_2)
    assert np.allclose(phi, [1, 0], atol=EQ)


def test_hahn_banach_diagonal():
    a = np.array([1.0, 1.0, 0.0])
    v = col([0, 0, 1])
    phi = hahn_banach_witness(a, v)
    assert np.allclose(phi, np.array([1, 1, 0]) / np.sqrt(2), atol=EQ)
    assert abs(np.dot(phi, a) - np.sqrt(2)) < EQ


def test_hahn_banach_rejects_member():
    with pytest.raises(NumericError):
        hahn_banach_witness(np.array([0.0, 1.0]), E1_2)


def test_dual_distance_examples():
    v = col([1, 0])
    assert dual_distance_residual([1, 0], v) < EQ
    assert dist_to_subspace([1, 0], perp(v)) > 0.9
    w = col([0, 1])
    assert dual_distance_residual([1, 0], w) < EQ
    assert dist_to_subspace([1, 0], perp(w)) < EQ


def test_dual_distance_threshold_equivalence():
    rng = np.random.default_rng(7)
    v = orthonormalize(rng.uniform(-1, 1, size=(4, 2)))
    phi = rng.uniform(-1, 1, size=4)
    crit = np.linalg.norm(project(phi, v))
    rs = [r for r in rng.uniform(0, 2, size=100) if abs(r - crit) > 1e-7]
    assert dual_distance_residual(phi, v, rs) < EQ


def test_convexity_examples():
    v = E1_2
    assert convexity_bound_holds(v, [1, 0], [0, 1], 0.5)
    assert convexity_bound_holds(v, [1, 0], [0, 1], 1.0)
    with pytest.raises(NumericError):
        convexity_bound_holds(v, [1, 1], [0, 1], 0.5)   # ||a|| != d(a,V)
    with pytest.raises(NumericError):
        convexity_bound_holds(v, [1, 0], [1, 0], 0.5)   # b not in V
    with pytest.raises(NumericError):
        convexity_bound_holds(v, [1, 0], [0, 1], 0.0)


def test_rotation_invariance():
    """Residuals are invariant under orthogonal changes of basis."""
    rng = np.random.default_rng(13)
    n = 5
    q = np.linalg.qr(rng.uniform(-1, 1, size=(n, n)))[0]
    for _ in range(20):
        a = rng.uniform(-1, 1, size=n)
        phi = rng.uniform(-1, 1, size=n)
        r1 = functional_kernel_distance_residual(a, phi)
        r2 = functional_kernel_distance_residual(q @ a, q @ phi)
        assert abs(r1 - r2) < EQ


def test_suite_deterministic_replay():
    a = run_numeric_suite(123, trials=50, convexity_trials=100)
    b = run_numeric_suite(123, trials=50, convexity_trials=100)
    assert a.checks == b.checks and a.ok and b.ok


def test_suite_seed_sensitivity():
    a = run_numeric_suite(1, trials=30, convexity_trials=50)
    b = run_numeric_suite(2, trials=30, convexity_trials=50)
    assert a.ok and b.ok
    assert a.seed != b.seed
