"""Exact GF(p) linear algebra: canonical subspaces, the subspace lattice,
annihilator duality and dual-pair morphisms.

Oracles: subspace meets/joins are cross-checked against vector-set
enumeration; lattice sizes against the Gaussian binomial product formula.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codual.gflinalg import (DualPair, DualPairMorphism, GFError,
                             ResourceGuardError, Subspace, count_subspaces,
                             equations, full_subspace, gaussian_binomial,
                             identity_morphism, nonzero_vectors, span,
                             sub_lattice, zero_subspace)


def vectors_of(v: Subspace) -> frozenset:
    return frozenset(v.vectors())


def test_join_of_axes_is_full():
    a = span(2, 2, [(1, 0)])
    b = span(2, 2, [(0, 1)])
    assert a.join(b) == full_subspace(2, 2)


def test_meet_of_distinct_lines_is_zero():
    a = span(2, 2, [(1, 0)])
    b = span(2, 2, [(1, 1)])
    got = a.meet(b)
    # oracle: intersection of the vector sets
    assert vectors_of(got) == vectors_of(a) & vectors_of(b)
    assert got.dim == 0


def test_contains():
    d = span(2, 2, [(1, 1)])
    assert d.contains((1, 1))
    assert not d.contains((1, 0))


def test_meet_join_against_vector_sets_exhaustive():
    for (p, n) in ((2, 2), (3, 2)):
        lat = sub_lattice(p, n)
        for a in lat.subspaces:
            for b in lat.subspaces:
                assert vectors_of(a.meet(b)) == vectors_of(a) & vectors_of(b)
                joined = vectors_of(a.join(b))
                assert joined >= vectors_of(a) | vectors_of(b)
                assert len(joined) == p ** a.join(b).dim


def test_dimension_mismatch_raises():
    with pytest.raises(GFError):
        span(2, 2, [(1, 0)]).join(span(2, 3, [(1, 0, 0)]))
    with pytest.raises(GFError):
        span(2, 2, [(1, 0, 1)])


def test_sub_lattice_counts():
    assert len(sub_lattice(2, 2)) == 5
    assert len(sub_lattice(2, 3)) == 16
    assert len(sub_lattice(3, 2)) == 6


def test_gaussian_binomial_formula():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(3, 2, 2) == 7
    assert gaussian_binomial(2, 1, 3) == 4
    # independent count by enumeration of canonical bases
    for (p, n) in ((2, 2), (2, 3), (3, 2)):
        assert len(sub_lattice(p, n)) == count_subspaces(p, n)


def test_resource_guard():
    with pytest.raises(ResourceGuardError):
        sub_lattice(5, 5)


def test_non_prime_rejected():
    with pytest.raises(GFError):
        DualPair.standard(4, 2)


def test_annihilator_examples():
    dp = DualPair.standard(2, 2)
    assert dp.annihilator_f(span(2, 2, [(1, 0)])) == span(2, 2, [(0, 1)])
    assert dp.annihilator_f(zero_subspace(2, 2)) == full_subspace(2, 2)
    assert dp.annihilator_f(full_subspace(2, 2)) == zero_subspace(2, 2)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_annihilator_of_kernel_is_span_of_functional(p, n):
    """F(ker phi) = <phi> for every nonzero functional."""
    dp = DualPair.standard(p, n)
    for phi in nonzero_vectors(p, n):
        ker = dp.kernel_of_functional(phi)
        assert dp.annihilator_f(ker) == span(p, n, [phi])
        assert dp.annihilator_g(span(p, n, [phi])) == ker


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_galois_biconditional_exhaustive(p, n):
    dp = DualPair.standard(p, n)
    lat = sub_lattice(p, n)
    for v in lat.subspaces:
        fv = dp.annihilator_f(v)
        for w in lat.subspaces:
            assert v.leq(dp.annihilator_g(w)) == w.leq(fv)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
def test_annihilators_are_mutually_inverse_anti_isomorphisms(p, n):
    dp = DualPair.standard(p, n)
    lat = sub_lattice(p, n)
    for v in lat.subspaces:
        fv = dp.annihilator_f(v)
        assert fv.dim == n - v.dim
        assert dp.annihilator_g(fv) == v
        for w in lat.subspaces:
            assert v.leq(w) == dp.annihilator_f(w).leq(fv)


def test_nondegenerate_nonstandard_pairing():
    dp = DualPair(2, 2, ((1, 1), (0, 1)))
    lat = sub_lattice(2, 2)
    for v in lat.subspaces:
        assert dp.annihilator_g(dp.annihilator_f(v)) == v
        # <a, phi> = 0 for all generators
        for a in v.vectors():
            for phi in dp.annihilator_f(v).vectors():
                assert dp.value(a, phi) == 0


def test_singular_pairing_rejected():
    with pytest.raises(GFError):
        DualPair(2, 2, ((1, 1), (1, 1)))


def test_dual_morphism_identity_and_zero():
    dp = DualPair.standard(2, 2)
    eye = identity_morphism(dp)
    assert eye.matrix_dual == eye.matrix
    zero = DualPairMorphism.from_matrix(dp, dp, ((0, 0), (0, 0)))
    assert zero.matrix_dual == ((0, 0), (0, 0))


def test_dual_morphism_transpose_for_standard_pairing():
    dp = DualPair.standard(2, 2)
    m = DualPairMorphism.from_matrix(dp, dp, ((1, 1), (0, 1)))
    assert m.matrix_dual == ((1, 0), (1, 1))
    assert m.adjoint_identity_witness() is None


def test_dual_morphism_nonstandard_pairing():
    src = DualPair(2, 2, ((1, 1), (0, 1)))
    dst = DualPair.standard(2, 2)
    m = DualPairMorphism.from_matrix(src, dst, ((1, 0), (1, 1)))
    assert m.adjoint_identity_witness() is None
    # dual determined by <f a, psi> = <a, f_dual psi> on all vector pairs
    for a in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for psi in ((0, 0), (0, 1), (1, 0), (1, 1)):
            assert dst.value(m.apply(a), psi) == src.value(a, m.apply_dual(psi))


def test_image_preimage_and_annihilator_exchange():
    """F(f(V)) = (f_dual)^{-1}(F(V)) and G(f_dual(W)) = f^{-1}(G(W))."""
    dp = DualPair.standard(2, 2)
    m = DualPairMorphism.from_matrix(dp, dp, ((1, 1), (0, 1)))
    lat = sub_lattice(2, 2)
    for v in lat.subspaces:
        lhs = dp.annihilator_f(m.image(v))
        rhs = m.preimage_dual(dp.annihilator_f(v))
        assert lhs == rhs
        # containment F(f^{-1}(W)) >= f_dual(F(W))
        w = v
        assert m.image_dual(dp.annihilator_f(w)).leq(
            dp.annihilator_f(m.preimage(w)))
        assert dp.annihilator_g(m.image_dual(w)) == m.preimage(
            dp.annihilator_g(w))


def test_max_f_of_identity_and_kernel():
    dp = DualPair.standard(2, 2)
    eye = identity_morphism(dp)
    for v in sub_lattice(2, 2).subspaces:
        assert eye.image(v) == v
    m = DualPairMorphism.from_matrix(dp, dp, ((1, 1), (0, 0)))
    assert m.preimage(zero_subspace(2, 2)) == m.kernel()
    assert m.kernel() == span(2, 2, [(1, 1)])


def test_equations_double_annihilator():
    for (p, n) in ((2, 3), (3, 2)):
        for v in sub_lattice(p, n).subspaces:
            eqs = equations(v)
            # V = {x : E x = 0}
            sols = [x for x in _all_vectors(p, n)
                    if all(sum(e[i] * x[i] for i in range(n)) % p == 0
                           for e in eqs)]
            assert frozenset(sols) == vectors_of(v)


def _all_vectors(p, n):
    from itertools import product
    return list(product(range(p), repeat=n))


@st.composite
def matrix_and_pair(draw):
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(1, 3))
    mat = tuple(tuple(draw(st.integers(0, p - 1)) for _ in range(n))
                for _ in range(n))
    return DualPair.standard(p, n), mat


@given(matrix_and_pair())
@settings(max_examples=80, deadline=None)
def test_dual_morphism_adjoint_identity_property(arg):
    dp, mat = arg
    m = DualPairMorphism.from_matrix(dp, dp, mat)
    assert m.adjoint_identity_witness() is None
    # double dual of the matrix under swapped pairs returns the original
    back = DualPairMorphism.from_matrix(dp.swap(), dp.swap(), m.matrix_dual)
    assert back.matrix_dual == m.matrix


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=50, deadline=None)
def test_span_is_idempotent_and_order_insensitive(i, j, k):
    lat = sub_lattice(2, 2)
    vs = [lat.subspaces[i % 5], lat.subspaces[j % 5], lat.subspaces[k % 5]]
    rows = [r for v in vs for r in v.basis]
    a = span(2, 2, rows)
    b = span(2, 2, list(reversed(rows)))
    assert a == b
    assert span(2, 2, [r for r in a.basis]) == a
