"""Bundles: supports, (co)restrictions, classification, the codual and
morphism verdicts, anchored on the running Sierpinski example."""

import pytest

from codual.bundles import (Bundle, BundleError, BundleMorphism,
                            check_morphism, classify, codual,
                            compose_morphisms, corestriction_map,
                            cosupport_map, dualize_morphism,
                            has_open_support, ident_morphism_witness,
                            identity_bundle_morphism, is_cospectral,
                            is_spectral, is_spectral_pseudo, open_support,
                            restriction_map, support_map)
from codual.fintop import FinTop, indiscrete, points_of, sierpinski
from codual.gflinalg import full_subspace, span, zero_subspace


def sub_of(b, mid):
    return b.sublat.subspaces[mid]


def test_open_support_of_zero_vector(running):
    assert open_support(running, (0, 0)) == 0


def test_open_support_running_example(running, running_dual):
    # raw set {x} has empty interior in the Sierpinski space
    assert open_support(running, (0, 1)) == 0
    assert open_support(running_dual, (0, 1)) == 0b10


def test_codual_of_running(running, running_dual):
    assert running_dual.kappa == (span(2, 2, [(0, 1)]), zero_subspace(2, 2))
    assert codual(running_dual) == Bundle(running.base, running.pair,
                                          running.kappa)


def test_codual_of_constant_full(point_full):
    assert codual(point_full).kappa[0].dim == 0


def test_support_map_of_running_is_constant_empty(running):
    sigma = support_map(running)
    assert all(running.base.opens[sigma(v)] == 0
               for v in range(len(running.sublat)))
    gamma = restriction_map(running)
    full_id = running.sublat.id_of(full_subspace(2, 2))
    assert all(v == full_id for v in gamma.table)


def test_support_map_of_codual(running_dual):
    sigma = support_map(running_dual)
    line = running_dual.sublat.id_of(span(2, 2, [(0, 1)]))
    assert running_dual.base.opens[sigma(line)] == 0b10


def test_restriction_of_codual_frozen_oracle(running_dual):
    """gamma(empty)=0, gamma({y})=<(0,1)>, gamma(X)=A, computed by hand from
    the open supports (only the zero vector has empty support)."""
    gamma = restriction_map(running_dual)
    lat = running_dual.sublat
    opens = running_dual.base.opens
    expected = {0b00: zero_subspace(2, 2), 0b10: span(2, 2, [(0, 1)]),
                0b11: full_subspace(2, 2)}
    for i, u in enumerate(opens):
        assert lat.subspaces[gamma(i)] == expected[u]


def test_corestriction_of_running(running):
    gamma_c = corestriction_map(running)
    lat = running.sublat
    closeds = running.base.closeds
    expected = {0b00: zero_subspace(2, 2), 0b01: span(2, 2, [(1, 0)]),
                0b11: full_subspace(2, 2)}
    for i, c in enumerate(closeds):
        assert lat.subspaces[gamma_c(i)] == expected[c]
    # empty join convention
    assert lat.subspaces[gamma_c(running.base.closed_id(0))].dim == 0


def test_cosupport_of_full_space_is_everything(running):
    sc = cosupport_map(running)
    full_id = running.sublat.id_of(full_subspace(2, 2))
    assert running.base.closeds[sc(full_id)] == running.base.full


def test_classification_running(running, running_dual):
    c = classify(running)
    assert c.as_dict() == {"open_support": False, "spectral_pseudo": False,
                           "spectral": False, "cospectral": True}
    cd = classify(running_dual)
    assert cd.as_dict() == {"open_support": True, "spectral_pseudo": True,
                            "spectral": False, "cospectral": False}


def test_classification_constant_bundle(pair):
    b = Bundle(sierpinski(), pair, (span(2, 2, [(1, 0)]),) * 2)
    assert classify(b).as_dict() == {"open_support": True,
                                     "spectral_pseudo": True,
                                     "spectral": True, "cospectral": True}


def test_open_support_witness_vector(running):
    ok, witness = has_open_support(running)
    assert not ok
    vec, raw = witness
    assert not running.kappa[0].contains(vec)
    assert running.kappa[1].contains(vec)
    assert not running.base.is_open(raw)


def test_spectral_implies_cospectral_here(fixtures):
    for b in fixtures.values():
        if is_spectral(b):
            assert is_cospectral(b)
            assert is_spectral_pseudo(b)


def test_identity_morphism_is_strict_iso(running):
    for variance in ("contravariant", "covariant"):
        v = check_morphism(identity_bundle_morphism(running, variance))
        assert v.valid and v.iso
        assert v.strict in (True, None)


def test_collapse_to_zero_point_valid_not_strict(running, point_zero):
    m = BundleMorphism.make(running, point_zero, (0, 0),
                            ((1, 0), (0, 1)), "contravariant")
    v = check_morphism(m)
    assert v.valid and v.strict is False and not v.iso


def test_collapse_to_full_point_is_invalid(running, point_full):
    """With kappa_pt = A the contravariant condition fails at the closed
    point: (0,1) lies in A but not in <(1,0)>."""
    m = BundleMorphism.make(running, point_full, (0, 0),
                            ((1, 0), (0, 1)), "contravariant", check=False)
    v = check_morphism(m)
    assert not v.valid
    x, vec = v.witness
    assert x == 0 and not running.kappa[0].contains(vec)
    with pytest.raises(BundleError):
        BundleMorphism.make(running, point_full, (0, 0),
                            ((1, 0), (0, 1)), "contravariant")


def test_embed_full_point_into_running_at_x(running, point_full):
    m = BundleMorphism.make(point_full, running, (0,),
                            ((1, 0), (0, 1)), "contravariant")
    v = check_morphism(m)
    assert v.valid and v.strict is False


def test_discontinuous_flat_map_is_invalid(running):
    m = BundleMorphism.make(running, running, (1, 0),
                            ((1, 0), (0, 1)), "contravariant", check=False)
    assert not check_morphism(m).valid


def test_dualize_identity(running):
    m = identity_bundle_morphism(running)
    md = dualize_morphism(m)
    assert md.variance == "covariant"
    assert md.sharp.matrix == m.sharp.matrix
    assert check_morphism(md).valid


def test_dualize_collapse_gives_valid_covariant(running, point_zero):
    m = BundleMorphism.make(running, point_zero, (0, 0),
                            ((1, 0), (0, 1)), "contravariant")
    md = dualize_morphism(m)
    assert md.variance == "covariant"
    assert md.src == codual(running) and md.dst == codual(point_zero)
    assert check_morphism(md).valid
    mdd = dualize_morphism(md)
    assert mdd.sharp.matrix == m.sharp.matrix
    assert mdd.variance == "contravariant"


def test_dualize_preserves_composition(running, point_zero, pair):
    """dualize(m2 . m1) = dualize(m2) . dualize(m1) on a 3-object chain."""
    mid = Bundle(indiscrete(2), pair,
                 (span(2, 2, [(1, 0)]), span(2, 2, [(1, 0)])))
    m1 = BundleMorphism.make(running, mid, (0, 0), ((1, 0), (0, 0)),
                             "contravariant")
    m2 = BundleMorphism.make(mid, point_zero, (0, 0), ((0, 0), (0, 0)),
                             "contravariant")
    lhs = dualize_morphism(compose_morphisms(m2, m1))
    rhs = compose_morphisms(dualize_morphism(m2), dualize_morphism(m1))
    assert lhs.f_flat == rhs.f_flat
    assert lhs.sharp.matrix == rhs.sharp.matrix
    assert lhs.variance == rhs.variance


def test_ident_morphism_witness(running):
    assert ident_morphism_witness((0, 1), running, running) is None
    moved = Bundle(running.base, running.pair,
                   (running.kappa[1], running.kappa[0]))
    assert ident_morphism_witness((0, 1), running, moved) is not None


def test_kernel_specialization_on_cospectral(running):
    """y in cl{x} implies kappa(y) inside kappa(x) for cospectral bundles."""
    assert is_cospectral(running)
    for x in range(running.base.n_points):
        for y in points_of(running.base.closure_point(x)):
            assert running.kappa[y].leq(running.kappa[x])


def test_no_adjoint_bundle_sigma_not_sup_hom(adjointless):
    sigma = support_map(adjointless)
    w = sigma.sup_hom_witness()
    assert w is not None
    (pair_elems, got, want) = w
    assert got != want
    # and the full biconditional genuinely fails against the span formula
    gamma = restriction_map(adjointless)
    assert sigma.adjunction_witness(gamma) is not None


def test_open_support_implies_sigma_sup_hom(fixtures):
    for b in fixtures.values():
        if has_open_support(b)[0]:
            assert support_map(b).sup_hom_witness() is None


def test_cosupport_formula_requires_cospectral(adjointless):
    """The right adjoint always exists; the preimage formula lands outside
    the closed sets exactly when the bundle is not cospectral."""
    assert not is_cospectral(adjointless)
    gamma_c = corestriction_map(adjointless)
    sc = gamma_c.right_adjoint()
    assert gamma_c.adjunction_witness(sc) is None
    line = adjointless.sublat.id_of(span(2, 2, [(1, 0)]))
    raw = sum(1 << x for x in range(2)
              if adjointless.kappa[x].leq(span(2, 2, [(1, 0)])))
    assert not adjointless.base.is_closed(raw)
