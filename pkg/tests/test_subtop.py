"""The COS, dual COS and lower Vietoris topologies on subspace lattices."""

import pytest

from codual.fintop import mask_of
from codual.gflinalg import DualPair, span, sub_lattice
from codual.subtop import (annihilator_point_map, check_set, cos_topology,
                           dual_cos_topology, f_set, is_homeomorphism_pair,
                           lower_vietoris_discrete, sob_cos, sob_dual_cos,
                           u_set)

LAT22 = sub_lattice(2, 2)


def ids(*subs):
    return frozenset(LAT22.id_of(s) for s in subs)


def test_u_set_trivial_cases():
    bot, top = LAT22.lattice.bottom, LAT22.lattice.top
    assert u_set(LAT22, bot, top) == frozenset()
    line = LAT22.id_of(span(2, 2, [(1, 0)]))
    expected = ids(span(2, 2, [(0, 1)]), span(2, 2, [(1, 1)]),
                   span(2, 2, [(1, 0), (0, 1)]))
    assert u_set(LAT22, bot, line) == expected


def test_f_set_is_down_set():
    for v in range(len(LAT22)):
        down = frozenset(w for w in range(len(LAT22))
                         if LAT22.lattice.leq(w, v))
        assert f_set(LAT22, v) == down


def test_check_set_example():
    expected = ids(span(2, 2, []), span(2, 2, [(0, 1)]), span(2, 2, [(1, 1)]))
    assert check_set(LAT22, (1, 0)) == expected


def test_cos_subbasis_element_is_open():
    st = cos_topology(2, 2)
    assert st.space.is_open(mask_of(check_set(LAT22, (1, 0))))


def test_dual_cos_u00_is_nonzero_subspaces():
    st = dual_cos_topology(2, 2)
    bot = LAT22.lattice.bottom
    u = u_set(LAT22, bot, bot)
    assert len(u) == 4 and bot not in u
    assert st.space.is_open(mask_of(u))


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_lower_vietoris_equals_dual_cos(p, n):
    assert (lower_vietoris_discrete(p, n).space.opens
            == dual_cos_topology(p, n).space.opens)


def test_u_set_open_in_lower_vietoris_iff_v0_zero():
    st = lower_vietoris_discrete(2, 2)
    lat = st.lattice
    bot = lat.lattice.bottom
    for v0 in range(len(lat)):
        for v1 in range(len(lat)):
            if not lat.lattice.leq(v0, v1):
                continue
            mask = mask_of(u_set(lat, v0, v1))
            assert st.space.is_open(mask) == (v0 == bot)


def test_f_sets_meet_closed_exhaustive():
    """F_{0, meet of family} is the intersection of the family's F-sets,
    over every subset of Sub(GF(2)^2)."""
    from itertools import combinations
    lat = LAT22
    for size in range(1, 4):
        for family in combinations(range(len(lat)), size):
            meet = lat.lattice.meet_of(family)
            expected = f_set(lat, family[0])
            for v in family[1:]:
                expected &= f_set(lat, v)
            assert f_set(lat, meet) == expected


def test_sob_formulas_trivial():
    bot, top = LAT22.lattice.bottom, LAT22.lattice.top
    assert sob_cos(LAT22, bot) == frozenset()
    assert sob_dual_cos(LAT22, top) == frozenset()


def test_sob_cos_of_line_is_check_set():
    line = LAT22.id_of(span(2, 2, [(1, 0)]))
    assert sob_cos(LAT22, line) == check_set(LAT22, (1, 0))


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_sob_formulas_match_generic_soberification(p, n):
    cos = cos_topology(p, n)
    dcos = dual_cos_topology(p, n)
    lat = cos.lattice
    for v in range(len(lat)):
        assert mask_of(sob_cos(lat, v)) == cos.space.sob_point(v)
        assert mask_of(sob_dual_cos(lat, v)) == dcos.space.sob_point(v)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_cos_and_dual_cos_sober(p, n):
    assert cos_topology(p, n).space.is_sober()
    assert dual_cos_topology(p, n).space.is_sober()


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_annihilators_are_homeomorphisms(p, n):
    pair = DualPair.standard(p, n)
    lat = sub_lattice(p, n)
    fmap = annihilator_point_map(pair, lat, direction_f=True)
    gmap = annihilator_point_map(pair, lat, direction_f=False)
    cos, dcos = cos_topology(p, n).space, dual_cos_topology(p, n).space
    assert is_homeomorphism_pair(fmap, gmap, cos, dcos)
    assert is_homeomorphism_pair(fmap, gmap, dcos, cos)


def test_cos_opens_are_down_sets():
    """In the discrete model the COS topology is the down-set (Alexandrov)
    topology and dual COS the up-set one."""
    st = cos_topology(2, 2)
    leq = LAT22.lattice.leq_mat
    for u in st.space.opens:
        members = [i for i in range(len(LAT22)) if u & (1 << i)]
        for m in members:
            for w in range(len(LAT22)):
                if leq[w, m]:
                    assert u & (1 << w)
    n_down = len(st.space.opens)
    assert n_down == len(dual_cos_topology(2, 2).space.opens)


def test_cos_join_dual_cos_is_discrete():
    """COS and dual COS subbases together generate the discrete topology
    (an up-set meets a down-set in a single point)."""
    from codual.fintop import generate_topology
    cos = cos_topology(2, 2)
    dcos = dual_cos_topology(2, 2)
    sub = []
    for u in cos.space.opens:
        sub.append(u)
    for u in dcos.space.opens:
        sub.append(u)
    joined = generate_topology(len(LAT22), sub)
    assert len(joined.opens) == 1 << len(LAT22)
