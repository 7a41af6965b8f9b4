"""Topologies on the subspace lattice Sub(GF(p)^n).

Three topologies on the same carrier (the elements of a `SubLattice`):

* COS - generated by the sets "a not in V", one per projective point a;
* dual COS - generated by the sets U_{0,V} = {W : W not inside V};
* lower Vietoris for the discrete vector space - generated by the sets
  "a in V".

The discrete topology on the vector space is the only one modeled, which
makes lower Vietoris coincide with dual COS; the equality is asserted by the
test-suite rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import fintop
from .fintop import FinTop, generate_topology, mask_of
from .gflinalg import SubLattice, Subspace, nonzero_vectors, span, sub_lattice

__all__ = [
    "TopologyKind",
    "SubTopology",
    "u_set",
    "f_set",
    "check_set",
    "cos_topology",
    "dual_cos_topology",
    "lower_vietoris_discrete",
    "sob_cos",
    "sob_dual_cos",
]


class TopologyKind(Enum):
    COS = "cos"
    DUAL_COS = "dual-cos"
    LOWER_VIETORIS_DISCRETE = "lower-vietoris-discrete"


def u_set(lat: SubLattice, v0: int, v1: int) -> frozenset[int]:
    """U_{V0,V1} = {W : V0 not inside W, or W not inside V1} (by ids)."""
    leq = lat.lattice.leq_mat
    return frozenset(w for w in range(len(lat))
                     if not leq[v0, w] or not leq[w, v1])


def f_set(lat: SubLattice, v: int) -> frozenset[int]:
    """F_{0,V} = {W : W inside V}, the complement of U_{0,V}."""
    leq = lat.lattice.leq_mat
    return frozenset(w for w in range(len(lat)) if leq[w, v])


def check_set(lat: SubLattice, a) -> frozenset[int]:
    """The set "a not in V" = U_{<a>, 1} (by ids)."""
    line = lat.id_of(span(lat.p, lat.n, [a]))
    return u_set(lat, line, lat.lattice.top)


@dataclass(frozen=True)
class SubTopology:
    """A `SubLattice` carrier with one of the three generated topologies."""

    lattice: SubLattice
    kind: TopologyKind
    space: FinTop

    def sob(self, v: int) -> int:
        """The generic soberification X∖cl{V} of the point V, as a mask."""
        return self.space.sob_point(v)


def _generate(lat: SubLattice, kind: TopologyKind,
              subbasis: list[frozenset[int]]) -> SubTopology:
    masks = [mask_of(s) for s in subbasis]
    space = generate_topology(len(lat), masks)
    return SubTopology(lat, kind, space)


@lru_cache(maxsize=None)
def cos_topology(p: int, n: int) -> SubTopology:
    """Coarsest topology making every set "a not in V" open."""
    lat = sub_lattice(p, n)
    sub = [check_set(lat, a) for a in nonzero_vectors(p, n)]
    return _generate(lat, TopologyKind.COS, sub)


@lru_cache(maxsize=None)
def dual_cos_topology(p: int, n: int) -> SubTopology:
    """Coarsest topology making every U_{0,V} open."""
    lat = sub_lattice(p, n)
    sub = [u_set(lat, lat.lattice.bottom, v) for v in range(len(lat))]
    return _generate(lat, TopologyKind.DUAL_COS, sub)


@lru_cache(maxsize=None)
def lower_vietoris_discrete(p: int, n: int) -> SubTopology:
    """Generated by the sets "a in V", a nonzero (discrete model)."""
    lat = sub_lattice(p, n)
    leq = lat.lattice.leq_mat
    sub = []
    for a in nonzero_vectors(p, n):
        line = lat.id_of(span(p, n, [a]))
        sub.append(frozenset(w for w in range(len(lat)) if leq[line, w]))
    return _generate(lat, TopologyKind.LOWER_VIETORIS_DISCRETE, sub)


def sob_cos(lat: SubLattice, v: int) -> frozenset[int]:
    """Soberification in the COS topology: sob(V) = U_{V,1}."""
    return u_set(lat, v, lat.lattice.top)


def sob_dual_cos(lat: SubLattice, v: int) -> frozenset[int]:
    """Soberification in the dual COS topology: sob(V) = U_{0,V}."""
    return u_set(lat, lat.lattice.bottom, v)


def annihilator_point_map(pair, lat: SubLattice, *, direction_f: bool = True
                          ) -> tuple[int, ...]:
    """F (or G) as a self-map of the subspace ids of ``lat``."""
    table = []
    for v in lat.subspaces:
        w = pair.annihilator_f(v) if direction_f else pair.annihilator_g(v)
        table.append(lat.id_of(w))
    return tuple(table)


def is_homeomorphism_pair(fwd: tuple[int, ...], bwd: tuple[int, ...],
                          src: FinTop, dst: FinTop) -> bool:
    """fwd and bwd are mutually inverse continuous bijections."""
    n = src.n_points
    if dst.n_points != n:
        return False
    if any(bwd[fwd[i]] != i for i in range(n)):
        return False
    if any(fwd[bwd[i]] != i for i in range(n)):
        return False
    return (fintop.is_continuous(fwd, src, dst)
            and fintop.is_continuous(bwd, dst, src))
