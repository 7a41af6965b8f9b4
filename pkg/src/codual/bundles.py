"""(Pseudo) quotient vector bundles over finite spaces.

A bundle is a base space, a dual pair and a kernel map assigning a subspace
to every point.  Fibers are never materialized: every fiber-level statement
is phrased through the kernel map.  "Quotient vector bundle" (continuity
into the lower Vietoris topology) coincides with "cospectral" in this
discrete model, which the test-suite asserts rather than assumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Literal

from . import fintop
from .fintop import FinTop, mask_of, points_of
from .gflinalg import (DualPair, DualPairMorphism, GFError, Subspace,
                       full_subspace, identity_morphism, nonzero_vectors,
                       span, sub_lattice, zero_subspace)
from .lattice import MonotoneMap
from .subtop import cos_topology, dual_cos_topology

__all__ = [
    "Bundle",
    "BundleMorphism",
    "BundleError",
    "Classification",
    "MorphismVerdict",
    "open_support",
    "support_map",
    "restriction_map",
    "cosupport_map",
    "corestriction_map",
    "classify",
    "has_open_support",
    "open_support_via_sigma",
    "is_cospectral",
    "is_spectral",
    "is_spectral_pseudo",
    "spectral_kernel",
    "codual",
    "check_morphism",
    "dualize_morphism",
    "compose_morphisms",
    "identity_bundle_morphism",
    "ident_morphism_witness",
]

Variance = Literal["contravariant", "covariant"]


class BundleError(ValueError):
    pass


class Bundle:
    """A pseudo quotient vector bundle (base, dual pair, kernel map)."""

    def __init__(self, base: FinTop, pair: DualPair,
                 kappa: tuple[Subspace, ...]):
        if len(kappa) != base.n_points:
            raise BundleError("kernel map must be total on the base points")
        for v in kappa:
            if (v.p, v.n) != (pair.p, pair.n):
                raise BundleError("kernel subspace outside the pair's space")
        self.base = base
        self.pair = pair
        self.kappa = tuple(kappa)

    @cached_property
    def sublat(self):
        return sub_lattice(self.pair.p, self.pair.n)

    @cached_property
    def kappa_ids(self) -> tuple[int, ...]:
        return tuple(self.sublat.id_of(v) for v in self.kappa)

    @cached_property
    def dual_cos_space(self) -> FinTop:
        return dual_cos_topology(self.pair.p, self.pair.n).space

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bundle) and self.base == other.base
                and self.pair == other.pair and self.kappa == other.kappa)

    def __hash__(self):
        return hash((self.base, self.pair, self.kappa))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (f"Bundle(points={self.base.n_points}, "
                f"GF({self.pair.p})^{self.pair.n})")


def open_support(b: Bundle, a) -> int:
    """interior of {x : a not in kappa(x)}, as a point mask."""
    raw = mask_of(x for x in range(b.base.n_points)
                  if not b.kappa[x].contains(a))
    return b.base.interior(raw)


def support_map(b: Bundle) -> MonotoneMap:
    """sigma(V) = union of the open supports of the vectors of V.

    Always monotone; a sup-lattice homomorphism exactly when an adjoint
    restriction map exists (guaranteed under the open support property).
    """
    lat = b.sublat
    table = []
    for v in lat.subspaces:
        u = 0
        for a in v.vectors():
            u |= open_support(b, a)
        table.append(b.base.open_id(u))
    return MonotoneMap(lat.lattice, b.base.open_lattice, table, validate=False)


def restriction_map(b: Bundle) -> MonotoneMap:
    """gamma(U) = span{a : open support of a inside U}.

    Always equals the upper-adjoint candidate max{V : sigma(V) <= U}; it is
    a genuine right adjoint of the support map iff that map preserves
    joins.
    """
    lat = b.sublat
    sigma = support_map(b)
    table = []
    candidate = []
    for uid, u in enumerate(b.base.opens):
        vs = [a for a in nonzero_vectors(b.pair.p, b.pair.n)
              if open_support(b, a) & ~u == 0]
        table.append(lat.id_of(span(b.pair.p, b.pair.n, vs)))
        candidate.append(lat.lattice.join_of(
            v for v in range(len(lat)) if b.base.opens[sigma(v)] & ~u == 0))
    assert table == candidate, "span formula vs adjoint candidate mismatch"
    return MonotoneMap(b.base.open_lattice, lat.lattice, table, validate=False)


def corestriction_map(b: Bundle) -> MonotoneMap:
    """gamma_c(C) = join of kappa(x) over x in C; a sup-hom CX -> Max A."""
    lat = b.sublat
    table = [lat.lattice.join_of(b.kappa_ids[x] for x in points_of(c))
             for c in b.base.closeds]
    m = MonotoneMap(b.base.closed_lattice, lat.lattice, table, validate=False)
    assert m.is_sup_hom()
    return m


def cosupport_map(b: Bundle) -> MonotoneMap:
    """sigma_c, the right adjoint of the corestriction map.

    On cospectral bundles it is given by V -> kappa^{-1}(F_{0,V}); in
    general the preimage formula may leave the closed-set lattice while the
    adjoint always exists (the corestriction is a sup-hom).
    """
    adj = corestriction_map(b).right_adjoint()
    if is_cospectral(b):
        formula = [b.base.closed_id(_kappa_preimage_downset(b, v))
                   for v in range(len(b.sublat))]
        assert list(adj.table) == formula
    return adj


def _kappa_preimage_downset(b: Bundle, v: int) -> int:
    leq = b.sublat.lattice.leq_mat
    return mask_of(x for x in range(b.base.n_points)
                   if leq[b.kappa_ids[x], v])


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    open_support: bool
    spectral_pseudo: bool
    spectral: bool
    cospectral: bool
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {"open_support": self.open_support,
                "spectral_pseudo": self.spectral_pseudo,
                "spectral": self.spectral,
                "cospectral": self.cospectral}


def has_open_support(b: Bundle) -> tuple[bool, tuple | None]:
    """kappa^{-1}("a not in V") open for every a, with a witness vector."""
    for a in nonzero_vectors(b.pair.p, b.pair.n):
        raw = mask_of(x for x in range(b.base.n_points)
                      if not b.kappa[x].contains(a))
        if not b.base.is_open(raw):
            return False, (a, raw)
    return True, None


def open_support_via_sigma(b: Bundle) -> tuple[bool, tuple | None]:
    """sigma(V) = kappa^{-1}(U_{V,1}) for every V; equivalent to the open
    support property, and asserted so by the suite."""
    sigma = support_map(b)
    leq = b.sublat.lattice.leq_mat
    for v in range(len(b.sublat)):
        pre = mask_of(x for x in range(b.base.n_points)
                      if not leq[v, b.kappa_ids[x]])
        if b.base.opens[sigma(v)] != pre:
            return False, (v, b.base.opens[sigma(v)], pre)
    return True, None


def is_cospectral(b: Bundle) -> bool:
    """kappa continuous into the dual COS topology on Max A."""
    return fintop.is_continuous(b.kappa_ids, b.base, b.dual_cos_space)


def spectral_kernel(b: Bundle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(primes of Omega X as opens ids, their restriction-map images)."""
    gamma = restriction_map(b)
    primes = b.base.open_lattice.primes
    return primes, tuple(gamma(p) for p in primes)


def is_spectral_pseudo(b: Bundle) -> bool:
    """The open support property; equivalently, continuity of the kernel
    map into the COS topology (the open support topology once the vector
    space is given the trivial topology)."""
    ok, _ = has_open_support(b)
    if not ok:
        return False
    cos_space = cos_topology(b.pair.p, b.pair.n).space
    assert fintop.is_continuous(b.kappa_ids, b.base, cos_space)
    return True


def is_spectral(b: Bundle) -> bool:
    """Open support property plus spectral-kernel continuity.

    The kernel restriction is checked into the open support topology of
    the discrete model, which is generated by the COS and dual COS
    subbases together; on a finite subspace lattice that join is the
    discrete topology (an up-set intersected with a down-set cuts out a
    single point), so the continuity amounts to the spectral kernel being
    locally constant.
    """
    ok, _ = has_open_support(b)
    if not ok:
        return False
    space = fintop.sigma_space(b.base.open_lattice, require_locale=False)
    _, kfrak = spectral_kernel(b)
    return all(space.is_open(mask_of(i for i, v in enumerate(kfrak)
                                     if v == target))
               for target in set(kfrak))


def classify(b: Bundle) -> Classification:
    ok, witness = has_open_support(b)
    ok2, witness2 = open_support_via_sigma(b)
    assert ok == ok2, "open-support characterizations disagree"
    return Classification(
        open_support=ok,
        spectral_pseudo=is_spectral_pseudo(b) if ok else False,
        spectral=is_spectral(b),
        cospectral=is_cospectral(b),
        witness=witness or witness2,
    )


def codual(b: Bundle) -> Bundle:
    """Same base, swapped pair, kernel map F . kappa."""
    return _codual_cached(b)


@lru_cache(maxsize=None)
def _codual_cached(b: Bundle) -> Bundle:
    return Bundle(b.base, b.pair.swap(),
                  tuple(b.pair.annihilator_f(v) for v in b.kappa))


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class BundleMorphism:
    """A candidate morphism; use `check_morphism` for the verdict.

    For contravariant morphisms ``sharp`` maps dst.pair -> src.pair; for
    covariant ones src.pair -> dst.pair.
    """

    src: Bundle
    dst: Bundle
    f_flat: tuple[int, ...]
    sharp: DualPairMorphism
    variance: Variance = "contravariant"

    def __post_init__(self):
        if len(self.f_flat) != self.src.base.n_points:
            raise BundleError("flat map must be total on the source points")
        want = ((self.dst.pair, self.src.pair)
                if self.variance == "contravariant"
                else (self.src.pair, self.dst.pair))
        if (self.sharp.src, self.sharp.dst) != want:
            raise BundleError("sharp map endpoints do not match the variance")

    @classmethod
    def make(cls, src: Bundle, dst: Bundle, f_flat, sharp_matrix,
             variance: Variance = "contravariant", *, check: bool = True
             ) -> "BundleMorphism":
        if variance == "contravariant":
            sharp = DualPairMorphism.from_matrix(dst.pair, src.pair,
                                                 sharp_matrix)
        else:
            sharp = DualPairMorphism.from_matrix(src.pair, dst.pair,
                                                 sharp_matrix)
        m = cls(src, dst, tuple(int(x) for x in f_flat), sharp, variance)
        if check:
            verdict = check_morphism(m)
            if not verdict.valid:
                raise BundleError(
                    f"invalid {variance} morphism: witness {verdict.witness}")
        return m


@dataclass(frozen=True)
class MorphismVerdict:
    valid: bool
    strict: bool | None
    iso: bool
    witness: tuple | None = None


def check_morphism(m: BundleMorphism) -> MorphismVerdict:
    """Validity, strictness and iso-ness of a candidate morphism.

    Contravariant validity: b in kappa_dst(f(x)) implies sharp(b) in
    kappa_src(x); strictness upgrades the implication to an equivalence.
    Covariant validity: sharp(kappa_src(x)) inside kappa_dst(f(x)).
    An invalid morphism yields a witness (x, vector).
    """
    if not fintop.is_continuous(m.f_flat, m.src.base, m.dst.base):
        return MorphismVerdict(False, None, False, ("flat map discontinuous",))
    if m.variance == "contravariant":
        strict = True
        for x in range(m.src.base.n_points):
            kb = m.dst.kappa[m.f_flat[x]]
            ka = m.src.kappa[x]
            if not m.sharp.image(kb).leq(ka):
                bad = next(v for v in kb.vectors()
                           if not ka.contains(m.sharp.apply(v)))
                return MorphismVerdict(False, None, False, (x, bad))
            if m.sharp.preimage(ka) != kb:
                strict = False
        iso = (strict
               and _is_homeo(m.f_flat, m.src.base, m.dst.base)
               and _is_invertible(m.sharp))
        return MorphismVerdict(True, strict, iso)
    for x in range(m.src.base.n_points):
        ka = m.src.kappa[x]
        kb = m.dst.kappa[m.f_flat[x]]
        if not m.sharp.image(ka).leq(kb):
            bad = next(v for v in ka.vectors()
                       if not kb.contains(m.sharp.apply(v)))
            return MorphismVerdict(False, None, False, (x, bad))
    pointwise_equal = all(
        m.sharp.image(m.src.kappa[x]) == m.dst.kappa[m.f_flat[x]]
        for x in range(m.src.base.n_points))
    iso = (pointwise_equal
           and _is_homeo(m.f_flat, m.src.base, m.dst.base)
           and _is_invertible(m.sharp))
    return MorphismVerdict(True, None, iso)


def _is_homeo(f: tuple[int, ...], src: FinTop, dst: FinTop) -> bool:
    if src.n_points != dst.n_points or len(set(f)) != src.n_points:
        return False
    inv = [0] * src.n_points
    for x, y in enumerate(f):
        inv[y] = x
    return (fintop.is_continuous(f, src, dst)
            and fintop.is_continuous(inv, dst, src))


def _is_invertible(m: DualPairMorphism) -> bool:
    if m.src.n != m.dst.n:
        return False
    return m.kernel().dim == 0


def ident_morphism_witness(f: tuple[int, ...], src: Bundle, dst: Bundle):
    """None if f is an ident-morphism (kappa_src = kappa_dst . f)."""
    if src.pair != dst.pair:
        return ("pairs differ",)
    if not fintop.is_continuous(f, src.base, dst.base):
        return ("flat map discontinuous",)
    for x in range(src.base.n_points):
        if src.kappa[x] != dst.kappa[f[x]]:
            return (x, src.kappa[x], dst.kappa[f[x]])
    return None


def identity_bundle_morphism(b: Bundle,
                             variance: Variance = "contravariant"
                             ) -> BundleMorphism:
    eye = identity_morphism(b.pair)
    return BundleMorphism(b, b, tuple(range(b.base.n_points)), eye, variance)


def compose_morphisms(n: BundleMorphism, m: BundleMorphism) -> BundleMorphism:
    """n after m (both of the same variance)."""
    if m.dst != n.src or m.variance != n.variance:
        raise BundleError("morphisms are not composable")
    flat = tuple(n.f_flat[y] for y in m.f_flat)
    if m.variance == "contravariant":
        sharp = _compose_dpm(m.sharp, n.sharp)
    else:
        sharp = _compose_dpm(n.sharp, m.sharp)
    return BundleMorphism(m.src, n.dst, flat, sharp, m.variance)


def _compose_dpm(g: DualPairMorphism, f: DualPairMorphism) -> DualPairMorphism:
    if f.dst != g.src:
        raise GFError("dual pair morphisms are not composable")
    p = f.src.p
    mat = tuple(tuple(sum(g.matrix[i][k] * f.matrix[k][j]
                          for k in range(len(f.matrix))) % p
                      for j in range(f.src.n)) for i in range(g.dst.n))
    return DualPairMorphism.from_matrix(f.src, g.dst, mat)


def dualize_morphism(m: BundleMorphism) -> BundleMorphism:
    """(f_flat, sharp) -> (f_flat, sharp-dual) between the codual bundles,
    with the variance flipped.  An involution on the matrices."""
    verdict = check_morphism(m)
    if not verdict.valid:
        raise BundleError(f"cannot dualize an invalid morphism: {verdict.witness}")
    src_d, dst_d = codual(m.src), codual(m.dst)
    if m.variance == "contravariant":
        sharp = DualPairMorphism(src_d.pair, dst_d.pair,
                                 m.sharp.matrix_dual, m.sharp.matrix)
        out = BundleMorphism(src_d, dst_d, m.f_flat, sharp, "covariant")
    else:
        sharp = DualPairMorphism(dst_d.pair, src_d.pair,
                                 m.sharp.matrix_dual, m.sharp.matrix)
        out = BundleMorphism(src_d, dst_d, m.f_flat, sharp, "contravariant")
    assert sharp.adjoint_identity_witness() is None
    return out


def morphisms_equal(a: BundleMorphism, b: BundleMorphism) -> bool:
    return (a.src == b.src and a.dst == b.dst and a.f_flat == b.f_flat
            and a.variance == b.variance
            and a.sharp.matrix == b.sharp.matrix)
