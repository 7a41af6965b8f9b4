"""The exhaustive and randomized verification harness.

Enumerates every bundle over every topology on small labeled bases with
every kernel map into Sub(GF(2)^2) and checks the full law battery on each
instance; morphism-level laws run over the fixture set.  All counts and
verdicts are deterministic; the numeric batch is seeded.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from . import localic, subtop
from .bundles import (Bundle, check_morphism, classify, codual,
                      corestriction_map, dualize_morphism, has_open_support,
                      is_cospectral, is_spectral, is_spectral_pseudo,
                      open_support_via_sigma, restriction_map, support_map)
from .fintop import FinTop, all_topologies, homeomorphism, points_of
from .fixtures import (fixture_bundles, no_adjoint_bundle, standard_pair,
                       valid_fixture_morphisms)
from .gflinalg import (DualPair, count_subspaces, gaussian_binomial,
                       sub_lattice)
from .lattice import AdjointDoesNotExist, diamond_m3
from .numeric import run_numeric_suite
from .report import Report

__all__ = ["bundle_suite", "run_instance_checks", "run_morphism_checks",
           "run_invalid_morphism_checks", "run_topology_facts",
           "run_negative_controls", "run_selftest", "SuiteTally"]


def bundle_suite(max_points: int = 3, p: int = 2, n: int = 2):
    """Every bundle on every labeled topology with <= max_points points."""
    pair = DualPair.standard(p, n)
    lat = sub_lattice(p, n)
    for npts in range(0, max_points + 1):
        for topo in all_topologies(npts):
            for ids in product(range(len(lat)), repeat=npts):
                yield Bundle(topo, pair,
                             tuple(lat.subspaces[i] for i in ids))


@dataclass
class SuiteTally:
    instances: int = 0
    sigma_adjoint_ok: int = 0
    sigma_no_adjoint: int = 0
    universal_seconds: float = 0.0
    failures: list[tuple[str, str]] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    def bump(self, name: str) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1

    def fail(self, name: str, detail: str) -> None:
        if len(self.failures) < 32:
            self.failures.append((name, detail))
        self.bump("FAIL:" + name)

    @property
    def ok(self) -> bool:
        return not self.failures


def _bundle_tag(b: Bundle) -> str:
    return (f"opens={sorted(b.base.opens)} "
            f"kappa={[v.basis for v in b.kappa]}")


def run_instance_checks(b: Bundle, tally: SuiteTally, *,
                        universal: bool = True) -> None:
    """The per-instance law battery (acceptance criteria 1, 2, 3 and 6)."""
    tag = _bundle_tag(b)
    tally.instances += 1
    cls = classify(b)

    # --- criterion 1: adjunction pairs -------------------------------------
    sigma = support_map(b)
    gamma = restriction_map(b)          # span formula == adjoint candidate
    witness = sigma.sup_hom_witness()
    if witness is None:
        tally.sigma_adjoint_ok += 1
        if sigma.adjunction_witness(gamma) is not None:
            tally.fail("sigma_adjunction", tag)
        try:
            if sigma.right_adjoint().table != gamma.table:
                tally.fail("sigma_adjoint_formula", tag)
        except AdjointDoesNotExist:
            tally.fail("sigma_adjoint_exists", tag)
    else:
        tally.sigma_no_adjoint += 1
        # no monotone right adjoint can exist; the biconditional must fail
        if sigma.adjunction_witness(gamma) is None:
            tally.fail("sigma_nonadjoint_witness", tag)
        if cls.open_support:
            # open support guarantees sigma = kappa-preimage, a sup-hom
            tally.fail("sigma_sup_hom_under_open_support", tag)

    gamma_c = corestriction_map(b)
    if not gamma_c.is_sup_hom():
        tally.fail("corestriction_sup_hom", tag)
    sigma_c = gamma_c.right_adjoint()
    if gamma_c.adjunction_witness(sigma_c) is not None:
        tally.fail("cosupport_adjunction", tag)
    if not sigma_c.is_inf_hom():
        tally.fail("cosupport_inf_hom", tag)
    if cls.cospectral:
        formula = [b.base.closed_id(_preimage_downset(b, v))
                   for v in range(len(b.sublat))]
        if list(sigma_c.table) != formula:
            tally.fail("cosupport_formula", tag)

    # open support property iff sigma is kappa-preimage of U_{V,1}
    if has_open_support(b)[0] != open_support_via_sigma(b)[0]:
        tally.fail("open_support_iff", tag)

    # dual bundle lemma, both directions (pseudo-spectral = open support)
    bd = codual(b)
    if cls.spectral_pseudo != is_cospectral(bd):
        tally.fail("dual_spectral_to_cospectral", tag)
    if cls.cospectral != is_spectral_pseudo(bd):
        tally.fail("dual_cospectral_to_spectral", tag)

    # kernel factorization through irreducible closures (cospectral case)
    if cls.cospectral:
        for x in range(b.base.n_points):
            cl = b.base.closed_id(b.base.closure_point(x))
            if gamma_c(cl) != b.kappa_ids[x]:
                tally.fail("kernel_via_sob_closed", tag)
                break
        # specialization monotonicity of the kernel map
        for x in range(b.base.n_points):
            for y in points_of(b.base.closure_point(x)):
                if not b.kappa[y].leq(b.kappa[x]):
                    tally.fail("kernel_specialization", tag)

    # --- criterion 2: triangle identities ----------------------------------
    omega_ok = localic.omega_defined(b)
    if cls.spectral_pseudo and not omega_ok:
        tally.fail("omega_defined_on_spectral", tag)
    for variance in ("contravariant", "covariant"):
        tri = localic.verify_triangles(b, variance)
        if cls.spectral_pseudo and "omega_triangle" not in tri:
            tally.fail("omega_triangle_missing", tag)
        for name, ok in tri.items():
            if not ok:
                tally.fail(f"triangle_{name}_{variance}", tag)

    # unit/counit morphism validity at the scopes where the theory claims it
    sob_c_cov = localic.sob_closed_morphism(b, "covariant")
    if not check_morphism(sob_c_cov).valid:
        tally.fail("sob_closed_covariant_valid", tag)
    if cls.cospectral:
        v = check_morphism(localic.sob_closed_morphism(b, "contravariant"))
        if not (v.valid and v.strict):
            tally.fail("sob_closed_strict", tag)
        if v.iso != b.base.is_sober():
            tally.fail("sob_closed_iso_iff_sober", tag)
    if omega_ok:
        sob_cov = localic.soberification_morphism(b, "covariant")
        if not check_morphism(sob_cov).valid:
            tally.fail("sob_covariant_valid", tag)
    if cls.spectral_pseudo:
        if not check_morphism(
                localic.soberification_morphism(b, "contravariant")).valid:
            tally.fail("sob_contravariant_valid", tag)
    objs = [localic.cfun(b)]
    if omega_ok:
        objs.append(localic.omega(b))
    for obj in objs:
        spat = localic.spatialization_morphism(obj)
        if not spat.is_ident_morphism():
            tally.fail("spatialization_ident", tag)

    # --- criterion 3: comparison and codual isomorphisms --------------------
    if cls.spectral:
        cmp_res = localic.complement_comparison(b)
        if not all(cmp_res.values()):
            tally.fail("complement_comparison", tag + f" {cmp_res}")
        # kernel constant on irreducible closed sets, equal to the
        # spectral kernel at the complement
        gam = restriction_map(b)
        for c in b.base.irreducible_closeds:
            vals = {b.kappa_ids[x] for x in points_of(c)}
            comp = b.base.open_id(b.base.full & ~c)
            if len(vals) != 1 or vals != {gam(comp)}:
                tally.fail("kernel_constant_on_irreducible", tag)
    swaps = localic.codual_object_swap(b)
    for name, ok in swaps.items():
        if not ok:
            tally.fail(name, tag)
    if not localic.codual_point_swap_colocale(localic.cfun(b)):
        tally.fail("sigma_of_codual_colocale", tag)
    # a locale available for every instance: the codual of C(b)
    if not localic.codual_point_swap_locale(
            localic.codual_swap_colocale(localic.cfun(b))):
        tally.fail("iota_of_codual_locale", tag)
    if omega_ok and not localic.codual_point_swap_locale(localic.omega(b)):
        tally.fail("iota_of_codual_omega", tag)

    # iota output is cospectral; sigma output has the open support property
    if not is_cospectral(localic.iota(localic.cfun(b))):
        tally.fail("iota_output_cospectral", tag)
    if omega_ok and not has_open_support(
            localic.sigma(localic.omega(b)))[0]:
        tally.fail("sigma_output_open_support", tag)

    # --- criterion 6: universal bundle --------------------------------------
    if universal:
        t0 = time.perf_counter()
        res = localic.verify_universal(b)
        tally.universal_seconds += time.perf_counter() - t0
        if not res["ok"]:
            tally.fail("universal_factorization", tag + f" {res}")


def _preimage_downset(b: Bundle, v: int) -> int:
    from .fintop import mask_of
    leq = b.sublat.lattice.leq_mat
    return mask_of(x for x in range(b.base.n_points)
                   if leq[b.kappa_ids[x], v])


def run_morphism_checks(tally: SuiteTally) -> int:
    """Morphism-level laws over all valid fixture morphisms."""
    morphisms = valid_fixture_morphisms()
    for sname, dname, variance, m in morphisms:
        tag = f"{sname}->{dname} {variance} flat={m.f_flat} mat={m.sharp.matrix}"
        md = dualize_morphism(m)
        if not check_morphism(md).valid:
            tally.fail("dualized_morphism_valid", tag)
        mdd = dualize_morphism(md)
        if (mdd.sharp.matrix != m.sharp.matrix
                or mdd.f_flat != m.f_flat or mdd.variance != m.variance):
            tally.fail("dualize_involution", tag)

        if variance == "contravariant":
            if not localic.verify_unit_naturality(m, "ci"):
                tally.fail("unit_naturality_ci", tag)
            if is_spectral_pseudo(m.src) and is_spectral_pseudo(m.dst):
                if not localic.verify_unit_naturality(m, "os"):
                    tally.fail("unit_naturality_os", tag)
        else:
            if not localic.verify_unit_naturality(m, "ci"):
                tally.fail("unit_naturality_ci_cov", tag)
            if not localic.verify_unit_naturality(m, "os"):
                tally.fail("unit_naturality_os_cov", tag)

        # C is a functor on covariant morphisms unconditionally, and on
        # contravariant ones between cospectral bundles (where the
        # pointwise condition is equivalent to the colocale inequality).
        cospectral_pair = is_cospectral(m.src) and is_cospectral(m.dst)
        cm = localic.cfun_on_morphism(m)
        if variance == "covariant" or cospectral_pair:
            if not cm.is_valid():
                tally.fail("cfun_functoriality", tag)
            if not localic.verify_counit_naturality(cm):
                tally.fail("counit_naturality_c", tag)
            im = localic.iota_on_morphism(cm)
            if not check_morphism(im).valid:
                tally.fail("iota_functoriality", tag)
            for name, ok in localic.duality_naturality_localic(cm).items():
                if not ok:
                    tally.fail("t612_localic_" + name, tag)

        for name, ok in localic.duality_naturality_bundle(m).items():
            if not ok:
                tally.fail("t612_" + name, tag)
    return len(morphisms)


def run_invalid_morphism_checks(tally: SuiteTally) -> int:
    """The colocale-inequality equivalence on invalid candidates: a failed
    pointwise condition must fail the lattice inequality too (between
    cospectral bundles)."""
    from .bundles import BundleMorphism
    from .fixtures import all_matrices, all_point_maps
    bundles = {k: v for k, v in fixture_bundles().items()
               if is_cospectral(v)}
    checked = 0
    for sname, src in bundles.items():
        for dname, dst in bundles.items():
            for flat in all_point_maps(src.base, dst.base):
                for mat in all_matrices(2, 2):
                    m = BundleMorphism.make(src, dst, flat, mat,
                                            "contravariant", check=False)
                    pointwise = check_morphism(m).valid
                    lattice_side = localic.cfun_on_morphism(m).is_valid()
                    checked += 1
                    if pointwise != lattice_side:
                        tally.fail("morphism_iff_colocale",
                                   f"{sname}->{dname} {flat} {mat}")
    return checked


def run_topology_facts(tally: SuiteTally) -> None:
    """Acceptance criteria 4 and 5: subspace-lattice topologies and counts."""
    for (p, n) in ((2, 2), (2, 3), (3, 2)):
        tag = f"GF({p})^{n}"
        total = count_subspaces(p, n)
        if len(sub_lattice(p, n)) != total:
            tally.fail("sublattice_count", tag)
        if total != sum(gaussian_binomial(n, k, p) for k in range(n + 1)):
            tally.fail("gaussian_binomial", tag)

        cos = subtop.cos_topology(p, n)
        dcos = subtop.dual_cos_topology(p, n)
        lv = subtop.lower_vietoris_discrete(p, n)
        if dcos.space.opens != lv.space.opens:
            tally.fail("dual_cos_equals_lower_vietoris", tag)
        if not cos.space.is_sober():
            tally.fail("cos_sober", tag)
        if not dcos.space.is_sober():
            tally.fail("dual_cos_sober", tag)
        lat = cos.lattice
        for v in range(len(lat)):
            from .fintop import mask_of
            if mask_of(subtop.sob_cos(lat, v)) != cos.space.sob_point(v):
                tally.fail("sob_cos_formula", tag)
                break
            if mask_of(subtop.sob_dual_cos(lat, v)) != dcos.space.sob_point(v):
                tally.fail("sob_dual_cos_formula", tag)
                break

        pair = DualPair.standard(p, n)
        fmap = subtop.annihilator_point_map(pair, lat, direction_f=True)
        gmap = subtop.annihilator_point_map(pair, lat, direction_f=False)
        if not subtop.is_homeomorphism_pair(fmap, gmap, cos.space, dcos.space):
            tally.fail("annihilator_homeo_cos_to_dual", tag)
        if not subtop.is_homeomorphism_pair(fmap, gmap, dcos.space, cos.space):
            tally.fail("annihilator_homeo_dual_to_cos", tag)


def run_negative_controls(tally: SuiteTally) -> None:
    """Acceptance criterion 8: documented failure witnesses."""
    fx = fixture_bundles()
    # non-sober base: soberification is not an iso
    ns = fx["indiscrete_const"]
    if ns.base.is_sober():
        tally.fail("negative_nonsober", "indiscrete base claims sober")
    v = check_morphism(localic.sob_closed_morphism(ns, "contravariant"))
    if not v.valid or v.iso:
        tally.fail("negative_sob_not_iso", str(v))

    # non-open-support bundle: the running example with its witness
    ok, witness = has_open_support(fx["running"])
    if ok or witness is None or witness[0] != (0, 1):
        tally.fail("negative_open_support", str(witness))

    # non-strict morphism: collapse onto the zero point bundle
    from .bundles import BundleMorphism
    col = BundleMorphism.make(fx["running"], fx["point_zero"], (0, 0),
                              ((1, 0), (0, 1)), "contravariant")
    cv = check_morphism(col)
    if not cv.valid or cv.strict:
        tally.fail("negative_nonstrict", str(cv))

    # non-distributive lattice rejected with a witness triple
    m3 = diamond_m3()
    if m3.is_locale() or m3.distributivity_witness() is None:
        tally.fail("negative_m3", "M3 accepted as locale")

    # support map without a right adjoint, with its witness
    nb = no_adjoint_bundle()
    w = support_map(nb).sup_hom_witness()
    if w is None:
        tally.fail("negative_no_adjoint", "unexpected sup-hom")


def run_selftest(max_points: int = 3, seed: int = 42, *,
                 numeric_trials: int = 200) -> Report:
    """The full battery; deterministic given (max_points, seed)."""
    report = Report(command="selftest", seed=seed)

    t0 = report.start()
    tally = SuiteTally()
    for b in bundle_suite(max_points):
        run_instance_checks(b, tally)
    report.add(f"exhaustive_suite[{tally.instances} instances; "
               f"adjoint {tally.sigma_adjoint_ok}/"
               f"no-adjoint {tally.sigma_no_adjoint}]",
               tally.ok, tally.failures or None, t0=t0)

    t0 = report.start()
    mtally = SuiteTally()
    n_m = run_morphism_checks(mtally)
    report.add(f"fixture_morphisms[{n_m} valid]", mtally.ok,
               mtally.failures or None, t0=t0)

    t0 = report.start()
    itally = SuiteTally()
    n_i = run_invalid_morphism_checks(itally)
    report.add(f"morphism_colocale_equivalence[{n_i} candidates]", itally.ok,
               itally.failures or None, t0=t0)

    t0 = report.start()
    ttally = SuiteTally()
    run_topology_facts(ttally)
    report.add("topology_facts", ttally.ok, ttally.failures or None, t0=t0)

    t0 = report.start()
    ntally = SuiteTally()
    run_negative_controls(ntally)
    report.add("negative_controls", ntally.ok, ntally.failures or None, t0=t0)

    t0 = report.start()
    num = run_numeric_suite(seed, trials=numeric_trials,
                            convexity_trials=numeric_trials * 5)
    report.add("numeric_lemmas", num.ok,
               None if num.ok else num.checks, t0=t0)
    return report
