"""Command-line interface: classify, dualize, functor application, law
verification, seeded numeric checks and the self-test harness.

Machine-readable JSON goes to stdout; a human summary (with timings) goes
to stderr.  Exit codes: 0 pass, 1 findings, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import localic
from .bundles import (check_morphism, classify, codual, has_open_support,
                      is_cospectral, is_spectral, support_map)
from .instances import Instance, InstanceError, instance_to_json, parse_instance
from .numeric import run_numeric_suite
from .report import Report
from .selftest import run_selftest

USAGE_EXIT = 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_EXIT if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="codual",
        description="Finite-model checker for quotient vector bundles, "
                    "linearized (co)locales and annihilator duality.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classification flags of a bundle")
    c.add_argument("path")
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("dualize", help="emit the codual bundle instance")
    d.add_argument("path")
    d.set_defaults(func=cmd_dualize)

    f = sub.add_parser("functor", help="apply a functor to the bundle")
    f.add_argument("which", choices=["omega", "sigma", "closed", "iota"])
    f.add_argument("path")
    f.set_defaults(func=cmd_functor)

    v = sub.add_parser("verify", help="verify a law battery on an instance")
    v.add_argument("which",
                   choices=["adjunction", "t412", "l69", "t612", "universal"])
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("numeric", help="seeded numeric lemma checks")
    n.add_argument("which",
                   choices=["hno11", "hno12", "dualdist", "convexity", "all"])
    n.add_argument("--seed", type=int, default=None)
    n.add_argument("--trials", type=int, default=1000)
    n.add_argument("--max-dim", type=int, default=8)
    n.set_defaults(func=cmd_numeric)

    s = sub.add_parser("selftest", help="exhaustive + randomized harness")
    s.add_argument("--exhaustive-max-points", type=int, default=3)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_selftest)
    return p


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("CODUAL_SEED")
    return int(env) if env else 42


def cmd_classify(args) -> int:
    inst = parse_instance(args.path)
    report = Report(command="classify", instance=inst.name)
    t0 = report.start()
    cls = classify(inst.bundle)
    report.add("classification", True, cls.as_dict(), t0=t0)
    ok, witness = has_open_support(inst.bundle)
    if not ok:
        report.add("open_support_witness", True,
                   {"vector": list(witness[0]), "raw_set": witness[1]})
    for name, m in inst.morphisms.items():
        v = check_morphism(m)
        report.add(f"morphism[{name}]", True,
                   {"valid": v.valid, "strict": v.strict, "iso": v.iso,
                    "witness": v.witness})
    return report.emit()


def cmd_dualize(args) -> int:
    inst = parse_instance(args.path)
    dual = codual(inst.bundle)
    out = instance_to_json(
        Instance(inst.name + "_codual", dual, inst.point_names))
    print(json.dumps(out, sort_keys=True, indent=2))
    cls = classify(dual).as_dict()
    print(f"dualize: emitted codual instance; classification {cls}",
          file=sys.stderr)
    return 0


def cmd_functor(args) -> int:
    inst = parse_instance(args.path)
    b = inst.bundle
    report = Report(command=f"functor {args.which}", instance=inst.name)
    t0 = report.start()
    pts = list(inst.point_names)
    if args.which in ("omega", "sigma"):
        if not localic.omega_defined(b):
            report.add("omega_defined", False,
                       "restriction map is not an inf-lattice homomorphism "
                       "(support map has no right adjoint)", t0=t0)
            return report.emit()
        loc = localic.omega(b)
        gamma = {_open_name(b, u, pts): _basis(loc, loc.gamma(i))
                 for i, u in enumerate(b.base.opens)}
        report.add("omega", True, {"gamma": gamma,
                                   "genuine": loc.is_genuine()}, t0=t0)
        if args.which == "sigma":
            out = localic.sigma(loc)
            report.add("sigma", True, _bundle_doc(out), t0=report.start())
    else:
        col = localic.cfun(b)
        gamma = {_closed_name(b, c, pts): _basis(col, col.gamma(i))
                 for i, c in enumerate(b.base.closeds)}
        report.add("closed", True, {"gamma_c": gamma,
                                    "genuine": col.is_genuine()}, t0=t0)
        if args.which == "iota":
            out = localic.iota(col)
            report.add("iota", True, _bundle_doc(out), t0=report.start())
    return report.emit()


def _open_name(b, mask, pts):
    return "{" + ",".join(pts[i] for i in range(len(pts))
                          if mask & (1 << i)) + "}"


def _closed_name(b, mask, pts):
    return _open_name(b, mask, pts)


def _basis(obj, sub_id):
    return [list(r) for r in obj.sublat.subspaces[sub_id].basis]


def _bundle_doc(b):
    return {
        "points": b.base.n_points,
        "opens": [u for u in b.base.opens],
        "kappa": [[list(r) for r in v.basis] for v in b.kappa],
        "classification": classify(b).as_dict(),
    }


def cmd_verify(args) -> int:
    inst = parse_instance(args.path)
    b = inst.bundle
    report = Report(command=f"verify {args.which}", instance=inst.name)
    morphs = list(inst.morphisms.items())
    if args.which == "adjunction":
        _verify_adjunction(report, b, morphs)
    elif args.which == "t412":
        t0 = report.start()
        if not is_spectral(b):
            report.add("comparison_iso", True,
                       "hypotheses not met: bundle is not spectral "
                       "(vacuously true)", skip=True, t0=t0)
        else:
            res = localic.complement_comparison(b)
            report.add("comparison_iso", res["iso"] and res["ident"], res,
                       t0=t0)
            report.add("soberification_triangle", res["triangle"])
    elif args.which == "l69":
        t0 = report.start()
        swaps = localic.codual_object_swap(b)
        if not swaps:
            report.add("object_swaps", True,
                       "bundle is neither cospectral nor open-support; "
                       "no object-level statement applies", skip=True, t0=t0)
        for name, ok in swaps.items():
            report.add(name, ok, t0=t0)
        report.add("sigma_of_codual_colocale",
                   localic.codual_point_swap_colocale(localic.cfun(b)))
        if localic.omega_defined(b):
            report.add("iota_of_codual_locale",
                       localic.codual_point_swap_locale(localic.omega(b)))
    elif args.which == "t612":
        t0 = report.start()
        if not morphs:
            from .bundles import identity_bundle_morphism
            morphs = [("identity", identity_bundle_morphism(b))]
        any_line = False
        for name, m in morphs:
            if not check_morphism(m).valid:
                report.add(f"naturality[{name}]", True,
                           "invalid morphism; skipped", skip=True)
                continue
            lines = localic.duality_naturality_bundle(m)
            for lname, ok in lines.items():
                any_line = True
                report.add(f"naturality[{name}].{lname}", ok, t0=t0)
        if not any_line:
            report.add("naturality", True,
                       "no applicable functor line for these endpoints",
                       skip=True, t0=t0)
    else:
        t0 = report.start()
        res = localic.verify_universal(b)
        report.add("factorization", res["identity"], res, t0=t0)
        report.add("uniqueness", res["unique"] and res["ok"], res)
    return report.emit()


def _verify_adjunction(report: Report, b, morphs) -> None:
    t0 = report.start()
    sigma = support_map(b)
    w = sigma.sup_hom_witness()
    if w is None:
        gamma = sigma.right_adjoint()
        report.add("support_adjunction",
                   sigma.adjunction_witness(gamma) is None, t0=t0)
    else:
        report.add("support_adjunction", True,
                   {"no_adjoint_witness": list(w)}, skip=True, t0=t0)
    t0 = report.start()
    from .bundles import corestriction_map
    gamma_c = corestriction_map(b)
    sigma_c = gamma_c.right_adjoint()
    report.add("cosupport_adjunction",
               gamma_c.adjunction_witness(sigma_c) is None, t0=t0)
    for variance in ("contravariant", "covariant"):
        t0 = report.start()
        tri = localic.verify_triangles(b, variance)
        for name, ok in tri.items():
            report.add(f"{name}_{variance}", ok, t0=t0)
    for name, m in morphs:
        if check_morphism(m).valid:
            report.add(f"unit_naturality_ci[{name}]",
                       localic.verify_unit_naturality(m, "ci"))


def cmd_numeric(args) -> int:
    seed = _seed(args)
    rep = run_numeric_suite(seed, trials=args.trials,
                            convexity_trials=max(args.trials, 10_000)
                            if args.which in ("convexity", "all") else 100,
                            max_dim=args.max_dim)
    names = {"hno11": "kernel_distance", "hno12": "norming_functional",
             "dualdist": "dual_distance", "convexity": "convexity"}
    report = Report(command=f"numeric {args.which}", seed=seed)
    for c in rep.checks:
        if args.which == "all" or c["name"] == names[args.which]:
            report.add(c["name"], c["verdict"] == "pass", c["detail"])
    return report.emit()


def cmd_selftest(args) -> int:
    seed = _seed(args)
    report = run_selftest(args.exhaustive_max_points, seed)
    return report.emit()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
