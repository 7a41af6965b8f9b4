"""The fixed bundle fixtures and morphism enumeration used by the
verification harness and the test-suite.

The six fixtures cover the classification lattice: the running bundle R
(cospectral, no open support), its codual (open support, not cospectral),
full and zero point bundles, a discrete-base bundle (everything holds) and
a constant bundle over the non-sober indiscrete base.
"""

from __future__ import annotations

from itertools import product

from .bundles import Bundle, BundleMorphism, check_morphism
from .fintop import FinTop, indiscrete, is_continuous, sierpinski
from .gflinalg import DualPair, full_subspace, span, sub_lattice, zero_subspace

__all__ = ["standard_pair", "running_bundle", "running_codual",
           "fixture_bundles", "all_point_maps", "all_matrices",
           "valid_fixture_morphisms", "no_adjoint_bundle"]


def standard_pair() -> DualPair:
    return DualPair.standard(2, 2)


def running_bundle() -> Bundle:
    """R: Sierpinski base (x closed, y open), kappa(x) = <(1,0)>,
    kappa(y) = everything."""
    pair = standard_pair()
    return Bundle(sierpinski(), pair,
                  (span(2, 2, [(1, 0)]), full_subspace(2, 2)))


def running_codual() -> Bundle:
    from .bundles import codual
    return codual(running_bundle())


def no_adjoint_bundle() -> Bundle:
    """Indiscrete 2-point base with two distinct lines: its support map
    preserves no joins, so the restriction adjunction does not exist."""
    pair = standard_pair()
    return Bundle(indiscrete(2), pair,
                  (span(2, 2, [(1, 0)]), span(2, 2, [(0, 1)])))


def fixture_bundles() -> dict[str, Bundle]:
    pair = standard_pair()
    point = FinTop(1, (0, 1))
    full, zero = full_subspace(2, 2), zero_subspace(2, 2)
    line1, line2 = span(2, 2, [(1, 0)]), span(2, 2, [(0, 1)])
    return {
        "running": running_bundle(),
        "running_codual": running_codual(),
        "point_full": Bundle(point, pair, (full,)),
        "point_zero": Bundle(point, pair, (zero,)),
        "discrete_lines": Bundle(FinTop(2, range(4), validate=False), pair,
                                 (line1, line2)),
        "indiscrete_const": Bundle(indiscrete(2), pair, (line1, line1)),
    }


def all_point_maps(src: FinTop, dst: FinTop):
    """All continuous maps src -> dst."""
    for f in product(range(dst.n_points), repeat=src.n_points):
        if is_continuous(f, src, dst):
            yield f


def all_matrices(p: int, n: int):
    for flat in product(range(p), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def valid_fixture_morphisms(bundles: dict[str, Bundle] | None = None
                            ) -> list[tuple[str, str, str, BundleMorphism]]:
    """Every valid morphism between fixture bundles, both variances.

    Returns (src_name, dst_name, variance, morphism) tuples; the
    enumeration is exhaustive over continuous point maps and all sharp
    matrices.
    """
    bundles = bundles or fixture_bundles()
    out = []
    mats = list(all_matrices(2, 2))
    for sname, src in bundles.items():
        for dname, dst in bundles.items():
            for flat in all_point_maps(src.base, dst.base):
                for mat in mats:
                    for variance in ("contravariant", "covariant"):
                        m = BundleMorphism.make(src, dst, flat, mat,
                                                variance, check=False)
                        if check_morphism(m).valid:
                            out.append((sname, dname, variance, m))
    return out
