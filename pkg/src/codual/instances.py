"""Instance files: a JSON schema describing one bundle plus optional named
endo-morphism candidates, with field/topology/vector validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bundles import Bundle, BundleMorphism
from .fintop import FinTop, mask_of
from .gflinalg import DualPair, GFError, Subspace, span
from .lattice import LatticeError

__all__ = ["Instance", "InstanceError", "parse_instance", "instance_to_json",
           "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


class InstanceError(ValueError):
    """Invalid instance file; the message names the offending field."""


@dataclass
class Instance:
    name: str
    bundle: Bundle
    point_names: tuple[str, ...]
    morphisms: dict[str, BundleMorphism] = field(default_factory=dict)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InstanceError(msg)


def parse_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceError(f"cannot read {path}: {e}") from e
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
    return parse_instance_dict(doc, name=path.stem)


def parse_instance_dict(doc: dict, name: str = "instance") -> Instance:
    _require(isinstance(doc, dict), "instance must be a JSON object")
    schema = doc.get("schema")
    _require(schema == SCHEMA_VERSION,
             f"field 'schema': expected {SCHEMA_VERSION}, got {schema!r}")
    name = doc.get("name", name)

    fdict = doc.get("field")
    _require(isinstance(fdict, dict) and "p" in fdict,
             "field 'field': expected an object with key 'p'")
    p = fdict["p"]
    _require(isinstance(p, int) and p >= 2
             and all(p % d for d in range(2, int(p ** 0.5) + 1)),
             "field 'field.p': p must be prime")

    dp = doc.get("dual_pair")
    _require(isinstance(dp, dict) and "n" in dp,
             "field 'dual_pair': expected an object with key 'n'")
    n = dp["n"]
    _require(isinstance(n, int) and n >= 1, "field 'dual_pair.n': bad dimension")
    pairing = dp.get("pairing",
                     [[int(i == j) for j in range(n)] for i in range(n)])
    _require(isinstance(pairing, list) and len(pairing) == n
             and all(isinstance(r, list) and len(r) == n for r in pairing),
             "field 'dual_pair.pairing': must be an n x n matrix")
    for row in pairing:
        for v in row:
            _require(isinstance(v, int) and 0 <= v < p,
                     f"field 'dual_pair.pairing': entry {v!r} outside [0,{p})")
    try:
        pair = DualPair(p, n, tuple(tuple(r) for r in pairing))
    except GFError as e:
        raise InstanceError(f"field 'dual_pair.pairing': {e}") from e

    space = doc.get("space")
    _require(isinstance(space, dict), "field 'space': expected an object")
    pts = space.get("points")
    _require(isinstance(pts, list) and all(isinstance(q, str) for q in pts)
             and len(set(pts)) == len(pts),
             "field 'space.points': expected distinct point names")
    idx = {q: i for i, q in enumerate(pts)}
    opens_doc = space.get("opens")
    _require(isinstance(opens_doc, list), "field 'space.opens': expected a list")
    opens = set()
    for u in opens_doc:
        _require(isinstance(u, list), "field 'space.opens': each open is a list")
        for q in u:
            _require(q in idx, f"field 'space.opens': unknown point {q!r}")
        opens.add(mask_of(idx[q] for q in u))
    full = (1 << len(pts)) - 1
    _require(0 in opens and full in opens,
             "field 'space.opens': opens must contain empty set and full set")
    for u in opens:
        for v in opens:
            if u & v not in opens or u | v not in opens:
                raise InstanceError(
                    "field 'space.opens': not a topology; violating pair "
                    f"{_names(u, pts)} and {_names(v, pts)}")
    base = FinTop(len(pts), opens, validate=False)

    kdoc = doc.get("kappa")
    _require(isinstance(kdoc, dict), "field 'kappa': expected an object")
    _require(set(kdoc) == set(pts),
             "field 'kappa': must assign generators to every point")
    kappa = []
    for q in pts:
        gens = kdoc[q]
        _require(isinstance(gens, list), f"field 'kappa.{q}': expected a list")
        for vec in gens:
            _require(isinstance(vec, list) and len(vec) == n,
                     f"field 'kappa.{q}': vectors must have length {n}")
            for c in vec:
                _require(isinstance(c, int) and 0 <= c < p,
                         f"field 'kappa.{q}': coordinate {c!r} outside GF({p})")
        kappa.append(span(p, n, gens))
    bundle = Bundle(base, pair, tuple(kappa))

    morphisms: dict[str, BundleMorphism] = {}
    for mname, mdoc in (doc.get("morphisms") or {}).items():
        _require(isinstance(mdoc, dict),
                 f"field 'morphisms.{mname}': expected an object")
        fdoc = mdoc.get("f_flat")
        _require(isinstance(fdoc, dict) and set(fdoc) == set(pts),
                 f"field 'morphisms.{mname}.f_flat': must map every point")
        for q, r in fdoc.items():
            _require(r in idx,
                     f"field 'morphisms.{mname}.f_flat': unknown point {r!r}")
        flat = tuple(idx[fdoc[q]] for q in pts)
        mat = mdoc.get("f_sharp")
        _require(isinstance(mat, list) and len(mat) == n
                 and all(isinstance(r, list) and len(r) == n for r in mat),
                 f"field 'morphisms.{mname}.f_sharp': must be an n x n matrix")
        for row in mat:
            for v in row:
                _require(isinstance(v, int) and 0 <= v < p,
                         f"field 'morphisms.{mname}.f_sharp': entry outside GF({p})")
        variance = mdoc.get("variance", "contravariant")
        _require(variance in ("contravariant", "covariant"),
                 f"field 'morphisms.{mname}.variance': bad value {variance!r}")
        morphisms[mname] = BundleMorphism.make(
            bundle, bundle, flat, tuple(tuple(r) for r in mat), variance,
            check=False)
    return Instance(name, bundle, tuple(pts), morphisms)


def _names(mask: int, pts: list[str]) -> list[str]:
    return [pts[i] for i in range(len(pts)) if mask & (1 << i)]


def instance_to_json(inst: Instance) -> dict:
    """Serialize back to the schema (used by the dualize command)."""
    b = inst.bundle
    pts = list(inst.point_names)
    return {
        "schema": SCHEMA_VERSION,
        "name": inst.name,
        "field": {"p": b.pair.p},
        "dual_pair": {"n": b.pair.n,
                      "pairing": [list(r) for r in b.pair.pairing]},
        "space": {"points": pts,
                  "opens": [_names(u, pts) for u in b.base.opens]},
        "kappa": {pts[x]: [list(r) for r in b.kappa[x].basis]
                  for x in range(b.base.n_points)},
    }
