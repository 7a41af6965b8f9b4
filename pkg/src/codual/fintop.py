"""Finite topological spaces with exact bitset subsets.

Points of a space are ``0..n-1`` and every subset is a Python int used as a
bitmask, so set equality is integer equality.  Opens are stored as a frozen,
sorted tuple of masks; the open and closed set lattices are `FinLattice`
instances whose element ids index those tuples.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .lattice import FinLattice, LatticeError, MonotoneMap

__all__ = [
    "FinTop",
    "TopologyError",
    "generate_topology",
    "sierpinski",
    "discrete",
    "indiscrete",
    "all_topologies",
    "sigma_space",
    "iota_space",
    "homeomorphism",
]


class TopologyError(ValueError):
    pass


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class FinTop:
    """A finite topological space (immutable)."""

    def __init__(self, n_points: int, opens: Iterable[int], *,
                 validate: bool = True):
        self.n_points = n_points
        self.full = (1 << n_points) - 1
        self.opens = tuple(sorted(set(int(u) for u in opens)))
        if validate:
            self._validate()

    def _validate(self) -> None:
        opens = set(self.opens)
        if 0 not in opens or self.full not in opens:
            raise TopologyError("opens must contain empty set and full set")
        for u in opens:
            if u & ~self.full:
                raise TopologyError(f"open {u:b} is not a subset of the points")
            for v in opens:
                if u & v not in opens:
                    raise TopologyError(
                        f"not closed under intersection: {u:b}, {v:b}")
                if u | v not in opens:
                    raise TopologyError(f"not closed under union: {u:b}, {v:b}")

    # -- basic operators ----------------------------------------------------

    @cached_property
    def _opens_index(self) -> dict[int, int]:
        return {u: i for i, u in enumerate(self.opens)}

    @cached_property
    def closeds(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~u for u in self.opens))

    @cached_property
    def _closeds_index(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.closeds)}

    def is_open(self, s: int) -> bool:
        return s in self._opens_index

    def is_closed(self, s: int) -> bool:
        return s in self._closeds_index

    def _check_subset(self, s: int) -> int:
        if s & ~self.full:
            raise TopologyError(f"{s:b} is not a subset of the points")
        return s

    def interior(self, s: int) -> int:
        s = self._check_subset(s)
        out = 0
        for u in self.opens:
            if u & ~s == 0:
                out |= u
        return out

    def closure(self, s: int) -> int:
        return self.full & ~self.interior(self.full & ~s)

    def closure_point(self, x: int) -> int:
        return self.closure(1 << x)

    # -- soberification -----------------------------------------------------

    def sob_point(self, x: int) -> int:
        """X minus the closure of {x}: a prime element of the open lattice."""
        if not 0 <= x < self.n_points:
            raise TopologyError(f"unknown point {x}")
        return self.full & ~self.closure_point(x)

    def sob_closed(self, x: int) -> int:
        """Closure of {x}: an irreducible element of the closed lattice."""
        if not 0 <= x < self.n_points:
            raise TopologyError(f"unknown point {x}")
        return self.closure_point(x)

    def is_t0(self) -> bool:
        sobs = {self.sob_point(x) for x in range(self.n_points)}
        return len(sobs) == self.n_points

    def is_sober(self) -> bool:
        """True iff x -> X∖cl{x} is a bijection onto the prime opens."""
        sobs = {self.sob_point(x) for x in range(self.n_points)}
        if len(sobs) != self.n_points:
            return False
        lat = self.open_lattice
        return sobs == {self.opens[p] for p in lat.primes}

    # -- lattices of opens and closeds ---------------------------------------

    @cached_property
    def open_lattice(self) -> FinLattice:
        """Opens under inclusion: joins are unions, meets intersections."""
        return _subset_family_lattice(self.opens, self._opens_index)

    @cached_property
    def closed_lattice(self) -> FinLattice:
        """Closeds under inclusion: meets are intersections, joins unions
        (the closure of a finite union of closed sets is the union)."""
        return _subset_family_lattice(self.closeds, self._closeds_index)

    def open_id(self, u: int) -> int:
        try:
            return self._opens_index[u]
        except KeyError:
            raise TopologyError(f"{u:b} is not an open set") from None

    def closed_id(self, c: int) -> int:
        try:
            return self._closeds_index[c]
        except KeyError:
            raise TopologyError(f"{c:b} is not a closed set") from None

    @cached_property
    def irreducible_closeds(self) -> tuple[int, ...]:
        """Irreducible closed sets, via the closed lattice.

        In a finite space these are exactly the point closures.
        """
        lat = self.closed_lattice
        return tuple(self.closeds[c] for c in lat.irreducibles)

    def specialization_leq(self, x: int, y: int) -> bool:
        """x <= y iff x lies in the closure of {y}."""
        return bool(self.closure_point(y) & (1 << x))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FinTop(n={self.n_points}, opens={len(self.opens)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinTop) and self.n_points == other.n_points
                and self.opens == other.opens)

    def __hash__(self):
        if not hasattr(self, "_hash"):
            self._hash = hash((self.n_points, self.opens))
        return self._hash


def _subset_family_lattice(family: tuple[int, ...],
                           index: dict[int, int]) -> FinLattice:
    n = len(family)
    leq = np.zeros((n, n), dtype=bool)
    join = np.zeros((n, n), dtype=np.int32)
    meet = np.zeros((n, n), dtype=np.int32)
    for i, u in enumerate(family):
        for j, v in enumerate(family):
            leq[i, j] = (u & ~v) == 0
            join[i, j] = index[u | v]
            meet[i, j] = index[u & v]
    return FinLattice(leq, join, meet, validate=False)


def is_continuous(f: Sequence[int], src: "FinTop", dst: "FinTop") -> bool:
    """True iff the preimage of every open set is open."""
    if len(f) != src.n_points:
        raise TopologyError("map must be total on the points")
    for y in f:
        if not 0 <= y < dst.n_points:
            raise TopologyError(f"map value {y} is not a point of the codomain")
    return all(src.is_open(preimage_mask(f, u)) for u in dst.opens)


def preimage_mask(f: Sequence[int], s: int) -> int:
    return mask_of(x for x, y in enumerate(f) if s & (1 << y))


def image_mask(f: Sequence[int], s: int) -> int:
    return mask_of(f[x] for x in points_of(s))


def generate_topology(n_points: int, subbasis: Iterable[int]) -> FinTop:
    """Smallest topology containing the subbasis.

    Closes under finite intersections first, then arbitrary unions.
    """
    full = (1 << n_points) - 1
    sub = []
    for s in subbasis:
        if s & ~full:
            raise TopologyError(f"subbasis member {s:b} is not a subset")
        sub.append(int(s))
    basis = {full}
    for s in sub:
        basis |= {s & b for b in basis}
    opens = {0}
    frontier = set(basis)
    while frontier:
        new = set()
        for b in basis:
            for u in frontier:
                v = u | b
                if v not in opens and v not in frontier:
                    new.add(v)
        opens |= frontier
        frontier = new
    return FinTop(n_points, opens, validate=False)


def sierpinski() -> FinTop:
    """Points {0, 1} with {1} open: 0 is the closed point."""
    return FinTop(2, (0b00, 0b10, 0b11))


def discrete(n: int) -> FinTop:
    return FinTop(n, range(1 << n), validate=False)


def indiscrete(n: int) -> FinTop:
    return FinTop(n, (0, (1 << n) - 1))


def all_topologies(n: int) -> list[FinTop]:
    """All topologies on n labeled points (exhaustive; n <= 4 intended)."""
    if n > 4:
        raise TopologyError("exhaustive topology enumeration is capped at 4 points")
    full = (1 << n) - 1
    subsets = [s for s in range(1, full)]
    out = []
    for bits in range(1 << len(subsets)):
        fam = {0, full}
        for i, s in enumerate(subsets):
            if bits & (1 << i):
                fam.add(s)
        if _is_topology(fam):
            out.append(FinTop(n, fam, validate=False))
    return out


def _is_topology(fam: set[int]) -> bool:
    for u in fam:
        for v in fam:
            if (u & v) not in fam or (u | v) not in fam:
                return False
    return True


# -- point spaces of locales and colocales -----------------------------------

def sigma_space(lat: FinLattice, *, require_locale: bool = True) -> FinTop:
    """The space of primes of a locale, with opens U_a = {p : a not<= p}.

    Point i is ``lat.primes[i]``.
    """
    if require_locale:
        w = lat.distributivity_witness()
        if w is not None:
            raise LatticeError(f"not a locale: distributivity fails at {w}")
    pr = lat.primes
    pos = {p: i for i, p in enumerate(pr)}
    opens = set()
    for a in range(lat.n):
        opens.add(mask_of(pos[p] for p in pr if not lat.leq(a, p)))
    return FinTop(len(pr), opens, validate=False)


def sigma_open(lat: FinLattice, a: int) -> int:
    """U_a as a bitmask over the points of ``sigma_space(lat)``."""
    pr = lat.primes
    return mask_of(i for i, p in enumerate(pr) if not lat.leq(a, p))


def iota_space(lat: FinLattice, *, require_colocale: bool = True) -> FinTop:
    """The space of irreducibles of a colocale, with closeds
    C_a = {c : c <= a}.  Point i is ``lat.irreducibles[i]``.

    Coincides with ``sigma_space(lat.opposite())`` with complemented opens.
    """
    if require_colocale:
        w = lat.opposite().distributivity_witness()
        if w is not None:
            raise LatticeError(f"not a colocale: dual distributivity fails at {w}")
    irr = lat.irreducibles
    pos = {c: i for i, c in enumerate(irr)}
    full = (1 << len(irr)) - 1
    opens = set()
    for a in range(lat.n):
        c_a = mask_of(pos[c] for c in irr if lat.leq(c, a))
        opens.add(full & ~c_a)
    return FinTop(len(irr), opens, validate=False)


def iota_closed(lat: FinLattice, a: int) -> int:
    """C_a as a bitmask over the points of ``iota_space(lat)``."""
    irr = lat.irreducibles
    return mask_of(i for i, c in enumerate(irr) if lat.leq(c, a))


def open_lattice_map(f: Sequence[int], src: FinTop, dst: FinTop) -> MonotoneMap:
    """The inverse image frame homomorphism f^{-1}: Omega(dst) -> Omega(src)."""
    table = [src.open_id(preimage_mask(f, u)) for u in dst.opens]
    return MonotoneMap(dst.open_lattice, src.open_lattice, table, validate=False)


def closed_lattice_map(f: Sequence[int], src: FinTop, dst: FinTop) -> MonotoneMap:
    """The inverse image coframe homomorphism f^{-1}: C(dst) -> C(src)."""
    table = [src.closed_id(preimage_mask(f, c)) for c in dst.closeds]
    return MonotoneMap(dst.closed_lattice, src.closed_lattice, table,
                       validate=False)


def homeomorphism(a: FinTop, b: FinTop) -> tuple[int, ...] | None:
    """Some homeomorphism a -> b as a point table, or None.

    Exhaustive search over bijections, pruned by matching sizes of minimal
    open neighbourhoods; intended for the small spaces of the suite.
    """
    if a.n_points != b.n_points or len(a.opens) != len(b.opens):
        return None

    def min_nbhd(t: FinTop, x: int) -> int:
        m = t.full
        for u in t.opens:
            if u & (1 << x):
                m &= u
        return m

    sig_a = [bin(min_nbhd(a, x)).count("1") for x in range(a.n_points)]
    sig_b = [bin(min_nbhd(b, y)).count("1") for y in range(b.n_points)]

    used = [False] * b.n_points
    table = [-1] * a.n_points

    def extend(x: int):
        if x == a.n_points:
            fwd = all(b.is_open(image_mask(table, u)) for u in a.opens)
            return fwd and is_continuous(table, a, b)
        for y in range(b.n_points):
            if not used[y] and sig_a[x] == sig_b[y]:
                table[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
        return False

    if extend(0):
        return tuple(table)
    return None
