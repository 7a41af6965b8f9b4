"""Finite complete lattices, adjoint computation and locale/colocale laws.

Elements of a lattice are the dense integers ``0..n-1``.  A lattice is
immutable after construction: the order relation and the binary join/meet
tables are precomputed, read-only numpy arrays.  In a finite lattice with a
top and a bottom the binary tables determine all joins and meets, so every
"arbitrary join" below is a fold over the join table (empty join = bottom,
empty meet = top).
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FinLattice",
    "MonotoneMap",
    "LatticeError",
    "AdjointDoesNotExist",
    "identity_map",
    "compose",
]


class LatticeError(ValueError):
    """Structural or law violation in lattice data."""


class AdjointDoesNotExist(LatticeError):
    """Raised when an adjoint is requested for a map that has none.

    Carries a witness: a set of elements whose join (resp. meet) is not
    preserved, together with the two differing images.
    """

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class FinLattice:
    """A finite complete lattice given by its order and operation tables."""

    def __init__(self, leq: np.ndarray, join: np.ndarray, meet: np.ndarray, *,
                 validate: bool = True):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise LatticeError("leq must be a square boolean matrix")
        self.n = n
        self.leq_mat = _frozen(leq.copy())
        self.join_table = _frozen(np.asarray(join, dtype=np.int32).copy())
        self.meet_table = _frozen(np.asarray(meet, dtype=np.int32).copy())
        if self.join_table.shape != (n, n) or self.meet_table.shape != (n, n):
            raise LatticeError("operation tables must be n x n")
        if n == 0:
            raise LatticeError("a complete lattice is nonempty")
        if validate:
            self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_leq(cls, leq: np.ndarray) -> "FinLattice":
        """Build a lattice from its order alone, computing lub/glb tables.

        Fails with a witness pair if some pair has no least upper bound or
        no greatest lower bound.
        """
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        join = np.empty((n, n), dtype=np.int32)
        meet = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                join[i, j] = join[j, i] = cls._bound(leq, i, j, upper=True)
                meet[i, j] = meet[j, i] = cls._bound(leq, i, j, upper=False)
        return cls(leq, join, meet)

    @staticmethod
    def _bound(leq: np.ndarray, i: int, j: int, *, upper: bool) -> int:
        common = (leq[i] & leq[j]) if upper else (leq[:, i] & leq[:, j])
        cand = np.flatnonzero(common)
        if cand.size == 0:
            kind = "upper" if upper else "lower"
            raise LatticeError(f"elements {i},{j} have no common {kind} bound")
        sub = leq[np.ix_(cand, cand)]
        hits = np.flatnonzero(sub.all(axis=1) if upper else sub.all(axis=0))
        if hits.size != 1:
            kind = "least upper" if upper else "greatest lower"
            raise LatticeError(f"elements {i},{j} have no {kind} bound")
        return int(cand[hits[0]])

    def _validate(self) -> None:
        leq = self.leq_mat
        n = self.n
        if not leq.diagonal().all():
            raise LatticeError("leq is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise LatticeError("leq is not antisymmetric")
        closure = leq.astype(np.uint8)
        if ((closure @ closure > 0) & ~leq).any():
            raise LatticeError("leq is not transitive")
        if not leq[:, self.top].all():
            raise LatticeError("no top element")
        if not leq[self.bottom, :].all():
            raise LatticeError("no bottom element")
        # lub/glb laws, vectorized over pairs: x,y <= x∨y and for no z<x∨y
        # is z a common upper bound.  Spot equivalent: tables are bounds and
        # are minimal/maximal via the absorption identities.
        idx = np.arange(n)
        jt, mt = self.join_table, self.meet_table
        if not (leq[idx[:, None], jt].all() and leq[idx[None, :], jt].all()):
            raise LatticeError("join table does not give upper bounds")
        if not (leq[mt, idx[:, None]].all() and leq[mt, idx[None, :]].all()):
            raise LatticeError("meet table does not give lower bounds")
        # least/greatest: x<=z and y<=z implies (x∨y)<=z, checked as
        # join[x,y] is below every common upper bound via the order matrix.
        for x in range(n):
            ub = leq[x] & leq  # ub[y,z] iff x<=z and y<=z
            if not (ub <= leq[jt[x]]).all():
                raise LatticeError("join table not least upper bound")
            lb = leq[:, x] & leq.T
            if not (lb <= leq[:, mt[x]].T).all():
                raise LatticeError("meet table not greatest lower bound")

    # -- basic structure ---------------------------------------------------

    @cached_property
    def top(self) -> int:
        hits = np.flatnonzero(self.leq_mat.all(axis=0))
        if hits.size != 1:
            raise LatticeError("no unique top element")
        return int(hits[0])

    @cached_property
    def bottom(self) -> int:
        hits = np.flatnonzero(self.leq_mat.all(axis=1))
        if hits.size != 1:
            raise LatticeError("no unique bottom element")
        return int(hits[0])

    @property
    def elems(self) -> range:
        return range(self.n)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.leq_mat[a, b])

    def _check_elem(self, a: int) -> int:
        if not 0 <= a < self.n:
            raise LatticeError(f"unknown element id {a!r}")
        return int(a)

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[self._check_elem(a), self._check_elem(b)])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[self._check_elem(a), self._check_elem(b)])

    def join_of(self, elems: Iterable[int]) -> int:
        """Join of an arbitrary subset; the empty join is the bottom."""
        out = self.bottom
        for a in elems:
            out = self.join(out, a)
        return out

    def meet_of(self, elems: Iterable[int]) -> int:
        """Meet of an arbitrary subset; the empty meet is the top."""
        out = self.top
        for a in elems:
            out = self.meet(out, a)
        return out

    def opposite(self) -> "FinLattice":
        """Same elements with the reversed order (joins and meets swap)."""
        return FinLattice(self.leq_mat.T, self.meet_table, self.join_table,
                          validate=False)

    def upset(self, a: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.leq_mat[a])]

    def downset(self, a: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.leq_mat[:, a])]

    # -- primes and distributivity ----------------------------------------

    @cached_property
    def primes(self) -> tuple[int, ...]:
        """Elements p != 1 with a∧b <= p implying a <= p or b <= p.

        p is prime iff the complement of its down-set is closed under binary
        meets, iff the meet of all elements not below p is itself not below
        p (the complement of a down-set is up-closed, so closure under meets
        reduces to its global meet).
        """
        out = []
        for p in range(self.n):
            if p == self.top:
                continue
            rest = np.flatnonzero(~self.leq_mat[:, p])
            if rest.size == 0 or not self.leq_mat[self.meet_of(rest), p]:
                out.append(p)
        return tuple(out)

    @cached_property
    def irreducibles(self) -> tuple[int, ...]:
        """Elements c with c <= a∨b implying c <= a or c <= b (colocale
        reading); by definition the primes of the opposite lattice."""
        return self.opposite().primes

    def is_locale(self) -> bool:
        return self.distributivity_witness() is None

    def is_colocale(self) -> bool:
        return self.opposite().is_locale()

    def distributivity_witness(self) -> tuple[int, int, int] | None:
        """First triple violating a∧(b∨c)=(a∧b)∨(a∧c), or None.

        Binary distributivity suffices: finite joins reduce to binary ones
        by induction, and in a finite lattice every join is finite.
        """
        jt, mt = self.join_table, self.meet_table
        for a in range(self.n):
            lhs = mt[a][jt]                    # a∧(b∨c) for all b,c
            rhs = jt[np.ix_(mt[a], mt[a])]     # (a∧b)∨(a∧c)
            if lhs.shape != rhs.shape or not np.array_equal(lhs, rhs):
                bad = np.argwhere(lhs != rhs)
                b, c = (int(v) for v in bad[0])
                return (a, b, c)
        return None

    # -- misc ---------------------------------------------------------------

    def equals(self, other: "FinLattice") -> bool:
        return (self.n == other.n
                and np.array_equal(self.leq_mat, other.leq_mat))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FinLattice(n={self.n})"


class MonotoneMap:
    """An order-preserving map between finite lattices, held as a table."""

    def __init__(self, src: FinLattice, dst: FinLattice,
                 table: Sequence[int], *, validate: bool = True):
        self.src = src
        self.dst = dst
        self.table = tuple(int(v) for v in table)
        if len(self.table) != src.n:
            raise LatticeError("table must assign a value to every element")
        for v in self.table:
            dst._check_elem(v)
        if validate:
            w = self.monotonicity_witness()
            if w is not None:
                raise LatticeError(f"map is not monotone at pair {w}")

    def __call__(self, a: int) -> int:
        return self.table[self.src._check_elem(a)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonotoneMap)
                and self.table == other.table
                and self.src.equals(other.src)
                and self.dst.equals(other.dst))

    def __hash__(self):
        return hash(self.table)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MonotoneMap({self.table})"

    def monotonicity_witness(self) -> tuple[int, int] | None:
        t = np.asarray(self.table)
        bad = np.argwhere(self.src.leq_mat & ~self.dst.leq_mat[t[:, None], t[None, :]])
        if bad.size:
            return (int(bad[0][0]), int(bad[0][1]))
        return None

    # -- homomorphism laws --------------------------------------------------

    def sup_hom_witness(self):
        """None if the map preserves all joins, else a witness (S, f(∨S), ∨f(S)).

        Binary joins plus the empty join determine all joins in a finite
        lattice, so only pairs and the empty set are inspected.
        """
        if self.table[self.src.bottom] != self.dst.bottom:
            return ((), self.table[self.src.bottom], self.dst.bottom)
        t = np.asarray(self.table)
        lhs = t[self.src.join_table]
        rhs = self.dst.join_table[np.ix_(t, t)]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = (int(v) for v in bad[0])
            return ((x, y), int(lhs[x, y]), int(rhs[x, y]))
        return None

    def inf_hom_witness(self):
        """Dual of :meth:`sup_hom_witness` for meets (empty meet = top)."""
        if self.table[self.src.top] != self.dst.top:
            return ((), self.table[self.src.top], self.dst.top)
        t = np.asarray(self.table)
        lhs = t[self.src.meet_table]
        rhs = self.dst.meet_table[np.ix_(t, t)]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            x, y = (int(v) for v in bad[0])
            return ((x, y), int(lhs[x, y]), int(rhs[x, y]))
        return None

    def is_sup_hom(self) -> bool:
        return self.sup_hom_witness() is None

    def is_inf_hom(self) -> bool:
        return self.inf_hom_witness() is None

    def is_frame_hom(self) -> bool:
        """Preserves all joins, binary meets and the top element."""
        if not self.is_sup_hom() or self.table[self.src.top] != self.dst.top:
            return False
        t = np.asarray(self.table)
        return np.array_equal(t[self.src.meet_table],
                              self.dst.meet_table[np.ix_(t, t)])

    def is_coframe_hom(self) -> bool:
        """Preserves all meets, binary joins and the bottom element."""
        if not self.is_inf_hom() or self.table[self.src.bottom] != self.dst.bottom:
            return False
        t = np.asarray(self.table)
        return np.array_equal(t[self.src.join_table],
                              self.dst.join_table[np.ix_(t, t)])

    # -- adjoints -----------------------------------------------------------

    def right_adjoint(self) -> "MonotoneMap":
        """The map g with f(x) <= y iff x <= g(y), as g(y) = ∨{x : f(x)<=y}.

        Exists iff the map preserves all joins.
        """
        w = self.sup_hom_witness()
        if w is not None:
            raise AdjointDoesNotExist(
                "no right adjoint: map does not preserve joins", w)
        table = [self.src.join_of(
            int(x) for x in np.flatnonzero(self.dst.leq_mat[self.table, y]))
            for y in range(self.dst.n)]
        return MonotoneMap(self.dst, self.src, table, validate=False)

    def left_adjoint(self) -> "MonotoneMap":
        """The map f with f(x) <= y iff x <= g(y), as f(x) = ∧{y : x<=g(y)}.

        Exists iff the map preserves all meets.
        """
        w = self.inf_hom_witness()
        if w is not None:
            raise AdjointDoesNotExist(
                "no left adjoint: map does not preserve meets", w)
        table = [self.src.meet_of(
            int(y) for y in np.flatnonzero(self.dst.leq_mat[x, self.table]))
            for x in range(self.dst.n)]
        return MonotoneMap(self.dst, self.src, table, validate=False)

    def adjunction_witness(self, g: "MonotoneMap"):
        """None if f(x)<=y iff x<=g(y) for all x, y; else the first bad pair."""
        f_img = np.asarray(self.table)
        g_img = np.asarray(g.table)
        lhs = self.dst.leq_mat[f_img[:, None], np.arange(self.dst.n)[None, :]]
        rhs = self.src.leq_mat[np.arange(self.src.n)[:, None], g_img[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return (int(bad[0][0]), int(bad[0][1]))
        return None

    def as_opposite(self) -> "MonotoneMap":
        """The same table read as a map between the opposite lattices."""
        return MonotoneMap(self.src.opposite(), self.dst.opposite(),
                           self.table, validate=False)


def identity_map(lat: FinLattice) -> MonotoneMap:
    return MonotoneMap(lat, lat, range(lat.n), validate=False)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.dst is not g.src and not f.dst.equals(g.src):
        raise LatticeError("maps are not composable")
    return MonotoneMap(f.src, g.dst, [g.table[v] for v in f.table],
                       validate=False)


# -- convenience builders used across the test-suite -------------------------

def chain(n: int) -> FinLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    leq = np.triu(np.ones((n, n), dtype=bool))
    idx = np.arange(n)
    return FinLattice(leq, np.maximum.outer(idx, idx),
                      np.minimum.outer(idx, idx), validate=False)


def powerset_lattice(n_atoms: int) -> FinLattice:
    """The boolean lattice of subsets of an n-element set (ids = bitmasks)."""
    n = 1 << n_atoms
    masks = np.arange(n)
    leq = (masks[:, None] & ~masks[None, :]) == 0
    return FinLattice(leq, masks[:, None] | masks[None, :],
                      masks[:, None] & masks[None, :], validate=False)


def diamond_m3() -> FinLattice:
    """M3: bottom, three incomparable atoms, top.  Not distributive."""
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return FinLattice.from_leq(leq)
