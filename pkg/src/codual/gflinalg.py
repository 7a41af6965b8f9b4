"""Exact linear algebra over GF(p): canonical subspaces, the subspace
lattice, dual pairs and annihilators.

Subspaces are kept in reduced row echelon form, so equality of subspaces is
equality of their canonical bases.  Scalars are GF(p) rather than the
complex numbers of the analytic setting: everything below only uses
bilinearity and non-degeneracy of the pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .lattice import FinLattice
import numpy as np

__all__ = [
    "Subspace",
    "DualPair",
    "DualPairMorphism",
    "SubLattice",
    "GFError",
    "ResourceGuardError",
    "span",
    "sub_lattice",
    "gaussian_binomial",
    "count_subspaces",
]

SUBSPACE_GUARD = 10_000


class GFError(ValueError):
    pass


class ResourceGuardError(GFError):
    pass


def _check_prime(p: int) -> int:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise GFError(f"p must be prime, got {p}")
    return p


def _inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def rref(rows: list[list[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over GF(p), zero rows dropped."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, nrows) if mat[r][col] % p), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = _inv_mod(mat[pivot_row][col] % p, p)
        mat[pivot_row] = [(v * inv) % p for v in mat[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and mat[r][col] % p:
                c = mat[r][col] % p
                mat[r] = [(a - c * b) % p
                          for a, b in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return tuple(tuple(v % p for v in row) for row in mat[:pivot_row]
                 if any(v % p for v in row))


def nullspace(rows: tuple[tuple[int, ...], ...], n: int, p: int
              ) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of {x : M x = 0} for the given row matrix."""
    red = rref([list(r) for r in rows], p) if rows else ()
    pivots = []
    for row in red:
        pivots.append(next(i for i, v in enumerate(row) if v))
    free = [i for i in range(n) if i not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for row, piv in zip(red, pivots):
            vec[piv] = (-row[f]) % p
        basis.append(vec)
    return rref(basis, p) if basis else ()


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^n in canonical (RREF) form."""

    p: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        v = self._check_vec(vec)
        reduced = list(v)
        for row in self.basis:
            piv = next(i for i, c in enumerate(row) if c)
            if reduced[piv]:
                c = reduced[piv]
                reduced = [(a - c * b) % self.p for a, b in zip(reduced, row)]
        return not any(reduced)

    def vectors(self):
        """All p^dim vectors of the subspace (deterministic order)."""
        for coeffs in product(range(self.p), repeat=self.dim):
            vec = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                for i, b in enumerate(row):
                    vec[i] = (vec[i] + c * b) % self.p
            yield tuple(vec)

    def leq(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(row) for row in self.basis)

    def join(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.p, self.n,
                        rref(list(self.basis) + list(other.basis), self.p))

    def meet(self, other: "Subspace") -> "Subspace":
        """Intersection, via the kernel of the stacked equation systems."""
        self._check_compatible(other)
        eqs = equations(self) + equations(other)
        return Subspace(self.p, self.n, nullspace(eqs, self.n, self.p))

    def _check_vec(self, vec) -> tuple[int, ...]:
        v = tuple(int(c) % self.p for c in vec)
        if len(v) != self.n:
            raise GFError(f"vector length {len(v)} != ambient dimension {self.n}")
        return v

    def _check_compatible(self, other: "Subspace") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise GFError("subspaces live in different ambient spaces")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Subspace(GF({self.p})^{self.n}, {self.basis})"


def span(p: int, n: int, vectors) -> Subspace:
    _check_prime(p)
    rows = []
    for vec in vectors:
        row = [int(c) % p for c in vec]
        if len(row) != n:
            raise GFError(f"vector length {len(row)} != ambient dimension {n}")
        rows.append(row)
    return Subspace(p, n, rref(rows, p))


def zero_subspace(p: int, n: int) -> Subspace:
    return Subspace(p, n, ())


def full_subspace(p: int, n: int) -> Subspace:
    return Subspace(p, n, tuple(tuple(int(i == j) for j in range(n))
                                for i in range(n)))


def equations(v: Subspace) -> tuple[tuple[int, ...], ...]:
    """Rows E with V = {x : E x = 0} (plain double-annihilator over GF(p))."""
    return nullspace(v.basis, v.n, v.p)


def nonzero_vectors(p: int, n: int):
    """All nonzero vectors, one scalar multiple per projective point
    (first nonzero coordinate is 1)."""
    for vec in product(range(p), repeat=n):
        first = next((c for c in vec if c), None)
        if first == 1:
            yield vec


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def count_subspaces(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def _enumerate_subspaces(p: int, n: int) -> list[Subspace]:
    """Every subspace exactly once, via its unique RREF basis."""
    out = [zero_subspace(p, n)]
    for k in range(1, n + 1):
        for pivots in combinations(range(n), k):
            free_slots = [(r, c) for r in range(k) for c in range(n)
                          if c > pivots[r] and c not in pivots]
            for values in product(range(p), repeat=len(free_slots)):
                rows = [[0] * n for _ in range(k)]
                for r, piv in enumerate(pivots):
                    rows[r][piv] = 1
                for (r, c), v in zip(free_slots, values):
                    rows[r][c] = v
                out.append(Subspace(p, n, tuple(tuple(r) for r in rows)))
    return out


class SubLattice:
    """The complete lattice of all subspaces of GF(p)^n.

    Element ids index ``self.subspaces``; the id order is by dimension and
    then lexicographically on the canonical basis, so it is deterministic.
    """

    def __init__(self, p: int, n: int):
        _check_prime(p)
        total = count_subspaces(p, n)
        if total > SUBSPACE_GUARD:
            raise ResourceGuardError(
                f"Sub(GF({p})^{n}) has {total} subspaces, over the "
                f"{SUBSPACE_GUARD} guard")
        self.p = p
        self.n = n
        subs = _enumerate_subspaces(p, n)
        subs.sort(key=lambda s: (s.dim, s.basis))
        assert len(subs) == total
        self.subspaces: tuple[Subspace, ...] = tuple(subs)
        self.index: dict[Subspace, int] = {s: i for i, s in enumerate(subs)}
        m = len(subs)
        leq = np.zeros((m, m), dtype=bool)
        join = np.zeros((m, m), dtype=np.int32)
        meet = np.zeros((m, m), dtype=np.int32)
        for i, a in enumerate(subs):
            for j, b in enumerate(subs):
                if j < i:
                    join[i, j] = join[j, i]
                    meet[i, j] = meet[j, i]
                    continue
                leq[i, j] = a.leq(b)
                if j > i:
                    leq[j, i] = b.leq(a)
                join[i, j] = self.index[a.join(b)]
                meet[i, j] = self.index[a.meet(b)]
        self.lattice = FinLattice(leq, join, meet, validate=False)

    def id_of(self, v: Subspace) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise GFError(f"{v!r} is not a subspace of GF({self.p})^{self.n}") from None

    def __len__(self) -> int:
        return len(self.subspaces)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SubLattice(GF({self.p})^{self.n}, {len(self)} subspaces)"


@lru_cache(maxsize=None)
def sub_lattice(p: int, n: int) -> SubLattice:
    return SubLattice(p, n)


@dataclass(frozen=True)
class DualPair:
    """(A, A^dual) = (GF(p)^n, GF(p)^n) with pairing <a, phi> = a^T B phi.

    B must be invertible, which makes the pairing non-degenerate in both
    slots.
    """

    p: int
    n: int
    pairing: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_prime(self.p)
        if len(self.pairing) != self.n or any(len(r) != self.n
                                              for r in self.pairing):
            raise GFError("pairing matrix must be n x n")
        if len(rref([list(r) for r in self.pairing], self.p)) != self.n:
            raise GFError("pairing matrix must be invertible")

    @classmethod
    def standard(cls, p: int, n: int) -> "DualPair":
        return cls(p, n, tuple(tuple(int(i == j) for j in range(n))
                               for i in range(n)))

    def value(self, a, phi) -> int:
        """<a, phi> = a^T B phi."""
        out = 0
        for i, ai in enumerate(a):
            for j, bj in enumerate(phi):
                out += ai * self.pairing[i][j] * bj
        return out % self.p

    def swap(self) -> "DualPair":
        """The pair (A^dual, A) with the transposed pairing matrix."""
        return DualPair(self.p, self.n, tuple(zip(*self.pairing)))

    # -- annihilators -------------------------------------------------------

    def annihilator_f(self, v: Subspace) -> Subspace:
        """F(V) = {phi : V inside ker phi} = kernel of (basis_V . B)."""
        self._check_side(v)
        return _annihilator_f(self, v)

    def annihilator_g(self, w: Subspace) -> Subspace:
        """G(W) = {a : <a, phi> = 0 for all phi in W}."""
        self._check_side(w)
        return _annihilator_g(self, w)

    def kernel_of_functional(self, phi) -> Subspace:
        """ker phi = {a : <a, phi> = 0}."""
        return self.annihilator_g(span(self.p, self.n, [phi]))

    def _check_side(self, v: Subspace) -> None:
        if (v.p, v.n) != (self.p, self.n):
            raise GFError("subspace does not live in this dual pair")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"DualPair(GF({self.p})^{self.n})"


@lru_cache(maxsize=None)
def _annihilator_f(pair: "DualPair", v: Subspace) -> Subspace:
    rows = tuple(tuple(sum(r[i] * pair.pairing[i][j] for i in range(pair.n))
                       % pair.p for j in range(pair.n)) for r in v.basis)
    return Subspace(pair.p, pair.n, nullspace(rows, pair.n, pair.p))


@lru_cache(maxsize=None)
def _annihilator_g(pair: "DualPair", w: Subspace) -> Subspace:
    rows = tuple(tuple(sum(r[j] * pair.pairing[i][j] for j in range(pair.n))
                       % pair.p for i in range(pair.n)) for r in w.basis)
    return Subspace(pair.p, pair.n, nullspace(rows, pair.n, pair.p))


def _matmul(a, b, p):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) % p
                       for j in range(len(b[0]))) for i in range(len(a)))


def _matinv(a, p):
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)]
           for i, row in enumerate(a)]
    red = rref(aug, p)
    if len(red) != n or any(red[i][i] != 1 for i in range(n)):
        raise GFError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def _transpose(a):
    return tuple(zip(*a))


@dataclass(frozen=True)
class DualPairMorphism:
    """A linear map f: A -> B between dual pairs with its unique adjoint
    f_dual: B^dual -> A^dual satisfying <f(a), psi> = <a, f_dual(psi)>.

    Matrices act on column vectors; ``matrix`` has shape dst x src.
    """

    src: DualPair
    dst: DualPair
    matrix: tuple[tuple[int, ...], ...]
    matrix_dual: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, src: DualPair, dst: DualPair, matrix
                    ) -> "DualPairMorphism":
        if src.p != dst.p:
            raise GFError("dual pairs have different moduli")
        f = tuple(tuple(int(v) % src.p for v in row) for row in matrix)
        if len(f) != dst.n or any(len(r) != src.n for r in f):
            raise GFError("matrix shape must be dst.n x src.n")
        return _morphism_from_matrix(src, dst, f)

    def apply(self, vec) -> tuple[int, ...]:
        p = self.src.p
        v = tuple(int(c) % p for c in vec)
        return tuple(sum(row[i] * v[i] for i in range(len(v))) % p
                     for row in self.matrix)

    def apply_dual(self, vec) -> tuple[int, ...]:
        p = self.src.p
        v = tuple(int(c) % p for c in vec)
        return tuple(sum(row[i] * v[i] for i in range(len(v))) % p
                     for row in self.matrix_dual)

    def adjoint_identity_witness(self):
        """None if <f(a), psi> = <a, f_dual(psi)> on all basis pairs."""
        for i in range(self.src.n):
            a = tuple(int(i == t) for t in range(self.src.n))
            for j in range(self.dst.n):
                psi = tuple(int(j == t) for t in range(self.dst.n))
                lhs = self.dst.value(self.apply(a), psi)
                rhs = self.src.value(a, self.apply_dual(psi))
                if lhs != rhs:
                    return (a, psi, lhs, rhs)
        return None

    # -- induced maps on subspaces -------------------------------------------

    def image(self, v: Subspace) -> Subspace:
        """Max f (V) = f(V); the closure is the identity in this model."""
        if (v.p, v.n) != (self.src.p, self.src.n):
            raise GFError("subspace is not in the source space")
        return _dpm_image(self, v)

    def preimage(self, w: Subspace) -> Subspace:
        """f^{-1}(W) = {a : f(a) in W}."""
        if (w.p, w.n) != (self.dst.p, self.dst.n):
            raise GFError("subspace is not in the target space")
        return _dpm_preimage(self, w)

    def image_dual(self, w: Subspace) -> Subspace:
        return span(self.src.p, self.src.n,
                    [self.apply_dual(row) for row in w.basis])

    def preimage_dual(self, v: Subspace) -> Subspace:
        eqs = equations(v)
        rows = tuple(tuple(sum(e[k] * self.matrix_dual[k][j]
                               for k in range(self.src.n)) % self.src.p
                           for j in range(self.dst.n)) for e in eqs)
        return Subspace(self.dst.p, self.dst.n,
                        nullspace(rows, self.dst.n, self.dst.p))

    def kernel(self) -> Subspace:
        return self.preimage(zero_subspace(self.dst.p, self.dst.n))


@lru_cache(maxsize=None)
def _morphism_from_matrix(src: DualPair, dst: DualPair, f) -> DualPairMorphism:
    # <f a, psi>_B = (f a)^T B_B psi = a^T (f^T B_B) psi and
    # <a, g psi>_A = a^T (B_A g) psi force g = B_A^{-1} f^T B_B.
    p = src.p
    g = _matmul(_matmul(_matinv(src.pairing, p), _transpose(f), p),
                dst.pairing, p)
    m = DualPairMorphism(src, dst, f, g)
    assert m.adjoint_identity_witness() is None
    return m


@lru_cache(maxsize=None)
def _dpm_image(m: DualPairMorphism, v: Subspace) -> Subspace:
    return span(m.dst.p, m.dst.n, [m.apply(row) for row in v.basis])


@lru_cache(maxsize=None)
def _dpm_preimage(m: DualPairMorphism, w: Subspace) -> Subspace:
    eqs = equations(w)
    rows = tuple(tuple(sum(e[k] * m.matrix[k][j]
                           for k in range(m.dst.n)) % m.src.p
                       for j in range(m.src.n)) for e in eqs)
    return Subspace(m.src.p, m.src.n, nullspace(rows, m.src.n, m.src.p))


@lru_cache(maxsize=None)
def identity_morphism(pair: DualPair) -> DualPairMorphism:
    eye = tuple(tuple(int(i == j) for j in range(pair.n))
                for i in range(pair.n))
    return DualPairMorphism.from_matrix(pair, pair, eye)
