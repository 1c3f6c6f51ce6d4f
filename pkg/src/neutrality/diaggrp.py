"""Finite diagonal subgroups of GL_n as integer exponent lattices.

A diagonal group of exponent dividing M is the lattice L with
M Z^n <= L <= Z^n, where the vector v corresponds to
diag(zeta_M^v1, ..., zeta_M^vn).  The Hermite basis is a canonical
representative, so group equality is basis equality at a common level.
"""

import itertools
from dataclasses import dataclass
from math import gcd

from .latcoh import (
    _echelon_det,
    apply_perm,
    congruence_kernel,
    hnf,
    lattice_contains,
    mat_mul,
)
from .nt import divisors, lcm


class InfinitePreimageError(ValueError):
    """The requested determinant-character preimage is not finite."""


class DiagonalGroup:
    __slots__ = ("n", "level", "rows")

    def __init__(self, n, level, rows):
        self.n = n
        self.level = level
        base = [list(r) for r in rows]
        base += [[level if i == j else 0 for j in range(n)] for i in range(n)]
        self.rows = tuple(hnf(base))
        if len(self.rows) != n:
            raise AssertionError("exponent lattice must have full rank")

    @staticmethod
    def from_exponents(n, level, gens):
        """Group generated by diag(zeta_level^v) for the given vectors."""
        if level < 1:
            raise ValueError("level must be >= 1")
        for v in gens:
            if len(v) != n:
                raise ValueError("exponent vector has wrong length")
        return DiagonalGroup(n, level, [list(map(int, v)) for v in gens])

    @staticmethod
    def trivial(n):
        return DiagonalGroup(n, 1, [])

    # -- basic invariants ------------------------------------------------

    @property
    def order(self):
        return self.level**self.n // _echelon_det(self.rows)

    def exponent(self):
        """lcm of element orders: the level of the canonical form."""
        return self.canonical().level

    def contains_vector(self, v):
        return lattice_contains(self.rows, [x % self.level for x in v])

    def elements(self, cap=200000):
        """All exponent vectors modulo the level (sorted)."""
        if self.order > cap:
            raise ValueError("too many elements to enumerate")
        m = self.level
        seen = {tuple([0] * self.n)}
        frontier = [tuple([0] * self.n)]
        gens = [tuple(x % m for x in row) for row in self.rows]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = tuple((a + b) % m for a, b in zip(v, g))
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
            frontier = new
        assert len(seen) == self.order
        return sorted(seen)

    # -- level handling and canonical form --------------------------------

    def at_level(self, m):
        if m == self.level:
            return self
        if m % self.level:
            raise ValueError("level must be a multiple")
        c = m // self.level
        return DiagonalGroup(self.n, m, [[c * x for x in row] for row in self.rows])

    def canonical(self):
        """Equivalent group at the minimal level (content removed)."""
        g = self.level
        for row in self.rows:
            for x in row:
                if x:
                    g = gcd(g, x)
            if g == 1:
                return self
        return DiagonalGroup(
            self.n, self.level // g, [[x // g for x in row] for row in self.rows]
        )

    def key(self):
        c = self.canonical()
        return (c.n, c.level, c.rows)

    def __eq__(self, other):
        if not isinstance(other, DiagonalGroup):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DiagonalGroup(n={self.n}, level={self.level}, rows={self.rows})"

    # -- comparisons -------------------------------------------------------

    def permuted(self, sigma):
        return DiagonalGroup(
            self.n, self.level, [apply_perm(sigma, row) for row in self.rows]
        )

    def equals_up_to_permutation(self, other, perms=None):
        """A permutation sigma in the allowed set with sigma(self) == other,
        or None.  Defaults to the full symmetric group."""
        if self.n != other.n:
            return None
        m = lcm(self.level, other.level)
        a, b = self.at_level(m), other.at_level(m)
        if perms is None:
            perms = [tuple(p) for p in itertools.permutations(range(self.n))]
        for sigma in sorted(perms):
            if a.permuted(sigma).rows == b.rows:
                return sigma
        return None

    # -- structure ----------------------------------------------------------

    def axis_characters_distinct(self):
        """No two coordinate characters agree on the whole group."""
        m = self.level
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if all((row[i] - row[j]) % m == 0 for row in self.rows):
                    return False
        return True

    def character_lattice(self):
        """X = {v : g . v == 0 mod level for all g in L}; index == order."""
        x = congruence_kernel([list(r) for r in self.rows], self.level)
        assert _echelon_det(x) == self.order
        return x

    def normalizer_perms(self):
        """All coordinate permutations fixing the group.

        The torus normalizer of the group is the diagonal torus extended by
        exactly these permutations (requires distinct axis characters)."""
        if not self.axis_characters_distinct():
            raise ValueError("normalizer needs one-dimensional eigenspaces")
        out = []
        for sigma in itertools.permutations(range(self.n)):
            sigma = tuple(sigma)
            if self.permuted(sigma).rows == self.rows:
                out.append(sigma)
        return out

    def scalar_order(self):
        """Order of the subgroup of scalar matrices."""
        ones = [1] * self.n
        for d in divisors(self.level):
            if lattice_contains(self.rows, [d * x for x in ones]):
                return self.level // d
        raise AssertionError("unreachable: level * ones is always present")

    def projective(self):
        """The image modulo scalars, encoded by adjoining the scalar line."""
        return ProjectiveDiagonalGroup(
            self.n, self.level, list(self.rows) + [[1] * self.n]
        )


class ProjectiveDiagonalGroup:
    """Diagonal subgroup of PGL_n: an exponent lattice containing the
    all-ones vector (the scalar line)."""

    __slots__ = ("n", "level", "rows")

    def __init__(self, n, level, rows):
        self.n = n
        self.level = level
        base = [list(r) for r in rows] + [[1] * n]
        base += [[level if i == j else 0 for j in range(n)] for i in range(n)]
        self.rows = tuple(hnf(base))

    @staticmethod
    def from_exponents(n, level, gens):
        return ProjectiveDiagonalGroup(n, level, [list(map(int, v)) for v in gens])

    @property
    def order(self):
        return self.level ** (self.n - 1) // _echelon_det(self.rows)

    def at_level(self, m):
        if m == self.level:
            return self
        if m % self.level:
            raise ValueError("level must be a multiple")
        c = m // self.level
        return ProjectiveDiagonalGroup(
            self.n, m, [[c * x for x in row] for row in self.rows]
        )

    def __eq__(self, other):
        if not isinstance(other, ProjectiveDiagonalGroup):
            return NotImplemented
        if self.n != other.n:
            return False
        m = lcm(self.level, other.level)
        return self.at_level(m).rows == other.at_level(m).rows

    def __hash__(self):
        return hash((self.n, self.order))

    def __repr__(self):
        return (
            f"ProjectiveDiagonalGroup(n={self.n}, level={self.level}, "
            f"rows={self.rows})"
        )

    def permuted(self, sigma):
        return ProjectiveDiagonalGroup(
            self.n, self.level, [apply_perm(sigma, row) for row in self.rows]
        )

    def equals_up_to_permutation(self, other, perms=None):
        if self.n != other.n:
            return None
        m = lcm(self.level, other.level)
        a, b = self.at_level(m), other.at_level(m)
        if perms is None:
            perms = [tuple(p) for p in itertools.permutations(range(self.n))]
        for sigma in sorted(perms):
            if a.permuted(sigma).rows == b.rows:
                return sigma
        return None


@dataclass(frozen=True)
class FamilySpec:
    """Block sizes, determinant weights, and the projective diagonal target."""

    blocks: tuple
    weights: tuple
    proj: ProjectiveDiagonalGroup

    def weight_degree(self):
        return sum(m * n for m, n in zip(self.weights, self.blocks))


def sl_preimage(spec: FamilySpec) -> DiagonalGroup:
    """Inverse image of the projective diagonal target inside the block
    subgroup cut out by det(M_1)^m1 ... det(M_s)^ms = 1.

    Finite exactly when the weight degree sum(m_i n_i) is nonzero; the
    scalar subgroup of the result is cyclic of that absolute value.
    """
    n = sum(spec.blocks)
    if n != spec.proj.n:
        raise ValueError("block sizes do not match the target dimension")
    wdeg = spec.weight_degree()
    if wdeg == 0:
        raise InfinitePreimageError("weight degree is zero: preimage is infinite")
    t = abs(wdeg)
    mbar = spec.proj.level
    m = mbar * t
    # lattice of all lifts of the target (any scalar): t*rows + ones + m Z^n
    lift_rows = [[t * x for x in row] for row in spec.proj.rows]
    lift_rows.append([1] * n)
    a = hnf(lift_rows + [[m if i == j else 0 for j in range(n)] for i in range(n)])
    # weight vector w_j = weights[block containing j]
    w = []
    for size, wt in zip(spec.blocks, spec.weights):
        w.extend([wt] * size)
    u = [sum(row[j] * w[j] for j in range(n)) for row in a]
    k = congruence_kernel([u], m)
    rows = mat_mul([list(r) for r in k], [list(r) for r in a])
    return DiagonalGroup(n, m, rows)
