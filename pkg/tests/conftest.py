"""Shared builders and brute-force oracles for the test suite.

The oracles here deliberately avoid the production code paths they check:
group enumeration is additive closure over tuples, character lattices are
counted by exhaustive scans, and family membership is tested on element
sets rather than Hermite bases.
"""

import itertools

from neutrality.cyclo import root_of_unity
from neutrality.matgrp import CycMatrix, MatrixGroup


def mat(rows, level=1):
    return CycMatrix(rows, level)


def diag(*entries):
    return CycMatrix.diagonal(list(entries))


def zg(n, k=1):
    return root_of_unity(n, k)


def group_of(*gens, cap=20000):
    return MatrixGroup.generate(list(gens), cap=cap)


# -- brute-force oracles -------------------------------------------------


def additive_closure(n, m, gens):
    """Subgroup of (Z/m)^n generated by the vectors, as a sorted tuple set."""
    seen = {tuple([0] * n)}
    frontier = [tuple([0] * n)]
    gens = [tuple(x % m for x in g) for g in gens]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return frozenset(seen)


def scale_set(elems, c, m):
    """Reinterpret a subgroup of (Z/(m/c))^n inside (Z/m)^n."""
    return frozenset(tuple(c * x % m for x in v) for v in elems)


def brute_character_lattice_index(n, m, gens):
    """[Z^n : X] by counting solutions of g . v == 0 (mod m) directly."""
    count = 0
    for v in itertools.product(range(m), repeat=n):
        if all(sum(a * b for a, b in zip(g, v)) % m == 0 for g in gens):
            count += 1
    return m**n // count


def subgroups_of_znn(n_coords, m):
    """All subgroups of (Z/m)^2 via Hermite triples (a, b, d)."""
    assert n_coords == 2
    from neutrality.nt import divisors

    out = []
    for a in divisors(m):
        for d in divisors(m):
            for b in range(d):
                if ((m // a) * b) % d == 0:
                    out.append([(a, b), (0, d)])
    return out


def family_gl2_elements(m, n, level):
    """Element set of <zeta_2m I, diag(zeta_2n^-1, zeta_2n)> at the level."""
    big = level
    assert big % (2 * m) == 0 and big % (2 * n) == 0
    g1 = (big // (2 * m), big // (2 * m))
    g2 = (-big // (2 * n) % big, big // (2 * n))
    return additive_closure(2, big, [g1, g2])
