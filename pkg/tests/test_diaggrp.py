"""Diagonal groups as exponent lattices."""

import itertools
import random

import pytest

from conftest import (
    additive_closure,
    brute_character_lattice_index,
    scale_set,
)
from neutrality.diaggrp import (
    DiagonalGroup,
    FamilySpec,
    InfinitePreimageError,
    ProjectiveDiagonalGroup,
    sl_preimage,
)
from neutrality.latcoh import _echelon_det, lattice_contains


def test_from_exponents_examples():
    d = DiagonalGroup.from_exponents(2, 4, [(1, 3)])
    assert d.order == 4
    assert d.order == len(additive_closure(2, 4, [(1, 3)]))
    assert DiagonalGroup.from_exponents(3, 1, []).order == 1
    # the group <zeta_4 I, diag(zeta_6, zeta_6^-1)> at level 12: the
    # enumeration oracle gives 2mn = 12 for (m, n) = (2, 3)
    d2 = DiagonalGroup.from_exponents(2, 12, [(3, 3), (2, 10)])
    oracle = additive_closure(2, 12, [(3, 3), (2, 10)])
    assert d2.order == len(oracle) == 12


def test_membership_matches_enumeration():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.choice([2, 3])
        m = rng.choice([2, 3, 4, 6, 8, 12])
        gens = [
            tuple(rng.randrange(m) for _ in range(n))
            for _ in range(rng.choice([1, 2]))
        ]
        d = DiagonalGroup.from_exponents(n, m, gens)
        oracle = additive_closure(n, m, gens)
        assert d.order == len(oracle)
        for v in itertools.product(range(m), repeat=n):
            assert d.contains_vector(v) == (v in oracle)


def test_level_harmonization_property():
    d = DiagonalGroup.from_exponents(2, 4, [(1, 3)])
    up = d.at_level(12)
    assert up.order == d.order
    assert up == d
    assert up.canonical().level == 4
    # scaled enumeration oracle agrees
    assert scale_set(additive_closure(2, 4, [(1, 3)]), 3, 12) == frozenset(
        additive_closure(2, 12, [(3, 9)])
    )


def test_equality_canonical():
    a = DiagonalGroup.from_exponents(2, 2, [(1, 1)])
    b = DiagonalGroup.from_exponents(2, 6, [(3, 3)])
    assert a == b
    assert hash(a) == hash(b)


def test_equals_up_to_permutation_examples():
    d = DiagonalGroup.from_exponents(2, 2, [(0, 1)])
    assert d.equals_up_to_permutation(d, perms=[(0, 1)]) == (0, 1)
    e = DiagonalGroup.from_exponents(2, 2, [(1, 0)])
    assert d.equals_up_to_permutation(e) == (1, 0)
    assert d.equals_up_to_permutation(e, perms=[(0, 1)]) is None


def test_equals_up_to_permutation_is_equivalence():
    rng = random.Random(9)
    groups = []
    for _ in range(6):
        gens = [tuple(rng.randrange(6) for _ in range(3)) for _ in range(2)]
        groups.append(DiagonalGroup.from_exponents(3, 6, gens))
    for d in groups:
        assert d.equals_up_to_permutation(d) is not None
    for a, b in itertools.combinations(groups, 2):
        ab = a.equals_up_to_permutation(b)
        ba = b.equals_up_to_permutation(a)
        assert (ab is None) == (ba is None)
    for a, b, c in itertools.permutations(groups, 3):
        if (
            a.equals_up_to_permutation(b) is not None
            and b.equals_up_to_permutation(c) is not None
        ):
            assert a.equals_up_to_permutation(c) is not None


def test_axis_characters_examples():
    assert DiagonalGroup.from_exponents(2, 4, [(1, 3)]).axis_characters_distinct()
    assert not DiagonalGroup.from_exponents(2, 3, [(1, 1)]).axis_characters_distinct()
    assert not DiagonalGroup.from_exponents(
        3, 2, [(1, 1, 0)]
    ).axis_characters_distinct()


def test_character_lattice_examples():
    d = DiagonalGroup.from_exponents(2, 4, [(1, 3)])
    x = d.character_lattice()
    # X = {(r, s): r + 3 s == 0 mod 4}, index 4
    assert _echelon_det(x) == 4
    for r, s in itertools.product(range(4), repeat=2):
        inx = (r + 3 * s) % 4 == 0
        assert lattice_contains(x, (r, s)) == inx
    triv = DiagonalGroup.trivial(3)
    assert triv.character_lattice() == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    g = DiagonalGroup.from_exponents(2, 2, [(1, 1), (0, 1)])
    assert g.character_lattice() == [(2, 0), (0, 2)]


def test_character_lattice_index_property():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.choice([2, 3])
        m = rng.choice([2, 3, 4, 6, 8, 9, 12])
        gens = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(2)]
        d = DiagonalGroup.from_exponents(n, m, gens)
        assert _echelon_det(d.character_lattice()) == d.order
        if m <= 8 and n == 2:
            assert (
                brute_character_lattice_index(n, m, [list(r) for r in d.rows])
                == d.order
            )


def test_normalizer_perms_examples():
    d = DiagonalGroup.from_exponents(2, 4, [(1, 3)])
    assert d.normalizer_perms() == [(0, 1), (1, 0)]
    e = DiagonalGroup.from_exponents(2, 2, [(0, 1)])
    assert e.normalizer_perms() == [(0, 1)]
    # the SL_3 preimage of <diag(z7, z7^3, 1)> keeps exactly the 3-cycles
    pre = sl_preimage(
        FamilySpec(
            (3,),
            (1,),
            DiagonalGroup.from_exponents(3, 7, [(1, 3, 0)]).projective(),
        )
    )
    assert pre.normalizer_perms() == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def test_normalizer_perms_precondition():
    with pytest.raises(ValueError):
        DiagonalGroup.from_exponents(2, 3, [(1, 1)]).normalizer_perms()


def test_scalar_order_examples():
    assert DiagonalGroup.from_exponents(2, 12, [(3, 3), (2, 10)]).scalar_order() == 4
    assert DiagonalGroup.from_exponents(2, 2, [(0, 1)]).scalar_order() == 1
    assert DiagonalGroup.from_exponents(3, 5, [(1, 1, 1)]).scalar_order() == 5


def test_projective_examples():
    assert DiagonalGroup.from_exponents(2, 5, [(1, 1)]).projective().order == 1
    assert DiagonalGroup.from_exponents(2, 4, [(1, 3)]).projective().order == 2
    # family round trip: the projective image of the (m, n) family is C_n
    fam = sl_preimage(
        FamilySpec(
            (2,),
            (2,),
            DiagonalGroup.from_exponents(2, 3, [(0, 1)]).projective(),
        )
    )
    assert fam.projective().order == 3


def test_sl_preimage_examples():
    # the main GL_2 family: order 2mn with scalar subgroup of order 2m
    for m, n in [(1, 1), (1, 2), (2, 3), (3, 4), (4, 5)]:
        proj = DiagonalGroup.from_exponents(2, n, [(0, 1)]).projective()
        pre = sl_preimage(FamilySpec((2,), (m,), proj))
        assert pre.order == 2 * m * n
        assert pre.scalar_order() == 2 * m
        # oracle: the explicit generators from the classification
        level = pre.level
        big = level if level % (2 * n) == 0 else level * (2 * n)
        gens = [
            (big // (2 * m), big // (2 * m)),
            (-(big // (2 * n)) % big, big // (2 * n)),
        ]
        oracle = DiagonalGroup.from_exponents(2, big, gens)
        assert pre == oracle

    # blocks (2,1) with weights (0,1): the preimage adds nothing
    proj_b = ProjectiveDiagonalGroup.from_exponents(3, 2, [(1, 1, 0)])
    pre = sl_preimage(FamilySpec((2, 1), (0, 1), proj_b))
    assert pre == DiagonalGroup.from_exponents(3, 2, [(1, 1, 0)])
    assert pre.order == 2

    # order 3 c a^2 n for the three-block preimages
    pre3 = sl_preimage(
        FamilySpec(
            (3,),
            (1,),
            DiagonalGroup.from_exponents(3, 7, [(1, 3, 0)]).projective(),
        )
    )
    assert pre3.order == 21


def test_sl_preimage_explicit_generators_cross_check():
    """The inverse image in SL_3 of the (a, n, d) projective group equals
    the group generated by the three explicit normalized generators."""
    for a, n, d in [(1, 7, 3), (2, 1, 0), (1, 3, 2), (2, 3, 2), (4, 1, 0)]:
        assert (d * d - d + 1) % n == 0
        proj = ProjectiveDiagonalGroup.from_exponents(
            3, a * n, [(n, 0, 0), (0, n, 0), (1, d, 0)]
        )
        pre = sl_preimage(FamilySpec((3,), (1,), proj))
        level = 3 * a * n
        gens = [
            (2 * (level // (3 * a)), -(level // (3 * a)) % level, -(level // (3 * a)) % level),
            (-(level // (3 * a)) % level, 2 * (level // (3 * a)), -(level // (3 * a)) % level),
            (
                (2 - d) * (level // (3 * a * n)) % level,
                (2 * d - 1) * (level // (3 * a * n)) % level,
                (-d - 1) * (level // (3 * a * n)) % level,
            ),
        ]
        explicit = DiagonalGroup.from_exponents(3, level, gens)
        assert pre == explicit
        assert pre.order == 3 * a * a * n


def test_sl_preimage_fixed_by_cycle():
    """Type (a)/(e) preimages are stable under the coordinate 3-cycle."""
    for a, n, d in [(1, 7, 3), (1, 3, 2), (2, 3, 2)]:
        pre = sl_preimage(
            FamilySpec((3,), (1,), ProjectiveDiagonalGroup.from_exponents(
                3, a * n, [(n, 0, 0), (0, n, 0), (1, d, 0)]
            ))
        )
        assert (1, 2, 0) in pre.normalizer_perms()


def test_sl_preimage_infinite():
    proj = ProjectiveDiagonalGroup.from_exponents(3, 2, [(1, 1, 0)])
    with pytest.raises(InfinitePreimageError):
        sl_preimage(FamilySpec((2, 1), (1, -2), proj))


def test_projective_equality_across_levels():
    p1 = DiagonalGroup.from_exponents(2, 3, [(0, 1)]).projective()
    p2 = DiagonalGroup.from_exponents(2, 6, [(0, 2)]).projective()
    assert p1 == p2
    assert p1.equals_up_to_permutation(p2) is not None
