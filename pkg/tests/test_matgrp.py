"""Matrix groups over cyclotomic fields."""

import random

import pytest

from conftest import diag, group_of, zg
from neutrality import catalog
from neutrality.cyclo import zeta
from neutrality.matgrp import (
    CycMatrix,
    GroupTooLargeError,
    MatrixGroup,
    diag_to_matrix_group,
    element_invariants,
    is_pseudo_reflection,
    simultaneous_diagonalize,
)


def test_matrix_basics():
    m = CycMatrix([[0, 1], [1, 0]])
    assert (m * m).is_identity()
    assert m.inverse() == m
    assert (m**3) == m
    assert m.det().as_fraction() == -1
    s = CycMatrix.scalar(2, zg(4))
    assert s.scalar_value() == zg(4)
    assert s.order() == 4


def test_matrix_kernel():
    m = CycMatrix([[1, 1], [1, 1]])
    ker = m.kernel_basis()
    assert len(ker) == 1
    v = ker[0]
    assert (v[0] + v[1]).is_zero()


def test_closure_examples():
    assert group_of(CycMatrix.identity(3)).order == 1
    cat = catalog.build()
    assert cat.h1_tilde.order == 27
    assert group_of(diag(zg(6), zg(6, 5))).order == 6


def test_closure_cap():
    with pytest.raises(GroupTooLargeError):
        MatrixGroup.generate([diag(zg(7), zg(7, 3))], cap=5)


def test_closure_deterministic_order():
    g1 = group_of(diag(zg(4), zg(4, 3)), diag(-1, 1))
    g2 = group_of(diag(zg(4), zg(4, 3)), diag(-1, 1))
    assert [m.key() for m in g1.elements] == [m.key() for m in g2.elements]


def test_element_invariants_examples():
    inv = element_invariants(diag(1, -1))
    assert (inv.order, inv.eigenvalues, inv.is_pseudo_reflection) == (
        2,
        ((1, 0), (2, 1)),
        True,
    )
    assert inv.det.as_fraction() == -1

    cat = catalog.build()
    m2 = cat.m[2]
    inv2 = element_invariants(m2)
    assert inv2.order == 2
    assert inv2.det.is_one()
    assert inv2.eigenvalues == ((1, 0), (2, 1), (2, 1))
    assert not inv2.is_pseudo_reflection

    inv1 = element_invariants(cat.m[1])
    assert inv1.order == 3
    assert inv1.det.is_one()
    assert inv1.eigenvalues == ((1, 0), (3, 1), (3, 2))


def test_scalar_subgroup_examples():
    cat = catalog.build()
    c, gen = cat.h1_tilde.scalar_subgroup()
    assert c == 3 and gen.scalar_value() == zeta(3)
    c2, _ = group_of(diag(1, -1)).scalar_subgroup()
    assert c2 == 1
    g = group_of(CycMatrix.scalar(2, zg(4)), diag(zg(6, 5), zg(6)))
    c3, gen3 = g.scalar_subgroup()
    assert c3 == 4 and gen3.scalar_value() == zg(4)
    # enumeration oracle: scalars in the closed element set
    scalars = [m for m in g.elements if m.is_scalar()]
    assert len(scalars) == 4


def test_projective_image_examples():
    cat = catalog.build()
    assert cat.h1_tilde.projective_image().order == 9
    assert group_of(CycMatrix.scalar(1, zg(5))).projective_image().order == 1
    # lift of H2 inside SL_3^(1): projective image has order 18
    assert cat.sl3_preimage(2, 1).projective_image().order == 18


def test_projective_order_product_invariant():
    for g in [
        group_of(diag(zg(4), zg(4, 3))),
        group_of(diag(zg(6), zg(6, 5)), CycMatrix.scalar(2, -1)),
        catalog.build().h1_tilde,
    ]:
        c, _ = g.scalar_subgroup()
        assert g.projective_image().order * c == g.order


def test_lagrange_property():
    g = catalog.build().sl3_preimage(2, 1)
    for m in g.elements[::7]:
        assert g.order % m.order() == 0


def test_det_multiplicative_sampled():
    g = catalog.build().lift(2)
    rng = random.Random(5)
    for _ in range(20):
        a, b = rng.choice(g.elements), rng.choice(g.elements)
        assert (a * b).det() == a.det() * b.det()


def test_diagonalize_already_diagonal():
    g = group_of(diag(zg(4), zg(4, 3)))
    p, d = simultaneous_diagonalize(g)
    assert p.is_identity()
    assert d.order == 4


def test_diagonalize_swap():
    g = group_of(CycMatrix([[0, 1], [1, 0]]))
    p, d = simultaneous_diagonalize(g)
    assert d.order == 2
    assert sorted(d.elements()) == [(0, 0), (0, 1)]  # diag(1, -1) at level 2
    # conjugation is an isomorphism: re-closing the conjugates matches d
    pinv = p.inverse()
    conj = [pinv * m * p for m in g.elements]
    lifted = diag_to_matrix_group(d)
    assert {m.key() for m in conj} == {
        m.at_level(conj[0].level).key() for m in lifted.elements
    }


def test_diagonalize_rejects_nonabelian():
    with pytest.raises(ValueError):
        simultaneous_diagonalize(catalog.build().h1_tilde)


def test_diagonalize_reproduces_group():
    # a conjugated diagonal group diagonalizes back to the same lattice
    rng = random.Random(11)
    u = CycMatrix([[1, 1], [0, 1]])
    base = group_of(diag(zg(4), zg(4, 3)), diag(-1, 1))
    conj = MatrixGroup.generate([u.inverse() * g * u for g in base.generators])
    p, d = simultaneous_diagonalize(conj)
    _, d0 = simultaneous_diagonalize(base)
    assert d == d0


def test_sylow_examples():
    cat = catalog.build()
    syl = cat.h4_tilde.sylow(2)
    assert cat.h4_tilde.order == 216
    assert syl.order == 8
    orders = sorted(m.order() for m in syl.elements)
    assert orders.count(2) == 1  # quaternion: a unique involution
    assert not syl.is_abelian()

    g6 = group_of(CycMatrix.scalar(1, zg(6)))
    assert g6.sylow(3).order == 3
    with pytest.raises(ValueError):
        cat.h1_tilde.sylow(2)


def test_pseudo_reflection_analysis_examples():
    has_any, sub, whole = group_of(diag(1, -1)).pseudo_reflection_analysis()
    assert (has_any, sub.order, whole) == (True, 2, True)
    # <diag(i,-i)>: all four elements checked by enumeration
    g = group_of(diag(zg(4), zg(4, 3)))
    for m in g.elements:
        assert not is_pseudo_reflection(m)
    has_any, sub, whole = g.pseudo_reflection_analysis()
    assert (has_any, sub.order, whole) == (False, 1, False)
    has_any, sub, whole = catalog.build().h1_tilde.pseudo_reflection_analysis()
    assert (has_any, sub.order, whole) == (False, 1, False)


def test_membership_across_levels():
    g = group_of(diag(zg(4), zg(4, 3)))
    assert CycMatrix.scalar(2, -1) in g
    assert diag(zg(4), zg(4, 3)).at_level(12) in g
    assert CycMatrix.scalar(2, zg(3)) not in g
