"""Fixture library for the Hessian subgroups of PGL_3.

Builds the six generator matrices (normalized into SL_3) at the common
level 36, the projective chain H_0 .. H_5, and the standard linear lifts.
verify() recomputes every structural fact the classifier relies on and
reports them one by one, so the whole catalog is machine-checked.
"""

from functools import lru_cache

from .cyclo import CycNum, root_of_unity, zeta
from .matgrp import CycMatrix, MatrixGroup
from .nt import lcm

LEVEL = 36


class Fact:
    __slots__ = ("name", "ok", "computed")

    def __init__(self, name, ok, computed):
        self.name = name
        self.ok = bool(ok)
        self.computed = computed

    def __repr__(self):
        status = "pass" if self.ok else "FAIL"
        return f"[{status}] {self.name}: {self.computed}"


class HessianCatalog:
    """The matrices M0..M5 and the groups they generate."""

    def __init__(self):
        one = CycNum.one(LEVEL)
        zero = CycNum.zero(LEVEL)
        w = zeta(3).at_level(LEVEL)
        w2 = w * w
        s = (2 * w + 1).inverse()  # 1/(2*zeta_3 + 1), squares to -1/3
        z9inv = root_of_unity(9, 8).at_level(LEVEL)
        self.level = LEVEL
        self.m = (
            CycMatrix.diagonal([one, w, w2], LEVEL),
            CycMatrix.permutation((1, 2, 0), LEVEL),
            CycMatrix.permutation((0, 2, 1), LEVEL).scale(-1),
            CycMatrix([[s, s, s], [s, s * w, s * w2], [s, s * w2, s * w]], LEVEL),
            CycMatrix(
                [[s, s, s * w], [s, s * w, s], [s * w2, s * w, s * w]], LEVEL
            ),
            CycMatrix.diagonal([z9inv, z9inv, z9inv * w], LEVEL),
        )

    @lru_cache(maxsize=None)
    def lift(self, i):
        """The linear group <M0, ..., Mi>."""
        return MatrixGroup.generate(list(self.m[: i + 1]), cap=2000)

    @lru_cache(maxsize=None)
    def proj(self, i):
        """The projective group H_i = <M0, ..., Mi> in PGL_3."""
        return self.lift(i).projective_image()

    @property
    def h1_tilde(self):
        """<M0, M1>: the Heisenberg lift of H_1 (= its SL_3-preimage)."""
        return self.lift(1)

    @lru_cache(maxsize=None)
    def sl3_preimage(self, i, c=1):
        """Inverse image of H_i in SL_3^(c): <zeta_3c I, M0..Mi>."""
        lv = lcm(LEVEL, 3 * c)
        sc = CycMatrix.scalar(3, root_of_unity(3 * c, 1)).at_level(lv)
        gens = [sc] + [m.at_level(lv) for m in self.m[: i + 1]]
        return MatrixGroup.generate(gens, cap=4000)

    @property
    def h4_tilde(self):
        return self.sl3_preimage(4)

    @property
    def h5_tilde(self):
        return self.sl3_preimage(5)


@lru_cache(maxsize=None)
def build() -> HessianCatalog:
    return HessianCatalog()


def verify(cat=None):
    """Recompute the catalog's structural facts; returns a list of Facts."""
    cat = cat or build()
    facts = []
    one = CycNum.one(LEVEL)
    w = zeta(3).at_level(LEVEL)

    for i, m in enumerate(cat.m):
        facts.append(Fact(f"det M{i} = 1", m.det() == one, repr(m.det())))

    expected_orders = {1: 9, 2: 18, 3: 36, 4: 72, 5: 216}
    for i, n in expected_orders.items():
        got = cat.proj(i).order
        facts.append(Fact(f"|H{i}| = {n}", got == n, got))
    got = cat.h1_tilde.order
    facts.append(Fact("|H~1| = 27", got == 27, got))
    got = cat.h5_tilde.order
    facts.append(Fact("|H~5| = 648 = 2^3 * 3^4", got == 648 == 8 * 81, got))

    # nine involutions of H4, a single free transitive H1-orbit through M2
    h4 = cat.proj(4)
    invol = [x for x in h4.elements if h4.proj_order(x) == 2]
    facts.append(Fact("H4 has exactly 9 elements of order 2", len(invol) == 9, len(invol)))
    h1 = cat.proj(1)
    m2c = cat.m[2].proj_canonical()
    orbit = {(h * m2c * h.inverse()).proj_canonical().key() for h in h1.elements}
    inv_keys = {x.key() for x in invol}
    facts.append(
        Fact(
            "H1-conjugacy orbit of M2 is all 9 involutions (free, transitive)",
            orbit == inv_keys and len(orbit) == h1.order == 9,
            len(orbit),
        )
    )

    # 2-Sylow subgroups of H~5 are quaternion: order 8, one involution
    h5t = cat.h5_tilde
    syl = h5t.sylow(2)
    syl_keys = frozenset(syl.element_keys())
    conjugates = set()
    for g in h5t.elements:
        gi = g.inverse()
        conjugates.add(frozenset((g * x * gi).key() for x in syl.elements))
    ok_all = True
    for keys in conjugates:
        elems = [h5t.elements[h5t._index[k]] for k in keys]
        orders = sorted(m.order() for m in elems)
        nonab = any(
            (a * b) != (b * a) for a in elems for b in elems
        )
        ok_all = ok_all and len(elems) == 8 and orders.count(2) == 1 and nonab
    facts.append(
        Fact(
            "every 2-Sylow of H~5 has order 8, is non-abelian, one involution",
            ok_all and syl.order == 8,
            f"{len(conjugates)} conjugate Sylows",
        )
    )

    # H4 / H1 is the quaternion group
    q = cat.proj(4).quotient_table(cat.proj(1))
    facts.append(
        Fact(
            "H4/H1 is quaternion of order 8",
            q.is_quaternion8(),
            f"order {q.order}, abelian={q.is_abelian()}, involutions={q.count_of_order(2)}",
        )
    )

    # commutation of M0 and M1
    m0, m1 = cat.m[0], cat.m[1]
    lhs = m1 * m0 * m1.inverse()
    facts.append(
        Fact("M1 M0 M1^-1 = zeta_3^2 M0", lhs == m0.scale(w * w), repr(lhs.rows[0][0]))
    )
    comm = m0 * m1 * m0.inverse() * m1.inverse()
    facts.append(
        Fact("[M0, M1] = zeta_3 I", comm == CycMatrix.scalar(3, w), repr(comm.rows[0][0]))
    )

    # M5 normalizes H1 projectively
    m5 = cat.m[5]
    m5i = m5.inverse()
    norm_ok = all(
        (m5 * x * m5i).proj_canonical().key() in {e.key() for e in h1.elements}
        for x in h1.elements
    )
    facts.append(Fact("the image of M5 normalizes H1", norm_ok, norm_ok))

    # H~1 equals the inverse image of H1 in SL_3
    pre = cat.sl3_preimage(1, 1)
    same = pre.order == cat.h1_tilde.order and all(
        x in cat.h1_tilde for x in pre.generators
    )
    facts.append(Fact("H~1 = <M0,M1> is the SL_3-preimage of H1", same, pre.order))

    # M3^2 = M2 in PGL_3; record the exact scalar at the matrix level
    m3sq = cat.m[3] * cat.m[3]
    scal = None
    for i in range(3):
        for j in range(3):
            if not cat.m[2].rows[i][j].is_zero():
                scal = m3sq.rows[i][j] * cat.m[2].rows[i][j].inverse()
                break
        if scal is not None:
            break
    exact = m3sq == cat.m[2].scale(scal)
    facts.append(
        Fact(
            "M3^2 = M2 in PGL_3 (exact scalar recorded)",
            exact and scal.as_root_of_unity() is not None,
            f"scalar = {scal!r} = zeta{scal.as_root_of_unity()}",
        )
    )

    # H5 normalizes H1 (containment direction of the normalizer fact)
    h5 = cat.proj(5)
    h1_keys = {e.key() for e in h1.elements}
    ok = all(
        (r * cat.m[k] * r.inverse()).proj_canonical().key() in h1_keys
        for r in h5.elements
        for k in (0, 1)
    )
    facts.append(Fact("H5 normalizes H1", ok, ok))

    return facts
