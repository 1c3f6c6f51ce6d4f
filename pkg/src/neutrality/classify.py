"""Decision procedures for neutrality of finite matrix groups, dimensions 1-3.

Each classifier matches the input against the exhaustive catalog of
non-neutral families and emits a report whose NotNeutral verdicts carry
re-checkable certificates: family parameters, the diagonalizing conjugator,
and the coordinate permutation (or Hessian conjugator) realizing the match.

GL verdicts are two-valued (Neutral / NotNeutral): for the standard action
on affine space, neutral and rho-neutral coincide.  PGL verdicts use the
three-way scale including RhoNeutral and NeutralNotRhoNeutral.
"""

from dataclasses import dataclass, field
from math import gcd

from . import catalog as hessian_catalog
from .cyclo import CycNum, format_cyc, parse, root_of_unity, zeta
from .diaggrp import (
    DiagonalGroup,
    FamilySpec,
    InfinitePreimageError,
    ProjectiveDiagonalGroup,
    sl_preimage,
)
from .latcoh import GLattice, best_index_bound, permutation_summand_test
from .matgrp import (
    CycMatrix,
    MatrixGroup,
    ProjGroup,
    simultaneous_diagonalize,
)
from .nt import divisors, factorint, lcm

NOT_NEUTRAL = "NotNeutral"
NEUTRAL = "Neutral"
RHO_NEUTRAL = "RhoNeutral"
NEUTRAL_NOT_RHO = "NeutralNotRhoNeutral"
UNDETERMINED = "Undetermined"


class ClassificationError(ValueError):
    """Input outside the classifier's contract."""


@dataclass(frozen=True)
class FieldContext:
    """Base-field assumptions: characteristic and whether zeta_3 lies in it."""

    characteristic: int = 0
    contains_zeta3: bool = False

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or p == 1:
            raise ClassificationError("characteristic must be 0 or a prime")


@dataclass
class ClassificationReport:
    ambient: str
    dim: int
    verdict: str
    family: str = None
    parameters: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    def to_obj(self):
        return {
            "ambient": self.ambient,
            "dim": self.dim,
            "verdict": self.verdict,
            "family": self.family,
            "parameters": dict(self.parameters),
            "certificates": self.certificates,
        }


# -- serialization helpers -------------------------------------------------


def mat_to_obj(m: CycMatrix):
    return {
        "level": m.level,
        "rows": [[format_cyc(x) for x in row] for row in m.rows],
    }


def mat_from_obj(obj) -> CycMatrix:
    lv = int(obj["level"])
    return CycMatrix(
        [[parse(s, lv) for s in row] for row in obj["rows"]], lv
    )


def diag_to_obj(d: DiagonalGroup):
    c = d.canonical()
    return {"level": c.level, "hnf_basis": [list(r) for r in c.rows], "order": c.order}


# -- family builders --------------------------------------------------------


def proj_gl2_target(n):
    """<diag(1, zeta_n)> in PGL_2."""
    return ProjectiveDiagonalGroup.from_exponents(2, n, [(0, 1)])


def family_gl2(m, n):
    """<zeta_2m I, diag(zeta_2n^-1, zeta_2n)>: the non-neutral GL_2 family."""
    return sl_preimage(FamilySpec((2,), (m,), proj_gl2_target(n)))


def proj_ae(a, n, d):
    """<diag(zeta_a,1,1), diag(1,zeta_a,1), diag(zeta_an, zeta_an^d, 1)>."""
    return ProjectiveDiagonalGroup.from_exponents(
        3, a * n, [(n, 0, 0), (0, n, 0), (1, d, 0)]
    )


def proj_b(m, n):
    """<diag(zeta_2m, zeta_2m, 1), diag(zeta_2n, zeta_2n^-1, 1)>."""
    level = lcm(2 * m, 2 * n)
    return ProjectiveDiagonalGroup.from_exponents(
        3,
        level,
        [
            ((level // (2 * m)), (level // (2 * m)), 0),
            ((level // (2 * n)), -(level // (2 * n)), 0),
        ],
    )


def family_gl3_i(c, a, n, d):
    return sl_preimage(FamilySpec((3,), (c,), proj_ae(a, n, d)))


def family_gl3_ii(c1, c2, m, n):
    return sl_preimage(FamilySpec((2, 1), (c1, c2), proj_b(m, n)))


def d_parameter_solutions(n):
    """All d in [0, n) with d^2 - d + 1 == 0 mod n."""
    return [d for d in range(n) if (d * d - d + 1) % n == 0]


# -- GL_1 --------------------------------------------------------------------


def classify_gl1(g: MatrixGroup, ctx: FieldContext = FieldContext()):
    if g.n != 1:
        raise ClassificationError("classify_gl1 requires dimension 1")
    p = ctx.characteristic
    if p and g.order % p == 0:
        raise ClassificationError(
            f"a finite multiplicative group of order {g.order} does not embed "
            f"in characteristic {p}"
        )
    return ClassificationReport(
        ambient="GL", dim=1, verdict=NEUTRAL,
        certificates={"reason": "every finite subgroup of the multiplicative group is neutral"},
    )


# -- PGL_2 -------------------------------------------------------------------


def classify_pgl2(pbar: ProjGroup, ctx: FieldContext = FieldContext()):
    if pbar.n != 2:
        raise ClassificationError("classify_pgl2 requires dimension 2")
    p = ctx.characteristic
    if pbar.is_cyclic():
        n = pbar.order
        if p and n % p == 0:
            return ClassificationReport(
                "PGL", 2, RHO_NEUTRAL, family="PGL2-other",
                parameters={"cyclic_order": n},
                certificates={"reason": f"cyclic of order divisible by char {p}"},
            )
        if n % 2 == 0:
            return ClassificationReport(
                "PGL", 2, NOT_NEUTRAL, family="PGL2-cyclic-even",
                parameters={"n": n},
            )
        return ClassificationReport(
            "PGL", 2, NEUTRAL_NOT_RHO, family="PGL2-cyclic-odd",
            parameters={"n": n},
        )
    return ClassificationReport("PGL", 2, RHO_NEUTRAL, family="PGL2-other",
                                parameters={"order": pbar.order})


# -- GL_2 --------------------------------------------------------------------


def classify_gl2(g: MatrixGroup, ctx: FieldContext = FieldContext()):
    if g.n != 2:
        raise ClassificationError("classify_gl2 requires dimension 2")
    p = ctx.characteristic
    if g.is_abelian() and p and g.order % p == 0:
        raise ClassificationError(
            f"an abelian group of order {g.order} is not diagonalizable in "
            f"characteristic {p}"
        )
    if p == 2:
        return ClassificationReport(
            "GL", 2, NEUTRAL,
            certificates={"reason": "characteristic 2: every finite subgroup is neutral"},
        )
    if not g.is_abelian():
        return ClassificationReport(
            "GL", 2, NEUTRAL,
            certificates={"reason": "non-abelian: not of the one non-neutral family shape"},
        )
    conj, d = simultaneous_diagonalize(g)
    rep = classify_gl2_diagonal(d, ctx)
    if not conj.is_identity():
        rep.certificates["diagonalizer"] = mat_to_obj(conj)
    return rep


def classify_gl2_diagonal(d: DiagonalGroup, ctx: FieldContext = FieldContext()):
    """Family matching for an already-diagonal group (lattice level)."""
    p = ctx.characteristic
    if p and d.order % p == 0:
        raise ClassificationError(
            f"a diagonal group of order {d.order} does not exist in characteristic {p}"
        )
    if p == 2:
        return ClassificationReport(
            "GL", 2, NEUTRAL,
            certificates={"reason": "characteristic 2: every finite subgroup is neutral"},
        )
    order = d.order
    if order % 2 == 0:
        for m in divisors(order // 2):
            n = order // (2 * m)
            if p and (m * n) % p == 0:
                continue
            fam = family_gl2(m, n)
            sigma = d.equals_up_to_permutation(fam)
            if sigma is not None:
                return ClassificationReport(
                    "GL", 2, NOT_NEUTRAL, family="GL2-main",
                    parameters={"m": m, "n": n},
                    certificates={
                        "permutation": list(sigma),
                        "diagonal_form": diag_to_obj(d),
                        "scalar_order": d.scalar_order(),
                    },
                )
    return ClassificationReport(
        "GL", 2, NEUTRAL,
        certificates={
            "diagonal_form": diag_to_obj(d),
            "reason": "no determinant-character family matches",
        },
    )


# -- Hessian normal form -----------------------------------------------------


def _cube_root_of_unity_value(v: CycNum):
    """A cube root of the root of unity v, via the compatible system."""
    nk = v.as_root_of_unity()
    if nk is None:
        raise ClassificationError("expected a root of unity")
    n, k = nk
    return root_of_unity(3 * n, k)


def hessian_conjugators(g: MatrixGroup, target_idx, cat=None):
    """Conjugators C with C^-1 (image of g) C equal to the Hessian group
    H_2 (target_idx 2) or H_3 (target_idx 3), one per residual coset.

    Searches a generator pair: x of projective order 3 and y with
    y x y^-1 = zeta_3^2 x exactly, then builds the basis of eigenvectors
    cyclically permuted by the rescaled y, which lands the pair on
    (scalar * M0, M1).  The remaining freedom lies in the normalizer of
    H_1, which is covered by the catalog's H_5 coset representatives.
    """
    cat = cat or hessian_catalog.build()
    target = cat.proj(target_idx)
    pbar = g.projective_image()
    if pbar.order != target.order:
        return []
    w = zeta(3)
    pair = None
    cands = [
        x for x in g.elements
        if not x.is_scalar() and (x * x * x).is_scalar()
    ]
    for x in cands:
        for y in g.elements:
            if y.is_scalar():
                continue
            lhs = y * x
            if lhs == (x * y).scale(w * w):
                pair = (x, y)
                break
            if lhs == (x * y).scale(w):
                pair = (x, y.inverse())
                break
        if pair:
            break
    if pair is None:
        return []
    x, y = pair
    # rescale y so that y^3 = identity
    y3 = (y * y * y).scalar_value()
    if y3 is None:
        raise AssertionError("cubing the cycling element must give a scalar")
    mu = _cube_root_of_unity_value(y3.inverse())
    ys = y.scale(mu)
    # eigenvector of x for its least eigenvalue, then the y-orbit as basis
    om = x.order(cap=g.order + 1)
    lv = lcm(lcm(x.level, om), ys.level)
    xl = x.at_level(lv)
    evs = sorted(
        {root_of_unity(om, j).as_root_of_unity() for j in range(om)}
    )
    v1 = None
    for nk in evs:
        ev = root_of_unity(*nk).at_level(lcm(lv, nk[0]))
        xe = xl.at_level(ev.level)
        shifted = CycMatrix(
            [
                [xe.rows[i][k] - ev if i == k else xe.rows[i][k] for k in range(3)]
                for i in range(3)
            ],
            ev.level,
        )
        ker = shifted.kernel_basis()
        if ker:
            v1 = ker[0]
            lv = ev.level
            break
    if v1 is None:
        raise AssertionError("finite-order matrix without eigenvalues")
    ysl = ys.at_level(lv)
    cols = [v1]
    for _ in range(2):
        prev = cols[-1]
        cols.append(
            tuple(
                sum(
                    (ysl.rows[i][k] * prev[k] for k in range(3)),
                    start=CycNum.zero(lv),
                )
                for i in range(3)
            )
        )
    p = CycMatrix([[cols[j][i] for j in range(3)] for i in range(3)], lv)
    if p.det().is_zero():
        raise AssertionError("eigenvector orbit failed to give a basis")
    conj0 = pbar.conjugate(p)
    # residual adjustments: coset representatives of H_t in H_5
    h5 = cat.proj(5)
    tkeys = {e.at_level(lcm(target.level, h5.level)).key() for e in target.elements}
    reps = []
    lvh = lcm(target.level, h5.level)
    for r in h5.elements:
        if all(
            (rep.at_level(lvh) * r.at_level(lvh).inverse()).proj_canonical().key()
            not in tkeys
            for rep in reps
        ):
            reps.append(r)
    out = []
    for r in reps:
        moved = conj0.conjugate(r.inverse())
        if moved.same_elements(target):
            out.append(p * r.inverse())
    return out


# -- PGL_3 -------------------------------------------------------------------


def classify_pgl3(pbar: ProjGroup, ctx: FieldContext = FieldContext()):
    if pbar.n != 3:
        raise ClassificationError("classify_pgl3 requires dimension 3")
    if ctx.characteristic != 0:
        raise ClassificationError("dim-3 classification requires characteristic 0")
    if pbar.commutators_trivial():
        src = pbar.source
        if src is None or not src.is_abelian():
            raise ClassificationError(
                "projective group needs an abelian finite linear source"
            )
        conj, dlin = simultaneous_diagonalize(src)
        pd = dlin.projective()
        q = pd.order
        if q != pbar.order:
            raise AssertionError("projective order changed under diagonalization")
        matches = _match_projective_diagonal(pd, q)
        certs = {"diagonalizer": mat_to_obj(conj)} if not conj.is_identity() else {}
        if "a" in matches or "b" in matches:
            tag, params, sigma = matches.get("a") or matches.get("b")
            return ClassificationReport(
                "PGL", 3, NOT_NEUTRAL, family=f"PGL3-{tag}", parameters=params,
                certificates={**certs, "permutation": list(sigma)},
            )
        if "e" in matches:
            tag, params, sigma = matches["e"]
            return ClassificationReport(
                "PGL", 3, NEUTRAL_NOT_RHO, family="PGL3-e", parameters=params,
                certificates={**certs, "permutation": list(sigma)},
            )
        return ClassificationReport("PGL", 3, RHO_NEUTRAL, certificates=certs)
    cat = hessian_catalog.build()
    src = pbar.source
    if src is None:
        raise ClassificationError("projective group needs a finite linear source")
    if pbar.order == 18:
        conjs = hessian_conjugators(src, 2, cat)
        if conjs:
            return ClassificationReport(
                "PGL", 3, NOT_NEUTRAL, family="PGL3-c",
                certificates={"conjugator": mat_to_obj(conjs[0])},
            )
    if pbar.order == 36:
        conjs = hessian_conjugators(src, 3, cat)
        if conjs:
            verdict = RHO_NEUTRAL if ctx.contains_zeta3 else NOT_NEUTRAL
            return ClassificationReport(
                "PGL", 3, verdict, family="PGL3-d",
                parameters={"contains_zeta3": ctx.contains_zeta3},
                certificates={"conjugator": mat_to_obj(conjs[0])},
            )
    return ClassificationReport("PGL", 3, RHO_NEUTRAL)


def _match_projective_diagonal(pd: ProjectiveDiagonalGroup, q):
    """Match a diagonal subgroup of PGL_3 against the abelian type list.

    Returns {tag: (tag, params, sigma)} for the types that match; the
    (a)/(e) split is by divisibility of the group order by 3.
    """
    matches = {}
    for a in divisors(q):
        if q % (a * a):
            continue
        n = q // (a * a)
        for d in d_parameter_solutions(n):
            cand = proj_ae(a, n, d)
            if cand.order != q:
                continue
            sigma = pd.equals_up_to_permutation(cand)
            if sigma is not None:
                tag = "a" if (a * n) % 3 == 0 else "e"
                if tag not in matches:
                    matches[tag] = (tag, {"a": a, "n": n, "d": d}, sigma)
                break
    if q % 2 == 0:
        for m in divisors(q // 2):
            n = q // (2 * m)
            cand = proj_b(m, n)
            if cand.order != q:
                continue
            sigma = pd.equals_up_to_permutation(cand)
            if sigma is not None:
                matches.setdefault("b", ("b", {"m": m, "n": n}, sigma))
                break
    if "e" in matches and "b" in matches:
        raise AssertionError(
            "inconsistent type detection: a group matched both (b) and (e)"
        )
    return matches


# -- GL_3 --------------------------------------------------------------------


def classify_gl3(g: MatrixGroup, ctx: FieldContext = FieldContext()):
    if g.n != 3:
        raise ClassificationError("classify_gl3 requires dimension 3")
    if ctx.characteristic != 0:
        raise ClassificationError("dim-3 classification requires characteristic 0")
    if g.is_abelian():
        conj, d = simultaneous_diagonalize(g)
        rep = classify_gl3_diagonal(d, ctx)
        if not conj.is_identity():
            rep.certificates["diagonalizer"] = mat_to_obj(conj)
        return rep
    return _classify_gl3_nonabelian(g, ctx)


def classify_gl3_diagonal(d: DiagonalGroup, ctx: FieldContext = FieldContext()):
    order = d.order
    # family (i): preimages in SL_3^(c) of the (a)/(e) projective groups
    if order % 3 == 0:
        for c in divisors(order // 3):
            q = order // (3 * c)
            for a in divisors(q):
                if q % (a * a):
                    continue
                n = q // (a * a)
                for dd in d_parameter_solutions(n):
                    cand = family_gl3_i(c, a, n, dd)
                    if cand.order != order:
                        continue
                    sigma = d.equals_up_to_permutation(cand)
                    if sigma is not None:
                        return ClassificationReport(
                            "GL", 3, NOT_NEUTRAL, family="GL3-i",
                            parameters={"c": c, "a": a, "n": n, "d": dd},
                            certificates={
                                "permutation": list(sigma),
                                "diagonal_form": diag_to_obj(d),
                                "scalar_order": d.scalar_order(),
                            },
                        )
    # family (ii): preimages in SL_(2,1)^(c1,c2) of the two-parameter family
    t = d.scalar_order()
    if order % t == 0 and (order // t) % 2 == 0:
        q = order // t
        exp = d.exponent()
        seen = set()
        for m in divisors(q // 2):
            n = q // (2 * m)
            for c1 in range(exp):
                for sign in (1, -1):
                    c2 = sign * t - 2 * c1
                    try:
                        cand = family_gl3_ii(c1, c2, m, n)
                    except InfinitePreimageError:
                        continue
                    if cand.order != order or cand.scalar_order() != t:
                        continue
                    key = cand.key()
                    if key in seen:
                        continue
                    seen.add(key)
                    sigma = d.equals_up_to_permutation(cand)
                    if sigma is not None:
                        return ClassificationReport(
                            "GL", 3, NOT_NEUTRAL, family="GL3-ii",
                            parameters={"m": m, "n": n, "c1": c1, "c2": c2},
                            certificates={
                                "permutation": list(sigma),
                                "diagonal_form": diag_to_obj(d),
                                "scalar_order": t,
                            },
                        )
    return ClassificationReport(
        "GL", 3, NEUTRAL,
        certificates={
            "diagonal_form": diag_to_obj(d),
            "reason": "no determinant-character family matches",
        },
    )


def _classify_gl3_nonabelian(g: MatrixGroup, ctx: FieldContext):
    cat = hessian_catalog.build()
    order = g.order
    for family, target_idx, base in (("GL3-iii", 2, 54), ("GL3-iv", 3, 108)):
        if order % base:
            continue
        c = order // base
        conjs = hessian_conjugators(g, target_idx, cat)
        if not conjs:
            continue
        pre = cat.sl3_preimage(target_idx, c)
        lv = lcm(g.level, pre.level)
        pre_keys = {m.at_level(lv).key() for m in pre.elements}
        for cj in conjs:
            moved = g.conjugate(cj)
            lv2 = lcm(moved.level, lv)
            moved_keys = {m.at_level(lv2).key() for m in moved.elements}
            if moved_keys == {k for k in _lift_keys(pre, lv2)}:
                if family == "GL3-iv" and ctx.contains_zeta3:
                    return ClassificationReport(
                        "GL", 3, NEUTRAL, family=None,
                        parameters={},
                        certificates={
                            "reason": "matches the H3-preimage family, which is "
                            "neutral when the base field contains zeta_3",
                            "conjugator": mat_to_obj(cj),
                            "c": c,
                        },
                    )
                return ClassificationReport(
                    "GL", 3, NOT_NEUTRAL, family=family,
                    parameters={"c": c},
                    certificates={"conjugator": mat_to_obj(cj)},
                )
    return ClassificationReport(
        "GL", 3, NEUTRAL,
        certificates={"reason": "no Hessian-preimage family matches"},
    )


def _lift_keys(group: MatrixGroup, lv):
    return {m.at_level(lv).key() for m in group.elements}


# -- dispatcher ---------------------------------------------------------------


def classify(g: MatrixGroup, ambient="GL", ctx: FieldContext = FieldContext()):
    """Classify a finite matrix group in its ambient GL_n or PGL_n."""
    if ambient == "GL":
        if g.n == 1:
            return classify_gl1(g, ctx)
        if g.n == 2:
            return classify_gl2(g, ctx)
        if g.n == 3:
            return classify_gl3(g, ctx)
        raise ClassificationError("GL classification supports dimensions 1-3")
    if ambient == "PGL":
        if g.n == 1:
            return ClassificationReport(
                "PGL", 1, RHO_NEUTRAL,
                certificates={"reason": "the only subgroup of PGL_1 is trivial"},
            )
        pbar = g.projective_image()
        if g.n == 2:
            return classify_pgl2(pbar, ctx)
        if g.n == 3:
            return classify_pgl3(pbar, ctx)
        raise ClassificationError("PGL classification supports dimensions 1-3")
    raise ClassificationError(f"unknown ambient {ambient!r}")


# -- permutation-lattice criterion --------------------------------------------


@dataclass
class CriterionReport:
    verdict: str
    n: int
    normalizer_order: int
    basis: list = None
    witness_subgroup: list = None
    witness_h1: tuple = None
    index_bound: tuple = None  # (iota1, iota2, product)
    note: str = ""

    def to_obj(self):
        out = {
            "verdict": self.verdict,
            "dim": self.n,
            "normalizer_permutations": self.normalizer_order,
        }
        if self.basis is not None:
            out["permutation_basis"] = [list(v) for v in self.basis]
        if self.witness_h1 is not None:
            out["h1_witness"] = {
                "subgroup": [list(map(list, m)) for m in self.witness_subgroup],
                "divisors": list(self.witness_h1),
            }
        if self.index_bound is not None:
            out["index_bound"] = {
                "iota1": self.index_bound[0],
                "iota2": self.index_bound[1],
                "divides": self.index_bound[2],
            }
        if self.note:
            out["note"] = self.note
        return out


def diag_criterion(d: DiagonalGroup, box=None, node_cap=200000):
    """The permutation-lattice sufficient criterion for neutrality.

    Neutral when the character lattice of the quotient torus has a basis
    permuted by the normalizer permutations.  Never returns NotNeutral:
    failures yield Undetermined plus the best divisibility bound found for
    the obstruction index.
    """
    if not d.axis_characters_distinct():
        raise ClassificationError(
            "criterion requires one-dimensional eigenspaces "
            "(distinct axis characters)"
        )
    perms = d.normalizer_perms()
    x = d.character_lattice()
    glat = GLattice(d.n, [list(r) for r in x], perms)
    res = permutation_summand_test(glat, box=box, node_cap=node_cap)
    if res.verdict == "yes":
        return CriterionReport(
            verdict=NEUTRAL,
            n=d.n,
            normalizer_order=len(perms),
            basis=res.basis,
        )
    iota1, iota2, prod, sub, rows = best_index_bound(glat, box=box)
    note = (
        "criterion is one-sided: no permutation basis found; "
        "the obstruction index divides the reported bound"
    )
    return CriterionReport(
        verdict=UNDETERMINED,
        n=d.n,
        normalizer_order=len(perms),
        witness_subgroup=res.witness_subgroup,
        witness_h1=res.witness_h1,
        index_bound=(iota1, iota2, prod),
        note=note,
    )


# -- presentation conversion ---------------------------------------------------


def _bezout(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def convert_presentation(direction, params):
    """Convert between the two diagonal-family presentations.

    direction "12": (m, n) -> (a, n, d) with a = gcd(m, n) and d built from
    a Bezout relation; direction "21": (a, n, d) -> (m, n), requiring
    d = +-1 modulo each prime power dividing 2n.  Round-trips reproduce the
    same diagonal group.
    """
    if direction == "12":
        m, n = int(params["m"]), int(params["n"])
        if m < 1 or n < 1:
            raise ClassificationError("m, n must be positive")
        a = gcd(m, n)
        mp, np_ = m // a, n // a
        x, y = _bezout(mp, np_)
        assert x * mp + y * np_ == 1
        n_out = mp * np_
        dd = (y * np_ - x * mp) % (2 * n_out)
        return {"a": a, "n": n_out, "d": dd}
    if direction == "21":
        a, n, dd = int(params["a"]), int(params["n"]), int(params["d"])
        if a < 1 or n < 1:
            raise ClassificationError("a, n must be positive")
        for p, e in factorint(2 * n):
            q = p**e
            if dd % q != 1 % q and dd % q != (q - 1) % q:
                raise ClassificationError(
                    f"d = {dd} is not +-1 modulo the prime power {q} dividing 2n"
                )
        t1 = max(t for t in divisors(2 * n) if dd % t == 1 % t)
        t2 = max(t for t in divisors(2 * n) if dd % t == (t - 1) % t)
        if t1 % 2 or t2 % 2:
            raise ClassificationError("d must be odd")
        mp, np_ = t1 // 2, t2 // 2
        if mp * np_ != n or gcd(mp, np_) != 1:
            raise ClassificationError(
                "d does not split 2n into coprime +1/-1 parts"
            )
        return {"m": a * mp, "n": a * np_}
    raise ClassificationError('direction must be "12" or "21"')


def presentation_group(kind, params):
    """The diagonal group described by either presentation, for rechecks."""
    if kind == "1":
        m, n = int(params["m"]), int(params["n"])
        return family_gl2(m, n)
    a, n, dd = int(params["a"]), int(params["n"]), int(params["d"])
    level = 2 * a * n
    return DiagonalGroup.from_exponents(
        2,
        level,
        [
            (2 * n, 0),
            (0, 2 * n),
            (1, dd),
        ],
    )


# -- quotient singularities ------------------------------------------------------


@dataclass
class SingularityReport:
    kind: str  # "smooth" | "type-R" | "not-type-R" | "undetermined"
    classification: ClassificationReport = None
    note: str = ""

    def to_obj(self):
        out = {"singularity": self.kind}
        if self.classification is not None:
            out["classification"] = self.classification.to_obj()
        if self.note:
            out["note"] = self.note
        return out


def singularity_type_r(g: MatrixGroup, ctx: FieldContext = FieldContext()):
    """Type-R status of the quotient singularity at the origin.

    Generated by pseudo-reflections: the quotient is smooth.  No
    pseudo-reflections: type R is equivalent to neutrality.  Otherwise only
    the negative direction transfers, so a Neutral verdict leaves the
    singularity undetermined.
    """
    if g.n > 3:
        raise ClassificationError("supported in dimensions 1-3 only")
    if g.n == 3 and ctx.characteristic != 0:
        raise ClassificationError("dim-3 singularities require characteristic 0")
    has_pr, pr_sub, pr_generates = g.pseudo_reflection_analysis()
    if pr_generates:
        return SingularityReport(
            kind="smooth",
            note="generated by pseudo-reflections: the quotient is smooth",
        )
    rep = classify(g, "GL", ctx)
    if not has_pr:
        if rep.verdict == NEUTRAL:
            return SingularityReport(kind="type-R", classification=rep)
        return SingularityReport(kind="not-type-R", classification=rep)
    if rep.verdict == NOT_NEUTRAL:
        return SingularityReport(
            kind="not-type-R", classification=rep,
            note="pseudo-reflections present; non-neutrality still excludes type R",
        )
    return SingularityReport(
        kind="undetermined", classification=rep,
        note="pseudo-reflections present but not generating: neutrality does "
        "not decide type R here",
    )


# -- certificate rechecking -------------------------------------------------------


def recheck(report: ClassificationReport, g: MatrixGroup, ctx: FieldContext = FieldContext()):
    """Rebuild the matched family from the report parameters and re-match.

    Returns True when the certificate reproduces; raises on malformed
    certificates.  Reports with verdicts other than NotNeutral recheck
    trivially.
    """
    if report.verdict != NOT_NEUTRAL:
        return True
    params = report.parameters
    if report.family == "GL2-main":
        fam = family_gl2(int(params["m"]), int(params["n"]))
        _, d = simultaneous_diagonalize(g)
        return d.equals_up_to_permutation(fam) is not None
    if report.family == "GL3-i":
        fam = family_gl3_i(
            int(params["c"]), int(params["a"]), int(params["n"]), int(params["d"])
        )
        _, d = simultaneous_diagonalize(g)
        return d.equals_up_to_permutation(fam) is not None
    if report.family == "GL3-ii":
        fam = family_gl3_ii(
            int(params["c1"]), int(params["c2"]), int(params["m"]), int(params["n"])
        )
        _, d = simultaneous_diagonalize(g)
        return d.equals_up_to_permutation(fam) is not None
    if report.family in ("GL3-iii", "GL3-iv"):
        cat = hessian_catalog.build()
        idx = 2 if report.family == "GL3-iii" else 3
        pre = cat.sl3_preimage(idx, int(params["c"]))
        cj = mat_from_obj(report.certificates["conjugator"])
        moved = g.conjugate(cj)
        lv = lcm(moved.level, pre.level)
        return _lift_keys(moved, lv) == _lift_keys(pre, lv)
    if report.family in ("PGL2-cyclic-even",):
        pbar = g.projective_image()
        return pbar.is_cyclic() and pbar.order == int(params["n"])
    if report.family == "PGL3-c":
        return bool(hessian_conjugators(g, 2))
    if report.family == "PGL3-d":
        return bool(hessian_conjugators(g, 3))
    if report.family in ("PGL3-a", "PGL3-b"):
        pbar = g.projective_image()
        conj, dlin = simultaneous_diagonalize(pbar.source)
        pd = dlin.projective()
        if report.family == "PGL3-a":
            cand = proj_ae(int(params["a"]), int(params["n"]), int(params["d"]))
        else:
            cand = proj_b(int(params["m"]), int(params["n"]))
        return pd.equals_up_to_permutation(cand) is not None
    raise ClassificationError(f"cannot recheck family {report.family!r}")
