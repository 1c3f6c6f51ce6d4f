"""Finite matrix groups over cyclotomic fields.

Matrices carry exact CycNum entries at a common level.  Groups are closed
element sets produced by breadth-first multiplication from generators, so
element order within a group is deterministic.  Groups are immutable once
closed; queries are pure.
"""

from fractions import Fraction

from .cyclo import CycNum, root_of_unity
from .diaggrp import DiagonalGroup
from .nt import lcm, lcm_list


class GroupTooLargeError(RuntimeError):
    """Raised when a closure exceeds its element cap."""


DEFAULT_CAP = 20000


class CycMatrix:
    """Immutable square matrix over Q(zeta_level)."""

    __slots__ = ("n", "level", "rows", "_key")

    def __init__(self, rows, level=None):
        n = len(rows)
        ents = []
        lv = level or 1
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            conv = []
            for x in row:
                if not isinstance(x, CycNum):
                    x = CycNum.from_fraction(Fraction(x), 1)
                conv.append(x)
                lv = lcm(lv, x.level)
            ents.append(conv)
        self.n = n
        self.level = lv
        self.rows = tuple(
            tuple(x.at_level(lv) for x in row) for row in ents
        )
        self._key = None

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(n, level=1):
        one = CycNum.one(level)
        zero = CycNum.zero(level)
        return CycMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)], level
        )

    @staticmethod
    def diagonal(entries, level=None):
        entries = [
            e if isinstance(e, CycNum) else CycNum.from_fraction(Fraction(e), 1)
            for e in entries
        ]
        lv = level or lcm_list([e.level for e in entries])
        zero = CycNum.zero(lv)
        n = len(entries)
        return CycMatrix(
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)], lv
        )

    @staticmethod
    def scalar(n, value):
        if not isinstance(value, CycNum):
            value = CycNum.from_fraction(Fraction(value), 1)
        return CycMatrix.diagonal([value] * n)

    @staticmethod
    def permutation(sigma, level=1):
        """Matrix sending e_i to e_sigma(i)."""
        n = len(sigma)
        one = CycNum.one(level)
        zero = CycNum.zero(level)
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            rows[sigma[i]][i] = one
        return CycMatrix(rows, level)

    # -- representation ------------------------------------------------

    def key(self):
        """Canonical same-level identity for hashing inside closures."""
        if self._key is None:
            self._key = (
                self.level,
                tuple(tuple((x.num, x.den) for x in row) for row in self.rows),
            )
        return self._key

    def at_level(self, m):
        if m == self.level:
            return self
        return CycMatrix(
            [[x.at_level(m) for x in row] for row in self.rows], m
        )

    def entry(self, i, j):
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.level == other.level:
            return self.key() == other.key()
        m = lcm(self.level, other.level)
        return self.at_level(m).key() == other.at_level(m).key()

    def __hash__(self):
        return hash(tuple(tuple(hash(x) for x in row) for row in self.rows))

    def __repr__(self):
        from .cyclo import format_cyc

        body = "; ".join(
            ", ".join(format_cyc(x) for x in row) for row in self.rows
        )
        return f"CycMatrix[{body}]"

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, CycNum):
            return self.scale(other)
        if not isinstance(other, CycMatrix):
            return NotImplemented
        a, b = self, other
        if a.level != b.level:
            m = lcm(a.level, b.level)
            a, b = a.at_level(m), b.at_level(m)
        n = a.n
        zero = CycNum.zero(a.level)
        rows = []
        for i in range(n):
            arow = a.rows[i]
            out = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    x = arow[k]
                    if not x.is_zero():
                        y = b.rows[k][j]
                        if not y.is_zero():
                            acc = acc + x * y
                out.append(acc)
            rows.append(out)
        return CycMatrix(rows, a.level)

    def scale(self, c):
        if not isinstance(c, CycNum):
            c = CycNum.from_fraction(Fraction(c), 1)
        lv = lcm(self.level, c.level)
        c = c.at_level(lv)
        return CycMatrix(
            [[c * x.at_level(lv) for x in row] for row in self.rows], lv
        )

    def __neg__(self):
        return self.scale(-1)

    def det(self):
        """Determinant by exact Gaussian elimination with division."""
        n = self.n
        m = [list(row) for row in self.rows]
        det = CycNum.one(self.level)
        for c in range(n):
            piv = None
            for r in range(c, n):
                if not m[r][c].is_zero():
                    piv = r
                    break
            if piv is None:
                return CycNum.zero(self.level)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for r in range(c + 1, n):
                if not m[r][c].is_zero():
                    f = m[r][c] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return det

    def inverse(self):
        n = self.n
        lv = self.level
        m = [list(row) + list(CycMatrix.identity(n, lv).rows[i]) for i, row in enumerate(self.rows)]
        for c in range(n):
            piv = None
            for r in range(c, n):
                if not m[r][c].is_zero():
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = m[c][c].inverse()
            m[c] = [inv * x for x in m[c]]
            for r in range(n):
                if r != c and not m[r][c].is_zero():
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return CycMatrix([row[n:] for row in m], lv)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = CycMatrix.identity(self.n, self.level)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    # -- structure queries -------------------------------------------------

    def is_identity(self):
        return self == CycMatrix.identity(self.n, self.level)

    def scalar_value(self):
        """The scalar c with self == c * I, or None."""
        d = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                x = self.rows[i][j]
                if i == j:
                    if x != d:
                        return None
                elif not x.is_zero():
                    return None
        return d

    def is_scalar(self):
        return self.scalar_value() is not None

    def order(self, cap=4096):
        """Multiplicative order; raises GroupTooLargeError beyond cap."""
        acc = self
        k = 1
        ident = CycMatrix.identity(self.n, self.level)
        while k <= cap:
            if acc == ident:
                return k
            acc = acc * self
            k += 1
        raise GroupTooLargeError("element order exceeds cap (infinite order?)")

    def proj_canonical(self):
        """Canonical representative of the class modulo scalars: the first
        nonzero entry (row-major) is scaled to 1."""
        for row in self.rows:
            for x in row:
                if not x.is_zero():
                    if x.is_one():
                        return self
                    return self.scale(x.inverse())
        raise ZeroDivisionError("zero matrix has no projective class")

    def kernel_basis(self):
        """Column vectors spanning the kernel, in reduced echelon form."""
        n = self.n
        lv = self.level
        m = [list(row) for row in self.rows]
        pivots = []
        r = 0
        for c in range(n):
            piv = None
            for i in range(r, n):
                if not m[i][c].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * x for x in m[r]]
            for i in range(n):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        free = [c for c in range(n) if c not in pivots]
        basis = []
        zero = CycNum.zero(lv)
        one = CycNum.one(lv)
        for fc in free:
            vec = [zero] * n
            vec[fc] = one
            for ri, pc in enumerate(pivots):
                vec[pc] = -m[ri][fc]
            basis.append(tuple(vec))
        return basis


def mat_from_exponents(n, level, vec):
    """Diagonal matrix with entries zeta_level^(v_i)."""
    return CycMatrix.diagonal([root_of_unity(level, v % level) for v in vec], level)


class MatrixGroup:
    """A finite subgroup of GL_n(Q(zeta)) as a closed element set."""

    def __init__(self, generators, elements):
        self.n = generators[0].n if generators else elements[0].n
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.level = self.elements[0].level
        self._index = {m.key(): i for i, m in enumerate(self.elements)}

    @staticmethod
    def generate(generators, cap=DEFAULT_CAP):
        """Breadth-first closure of the generators; deterministic order."""
        if not generators:
            raise ValueError("need at least one generator (use identity)")
        n = generators[0].n
        lv = lcm_list([g.level for g in generators])
        gens = [g.at_level(lv) for g in generators]
        for g in gens:
            if g.n != n:
                raise ValueError("generators must share a dimension")
            if g.det().is_zero():
                raise ValueError("generators must be invertible")
        ident = CycMatrix.identity(n, lv)
        elems = {ident.key(): ident}
        frontier = [ident]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = g * x
                    k = y.key()
                    if k not in elems:
                        if len(elems) >= cap:
                            raise GroupTooLargeError(
                                f"group closure exceeded cap {cap}"
                            )
                        elems[k] = y
                        new.append(y)
            frontier = new
        return MatrixGroup(gens, list(elems.values()))

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, m):
        if not isinstance(m, CycMatrix):
            return False
        if m.level == self.level:
            return m.key() in self._index
        if self.level % m.level == 0:
            return m.at_level(self.level).key() in self._index
        lv = lcm(m.level, self.level)
        target = m.at_level(lv).key()
        return any(e.at_level(lv).key() == target for e in self.elements)

    def element_keys(self):
        return set(self._index)

    def is_abelian(self):
        gens = self.generators
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if a * b != b * a:
                    return False
        return True

    def inverse_of(self, m):
        return m.inverse()

    def subgroup(self, gens):
        """Closure of a subset of this group (stays within the element set)."""
        sub = MatrixGroup.generate(list(gens) or [CycMatrix.identity(self.n, self.level)],
                                   cap=self.order + 1)
        for e in sub.elements:
            if e not in self:
                raise ValueError("generators do not lie in the group")
        return sub

    # -- invariants -----------------------------------------------------

    def scalar_subgroup(self):
        """(c, zeta_c * I): the cyclic group of scalars in G."""
        orders = [1]
        for m in self.elements:
            v = m.scalar_value()
            if v is not None and not v.is_one():
                n_, _ = v.as_root_of_unity()
                orders.append(n_)
        c = lcm_list(orders)
        gen = CycMatrix.scalar(self.n, root_of_unity(c, 1))
        if gen not in self:
            raise AssertionError("scalar subgroup is not cyclic of computed order")
        return c, gen

    def projective_image(self):
        return ProjGroup.from_matrix_group(self)

    def conjugate(self, p):
        """The group p^-1 G p."""
        pinv = p.inverse()
        gens = [pinv * g * p for g in self.generators]
        elems = [pinv * g * p for g in self.elements]
        return MatrixGroup(gens, elems)

    def sylow(self, p):
        """A Sylow p-subgroup, by normalizer extension over the element set."""
        if self.order % p:
            raise ValueError(f"{p} does not divide the group order {self.order}")
        target = 1
        o = self.order
        while o % p == 0:
            target *= p
            o //= p
        # start from a p-element of maximal order
        best = None
        for m in self.elements:
            om = m.order(cap=self.order)
            if om > 1 and target % om == 0 and (best is None or om > best[0]):
                best = (om, m)
        if best is None:
            raise AssertionError("no p-element found (Cauchy violation?)")
        current = self.subgroup([best[1]])
        while current.order < target:
            ext = None
            cur_keys = current.element_keys()
            norm = [
                x for x in self.elements
                if all((x * h * x.inverse()).key() in cur_keys for h in current.generators)
            ]
            for x in norm:
                if x.key() in cur_keys:
                    continue
                ox = x.order(cap=self.order)
                if target % ox == 0 and ox > 1:
                    cand = self.subgroup(list(current.generators) + [x])
                    if target % cand.order == 0:
                        ext = cand
                        break
            if ext is None:
                raise AssertionError("Sylow extension failed")
            current = ext
        return current

    def element_invariants(self, m=None):
        return [element_invariants(x) for x in self.elements] if m is None else element_invariants(m)

    def pseudo_reflection_analysis(self):
        """(has_any, subgroup generated by pseudo-reflections, generates G)."""
        prs = [m for m in self.elements if is_pseudo_reflection(m)]
        if not prs:
            trivial = self.subgroup([CycMatrix.identity(self.n, self.level)])
            return False, trivial, self.order == 1
        sub = self.subgroup(prs)
        return True, sub, sub.order == self.order


class ElementInvariants:
    __slots__ = ("order", "det", "eigenvalues", "is_scalar", "is_pseudo_reflection")

    def __init__(self, order, det, eigenvalues, is_scalar, is_pr):
        self.order = order
        self.det = det
        self.eigenvalues = eigenvalues
        self.is_scalar = is_scalar
        self.is_pseudo_reflection = is_pr

    def __repr__(self):
        return (
            f"ElementInvariants(order={self.order}, det={self.det!r}, "
            f"eig={self.eigenvalues}, scalar={self.is_scalar}, "
            f"pseudo_reflection={self.is_pseudo_reflection})"
        )


def eigenvalue_multiset(m, order=None):
    """Eigenvalues of a finite-order matrix as sorted (n, k) pairs with
    multiplicity, found by kernel dimensions of (m - zeta I)."""
    om = order or m.order()
    lv = lcm(m.level, om)
    mm = m.at_level(lv)
    out = []
    total = 0
    for j in range(om):
        ev = root_of_unity(om, j).at_level(lv)
        shifted = CycMatrix(
            [
                [
                    mm.rows[i][k] - ev if i == k else mm.rows[i][k]
                    for k in range(m.n)
                ]
                for i in range(m.n)
            ],
            lv,
        )
        mult = len(shifted.kernel_basis())
        if mult:
            nk = ev.as_root_of_unity()
            out.extend([nk] * mult)
            total += mult
    if total != m.n:
        raise AssertionError("eigenvalue search did not exhaust the space")
    return tuple(sorted(out))


def is_pseudo_reflection(m):
    """Finite order with exactly one eigenvalue different from 1."""
    if m.is_identity():
        return False
    one_eig = CycMatrix(
        [
            [
                m.rows[i][k] - CycNum.one(m.level) if i == k else m.rows[i][k]
                for k in range(m.n)
            ]
            for i in range(m.n)
        ],
        m.level,
    )
    return len(one_eig.kernel_basis()) == m.n - 1


def element_invariants(m):
    om = m.order()
    return ElementInvariants(
        order=om,
        det=m.det(),
        eigenvalues=eigenvalue_multiset(m, om),
        is_scalar=m.is_scalar(),
        is_pr=is_pseudo_reflection(m),
    )


class ProjGroup:
    """Finite subgroup of PGL_n: canonical representatives modulo scalars.

    Keeps a reference to a finite linear source group when built from one;
    several procedures need finite-order lifts of projective elements.
    """

    def __init__(self, n, level, elements, source=None):
        self.n = n
        self.level = level
        self.elements = tuple(elements)
        self.source = source
        self._index = {m.key(): i for i, m in enumerate(self.elements)}

    @staticmethod
    def from_matrix_group(g: MatrixGroup):
        seen = {}
        for m in g.elements:
            c = m.proj_canonical()
            k = c.key()
            if k not in seen:
                seen[k] = c
        pg = ProjGroup(g.n, g.level, list(seen.values()), source=g)
        return pg

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, m):
        c = m.proj_canonical()
        if c.level == self.level:
            return c.key() in self._index
        if self.level % c.level == 0:
            return c.at_level(self.level).key() in self._index
        lv = lcm(c.level, self.level)
        tgt = c.at_level(lv).key()
        return any(e.at_level(lv).key() == tgt for e in self.elements)

    def mul(self, a, b):
        return (a * b).proj_canonical()

    def proj_order(self, m, cap=4096):
        acc = m
        k = 1
        while k <= cap:
            if acc.is_scalar():
                return k
            acc = acc * m
            k += 1
        raise GroupTooLargeError("projective order exceeds cap")

    def is_cyclic(self):
        return any(self.proj_order(m) == self.order for m in self.elements)

    def commutators_trivial(self):
        """True when all lifted commutators are the identity matrix, i.e.
        the full preimage in GL_n is abelian (diagonalizable group).

        Commutators of lifts do not depend on the scalar choices, so it is
        enough that the canonical representatives commute pairwise; with a
        finite source group, its generators decide already."""
        if self.source is not None:
            return self.source.is_abelian()
        for i, a in enumerate(self.elements):
            for b in self.elements[i + 1:]:
                if (a * b).key() != (b * a).key():
                    return False
        return True

    def conjugate(self, p):
        pinv = p.inverse()
        elems = [(pinv * m * p).proj_canonical() for m in self.elements]
        src = self.source.conjugate(p) if self.source is not None else None
        out = ProjGroup(self.n, elems[0].level if elems else self.level, elems, src)
        return out

    def same_elements(self, other):
        if self.order != other.order:
            return False
        lv = lcm(self.level, other.level)
        mine = {m.at_level(lv).proj_canonical().key() for m in self.elements}
        theirs = {m.at_level(lv).proj_canonical().key() for m in other.elements}
        return mine == theirs

    def quotient_table(self, normal: "ProjGroup"):
        """Cayley table of self / normal (normal must be normal in self)."""
        lv = lcm(self.level, normal.level)
        nk = {m.at_level(lv).proj_canonical().key() for m in normal.elements}
        cosets = []
        assign = {}
        for m in self.elements:
            mk = m.at_level(lv)
            if mk.proj_canonical().key() in assign:
                continue
            members = [(mk * x.at_level(lv)).proj_canonical().key() for x in normal.elements]
            ci = len(cosets)
            cosets.append(mk)
            for k in members:
                assign[k] = ci
        table = []
        for a in cosets:
            row = []
            for b in cosets:
                row.append(assign[(a * b).proj_canonical().at_level(lv).key()])
            table.append(tuple(row))
        return CayleyTable(tuple(table))


class CayleyTable:
    """Tiny finite-group-by-table helper for structural checks."""

    def __init__(self, table):
        self.table = table
        self.n = len(table)
        ident = None
        for e in range(self.n):
            if all(table[e][x] == x and table[x][e] == x for x in range(self.n)):
                ident = e
                break
        if ident is None:
            raise ValueError("not a group table")
        self.identity = ident

    @property
    def order(self):
        return self.n

    def element_order(self, x):
        k = 1
        acc = x
        while acc != self.identity:
            acc = self.table[acc][x]
            k += 1
            if k > self.n:
                raise ValueError("table is not a group")
        return k

    def is_abelian(self):
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.n)
            for b in range(self.n)
        )

    def count_of_order(self, k):
        return sum(1 for x in range(self.n) if self.element_order(x) == k)

    def is_quaternion8(self):
        """Order 8, non-abelian, a unique involution."""
        return self.n == 8 and not self.is_abelian() and self.count_of_order(2) == 1


# -- simultaneous diagonalization ------------------------------------------


def _solve_in_span(basis_cols, target, level):
    """Coefficients expressing target in the span of basis_cols, or None."""
    n = len(target)
    k = len(basis_cols)
    # Gaussian elimination on [basis | target]
    m = [[basis_cols[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        piv = None
        for i in range(r, n):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [inv * x for x in m[r]]
        for i in range(n):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    coeff = [CycNum.zero(level)] * k
    for ri, pc in enumerate(pivots):
        coeff[pc] = m[ri][k]
    for i in range(r, n):
        if not m[i][k].is_zero():
            return None
    # verify (cheap at these sizes, protects against rank surprises)
    for i in range(n):
        acc = CycNum.zero(level)
        for j in range(k):
            acc = acc + basis_cols[j][i] * coeff[j]
        if acc != target[i]:
            return None
    return coeff


def simultaneous_diagonalize(g: MatrixGroup):
    """(P, D): P^-1 g P is diagonal for every element; D is the exponent
    encoding of the diagonalized group.

    Requires an abelian group (raises ValueError otherwise).  Eigen-columns
    are ordered by the (order, exponent) pairs of the eigenvalue signature,
    then by the echelon pattern of the eigenbasis, so output is canonical.
    """
    if not g.is_abelian():
        raise ValueError("simultaneous diagonalization requires an abelian group")
    n = g.n
    lv = g.level
    one = CycNum.one(lv)
    zero = CycNum.zero(lv)
    # blocks: (signature, columns); start with the standard basis
    blocks = [((), [tuple(one if i == j else zero for i in range(n)) for j in range(n)])]
    for gen in g.generators:
        om = gen.order(cap=g.order + 1)
        lv = lcm(lcm(lv, gen.level), om)
        newblocks = []
        for sig, cols in blocks:
            # the working level only ever grows; keep everything lifted
            lv2 = lv = lcm_list([lv] + [x.level for col in cols for x in col])
            genl = gen.at_level(lv2)
            cols = [tuple(x.at_level(lv2) for x in col) for col in cols]
            if len(cols) == 1:
                # one-dimensional: the column is already an eigenvector
                img = _apply_cols(genl, cols)[0]
                lam = _ratio(img, cols[0])
                newblocks.append((sig + (lam.as_root_of_unity(),), cols))
                continue
            # restriction matrix A with gen * cols = cols * A
            imgs = _apply_cols(genl, cols)
            amat = []
            for img in imgs:
                coeff = _solve_in_span(cols, img, lv2)
                if coeff is None:
                    raise AssertionError("generator does not preserve the block")
                amat.append(coeff)
            a = CycMatrix([[amat[j][i] for j in range(len(cols))] for i in range(len(cols))], lv2)
            cand = sorted({root_of_unity(om, j).as_root_of_unity() for j in range(om)})
            taken = 0
            for nk in cand:
                ev = root_of_unity(*nk)
                lv3 = lcm(lv2, ev.level)
                al = a.at_level(lv3)
                evl = ev.at_level(lv3)
                shifted = CycMatrix(
                    [
                        [al.rows[i][k] - evl if i == k else al.rows[i][k] for k in range(a.n)]
                        for i in range(a.n)
                    ],
                    lv3,
                )
                ker = shifted.kernel_basis()
                if not ker:
                    continue
                newcols = []
                colsl = [tuple(x.at_level(lv3) for x in col) for col in cols]
                for kv in ker:
                    vec = [CycNum.zero(lv3)] * n
                    for j, c in enumerate(kv):
                        if not c.is_zero():
                            for i in range(n):
                                vec[i] = vec[i] + c * colsl[j][i]
                    newcols.append(tuple(vec))
                newblocks.append((sig + (nk,), newcols))
                taken += len(ker)
            if taken != len(cols):
                raise AssertionError("block did not split completely")
        blocks = sorted(newblocks, key=lambda b: b[0])
    # normalize columns to echelon-style form for determinism
    final_cols = []
    for _, cols in blocks:
        for col in cols:
            first = next(x for x in col if not x.is_zero())
            inv = first.inverse()
            final_cols.append(tuple(inv * x for x in col))
    lvf = lcm_list([c.level for col in final_cols for c in col] + [lv])
    p = CycMatrix(
        [[final_cols[j][i].at_level(lvf) for j in range(n)] for i in range(n)], lvf
    )
    pinv = p.inverse()
    # read exponent vectors of the conjugated generators
    diag_vals = []
    for gen in g.generators:
        d = pinv * gen.at_level(lvf) * p
        vals = []
        for i in range(n):
            for j in range(n):
                if i != j and not d.rows[i][j].is_zero():
                    raise AssertionError("conjugated generator is not diagonal")
            vals.append(d.rows[i][i].as_root_of_unity())
        diag_vals.append(vals)
    level = lcm_list([nk[0] for vals in diag_vals for nk in vals] + [1])
    gens = []
    for vals in diag_vals:
        gens.append(tuple((level // nk[0]) * nk[1] for nk in vals))
    dgrp = DiagonalGroup.from_exponents(n, level, gens)
    return p, dgrp


def _apply_cols(m, cols):
    n = m.n
    out = []
    for col in cols:
        vec = []
        for i in range(n):
            acc = CycNum.zero(m.level)
            for k in range(n):
                x = m.rows[i][k]
                if not x.is_zero() and not col[k].is_zero():
                    acc = acc + x * col[k]
            vec.append(acc)
        out.append(tuple(vec))
    return out


def _ratio(img, col):
    for i, x in enumerate(col):
        if not x.is_zero():
            return img[i] * x.inverse()
    raise ZeroDivisionError("zero column")


def diag_to_matrix_group(d: DiagonalGroup, cap=DEFAULT_CAP):
    """The diagonal group as a concrete matrix group."""
    gens = [mat_from_exponents(d.n, d.level, row) for row in d.rows]
    return MatrixGroup.generate(gens, cap=cap)
