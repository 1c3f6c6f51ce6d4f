"""Integer lattices with finite group actions.

Provides the exact integer linear algebra used everywhere (Hermite and
Smith normal forms with transforms), first group cohomology with lattice
or finite coefficients via crossed homomorphisms, the permutation-summand
test with certificates, and index-bound computations.

Conventions: lattice vectors are rows and lattices are row spans; a matrix
action A sends the row vector v to v @ A^T (columns transform by A); the
permutation sigma acts by (sigma v)[sigma(i)] = v[i].
"""

from math import gcd


# -- dense integer matrices (lists of lists) ---------------------------


def identity_mat(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    cb = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cb
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cb):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def vec_mat(v, a):
    """Row vector times matrix."""
    out = [0] * (len(a[0]) if a else 0)
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_key(a):
    return tuple(tuple(map(int, row)) for row in a)


def perm_matrix(sigma):
    """Matrix A with A e_i = e_sigma(i), i.e. (A v)[sigma(i)] = v[i]."""
    n = len(sigma)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[sigma[i]][i] = 1
    return m


def matrix_to_perm(a):
    """Inverse of perm_matrix, or None if a is not a permutation matrix."""
    n = len(a)
    sigma = [None] * n
    for i in range(n):
        hits = [r for r in range(n) if a[r][i]]
        if len(hits) != 1 or a[hits[0]][i] != 1:
            return None
        sigma[i] = hits[0]
    return tuple(sigma) if len(set(sigma)) == n else None


def apply_perm(sigma, v):
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[sigma[i]] = x
    return tuple(out)


def det_int(a):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- normal forms -------------------------------------------------------


def hnf_with_transform(rows):
    """(H, U): U unimodular, U @ rows has the rows of H then zero rows.

    H is the unique row-style Hermite normal form: echelon order, positive
    pivots, entries above each pivot reduced into [0, pivot).
    """
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = identity_mat(nr)
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, nr):
            while m[i][c]:
                q = m[r][c] // m[i][c]
                if q:
                    m[r] = [x - q * y for x, y in zip(m[r], m[i])]
                    u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                m[r], m[i] = m[i], m[r]
                u[r], u[i] = u[i], u[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        p = m[r][c]
        for i in range(r):
            q = m[i][c] // p
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return [tuple(row) for row in m[:r]], u


def hnf(rows):
    """Canonical Hermite basis (nonzero rows only)."""
    return hnf_with_transform(rows)[0]


def snf_with_transform(a):
    """(D, U, V) with U @ a @ V == D diagonal, d1 | d2 | ..., di >= 0."""
    m = [list(map(int, r)) for r in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = identity_mat(nr)
    v = identity_mat(nc)
    t = 0
    while t < min(nr, nc):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (best is None or abs(m[i][j]) < best[0]):
                    best = (abs(m[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        m[t], m[pi] = m[pi], m[t]
        u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
        # the pivot must divide everything below-right
        bad = None
        for i in range(t + 1, nr):
            if any(m[i][j] % m[t][t] for j in range(t + 1, nc)):
                bad = i
                break
        if bad is not None:
            m[t] = [x + y for x, y in zip(m[t], m[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
            continue
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = [[m[i][j] if i == j else 0 for j in range(nc)] for i in range(nr)]
    return d, u, v


def snf_divisors(a):
    """Nonzero diagonal entries of the Smith normal form."""
    if not a:
        return []
    d, _, _ = snf_with_transform(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def left_kernel(a):
    """HNF basis of {x : x @ a == 0} (rows)."""
    h, u = hnf_with_transform(a)
    if len(h) == len(u):
        return []
    return hnf(u[len(h):])


def solve_left(rows, target):
    """Integer combination x with x @ rows == target, or None."""
    h, u = hnf_with_transform(rows)
    nc = len(target)
    t = list(map(int, target))
    coeff = [0] * len(u)
    for ri, row in enumerate(h):
        c = next(j for j in range(nc) if row[j])
        if t[c]:
            if t[c] % row[c]:
                return None
            q = t[c] // row[c]
            t = [x - q * y for x, y in zip(t, row)]
            coeff[ri] = q
    if any(t):
        return None
    x = [0] * len(u)
    for ri, q in enumerate(coeff):
        if q:
            for j in range(len(u)):
                x[j] += q * u[ri][j]
    return x


def lattice_contains(hnf_rows, v):
    """Membership of the row vector v in the lattice with basis hnf_rows."""
    nc = len(v)
    t = list(map(int, v))
    for row in hnf_rows:
        c = next(j for j in range(nc) if row[j])
        if t[c]:
            if t[c] % row[c]:
                return False
            q = t[c] // row[c]
            t = [x - q * y for x, y in zip(t, row)]
    return not any(t)


def _echelon_det(hnf_rows):
    """Product of pivots of an HNF basis (covolume within its span)."""
    d = 1
    for row in hnf_rows:
        d *= next(x for x in row if x)
    return d


def lattice_index(sup_rows, sub_rows):
    """[sup : sub] for finite-index pairs of equal rank; checks inclusion."""
    sup = hnf(sup_rows)
    sub = hnf(sub_rows)
    for r in sub:
        if not lattice_contains(sup, r):
            raise ValueError("claimed sublattice is not contained")
    if len(sub) != len(sup):
        raise ValueError("sublattice does not have finite index")
    ds = _echelon_det(sup)
    dn = _echelon_det(sub)
    if ds == 0 or dn % ds:
        raise ValueError("index is not integral")
    return abs(dn // ds)


def congruence_kernel(a, modulus):
    """HNF basis of {v in Z^n : a @ v == 0 (mod modulus)} (full rank)."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    d, _, v = snf_with_transform(a)
    vt = transpose(v)
    rows = []
    for i in range(nc):
        di = d[i][i] if i < min(nr, nc) else 0
        step = modulus // gcd(di, modulus)
        rows.append([step * x for x in vt[i]])
    return hnf(rows)


def quotient_group(sup_rows, sub_rows):
    """Elementary divisors (> 1) of span(sup)/span(sub); must be finite."""
    sup = hnf(sup_rows)
    if not sup:
        return ()
    coords = []
    for r in sub_rows:
        x = solve_left(sup, r)
        if x is None:
            raise ValueError("not contained in the span")
        coords.append(x[: len(sup)])
    divs = snf_divisors(coords)
    if len(divs) < len(sup):
        raise ValueError("quotient is infinite")
    return tuple(d for d in divs if d != 1)


# -- finite matrix groups over Z ----------------------------------------


def close_matrix_group(gens, n, cap=100000):
    """Elements generated by integer matrices, in deterministic BFS order."""
    ident = mat_key(identity_mat(n))
    gens = [mat_key(g) for g in gens]
    elems = {ident: None}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mat_key(mat_mul(g, x))
                if y not in elems:
                    if len(elems) >= cap:
                        raise ValueError("matrix group closure exceeded cap")
                    elems[y] = None
                    new.append(y)
        frontier = new
    return list(elems)


def subgroups_of(elements, mul):
    """All subgroups of a small finite group, as sorted element lists."""
    elems = list(elements)
    ident = next(e for e in elems if all(mul(e, x) == x for x in elems))

    def generated(gens):
        cur = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in cur:
                        cur.add(y)
                        new.append(y)
            frontier = new
        return frozenset(cur)

    subs = {frozenset([ident])}
    frontier = [frozenset([ident])]
    while frontier:
        new = []
        for h in frontier:
            for g in elems:
                if g not in h:
                    hg = generated(list(h) + [g])
                    if hg not in subs:
                        subs.add(hg)
                        new.append(hg)
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


# -- lattices with group action ------------------------------------------


class GLattice:
    """Sublattice M of Z^n with a finite integer-matrix action preserving M.

    Action generators may be given as permutations (tuples: i -> sigma(i))
    or as n x n integer matrices.
    """

    def __init__(self, n, basis_rows, action_gens=(), cap=20000):
        self.n = n
        self.basis = hnf(basis_rows)
        gens = []
        for g in action_gens:
            if g and not isinstance(g[0], (list, tuple)):
                g = perm_matrix(tuple(g))
            gens.append(mat_key(g))
        self.action_gens = tuple(gens)
        for g in self.action_gens:
            gt = transpose(g)
            for row in self.basis:
                if not lattice_contains(self.basis, vec_mat(row, gt)):
                    raise ValueError("action does not preserve the lattice")
        self.elements = close_matrix_group(self.action_gens, n, cap=cap)
        self._restricted = {}

    @property
    def rank(self):
        return len(self.basis)

    def restricted_col(self, g):
        """Matrix of g on module coordinates, acting on column vectors."""
        g = mat_key(g)
        hit = self._restricted.get(g)
        if hit is None:
            gt = transpose(g)
            rows = []
            for row in self.basis:
                x = solve_left(self.basis, vec_mat(row, gt))
                if x is None:
                    raise ValueError("action does not preserve the lattice")
                rows.append(x[: self.rank])
            hit = mat_key(transpose(rows))
            self._restricted[g] = hit
        return hit

    def action_perms(self):
        """The elements as coordinate permutations, or None if not all are."""
        perms = []
        for g in self.elements:
            sigma = matrix_to_perm(g)
            if sigma is None:
                return None
            perms.append(sigma)
        return perms


def _mat_mul_key(x, y):
    return mat_key(mat_mul(x, y))


def _crossed_hom_quotient(elements, mul, rho, rank, divisors=None):
    """Elementary divisors of H^1(S, A) by integer linear algebra.

    Cocycles f with f(s t) = f(s) + rho(s) f(t) are solved as an integer
    system over the unknowns f(s) in Z^rank (f(identity) = 0), with
    congruence constraints when the module is finite (divisors[i] is the
    order of the i-th cyclic factor; None means lattice coefficients).
    """
    elems = list(elements)
    ident = next(e for e in elems if all(mul(e, x) == x for x in elems))
    others = [e for e in elems if e != ident]
    if not others or rank == 0:
        return ()
    idx = {e: i for i, e in enumerate(others)}
    r = rank
    nunk = r * len(others)

    eq_rows = []
    eq_mods = []
    for s in elems:
        rs = rho(s)
        for t in elems:
            st = mul(s, t)
            for i in range(r):
                row = [0] * nunk
                if st != ident:
                    row[idx[st] * r + i] += 1
                if s != ident:
                    row[idx[s] * r + i] -= 1
                if t != ident:
                    b = idx[t] * r
                    for j in range(r):
                        if rs[i][j]:
                            row[b + j] -= rs[i][j]
                if any(row):
                    eq_rows.append(row)
                    eq_mods.append(divisors[i] if divisors else 0)
    if not eq_rows:
        z_rows = identity_mat(nunk)
    else:
        # solutions of x @ A == 0 with slack rows m_k e_k for modular eqs
        neq = len(eq_rows)
        stacked = [[eq_rows[k][j] for k in range(neq)] for j in range(nunk)]
        slack = []
        for k, m in enumerate(eq_mods):
            if m:
                row = [0] * neq
                row[k] = m
                slack.append(row)
        ker = left_kernel(stacked + slack)
        z_rows = hnf([row[:nunk] for row in ker])
    # principal cocycles f_a(s) = rho(s) a - a, a over the standard basis
    b_rows = []
    for i in range(r):
        row = [0] * nunk
        for s in others:
            rs = rho(s)
            b = idx[s] * r
            for k in range(r):
                row[b + k] += rs[k][i] - (1 if k == i else 0)
        b_rows.append(row)
    if divisors:
        for e in others:
            b = idx[e] * r
            for i in range(r):
                row = [0] * nunk
                row[b + i] = divisors[i]
                b_rows.append(row)
    if not z_rows:
        return ()
    b_rows = [row for row in b_rows if any(row)]
    if not b_rows:
        b_rows = [[0] * nunk]
    return quotient_group(z_rows, b_rows)


def h1_lattice(glat: GLattice, subgroup_elements=None):
    """Elementary divisors of H^1(S, M) with lattice coefficients."""
    elems = subgroup_elements if subgroup_elements is not None else glat.elements
    return _crossed_hom_quotient(
        elems, _mat_mul_key, glat.restricted_col, glat.rank, None
    )


def h1_cyclic_norm(glat: GLattice, g):
    """H^1(<g>, M) = ker(Norm)/im(g - 1); independent cyclic-group formula."""
    r = glat.rank
    rc = glat.restricted_col(g)
    mats = []
    power = identity_mat(r)
    while True:
        mats.append(power)
        power = mat_mul([list(x) for x in rc], power)
        if power == identity_mat(r):
            break
    norm = [[sum(m[i][j] for m in mats) for j in range(r)] for i in range(r)]
    ker = left_kernel(transpose(norm))
    diff = [[rc[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    img = hnf(transpose(diff))
    if not ker:
        return ()
    return quotient_group(ker, [list(row) for row in img] or [[0] * r])


class FiniteModule:
    """Finite abelian group (+)_i Z/d_i acted on by a finite group.

    The acting group is given by generators in any hashable concrete form
    (permutation tuples or integer matrices); gen_actions[i] is the matrix
    of the i-th generator on column vectors modulo the divisors.  The pair
    closure validates that the assignment extends to a homomorphism.
    """

    def __init__(self, divisors_, group_gens, gen_actions, cap=10000):
        self.divisors = tuple(int(d) for d in divisors_)
        self.rank = len(self.divisors)
        acts = []
        for g in gen_actions:
            g = self._norm(mat_key(g))
            for i, di in enumerate(self.divisors):
                for j, dj in enumerate(self.divisors):
                    if (g[i][j] * dj) % di:
                        raise ValueError("matrix is not an automorphism mod divisors")
            acts.append(g)
        ggens = []
        for g in group_gens:
            if g and not isinstance(g[0], (list, tuple)):
                ggens.append(perm_matrix(tuple(g)))
            else:
                ggens.append(g)
        n = len(ggens[0]) if ggens else 1
        gmat = [mat_key(g) for g in ggens]
        # close the graph of the would-be homomorphism
        ident = (mat_key(identity_mat(n)), self._norm(mat_key(identity_mat(self.rank))))
        pairs = {ident: None}
        frontier = [ident]
        gen_pairs = list(zip(gmat, acts))
        while frontier:
            new = []
            for (x, ax) in frontier:
                for (g, ag) in gen_pairs:
                    y = (mat_key(mat_mul(g, x)), self._norm(mat_key(mat_mul(ag, ax))))
                    if y not in pairs:
                        if len(pairs) >= cap:
                            raise ValueError("acting group exceeded cap")
                        pairs[y] = None
                        new.append(y)
            frontier = new
        group_only = {p[0] for p in pairs}
        if len(group_only) != len(pairs):
            raise ValueError("generator actions do not define a homomorphism")
        self.elements = list(pairs)
        self._rho = {g: a for g, a in pairs}

    def _norm(self, g):
        return tuple(tuple(x % d for x, d in zip(row, self.divisors)) for row in g)

    def mul(self, x, y):
        return (mat_key(mat_mul(x[0], y[0])), self._norm(mat_key(mat_mul(x[1], y[1]))))

    def rho(self, s):
        return s[1]


def h1_finite(module: FiniteModule):
    """H^1 of the acting group with coefficients in the finite module."""
    return _crossed_hom_quotient(
        module.elements, module.mul, module.rho, module.rank, module.divisors
    )


# -- permutation modules -------------------------------------------------


def perm_module(perms, cap=20000):
    """Z^n with the permutation action generated by perms."""
    n = len(perms[0])
    return GLattice(n, identity_mat(n), [tuple(p) for p in perms], cap=cap)


def coset_module(elements, mul, subgroup):
    """The permutation module Z[S/T] for T <= S (left cosets)."""
    elems = list(elements)
    tset = frozenset(subgroup)
    cosets = []
    seen = set()
    for e in elems:
        c = frozenset(mul(e, t) for t in tset)
        if c not in seen:
            seen.add(c)
            cosets.append(c)
    index = {c: i for i, c in enumerate(cosets)}
    perms = set()
    for g in elems:
        sigma = [0] * len(cosets)
        for c in cosets:
            tgt = frozenset(mul(g, x) for x in c)
            sigma[index[c]] = index[tgt]
        perms.add(tuple(sigma))
    return perm_module(sorted(perms))


# -- permutation-summand test ---------------------------------------------


class SummandResult:
    """Outcome of the permutation-summand test with its certificate."""

    def __init__(self, verdict, basis=None, witness_subgroup=None, witness_h1=None):
        self.verdict = verdict  # "yes" | "no" | "undetermined"
        self.basis = basis
        self.witness_subgroup = witness_subgroup
        self.witness_h1 = witness_h1

    def __repr__(self):
        return f"SummandResult({self.verdict!r})"


class BoxTruncated(RuntimeError):
    """Raised internally when the box enumeration exceeds its point cap."""


def lattice_points_in_box(basis_rows, bound, max_points=500000):
    """All nonzero lattice vectors with every |coordinate| <= bound.

    Uses the echelon structure: once a basis row's coefficient is chosen,
    the coordinate at its pivot is final, so branches prune exactly.
    Raises BoxTruncated beyond max_points (callers downgrade to an
    inconclusive search rather than an unsound answer).
    """
    rows = hnf(basis_rows)
    if not rows:
        return []
    n = len(rows[0])
    pivots = [next(j for j in range(n) if r[j]) for r in rows]
    out = []

    def rec(i, cur):
        # coefficients are chosen from the last row upward
        if i < 0:
            if any(cur):
                if len(out) >= max_points:
                    raise BoxTruncated()
                out.append(tuple(cur))
            return
        p = pivots[i]
        step = rows[i][p]
        base = cur[p]
        lo = -((bound + base) // step)
        hi = (bound - base) // step
        for c in range(lo, hi + 1):
            nxt = [x + c * y for x, y in zip(cur, rows[i])] if c else list(cur)
            rec(i - 1, nxt)

    rec(len(rows) - 1, [0] * n)
    return out


def default_box(glat: GLattice):
    """Largest elementary divisor of Z^n/M plus the sum of the two largest."""
    divs = sorted(snf_divisors([list(r) for r in glat.basis]), reverse=True)
    if not divs:
        return 2
    second = divs[1] if len(divs) > 1 else divs[0]
    return 2 * divs[0] + second


def _orbit_of(v, perms):
    orb = {v}
    frontier = [v]
    while frontier:
        new = []
        for x in frontier:
            for p in perms:
                y = apply_perm(p, x)
                if y not in orb:
                    orb.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(orb))


def _rank_int(vectors):
    if not vectors:
        return 0
    return len(hnf(vectors))


def _basis_search(basis, perms, box, node_cap, rank, find_min_index=False):
    """Search unions of vector orbits forming a finite-index sublattice.

    Returns (vectors, index) with index == 1 for a permutation basis, the
    minimum index found when find_min_index, or None.  Deterministic: the
    lexicographically earliest certificate in orbit order wins.
    """
    try:
        cands = lattice_points_in_box(basis, box)
    except BoxTruncated:
        return None
    orbits = []
    seen = set()
    for v in sorted(cands):
        if v not in seen:
            orb = _orbit_of(v, perms)
            seen.update(orb)
            orbits.append(orb)
    orbits.sort(key=lambda o: (len(o), [sum(abs(x) for x in w) for w in o], o))
    state = {"nodes": 0, "best": None, "capped": False}

    def rec(start, chosen, size):
        if state["nodes"] > node_cap:
            state["capped"] = True
            return None
        state["nodes"] += 1
        if size == rank:
            try:
                idx = lattice_index(basis, list(chosen))
            except ValueError:
                return None
            if idx == 1:
                return (list(chosen), 1)
            if find_min_index and (state["best"] is None or idx < state["best"][1]):
                state["best"] = (list(chosen), idx)
            return None
        for oi in range(start, len(orbits)):
            orb = orbits[oi]
            if size + len(orb) > rank:
                continue
            merged = chosen + list(orb)
            if _rank_int(merged) != size + len(orb):
                continue
            got = rec(oi + 1, merged, size + len(orb))
            if got is not None:
                return got
        return None

    hit = rec(0, [], 0)
    if hit is not None:
        return hit
    if find_min_index:
        return state["best"]
    return None


def permutation_summand_test(glat: GLattice, box=None, node_cap=200000):
    """Decide whether M is visibly a permutation summand.

    yes: a Z-basis of M permuted by the whole action was found (so M is a
    permutation module, in particular a summand of one); certificate is
    re-verified.  no: some subgroup has nonzero H^1 on M, which direct
    summands of permutation modules never do.  undetermined: neither
    certificate was found within the search bounds.
    """
    if glat.rank == 0:
        return SummandResult("yes", basis=[])
    perms = glat.action_perms()
    if perms is None:
        raise ValueError("permutation-summand test needs a permutation action")

    for sub in subgroups_of(glat.elements, _mat_mul_key):
        if len(sub) == 1:
            continue
        h1 = h1_lattice(glat, list(sub))
        if h1:
            return SummandResult(
                "no", witness_subgroup=sorted(sub), witness_h1=h1
            )
    if all(p == tuple(range(glat.n)) for p in perms):
        return SummandResult("yes", basis=[tuple(r) for r in glat.basis])
    b = box if box is not None else default_box(glat)
    found = _basis_search(glat.basis, perms, b, node_cap, glat.rank)
    if found is not None:
        basis = found[0]
        verify_permutation_basis(glat, basis)
        return SummandResult("yes", basis=sorted(tuple(v) for v in basis))
    return SummandResult("undetermined")


def verify_permutation_basis(glat: GLattice, basis):
    """Certificate check: the basis spans M and is permuted by the action."""
    bs = set(tuple(map(int, v)) for v in basis)
    if len(bs) != glat.rank:
        raise ValueError("certificate basis has wrong size")
    if glat.rank and lattice_index(glat.basis, [list(v) for v in bs]) != 1:
        raise ValueError("certificate basis does not span the module")
    perms = glat.action_perms()
    for p in perms:
        for v in bs:
            if apply_perm(p, v) not in bs:
                raise ValueError("certificate basis is not permuted by the action")
    return True


def index_bound(glat: GLattice, subgroup_gens, sublattice_rows, box=None,
                node_cap=200000):
    """(iota1, iota2, iota1*iota2): [S:S'] times [M:N].

    N (spanned by sublattice_rows) must be S'-stable and possess a
    permutation basis, which is searched for and re-verified here; the
    obstruction index of every twisted form then divides the product.
    """
    sub_rows = hnf(sublattice_rows)
    for r in sub_rows:
        if not lattice_contains(glat.basis, r):
            raise ValueError("sublattice is not contained in the module")
    gens = []
    for g in subgroup_gens:
        if g and not isinstance(g[0], (list, tuple)):
            g = perm_matrix(tuple(g))
        gens.append(mat_key(g))
    sub_elems = close_matrix_group(gens, glat.n, cap=len(glat.elements) + 1)
    all_elems = set(glat.elements)
    if any(e not in all_elems for e in sub_elems):
        raise ValueError("subgroup is not contained in the acting group")
    for g in sub_elems:
        gt = transpose(g)
        for row in sub_rows:
            if not lattice_contains(sub_rows, vec_mat(row, gt)):
                raise ValueError("sublattice is not stable under the subgroup")
    iota1 = len(glat.elements) // len(sub_elems)
    iota2 = lattice_index(glat.basis, sub_rows)
    sub_glat = GLattice(glat.n, sub_rows, gens)
    perms = sub_glat.action_perms()
    if perms is None:
        raise ValueError("subgroup does not act by permutations")
    if all(p == tuple(range(glat.n)) for p in perms):
        return iota1, iota2, iota1 * iota2
    # the supplied rows are usually the permutation basis already
    for cand in ([tuple(map(int, r)) for r in sublattice_rows], list(sub_glat.basis)):
        if len(set(cand)) != sub_glat.rank:
            continue
        try:
            verify_permutation_basis(sub_glat, cand)
            return iota1, iota2, iota1 * iota2
        except ValueError:
            pass
    found = _basis_search(
        sub_glat.basis, perms,
        box if box is not None else default_box(sub_glat),
        node_cap, sub_glat.rank,
    )
    if found is None or found[1] != 1:
        raise ValueError("no permutation basis found for the sublattice")
    verify_permutation_basis(sub_glat, found[0])
    return iota1, iota2, iota1 * iota2


def best_index_bound(glat: GLattice, box=None, node_cap=100000):
    """Search (S', N) minimizing [S:S'] * [M:N] over permutation-stable
    sublattices with permutation bases found in the box.

    Always succeeds: the trivial subgroup with N = M gives the bound |S|.
    Returns (iota1, iota2, product, subgroup_elements, sublattice_rows).
    """
    total = len(glat.elements)
    best = (total, 1, total, [glat.elements[0]], [list(r) for r in glat.basis])
    for sub in subgroups_of(glat.elements, _mat_mul_key):
        iota1 = total // len(sub)
        if iota1 >= best[2]:
            continue
        sub_glat = GLattice(glat.n, glat.basis, list(sub))
        perms = sub_glat.action_perms()
        if perms is None:
            continue
        if all(p == tuple(range(glat.n)) for p in perms):
            found = ([list(r) for r in glat.basis], 1)
        else:
            found = _basis_search(
                glat.basis, perms,
                box if box is not None else default_box(glat),
                node_cap, glat.rank, find_min_index=True,
            )
        if found is None:
            continue
        rows, iota2 = found
        if iota1 * iota2 < best[2]:
            best = (iota1, iota2, iota1 * iota2, sorted(sub), rows)
    return best
