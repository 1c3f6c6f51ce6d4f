"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is a canonical coefficient vector on the power basis
1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial, stored as
integer numerators over a single positive denominator.  All values are
immutable and all operations are pure, so instances can be shared freely.

Levels never demote automatically: an operation on operands at levels m, n
produces a result at lcm(m, n).  Equality compares values (operands are
lifted to a common level first); hashing uses level-free invariants
(absolute traces) so equal values at different levels hash alike.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._backend import conv_reduce, scaled_accumulate
from .nt import divisors, euler_phi, factorint, lcm, moebius


class CycParseError(ValueError):
    """Syntax error in the cyclotomic text grammar, with position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def _poly_div_exact(num, den):
    """Quotient of integer polynomials (lists, low degree first); den monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, low degree first, monic."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_div_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


class _Level:
    """Precomputed reduction data for one cyclotomic level."""

    __slots__ = ("n", "deg", "phi_poly", "red", "powvec", "traces")

    def __init__(self, n):
        self.n = n
        self.phi_poly = cyclotomic_poly(n)
        deg = len(self.phi_poly) - 1
        self.deg = deg
        # x^(deg+j) mod Phi for j = 0 .. deg-2, needed to reduce products
        top = tuple(-c for c in self.phi_poly[:deg])
        red = [top]
        for _ in range(deg - 2):
            prev = red[-1]
            row = [0] + list(prev[: deg - 1])
            c = prev[deg - 1]
            if c:
                scaled_accumulate(row, c, top)
            red.append(tuple(row))
        self.red = tuple(red)
        # x^k mod Phi for k = 0 .. n-1 (exponents are periodic mod n)
        pv = [tuple(1 if i == k else 0 for i in range(deg)) for k in range(deg)]
        for k in range(deg, n):
            prev = pv[-1]
            row = [0] + list(prev[: deg - 1])
            c = prev[deg - 1]
            if c:
                scaled_accumulate(row, c, top)
            pv.append(tuple(row))
        self.powvec = tuple(pv)
        # absolute traces of basis powers: Tr(zeta_n^j)
        tr = []
        for j in range(deg):
            g = gcd(j, n)
            m = n // g
            tr.append(moebius(m) * (euler_phi(n) // euler_phi(m)))
        self.traces = tuple(tr)


@lru_cache(maxsize=None)
def _level(n: int) -> _Level:
    if n < 1:
        raise ValueError("cyclotomic level must be >= 1")
    return _Level(n)


def _normalize(num, den):
    """Canonical (tuple, int) with den > 0 and content coprime to den."""
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        g = gcd(g, x)
        if g == 1:
            return tuple(num), den
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


_MUL_CACHE = {}
_INV_CACHE = {}
_EMBED_CACHE = {}
_GALOIS_CACHE = {}


def clear_caches():
    _MUL_CACHE.clear()
    _INV_CACHE.clear()
    _EMBED_CACHE.clear()
    _GALOIS_CACHE.clear()


class CycNum:
    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level, num, den=1, _normalized=False):
        lv = _level(level)
        if not _normalized:
            if len(num) != lv.deg:
                raise ValueError("coefficient vector has wrong length")
            num, den = _normalize(list(num), den)
        self.level = level
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_fraction(q, level=1):
        q = Fraction(q)
        lv = _level(level)
        num = [0] * lv.deg
        num[0] = q.numerator
        return CycNum(level, num, q.denominator)

    @staticmethod
    def zero(level=1):
        return CycNum.from_fraction(0, level)

    @staticmethod
    def one(level=1):
        return CycNum.from_fraction(1, level)

    @staticmethod
    def from_coeffs(level, coeffs):
        """Value from rational coefficients of 1, z, ..., z^(phi(N)-1)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        num = [int(f * den) for f in fr]
        return CycNum(level, num, den)

    # -- basic queries -----------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def as_fraction(self):
        """The value as a Fraction if it is rational, else None."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def coeffs(self):
        return tuple(Fraction(x, self.den) for x in self.num)

    @property
    def key(self):
        """Representation key; canonical among same-level values."""
        return (self.num, self.den)

    # -- level handling ----------------------------------------------

    def at_level(self, m):
        """Embed into Q(zeta_m); m must be a multiple of the level."""
        n = self.level
        if m == n:
            return self
        if m % n:
            raise ValueError(f"cannot embed level {n} into level {m}")
        ck = (n, m, self.num, self.den)
        hit = _EMBED_CACHE.get(ck)
        if hit is None:
            lvm = _level(m)
            step = m // n
            acc = [0] * lvm.deg
            for j, c in enumerate(self.num):
                if c:
                    scaled_accumulate(acc, c, lvm.powvec[(j * step) % m])
            hit = _normalize(acc, self.den)
            _EMBED_CACHE[ck] = hit
        num, den = hit
        return CycNum(m, num, den, _normalized=True)

    @staticmethod
    def common_level(a, b):
        m = lcm(a.level, b.level)
        return a.at_level(m), b.at_level(m)

    # -- ring operations ---------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_fraction(other, 1)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = CycNum.common_level(self, other)
        da, db = a.den, b.den
        if da == db:
            num = [x + y for x, y in zip(a.num, b.num)]
            return CycNum(a.level, num, da)
        num = [x * db + y * da for x, y in zip(a.num, b.num)]
        return CycNum(a.level, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(
            self.level, tuple(-x for x in self.num), self.den, _normalized=True
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = CycNum.common_level(self, other)
        ka, kb = (a.num, a.den), (b.num, b.den)
        if kb < ka:
            ka, kb = kb, ka
        ck = (a.level, ka, kb)
        hit = _MUL_CACHE.get(ck)
        if hit is None:
            lv = _level(a.level)
            if lv.deg == 1:
                raw = [ka[0][0] * kb[0][0]]
            else:
                raw = conv_reduce(ka[0], kb[0], lv.red, lv.deg)
            hit = _normalize(raw, ka[1] * kb[1])
            _MUL_CACHE[ck] = hit
        num, den = hit
        return CycNum(a.level, num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta)")
        ck = (self.level, self.num, self.den)
        hit = _INV_CACHE.get(ck)
        if hit is None:
            hit = _poly_inverse(self.level, self.num, self.den)
            _INV_CACHE[ck] = hit
        num, den = hit
        return CycNum(self.level, num, den, _normalized=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = CycNum.common_level(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = CycNum.one(self.level)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base_needed = e > 1
            e >>= 1
            if base_needed and e:
                base = base * base
        return acc

    # -- equality / hashing ------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.level == other.level:
            return self.num == other.num and self.den == other.den
        a, b = CycNum.common_level(self, other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        # level-free: equal values at different levels must agree
        if self._hash is None:
            self._hash = hash((self.trace(), (self * self).trace()))
        return self._hash

    def __repr__(self):
        return f"CycNum({format_cyc(self)!r} @ {self.level})"

    def trace(self):
        """Absolute trace down to Q, as a Fraction."""
        tr = _level(self.level).traces
        s = 0
        for c, t in zip(self.num, tr):
            if c and t:
                s += c * t
        return Fraction(s, self.den)

    # -- Galois action and roots of unity ------------------------------

    def galois(self, d):
        """The automorphism z -> z^d; d must be coprime to the level."""
        n = self.level
        d %= n
        if gcd(d, n) != 1:
            raise ValueError(f"galois exponent {d} not coprime to level {n}")
        if d == 1 or self.as_fraction() is not None:
            return self
        ck = (n, d, self.num, self.den)
        hit = _GALOIS_CACHE.get(ck)
        if hit is None:
            lv = _level(n)
            acc = [0] * lv.deg
            for j, c in enumerate(self.num):
                if c:
                    scaled_accumulate(acc, c, lv.powvec[(j * d) % n])
            hit = _normalize(acc, self.den)
            _GALOIS_CACHE[ck] = hit
        num, den = hit
        return CycNum(n, num, den, _normalized=True)

    def as_root_of_unity(self):
        """Return (n, k) with self = zeta_n^k (exact order n), or None.

        Decided by raising to the exponent bound 6 * level, which covers
        every root of unity expressible at this level.
        """
        if self.is_zero():
            return None
        if self.is_one():
            return (1, 0)
        bound = 6 * self.level
        if not (self**bound).is_one():
            return None
        order = bound
        for p, _ in factorint(bound):
            while order % p == 0 and (self ** (order // p)).is_one():
                order //= p
        w = zeta(order).at_level(lcm(self.level, order))
        cur = CycNum.one(w.level)
        me = self.at_level(w.level)
        for k in range(order):
            if cur == me:
                return (order, k)
            cur = cur * w
        raise AssertionError("order computation is inconsistent")


def _poly_inverse(level, num, den):
    """Inverse mod Phi_N by the extended Euclidean algorithm over Q[x]."""
    lv = _level(level)
    f = [Fraction(c) for c in lv.phi_poly]
    g = [Fraction(c, den) for c in num]

    def deg(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def trim(p):
        d = deg(p)
        return p[: d + 1] if d >= 0 else []

    r0, r1 = trim(f), trim(g)
    s0, s1 = [], [Fraction(1)]
    while True:
        d1 = deg(r1)
        if d1 < 0:
            raise ZeroDivisionError("non-invertible element (zero divisor?)")
        if d1 == 0:
            c = r1[0]
            inv = [x / c for x in s1]
            break
        d0 = deg(r0)
        if d0 < d1:
            r0, r1 = r1, r0
            s0, s1 = s1, s0
            continue
        # one division step
        q = [Fraction(0)] * (d0 - d1 + 1)
        rr = list(r0)
        while True:
            dr = deg(rr)
            if dr < d1:
                break
            c = rr[dr] / r1[d1]
            q[dr - d1] = c
            for j in range(d1 + 1):
                rr[dr - d1 + j] -= c * r1[j]
        # s_new = s0 - q*s1
        snew = [Fraction(0)] * max(len(s0), len(q) + len(s1))
        for i, c in enumerate(s0):
            snew[i] += c
        for i, qc in enumerate(q):
            if qc:
                for j, sc in enumerate(s1):
                    if sc:
                        snew[i + j] -= qc * sc
        r0, r1 = trim(r1), trim(rr)
        s0, s1 = s1, trim(snew)
    # inv has degree < deg(Phi); pad and clear denominators
    inv = inv + [Fraction(0)] * (lv.deg - len(inv))
    cd = 1
    for c in inv:
        cd = lcm(cd, c.denominator)
    return _normalize([int(c * cd) for c in inv[: lv.deg]], cd)


@lru_cache(maxsize=None)
def zeta(n: int) -> CycNum:
    """A primitive n-th root of unity zeta_n, at level n.

    The family is compatible: zeta(m*n)**m == zeta(n) after embedding.
    """
    lv = _level(n)
    if lv.deg == 1:
        # z reduces to a rational at levels 1 and 2
        return CycNum(n, (lv.powvec[1 % n][0],), 1, _normalized=True)
    num = [0] * lv.deg
    num[1] = 1
    return CycNum(n, num, 1, _normalized=True)


def root_of_unity(n: int, k: int = 1) -> CycNum:
    return zeta(n) ** (k % n)


def reduce_poly(level, raw_coeffs):
    """Canonical value of an arbitrary-degree polynomial in z.

    raw_coeffs are rationals for 1, z, z^2, ...; exponents reduce modulo
    z^N = 1 first, then modulo Phi_N.
    """
    lv = _level(level)
    fr = [Fraction(c) for c in raw_coeffs]
    den = 1
    for f in fr:
        den = lcm(den, f.denominator)
    acc = [0] * lv.deg
    for j, f in enumerate(fr):
        c = int(f * den)
        if c:
            scaled_accumulate(acc, c, lv.powvec[j % level])
    return CycNum(level, acc, den)


# -- text grammar ----------------------------------------------------


def parse(text: str, level: int) -> CycNum:
    """Parse a signed sum of terms  c | c*z^k | z^k | z  at the level.

    c is an integer or p/q fraction; k must be >= 0.
    """
    terms = {}  # exponent -> Fraction
    i, n = 0, len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    def read_int(i):
        j = i
        while j < n and text[j].isdigit():
            j += 1
        if j == i:
            raise CycParseError("expected a number", i)
        return int(text[i:j]), j

    i = skip_ws(i)
    if i == n:
        raise CycParseError("empty expression", 0)
    first = True
    while i < n:
        sign = 1
        i = skip_ws(i)
        if i < n and text[i] in "+-":
            if text[i] == "-":
                sign = -1
            i = skip_ws(i + 1)
        elif not first:
            raise CycParseError("expected '+' or '-'", i)
        first = False
        if i >= n:
            raise CycParseError("dangling sign", i)
        coef = Fraction(1)
        have_coef = False
        if text[i].isdigit():
            num, i = read_int(i)
            coef = Fraction(num)
            have_coef = True
            i = skip_ws(i)
            if i < n and text[i] == "/":
                i = skip_ws(i + 1)
                den, i = read_int(i)
                if den == 0:
                    raise CycParseError("zero denominator", i - 1)
                coef /= den
                i = skip_ws(i)
            if i < n and text[i] == "*":
                i = skip_ws(i + 1)
                if i >= n or text[i] != "z":
                    raise CycParseError("expected 'z' after '*'", i)
        exp = 0
        if i < n and text[i] == "z":
            i += 1
            exp = 1
            if i < n and text[i] == "^":
                i += 1
                if i < n and text[i] == "-":
                    raise CycParseError("negative exponents are not allowed", i)
                exp, i = read_int(i)
        elif not have_coef:
            raise CycParseError("expected a term", i)
        terms[exp] = terms.get(exp, Fraction(0)) + sign * coef
        i = skip_ws(i)
    if not terms:
        raise CycParseError("empty expression", 0)
    top = max(terms)
    raw = [terms.get(j, Fraction(0)) for j in range(top + 1)]
    return reduce_poly(level, raw)


def format_cyc(a: CycNum) -> str:
    """Inverse of parse: canonical text form, highest power first."""
    parts = []
    for j in range(len(a.num) - 1, -1, -1):
        c = Fraction(a.num[j], a.den)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if j == 0:
            body = str(c)
        else:
            zpart = "z" if j == 1 else f"z^{j}"
            body = zpart if c == 1 else f"{c}*{zpart}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = []
    for idx, (sign, body) in enumerate(parts):
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
