"""Small number-theory helpers shared across the package."""

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple:
    """Prime factorization of n >= 1 as a tuple of (p, e) pairs."""
    if n < 1:
        raise ValueError("factorint requires n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    """All positive divisors of n, sorted."""
    ds = [1]
    for p, e in factorint(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return tuple(sorted(ds))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorint(n):
        r = r // p * (p - 1)
    return r


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    m = 1
    for _, e in factorint(n):
        if e > 1:
            return 0
        m = -m
    return m


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def lcm_list(xs) -> int:
    r = 1
    for x in xs:
        r = lcm(r, x)
    return r


def vec_content(xs) -> int:
    """gcd of a sequence of ints (0 for the empty/zero sequence)."""
    g = 0
    for x in xs:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g
