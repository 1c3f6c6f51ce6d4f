"""Pure-Python arithmetic kernel.

These are the innermost loops of exact cyclotomic arithmetic: coefficient
vectors are plain Python ints (arbitrary precision), reduction data is the
table of x^(deg+j) mod Phi_N.  A compiled twin lives in _kernel.pyx; both
must produce identical results.
"""

BACKEND = "python"


def conv_reduce(a, b, red, deg):
    """Multiply coefficient vectors a, b (length deg) mod Phi_N.

    red[j] is the coefficient vector of x^(deg+j) mod Phi_N, for
    j = 0 .. deg-2.  Returns a list of length deg.
    """
    out = [0] * (2 * deg - 1)
    for i in range(deg):
        ai = a[i]
        if ai:
            for j in range(deg):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
    res = out[:deg]
    for k in range(deg, 2 * deg - 1):
        c = out[k]
        if c:
            row = red[k - deg]
            for j in range(deg):
                rj = row[j]
                if rj:
                    res[j] += c * rj
    return res


def scaled_accumulate(acc, c, row):
    """acc[j] += c * row[j] in place; returns acc."""
    for j in range(len(row)):
        rj = row[j]
        if rj:
            acc[j] += c * rj
    return acc
