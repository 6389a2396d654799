"""Dense polynomial helpers over exact coefficient fields.

Coefficient lists are ascending; entries are Fractions or QuadElements (the
two coerce against ints transparently).  Everything here is exact field
arithmetic; nothing touches valuations.
"""

from __future__ import annotations

from fractions import Fraction

F = Fraction


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f) -> int:
    return len(trim(f)) - 1


def is_zero_poly(f) -> bool:
    return all(c == 0 for c in f)


def padd(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(a + b)
    return trim(out)


def pneg(f):
    return [-c for c in f]


def psub(f, g):
    return padd(f, pneg(g))


def pmul(f, g):
    f, g = trim(f), trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def pscale(f, c):
    return trim([c * x for x in f])


def ppow(f, n: int):
    out = [F(1)]
    base = trim(f)
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        n >>= 1
    return out


def peval(f, x):
    acc = None
    for c in reversed(trim(f)):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else F(0)


def pshift(f, c):
    """f(t + c) by repeated synthetic division."""
    out = list(trim(f))
    res = []
    while out:
        carry = None
        new = []
        for coef in reversed(out):
            carry = coef if carry is None else carry * c + coef
            new.append(carry)
        new.reverse()
        res.append(new[0])
        out = new[1:]
    return res


def pdivmod(f, g):
    f, g = list(trim(f)), trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead = g[-1]
    q = [F(0)] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        if f[-1] == 0:
            f.pop()
            continue
        c = f[-1] / lead
        shift = len(f) - len(g)
        q[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] = f[shift + i] - c * gc
        f.pop()
        f = trim(f)
        if not f:
            break
    return trim(q), trim(f)


def pgcd(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, pdivmod(f, g)[1]
    if f:
        f = [c / f[-1] for c in f]
    return f


def pderiv(f):
    return trim([i * c for i, c in enumerate(f)][1:])


def ord_at_zero(f):
    """Multiplicity of the root t = 0; None for the zero polynomial."""
    f = list(f)
    for i, c in enumerate(f):
        if c != 0:
            return i
    return None


def factor_multiplicity(f, g) -> int:
    """Largest k with g^k dividing f (g nonconstant)."""
    if degree(g) < 1:
        raise ValueError("factor must be nonconstant")
    k = 0
    f = trim(f)
    while f:
        q, r = pdivmod(f, g)
        if r:
            break
        k += 1
        f = q
    return k


def mobius_numerator(f, alpha, beta, gamma, delta, total_degree):
    """(gamma t + delta)^total_degree * f((alpha t + beta) / (gamma t + delta)).

    Requires deg f <= total_degree; the result is a polynomial.
    """
    f = trim(f)
    if len(f) - 1 > total_degree:
        raise ValueError("degree exceeds the homogenization degree")
    num = [beta, alpha]
    den = [delta, gamma]
    out = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        term = pscale(pmul(ppow(num, i), ppow(den, total_degree - i)), c)
        out = padd(out, term)
    return out
