"""Kodaira fiber types: Euler numbers, the valuation-triple classification
table for residue characteristic >= 5, and recognition of fiber types from
weighted dual graphs of (-2)-classes.

The table needs no Tate loop: away from 2 and 3 the triple
(v(c4), v(c6), v(Delta)) of a minimal model determines the type.

Graph recognition returns the cycle reading I_n for the two-vertex double
edge and for triangles; types III and IV have the same intersection matrix
as I_2 and I_3 and cannot be told apart from the Gram data alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = math.inf


@dataclass(frozen=True)
class KodairaType:
    tag: str  # "I0", "In", "II", "III", "IV", "I*n", "IV*", "III*", "II*"
    n: int = 0

    def __post_init__(self):
        if self.tag not in ("I0", "In", "II", "III", "IV", "I*n", "IV*", "III*", "II*"):
            raise ValueError(f"unknown fiber tag {self.tag!r}")
        if self.tag == "In" and self.n < 1:
            raise ValueError("I_n requires n >= 1")
        if self.tag == "I*n" and self.n < 0:
            raise ValueError("I*_n requires n >= 0")

    def serialize(self) -> str:
        if self.tag == "In":
            return f"In({self.n})"
        if self.tag == "I*n":
            return f"I*n({self.n})"
        return self.tag

    def __str__(self):
        return self.serialize()


I0 = KodairaType("I0")
II = KodairaType("II")
III = KodairaType("III")
IV = KodairaType("IV")
IVSTAR = KodairaType("IV*")
IIISTAR = KodairaType("III*")
IISTAR = KodairaType("II*")


def In(n: int) -> KodairaType:
    return KodairaType("In", n)


def Istar(n: int) -> KodairaType:
    return KodairaType("I*n", n)


def euler_number(t: KodairaType) -> int:
    """Topological Euler number of the fiber."""
    return {
        "I0": 0,
        "In": t.n,
        "II": 2,
        "III": 3,
        "IV": 4,
        "I*n": t.n + 6,
        "IV*": 8,
        "III*": 9,
        "II*": 10,
    }[t.tag]


def component_count(t: KodairaType) -> int:
    return {
        "I0": 1,
        "In": max(t.n, 1),
        "II": 1,
        "III": 2,
        "IV": 3,
        "I*n": t.n + 5,
        "IV*": 7,
        "III*": 8,
        "II*": 9,
    }[t.tag]


def multiplicities(t: KodairaType) -> tuple:
    """Component multiplicities, in the vertex order of standard_config."""
    if t.tag in ("I0", "In", "II"):
        return tuple([1] * component_count(t))
    if t.tag == "III":
        return (1, 1)
    if t.tag == "IV":
        return (1, 1, 1)
    if t.tag == "I*n":
        return (1, 1) + tuple([2] * (t.n + 1)) + (1, 1)
    if t.tag == "IV*":
        return (3, 2, 1, 2, 1, 2, 1)
    if t.tag == "III*":
        return (1, 2, 3, 4, 3, 2, 1, 2)
    return (1, 2, 3, 4, 5, 6, 4, 2, 3)  # II*: affine E8 marks


@dataclass(frozen=True)
class LocalInvariants:
    """Valuations (v(c4), v(c6), v(Delta)) of a minimal model; None = infinity."""

    vc4: int | None
    vc6: int | None
    vdelta: int

    def as_tuple(self):
        c4 = INF if self.vc4 is None else self.vc4
        c6 = INF if self.vc6 is None else self.vc6
        return c4, c6, self.vdelta


def classify_from_invariants(inv: LocalInvariants) -> KodairaType:
    """Fiber type from the minimal-model valuation triple, p >= 5 only."""
    vc4, vc6, vd = inv.as_tuple()
    if vd < 0:
        raise ValueError("v(Delta) must be nonnegative for an integral model")
    if vc4 >= 4 and vc6 >= 6 and vd >= 12:
        raise ValueError(f"non-minimal triple {inv}")
    if vd == 0:
        return I0
    if vc4 == 0:
        return In(vd)
    # additive types
    if vd == 2 and vc6 == 1:
        return II
    if vd == 3 and vc4 == 1 and vc6 >= 2:
        return III
    if vd == 4 and vc6 == 2 and vc4 >= 2:
        return IV
    if vd == 6 and vc4 >= 2 and vc6 >= 3:
        return Istar(0)
    if vc4 == 2 and vc6 == 3 and vd >= 7:
        return Istar(vd - 6)
    if vd == 8 and vc6 == 4 and vc4 >= 3:
        return IVSTAR
    if vd == 9 and vc4 == 3 and vc6 >= 5:
        return IIISTAR
    if vd == 10 and vc6 == 5 and vc4 >= 4:
        return IISTAR
    raise ValueError(f"triple {inv} is not realizable by a minimal model (p >= 5)")


# ---------------------------------------------------------------------------
# configuration recognition


def standard_config(t: KodairaType):
    """Gram matrix of the standard dual graph, for types with >= 2 components."""
    m = component_count(t)
    if m < 2:
        raise ValueError(f"{t} has fewer than two components")
    gram = [[0] * m for _ in range(m)]
    for i in range(m):
        gram[i][i] = -2

    def join(i, j, w=1):
        gram[i][j] = gram[j][i] = w

    if t.tag in ("In", "III"):
        if m == 2:
            join(0, 1, 2)
        else:
            for i in range(m):
                join(i, (i + 1) % m)
    elif t.tag == "IV":
        join(0, 1), join(1, 2), join(2, 0)
    elif t.tag == "I*n":
        # vertices: tips 0,1 | chain of twos 2..n+2 | tips n+3, n+4
        lo, hi = 2, t.n + 2
        join(0, lo), join(1, lo)
        for i in range(lo, hi):
            join(i, i + 1)
        join(hi, t.n + 3), join(hi, t.n + 4)
    elif t.tag == "IV*":
        for arm in range(3):
            a, b = 1 + 2 * arm, 2 + 2 * arm
            join(0, a), join(a, b)
    elif t.tag == "III*":
        for i in range(6):
            join(i, i + 1)
        join(3, 7)
    else:  # II*
        for i in range(7):
            join(i, i + 1)
        join(5, 8)
    return gram


def _integer_kernel(gram):
    """Primitive integer kernel vectors of a symmetric integer matrix."""
    n = len(gram)
    rows = [[Fraction(x) for x in row] for row in gram]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        den = math.lcm(*[x.denominator for x in v])
        w = [int(x * den) for x in v]
        g = math.gcd(*[abs(x) for x in w if x != 0])
        basis.append([x // g for x in w])
    return basis


def _connected(gram):
    n = len(gram)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and gram[i][j] > 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _isomorphic(a, b, ma, mb):
    """Backtracking isomorphism of small weighted graphs with multiplicities."""
    n = len(a)
    if len(b) != n or sorted(ma) != sorted(mb):
        return False

    def sig(g, mult, i):
        return (mult[i], sorted((g[i][j], mult[j]) for j in range(n)
                                if j != i and g[i][j] != 0))

    sa = [sig(a, ma, i) for i in range(n)]
    sb = [sig(b, mb, i) for i in range(n)]
    if sorted(sa) != sorted(sb):
        return False
    cands = [[j for j in range(n) if sb[j] == sa[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cands[i]))
    assign = {}
    used = set()

    def bt(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            ok = all(a[i][i2] == b[j][assign[i2]] for i2 in assign)
            if ok:
                assign[i] = j
                used.add(j)
                if bt(k + 1):
                    return True
                del assign[i]
                used.remove(j)
        return False

    return bt(0)


def recognize_config(cfg) -> KodairaType:
    """Recognize the Kodaira type of a connected configuration of (-2)-classes.

    ``cfg`` is either a Gram matrix (list of rows) or an object with a
    ``gram`` attribute.  Recognition checks the affine-diagram invariants
    (1-dimensional kernel spanned by a positive primitive vector) and then
    certifies by explicit graph isomorphism with the standard configuration.
    """
    gram = getattr(cfg, "gram", cfg)
    gram = [list(row) for row in gram]
    n = len(gram)
    if n < 2:
        raise ValueError("a recognizable fiber needs at least two components")
    for i in range(n):
        if gram[i][i] != -2:
            raise ValueError("all classes must have self-intersection -2")
        for j in range(n):
            if gram[i][j] != gram[j][i] or (i != j and gram[i][j] < 0):
                raise ValueError("Gram matrix must be symmetric with "
                                 "nonnegative off-diagonal entries")
    if not _connected(gram):
        raise ValueError("configuration is not connected")
    kernel = _integer_kernel(gram)
    if len(kernel) != 1:
        raise ValueError("intersection matrix does not have a 1-dimensional "
                         "kernel; not a fiber configuration")
    mult = kernel[0]
    if all(x < 0 for x in mult):
        mult = [-x for x in mult]
    if any(x <= 0 for x in mult):
        raise ValueError("kernel vector is not positive; not a fiber "
                         "configuration")

    top = max(mult)
    if top == 1:
        candidate = In(n)
    elif top == 2:
        if n < 5:
            raise ValueError("multiplicity pattern matches no Kodaira type")
        candidate = Istar(n - 5)
    elif top == 3:
        candidate = IVSTAR
    elif top == 4:
        candidate = IIISTAR
    elif top == 6:
        candidate = IISTAR
    else:
        raise ValueError("multiplicity pattern matches no Kodaira type")

    std = standard_config(candidate)
    if not _isomorphic(gram, std, mult, list(multiplicities(candidate))):
        raise ValueError(f"configuration is not isomorphic to the standard "
                         f"{candidate} graph")
    return candidate
