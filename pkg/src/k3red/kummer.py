"""The 24-curve configuration on the Kummer surface of a product of two
elliptic curves, elliptic-fibration validation on it, and the good-reduction
decision for Km(C1 x C2) by matched quadratic twists.

Curve names follow the product structure: u_i are the images of the fibers
through the 2-torsion of the first curve, v_j those of the second, and w_ij
the exceptional curves over the sixteen 2-torsion points.  u_i meets w_ij
for each j, v_j meets w_ij for each i, and there are no other intersections.

The reduction decision runs on the two elliptic factors: the Kummer surface
has good reduction over an unramified extension exactly when a single twist
class d in {1, p} (modulo unramified absorption) makes both factors good; a
common ramified twist is invisible on the Kummer side, since twisting by d
becomes trivial after the quotient by -1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elliptic import WeierstrassCurve, reduction_data, report_from_invariants
from .kodaira import KodairaType, recognize_config
from .localfield import QpContext

U_NAMES = tuple(f"u{i}" for i in range(4))
V_NAMES = tuple(f"v{j}" for j in range(4))
W_NAMES = tuple(f"w{i}{j}" for i in range(4) for j in range(4))
CLASS_NAMES = U_NAMES + V_NAMES + W_NAMES


@dataclass(frozen=True)
class CurveConfig:
    """Named (-2)-classes with their integer intersection Gram matrix."""

    names: tuple
    gram: tuple

    def __post_init__(self):
        n = len(self.names)
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("Gram matrix shape mismatch")
        for i in range(n):
            if self.gram[i][i] != -2:
                raise ValueError("diagonal entries must be -2")
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
                if i != j and self.gram[i][j] < 0:
                    raise ValueError("distinct classes meet nonnegatively")

    def index(self, name: str) -> int:
        return self.names.index(name)

    def divisor(self, coefficients: dict) -> "DivisorClass":
        coeffs = [0] * len(self.names)
        for name, c in coefficients.items():
            coeffs[self.index(name)] = int(c)
        return DivisorClass(tuple(coeffs))


@dataclass(frozen=True)
class DivisorClass:
    coefficients: tuple

    def support(self):
        return tuple(i for i, c in enumerate(self.coefficients) if c != 0)

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in
                                  zip(self.coefficients, other.coefficients)))


def kummer_config() -> CurveConfig:
    """The canonical 24-class configuration of Km(C1 x C2)."""
    n = len(CLASS_NAMES)
    gram = [[0] * n for _ in range(n)]
    for k in range(n):
        gram[k][k] = -2
    for i in range(4):
        for j in range(4):
            w = CLASS_NAMES.index(f"w{i}{j}")
            u = CLASS_NAMES.index(f"u{i}")
            v = CLASS_NAMES.index(f"v{j}")
            gram[u][w] = gram[w][u] = 1
            gram[v][w] = gram[w][v] = 1
    return CurveConfig(CLASS_NAMES, tuple(tuple(r) for r in gram))


def pair(cfg: CurveConfig, d: DivisorClass, e: DivisorClass) -> int:
    """Intersection number D . E through the Gram matrix."""
    n = len(cfg.names)
    if len(d.coefficients) != n or len(e.coefficients) != n:
        raise ValueError("dimension mismatch")
    return sum(
        d.coefficients[i] * cfg.gram[i][j] * e.coefficients[j]
        for i in range(n)
        for j in range(n)
        if d.coefficients[i] and e.coefficients[j]
    )


def d_zero(cfg: CurveConfig) -> DivisorClass:
    return cfg.divisor({"v0": 1, "v1": 1, "v2": 1,
                        "w30": 2, "w31": 2, "w32": 2, "u3": 3})


def d_infinity(cfg: CurveConfig) -> DivisorClass:
    return cfg.divisor({"u0": 1, "u1": 1, "u2": 1,
                        "w03": 2, "w13": 2, "w23": 2, "v3": 3})


def w00(cfg: CurveConfig) -> DivisorClass:
    return cfg.divisor({"w00": 1})


def _support_connected(cfg, support):
    if not support:
        return False
    seen = {support[0]}
    stack = [support[0]]
    sup = set(support)
    while stack:
        i = stack.pop()
        for j in sup:
            if j != i and cfg.gram[i][j] > 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == sup


def _sub_gram(cfg, support):
    return [[cfg.gram[i][j] for j in support] for i in support]


def recognize_divisor(cfg: CurveConfig, d: DivisorClass) -> KodairaType:
    return recognize_config(_sub_gram(cfg, d.support()))


@dataclass(frozen=True)
class FibrationReport:
    d_self_intersection: int
    d_connected: bool
    section_degree: int
    d_type: str | None
    others: tuple  # per divisor: (self-int, section degree, disjoint, type)
    ok: bool


def validate_fibration(cfg: CurveConfig, d: DivisorClass, z: DivisorClass,
                       others=()) -> FibrationReport:
    """Check the fibration conditions: D^2 = 0, D connected, Z . D = 1, and
    for each further divisor D': same conditions plus component-wise
    disjointness from D."""
    d2 = pair(cfg, d, d)
    connected = _support_connected(cfg, d.support())
    zd = pair(cfg, z, d)
    ok = d2 == 0 and connected and zd == 1
    d_type = None
    if ok:
        try:
            d_type = recognize_divisor(cfg, d).serialize()
        except ValueError:
            d_type = None
    rows = []
    dsup = set(d.support())
    for other in others:
        o2 = pair(cfg, other, other)
        zo = pair(cfg, z, other)
        disjoint = all(
            cfg.gram[i][j] == 0
            for i in other.support()
            for j in dsup
        )
        row_ok = o2 == 0 and zo == 1 and disjoint and \
            _support_connected(cfg, other.support())
        o_type = None
        if row_ok:
            try:
                o_type = recognize_divisor(cfg, other).serialize()
            except ValueError:
                o_type = None
        rows.append((o2, zo, disjoint, o_type, row_ok))
        ok = ok and row_ok
    return FibrationReport(d2, connected, zd, d_type, tuple(rows), ok)


# ---------------------------------------------------------------------------
# reduction decision


GOOD_UNRAMIFIED = "good-over-unramified"
GOOD_MATCHED_TWIST = "good-after-matched-ramified-quadratic-twist"
NOT_POTENTIALLY_GOOD = "not-potentially-good"
NEEDS_DEEPER = "potentially-good-but-needs-deeper-extension"


@dataclass(frozen=True)
class KummerDecision:
    verdict: str
    km_good_over_unramified: bool
    extension_e: int | None  # minimal tame e making a matched twist possible
    twist_exponent: int | None  # k with d = pi^k the matching twist
    curve_reports: tuple

    @property
    def invariant_key(self):
        # stable under common twists of the two factors
        return (self.km_good_over_unramified, self.extension_e)


def match_twists(v1: int, v2: int):
    """Minimal tame base change e (and uniformizer-twist exponent k) making
    both minimal discriminant valuations vanish mod 12."""
    for e in (1, 2, 3, 4, 6, 12):
        for k in (0, 1):
            if (e * v1 + 6 * k) % 12 == 0 and (e * v2 + 6 * k) % 12 == 0:
                return e, k
    raise AssertionError("e = 12 always matches")


def decide_from_valuations(v1: int, v2: int, potentially_good: bool,
                           reports=()) -> KummerDecision:
    if not potentially_good:
        return KummerDecision(NOT_POTENTIALLY_GOOD, False, None, None,
                              tuple(reports))
    e, k = match_twists(v1, v2)
    if e == 1:
        verdict = GOOD_UNRAMIFIED if k == 0 else GOOD_MATCHED_TWIST
        return KummerDecision(verdict, True, 1, k, tuple(reports))
    return KummerDecision(NEEDS_DEEPER, False, e, k, tuple(reports))


def kummer_reduction_decision(c1: WeierstrassCurve, c2: WeierstrassCurve,
                              p: int, scale: int = 1) -> KummerDecision:
    """Good-reduction decision for Km(C1 x C2) over Q_p (or over a tame
    extension of ramification index ``scale``)."""
    ctx = QpContext(p)
    reports = []
    for c in (c1, c2):
        inv, k = reduction_data(c.a, c.b, ctx, scale=scale)
        reports.append(report_from_invariants(inv, k))
    pg = all(r.potentially_good for r in reports)
    v1 = reports[0].invariants.vdelta
    v2 = reports[1].invariants.vdelta
    return decide_from_valuations(v1, v2, pg, reports)
