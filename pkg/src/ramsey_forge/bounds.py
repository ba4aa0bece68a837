"""Exact evaluation of the multipartite Ramsey bounds.

Notation: ``M_s(K_{2,m};2)`` is the set number (fewest parts of size s that
force a monochromatic K_{2,m}), ``m_c(K_{2,m};2)`` the size number (smallest
part size with c parts). Everything here is integer or Fraction arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import HypothesisFailed, InvalidInput
from .gf import field_create, prime_power
from .hadamard import alpha_of, delete_symmetric, sylvester
from .srg import (
    SrgParams,
    conference_params,
    paley_graph,
    rook_params,
    srg_params,
    theta,
    theta_check,
    triangular_params,
)

# provenance tags used in reports
PSI_LOWER = "psi-coloring of K_{n x zeta} avoids K_{2,theta(zeta+alpha)+1}"
SET_UPPER = "gated set-Ramsey ceiling ((m-1)k^2+k+2s-1)/s"
SIZE_UPPER = "gated size-Ramsey ceiling (ck(S-k)+(c-1)k)/(c-1)^2"
EXACT_THRESHOLD = "zeta > (sqrt2+1)(2n-1)(4an-4a+1) with counting gate at c = 4n-2"

# largest field order for which a Paley witness is actually built and checked
PALEY_BUILD_LIMIT = 1000


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class Bound:
    value: int
    provenance: str
    applicable: bool = True
    conditions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "provenance": self.provenance,
            "applicable": self.applicable,
            "conditions": dict(self.conditions),
        }


@dataclass(frozen=True)
class BoundReport:
    quantity: str  # "M_s" or "m_c"
    fixed: int  # s for M_s, c for m_c
    target: tuple[int, int]
    lower: Bound
    upper: Bound | None = None
    exact: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.upper is not None and self.upper.applicable and self.lower.value > self.upper.value:
            raise AssertionError(f"lower {self.lower.value} exceeds upper {self.upper.value}")
        if self.exact is not None:
            assert self.exact == self.lower.value
            assert self.upper is None or not self.upper.applicable or self.upper.value == self.exact

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "fixed": self.fixed,
            "target": list(self.target),
            "lower": self.lower.to_dict(),
            "upper": self.upper.to_dict() if self.upper is not None else None,
            "exact": self.exact,
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, BoundReport):
        return x.to_dict()
    return x


@dataclass(frozen=True)
class Scenario:
    srg: SrgParams
    zeta: int
    alpha: int

    def __post_init__(self):
        if self.zeta < 2:
            raise InvalidInput("zeta must be >= 2")
        if not 0 <= self.alpha <= self.zeta:
            raise InvalidInput("alpha must lie in [0, zeta]")

    @property
    def theta(self) -> int:
        return theta(self.srg)

    @property
    def m(self) -> int:
        return self.theta * (self.zeta + self.alpha) + 1


# -- gated ceilings ---------------------------------------------------------

@dataclass(frozen=True)
class GatedBound:
    value: int  # the ceiling, reported whether or not the gate holds
    gate: int  # quantity that must be divisible by ``divisor``
    divisor: int

    @property
    def holds(self) -> bool:
        return self.gate % self.divisor == 0

    def to_dict(self) -> dict:
        return {"value": self.value, "gate": self.gate, "divisor": self.divisor, "holds": self.holds}


def set_ramsey_upper(m: int, n: int, k: int) -> GatedBound:
    """M_m(K_{2,n};k) <= ceil(((n-1)k^2 + k + 2m - 1)/m) when m(ceil - 1) is divisible by k."""
    if m < 2 or k < 2 or n < 1:
        raise InvalidInput("need m >= 2, k >= 2, n >= 1")
    value = ceil_frac(Fraction((n - 1) * k * k + k + 2 * m - 1, m))
    return GatedBound(value, m * (value - 1), k)


def size_ramsey_upper(c: int, widths) -> GatedBound:
    """m_c(K_{2,n_1},...,K_{2,n_k}) <= ceil((ck(S-k) + (c-1)k)/(c-1)^2), gated on (c-1)*ceil."""
    widths = [int(w) for w in widths]
    k = len(widths)
    if c < 2 or k < 2 or widths[0] < 2:
        raise InvalidInput("need c >= 2, at least two widths, and n_1 >= 2")
    if any(w < 1 for w in widths):
        raise InvalidInput("widths must be positive")
    S = sum(widths)
    value = ceil_frac(Fraction(c * k * (S - k) + (c - 1) * k, (c - 1) ** 2))
    return GatedBound(value, (c - 1) * value, k)


@dataclass(frozen=True)
class GateCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_dict(self) -> dict:
        return {"lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs), "holds": self.holds}


def _binom2(x: Fraction) -> Fraction:
    return x * (x - 1) / 2


def counting_gate(s: int, widths, c: int) -> GateCheck:
    """k c s C((c-1)s/k, 2) > sum (n_i - 1) C(cs, 2); holding implies M_s <= c.

    C(x, 2) is x(x-1)/2 evaluated over the rationals.
    """
    widths = [int(w) for w in widths]
    k = len(widths)
    if s < 1 or c < 1 or k < 2:
        raise InvalidInput("need s >= 1, c >= 1 and at least two widths")
    lhs = k * c * s * _binom2(Fraction((c - 1) * s, k))
    rhs = sum(w - 1 for w in widths) * _binom2(Fraction(c * s))
    return GateCheck(lhs, rhs, lhs > rhs)


# -- psi-coloring bounds ----------------------------------------------------

def psi_bounds(sc: Scenario) -> tuple[BoundReport, BoundReport]:
    """Lower bounds from the psi-coloring plus the two conditional uppers.

    Returns (M report with s = zeta, m report with c = n). Uppers whose parity
    condition fails are still recorded, marked not applicable.
    """
    n, zeta, alpha, th = sc.srg.n, sc.zeta, sc.alpha, sc.theta
    target = (2, sc.m)

    frac_i = ceil_frac(Fraction(4 * th * alpha + 1, zeta))
    upper_i = 4 * th + 2 + frac_i
    cond_i = {"zeta_even": zeta % 2 == 0, "ceil_minus_one_even": (frac_i - 1) % 2 == 0}
    upper_M = Bound(upper_i, SET_UPPER, any(cond_i.values()), cond_i)
    lower_M = Bound(n + 1, PSI_LOWER)
    big = {"theta": th, "zeta": zeta, "alpha": alpha, "srg": list(sc.srg.as_tuple())}
    M = BoundReport(
        "M_s", zeta, target, lower_M, upper_M,
        exact=n + 1 if upper_M.applicable and upper_i == n + 1 else None,
        details=dict(big),
    )

    upper_ii = ceil_frac(Fraction(4 * n * th * (zeta + alpha), (n - 1) ** 2) + Fraction(2, n - 1))
    cond_ii = {"n_minus_one_even": (n - 1) % 2 == 0, "ceil_even": upper_ii % 2 == 0}
    upper_m = Bound(upper_ii, SIZE_UPPER, any(cond_ii.values()), cond_ii)
    lower_m = Bound(zeta + 1, PSI_LOWER)
    m_rep = BoundReport(
        "m_c", n, target, lower_m, upper_m,
        exact=zeta + 1 if upper_m.applicable and upper_ii == zeta + 1 else None,
        details=dict(big),
    )
    return M, m_rep


# -- exact value above the sqrt(2) threshold --------------------------------

@dataclass(frozen=True)
class Threshold:
    X: int  # (2n-1)(4an-4a+1)
    zeta: int

    @property
    def holds(self) -> bool:
        # zeta > (sqrt2 + 1) X  <=>  zeta - X > 0 and (zeta - X)^2 > 2 X^2
        d = self.zeta - self.X
        return d > 0 and d * d > 2 * self.X * self.X

    def to_dict(self) -> dict:
        d = self.zeta - self.X
        return {"X": self.X, "zeta_minus_X": d, "squared": d * d, "twice_X_squared": 2 * self.X**2, "holds": self.holds}


def threshold(n: int, zeta: int, alpha: int) -> Threshold:
    return Threshold((2 * n - 1) * (4 * alpha * n - 4 * alpha + 1), zeta)


def conference_srg_source(n: int, assume: bool = False) -> str:
    """How the (4n-3, 2n-2, n-2, n-1) graph is obtained, or HypothesisFailed."""
    q = 4 * n - 3
    pt = prime_power(q)
    if pt is not None and q % 4 == 1:
        if q <= PALEY_BUILD_LIMIT:
            G = paley_graph(field_create(*pt))
            assert srg_params(G) == conference_params(n)
            return f"constructed: Paley({q}) verified"
        return f"Paley({q}) family, not built"
    if assume:
        return f"assumed: SRG{conference_params(n).as_tuple()}"
    raise HypothesisFailed(
        f"no Paley graph of order {q}; pass assume_srg to proceed", clause="srg-exists"
    )


def symmetric_matrix_source(zeta: int, alpha: int) -> str:
    """Name a construction of a symmetric [alpha]-Hadamard matrix of order zeta, if one is built in."""
    for d in range(alpha + 1):
        total = zeta + d
        if total & (total - 1) == 0 and 2 * d <= total:
            k = total.bit_length() - 1
            H = delete_symmetric(sylvester(k), d)
            assert H.order == zeta and H.symmetric and alpha_of(H).alpha <= alpha
            return f"constructed: Sylvester({total}) minus {d}" if d else f"constructed: Sylvester({total})"
    return f"assumed: symmetric [{alpha}]-Hadamard of order {zeta}"


def exact_set_ramsey(n: int, zeta: int, alpha: int, assume_srg: bool = False) -> BoundReport:
    """M_zeta(K_{2,(zeta+alpha)(n-1)+1};2) = 4n - 2 above the sqrt(2) threshold.

    The irrational threshold is decided by integer squaring. On success the
    counting gate is re-evaluated at c = 4n - 2 as an independent check.
    """
    if n < 2:
        raise InvalidInput("n must be >= 2")
    if zeta < 2 or not 0 <= alpha <= zeta:
        raise InvalidInput("need zeta >= 2 and 0 <= alpha <= zeta")
    th = threshold(n, zeta, alpha)
    width = (zeta + alpha) * (n - 1) + 1
    partial = {"threshold": th.to_dict(), "target": [2, width]}
    if zeta % 2:
        raise HypothesisFailed(f"zeta = {zeta} is odd", clause="zeta-even", report=partial)
    if not th.holds:
        raise HypothesisFailed(
            f"zeta = {zeta} does not exceed (sqrt2+1)*{th.X}", clause="threshold", report=partial
        )
    srg_source = conference_srg_source(n, assume_srg)
    c = 4 * n - 2
    gate = counting_gate(zeta, [width, width], c)
    if not gate.holds:
        raise AssertionError(f"counting gate failed at c = {c} although the threshold holds")
    details = {
        "threshold": th.to_dict(),
        "counting_gate": gate.to_dict(),
        "srg": srg_source,
        "matrix": symmetric_matrix_source(zeta, alpha),
    }
    return BoundReport(
        "M_s", zeta, (2, width),
        Bound(c, PSI_LOWER),
        Bound(c, EXACT_THRESHOLD),
        exact=c,
        details=details,
    )


# -- named families ---------------------------------------------------------

FAMILIES = ("conference", "rook", "triangular", "paley-exact")


def family_report(which: str, **params) -> BoundReport:
    """Bounds for one of the named SRG families.

    conference(n, zeta, alpha): SRG (4n-3, 2n-2, n-2, n-1).
    rook(n, zeta, alpha): n x n rook's graph, n >= 4.
    triangular(n, zeta, alpha): line graph of K_n, n >= 6.
    paley-exact(r, alpha, q): exact M_{4r^4-alpha}(K_{2,r^4(q-1)+1};2) = q + 1.
    """
    if which == "paley-exact":
        return _paley_exact(**params)
    if which not in FAMILIES:
        raise InvalidInput(f"unknown family {which!r}; choose from {', '.join(FAMILIES)}")
    n, zeta, alpha = params["n"], params["zeta"], params.get("alpha", 0)
    minimum = {"conference": 2, "rook": 4, "triangular": 6}[which]
    if n < minimum:
        raise HypothesisFailed(f"{which} family needs n >= {minimum}", clause="n-range")
    srg = {"conference": conference_params, "rook": rook_params, "triangular": triangular_params}[which](n)
    sc = Scenario(srg, zeta, alpha)
    M, m_rep = psi_bounds(sc)
    if not M.upper.applicable:
        raise HypothesisFailed(
            "neither zeta nor ceil((4 theta alpha + 1)/zeta) - 1 is even",
            clause="parity", report=M.to_dict(),
        )
    check = theta_check(which, n)
    details = dict(M.details)
    details["matrix"] = symmetric_matrix_source(zeta, alpha)
    if which == "conference":
        details["srg_source"] = conference_srg_source(n, assume=True)
        details["size_exact"] = m_rep.exact
    if check.closed_form is not None:
        details["closed_form_theta"] = check.closed_form
        details["theta_discrepancy"] = check.discrepancy
        if check.discrepancy:
            # what the closed form would give, for side-by-side comparison
            qt = check.closed_form
            details["closed_form_target"] = [2, qt * (zeta + alpha) + 1]
            details["closed_form_upper"] = 4 * qt + 2 + ceil_frac(Fraction(4 * qt * alpha + 1, zeta))
    if which == "rook" and alpha == 0:
        closed_form_upper = 4 * n * n - 12 * n + 10
        details["closed_form_upper"] = closed_form_upper
        details["upper_discrepancy"] = closed_form_upper != M.upper.value
    return BoundReport(M.quantity, M.fixed, M.target, M.lower, M.upper, M.exact, details)


def _paley_exact(r: int, q: int, alpha: int = 0) -> BoundReport:
    pt = prime_power(q)
    if pt is None or q % 4 != 1:
        raise HypothesisFailed(f"q = {q} is not a prime power congruent to 1 mod 4", clause="q")
    if r < 1 or r % 2 == 0:
        raise HypothesisFailed(f"r = {r} is not a positive odd integer", clause="r-odd")
    R = r**4
    zeta = 4 * R - alpha
    if alpha < 0 or alpha > 2 * R:
        raise HypothesisFailed(f"alpha = {alpha} not in [0, 2r^4]", clause="alpha-range")
    if zeta % 2:
        raise HypothesisFailed(f"4r^4 - alpha = {zeta} is odd", clause="zeta-even")
    n = (q + 3) // 4
    try:
        rep = exact_set_ramsey(n, zeta, alpha)
    except HypothesisFailed as exc:
        raise HypothesisFailed(str(exc), clause=exc.clause, report=exc.report) from None
    assert rep.target == (2, R * (q - 1) + 1) and rep.exact == q + 1
    details = dict(rep.details)
    details["hadamard_order"] = 4 * R
    return BoundReport(rep.quantity, rep.fixed, rep.target, rep.lower, rep.upper, rep.exact, details)
