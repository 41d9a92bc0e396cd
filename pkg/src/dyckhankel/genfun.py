"""Generating functions of peak-avoiding Dyck paths, built several ways.

``dseries_recursive`` unrolls the first-return recursion
D^S = 1 / (1 + [1 in S] x - x D^(S-1)), ``dseries_cf`` solves the m-layer
continued fraction of a periodic set as a fixed point, and ``fmr_series``
solves the closed quadratic equation for F^{m,r}.  They are independent and
are meant to be compared against each other and against enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import (
    PoleAtOriginError,
    Poly,
    QuadEq,
    RatFun,
    TruncSeries,
    geom_sum,
    series_expand,
    solve_quadratic,
)
from .paths import HeightSet


class MismatchError(AssertionError):
    """Two routes to the same series disagree."""


def default_order(m: int) -> int:
    """Truncation that covers Hankel sizes up to 3(m+1)."""
    return 6 * (m + 1) + 2


@dataclass(frozen=True)
class GFRequest:
    heightset: HeightSet
    order: int

    def __post_init__(self):
        S = self.heightset
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if S.modulus is not None and S.residues >= set(range(1, S.modulus + 1)):
            raise ValueError("residue set must be a proper subset of 1..m")


def catalan_series(order: int) -> TruncSeries:
    return solve_quadratic(QuadEq(0, 1, RatFun(1), RatFun(-1)), order)


def dseries_recursive(req: GFRequest) -> TruncSeries:
    """D^S by the first-return recursion.

    Coefficients up to x^N of D^S need D^(S-1) only up to x^(N-1), so the
    recursion is cut either where the shifted set has no positive elements
    (then D = Catalan) or at depth N + 1.
    """
    S, N = req.heightset, req.order
    chain = [S]
    while chain[-1].has_positive() and len(chain) <= N + 1:
        chain.append(chain[-1] - 1)
    depth = len(chain) - 1
    bottom = N - depth
    D = catalan_series(bottom) if bottom >= 0 else TruncSeries(())
    for j in range(depth - 1, -1, -1):
        order = N - j
        inner = TruncSeries((0,) + D.coeffs, order)  # x D^(S-j-1)
        chi = 1 if 1 in chain[j] else 0
        denom = TruncSeries((1, chi), order) - inner
        D = denom.reciprocal()
    return D


def dseries(S: HeightSet, order: int) -> TruncSeries:
    return dseries_recursive(GFRequest(S, order))


def _cf_layers(chis: list[int], D: TruncSeries) -> TruncSeries:
    N = D.order
    t = D
    for chi in reversed(chis):
        t = (TruncSeries((1, chi), N) - t.shift(1)).reciprocal()
    return t


def dseries_cf(m: int, V: Iterable[int], order: int) -> TruncSeries:
    """Fixed point of the m-layer continued fraction for the set (m, V).

    Every layer contributes a factor x, so one pass through all m layers
    fixes at least m more coefficients; iteration stops as soon as a pass
    leaves the truncation unchanged, which then is the fixed point.
    """
    V = set(V)
    if m < 2 or not V <= set(range(1, m + 1)):
        raise ValueError(f"bad periodic set m={m}, V={sorted(V)}")
    chis = [1 if i in V else 0 for i in range(1, m + 1)]
    D = TruncSeries.zero(order)
    for _ in range(order + 2):
        nxt = _cf_layers(chis, D)
        if nxt == D:
            return D
        D = nxt
    return D


def cf_residual(m: int, V: Iterable[int], D: TruncSeries) -> TruncSeries:
    V = set(V)
    return _cf_layers([1 if i in V else 0 for i in range(1, m + 1)], D) - D


def verify_algebraic(F: TruncSeries, S: HeightSet) -> TruncSeries:
    """Residual of the squared-out closed forms for odd / even forbidden heights.

    For S = (2,{1}): (2x(1+x)F - x - 1)^2 - (1 - 2x - 3x^2);
    for S = (2,{2}): (2xF - x - 1)^2 - (1 - 2x - 3x^2).
    """
    N = F.order
    if S == HeightSet.periodic(2, {1}):
        lin = TruncSeries((0, 2, 2), N) * F
    elif S == HeightSet.periodic(2, {2}):
        lin = F.shift(1) * 2
    else:
        raise ValueError(f"no closed form for {S}")
    t = lin - TruncSeries((1, 1), N)
    return t * t - TruncSeries((1, -2, -3), N)


# ---------------------------------------------------------------------------
# F^{m,r}: only peak heights = r (mod m) allowed


def fmr_heightset(m: int, r: int) -> HeightSet:
    return HeightSet.excluding_residue(m, r)


def _check_mr(m: int, r: int):
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got r={r}")


def fmr_coefficients(m: int, r: int) -> tuple[RatFun, RatFun, RatFun]:
    """(P, Q, R) with F^{m,r} = P / (Q + R x F^{m,r}).

    P = 1 - A B,  Q = 1 + x - C B - A E,  R = C B + W - 1  where
    A = sum_{2}^{m-r+1}, B = sum_{0}^{r-3}, C = sum_{3}^{m-r+1},
    E = sum_{0}^{r-2}, W = sum_{2}^{m-r}  (sums of x^i, signed convention).
    """
    _check_mr(m, r)
    A, B = geom_sum(2, m - r + 1), geom_sum(0, r - 3)
    C, E = geom_sum(3, m - r + 1), geom_sum(0, r - 2)
    W = geom_sum(2, m - r)
    P = 1 - A * B
    Q = 1 + RatFun(Poly([0, 1])) - C * B - A * E
    R = C * B + W - 1
    for name, f in (("P", P), ("Q", Q), ("R", R)):
        if f.has_pole_at_origin:
            raise PoleAtOriginError(f"{name} = {f} keeps a pole at 0 for m={m}, r={r}")
    return P, Q, R


def fmr_coefficients_literal(m: int, r: int) -> tuple[RatFun, RatFun, RatFun]:
    """Same as :func:`fmr_coefficients` but with R = C B - 1 (no W term).

    This variant is the one usually quoted for the r-general equation.  It
    agrees with the continued fraction only when m - r = 1; kept so that the
    discrepancy stays checkable.
    """
    P, Q, _ = fmr_coefficients(m, r)
    C, B = geom_sum(3, m - r + 1), geom_sum(0, r - 3)
    return P, Q, C * B - 1


def fmr_equation(m: int, r: int) -> QuadEq:
    """Canonical form F = 1 / (Q/P + x (R/P) F)."""
    P, Q, R = fmr_coefficients(m, r)
    if P.at_zero() != 1:
        raise ValueError(f"P(0) = {P.at_zero()} != 1 for m={m}, r={r}")
    return QuadEq(0, 1, Q / P, R / P)


def fmr_residual(m: int, r: int, F: TruncSeries, literal: bool = False) -> TruncSeries:
    """F (Q + R x F) - P, with the uncanonicalized coefficients."""
    P, Q, R = (fmr_coefficients_literal if literal else fmr_coefficients)(m, r)
    N = F.order
    Ps, Qs, Rs = (series_expand(f, N) for f in (P, Q, R))
    return F * (Qs + (Rs * F).shift(1)) - Ps


def fmr_series(m: int, r: int, order: int | None = None) -> TruncSeries:
    _check_mr(m, r)
    return solve_quadratic(fmr_equation(m, r), default_order(m) if order is None else order)


def first_mismatch(a: TruncSeries | list, b: TruncSeries | list) -> int | None:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


def assert_same(label: str, a, b):
    i = first_mismatch(a, b)
    if i is not None:
        ai = a[i] if i < len(a) else "<missing>"
        bi = b[i] if i < len(b) else "<missing>"
        raise MismatchError(f"{label}: first difference at x^{i}: {ai} != {bi}")


def cross_validate(m: int, r: int, order: int | None = None) -> TruncSeries:
    """Build F^{m,r} three ways, raise MismatchError on disagreement."""
    N = default_order(m) if order is None else order
    S = fmr_heightset(m, r)
    F = fmr_series(m, r, N)
    assert_same(f"equation vs continued fraction (m={m}, r={r})", F, dseries_cf(m, S.residues, N))
    assert_same(f"equation vs recursion (m={m}, r={r})", F, dseries(S, N))
    return F

