"""Closed forms for the tau chain of F^{m,r}, written out by hand.

These are the intermediate equations F1, F2, F3, the u_L / u_H splits and the
initial Hankel values H_0..H_m(F1) as they come out of a pencil-and-paper run
of the chain.  The mechanized chain in :mod:`dyckhankel.tau` is authoritative;
this module exists so the two can be compared instance by instance.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import Poly, QuadEq, RatFun, geom_sum
from .tau import canonicalize


def _x(e: int, c=1) -> RatFun:
    return RatFun.monomial(e, c)


def chain_equations(m: int, r: int) -> dict[str, QuadEq]:
    """Expected F1, F2 (and F3 for r >= 2), keyed by name."""
    if r == 1:
        sig = geom_sum(0, m - 1)
        F1 = QuadEq(m - 1, 2, sig * RatFun(Poly([1, -2])), -sig)
        F2 = canonicalize(sig, 1 - geom_sum(1, m - 1) - _x(m, 2), m + 1, RatFun(-1))
        return {"F1": F1, "F2": F2}
    A, B = geom_sum(2, m - r + 1), geom_sum(0, r - 3)
    F1 = QuadEq(r - 2, 2, geom_sum(r, m - 1) - geom_sum(1, r - 1) + 1, A * B - 1)
    # the sum in the F2 denominator is over x^i, i = 1..m-1
    F2 = QuadEq(m - r, r, 1 - geom_sum(1, m - 1), RatFun(-1))
    F3 = canonicalize(1 - A * B, 1 - geom_sum(1, m - r + 1) + geom_sum(m - r + 2, m - 1),
                      m - r + 2, RatFun(-1))
    return {"F1": F1, "F2": F2, "F3": F3}


def first_step_uH(m: int, r: int) -> RatFun:
    """u_H of F^{m,r} (r >= 2) with respect to d = 0."""
    num = _x(r - 2) - _x(r - 1) + _x(m - r + 1) - _x(m - r)
    den = -_x(r) + _x(m) - _x(m - r + 2) + _x(1, 2) - 1
    return num / den


def last_step_uH(m: int, r: int) -> RatFun:
    """u_H of F3 (r >= 2) with respect to d = 0."""
    num = _x(r + 1) - _x(r) - _x(m - r + 3) + _x(m - r + 2)
    den = _x(r) - _x(m) + _x(m - r + 2) - _x(1, 2) + 1
    return num / den


def middle_splits(m: int, r: int) -> dict[str, tuple[RatFun, RatFun]]:
    """(u_L, u_H) for F1 and F2 when r >= 2."""
    return {
        "F1": (1 - geom_sum(1, r - 1), geom_sum(0, m - r - 1)),
        "F2": (1 - geom_sum(1, m - r + 1), geom_sum(0, r - 3)),
    }


def initial_values(m: int, r: int) -> list[Fraction]:
    """H_0..H_m(F1)."""
    if r == 1:
        last = 1 if m % 4 in (0, 1) else -1
        return [Fraction(1)] + [Fraction(0)] * (m - 1) + [Fraction(last)]
    a = 1 if r % 4 in (1, 2) else -1
    b = a if (m - r) % 4 in (0, 3) else -a
    return ([Fraction(1)] + [Fraction(0)] * (r - 2) + [Fraction(a)]
            + [Fraction(0)] * (m - r) + [Fraction(b)])
