"""The quadratic transformation tau on equations F = x^d / (u + x^k v F).

Each step maps an equation to a new one whose Hankel determinants are tied
to the old ones by a shift of index, a sign and possibly a geometric factor.
Iterating until an equation repeats gives a linear recurrence for the
Hankel sequence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exact import (
    PoleAtOriginError,
    Poly,
    QuadEq,
    RatFun,
    TruncSeries,
    series_expand,
    solve_fraction_equation,
    solve_quadratic,
)
from .hankel import hankel_sequence

__all__ = [
    "QuadEq", "StepRelation", "Cycle", "ChainReport", "CanonicalizationError",
    "decompose_u", "intermediate_equation", "canonicalize", "tau_step",
    "tau_series_direct", "tau_chain", "recurrence_to_sequence",
    "verify_chain", "quadeq_record", "cycle_initial_values",
]

_X = RatFun(Poly([0, 1]))


class CanonicalizationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class StepRelation:
    """H_n(F) = sign * scale^(-n) * H_(n - drop)(next) for n >= 1."""

    case: str
    drop: int
    sign: int
    scale: Fraction = Fraction(1)

    def apply(self, next_h: Sequence, n: int):
        """H_n of the source, given H_0.. of the target as next_h."""
        if n == 0:
            return Fraction(1)
        j = n - self.drop
        if j < 0:
            return Fraction(0)
        return self.sign * self.scale ** (-n) * next_h[j]


def decompose_u(u: RatFun, d: int) -> tuple[Poly, RatFun]:
    """u = u_L + x^(d+2) u_H with deg u_L <= d + 1."""
    if u.has_pole_at_origin:
        raise PoleAtOriginError(f"u = {u} has a pole at the origin")
    uL = Poly(series_expand(u, d + 1).coeffs)
    uH = (u - uL).shift(-(d + 2))
    assert not uH.has_pole_at_origin
    return uL, uH


def intermediate_equation(eq: QuadEq):
    """For u(0) = 1: (numer, base, k) with G = numer / (base - x^k G)."""
    uL, uH = decompose_u(eq.u, eq.d)
    uL = RatFun(uL)
    base = uL - uH.shift(eq.d + 2)
    if eq.k == 1:
        numer = -eq.v - _X * uL * uH
        return numer, base, eq.d + 1
    numer = -eq.v.shift(eq.k - 2) - uL * uH
    return numer, base, eq.d + 2


def canonicalize(numer: RatFun, base: RatFun, k: int, coef: RatFun) -> QuadEq:
    """Rewrite T = numer / (base + x^k coef T) as x^d' / (u + x^k v T)."""
    if not numer:
        raise CanonicalizationError("numerator vanishes identically")
    d = numer.valuation
    if d < 0:
        raise CanonicalizationError(f"numerator {numer} has a pole at 0")
    w = numer.shift(-d)
    return QuadEq(d, k, base / w, coef / w)


def tau_step(eq: QuadEq) -> tuple[QuadEq, StepRelation]:
    u0 = eq.u.at_zero()
    if u0 != 1:
        nxt = QuadEq(eq.d, eq.k, eq.u / u0, eq.v / (u0 * u0))
        return nxt, StepRelation("i", 0, 1, u0)
    sign = -1 if comb(eq.d + 1, 2) % 2 else 1
    numer, base, k_int = intermediate_equation(eq)
    if eq.k == 1:
        # G = g0 + x T, then T (base - 2 g0 x^(d+1) - x^(d+2) T) = W / x
        g0 = numer.at_zero() / base.at_zero()
        W = numer - base * g0 + RatFun.monomial(eq.d + 1, g0 * g0)
        nxt = canonicalize(W.shift(-1), base - RatFun.monomial(eq.d + 1, 2 * g0),
                           eq.d + 2, RatFun(-1))
        return nxt, StepRelation("ii", eq.d + 1, sign)
    nxt = canonicalize(numer, base, k_int, RatFun(-1))
    return nxt, StepRelation("iii", eq.d + 1, sign)


def tau_series_direct(eq: QuadEq, order: int) -> TruncSeries:
    """tau(F) to x^order straight from the intermediate equation, without
    going through :func:`canonicalize`."""
    u0 = eq.u.at_zero()
    if u0 != 1:
        return solve_quadratic(eq, order) * u0
    numer, base, k_int = intermediate_equation(eq)
    N = order + 1 if eq.k == 1 else order
    G = solve_fraction_equation(series_expand(numer, N), series_expand(base, N), k_int,
                                TruncSeries((-1,), N))
    if eq.k == 1:
        return TruncSeries(G.coeffs[1:])
    return G


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class Cycle:
    start: int  # index of the equation that recurs
    delta: int
    sigma: int


@dataclass
class ChainReport:
    equations: list[QuadEq]
    relations: list[StepRelation]
    cycle: Cycle | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.relations)

    def to_record(self) -> dict:
        rec = {
            "steps": [
                {"index": i, **quadeq_record(eq),
                 "relation": _relation_record(self.relations[i]) if i < len(self.relations) else None}
                for i, eq in enumerate(self.equations)
            ],
            "cycle": None,
        }
        if self.cycle:
            rec["cycle"] = {"start": self.cycle.start, "delta": self.cycle.delta,
                            "sigma": self.cycle.sigma}
        return rec


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _ratfun_record(f: RatFun) -> dict:
    return {"num": [_rat(c) for c in f.num.coeffs], "den": [_rat(c) for c in f.den.coeffs]}


def quadeq_record(eq: QuadEq) -> dict:
    return {"d": eq.d, "k": eq.k, "u": _ratfun_record(eq.u), "v": _ratfun_record(eq.v)}


def _relation_record(rel: StepRelation) -> dict:
    return {"case": rel.case, "drop": rel.drop, "sign": rel.sign, "scale": _rat(rel.scale)}


def tau_chain(eq0: QuadEq, max_steps: int = 8) -> ChainReport:
    """Apply tau until an equation recurs or max_steps is reached."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rep = ChainReport([eq0], [])
    for _ in range(max_steps):
        nxt, rel = tau_step(rep.equations[-1])
        rep.relations.append(rel)
        seen = rep.equations.index(nxt) if nxt in rep.equations else None
        rep.equations.append(nxt)
        if seen is not None:
            rels = rep.relations[seen:]
            sigma = 1
            for r in rels:
                sigma *= r.sign
            rep.cycle = Cycle(seen, sum(r.drop for r in rels), sigma)
            bad = [r.scale for r in rels if r.scale != 1]
            if bad:
                rep.notes.append(f"scale factors {bad} inside the cycle")
            return rep
    rep.notes.append(f"no cycle within {max_steps} steps")
    return rep


def recurrence_to_sequence(report: ChainReport, init: Sequence, n_max: int) -> list[Fraction]:
    """H_1..H_{n_max} of the first equation from the cycle recurrence.

    init holds H_0..H_{delta-1} of the recurring equation.
    """
    cyc = report.cycle
    if cyc is None:
        raise ValueError("chain has no cycle")
    if any(r.scale != 1 for r in report.relations[cyc.start:]):
        raise ValueError("cycle contains a non-unit scale factor")
    if len(init) < cyc.delta:
        raise ValueError(f"need {cyc.delta} initial values, got {len(init)}")
    if cyc.delta == 0:
        raise ValueError("cycle with zero total drop does not determine the sequence")
    h = [Fraction(c) for c in init[:cyc.delta]]
    while len(h) <= n_max:
        h.append(cyc.sigma * h[len(h) - cyc.delta])
    for rel in reversed(report.relations[:cyc.start]):
        h = [rel.apply(h, n) for n in range(n_max + 1)]
    return h[1:n_max + 1]


def verify_chain(report: ChainReport, order: int, n_max: int) -> list[str]:
    """Check every executed step against solved series.

    Two checks per step: the solved series of the next equation equals tau(F)
    computed from the intermediate equation, and the Hankel relation holds
    for 1 <= n <= n_max.  Returns a list of failure messages.
    """
    failures = []
    series = [solve_quadratic(eq, order) for eq in report.equations]
    hank = [[Fraction(1)] + hankel_sequence(s, 0, n_max) for s in series]
    for i, rel in enumerate(report.relations):
        direct = tau_series_direct(report.equations[i], order)
        if direct != series[i + 1]:
            failures.append(f"step {i}: canonical equation does not reproduce tau(F)")
        for n in range(1, n_max + 1):
            want = rel.apply(hank[i + 1], n)
            if hank[i][n] != want:
                failures.append(f"step {i} ({rel.case}): H_{n} = {hank[i][n]}, relation gives {want}")
                break
    return failures


def cycle_initial_values(report: ChainReport, order: int) -> list[Fraction]:
    """H_0..H_{delta-1} of the recurring equation, from its solved series."""
    cyc = report.cycle
    if cyc is None:
        raise ValueError("chain has no cycle")
    F = solve_quadratic(report.equations[cyc.start], order)
    return [Fraction(1)] + hankel_sequence(F, 0, cyc.delta - 1)
