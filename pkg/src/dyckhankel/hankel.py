"""Exact Hankel determinants and checks of the classical transfer identities."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exact import TruncSeries
from .genfun import dseries
from .paths import HeightSet


class InsufficientOrderError(ValueError):
    """The series is too short for the requested determinant."""


# ---------------------------------------------------------------------------
# determinants


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination.

    Every division is exact.  Zero pivots are replaced by a row swap; a column
    without any usable pivot means the determinant is 0.
    """
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - a * rk[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def det_exact(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Determinant over Q: clear denominators, then integer Bareiss."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    den = 1
    for r in rows:
        for c in r:
            if isinstance(c, Fraction) and c.denominator != 1:
                den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in r] for r in rows]
    return Fraction(bareiss_det(ints), den ** n)


def hankel_matrix(a: Sequence, n: int, k: int = 0) -> list[list]:
    return [[a[i + j + k] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class HankelSpec:
    series: TruncSeries
    shift: int
    n: int

    def __post_init__(self):
        if self.shift < 0 or self.n < 0:
            raise ValueError("shift and n must be nonnegative")

    @property
    def feasible(self) -> bool:
        return self.n == 0 or self.series.order >= 2 * (self.n - 1) + self.shift


def hankel_det(A: TruncSeries, n: int, k: int = 0) -> Fraction:
    """det(a_{i+j+k}) for 0 <= i, j < n; 1 when n = 0."""
    spec = HankelSpec(A, k, n)
    if not spec.feasible:
        raise InsufficientOrderError(
            f"H_{n}^{k} needs order {2 * (n - 1) + k}, series has order {A.order}")
    if n == 0:
        return Fraction(1)
    return det_exact(hankel_matrix(A.coeffs, n, k))


def hankel_sequence(A: TruncSeries, k: int, n_max: int) -> list[Fraction]:
    """(H_1^k, ..., H_{n_max}^k)."""
    if n_max > 0 and A.order < 2 * (n_max - 1) + k:
        raise InsufficientOrderError(
            f"n_max={n_max}, k={k} needs order {2 * (n_max - 1) + k}, series has {A.order}")
    return [hankel_det(A, n, k) for n in range(1, n_max + 1)]


def max_hankel_size(order: int, k: int = 0) -> int:
    return max(0, (order - k) // 2 + 1)


# ---------------------------------------------------------------------------
# periodicity


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int
    period: int
    word: tuple
    status: str  # "confirmed" | "inconclusive"

    @property
    def confirmed(self) -> bool:
        return self.status == "confirmed"

    def star(self) -> str:
        """(w1,...,wp)* with an optional preperiod prefix."""
        if not self.confirmed:
            return "inconclusive"
        body = "(" + ",".join(str(w) for w in self.word) + ")*"
        return body if self.preperiod == 0 else f"prefix+{body}"


def detect_periodicity(seq: Sequence) -> PeriodReport:
    """Smallest preperiod, then smallest period, with two full repetitions."""
    seq = list(seq)
    L = len(seq)
    if not L:
        raise ValueError("empty sequence")
    for pre in range(L):
        for p in range(1, (L - pre) // 2 + 1):
            if all(seq[i] == seq[i + p] for i in range(pre, L - p)):
                return PeriodReport(pre, p, tuple(seq[pre:pre + p]), "confirmed")
    return PeriodReport(0, 0, (), "inconclusive")


# ---------------------------------------------------------------------------
# identity checkers


@dataclass
class CheckReport:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def __str__(self):
        state = "pass" if self.passed else f"FAIL ({len(self.failures)})"
        return f"{self.name}: {self.cases} cases, {state}"


def check_ab_lemma(a, b, G: TruncSeries, n_max: int, report: CheckReport | None = None) -> CheckReport:
    """F = 1/(1 - a x - b x G):  H_n(F) = b^(n-1) H^1_{n-1}(G),  H^1_n(F) = H_n(a + bG)."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    rep = report or CheckReport("ab-lemma")
    N = G.order
    F = (TruncSeries((1, -a), N) - (G * b).shift(1)).reciprocal()
    aG = G * b + a
    for n in range(1, n_max + 1):
        rep.cases += 1
        lhs, rhs = hankel_det(F, n), b ** (n - 1) * hankel_det(G, n - 1, 1)
        if lhs != rhs:
            rep.fail(f"a={a}, b={b}, n={n}: H_n(F)={lhs} vs {rhs}")
        lhs, rhs = hankel_det(F, n, 1), hankel_det(aG, n)
        if lhs != rhs:
            rep.fail(f"a={a}, b={b}, n={n}: H^1_n(F)={lhs} vs {rhs}")
    return rep


def sfraction_series(a: Sequence, b: Sequence, order: int) -> TruncSeries:
    """1/(1 - a1 x - b1 x/(1 - a2 x - b2 x/(...))) with len(b) layers."""
    t = TruncSeries.zero(order)
    for ai, bi in reversed(list(zip(a, b))):
        t = (TruncSeries((1, -Fraction(ai)), order) - (t * Fraction(bi)).shift(1)).reciprocal()
    return t


def sfraction_product(b: Sequence, n: int, part: str) -> Fraction:
    """Product formulas; b is 1-indexed in the formulas, b[0] here is b1."""
    b = [Fraction(x) for x in b]
    out = Fraction(1)
    if part == "i":  # (b1 b2)^(n-1) (b3 b4)^(n-2) ... (b_{2n-3} b_{2n-2})
        for j in range(1, n):
            out *= (b[2 * j - 2] * b[2 * j - 1]) ** (n - j)
    elif part == "ii":  # b1^n (b2 b3)^(n-1) ... (b_{2n-2} b_{2n-1})
        out = b[0] ** n
        for j in range(1, n):
            out *= (b[2 * j - 1] * b[2 * j]) ** (n - j)
    else:
        raise ValueError(part)
    return out


def check_sfraction_products(a: Sequence, b: Sequence, n_max: int, part: str,
                             report: CheckReport | None = None) -> CheckReport:
    """Compare H_n (part i) or H^1_n (part ii) of the continued fraction with
    the product formula.  Part i needs a_i = 0 at even i, part ii at odd i."""
    rep = report or CheckReport(f"sfraction-{part}")
    # a[0] is a1, so part i forbids odd list positions and part ii even ones
    forbidden = 1 if part == "i" else 0
    if any(a[i] for i in range(len(a)) if i % 2 == forbidden):
        raise ValueError(f"part {part}: a has nonzero entries at forbidden indices")
    if len(b) < 2 * n_max:
        raise ValueError("not enough b terms")
    order = 2 * n_max + 1
    F = sfraction_series(a, b, order)
    k = 0 if part == "i" else 1
    for n in range(1, n_max + 1):
        rep.cases += 1
        got, want = hankel_det(F, n, k), sfraction_product(b, n, part)
        if got != want:
            rep.fail(f"part {part}, n={n}: {got} vs {want} (a={list(a)}, b={list(b)})")
    return rep


def check_shift_identities(S: HeightSet, n_max: int, report: CheckReport | None = None) -> CheckReport:
    """With S a set of positive heights:
    H_n(D^{{1} u (S+2)}) = H_n(D^{S+2}) = H_{n-1}(D^S) and H^1_n(D^{S+1}) = H_n(D^S).
    """
    rep = report or CheckReport(f"shift-identities {S}")
    order = 2 * n_max + 1
    DS = dseries(S, order)
    D1 = dseries(S + 1, order)
    D2 = dseries(S + 2, order)
    D12 = dseries((S + 2).union({1}), order)
    for n in range(1, n_max + 1):
        rep.cases += 1
        base = hankel_det(DS, n - 1)
        h12, h2 = hankel_det(D12, n), hankel_det(D2, n)
        if not h12 == h2 == base:
            rep.fail(f"{S}, n={n}: H_n(D^(1+(S+2)))={h12}, H_n(D^(S+2))={h2}, H_(n-1)(D^S)={base}")
        h1, hs = hankel_det(D1, n, 1), hankel_det(DS, n)
        if h1 != hs:
            rep.fail(f"{S}, n={n}: H^1_n(D^(S+1))={h1} vs H_n(D^S)={hs}")
    return rep


def shifted_family_periodicity(S: HeightSet, p: int, T: set[int], n_max: int):
    """Hankel sequence of D^{T u (S+2p)} and shifted sequence of D^{1+(T u (S+2p))}."""
    U = (S + 2 * p).union(T)
    order = 2 * n_max + 1
    h = hankel_sequence(dseries(U, order), 0, n_max)
    h1 = hankel_sequence(dseries(U + 1, order), 1, n_max)
    return detect_periodicity(h), detect_periodicity(h1)


def random_integer_series(rng: random.Random, order: int, lo: int = -3, hi: int = 3) -> TruncSeries:
    return TruncSeries([rng.randint(lo, hi) for _ in range(order + 1)])
