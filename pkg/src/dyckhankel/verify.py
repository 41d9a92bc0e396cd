"""Predicted Hankel patterns for F^{m,r} and the end-to-end verification runs."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import closed_forms
from .exact import RatFun, TruncSeries, solve_quadratic
from .genfun import (
    assert_same,
    catalan_series,
    dseries,
    dseries_cf,
    first_mismatch,
    fmr_equation,
    fmr_heightset,
    fmr_residual,
    fmr_series,
    MismatchError,
)
from .hankel import (
    CheckReport,
    check_ab_lemma,
    check_sfraction_products,
    check_shift_identities,
    detect_periodicity,
    hankel_sequence,
    random_integer_series,
    shifted_family_periodicity,
)
from .paths import (
    BijectionError,
    HeightSet,
    bijection_forward,
    bijection_inverse,
    check_codomain,
    count_avoiding,
    enumerate_dyck,
    is_m_peaks,
    lowest_valley,
    m_peaks_paths,
)
from .tau import cycle_initial_values, decompose_u, recurrence_to_sequence, tau_chain, tau_step, verify_chain

MAX_M = 16


@dataclass(frozen=True)
class PredictedPattern:
    m: int
    r: int
    word: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.word)


def predicted_pattern(m: int, r: int) -> PredictedPattern:
    """One period of H_{n>=1}(F^{m,r})."""
    if m < 2 or not 1 <= r <= m:
        raise ValueError(f"need m >= 2 and 1 <= r <= m, got m={m}, r={r}")
    if r == 1:
        z = [0] * (m - 1)
        if m % 4 in (0, 1):
            word = [1, *z, 1]
        else:
            word = [1, *z, -1, -1, *z, 1]
        return PredictedPattern(m, r, tuple(word))
    z1, z2 = [0] * (r - 2), [0] * (m - r)
    r_lo = r % 4 in (1, 2)
    d_lo = (m - r) % 4 in (0, 3)
    if r_lo and d_lo:
        word = [1, *z1, 1, *z2, 1]
    elif not r_lo and not d_lo:
        word = [1, *z1, -1, *z2, 1]
    elif r_lo:
        word = [1, *z1, 1, *z2, -1, -1, *z1, -1, *z2, 1]
    else:
        word = [1, *z1, -1, *z2, -1, -1, *z1, 1, *z2, 1]
    return PredictedPattern(m, r, tuple(word))


def predict_hankel(m: int, r: int, n_max: int) -> list[int]:
    w = predicted_pattern(m, r).word
    return [w[i % len(w)] for i in range(n_max)]


def r_equals_m_word(m: int) -> tuple[int, ...]:
    """Period of H(F^{m,m}) written directly in the r = m shape."""
    z = [0] * (m - 2)
    if m % 4 in (1, 2):
        return tuple([1, *z, 1, 1])
    return tuple([1, *z, -1, -1, -1, *z, 1, 1])


def expected_cycle_sign(m: int, r: int) -> int:
    e = comb(m, 2) if r == 1 else comb(r - 1, 2) + comb(m - r + 1, 2)
    return -1 if e % 2 else 1


def n_max_for(m: int) -> int:
    return 3 * (m + 1)


def _s(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# theorem cases


def display_warnings(m: int, r: int, chain) -> list[str]:
    """Differences between the mechanized chain and the hand-derived forms."""
    out = []
    eqs = [chain.equations[0]]
    for _ in range(4):
        eqs.append(tau_step(eqs[-1])[0])
    for i, (name, e) in enumerate(closed_forms.chain_equations(m, r).items(), start=1):
        if eqs[i] != e:
            out.append(f"{name} differs from its closed form")
    if r >= 2:
        if decompose_u(eqs[0].u, 0)[1] != closed_forms.first_step_uH(m, r):
            out.append("u_H of F0 differs from its closed form")
        for i, name in ((1, "F1"), (2, "F2")):
            uL, uH = decompose_u(eqs[i].u, eqs[i].d)
            eL, eH = closed_forms.middle_splits(m, r)[name]
            if RatFun(uL) != eL or uH != eH:
                out.append(f"u_L/u_H split of {name} differs from its closed form")
        if decompose_u(eqs[3].u, eqs[3].d)[1] != closed_forms.last_step_uH(m, r):
            out.append("u_H of F3 differs from its closed form")
    return out


def lag_recurrence(chain, lag: int) -> tuple[int, int] | None:
    """(sign, steps) of H_n = sign * H_(n - lag) obtained by running the cycle
    of the chain lag / delta times; None when delta does not divide lag."""
    cyc = chain.cycle
    if cyc is None or lag % cyc.delta:
        return None
    laps = lag // cyc.delta
    return cyc.sigma ** laps, cyc.start + laps * (chain.steps - cyc.start)


def verify_case(m: int, r: int, mode: str = "both", order: int | None = None,
                n_max: int | None = None) -> dict:
    """Compare prediction, direct determinants and the tau recurrence for one (m, r)."""
    if mode not in ("direct", "tau", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    n_max = n_max_for(m) if n_max is None else n_max
    order = max(6 * (m + 1) + 2, 2 * (n_max - 1)) if order is None else order
    predicted = predict_hankel(m, r, n_max)
    rec: dict = {"m": m, "r": r, "n_max": n_max, "order": order,
                 "predicted": [_s(v) for v in predicted]}
    problems: list[str] = []
    warnings: list[str] = []
    direct = tau_seq = None
    if mode in ("direct", "both"):
        F = fmr_series(m, r, order)
        direct = hankel_sequence(F, 0, n_max)
        i = first_mismatch(direct, predicted)
        if i is not None:
            problems.append(f"direct H_{i + 1} = {_s(direct[i])}, predicted {predicted[i]}")
            rec["first_mismatch"] = i + 1
    if mode in ("tau", "both"):
        chain = tau_chain(fmr_equation(m, r), max_steps=6)
        tc: dict = chain.to_record()
        tc["delta"] = tc["sigma"] = None
        tc["lag"] = tc["lag_sigma"] = tc["lag_steps"] = None
        if chain.cycle is None:
            problems.append("tau chain has no cycle")
        else:
            cyc = chain.cycle
            tc["delta"], tc["sigma"] = cyc.delta, cyc.sigma
            tc["step_failures"] = verify_chain(chain, order, n_max)
            problems += [f"tau: {f}" for f in tc["step_failures"]]
            lag = lag_recurrence(chain, m + 1)
            if lag is None:
                problems.append(f"tau: cycle (delta={cyc.delta}) does not divide {m + 1}")
            else:
                tc["lag"], tc["lag_sigma"], tc["lag_steps"] = m + 1, lag[0], lag[1]
                if lag[0] != expected_cycle_sign(m, r):
                    problems.append(f"tau: sign {lag[0]} over lag {m + 1}, "
                                    f"expected {expected_cycle_sign(m, r)}")
                if lag[1] > 4:
                    problems.append(f"tau: lag {m + 1} needs {lag[1]} steps")
            if any(rel.scale != 1 for rel in chain.relations):
                problems.append("tau: a step needed a non-unit normalization")
            init = cycle_initial_values(chain, order)
            tau_seq = recurrence_to_sequence(chain, init, n_max)
            j = first_mismatch(tau_seq, predicted)
            if j is not None:
                problems.append(f"tau H_{j + 1} = {_s(tau_seq[j])}, predicted {predicted[j]}")
                rec.setdefault("first_mismatch", j + 1)
            warnings += display_warnings(m, r, chain)
            h1 = [Fraction(1)] + hankel_sequence(solve_quadratic(chain.equations[1], order), 0, m)
            if h1 != closed_forms.initial_values(m, r):
                warnings.append("H_0..H_m(F1) differ from the listed initial values")
        rec["tau_chain"] = tc
    if direct is not None and tau_seq is not None and direct != tau_seq:
        problems.append("direct and tau sequences differ")
    rec["computed"] = [_s(v) for v in (direct if direct is not None else tau_seq or [])]
    if tau_seq is not None:
        rec["tau_computed"] = [_s(v) for v in tau_seq]
    rec["problems"] = problems
    rec["warnings"] = warnings
    rec["status"] = "fail" if problems else "pass"
    return rec


def _case_args(m_values: Iterable[int]):
    return [(m, r) for m in m_values for r in range(1, m + 1)]


def _run_case(args):
    m, r, mode = args
    return verify_case(m, r, mode)


def verify_theorem(m_values: Iterable[int], mode: str = "both", jobs: int = 1) -> list[dict]:
    """One record per (m, r), ordered by (m, r) whatever the completion order."""
    m_values = list(m_values)
    for m in m_values:
        if m < 2:
            raise ValueError(f"m must be >= 2, got {m}")
        if m > MAX_M:
            raise ValueError(f"m = {m} above the limit {MAX_M}")
    tasks = [(m, r, mode) for m, r in _case_args(m_values)]
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_case(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_case, tasks))


def check_sequence(m: int, r: int, F: TruncSeries, n_max: int | None = None) -> int | None:
    """First index n where H_n(F) departs from the prediction, else None."""
    n_max = n_max_for(m) if n_max is None else n_max
    i = first_mismatch(hankel_sequence(F, 0, n_max), predict_hankel(m, r, n_max))
    return None if i is None else i + 1


# ---------------------------------------------------------------------------
# series cross-checks


def verify_oracles(m_max: int = 5, n_max: int = 10) -> CheckReport:
    """Equation, continued fraction, recursion and enumeration agree on f_n^{m,r}."""
    rep = CheckReport(f"oracle equivalence m<={m_max}, n<={n_max}")
    for m in range(2, m_max + 1):
        for r in range(1, m + 1):
            rep.cases += 1
            S = fmr_heightset(m, r)
            routes = {
                "equation": fmr_series(m, r, n_max),
                "continued fraction": dseries_cf(m, S.residues, n_max),
                "recursion": dseries(S, n_max),
                "enumeration": TruncSeries([count_avoiding(n, S) for n in range(n_max + 1)]),
            }
            ref = routes["enumeration"]
            for name, F in routes.items():
                try:
                    assert_same(f"{name} vs enumeration (m={m}, r={r})", F, ref)
                except MismatchError as e:
                    rep.fail(str(e))
            if not fmr_residual(m, r, routes["equation"]).is_zero():
                rep.fail(f"raw equation residual nonzero for m={m}, r={r}")
    return rep


# ---------------------------------------------------------------------------
# classical identities

MOD5_SEQUENCES = {
    "H(D^(5,{1,2,4}))": (HeightSet.periodic(5, {1, 2, 4}), 0, (1, 0, -1, -1, -1, -1, 0, 1, 1, 1)),
    "H(D^(5,{1,3,4}))": (HeightSet.periodic(5, {1, 3, 4}), 0, (1, 1, 0, -1, -1, -1, -1, 0, 1, 1)),
    "H1(D^(5,{2,4,5}))": (HeightSet.periodic(5, {2, 4, 5}), 1, (1, 1, 0, -1, -1, -1, -1, 0, 1, 1)),
}


def verify_classical(n_max: int = 6, seed: int = 0, ab_cases: int = 100,
                     sfraction_cases: int = 20, window: int = 20) -> list[CheckReport]:
    rng = random.Random(seed)
    reports = []

    rep = CheckReport("catalan baseline")
    c = catalan_series(2 * window + 1)
    for k in (0, 1):
        rep.cases += 1
        if hankel_sequence(c, k, window) != [1] * window:
            rep.fail(f"H^{k}(c) is not all ones")
    reports.append(rep)

    rep = CheckReport("ab-lemma")
    check_ab_lemma(0, 1, c.truncate(14), n_max, rep)
    check_ab_lemma(1, 1, TruncSeries.zero(14), n_max, rep)
    for _ in range(ab_cases):
        a, b = rng.randint(-2, 2), rng.choice([1, 2])
        check_ab_lemma(a, b, random_integer_series(rng, 14), n_max, rep)
    reports.append(rep)

    rep_i, rep_ii = CheckReport("sfraction part i"), CheckReport("sfraction part ii")
    L = 2 * n_max + 2
    for _ in range(sfraction_cases):
        b = [rng.randint(1, 3) for _ in range(L)]
        a_i = [rng.randint(-2, 2) if j % 2 == 0 else 0 for j in range(L)]
        a_ii = [rng.randint(-2, 2) if j % 2 == 1 else 0 for j in range(L)]
        check_sfraction_products(a_i, b, n_max, "i", rep_i)
        check_sfraction_products(a_ii, b, n_max, "ii", rep_ii)
    check_sfraction_products([0] * L, [1] * L, n_max, "i", rep_i)
    check_sfraction_products([0] * L, [1] * L, n_max, "ii", rep_ii)
    reports += [rep_i, rep_ii]

    rep = CheckReport("shift identities")
    for S in (HeightSet.of(), HeightSet.of({1}), HeightSet.of({2, 3}),
              HeightSet.periodic(5, {1, 2, 4}), HeightSet.periodic(3, {1})):
        check_shift_identities(S, 10, rep)
    reports.append(rep)

    rep = CheckReport("example sequences (m=5)")
    order = 2 * window + 1
    for label, (S, k, word) in MOD5_SEQUENCES.items():
        rep.cases += 1
        got = [int(h) for h in hankel_sequence(dseries(S, order), k, window)]
        want = [word[i % len(word)] for i in range(window)]
        if got != want:
            rep.fail(f"{label}: {got} vs {want}")
    S = HeightSet.periodic(5, {1, 2, 4})
    S2 = (S + 2).union({1})
    rep.cases += 1
    if not S2.same_heights(HeightSet.periodic(5, {1, 3, 4}), 60):
        rep.fail("{1} u (S+2) != (5,{1,3,4})")
    if not (S2 + 1).same_heights(HeightSet.periodic(5, {2, 4, 5}), 60):
        rep.fail("1 + ({1} u (S+2)) != (5,{2,4,5})")
    a = hankel_sequence(dseries(S, order), 0, window - 1)
    b = hankel_sequence(dseries(S2, order), 0, window)
    c1 = hankel_sequence(dseries(S2 + 1, order), 1, window)
    rep.cases += 2
    if a != b[1:]:
        rep.fail("H_n(D^S) != H_(n+1)(D^({1} u (S+2)))")
    if b != c1:
        rep.fail("H_n(D^({1} u (S+2))) != H^1_n(D^(1+({1} u (S+2))))")
    reports.append(rep)

    rep = CheckReport("eventual periodicity instances")
    for S, p, T in ((HeightSet.periodic(2, {1}), 1, set()),
                    (HeightSet.periodic(2, {1}), 1, {1}),
                    (HeightSet.periodic(5, {1, 2, 4}), 1, {1}),
                    (HeightSet.periodic(3, {1, 2}), 2, {1, 3})):
        rep.cases += 1
        base = detect_periodicity(hankel_sequence(dseries(S, 61), 0, 30))
        if not base.confirmed or base.preperiod > 10:
            rep.fail(f"hypothesis not met: H(D^{S}) not periodic on the window")
            continue
        ri, rii = shifted_family_periodicity(S, p, T, 30)
        # a long preperiod on a 30-term window would be weak evidence
        if not all(rep_.confirmed and rep_.preperiod <= 10 for rep_ in (ri, rii)):
            rep.fail(f"S={S}, p={p}, T={sorted(T)}: {ri.star()} / {rii.star()}")
    reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# bijection


def verify_bijection(ms: Sequence[int] = (2, 3, 4), n_max: int = 9) -> list[CheckReport]:
    inv = CheckReport("bijection round trips")
    card = CheckReport("lowest-valley cardinality identity")
    for m in ms:
        mpeaks = {j: m_peaks_paths(j, m) for j in range(n_max + 1)}
        for n in range(m, n_max + 1):
            inv.cases += 1
            images = set()
            for k in range(1, m):
                for M in mpeaks[n - k]:
                    N = bijection_forward(M, m, k)
                    if N.semilength != n:
                        inv.fail(f"{M}, k={k}: image has semilength {N.semilength}")
                    try:
                        check_codomain(N, m)
                    except BijectionError as e:
                        inv.fail(f"{M}, k={k}: image {N} outside codomain ({e})")
                        continue
                    if bijection_inverse(N, m) != (M, k):
                        inv.fail(f"{M}, k={k}: inverse of {N} is {bijection_inverse(N, m)}")
                    images.add(N)
            codomain = []
            for N in mpeaks[n]:
                try:
                    check_codomain(N, m)
                except BijectionError:
                    continue
                codomain.append(N)
            for N in codomain:
                M, k = bijection_inverse(N, m)
                if bijection_forward(M, m, k) != N:
                    inv.fail(f"forward(inverse({N})) != {N}")
            domain_size = sum(len(mpeaks[n - k]) for k in range(1, m))
            if len(images) != domain_size:
                inv.fail(f"m={m}, n={n}: forward map not injective")
            if set(codomain) != images:
                inv.fail(f"m={m}, n={n}: image differs from codomain")
            card.cases += 1
            low = sum(1 for N in mpeaks[n] if (h := lowest_valley(N)) is not None and 1 <= h <= m - 1)
            if domain_size != low:
                card.fail(f"m={m}, n={n}: {domain_size} vs {low}")
    return [inv, card]


def verify_first_return_identity(ms: Sequence[int] = (2, 3, 4), n_max: int = 10) -> CheckReport:
    """Counts of m-peaks paths satisfy F = 1 + F (x^m F + sum_{i<m} x^i (F - 1))."""
    rep = CheckReport("m-peaks first-return identity")
    for m in ms:
        rep.cases += 1
        f = [len(m_peaks_paths(n, m)) for n in range(n_max + 1)]
        F = TruncSeries(f)
        inner = F.shift(m) + sum((F - 1).shift(i) for i in range(1, m))
        if F != 1 + F * inner:
            rep.fail(f"m={m}: identity fails on counts {f}")
        for n in range(1, n_max + 1):
            prim = [N for N in enumerate_dyck(n) if is_m_peaks(N, m)
                    and all(h > 0 for h in N.heights()[1:-1])]
            high = sum(1 for N in prim if (lowest_valley(N) or m) >= m)
            low = len(prim) - high
            want_high = f[n - m] if n >= m else 0
            want_low = sum(f[n - i] for i in range(1, m) if n - i >= 1)
            if (high, low) != (want_high, want_low):
                rep.fail(f"m={m}, n={n}: primitive split {(high, low)} vs {(want_high, want_low)}")
    return rep
