from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dyckhankel import closed_forms
from dyckhankel.exact import PoleAtOriginError, Poly, QuadEq, RatFun, geom_sum, solve_quadratic
from dyckhankel.genfun import fmr_equation
from dyckhankel.hankel import hankel_sequence
from dyckhankel.tau import (
    CanonicalizationError,
    ChainReport,
    Cycle,
    StepRelation,
    canonicalize,
    cycle_initial_values,
    decompose_u,
    recurrence_to_sequence,
    tau_chain,
    tau_series_direct,
    tau_step,
    verify_chain,
)
from dyckhankel.verify import expected_cycle_sign

small = st.integers(-3, 3)
unit_rf = st.builds(lambda a, b: RatFun(Poly([1] + a), Poly([1] + b)),
                    st.lists(small, max_size=3), st.lists(small, max_size=2))
any_rf = st.builds(lambda c, a, b: RatFun(Poly([c] + a), Poly([1] + b)),
                   st.sampled_from([-2, -1, 1, 2, 3]), st.lists(small, max_size=3), st.lists(small, max_size=2))


def unroll(eq, steps):
    eqs, rels = [eq], []
    for _ in range(steps):
        nxt, rel = tau_step(eqs[-1])
        eqs.append(nxt)
        rels.append(rel)
    return eqs, rels


def test_decompose_examples():
    uL, uH = decompose_u(RatFun(1), 0)
    assert uL == Poly([1]) and uH == RatFun(0)
    for m in range(2, 7):
        u = geom_sum(0, m - 1) * RatFun(Poly([1, -2]))
        uL, uH = decompose_u(u, m - 1)
        assert RatFun(uL) == u and uH == RatFun(0)
    uL, uH = decompose_u(fmr_equation(4, 3).u, 0)
    assert uL == Poly([1, 1])
    assert uH == closed_forms.first_step_uH(4, 3)
    with pytest.raises(PoleAtOriginError):
        decompose_u(RatFun.monomial(-1), 0)


@given(any_rf, st.integers(0, 4))
def test_decompose_roundtrip(u, d):
    uL, uH = decompose_u(u, d)
    assert uL.degree <= d + 1
    assert RatFun(uL) + uH.shift(d + 2) == u


def test_case_i_normalizes():
    eq = QuadEq(0, 1, RatFun(2), RatFun(-1))
    nxt, rel = tau_step(eq)
    assert rel.case == "i" and nxt.u.at_zero() == 1
    F, G = solve_quadratic(eq, 12), solve_quadratic(nxt, 12)
    hf, hg = hankel_sequence(F, 0, 6), hankel_sequence(G, 0, 6)
    assert all(hg[n - 1] == 2 ** n * hf[n - 1] for n in range(1, 7))


def test_r1_first_step_matches_closed_form():
    m = 3
    nxt, rel = tau_step(fmr_equation(m, 1))
    sig = geom_sum(0, m - 1)
    assert rel == StepRelation("ii", 1, 1)
    assert nxt == QuadEq(m - 1, 2, sig * RatFun(Poly([1, -2])), -sig)


def test_chain_for_3_1():
    rep = tau_chain(fmr_equation(3, 1))
    assert rep.steps == 3
    assert rep.cycle == Cycle(1, 4, -1)


@given(st.integers(0, 2), st.integers(1, 3), unit_rf, any_rf)
@settings(max_examples=60, deadline=None)
def test_tau_step_is_sound(d, k, u, v):
    eq = QuadEq(d, k, u, v)
    try:
        nxt, rel = tau_step(eq)
    except CanonicalizationError:
        assume(False)
    N, n_max = 24, 7
    assert solve_quadratic(nxt, N) == tau_series_direct(eq, N)
    h = [Fraction(1)] + hankel_sequence(solve_quadratic(eq, N), 0, n_max)
    h_next = [Fraction(1)] + hankel_sequence(solve_quadratic(nxt, N), 0, n_max)
    for n in range(1, n_max + 1):
        assert h[n] == rel.apply(h_next, n)


def test_generic_equation_has_no_short_cycle():
    eq = QuadEq(0, 1, RatFun(Poly([1, 2, -1, 3])), RatFun(Poly([2, 1]), Poly([1, 1, 1])))
    rep = tau_chain(eq, max_steps=4)
    assert rep.cycle is None
    assert rep.notes


def test_canonicalize_rejects_zero_numerator():
    with pytest.raises(CanonicalizationError):
        canonicalize(RatFun(0), RatFun(1), 2, RatFun(-1))


def test_recurrence_examples():
    rep = tau_chain(fmr_equation(3, 1))
    init = [Fraction(v) for v in (1, 0, 0, -1)]
    assert recurrence_to_sequence(rep, init, 16) == [1, 0, 0, -1, -1, 0, 0, 1] * 2
    with pytest.raises(ValueError):
        recurrence_to_sequence(rep, init[:2], 8)
    eq = QuadEq(0, 1, 1, -1)
    const = ChainReport([eq, eq], [StepRelation("iii", 1, 1)], Cycle(0, 1, 1))
    assert recurrence_to_sequence(const, [1], 5) == [1] * 5


@pytest.mark.parametrize("m", range(2, 9))
def test_chains_close(m):
    for r in range(1, m + 1):
        rep = tau_chain(fmr_equation(m, r))
        cyc = rep.cycle
        assert cyc is not None and rep.steps <= 4
        assert all(rel.scale == 1 for rel in rep.relations)
        if (m, r) == (2, 2):
            # F1 and F2 coincide here, so the cycle is one step long
            assert (cyc.start, cyc.delta, cyc.sigma) == (1, 1, 1)
        else:
            assert cyc.start == 1 and cyc.delta == m + 1
            assert cyc.sigma == expected_cycle_sign(m, r)
        n_max = 3 * (m + 1)
        assert verify_chain(rep, 6 * (m + 1) + 2, n_max) == []


@pytest.mark.parametrize("m", range(2, 9))
def test_chain_matches_hand_derivation(m):
    for r in range(1, m + 1):
        eqs, _ = unroll(fmr_equation(m, r), 4)
        forms = closed_forms.chain_equations(m, r)
        for i, name in enumerate(forms, start=1):
            assert eqs[i] == forms[name], (m, r, name)
        rep = tau_chain(fmr_equation(m, r))
        N = 6 * (m + 1) + 2
        h1 = [Fraction(1)] + hankel_sequence(solve_quadratic(eqs[1], N), 0, m)
        assert h1 == closed_forms.initial_values(m, r)
        assert cycle_initial_values(rep, N) == h1[:rep.cycle.delta]


@pytest.mark.parametrize("m", range(3, 9))
def test_splits_of_middle_equations(m):
    for r in range(2, m + 1):
        eqs, _ = unroll(fmr_equation(m, r), 4)
        uL1, uH1 = decompose_u(eqs[1].u, eqs[1].d)
        assert (RatFun(uL1), uH1) == closed_forms.middle_splits(m, r)["F1"]
        uL2, uH2 = decompose_u(eqs[2].u, eqs[2].d)
        shown_L, shown_H = closed_forms.middle_splits(m, r)["F2"]
        assert RatFun(uL2) == shown_L
        # the written u_H of F2 has the opposite sign
        assert uH2 == -shown_H
        # and the written u_H of F3 is missing the division by x^2
        uH3 = decompose_u(eqs[3].u, eqs[3].d)[1]
        assert uH3.shift(2) == closed_forms.last_step_uH(m, r)


def test_chain_record_is_json_ready():
    import json
    rec = tau_chain(fmr_equation(5, 3)).to_record()
    text = json.dumps(rec)
    assert json.loads(text)["cycle"] == {"start": 1, "delta": 6, "sigma": expected_cycle_sign(5, 3)}
