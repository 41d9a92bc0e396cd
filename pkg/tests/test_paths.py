import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyckhankel.paths import (
    MAX_SEMILENGTH,
    DyckPath,
    EarlyReturnError,
    GuardError,
    HeightSet,
    NoLowValleyError,
    NotMPeaksError,
    bijection_forward,
    bijection_inverse,
    catalan,
    check_codomain,
    count_avoiding,
    enumerate_dyck,
    is_m_peaks,
    iter_dyck,
    m_peaks_paths,
    peak_heights,
    valley_heights,
)
from oracles import all_dyck_words, brute_count

RIORDAN = [1, 0, 1, 1, 3, 6, 15, 36, 91, 232, 603]
MOTZKIN = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]


def test_enumeration_counts():
    assert len(enumerate_dyck(0)) == 1
    assert len(enumerate_dyck(3)) == 5
    assert len(enumerate_dyck(5)) == 42
    assert [catalan(n) for n in range(8)] == [len(enumerate_dyck(n)) for n in range(8)]


def test_enumeration_matches_brute_force():
    for n in range(8):
        assert sorted(str(p) for p in enumerate_dyck(n)) == sorted(all_dyck_words(n))


def test_guard():
    with pytest.raises(GuardError):
        enumerate_dyck(MAX_SEMILENGTH + 1)


def test_invalid_paths():
    for bad in ("DU", "UUD", "UX"):
        with pytest.raises(ValueError):
            DyckPath(bad)


@pytest.mark.parametrize("word, peaks, valleys", [
    ("UDUD", [1, 1], [0]),
    ("UUDD", [2], []),
    ("UUDUDD", [2, 2], [1]),
])
def test_peaks_and_valleys(word, peaks, valleys):
    p = DyckPath(word)
    assert sorted(peak_heights(p)) == peaks
    assert sorted(valley_heights(p)) == valleys


def test_count_avoiding_classical():
    assert count_avoiding(4, HeightSet.of()) == 14
    odd, even = HeightSet.periodic(2, {1}), HeightSet.periodic(2, {2})
    assert [count_avoiding(n, odd) for n in range(11)] == RIORDAN
    assert [count_avoiding(n, even) for n in range(1, 11)] == MOTZKIN[:10]


@given(st.frozensets(st.integers(-3, 7), max_size=4), st.integers(0, 9))
@settings(max_examples=60, deadline=None)
def test_nonpositive_heights_are_irrelevant(S, n):
    assert count_avoiding(n, HeightSet.of(S)) == count_avoiding(n, HeightSet.of(s for s in S if s > 0))


@given(st.integers(2, 5), st.data(), st.integers(0, 9))
@settings(max_examples=40, deadline=None)
def test_count_avoiding_matches_brute_force(m, data, n):
    V = data.draw(st.frozensets(st.integers(1, m), max_size=m - 1))
    S = HeightSet.periodic(m, V)
    assert count_avoiding(n, S) == brute_count(n, lambda h: h in S)
    assert count_avoiding(n, S) == len(list(iter_dyck(n, S)))


def test_heightset_membership_and_shift():
    S = HeightSet.periodic(5, {1, 2, 4})
    assert [h for h in range(1, 12) if h in S] == [1, 2, 4, 6, 7, 9, 11]
    T = S + 2
    assert [h for h in range(1, 14) if h in T] == [3, 4, 6, 8, 9, 11, 13]
    assert (T - 2).same_heights(S, 40)
    assert HeightSet.of({1, 3}) + 1 == HeightSet.of({2, 4})


@given(st.integers(2, 6), st.data(), st.integers(-4, 6))
def test_shift_moves_every_height(m, data, k):
    V = data.draw(st.frozensets(st.integers(1, m), max_size=m))
    S = HeightSet.periodic(m, V).union(data.draw(st.frozensets(st.integers(1, 9), max_size=3)))
    T = S + k
    for h in range(-10, 40):
        assert (h in S) == (h + k in T)


@pytest.mark.parametrize("text", [
    "finite:1,3", "finite:", "periodic:m=5,V=1,2,4", "periodic:m=3,V=1,from=4+finite:1",
])
def test_heightset_parse_roundtrip(text):
    S = HeightSet.parse(text)
    assert HeightSet.parse(str(S)) == S


@pytest.mark.parametrize("text", ["", "bogus", "finite:a", "periodic:m=1,V=1", "periodic:5", "odd:1"])
def test_heightset_parse_errors(text):
    with pytest.raises(ValueError):
        HeightSet.parse(text)


def test_m_peaks():
    assert is_m_peaks(DyckPath("UUDD"), 2)
    assert not is_m_peaks(DyckPath("UDUD"), 2)
    assert is_m_peaks(DyckPath(""), 3)


def test_bijection_examples():
    N = bijection_forward(DyckPath("UUDD"), 2, 1)
    assert N == DyckPath("UUDUDD")
    assert bijection_inverse(N, 2) == (DyckPath("UUDD"), 1)
    with pytest.raises(NoLowValleyError):
        bijection_inverse(DyckPath("UUDD"), 2)
    with pytest.raises(NotMPeaksError):
        bijection_inverse(DyckPath("UDUD"), 2)
    with pytest.raises(EarlyReturnError):
        bijection_inverse(DyckPath("UUDDUUDD"), 2)
    with pytest.raises(NotMPeaksError):
        bijection_forward(DyckPath("UD"), 2, 1)
    with pytest.raises(ValueError):
        bijection_forward(DyckPath("UUDD"), 2, 2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_bijection_is_a_bijection(m):
    for n in range(m, 11):
        images = {}
        for k in range(1, m):
            for M in m_peaks_paths(n - k, m):
                N = bijection_forward(M, m, k)
                assert N.semilength == M.semilength + k
                check_codomain(N, m)
                assert bijection_inverse(N, m) == (M, k)
                images[N] = (M, k)
        codomain = []
        for N in m_peaks_paths(n, m):
            try:
                check_codomain(N, m)
            except (NoLowValleyError, EarlyReturnError):
                continue
            codomain.append(N)
        assert set(codomain) == set(images)
