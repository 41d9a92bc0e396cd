"""Brute-force Dyck path combinatorics.

Paths are strings over ``U``/``D``.  Everything here is exhaustive
enumeration, meant as an oracle for the generating-function code.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator

MAX_SEMILENGTH = 14


class GuardError(ValueError):
    """Request exceeds the desk-scale enumeration limit."""


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        h = 0
        for s in self.steps:
            if s == "U":
                h += 1
            elif s == "D":
                h -= 1
                if h < 0:
                    raise ValueError(f"{self.steps!r} goes below the x-axis")
            else:
                raise ValueError(f"bad step {s!r}")
        if h:
            raise ValueError(f"{self.steps!r} does not end on the x-axis")

    def __str__(self):
        return self.steps

    def __len__(self):
        return len(self.steps)

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    def heights(self) -> list[int]:
        """Height after each prefix, starting with 0."""
        out = [0]
        for s in self.steps:
            out.append(out[-1] + (1 if s == "U" else -1))
        return out


def peak_heights(p: DyckPath) -> list[int]:
    h = p.heights()
    return [h[i + 1] for i in range(len(p.steps) - 1) if p.steps[i:i + 2] == "UD"]


def valley_heights(p: DyckPath) -> list[int]:
    h = p.heights()
    return [h[i + 1] for i in range(len(p.steps) - 1) if p.steps[i:i + 2] == "DU"]


def _valleys(p: DyckPath) -> list[tuple[int, int]]:
    """(index of the D step, height) for every valley."""
    h = p.heights()
    return [(i, h[i + 1]) for i in range(len(p.steps) - 1) if p.steps[i:i + 2] == "DU"]


# ---------------------------------------------------------------------------
# height sets

_PERIODIC_RE = re.compile(r"^m=(\d+),V=([\d,]*)(?:,from=(-?\d+))?$")


@dataclass(frozen=True)
class HeightSet:
    """A set of peak heights: a finite part plus an optional periodic part.

    The periodic part is ``V + mZ`` restricted to heights ``>= start``, with
    residues taken in 1..m (so m itself stands for the multiples of m).  The
    default start of 1 gives the plain periodic set; larger starts arise from
    shifting a periodic set upwards, e.g. ``S + 2``.
    """

    finite: frozenset[int] = field(default_factory=frozenset)
    modulus: int | None = None
    residues: frozenset[int] = field(default_factory=frozenset)
    start: int = 1

    def __post_init__(self):
        object.__setattr__(self, "finite", frozenset(self.finite))
        object.__setattr__(self, "residues", frozenset(self.residues))
        if self.modulus is not None:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
            bad = [v for v in self.residues if not 1 <= v <= self.modulus]
            if bad:
                raise ValueError(f"residues {bad} outside 1..{self.modulus}")
        elif self.residues:
            raise ValueError("residues given without a modulus")

    @classmethod
    def of(cls, elements: Iterable[int] = ()) -> "HeightSet":
        return cls(finite=frozenset(elements))

    @classmethod
    def periodic(cls, m: int, residues: Iterable[int]) -> "HeightSet":
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        return cls(modulus=m, residues=frozenset(residues))

    @classmethod
    def excluding_residue(cls, m: int, r: int) -> "HeightSet":
        """(m, [m] minus {r}): peaks allowed only at heights = r mod m."""
        if not 1 <= r <= m:
            raise ValueError(f"need 1 <= r <= m, got m={m}, r={r}")
        return cls.periodic(m, set(range(1, m + 1)) - {r})

    @property
    def kind(self) -> str:
        if self.modulus is None:
            return "finite"
        if self.start <= 1 and not self.finite:
            return "periodic"
        return "mixed"

    def __contains__(self, h: int) -> bool:
        if h in self.finite:
            return True
        if self.modulus is None or h < self.start:
            return False
        return (h - 1) % self.modulus + 1 in self.residues

    def has_positive(self) -> bool:
        if any(s >= 1 for s in self.finite):
            return True
        return self.modulus is not None and bool(self.residues)

    def positive_part(self) -> "HeightSet":
        return HeightSet(frozenset(s for s in self.finite if s >= 1), self.modulus,
                         self.residues, max(self.start, 1))

    def shift(self, k: int) -> "HeightSet":
        """{s + k : s in self}."""
        if self.modulus is None:
            return HeightSet.of(s + k for s in self.finite)
        m = self.modulus
        return HeightSet(frozenset(s + k for s in self.finite), m,
                         frozenset((v + k - 1) % m + 1 for v in self.residues),
                         self.start + k)

    def __sub__(self, k: int) -> "HeightSet":
        return self.shift(-k)

    def __add__(self, k: int) -> "HeightSet":
        return self.shift(k)

    def union(self, elements: Iterable[int]) -> "HeightSet":
        return HeightSet(self.finite | frozenset(elements), self.modulus,
                         self.residues, self.start)

    def same_heights(self, other: "HeightSet", upto: int) -> bool:
        return all((h in self) == (h in other) for h in range(1, upto + 1))

    def __str__(self):
        parts = []
        if self.modulus is not None:
            s = f"periodic:m={self.modulus},V={','.join(map(str, sorted(self.residues)))}"
            if self.start != 1:
                s += f",from={self.start}"
            parts.append(s)
        if self.finite or self.modulus is None:
            parts.append("finite:" + ",".join(map(str, sorted(self.finite))))
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "HeightSet":
        """Parse ``finite:1,3,5``, ``periodic:m=5,V=1,2,4`` or ``A+B`` of both."""
        text = text.strip()
        if not text:
            raise ValueError("empty height-set spec")
        fin: set[int] = set()
        per = None
        for chunk in text.split("+"):
            kind, sep, body = chunk.partition(":")
            if not sep:
                raise ValueError(f"missing ':' in {chunk!r}")
            if kind == "finite":
                try:
                    fin |= {int(t) for t in body.split(",") if t.strip()}
                except ValueError:
                    raise ValueError(f"bad finite set {body!r}") from None
            elif kind == "periodic":
                if per is not None:
                    raise ValueError("at most one periodic part")
                mt = _PERIODIC_RE.match(body.replace(" ", ""))
                if not mt:
                    raise ValueError(f"bad periodic set {body!r}, expected m=5,V=1,2,4")
                m = int(mt.group(1))
                res = {int(t) for t in mt.group(2).split(",") if t}
                per = (m, res, int(mt.group(3)) if mt.group(3) else 1)
            else:
                raise ValueError(f"unknown set kind {kind!r}")
        if per is None:
            return cls.of(fin)
        m, res, start = per
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        return cls(frozenset(fin), m, frozenset(res), start)


# ---------------------------------------------------------------------------
# enumeration


def _guard(n: int):
    if n < 0:
        raise ValueError("semilength must be >= 0")
    if n > MAX_SEMILENGTH:
        raise GuardError(f"semilength {n} above the enumeration limit {MAX_SEMILENGTH}")


def iter_dyck(n: int, avoid: HeightSet | None = None) -> Iterator[str]:
    """Step strings of all n-Dyck paths, optionally with no peak height in avoid.

    Prefixes are extended one step at a time; a down step right after an up
    step at a forbidden height is never taken.
    """
    _guard(n)
    buf: list[str] = []

    def rec(ups: int, downs: int, h: int, last_up: bool):
        if ups == n and downs == n:
            yield "".join(buf)
            return
        if ups < n:
            buf.append("U")
            yield from rec(ups + 1, downs, h + 1, True)
            buf.pop()
        if h > 0 and not (last_up and avoid is not None and h in avoid):
            buf.append("D")
            yield from rec(ups, downs + 1, h - 1, False)
            buf.pop()

    yield from rec(0, 0, 0, False)


@lru_cache(maxsize=None)
def _all_paths(n: int) -> tuple[DyckPath, ...]:
    return tuple(DyckPath(s) for s in iter_dyck(n))


def enumerate_dyck(n: int) -> tuple[DyckPath, ...]:
    _guard(n)
    return _all_paths(n)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def count_avoiding(n: int, S: HeightSet) -> int:
    return sum(1 for _ in iter_dyck(n, S))


def is_m_peaks(p: DyckPath, m: int) -> bool:
    if m < 2:
        raise ValueError("m must be >= 2")
    return all(h % m == 0 for h in peak_heights(p))


def m_peaks_paths(n: int, m: int) -> list[DyckPath]:
    return [DyckPath(s) for s in iter_dyck(n, HeightSet.periodic(m, range(1, m)))]


# ---------------------------------------------------------------------------
# the bijection between m-peaks paths and primitive paths with a low valley


class BijectionError(ValueError):
    pass


class NotMPeaksError(BijectionError):
    pass


class EarlyReturnError(BijectionError):
    pass


class NoLowValleyError(BijectionError):
    pass


def first_return(p: DyckPath) -> int:
    """Length of the prefix ending at the first return to the axis."""
    h = 0
    for i, s in enumerate(p.steps):
        h += 1 if s == "U" else -1
        if h == 0:
            return i + 1
    raise ValueError("empty path has no first return")


def bijection_forward(M: DyckPath, m: int, k: int) -> DyckPath:
    """Map an m-peaks path M and 1 <= k < m to a path of semilength |M| + k.

    With M = M' M1, M' the part up to the first return and M' = M2 D^m, the
    image is M2 D^k U^k M1 D^m.  It is m-peaks, touches the axis only at the
    end, and its rightmost valley below height m sits at height m - k.
    """
    if not 1 <= k <= m - 1:
        raise ValueError(f"need 1 <= k <= m-1, got k={k}, m={m}")
    if not M.steps:
        raise ValueError("the empty path has no image")
    if not is_m_peaks(M, m):
        raise NotMPeaksError(f"{M} is not {m}-peaks")
    cut = first_return(M)
    prime, m1 = M.steps[:cut], M.steps[cut:]
    m2 = prime[:-m]
    return DyckPath(m2 + "D" * k + "U" * k + m1 + "D" * m)


def check_codomain(N: DyckPath, m: int) -> int:
    """Validate the three image conditions and return the low valley's index.

    Raises a distinct error for each violated condition.
    """
    if not N.steps:
        raise EarlyReturnError("empty path")
    if not is_m_peaks(N, m):
        raise NotMPeaksError(f"{N} is not {m}-peaks")
    if first_return(N) != len(N.steps):
        raise EarlyReturnError(f"{N} returns to the axis before its last step")
    low = [(i, h) for i, h in _valleys(N) if h < m]
    if not low:
        raise NoLowValleyError(f"{N} has no valley below level {m}")
    return max(low)[0]


def bijection_inverse(N: DyckPath, m: int) -> tuple[DyckPath, int]:
    """Undo :func:`bijection_forward`: return (M, k)."""
    i = check_codomain(N, m)
    h = N.heights()[i + 1]
    k = m - h
    s = N.steps
    n1 = s[: i + 1 - k]
    rest = s[i + 1 + k:]
    if s[i + 1 - k: i + 1] != "D" * k or s[i + 1: i + 1 + k] != "U" * k:
        raise BijectionError(f"{N} does not have the D^k U^k shape at its low valley")
    if not rest.endswith("D" * m):
        raise BijectionError(f"{N} does not end with {m} down steps")
    n2 = rest[: len(rest) - m]
    return DyckPath(n1 + "D" * m + n2), k


def lowest_valley(p: DyckPath) -> int | None:
    v = valley_heights(p)
    return min(v) if v else None


def dump_paths(paths: Iterable[DyckPath | str]) -> str:
    return "".join(f"{p}\n" for p in paths)
