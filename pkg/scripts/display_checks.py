"""Compare the mechanized tau chain with the hand-derived closed forms.

For each (m, r) this lists which intermediate equations, u_L/u_H splits and
initial values agree with the closed forms in ``dyckhankel.closed_forms``, and
checks the r-general functional equation with and without the extra sum in R.
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from dyckhankel.genfun import fmr_residual, fmr_series
from dyckhankel.verify import verify_case


@dataclass(frozen=True)
class Config:
    m_max: int = 8
    order: int = 30


def main(cfg: Config) -> None:
    tally: Counter[str] = Counter()
    total = 0
    for m in range(2, cfg.m_max + 1):
        for r in range(1, m + 1):
            total += 1
            rec = verify_case(m, r, mode="tau")
            for w in rec["warnings"]:
                tally[w] += 1
            F = fmr_series(m, r, cfg.order)
            if not fmr_residual(m, r, F, literal=True).is_zero():
                tally["R without the sum from x^2 to x^(m-r) leaves a residual"] += 1
    print(f"{total} cases checked")
    for msg, n in sorted(tally.items()):
        print(f"{n:3d}  {msg}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    ap.add_argument("--order", type=int, default=Config.order)
    a = ap.parse_args()
    main(Config(a.m_max, a.order))
