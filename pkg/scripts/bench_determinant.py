"""Time Hankel determinant evaluation for F^{m,r} as the matrix size grows."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from dyckhankel.genfun import fmr_series
from dyckhankel.hankel import hankel_det


@dataclass(frozen=True)
class Config:
    m: int = 8
    r: int = 3
    sizes: tuple[int, ...] = (10, 20, 30, 40)
    repeats: int = 3


def main(cfg: Config) -> None:
    F = fmr_series(cfg.m, cfg.r, 2 * max(cfg.sizes))
    print(f"F^({cfg.m},{cfg.r}), order {F.order}")
    for n in cfg.sizes:
        best = float("inf")
        for _ in range(cfg.repeats):
            t = time.perf_counter()
            h = hankel_det(F, n)
            best = min(best, time.perf_counter() - t)
        print(f"n={n:3d}  H_n={h}  {best * 1e3:8.2f} ms")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=Config.m)
    ap.add_argument("--r", type=int, default=Config.r)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    a = ap.parse_args()
    main(Config(a.m, a.r, tuple(a.sizes)))
