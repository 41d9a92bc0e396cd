"""Print H_1..H_{3(m+1)}(F^{m,r}) next to the predicted periodic word for a range of m."""
from __future__ import annotations

import argparse
import os
from dataclasses import dataclass

from dyckhankel.verify import predicted_pattern, verify_theorem


@dataclass(frozen=True)
class Config:
    m_min: int = 2
    m_max: int = 8
    mode: str = "both"
    jobs: int = int(os.environ.get("DYCKHANKEL_JOBS", "1"))


def main(cfg: Config) -> int:
    recs = verify_theorem(range(cfg.m_min, cfg.m_max + 1), cfg.mode, cfg.jobs)
    failed = 0
    for rec in recs:
        word = predicted_pattern(rec["m"], rec["r"]).word
        star = "(" + ",".join(map(str, word)) + ")*"
        tc = rec.get("tau_chain") or {}
        print(f"m={rec['m']:2d} r={rec['r']:2d}  {rec['status']:4s}  period={len(word):2d}  "
              f"delta={tc.get('delta')} sigma={tc.get('sigma')}  {star}")
        for p in rec["problems"]:
            print(f"    {p}")
        failed += rec["status"] != "pass"
    print(f"{len(recs) - failed}/{len(recs)} cases pass")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-min", type=int, default=Config.m_min)
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    ap.add_argument("--mode", choices=["direct", "tau", "both"], default=Config.mode)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.m_min, a.m_max, a.mode, a.jobs)))
